"""Metric functionals: the distance-difference functionals a space induces.

Every functional here vanishes at its space's basepoint and is 1-Lipschitz
with respect to the metric. Families assemble the subclasses with explicit
formulas for each catalog space; certificates produced by the convergence
testers name family members exactly, so each class carries its defining
parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Iterator, Sequence

import numpy as np

from .errors import (
    EqualPointsError,
    NotNormedSpaceError,
    NotUnitVectorError,
    UnsupportedSpaceError,
    ZeroScaleError,
)
from .points import Atom, PLFunction, Point, ScalarPoint, SparseVector, unit
from .spaces import (
    CountableSubsetOfL1,
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
    Space,
    SupNormSpace,
    w_combine,
)

UNIT_TOL = 1e-12


class MetricFunctional:
    """Evaluable functional with h(basepoint) = 0."""

    kind: ClassVar[str] = "functional"
    space: Space

    def evaluate(self, x: Point) -> float:
        """Membership-checked evaluation."""
        self.space.require_member(x)
        return self.value(x)

    def value(self, x: Point) -> float:
        """Evaluation without the membership check (hot path)."""
        raise NotImplementedError

    def params(self) -> dict:
        """Defining parameters, used for serialization and certificates."""
        raise NotImplementedError

    @property
    def label(self) -> str:
        return f"{self.kind}({self.params()})"


def _space_norm(space: Space, x: Point) -> float:
    if isinstance(space, (LpSpace, LpBall)):
        return x.norm(space.p)
    if isinstance(space, SupNormSpace):
        return x.sup_norm()
    if isinstance(space, CountableSubsetOfL1):
        return x.norm(1.0)
    raise NotNormedSpaceError(f"{space.describe()} carries no norm")


def _require_normed(space: Space) -> None:
    if not space.is_normed:
        raise NotNormedSpaceError(
            f"{space.describe()} is not a whole normed linear space")


def _require_unit(space: Space, u: Point) -> None:
    n = _space_norm(space, u)
    if abs(n - 1.0) > UNIT_TOL:
        raise NotUnitVectorError(f"direction has norm {n!r}, expected 1")


def _require_origin_basepoint(space: Space, what: str) -> None:
    # closed-form families vanish at the origin; a shifted basepoint would
    # silently break the basepoint invariant
    base = space.basepoint
    if isinstance(base, SparseVector) and base.is_zero:
        return
    if isinstance(base, PLFunction) and all(v == 0.0 for v in base.ys):
        return
    raise UnsupportedSpaceError(f"{what} requires the origin basepoint")


@dataclass(frozen=True)
class Internal(MetricFunctional):
    """h(x) = d(x, anchor) - d(basepoint, anchor), the functional a point induces."""

    space: Space
    anchor: Point
    kind: ClassVar[str] = "internal"

    def __post_init__(self) -> None:
        self.space.require_member(self.anchor)

    def value(self, x: Point) -> float:
        return self.space.distance_difference(x, self.anchor, self.space.basepoint)

    def params(self) -> dict:
        return {"anchor": self.anchor}


@dataclass(frozen=True)
class ZeroFunctional(MetricFunctional):
    """The functional identically zero."""

    space: Space
    kind: ClassVar[str] = "zero"

    def value(self, x: Point) -> float:
        return 0.0

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class L1Linear(MetricFunctional):
    """h(x) = sum of sign(k) * x(k) over a signed index set, on l1.

    `signs` lists explicit coordinates; `tail_sign`, when set, applies to
    every other coordinate, which represents the members whose index set is
    the whole coordinate range. Values agree with the idealized infinite sum
    because points have finite support.
    """

    space: Space
    signs: tuple[tuple[int, int], ...] = ()
    tail_sign: int | None = None
    kind: ClassVar[str] = "l1_linear"

    def __post_init__(self) -> None:
        if not (isinstance(self.space, LpSpace) and self.space.p == 1.0):
            raise UnsupportedSpaceError("signed linear functionals live on l1")
        _require_origin_basepoint(self.space, "a signed linear functional")
        cleaned = tuple(sorted((int(k), int(s)) for k, s in self.signs))
        if any(s not in (-1, 1) or k < 1 for k, s in cleaned):
            raise ValueError("signs must map positive indices to -1 or +1")
        if len({k for k, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate index in sign map")
        if self.tail_sign not in (None, -1, 1):
            raise ValueError("tail sign must be -1, +1 or None")
        if not cleaned and self.tail_sign is None:
            raise ValueError("the index set must be nonempty")
        object.__setattr__(self, "signs", cleaned)

    def sign_at(self, index: int) -> int:
        for k, s in self.signs:
            if k == index:
                return s
        return self.tail_sign or 0

    def value(self, x: SparseVector) -> float:
        return math.fsum(self.sign_at(k) * v for k, v in x.items())

    def params(self) -> dict:
        return {"signs": self.signs, "tail_sign": self.tail_sign}


@dataclass(frozen=True)
class BusemannClosedLp(MetricFunctional):
    """Closed-form directional limit functional on lp.

    For p in (1, inf) the norm has a single supporting dual vector at the
    unit direction, giving a linear formula; for p = 1 the supporting set is
    a box and the free coordinates contribute their absolute value.
    """

    space: Space
    direction: SparseVector
    kind: ClassVar[str] = "busemann_lp"

    def __post_init__(self) -> None:
        if not isinstance(self.space, LpSpace):
            raise NotNormedSpaceError("closed-form directional functionals live on lp spaces")
        _require_origin_basepoint(self.space, "a directional functional")
        _require_unit(self.space, self.direction)

    def value(self, x: SparseVector) -> float:
        p = self.space.p
        u = self.direction
        if p == 1.0:
            total = [-math.copysign(1.0, u.get(k)) * x.get(k) for k in u.support]
            total += [abs(v) for k, v in x.items() if u.get(k) == 0.0]
            return math.fsum(total)
        return -math.fsum(
            v * math.copysign(abs(u.get(k)) ** (p - 1.0), u.get(k))
            for k, v in x.items()
            if u.get(k) != 0.0
        )

    def params(self) -> dict:
        return {"direction": self.direction}


@dataclass(frozen=True)
class BusemannNumeric(MetricFunctional):
    """Directional limit functional evaluated by a doubling ray schedule."""

    space: Space
    direction: Point
    tol: float = 1e-9
    max_doublings: int = 60
    kind: ClassVar[str] = "busemann_numeric"

    def __post_init__(self) -> None:
        _require_normed(self.space)
        _require_origin_basepoint(self.space, "a directional functional")
        _require_unit(self.space, self.direction)

    def value(self, x: Point) -> float:
        return busemann_numeric(self.space, self.direction, x,
                                tol=self.tol, max_doublings=self.max_doublings).value

    def params(self) -> dict:
        return {"direction": self.direction, "tol": self.tol,
                "max_doublings": self.max_doublings}


@dataclass(frozen=True)
class HilbertBall(MetricFunctional):
    """h(x) = sqrt(||x||^2 - 2<x, center> + level^2) - level on the l2 ball.

    Requires ||center|| <= level <= radius. At level = ||center|| this is the
    internal functional of the center point.
    """

    space: Space
    center: SparseVector
    level: float
    kind: ClassVar[str] = "hilbert_ball"

    def __post_init__(self) -> None:
        if not (isinstance(self.space, LpBall) and self.space.p == 2.0):
            raise UnsupportedSpaceError("this family lives on the l2 ball")
        _require_origin_basepoint(self.space, "the ball family")
        if self.center.norm(2.0) > self.level + UNIT_TOL:
            raise ValueError("need ||center|| <= level")
        if self.level > self.space.radius + UNIT_TOL:
            raise ValueError("need level <= ball radius")

    def value(self, x: SparseVector) -> float:
        q = x.norm(2.0) ** 2 - 2.0 * x.inner(self.center) + self.level * self.level
        return math.sqrt(max(q, 0.0)) - self.level

    def params(self) -> dict:
        return {"center": self.center, "level": self.level}


@dataclass(frozen=True)
class PointEvaluation(MetricFunctional):
    """h(f) = sign * (f(location) - basepoint(location)) on the sup-norm space."""

    space: Space
    location: float
    sign: int
    kind: ClassVar[str] = "point_eval"

    def __post_init__(self) -> None:
        if not isinstance(self.space, SupNormSpace):
            raise UnsupportedSpaceError("point evaluations live on the sup-norm space")
        if not 0.0 <= self.location <= 1.0:
            raise ValueError("location must lie in [0, 1]")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be -1 or +1")

    def value(self, f: PLFunction) -> float:
        base = self.space.basepoint.value_at(self.location)
        return self.sign * (f.value_at(self.location) - base)

    def params(self) -> dict:
        return {"location": self.location, "sign": self.sign}


@dataclass(frozen=True)
class Rebased(MetricFunctional):
    """inner shifted to vanish at a new basepoint: x -> inner(x) - inner(base)."""

    space: Space
    inner: MetricFunctional
    base: Point
    offset: float = field(init=False)
    kind: ClassVar[str] = "rebased"

    def __post_init__(self) -> None:
        self.space.require_member(self.base)
        object.__setattr__(self, "offset", self.inner.value(self.base))

    def value(self, x: Point) -> float:
        return self.inner.value(x) - self.offset

    def params(self) -> dict:
        return {"inner": self.inner, "base": self.base}


@dataclass(frozen=True)
class ShiftScaleView(MetricFunctional):
    """The functional x -> (inner(scale*x + shift*vector) - inner(shift*vector)) / |scale|.

    Pointwise equal to the internal functional anchored at
    (inner.anchor - shift*vector) / scale; keeping the view form lets the
    identity be checked through the parent functional.
    """

    space: Space
    inner: Internal
    scale: float
    shift: float
    vector: Point
    offset: float = field(init=False)
    kind: ClassVar[str] = "shift_scale_view"

    def __post_init__(self) -> None:
        if self.scale == 0.0:
            raise ZeroScaleError("scale must be nonzero")
        _require_normed(self.space)
        object.__setattr__(self, "offset", self.inner.value(self.vector * self.shift))

    def value(self, x: Point) -> float:
        moved = x * self.scale + self.vector * self.shift
        return (self.inner.value(moved) - self.offset) / abs(self.scale)

    def params(self) -> dict:
        return {"inner": self.inner, "scale": self.scale,
                "shift": self.shift, "vector": self.vector}


# ---------------------------------------------------------------------------
# Ray evaluation


def _lp_ray_gap(p: float, x: SparseVector, u: SparseVector, t: float) -> float:
    """||x - t*u||_p - t*||u||_p for a near-unit direction u.

    Measuring against the direction's own computed norm (exactly t for ideal
    unit input) keeps the evaluation stable: both sides scale identically
    with t, so no drift of order t times the normalization error appears.
    p = 1 is coordinatewise additive and becomes exact once t|u_k| dominates
    |x_k|; for p > 1 the difference of p-th powers is accumulated relative to
    the pure ray, then mapped back through expm1/log1p.
    """
    if p == 1.0:
        terms = []
        for k, uk in u.items():
            xk = x.get(k)
            if abs(xk) <= t * abs(uk):
                terms.append(-math.copysign(1.0, uk) * xk)
            else:
                terms.append(abs(xk - t * uk) - t * abs(uk))
        terms += [abs(v) for k, v in x.items() if u.get(k) == 0.0]
        return math.fsum(terms)

    diff_terms = []
    ray_terms = []
    for k, uk in u.items():
        xk = x.get(k)
        tau = t * abs(uk)
        ray_terms.append(tau ** p)
        r = xk / (t * uk)
        if abs(r) <= 0.5:
            diff_terms.append(tau ** p * math.expm1(p * math.log1p(-r)))
        else:
            diff_terms.append(abs(xk - t * uk) ** p - tau ** p)
    diff_terms += [abs(v) ** p for k, v in x.items() if u.get(k) == 0.0]
    s = math.fsum(ray_terms)
    d = math.fsum(diff_terms)
    ratio = d / s
    if ratio <= -1.0:
        return -(s ** (1.0 / p))
    return s ** (1.0 / p) * math.expm1(math.log1p(ratio) / p)


def _ray_gap(space: Space, u: Point, x: Point, t: float) -> float:
    if isinstance(space, LpSpace):
        return _lp_ray_gap(space.p, x, u, t)
    return _space_norm(space, x - u * t) - t * _space_norm(space, u)


@dataclass(frozen=True)
class BusemannEstimate:
    value: float
    converged: bool
    t_final: float


def busemann_numeric(space: Space, u: Point, x: Point, tol: float = 1e-9,
                     max_doublings: int = 60) -> BusemannEstimate:
    """Evaluate the directional limit lim_{t->inf} (||x - t*u|| - t).

    The map t -> ||x - t*u|| - t is non-increasing and bounded below by
    -||x||, so the doubling schedule t = 1, 2, 4, ... is followed until a
    doubling improves the running value by less than `tol`. The returned
    value is an upper bound on the limit; `converged` reports whether the
    stopping rule fired before the doubling budget ran out.
    """
    _require_normed(space)
    _require_unit(space, u)
    space.require_member(x)
    t = 1.0
    best = _ray_gap(space, u, x, t)
    converged = False
    for _ in range(max_doublings):
        t *= 2.0
        val = _ray_gap(space, u, x, t)
        improvement = best - val
        if val < best:
            best = val
        if improvement < tol:
            converged = True
            break
    floor = -_space_norm(space, x)
    if best < floor:
        best = floor
    return BusemannEstimate(best, converged, t)


def busemann_closed_lp(p: float, u: SparseVector, x: SparseVector) -> float:
    """Closed-form directional functional on lp at the origin basepoint."""
    return BusemannClosedLp(LpSpace(p), u).evaluate(x)


# ---------------------------------------------------------------------------
# Transforms and derived constructions


def rebase(h: MetricFunctional, base: Point) -> MetricFunctional:
    """View h from a new basepoint: the result vanishes at `base` and differs
    from h by the constant h(base).

    When h already vanishes at `base` the shift is zero and h itself is
    returned; this covers rebasing an ordinary member at the original
    basepoint, but not a rebased view, which vanishes at its own base only.
    """
    h.space.require_member(base)
    if h.value(base) == 0.0:
        return h
    return Rebased(h.space, h, base)


def shift_scale(h: Internal, scale: float, shift: float,
                vector: Point) -> tuple[Internal, float]:
    """Rewrite x -> h(scale*x + shift*vector) through a new internal functional.

    Returns (eta, offset) with eta internal and
    h(scale*x + shift*vector) = |scale| * eta(x) + offset for all x, where
    offset = h(shift*vector). The new anchor is
    (anchor - shift*vector) / scale.
    """
    if not isinstance(h, Internal):
        raise TypeError("shift_scale rewrites internal functionals")
    if scale == 0.0:
        raise ZeroScaleError("scale must be nonzero")
    _require_normed(h.space)
    anchor = (h.anchor - vector * shift) * (1.0 / scale)
    offset = h.value(vector * shift)
    return Internal(h.space, anchor), offset


def separating_busemann(space: Space, x: Point, y: Point) -> tuple[MetricFunctional, float]:
    """A directional functional separating two distinct points.

    Along the unit direction (x - y)/||x - y|| the functional satisfies
    h(x) = -||x - y|| + h(y); the returned gap is h(y) - h(x) = ||x - y||.
    """
    _require_normed(space)
    space.require_member(x, y)
    if x == y:
        raise EqualPointsError("separation needs two distinct points")
    diff = x - y
    n = _space_norm(space, diff)
    u = diff * (1.0 / n)
    if isinstance(space, LpSpace):
        h: MetricFunctional = BusemannClosedLp(space, u)
    else:
        h = BusemannNumeric(space, u)
    gap = h.evaluate(y) - h.evaluate(x)
    return h, gap


def norm_via_busemann(space: Space, v: Point, n_directions: int = 32,
                      seed: int = 2024) -> tuple[float, MetricFunctional | None]:
    """Recover ||v|| as the supremum of directional functionals at v.

    Samples seeded directions, adds the analytic witness -v/||v||, and
    returns the supremum together with the witness functional. Every sampled
    value is bounded by ||v|| because the functionals are 1-Lipschitz and
    vanish at the origin.
    """
    _require_normed(space)
    space.require_member(v)
    nv = _space_norm(space, v)
    if nv == 0.0:
        return 0.0, None

    def directional(u: Point) -> MetricFunctional:
        if isinstance(space, LpSpace):
            return BusemannClosedLp(space, u)
        return BusemannNumeric(space, u)

    witness = directional(v * (-1.0 / nv))
    best = witness.evaluate(v)
    rng = np.random.default_rng(seed)
    for cand in space.sample(rng, n_directions):
        n = _space_norm(space, cand)
        if n == 0.0:
            continue
        val = directional(cand * (1.0 / n)).evaluate(v)
        if val > best:
            best = val
    return best, witness


@dataclass(frozen=True)
class FunctionalPropertyReport:
    """Sampled residuals for the defining properties of a functional."""

    functional: str
    n_samples: int
    seed: int
    basepoint_value: float
    max_lipschitz_ratio: float | None
    max_wconvex_violation: float | None
    max_subadditivity_violation: float | None
    max_homogeneity_residual: float | None


def check_properties(h: MetricFunctional, n_samples: int = 200,
                     seed: int = 2024) -> FunctionalPropertyReport:
    """Sample the Lipschitz bound, convexity along the combination map, and
    (for directional functionals on normed spaces) subadditivity and
    positive homogeneity."""
    space = h.space
    rng = np.random.default_rng(seed)
    pts = list(space.sample(rng, max(8, n_samples // 4))) + [space.basepoint]
    n = len(pts)

    lipschitz = None
    for _ in range(n_samples):
        i, j = rng.integers(0, n, size=2)
        x, y = pts[int(i)], pts[int(j)]
        d = space.distance(x, y)
        if d <= 1e-12:
            continue
        ratio = abs(h.value(x) - h.value(y)) / d
        lipschitz = ratio if lipschitz is None else max(lipschitz, ratio)

    wconvex = None
    if space.supports_w_combine:
        wconvex = 0.0
        for _ in range(n_samples):
            i, j = rng.integers(0, n, size=2)
            t = float(rng.uniform(0.0, 1.0))
            x, y = pts[int(i)], pts[int(j)]
            mid = w_combine(space, x, y, t)
            excess = h.value(mid) - ((1.0 - t) * h.value(x) + t * h.value(y))
            wconvex = max(wconvex, excess)

    subadd = None
    homog = None
    if h.kind in ("busemann_lp", "busemann_numeric") and space.is_normed:
        subadd = 0.0
        homog = 0.0
        for _ in range(n_samples // 2):
            i, j = rng.integers(0, n, size=2)
            x, y = pts[int(i)], pts[int(j)]
            subadd = max(subadd, h.value(x + y) - h.value(x) - h.value(y))
            s = float(rng.uniform(0.0, 3.0))
            homog = max(homog, abs(h.value(x * s) - s * h.value(x)))

    return FunctionalPropertyReport(
        functional=h.label,
        n_samples=n_samples,
        seed=seed,
        basepoint_value=h.value(space.basepoint),
        max_lipschitz_ratio=lipschitz,
        max_wconvex_violation=wconvex,
        max_subadditivity_violation=subadd,
        max_homogeneity_residual=homog,
    )


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class FunctionalFamily:
    """A deterministic, finite stand-in for the full functional inventory.

    Members are enumerated in a fixed order; testers that scan the family
    report the first member in this order, so results do not depend on
    evaluation scheduling.
    """

    space: Space
    members: tuple[MetricFunctional, ...]
    coverage_note: str = ""

    def __iter__(self) -> Iterator[MetricFunctional]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> MetricFunctional:
        return self.members[i]


def _dedupe(members: Sequence[MetricFunctional]) -> list[MetricFunctional]:
    return list(dict.fromkeys(members))


def _normalized_directions(space: Space, anchors: Sequence[Point],
                           coord_range: int = 4) -> list[SparseVector]:
    dirs: list[SparseVector] = []
    for k in range(1, coord_range + 1):
        dirs.append(unit(k))
        dirs.append(unit(k, -1.0))
    for a in anchors:
        if isinstance(a, SparseVector) and not a.is_zero:
            n = _space_norm(space, a)
            dirs.append(a * (1.0 / n))
            dirs.append(a * (-1.0 / n))
    return list(dict.fromkeys(dirs))


def _anchor_indices(anchors: Sequence[Point], fallback: int = 4, cap: int = 8) -> list[int]:
    indices: set[int] = set(range(1, fallback + 1))
    for a in anchors:
        if isinstance(a, SparseVector):
            indices.update(a.support)
    return sorted(indices)[:cap]


def _enumerate_l1_linear(space: LpSpace, indices: Sequence[int],
                         cap: int) -> list[L1Linear]:
    """Full-range constant-sign members first, then finite index sets ordered
    by size, index set, and sign pattern."""
    from itertools import combinations, product

    members: list[L1Linear] = [
        L1Linear(space, (), -1),
        L1Linear(space, (), 1),
    ]
    for size in range(1, len(indices) + 1):
        for subset in combinations(indices, size):
            for pattern in product((-1, 1), repeat=size):
                members.append(L1Linear(space, tuple(zip(subset, pattern))))
                if len(members) >= cap:
                    return members
    return members


def default_family(space: Space, budget: int = 64, *, anchors: Sequence[Point] = (),
                   seed: int = 2024) -> FunctionalFamily:
    """Assemble the documented functional inventory for a catalog space.

    `anchors` are points the caller cares about (candidate limits, probe
    grids); they steer internal anchors, directions, and index windows so the
    family is sharp where it will be interrogated. `budget` caps the member
    count, keeping must-have members first.
    """
    rng = np.random.default_rng(seed)
    members: list[MetricFunctional] = []
    note = ""

    if isinstance(space, FiniteMetricSpace):
        members = [Internal(space, p) for p in space.points()]
        return FunctionalFamily(space, tuple(members),
                                f"all {space.size} internals (complete inventory)")

    if isinstance(space, LpSpace):
        internals: list[MetricFunctional] = [Internal(space, SparseVector())]
        internals += [Internal(space, u) for u in _normalized_directions(space, ())]
        internals += [Internal(space, a) for a in anchors if isinstance(a, SparseVector)]
        while len(internals) < max(8, budget // 4):
            internals.append(Internal(space, space.sample(rng, 1)[0]))
        directions = _normalized_directions(space, anchors)
        if space.p == 1.0:
            linear = _enumerate_l1_linear(space, _anchor_indices(anchors),
                                          cap=max(8, budget // 2))
            busemann = [BusemannClosedLp(space, u) for u in directions]
            members = _dedupe(internals) + linear + busemann
            note = f"l1: internals + signed linear (seed {seed}) + coordinate limits"
        else:
            busemann = [BusemannClosedLp(space, u) for u in directions]
            members = _dedupe(internals) + busemann + [ZeroFunctional(space)]
            note = f"lp(p={space.p}): internals + directional limits + zero (seed {seed})"

    elif isinstance(space, LpBall) and space.p == 2.0:
        r = space.radius
        dirs = _normalized_directions(space, anchors)
        members = [HilbertBall(space, SparseVector(), 0.0)]
        for c_frac in (1.0, 0.75, 0.5, 0.25):
            c = c_frac * r
            for d in dirs:
                members.append(HilbertBall(space, d * c, c))
        members += [HilbertBall(space, SparseVector(), 0.5 * r),
                    HilbertBall(space, SparseVector(), r)]
        members = _dedupe(members)
        note = f"l2 ball: center/level grid over {len(dirs)} directions"

    elif isinstance(space, LpBall):
        r = space.radius
        members = [Internal(space, SparseVector())]
        for k in range(1, 5):
            members.append(Internal(space, unit(k, 0.5 * r)))
            members.append(Internal(space, unit(k, -0.5 * r)))
        members += [Internal(space, a) for a in anchors
                    if isinstance(a, SparseVector) and space.contains(a)]
        while len(members) < max(8, budget // 2):
            members.append(Internal(space, space.sample(rng, 1)[0]))
        members = _dedupe(members)
        note = f"lp ball: internals only (seed {seed})"

    elif isinstance(space, SupNormSpace):
        members = [Internal(space, space.basepoint)]
        members += [Internal(space, a) for a in anchors if isinstance(a, PLFunction)]
        members += [Internal(space, f) for f in space.sample(rng, max(4, budget // 8))]
        grid = {0.0, 0.25, 0.5, 0.75, 1.0}
        for a in anchors:
            if isinstance(a, PLFunction):
                grid.update(a.xs)
        for t in sorted(grid):
            members.append(PointEvaluation(space, t, 1))
            members.append(PointEvaluation(space, t, -1))
        members = _dedupe(members)
        note = f"sup-norm: internals + point evaluations (seed {seed})"

    elif isinstance(space, DiscreteSpace):
        atoms = [space.basepoint]
        atoms += [a for a in anchors if isinstance(a, Atom)]
        atoms += [Atom(i) for i in range(8)]
        members = [Internal(space, a) for a in dict.fromkeys(atoms)]
        members.append(ZeroFunctional(space))
        note = "discrete: internals over materialized atoms + zero"

    elif isinstance(space, SnowflakeLine):
        scalars = [space.basepoint]
        scalars += [a for a in anchors if isinstance(a, ScalarPoint)]
        scalars += list(space.sample(rng, max(4, budget // 4)))
        members = [Internal(space, s) for s in dict.fromkeys(scalars)]
        members.append(ZeroFunctional(space))
        note = f"snowflake: internals + zero (seed {seed})"

    elif isinstance(space, CountableSubsetOfL1):
        # Enumerated members stay within the default burn-in region: an
        # internal anchored at a point the sequence visits exactly once dips
        # exactly once, which certifies nothing on a finite window.
        bound = space.member_count()
        count = bound if bound is not None else 8
        pts = [space.member_at(j) for j in range(count)]
        pts += [a for a in anchors if isinstance(a, SparseVector) and space.contains(a)]
        members = [Internal(space, p) for p in dict.fromkeys(pts)]
        note = "countable l1 subset: internals (complete inventory on the truncation)"

    else:
        raise UnsupportedSpaceError(f"no default family for {space.describe()}")

    members = _dedupe(members)[:budget]
    return FunctionalFamily(space, tuple(members), note)
