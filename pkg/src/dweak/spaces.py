"""The metric-space catalog: distances, basepoints, membership, convex structure.

Every space is immutable and hashable; all operations are pure functions of
their inputs. Sampling-based validation records the seed it used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import (
    EmptyInputError,
    InvalidSpaceError,
    MembershipError,
    UnsupportedSpaceError,
)
from .points import Atom, PLFunction, Point, ScalarPoint, SparseVector

BALL_SLACK = 1e-12
METRIC_TOL = 1e-9


class Space:
    """Base class: a metric, a basepoint, and a membership test."""

    kind: str = "space"
    basepoint: Point

    def contains(self, x: Point) -> bool:
        raise NotImplementedError

    def distance(self, x: Point, y: Point) -> float:
        raise NotImplementedError

    def distance_difference(self, x: Point, w: Point, y: Point) -> float:
        """d(x, w) - d(y, w).

        Overridden where the naive difference of two large distances loses
        the digits that carry the answer (coordinate vectors far out in an
        lp space).
        """
        return self.distance(x, w) - self.distance(y, w)

    def require_member(self, *pts: Point) -> None:
        for pt in pts:
            if not self.contains(pt):
                raise MembershipError(f"{pt!r} is not a member of {self.describe()}")

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    @property
    def is_normed(self) -> bool:
        """Whole normed linear space (rays to infinity available)."""
        return False

    @property
    def supports_w_combine(self) -> bool:
        """Affine combinations stay inside the space."""
        return False


def _sample_sparse(rng: np.random.Generator, max_index: int = 8,
                   max_support: int = 3, scale: float = 2.0) -> SparseVector:
    size = int(rng.integers(0, max_support + 1))
    if size == 0:
        return SparseVector()
    indices = rng.choice(np.arange(1, max_index + 1), size=size, replace=False)
    values = rng.uniform(0.25, scale, size=size) * rng.choice([-1.0, 1.0], size=size)
    return SparseVector({int(i): float(v) for i, v in zip(indices, values)})


def _lp_distance(p: float, x: SparseVector, y: SparseVector) -> float:
    return (x - y).norm(p)


def _lp_distance_difference(p: float, x: SparseVector, w: SparseVector,
                            y: SparseVector) -> float:
    """||x - w||_p - ||y - w||_p without catastrophic cancellation.

    For p = 1 the norm is coordinatewise additive, so the difference is a sum
    of per-coordinate differences, each bounded by the data at that
    coordinate. For p > 1 the difference of p-th powers is accumulated per
    coordinate and converted back through expm1/log1p.
    """
    keys = set(x.support) | set(y.support) | set(w.support)
    if p == 1:
        return math.fsum(
            abs(x.get(k) - w.get(k)) - abs(y.get(k) - w.get(k)) for k in keys
        )
    s_y = math.fsum(abs(y.get(k) - w.get(k)) ** p for k in keys)
    diff = math.fsum(
        abs(x.get(k) - w.get(k)) ** p - abs(y.get(k) - w.get(k)) ** p for k in keys
    )
    if s_y == 0.0:
        return (max(diff, 0.0)) ** (1.0 / p)
    b = s_y ** (1.0 / p)
    ratio = diff / s_y
    if ratio <= -1.0:
        return -b
    return b * math.expm1(math.log1p(ratio) / p)


@dataclass(frozen=True)
class LpSpace(Space):
    """Finitely supported real sequences under the lp norm, 1 <= p < infinity."""

    p: float
    basepoint: SparseVector = field(default_factory=SparseVector)
    kind = "lp_space"

    def __post_init__(self) -> None:
        if not (1.0 <= self.p < math.inf):
            raise InvalidSpaceError(f"p must lie in [1, inf), got {self.p}")
        if not isinstance(self.basepoint, SparseVector):
            raise InvalidSpaceError("lp basepoint must be a sparse vector")

    def norm(self, x: SparseVector) -> float:
        return x.norm(self.p)

    def contains(self, x: Point) -> bool:
        return isinstance(x, SparseVector)

    def distance(self, x: SparseVector, y: SparseVector) -> float:
        return _lp_distance(self.p, x, y)

    def distance_difference(self, x: Point, w: Point, y: Point) -> float:
        return _lp_distance_difference(self.p, x, w, y)

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        return [_sample_sparse(rng) for _ in range(count)]

    def describe(self) -> str:
        return f"lp_space(p={self.p})"

    @property
    def is_normed(self) -> bool:
        return True

    @property
    def supports_w_combine(self) -> bool:
        return True


@dataclass(frozen=True)
class LpBall(Space):
    """Closed ball of radius r in an lp space, with the subspace metric."""

    p: float
    radius: float
    basepoint: SparseVector = field(default_factory=SparseVector)
    kind = "lp_ball"

    def __post_init__(self) -> None:
        if not (1.0 <= self.p < math.inf):
            raise InvalidSpaceError(f"p must lie in [1, inf), got {self.p}")
        if not self.radius > 0:
            raise InvalidSpaceError("ball radius must be positive")
        if self.basepoint.norm(self.p) > self.radius + BALL_SLACK:
            raise InvalidSpaceError("basepoint lies outside the ball")

    def norm(self, x: SparseVector) -> float:
        return x.norm(self.p)

    def contains(self, x: Point) -> bool:
        return isinstance(x, SparseVector) and x.norm(self.p) <= self.radius + BALL_SLACK

    def distance(self, x: SparseVector, y: SparseVector) -> float:
        return _lp_distance(self.p, x, y)

    def distance_difference(self, x: Point, w: Point, y: Point) -> float:
        return _lp_distance_difference(self.p, x, w, y)

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        out: list[Point] = []
        for _ in range(count):
            x = _sample_sparse(rng)
            n = x.norm(self.p)
            if n > 0:
                x = x * (self.radius * float(rng.uniform(0.05, 0.95)) / n)
            out.append(x)
        return out

    def describe(self) -> str:
        return f"lp_ball(p={self.p}, r={self.radius})"

    @property
    def supports_w_combine(self) -> bool:
        return True


@dataclass(frozen=True)
class SnowflakeLine(Space):
    """The real line under |x - y|^alpha with 0 < alpha < 1."""

    alpha: float
    basepoint: ScalarPoint = ScalarPoint(0.0)
    kind = "snowflake_line"

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise InvalidSpaceError(f"alpha must lie in (0, 1), got {self.alpha}")

    def contains(self, x: Point) -> bool:
        return isinstance(x, ScalarPoint)

    def distance(self, x: ScalarPoint, y: ScalarPoint) -> float:
        return abs(x.value - y.value) ** self.alpha

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        return [ScalarPoint(float(v)) for v in rng.uniform(-10.0, 10.0, size=count)]

    def describe(self) -> str:
        return f"snowflake_line(alpha={self.alpha})"


@dataclass(frozen=True)
class DiscreteSpace(Space):
    """Countably many atoms under the discrete metric; atoms are materialized lazily."""

    basepoint: Atom = Atom(0)
    kind = "discrete"

    def contains(self, x: Point) -> bool:
        return isinstance(x, Atom)

    def distance(self, x: Atom, y: Atom) -> float:
        return 0.0 if x == y else 1.0

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        return [Atom(int(i)) for i in rng.integers(0, 12, size=count)]


@dataclass(frozen=True)
class FiniteMetricSpace(Space):
    """n points with a tabulated distance matrix; atoms 0..n-1.

    The constructor only checks the shape. Metric axioms are reported as data
    by `check` / `validate_space`, so exact oracles can refuse invalid input
    while validation examples can still be expressed.
    """

    matrix: tuple[tuple[float, ...], ...]
    basepoint: Atom = Atom(0)
    kind = "finite"

    def __post_init__(self) -> None:
        n = len(self.matrix)
        if n == 0:
            raise InvalidSpaceError("distance matrix must be nonempty")
        rows = tuple(tuple(float(v) for v in row) for row in self.matrix)
        if any(len(row) != n for row in rows):
            raise InvalidSpaceError("distance matrix must be square")
        object.__setattr__(self, "matrix", rows)
        if not 0 <= self.basepoint.id < n:
            raise InvalidSpaceError("basepoint id outside the matrix")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def points(self) -> list[Atom]:
        return [Atom(i) for i in range(self.size)]

    def contains(self, x: Point) -> bool:
        return isinstance(x, Atom) and 0 <= x.id < self.size

    def distance(self, x: Atom, y: Atom) -> float:
        return self.matrix[x.id][y.id]

    def check(self) -> list["AxiomViolation"]:
        """Exhaustive metric-axiom check; violations are data, not errors."""
        out: list[AxiomViolation] = []
        n = self.size
        m = self.matrix
        for i in range(n):
            if m[i][i] != 0.0:
                out.append(AxiomViolation("identity", (Atom(i),), m[i][i]))
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    out.append(AxiomViolation("symmetry", (Atom(i), Atom(j)),
                                              abs(m[i][j] - m[j][i])))
                if m[i][j] <= 0.0:
                    out.append(AxiomViolation("positivity", (Atom(i), Atom(j)), m[i][j]))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    excess = m[i][k] - m[i][j] - m[j][k]
                    if excess > 0.0:
                        out.append(AxiomViolation("triangle", (Atom(i), Atom(j), Atom(k)),
                                                  excess))
        return out

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        return [Atom(int(i)) for i in rng.integers(0, self.size, size=count)]

    def describe(self) -> str:
        return f"finite(n={self.size})"

    @classmethod
    def discrete(cls, n: int, basepoint: int = 0) -> "FiniteMetricSpace":
        matrix = tuple(tuple(0.0 if i == j else 1.0 for j in range(n)) for i in range(n))
        return cls(matrix, Atom(basepoint))

    @classmethod
    def line(cls, n: int, step: float = 1.0, basepoint: int = 0) -> "FiniteMetricSpace":
        matrix = tuple(tuple(abs(i - j) * step for j in range(n)) for i in range(n))
        return cls(matrix, Atom(basepoint))


@dataclass(frozen=True)
class CountableSubsetOfL1(Space):
    """A countable set of sparse vectors with the l1 metric.

    Patterns describe the two canonical infinite subsets exactly; `explicit`
    materializes a finite list.
    """

    pattern: str = "explicit"
    points: tuple[SparseVector, ...] = ()
    basepoint: SparseVector = field(default_factory=SparseVector)
    kind = "countable_l1"

    _PATTERNS = ("explicit", "zero_and_units", "zero_and_scaled_units")

    def __post_init__(self) -> None:
        if self.pattern not in self._PATTERNS:
            raise InvalidSpaceError(f"unknown pattern {self.pattern!r}")
        if self.pattern == "explicit":
            if not self.points:
                raise InvalidSpaceError("explicit subset needs at least one point")
            if self.basepoint not in self.points:
                raise InvalidSpaceError("basepoint must be one of the listed points")
        elif not self.basepoint.is_zero:
            raise InvalidSpaceError("pattern subsets use the zero vector as basepoint")

    def contains(self, x: Point) -> bool:
        if not isinstance(x, SparseVector):
            return False
        if self.pattern == "explicit":
            return x in self.points
        if x.is_zero:
            return True
        items = x.items()
        if len(items) != 1:
            return False
        index, value = items[0]
        if self.pattern == "zero_and_units":
            return value == 1.0
        return value == float(index)

    def member_at(self, j: int) -> SparseVector:
        """Enumerate members: index 0 is the basepoint pattern's zero vector."""
        if self.pattern == "explicit":
            return self.points[j]
        if j == 0:
            return SparseVector()
        if self.pattern == "zero_and_units":
            return SparseVector({j: 1.0})
        return SparseVector({j: float(j)})

    def member_count(self) -> int | None:
        return len(self.points) if self.pattern == "explicit" else None

    def distance(self, x: SparseVector, y: SparseVector) -> float:
        return _lp_distance(1.0, x, y)

    def distance_difference(self, x: Point, w: Point, y: Point) -> float:
        return _lp_distance_difference(1.0, x, w, y)

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        bound = self.member_count() or 12
        return [self.member_at(int(j)) for j in rng.integers(0, bound, size=count)]

    def describe(self) -> str:
        return f"countable_l1({self.pattern})"

    @classmethod
    def zero_and_units(cls) -> "CountableSubsetOfL1":
        """The set {0, e_1, e_2, ...} inside l1."""
        return cls(pattern="zero_and_units")

    @classmethod
    def zero_and_scaled_units(cls) -> "CountableSubsetOfL1":
        """The set {0, e_1, 2 e_2, 3 e_3, ...} inside l1."""
        return cls(pattern="zero_and_scaled_units")


@dataclass(frozen=True)
class SupNormSpace(Space):
    """Piecewise-linear functions on [0, 1] under the sup norm."""

    basepoint: PLFunction = field(default_factory=PLFunction.zero)
    kind = "sup_norm"

    def norm(self, x: PLFunction) -> float:
        return x.sup_norm()

    def contains(self, x: Point) -> bool:
        return isinstance(x, PLFunction)

    def distance(self, x: PLFunction, y: PLFunction) -> float:
        return x.sup_distance(y)

    def sample(self, rng: np.random.Generator, count: int) -> list[Point]:
        out: list[Point] = []
        for _ in range(count):
            inner = np.sort(rng.uniform(0.05, 0.95, size=int(rng.integers(0, 4))))
            grid = (0.0, *map(float, inner), 1.0)
            values = rng.uniform(-2.0, 2.0, size=len(grid))
            out.append(PLFunction(grid, tuple(float(v) for v in values)))
        return out

    @property
    def is_normed(self) -> bool:
        return True

    @property
    def supports_w_combine(self) -> bool:
        return True


@dataclass(frozen=True)
class AxiomViolation:
    """One failed metric axiom, with the witnessing points and the excess."""

    axiom: str
    points: tuple[Point, ...]
    amount: float

    def __str__(self) -> str:
        return f"{self.axiom} violation at {self.points} (excess {self.amount:.3g})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_space; `seed` is None for exhaustive checks."""

    space_kind: str
    violations: tuple[AxiomViolation, ...]
    n_samples: int
    seed: int | None

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_space(space: Space, n_samples: int = 80, seed: int = 2024) -> ValidationReport:
    """Check the metric axioms: exhaustively for tabulated spaces, by seeded
    sampling otherwise."""
    if isinstance(space, FiniteMetricSpace):
        return ValidationReport(space.kind, tuple(space.check()), space.size, None)

    rng = np.random.default_rng(seed)
    pts = list(space.sample(rng, n_samples)) + [space.basepoint]
    violations: list[AxiomViolation] = []
    for x in pts:
        if space.distance(x, x) != 0.0:
            violations.append(AxiomViolation("identity", (x,), space.distance(x, x)))
    n = len(pts)
    for _ in range(4 * n_samples):
        i, j, k = rng.integers(0, n, size=3)
        x, y, z = pts[int(i)], pts[int(j)], pts[int(k)]
        dxy, dyx = space.distance(x, y), space.distance(y, x)
        if dxy < 0:
            violations.append(AxiomViolation("nonnegativity", (x, y), -dxy))
        if abs(dxy - dyx) > METRIC_TOL:
            violations.append(AxiomViolation("symmetry", (x, y), abs(dxy - dyx)))
        if dxy == 0.0 and x != y:
            violations.append(AxiomViolation("identity", (x, y), 0.0))
        excess = space.distance(x, z) - dxy - space.distance(y, z)
        if excess > METRIC_TOL:
            violations.append(AxiomViolation("triangle", (x, y, z), excess))
    return ValidationReport(space.kind, tuple(violations), n_samples, seed)


def distance(space: Space, x: Point, y: Point) -> float:
    """Membership-checked distance."""
    space.require_member(x, y)
    return space.distance(x, y)


def w_combine(space: Space, x: Point, y: Point, t: float) -> Point:
    """The affine combination (1-t)x + ty, where the space supports one.

    The endpoints are returned exactly, not recomputed.
    """
    if not space.supports_w_combine:
        raise UnsupportedSpaceError(f"{space.describe()} has no convex combination map")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t}")
    space.require_member(x, y)
    if t == 0.0:
        return x
    if t == 1.0:
        return y
    return x * (1.0 - t) + y * t


def hull(space: FiniteMetricSpace, points: Iterable[Atom]) -> tuple[Atom, ...]:
    """Intersection of all closed balls containing the given set.

    On a finite space the intersection over all enclosing balls equals the
    intersection over centers q of the tightest enclosing ball at q, so the
    hull is computed exactly by enumeration.
    """
    if not isinstance(space, FiniteMetricSpace):
        raise UnsupportedSpaceError("exact hulls are computed on tabulated spaces only")
    members = list(points)
    if not members:
        raise EmptyInputError("hull of the empty set is undefined")
    space.require_member(*members)
    radii = {q.id: max(space.distance(a, q) for a in members) for q in space.points()}
    return tuple(
        x for x in space.points()
        if all(space.distance(x, q) <= radii[q.id] for q in space.points())
    )


def sample_points(space: Space, count: int, seed: int = 2024) -> list[Point]:
    """Seeded point sampler used by validation and property checks."""
    return space.sample(np.random.default_rng(seed), count)
