"""Finite-horizon convergence testers with certificates.

A window minimum cannot prove a liminf inequality, and a prefix cannot
falsify one. Verdicts therefore report evidence: a Violation is certified
only when the window minimum is stable (the low values keep recurring into
the tail half) and the gap exceeds the tolerance; a Consistent verdict
carries the worst margin observed; anything else is Inconclusive with a
reason.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    PreconditionFailedError,
    UnsupportedSpaceError,
)
from .functionals import (
    FunctionalFamily,
    Internal,
    MetricFunctional,
    ZeroFunctional,
    default_family,
)
from .points import Atom, Point, SparseVector
from .sequences import CoordinateBlowup, SequenceSpec, combine_linear
from .spaces import (
    CountableSubsetOfL1,
    DiscreteSpace,
    LpBall,
    LpSpace,
    Space,
    w_combine,
)

DEFAULT_TOL = 1e-7


def _resolve_window(seq: SequenceSpec, n_terms: int | None,
                    burn_in: int | None) -> tuple[int, int]:
    n = n_terms or seq.horizon
    if burn_in is None:
        burn_in = max(1, n // 10)
    if not 1 <= burn_in < n:
        raise ValueError(f"need 1 <= burn_in < n_terms, got ({burn_in}, {n})")
    return burn_in, n


@dataclass(frozen=True)
class LiminfEstimate:
    """Window minimum of h along a sequence, with a tail-stability flag.

    `stable` is true when the minimum over the tail half matches the window
    minimum within tol, i.e. the low values keep recurring.
    """

    value: float
    stable: bool
    argmin: int
    window: tuple[int, int]
    tail_value: float


def _estimate_from_values(values: Sequence[float], burn_in: int, n: int,
                          tol: float) -> LiminfEstimate:
    # values[i] is the term at index burn_in + i
    argmin = min(range(len(values)), key=values.__getitem__)
    vmin = values[argmin]
    tail_from = max(burn_in, n // 2)
    tail = values[tail_from - burn_in:]
    tail_min = min(tail)
    return LiminfEstimate(
        value=vmin,
        stable=(tail_min - vmin) <= tol,
        argmin=burn_in + argmin,
        window=(burn_in, n),
        tail_value=tail_min,
    )


def liminf_estimate(h: MetricFunctional, seq: SequenceSpec,
                    burn_in: int | None = None, n_terms: int | None = None,
                    tol: float = DEFAULT_TOL) -> LiminfEstimate:
    """Finite-horizon surrogate for the limit inferior of h along a sequence."""
    burn_in, n = _resolve_window(seq, n_terms, burn_in)
    terms = [seq.point_at(k) for k in range(burn_in, n + 1)]
    seq.space.require_member(*terms)
    values = [h.value(x) for x in terms]
    return _estimate_from_values(values, burn_in, n, tol)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a convergence test at a candidate limit."""

    outcome: str  # consistent | violation | inconclusive
    candidate: Point
    n_terms: int
    tol: float
    margin: float | None = None
    gap: float | None = None
    witness: MetricFunctional | None = None
    probe: Point | None = None
    window: tuple[int, int] | None = None
    reason: str | None = None

    @property
    def is_consistent(self) -> bool:
        return self.outcome == "consistent"

    @property
    def is_violation(self) -> bool:
        return self.outcome == "violation"

    @property
    def is_inconclusive(self) -> bool:
        return self.outcome == "inconclusive"


class DweakTester:
    """Shared engine: window minima per family member, verdicts per candidate.

    Estimates do not depend on the candidate, so they are computed once and
    reused across candidates (grids, convexity probes, bisection). Members
    are scanned in family order and the first stable violator is reported,
    which keeps results independent of any evaluation scheduling.
    """

    def __init__(self, seq: SequenceSpec, family: FunctionalFamily,
                 n_terms: int | None = None, burn_in: int | None = None,
                 tol: float = DEFAULT_TOL):
        if family.space != seq.space:
            raise ValueError("family and sequence live in different spaces")
        self.seq = seq
        self.family = family
        self.tol = tol
        self.burn_in, self.n_terms = _resolve_window(seq, n_terms, burn_in)
        self._terms: list[Point] | None = None
        self._estimates: dict[int, LiminfEstimate] = {}

    def window_terms(self) -> list[Point]:
        if self._terms is None:
            terms = [self.seq.point_at(k) for k in range(self.burn_in, self.n_terms + 1)]
            self.seq.space.require_member(*terms)
            self._terms = terms
        return self._terms

    def estimate(self, index: int) -> LiminfEstimate:
        est = self._estimates.get(index)
        if est is None:
            member = self.family[index]
            values = [member.value(x) for x in self.window_terms()]
            est = _estimate_from_values(values, self.burn_in, self.n_terms, self.tol)
            self._estimates[index] = est
        return est

    def verdict(self, z: Point) -> Verdict:
        self.seq.space.require_member(z)
        unstable: tuple[MetricFunctional, LiminfEstimate, float] | None = None
        margin = math.inf
        for i, member in enumerate(self.family):
            est = self.estimate(i)
            hz = member.value(z)
            if est.value < hz - self.tol:
                if est.stable:
                    return Verdict(
                        outcome="violation", candidate=z, n_terms=self.n_terms,
                        tol=self.tol, gap=hz - est.value, witness=member,
                        window=est.window,
                    )
                if unstable is None:
                    unstable = (member, est, hz)
            margin = min(margin, est.value - hz)
        if unstable is not None:
            member, est, hz = unstable
            return Verdict(
                outcome="inconclusive", candidate=z, n_terms=self.n_terms,
                tol=self.tol, window=est.window,
                reason=(f"window minimum of {member.label} sits {hz - est.value:.3g} "
                        "below the candidate value but does not recur in the tail"),
            )
        return Verdict(outcome="consistent", candidate=z, n_terms=self.n_terms,
                       tol=self.tol, margin=margin,
                       window=(self.burn_in, self.n_terms))


def test_dweak(seq: SequenceSpec, z: Point, family: FunctionalFamily,
               n_terms: int | None = None, burn_in: int | None = None,
               tol: float = DEFAULT_TOL) -> Verdict:
    """Test the liminf inequality at z against every family member."""
    return DweakTester(seq, family, n_terms, burn_in, tol).verdict(z)


def _default_probes(space: Space, z: Point, seed: int = 7) -> list[Point]:
    rng = np.random.default_rng(seed)
    probes = [space.basepoint, z]
    probes += space.sample(rng, 8)
    return list(dict.fromkeys(probes))


def test_delta(seq: SequenceSpec, z: Point, probes: Iterable[Point] | None = None,
               n_terms: int | None = None, burn_in: int | None = None,
               tol: float = DEFAULT_TOL) -> Verdict:
    """Asymptotic-center test: d(z, x_n) <= d(y, x_n) + o(1) for every probe y.

    The o(1) surrogate is the maximum of d(z, x_n) - d(y, x_n) over the tail
    half; a probe certifies a violation when that maximum exceeds tol and
    already occurs in the last quarter of the window.
    """
    burn_in, n = _resolve_window(seq, n_terms, burn_in)
    space = seq.space
    space.require_member(z)
    probe_list = list(probes) if probes is not None else _default_probes(space, z)
    space.require_member(*probe_list)
    terms = [seq.point_at(k) for k in range(burn_in, n + 1)]
    space.require_member(*terms)

    tail_from = max(burn_in, n // 2)
    late_from = max(tail_from, (3 * n) // 4)
    worst = -math.inf
    unstable_probe = None
    for y in probe_list:
        # gaps[i] = d(z, x_i) - d(y, x_i), shared anchor x_i
        gaps = [space.distance_difference(z, x, y) for x in terms]
        tail_max = max(gaps[tail_from - burn_in:])
        late_max = max(gaps[late_from - burn_in:])
        if tail_max > tol:
            if tail_max - late_max <= tol:
                return Verdict(outcome="violation", candidate=z, n_terms=n, tol=tol,
                               gap=tail_max, probe=y, window=(tail_from, n))
            if unstable_probe is None:
                unstable_probe = (y, tail_max)
        worst = max(worst, tail_max)
    if unstable_probe is not None:
        y, tail_max = unstable_probe
        return Verdict(outcome="inconclusive", candidate=z, n_terms=n, tol=tol,
                       window=(tail_from, n),
                       reason=f"excess {tail_max:.3g} against probe {y!r} is still decaying")
    return Verdict(outcome="consistent", candidate=z, n_terms=n, tol=tol,
                   margin=-worst, window=(tail_from, n))


def test_strong(seq: SequenceSpec, z: Point, n_terms: int | None = None,
                tol: float = 1e-6) -> Verdict:
    """Tail distances to z must fall below tol."""
    n = n_terms or seq.horizon
    space = seq.space
    space.require_member(z)
    tail_from = max(1, n // 2)
    terms = [seq.point_at(k) for k in range(tail_from, n + 1)]
    space.require_member(*terms)
    worst = max(space.distance(x, z) for x in terms)
    if worst <= tol:
        return Verdict(outcome="consistent", candidate=z, n_terms=n, tol=tol,
                       margin=-worst, window=(tail_from, n))
    return Verdict(outcome="violation", candidate=z, n_terms=n, tol=tol,
                   gap=worst, window=(tail_from, n))


# ---------------------------------------------------------------------------
# Limit sets


@dataclass(frozen=True)
class RegionDescriptor:
    """Closed-form description of a known limit set."""

    kind: str  # norm_ball | all_points
    p: float | None = None
    threshold: float | None = None

    def contains(self, space: Space, z: Point) -> bool | None:
        if self.kind == "all_points":
            return True
        if self.kind == "norm_ball" and isinstance(z, SparseVector):
            return z.norm(self.p) <= self.threshold
        return None

    def boundary_margin(self, z: Point) -> float | None:
        """Distance of z's norm from the threshold, None when inapplicable."""
        if self.kind == "norm_ball" and isinstance(z, SparseVector):
            return abs(z.norm(self.p) - self.threshold)
        return None


def closed_form_region(seq: SequenceSpec) -> RegionDescriptor | None:
    """Attach the known limit-set descriptor when sequence and space match a
    catalog case: scaled moving coordinates in lp balls, and moving units in
    the countable l1 subsets."""
    gen = seq.generator
    space = seq.space
    if isinstance(gen, CoordinateBlowup) and isinstance(space, LpBall):
        theta = gen.coefficient
        if theta is None or not 0 < theta <= space.radius:
            return None
        if space.p == 2.0:
            r = space.radius
            return RegionDescriptor("norm_ball", p=2.0,
                                    threshold=math.sqrt(theta * theta + r * r) - r)
        if space.p == 1.0:
            return RegionDescriptor("norm_ball", p=1.0, threshold=theta)
        return None
    if isinstance(space, CountableSubsetOfL1) and isinstance(gen, CoordinateBlowup):
        if space.pattern == "zero_and_units" and gen.coefficient == 1.0:
            return RegionDescriptor("all_points")
        if space.pattern == "zero_and_scaled_units" and gen.coefficient is None:
            return RegionDescriptor("all_points")
    return None


@dataclass(frozen=True)
class LambdaEstimate:
    """Per-candidate verdicts over a grid, plus a closed form when known.

    `mismatches` lists grid indices where a definite verdict disagrees with
    the closed form; candidates within `boundary_slack` of the region
    boundary are not compared.
    """

    grid: tuple[Point, ...]
    verdicts: tuple[Verdict, ...]
    closed_form: RegionDescriptor | None
    mismatches: tuple[int, ...]
    boundary_slack: float

    @property
    def members(self) -> tuple[Point, ...]:
        return tuple(z for z, v in zip(self.grid, self.verdicts) if v.is_consistent)


def lambda_set(seq: SequenceSpec, family: FunctionalFamily, grid: Iterable[Point],
               n_terms: int | None = None, burn_in: int | None = None,
               tol: float = DEFAULT_TOL,
               boundary_slack: float = 1e-4) -> LambdaEstimate:
    """Estimate the set of candidate limits the family cannot refute."""
    grid = tuple(grid)
    tester = DweakTester(seq, family, n_terms, burn_in, tol)
    verdicts = tuple(tester.verdict(z) for z in grid)
    region = closed_form_region(seq)
    mismatches: list[int] = []
    if region is not None:
        for i, (z, v) in enumerate(zip(grid, verdicts)):
            expected = region.contains(seq.space, z)
            if expected is None:
                continue
            margin = region.boundary_margin(z)
            if margin is not None and margin <= boundary_slack:
                continue
            if v.is_inconclusive or v.is_consistent != expected:
                mismatches.append(i)
    return LambdaEstimate(grid, verdicts, region, tuple(mismatches), boundary_slack)


def membership_radius(seq: SequenceSpec, family: FunctionalFamily,
                      direction: SparseVector, lo: float = 0.0,
                      hi: float | None = None, iterations: int = 40,
                      n_terms: int | None = None, burn_in: int | None = None,
                      tol: float = DEFAULT_TOL) -> float:
    """Bisect the largest radius along a direction that the tester accepts.

    Reuses the family's window minima across all bisection steps.
    """
    space = seq.space
    n_dir = direction.norm(space.p) if isinstance(space, (LpSpace, LpBall)) else None
    if not n_dir:
        raise ValueError("direction must be a nonzero vector in a norm space")
    u = direction * (1.0 / n_dir)
    if hi is None:
        hi = space.radius if isinstance(space, LpBall) else 1.0
    tester = DweakTester(seq, family, n_terms, burn_in, tol)
    if not tester.verdict(u * lo).is_consistent:
        raise PreconditionFailedError("membership fails already at the inner radius")
    if tester.verdict(u * hi).is_consistent:
        return hi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if tester.verdict(u * mid).is_consistent:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ConvexityReport:
    """Sampled check that combinations of accepted limits stay accepted."""

    n_members: int
    n_checked: int
    counterexamples: tuple[tuple[Point, Point, float, Verdict], ...]
    seed: int

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def check_lambda_convex_closed(estimate: LambdaEstimate, seq: SequenceSpec,
                               family: FunctionalFamily, n_pairs: int = 40,
                               seed: int = 2024, n_terms: int | None = None,
                               burn_in: int | None = None,
                               tol: float = DEFAULT_TOL) -> ConvexityReport:
    """For sampled pairs of accepted limits and sampled t, the combination
    must be accepted as well."""
    space = seq.space
    if not space.supports_w_combine:
        raise UnsupportedSpaceError(f"{space.describe()} has no combination map")
    members = estimate.members
    if len(members) < 2:
        return ConvexityReport(len(members), 0, (), seed)
    rng = np.random.default_rng(seed)
    tester = DweakTester(seq, family, n_terms, burn_in, tol)
    bad: list[tuple[Point, Point, float, Verdict]] = []
    for _ in range(n_pairs):
        i, j = rng.integers(0, len(members), size=2)
        t = float(rng.uniform(0.0, 1.0))
        z1, z2 = members[int(i)], members[int(j)]
        mid = w_combine(space, z1, z2, t)
        v = tester.verdict(mid)
        if not v.is_consistent:
            bad.append((z1, z2, t, v))
    return ConvexityReport(len(members), n_pairs, tuple(bad), seed)


# ---------------------------------------------------------------------------
# l1 structure


@dataclass(frozen=True)
class GlidingHumpCertificate:
    """Disjoint blocks and signs extracted from an l1 sequence.

    `row_sums` holds sum_m c(m) * x_{n_p}(m) for each selected index, computed
    by direct summation over the final sign map; `achieved` is the smallest
    |row sum| from the third block on.
    """

    indices: tuple[int, ...]
    signs: tuple[tuple[int, int], ...]
    blocks: tuple[tuple[int, ...], ...]
    row_sums: tuple[float, ...]
    achieved: float
    eps: float


def gliding_hump(seq: SequenceSpec, eps: float, n_terms: int | None = None,
                 n_blocks: int = 5, mass_fraction: float = 0.875,
                 leak_fraction: float = 0.125) -> GlidingHumpCertificate:
    """Select indices and disjoint coordinate blocks witnessing non-vanishing
    l1 mass.

    Each selected term carries at least `mass_fraction` of its norm on its
    own block, while all earlier blocks hold at most eps * leak_fraction of
    it. With the defaults this certifies |row sum| >= 0.75*||x|| - eps/8
    >= eps/4 for every selected term; the certificate re-verifies the sums
    directly.
    """
    space = seq.space
    if not (isinstance(space, LpSpace) and space.p == 1.0):
        raise UnsupportedSpaceError("the block construction works in l1")
    if eps <= 0:
        raise ValueError("eps must be positive")
    n = n_terms or seq.horizon
    terms = seq.terms(n)

    # Coordinatewise decay: early-support coordinates must fade in the tail.
    watched: set[int] = set()
    for x in terms[: min(8, n)]:
        watched.update(x.support)
        if len(watched) >= 64:
            break
    tail_from = (3 * n) // 4
    decay = max((abs(x.get(k)) for x in terms[tail_from:] for k in watched),
                default=0.0)
    if decay > eps / 16.0:
        raise PreconditionFailedError(
            f"coordinatewise decay not observed: residual {decay:.3g} on early coordinates")

    used: set[int] = set()
    chosen: list[int] = []
    blocks: list[tuple[int, ...]] = []
    signs: dict[int, int] = {}
    for idx, x in enumerate(terms, start=1):
        if len(chosen) >= n_blocks:
            break
        norm = x.norm(1.0)
        if norm < eps:
            continue
        leak = math.fsum(abs(v) for k, v in x.items() if k in used)
        if leak > eps * leak_fraction:
            continue
        target = mass_fraction * norm
        captured = 0.0
        block: list[int] = []
        for k, v in sorted(x.items(), key=lambda kv: (-abs(kv[1]), kv[0])):
            if k in used:
                continue
            block.append(k)
            captured += abs(v)
            if captured >= target:
                break
        if captured < target:
            continue
        chosen.append(idx)
        blocks.append(tuple(sorted(block)))
        for k in block:
            signs[k] = 1 if x.get(k) > 0 else -1
        used.update(block)

    if len(chosen) < 3:
        raise PreconditionFailedError(
            f"only {len(chosen)} usable blocks found; the norm bound "
            f"||x_n|| >= {eps} was not observed often enough within {n} terms")

    sign_items = tuple(sorted(signs.items()))
    row_sums = tuple(
        math.fsum(signs.get(k, 0) * v for k, v in terms[idx - 1].items())
        for idx in chosen
    )
    achieved = min(abs(s) for s in row_sums[2:])
    return GlidingHumpCertificate(tuple(chosen), sign_items, tuple(blocks),
                                  row_sums, achieved, eps)


@dataclass(frozen=True)
class UniformConvexityReport:
    """Which branch of the norm-convergence dichotomy held on the data."""

    branch: str  # strong | internal_violation | precondition_failed | implication_failed
    witness: MetricFunctional | None
    gap: float | None
    tail_distance: float | None
    norm_residual: float


def uniform_convex_strong_check(space: Space, seq: SequenceSpec, xhat: Point,
                                n_terms: int | None = None, tol: float = 1e-2,
                                liminf_tol: float = DEFAULT_TOL,
                                seed: int = 2024) -> UniformConvexityReport:
    """On a round space, norm convergence plus the internal liminf conditions
    force strong convergence; report which side of the implication the data
    landed on."""
    if not (isinstance(space, (LpSpace, LpBall)) and space.p == 2.0):
        raise UnsupportedSpaceError("the dichotomy is checked on round (p=2) spaces")
    if seq.space != space:
        raise ValueError("sequence lives in a different space")
    space.require_member(xhat)
    n = n_terms or seq.horizon
    terms = seq.terms(n)
    tail = terms[n // 2:]
    target = xhat.norm(2.0)
    norm_residual = max(abs(x.norm(2.0) - target) for x in tail)
    if norm_residual > tol:
        return UniformConvexityReport("precondition_failed", None, None, None,
                                      norm_residual)

    anchors: list[Point] = [-xhat, space.basepoint]
    anchors += space.sample(np.random.default_rng(seed), 12)
    anchors = [w for w in dict.fromkeys(anchors) if space.contains(w)]
    for w in anchors:
        h = Internal(space, w)
        est = liminf_estimate(h, seq, n_terms=n, tol=liminf_tol)
        target_value = h.value(xhat)
        if est.stable and est.value < target_value - liminf_tol:
            return UniformConvexityReport("internal_violation", h,
                                          target_value - est.value, None,
                                          norm_residual)
    tail_distance = max(space.distance(x, xhat) for x in tail)
    if tail_distance <= tol:
        return UniformConvexityReport("strong", None, None, tail_distance,
                                      norm_residual)
    return UniformConvexityReport("implication_failed", None, None, tail_distance,
                                  norm_residual)


# ---------------------------------------------------------------------------
# Discrete classification


@dataclass(frozen=True)
class DiscreteClassification:
    """Four-way classification of a sequence in an infinite discrete space."""

    case: str  # eventually_constant | two_accumulation | one_infinite | all_finite
    limit: Atom | None
    recurrent: tuple[Atom, ...]
    limit_set: str  # singleton | empty | all_points


def discrete_classify(seq: SequenceSpec, n_terms: int | None = None) -> DiscreteClassification:
    """Classify by recurrence over the observed window.

    An atom counts as recurrent when it appears at least twice in the tail
    half; a constant tail reaching back to the window midpoint counts as
    eventually constant.
    """
    if not isinstance(seq.space, DiscreteSpace):
        raise UnsupportedSpaceError("classification applies to the discrete space")
    n = n_terms or seq.horizon
    terms = seq.terms(n)
    last = terms[-1]
    settle = n
    for i in range(n - 1, -1, -1):
        if terms[i] != last:
            break
        settle = i + 1
    if settle <= n // 2:
        return DiscreteClassification("eventually_constant", last, (last,), "singleton")

    tail = terms[n // 2:]
    counts: dict[Atom, int] = {}
    for a in tail:
        counts[a] = counts.get(a, 0) + 1
    recurrent = tuple(sorted((a for a, c in counts.items() if c >= 2),
                             key=lambda a: a.id))
    if len(recurrent) >= 2:
        return DiscreteClassification("two_accumulation", None, recurrent, "empty")
    if len(recurrent) == 1:
        return DiscreteClassification("one_infinite", recurrent[0], recurrent,
                                      "singleton")
    return DiscreteClassification("all_finite", None, (), "all_points")


def discrete_family_for(seq: SequenceSpec, classification: DiscreteClassification,
                        fresh: int = 3) -> FunctionalFamily:
    """Internals + zero for cross-checking a classification.

    Anchors are the basepoint, the recurrent atoms, and a few fresh atoms
    outside the observed range. Transient atoms are left out: their internals
    dip exactly once, which the finite-window estimator rightly flags as
    unstable and which certifies nothing.
    """
    space = seq.space
    observed = {a.id for a in seq.terms(seq.horizon)}
    anchors: list[Point] = [space.basepoint, *classification.recurrent]
    start = max(observed | {space.basepoint.id}) + 1
    anchors += [Atom(start + i) for i in range(fresh)]
    members: list[MetricFunctional] = [Internal(space, a) for a in dict.fromkeys(anchors)]
    members.append(ZeroFunctional(space))
    return FunctionalFamily(space, tuple(members),
                            "discrete cross-check: basepoint + recurrent + fresh atoms")


# ---------------------------------------------------------------------------
# Structural probes


def linear_combination_check(seq_x: SequenceSpec, u: Point, seq_y: SequenceSpec,
                             v: Point, s: float, t: float,
                             family: FunctionalFamily,
                             n_terms: int | None = None,
                             burn_in: int | None = None,
                             tol: float = DEFAULT_TOL,
                             strong_tol: float = 1e-2) -> Verdict:
    """Verdict for s*x_n + t*y_n at s*u + t*v, given x_n is accepted at u and
    y_n converges to v in norm."""
    space = seq_x.space
    if not space.supports_w_combine:
        raise UnsupportedSpaceError("linear combinations need a linear-structure space")
    pre_x = test_dweak(seq_x, u, family, n_terms=n_terms, burn_in=burn_in, tol=tol)
    if not pre_x.is_consistent:
        raise PreconditionFailedError(f"x_n is not accepted at u: {pre_x.outcome}")
    pre_y = test_strong(seq_y, v, n_terms=n_terms, tol=strong_tol)
    if not pre_y.is_consistent:
        raise PreconditionFailedError(f"y_n does not converge to v: {pre_y.outcome}")
    combined = combine_linear(s, seq_x, t, seq_y)
    candidate = u * s + v * t
    return test_dweak(combined, candidate, family, n_terms=n_terms,
                      burn_in=burn_in, tol=tol)


def ball_closedness_probe(space: Space, q: Point, r: float, seq: SequenceSpec,
                          z: Point, family: FunctionalFamily | None = None,
                          n_terms: int | None = None, burn_in: int | None = None,
                          tol: float = DEFAULT_TOL) -> Verdict:
    """A sequence inside B(q, r) must be refuted at any candidate outside.

    The internal functional anchored at q is prepended to the family, so the
    returned certificate is the canonical one whenever it fires first.
    """
    space.require_member(q, z)
    if seq.space != space:
        raise ValueError("sequence lives in a different space")
    n = n_terms or seq.horizon
    worst = max(space.distance(x, q) for x in seq.terms(n))
    if worst > r + 1e-12:
        raise PreconditionFailedError(
            f"sequence leaves the ball: max distance {worst:.6g} > {r}")
    if space.distance(z, q) <= r:
        raise PreconditionFailedError("candidate lies inside the ball")
    if family is None:
        family = default_family(space, anchors=(q, z))
    h_q = Internal(space, q)
    if h_q not in family.members:
        family = FunctionalFamily(space, (h_q, *family.members),
                                  family.coverage_note + " + ball center")
    elif family.members[0] != h_q:
        rest = tuple(m for m in family.members if m != h_q)
        family = FunctionalFamily(space, (h_q, *rest), family.coverage_note)
    return test_dweak(seq, z, family, n_terms=n, burn_in=burn_in, tol=tol)


@dataclass(frozen=True)
class DistanceBoundRow:
    probe: Point
    candidate_distance: float
    liminf_estimate: float
    stable: bool
    ok: bool


@dataclass(frozen=True)
class DistanceBoundReport:
    rows: tuple[DistanceBoundRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def liminf_distance_bound(seq: SequenceSpec, z: Point, probes: Iterable[Point],
                          n_terms: int | None = None, burn_in: int | None = None,
                          tol: float = DEFAULT_TOL) -> DistanceBoundReport:
    """At an accepted limit z, d(z, w) can exceed no tail of d(x_n, w)."""
    burn_in, n = _resolve_window(seq, n_terms, burn_in)
    space = seq.space
    space.require_member(z)
    terms = [seq.point_at(k) for k in range(burn_in, n + 1)]
    space.require_member(*terms)
    rows = []
    for w in probes:
        space.require_member(w)
        values = [space.distance(x, w) for x in terms]
        est = _estimate_from_values(values, burn_in, n, tol)
        dzw = space.distance(z, w)
        rows.append(DistanceBoundRow(w, dzw, est.value, est.stable,
                                     dzw <= est.value + tol))
    return DistanceBoundReport(tuple(rows))
