"""Exact and high-precision back-ends that ground the sampled testers.

Finite spaces admit a complete functional inventory and eventually periodic
sequences admit exact limits inferior, so the window-based testers can be
checked against ground truth here. The diagonal extraction and the escape
tables evaluate internals far along a sequence on a doubling index schedule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .convergence import Verdict
from .errors import (
    InvalidSpaceError,
    NotEventuallyPeriodicError,
    StabilizationError,
    UnsupportedSpaceError,
)
from .functionals import BusemannClosedLp, Internal, busemann_numeric
from .points import Atom, Point, SparseVector
from .sequences import EventuallyPeriodic, SequenceSpec
from .spaces import FiniteMetricSpace, LpSpace, SnowflakeLine


@dataclass(frozen=True)
class CompactificationTable:
    """Complete functional inventory of a finite space as a value table.

    Row w lists h_w over all points; every row vanishes at the basepoint and
    is 1-Lipschitz against the distance matrix. Pointwise limits of rows are
    rows, so the table is closed as it stands.
    """

    space: FiniteMetricSpace
    rows: tuple[tuple[float, ...], ...]
    provenance: tuple[str, ...]

    def functional(self, i: int) -> Internal:
        return Internal(self.space, Atom(i))

    def max_row_identity_residual(self) -> float:
        """max over w of |max_h h(w) - d(o, w)|; zero for a valid table."""
        o = self.space.basepoint
        worst = 0.0
        for w in range(self.space.size):
            column_max = max(row[w] for row in self.rows)
            worst = max(worst, abs(column_max - self.space.distance(Atom(w), o)))
        return worst


def finite_compactification(space: FiniteMetricSpace) -> CompactificationTable:
    """Tabulate all internals of a validated finite space."""
    violations = space.check()
    if violations:
        raise InvalidSpaceError(f"{len(violations)} metric-axiom violations; "
                                f"first: {violations[0]}")
    o = space.basepoint.id
    m = space.matrix
    rows = tuple(
        tuple(m[x][w] - m[o][w] for x in range(space.size))
        for w in range(space.size)
    )
    if len(set(rows)) != len(rows):
        raise InvalidSpaceError("internals are not pairwise distinct")
    return CompactificationTable(space, rows,
                                 tuple(f"internal anchor={w}" for w in range(space.size)))


def brute_force_dweak(space: FiniteMetricSpace, seq: SequenceSpec, z: Atom,
                      tol: float = 0.0) -> Verdict:
    """Exact verdict: for an eventually periodic sequence the liminf of any
    functional is its minimum over one period, so every internal is checked
    exactly."""
    if seq.space != space:
        raise ValueError("sequence lives in a different space")
    structure = seq.periodic_structure()
    if structure is None:
        raise NotEventuallyPeriodicError(
            f"{seq.generator.kind} carries no periodic structure")
    _, period = structure
    space.require_member(z, *period)
    margin = math.inf
    for w in space.points():
        h = Internal(space, w)
        liminf = min(h.value(x) for x in period)
        hz = h.value(z)
        if liminf < hz - tol:
            return Verdict(outcome="violation", candidate=z, n_terms=len(period),
                           tol=tol, gap=hz - liminf, witness=h)
        margin = min(margin, liminf - hz)
    return Verdict(outcome="consistent", candidate=z, n_terms=len(period),
                   tol=tol, margin=margin)


def dyadic_indices(max_index: int = 2 ** 60, dense_until: int = 16) -> tuple[int, ...]:
    """1..dense_until, then doubling up to max_index.

    The default reach leaves room for internal values decaying like 1/n to
    clear the per-grid-point tolerances of a 20-point diagonal extraction.
    """
    out = list(range(1, dense_until + 1))
    n = dense_until * 2
    while n <= max_index:
        out.append(n)
        n *= 2
    return tuple(out)


@dataclass(frozen=True)
class DiagonalExtraction:
    """A subsequence on which internals stabilize over the whole grid."""

    indices: tuple[int, ...]
    limits: tuple[float, ...]
    tolerances: tuple[float, ...]


def diagonal_subsequence(seq: SequenceSpec, grid: list[Point], tol: float = 1e-6,
                         indices: tuple[int, ...] | None = None,
                         min_surviving: int = 3) -> DiagonalExtraction:
    """Nested index refinement mirroring a diagonal argument at finite scale.

    Grid point k keeps the indices whose internal value agrees with the final
    index's value within tol / 2^k. The surviving index set is a subsequence
    of the schedule; its last element provides the limit table.
    """
    space = seq.space
    o = space.basepoint
    current = list(indices if indices is not None else dyadic_indices())
    if not current:
        raise ValueError("empty index schedule")
    anchors = {i: seq.point_at(i) for i in current}
    tolerances = []
    for k, y in enumerate(grid, start=1):
        space.require_member(y)
        delta = tol / 2.0 ** k
        tolerances.append(delta)
        values = {i: space.distance_difference(y, anchors[i], o) for i in current}
        target = values[current[-1]]
        kept = [i for i in current if abs(values[i] - target) <= delta]
        if len(kept) < min_surviving:
            raise StabilizationError(
                f"grid point {k}: only {len(kept)} of {len(current)} indices agree "
                f"within {delta:.3g}")
        current = kept
    last = anchors[current[-1]]
    limits = tuple(space.distance_difference(y, last, o) for y in grid)
    return DiagonalExtraction(tuple(current), limits, tuple(tolerances))


@dataclass(frozen=True)
class EscapeLimitTable:
    """Internal values along an escaping anchor sequence, per grid point."""

    escaped: bool
    limits: tuple[float, ...]
    max_abs: float


def snowflake_limit_check(seq: SequenceSpec, grid: list[Point], tol: float = 1e-6,
                          indices: tuple[int, ...] | None = None) -> EscapeLimitTable:
    """Limit table of internals along a snowflake-line anchor sequence.

    When the anchors escape to infinity every limit is zero; a bounded anchor
    sequence instead reproduces the internal of its limit point.
    """
    space = seq.space
    if not isinstance(space, SnowflakeLine):
        raise UnsupportedSpaceError("escape tables are built on the snowflake line")
    schedule = list(indices if indices is not None else dyadic_indices(2 ** 30))
    anchors = [seq.point_at(i) for i in schedule]
    space.require_member(*anchors)
    magnitudes = [abs(a.value) for a in anchors]
    escaped = magnitudes[-1] >= 1e9 and magnitudes[-1] > 2.0 * magnitudes[len(magnitudes) // 2]
    o = space.basepoint
    last = anchors[-1]
    prev = anchors[-2]
    limits = []
    for y in grid:
        space.require_member(y)
        v_last = space.distance_difference(y, last, o)
        v_prev = space.distance_difference(y, prev, o)
        if abs(v_last - v_prev) > tol:
            raise StabilizationError(
                f"internal values still move by {abs(v_last - v_prev):.3g} at the "
                "end of the schedule")
        limits.append(v_last)
    return EscapeLimitTable(escaped, tuple(limits), max(abs(v) for v in limits))


@dataclass(frozen=True)
class CrossValidationReport:
    """Worst disagreement between the closed-form and the numeric directional
    functionals over seeded trials."""

    p: float
    trials: int
    seed: int
    max_residual: float
    worst_direction: SparseVector | None
    worst_point: SparseVector | None


def busemann_cross_validate(p: float, trials: int = 100, seed: int = 2024,
                            tol: float = 1e-10) -> CrossValidationReport:
    """Compare both directional evaluations on seeded (direction, point) pairs."""
    space = LpSpace(p)
    rng = np.random.default_rng(seed)
    worst = 0.0
    worst_u = worst_x = None
    done = 0
    while done < trials:
        size = int(rng.integers(1, 4))
        idx = rng.choice(np.arange(1, 9), size=size, replace=False)
        vals = rng.uniform(0.2, 2.0, size=size) * rng.choice([-1.0, 1.0], size=size)
        v = SparseVector({int(i): float(x) for i, x in zip(idx, vals)})
        x = space.sample(rng, 1)[0]
        n = v.norm(p)
        if n == 0:
            continue
        u = v * (1.0 / n)
        closed = BusemannClosedLp(space, u).value(x)
        numeric = busemann_numeric(space, u, x, tol=tol).value
        residual = abs(closed - numeric)
        if residual > worst:
            worst, worst_u, worst_x = residual, u, x
        done += 1
    return CrossValidationReport(p, trials, seed, worst, worst_u, worst_x)


def random_finite_metric(n: int, rng: np.random.Generator,
                         step: float = 0.125) -> FiniteMetricSpace:
    """A random valid finite metric: symmetric weights on a dyadic grid,
    closed under shortest paths.

    Dyadic weights make every path sum exact in floating point, so the
    resulting matrix satisfies the triangle inequality with zero tolerance.
    """
    if n < 1:
        raise ValueError("need at least one point")
    ticks = rng.integers(4, 25, size=(n, n))
    d = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = float(ticks[i][j]) * step
    for k in range(n):
        for i in range(n):
            for j in range(n):
                via = d[i][k] + d[k][j]
                if via < d[i][j]:
                    d[i][j] = via
    return FiniteMetricSpace(tuple(tuple(row) for row in d))


def random_periodic_sequence(space: FiniteMetricSpace, rng: np.random.Generator,
                             max_preamble: int = 4, max_period: int = 4,
                             horizon: int = 64) -> SequenceSpec:
    """Seeded eventually periodic sequence over a finite space."""
    pre_len = int(rng.integers(0, max_preamble + 1))
    per_len = int(rng.integers(1, max_period + 1))
    pre = tuple(Atom(int(i)) for i in rng.integers(0, space.size, size=pre_len))
    per = tuple(Atom(int(i)) for i in rng.integers(0, space.size, size=per_len))
    return SequenceSpec(space, EventuallyPeriodic(pre, per), horizon)
