import numpy as np
import pytest

from dweak import convergence as conv
from dweak import oracle
from dweak.errors import (
    InvalidSpaceError,
    NotEventuallyPeriodicError,
    StabilizationError,
)
from dweak.functionals import Internal, default_family
from dweak.points import Atom, ScalarPoint, SparseVector, unit
from dweak.sequences import (
    Alternating,
    CoordinateBlowup,
    EventuallyPeriodic,
    ExplicitList,
    ScalarRamp,
    SequenceSpec,
    UserFormula,
)
from dweak.spaces import FiniteMetricSpace, LpSpace, SnowflakeLine


def test_two_point_table():
    space = FiniteMetricSpace(((0.0, 1.0), (1.0, 0.0)))
    table = oracle.finite_compactification(space)
    # row w lists d(x, w) - d(o, w) per point x, with o = point 0
    assert table.rows == ((0.0, 1.0), (0.0, -1.0))
    assert table.max_row_identity_residual() == 0.0


def test_discrete_table_minima():
    space = FiniteMetricSpace.discrete(5)
    table = oracle.finite_compactification(space)
    assert len(table.rows) == 5
    for w, row in enumerate(table.rows):
        expected_min = 0.0 if w == 0 else -1.0
        assert min(row) == expected_min
        assert row.index(min(row)) == w
    assert table.max_row_identity_residual() == 0.0


def test_table_rejects_invalid_space():
    bad = FiniteMetricSpace(((0.0, 1.0, 5.0), (1.0, 0.0, 1.0), (5.0, 1.0, 0.0)))
    with pytest.raises(InvalidSpaceError):
        oracle.finite_compactification(bad)


def test_table_rows_pass_functional_invariants_exactly():
    rng = np.random.default_rng(4)
    space = oracle.random_finite_metric(6, rng)
    table = oracle.finite_compactification(space)
    o = space.basepoint.id
    for row in table.rows:
        assert row[o] == 0.0
        for i in range(space.size):
            for j in range(space.size):
                assert abs(row[i] - row[j]) <= space.matrix[i][j]
    assert len(set(table.rows)) == len(table.rows)


def test_brute_force_examples():
    space = FiniteMetricSpace.discrete(4)
    alternating = SequenceSpec(space, Alternating(Atom(1), Atom(2)), 64)
    verdict = oracle.brute_force_dweak(space, alternating, Atom(1))
    assert verdict.is_violation

    constant = SequenceSpec(space, EventuallyPeriodic((Atom(3),), (Atom(2),)), 64)
    assert oracle.brute_force_dweak(space, constant, Atom(2)).is_consistent

    not_periodic = SequenceSpec(space, UserFormula(lambda n: Atom(n % 4), "mod"), 64)
    with pytest.raises(NotEventuallyPeriodicError):
        oracle.brute_force_dweak(space, not_periodic, Atom(0))


def test_brute_force_matches_window_tester_on_seeded_instances():
    rng = np.random.default_rng(17)
    for _ in range(25):
        space = oracle.random_finite_metric(int(rng.integers(2, 9)), rng)
        seq = oracle.random_periodic_sequence(space, rng)
        family = default_family(space)
        tester = conv.DweakTester(seq, family, n_terms=64, tol=1e-9)
        for z in space.points():
            exact = oracle.brute_force_dweak(space, seq, z, tol=1e-9)
            assert exact.outcome == tester.verdict(z).outcome


def test_diagonal_limits_in_l1_and_l2():
    grid = [SparseVector(), unit(1), unit(2, -1.5), SparseVector({1: 1.0, 4: 2.0})]
    seq1 = SequenceSpec(LpSpace(1.0), CoordinateBlowup(None), 2 ** 60)
    ext1 = oracle.diagonal_subsequence(seq1, grid, tol=1e-6)
    origin = SparseVector()
    for y, limit in zip(grid, ext1.limits):
        assert limit == pytest.approx(LpSpace(1.0).distance(y, origin), abs=1e-9)

    seq2 = SequenceSpec(LpSpace(2.0), CoordinateBlowup(None), 2 ** 60)
    ext2 = oracle.diagonal_subsequence(seq2, grid, tol=1e-6)
    for limit in ext2.limits:
        assert abs(limit) <= 1e-9

    # a strictly increasing subsequence survived
    assert list(ext1.indices) == sorted(set(ext1.indices))
    assert list(ext2.indices) == sorted(set(ext2.indices))
    assert len(ext2.indices) >= 3


def test_diagonal_constant_sequence_keeps_everything():
    seq = SequenceSpec(LpSpace(1.0), ExplicitList((unit(2),), tail="hold"), 64)
    grid = [SparseVector(), unit(2), unit(3)]
    ext = oracle.diagonal_subsequence(seq, grid, tol=1e-6,
                                      indices=tuple(range(1, 21)))
    assert ext.indices == tuple(range(1, 21))
    h = Internal(LpSpace(1.0), unit(2))
    for y, limit in zip(grid, ext.limits):
        assert limit == h.value(y)


def test_diagonal_limit_table_is_lipschitz():
    grid = [SparseVector(), unit(1), unit(3, 2.0)]
    seq = SequenceSpec(LpSpace(2.0), CoordinateBlowup(None), 2 ** 60)
    ext = oracle.diagonal_subsequence(seq, grid, tol=1e-6)
    space = LpSpace(2.0)
    for i, yi in enumerate(grid):
        for j, yj in enumerate(grid):
            assert abs(ext.limits[i] - ext.limits[j]) <= space.distance(yi, yj) + 1e-6


def test_diagonal_extracts_subsequence_of_oscillation():
    # an oscillating anchor sequence still contains a settled subsequence,
    # which the refinement finds
    seq = SequenceSpec(LpSpace(1.0),
                       UserFormula(lambda n: unit(1, (-1.0) ** n), "flip"), 64)
    ext = oracle.diagonal_subsequence(seq, [unit(1)], tol=1e-6,
                                      indices=tuple(range(1, 33)))
    assert all(i % 2 == 0 for i in ext.indices)
    assert ext.limits == (-1.0,)


def test_diagonal_no_stabilization_on_short_schedule():
    # with only three indices available, the oscillation leaves fewer than
    # the required number of agreeing indices
    seq = SequenceSpec(LpSpace(1.0),
                       UserFormula(lambda n: unit(1, (-1.0) ** n), "flip"), 8)
    with pytest.raises(StabilizationError):
        oracle.diagonal_subsequence(seq, [unit(1)], tol=1e-6, indices=(1, 2, 3))


def test_snowflake_escape_tables():
    snow = SnowflakeLine(0.5)
    grid = [ScalarPoint(0.0), ScalarPoint(1.0), ScalarPoint(2.0)]
    up = oracle.snowflake_limit_check(SequenceSpec(snow, ScalarRamp(2.0, 1), 2 ** 30),
                                      grid)
    assert up.escaped and up.max_abs <= 1e-9

    down = oracle.snowflake_limit_check(SequenceSpec(snow, ScalarRamp(2.0, -1), 2 ** 30),
                                        grid)
    assert down.escaped and down.max_abs <= 1e-9

    bounded = oracle.snowflake_limit_check(
        SequenceSpec(snow, ExplicitList((ScalarPoint(1.0),), tail="hold"), 64), grid)
    assert not bounded.escaped
    h = Internal(snow, ScalarPoint(1.0))
    for y, limit in zip(grid, bounded.limits):
        assert limit == pytest.approx(h.value(y), abs=1e-12)
    assert bounded.limits[1] == -1.0  # distinguishes the table from zero


def test_busemann_cross_validation_bounds():
    for p in (1.0, 1.5, 2.0, 3.0):
        report = oracle.busemann_cross_validate(p, trials=100, seed=11)
        assert report.max_residual <= 1e-6, (p, report.max_residual)


def test_cross_validation_exact_cases():
    space = LpSpace(1.0)
    # disjoint supports: both formulas reduce to the l1 mass of x
    u, x = unit(1), SparseVector({3: 2.0, 5: -1.0})
    from dweak.functionals import BusemannClosedLp, busemann_numeric
    closed = BusemannClosedLp(space, u).value(x)
    numeric = busemann_numeric(space, u, x).value
    assert closed == numeric == 3.0

    # along the ray both give -s exactly
    s = 2.5
    assert BusemannClosedLp(space, u).value(u * s) == -s
    assert busemann_numeric(space, u, u * s).value == -s


def test_random_finite_metric_is_valid():
    rng = np.random.default_rng(2)
    for _ in range(20):
        space = oracle.random_finite_metric(int(rng.integers(2, 9)), rng)
        assert space.check() == []
