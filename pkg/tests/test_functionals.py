import math

import numpy as np
import pytest

from dweak import functionals as fn
from dweak.errors import (
    EqualPointsError,
    MembershipError,
    NotNormedSpaceError,
    NotUnitVectorError,
    UnsupportedSpaceError,
    ZeroScaleError,
)
from dweak.points import Atom, PLFunction, SparseVector, sparse, unit
from dweak.spaces import (
    CountableSubsetOfL1,
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
    SupNormSpace,
)

L1 = LpSpace(1.0)
L2 = LpSpace(2.0)
BALL2 = LpBall(2.0, 1.0)


def ray_value(p, u, x, t):
    """Independent large-t evaluation of the directional limit."""
    return (x - u * t).norm(p) - t * u.norm(p)


def test_internal_at_basepoint_and_at_origin_anchor():
    h = fn.Internal(L1, unit(1))
    assert h.evaluate(SparseVector()) == 0.0
    h0 = fn.Internal(L1, SparseVector())
    x = sparse({1: 2.0, 3: -5.0})
    assert h0.evaluate(x) == L1.distance(x, SparseVector())


def test_internal_membership_error():
    h = fn.Internal(L1, unit(1))
    with pytest.raises(MembershipError):
        h.evaluate(Atom(0))
    with pytest.raises(MembershipError):
        fn.Internal(BALL2, unit(1, 2.0))


def test_internal_minimality():
    w = sparse({2: 1.5, 4: -0.5})
    h = fn.Internal(L1, w)
    floor = -L1.distance(SparseVector(), w)
    assert h.evaluate(w) == floor
    rng = np.random.default_rng(0)
    for x in L1.sample(rng, 200):
        val = h.evaluate(x)
        assert val >= floor
        assert (val == floor) == (x == w)


def test_hilbert_ball_value_matches_frozen_constant():
    h = fn.HilbertBall(BALL2, SparseVector(), 1.0)
    assert h.evaluate(unit(1, 0.5)) == pytest.approx(math.sqrt(5.0) / 2.0 - 1.0,
                                                     abs=1e-12)


def test_hilbert_ball_with_level_equal_norm_is_internal():
    w = sparse({1: 0.3, 2: -0.4})
    h = fn.HilbertBall(BALL2, w, w.norm(2.0))
    g = fn.Internal(BALL2, w)
    rng = np.random.default_rng(1)
    for x in BALL2.sample(rng, 100):
        assert h.evaluate(x) == pytest.approx(g.evaluate(x), abs=1e-12)


def test_hilbert_ball_parameter_validation():
    with pytest.raises(ValueError):
        fn.HilbertBall(BALL2, unit(1, 0.8), 0.5)  # norm > level
    with pytest.raises(ValueError):
        fn.HilbertBall(BALL2, unit(1, 0.5), 1.5)  # level > radius
    with pytest.raises(UnsupportedSpaceError):
        fn.HilbertBall(LpBall(1.0, 1.0), SparseVector(), 0.5)


def test_busemann_numeric_examples():
    est = fn.busemann_numeric(L2, unit(1), unit(1, 3.0))
    assert est.value == pytest.approx(-3.0, abs=1e-12)
    assert est.converged

    v = sparse({2: 1.2, 5: -0.9})
    nv = v.norm(2.0)
    up = fn.busemann_numeric(L2, v * (-1.0 / nv), v)
    down = fn.busemann_numeric(L2, v * (1.0 / nv), v)
    assert up.value == pytest.approx(nv, abs=1e-9)
    assert down.value == pytest.approx(-nv, abs=1e-9)

    orth = fn.busemann_numeric(L2, unit(1), unit(2))
    # independent oracle: direct evaluation far along the ray
    assert abs(ray_value(2.0, unit(1), unit(2), 2.0 ** 24)) < 1e-6
    assert orth.value == pytest.approx(0.0, abs=1e-6)


def test_busemann_numeric_monotone_floor():
    x = sparse({1: -0.7, 4: 1.1})
    est = fn.busemann_numeric(L2, unit(3), x)
    assert est.value >= -x.norm(2.0)


def test_busemann_numeric_requires_unit_and_normed():
    with pytest.raises(NotUnitVectorError):
        fn.busemann_numeric(L2, unit(1, 2.0), unit(2))
    with pytest.raises(NotNormedSpaceError):
        fn.busemann_numeric(BALL2, unit(1), unit(2, 0.5))


def test_busemann_closed_lp_examples():
    x = sparse({1: 2.0, 3: 5.0})
    # independent oracle: exact once the ray dominates every coordinate
    assert ray_value(1.0, unit(1), x, 64.0) == 3.0
    assert fn.busemann_closed_lp(1.0, unit(1), x) == 3.0

    v = sparse({2: 0.8, 7: -1.7})
    nv = v.norm(2.0)
    assert fn.busemann_closed_lp(2.0, v * (-1.0 / nv), v) == pytest.approx(nv, abs=1e-12)
    for p in (1.0, 1.5, 2.0, 3.0):
        assert fn.busemann_closed_lp(p, unit(4), SparseVector()) == 0.0


def test_busemann_closed_lp_rejects_non_unit():
    with pytest.raises(NotUnitVectorError):
        fn.busemann_closed_lp(2.0, unit(1, 0.9), unit(2))


def test_l1_linear_evaluation_and_validation():
    h = fn.L1Linear(L1, ((1, 1), (3, -1)))
    assert h.evaluate(sparse({1: 2.0, 3: 4.0, 8: 9.0})) == -2.0
    tail = fn.L1Linear(L1, (), -1)
    assert tail.evaluate(sparse({5: 1.0, 9: 2.0})) == -3.0
    with pytest.raises(ValueError):
        fn.L1Linear(L1, ())
    with pytest.raises(ValueError):
        fn.L1Linear(L1, ((2, 3),))
    with pytest.raises(UnsupportedSpaceError):
        fn.L1Linear(L2, ((1, 1),))


def test_point_evaluation():
    space = SupNormSpace()
    hat = PLFunction((0.0, 0.5, 1.0), (0.0, 1.0, 0.0))
    assert fn.PointEvaluation(space, 0.5, 1).evaluate(hat) == 1.0
    assert fn.PointEvaluation(space, 0.5, -1).evaluate(hat) == -1.0
    assert fn.PointEvaluation(space, 0.25, 1).evaluate(space.basepoint) == 0.0


def test_rebase_identities():
    h = fn.Internal(L1, unit(2, 2.0))
    assert fn.rebase(h, SparseVector()) is h  # basepoint rebase is a no-op

    b = sparse({1: 1.0})
    eta = fn.rebase(h, b)
    assert eta.evaluate(b) == 0.0
    rng = np.random.default_rng(2)
    for x in L1.sample(rng, 50):
        assert eta.evaluate(x) == pytest.approx(h.evaluate(x) - h.evaluate(b), abs=1e-12)
        # rebasing the view at b back at the basepoint recovers h
        back = fn.rebase(eta, SparseVector())
        assert back.evaluate(x) == pytest.approx(h.evaluate(x), abs=1e-12)
    # internal rebasing identity: values become d(x, w) - d(b, w)
    w = unit(2, 2.0)
    x = sparse({2: -1.0, 6: 0.5})
    assert eta.evaluate(x) == pytest.approx(L1.distance(x, w) - L1.distance(b, w),
                                            abs=1e-12)


def test_shift_scale_examples_and_identity():
    h = fn.Internal(L1, unit(1))
    eta, offset = fn.shift_scale(h, 1.0, 0.0, SparseVector())
    assert eta == h and offset == 0.0

    eta, offset = fn.shift_scale(h, -1.0, 0.0, SparseVector())
    assert eta.anchor == unit(1, -1.0) and offset == 0.0
    x = unit(2)
    assert h.evaluate(x * -1.0) == pytest.approx(abs(-1.0) * eta.evaluate(x) + offset)

    rng = np.random.default_rng(3)
    for _ in range(100):
        w, v, x = L1.sample(rng, 3)
        s = float(rng.uniform(0.3, 2.0)) * float(rng.choice([-1.0, 1.0]))
        t = float(rng.uniform(-2.0, 2.0))
        g = fn.Internal(L1, w)
        eta, offset = fn.shift_scale(g, s, t, v)
        lhs = g.evaluate(x * s + v * t)
        rhs = abs(s) * eta.evaluate(x) + offset
        assert lhs == pytest.approx(rhs, abs=1e-12)

    with pytest.raises(ZeroScaleError):
        fn.shift_scale(h, 0.0, 1.0, unit(1))


def test_separating_busemann():
    h, gap = fn.separating_busemann(L1, unit(1), unit(2))
    assert gap == pytest.approx(2.0, abs=1e-9)
    assert h.evaluate(unit(1)) == pytest.approx(-2.0 + h.evaluate(unit(2)), abs=1e-9)

    h2, gap2 = fn.separating_busemann(L2, unit(1, 2.0), SparseVector())
    assert gap2 == pytest.approx(2.0, abs=1e-9)

    with pytest.raises(EqualPointsError):
        fn.separating_busemann(L2, unit(1), unit(1))


def test_norm_via_busemann():
    value, witness = fn.norm_via_busemann(L2, SparseVector())
    assert value == 0.0 and witness is None

    value, witness = fn.norm_via_busemann(L2, unit(1, 3.0))
    assert value == pytest.approx(3.0, abs=1e-9)
    assert witness.direction == unit(1, -1.0)

    v = sparse({1: 0.7, 4: -1.1})
    value, witness = fn.norm_via_busemann(LpSpace(1.5), v, n_directions=24, seed=5)
    assert value == pytest.approx(v.norm(1.5), abs=1e-9)


def test_check_properties_reports():
    rep = fn.check_properties(fn.Internal(L1, unit(1)), n_samples=200, seed=4)
    assert rep.max_lipschitz_ratio <= 1.0 + 1e-9
    assert rep.max_wconvex_violation <= 1e-9
    assert rep.basepoint_value == 0.0

    rep2 = fn.check_properties(fn.BusemannClosedLp(L2, unit(1)), n_samples=200, seed=4)
    assert rep2.max_subadditivity_violation == 0.0  # linear for p = 2
    assert rep2.max_homogeneity_residual <= 1e-12

    rep3 = fn.check_properties(fn.ZeroFunctional(SnowflakeLine(0.5)), n_samples=100)
    assert rep3.max_lipschitz_ratio == 0.0
    assert rep3.max_wconvex_violation is None  # no combination map there


def test_default_family_composition():
    only_internals = fn.default_family(LpBall(1.0, 1.0), 40)
    assert {m.kind for m in only_internals} == {"internal"}

    snow = fn.default_family(SnowflakeLine(0.5), 40)
    assert {m.kind for m in snow} == {"internal", "zero"}

    finite = fn.default_family(FiniteMetricSpace.discrete(4), 64)
    assert len(finite) == 4
    assert {m.kind for m in finite} == {"internal"}

    l1_family = fn.default_family(L1, 64)
    kinds = {m.kind for m in l1_family}
    assert kinds == {"internal", "l1_linear", "busemann_lp"}
    assert "zero" not in kinds  # the zero functional does not live on l1

    lp_family = fn.default_family(LpSpace(1.5), 64)
    assert "zero" in {m.kind for m in lp_family}

    ball_family = fn.default_family(BALL2, 64)
    assert {m.kind for m in ball_family} == {"hilbert_ball"}

    sup_family = fn.default_family(SupNormSpace(), 64)
    assert {"internal", "point_eval"} <= {m.kind for m in sup_family}

    discrete_family = fn.default_family(DiscreteSpace(), 32)
    assert "zero" in {m.kind for m in discrete_family}


def test_family_members_vanish_at_basepoint_and_are_lipschitz():
    rng = np.random.default_rng(6)
    for space in (L1, L2, BALL2, LpBall(1.0, 1.0), SupNormSpace(), SnowflakeLine(0.5),
                  DiscreteSpace(), FiniteMetricSpace.discrete(4),
                  CountableSubsetOfL1.zero_and_units()):
        family = fn.default_family(space, 32, seed=8)
        pts = list(space.sample(rng, 25)) + [space.basepoint]
        for member in family:
            assert abs(member.value(space.basepoint)) <= 1e-9
            for _ in range(20):
                i, j = rng.integers(0, len(pts), size=2)
                x, y = pts[int(i)], pts[int(j)]
                assert abs(member.value(x) - member.value(y)) <= space.distance(x, y) + 1e-9


def test_max_row_identity_on_finite_space():
    space = FiniteMetricSpace((
        (0.0, 2.0, 1.5),
        (2.0, 0.0, 1.0),
        (1.5, 1.0, 0.0),
    ))
    family = fn.default_family(space)
    o = space.basepoint
    for w in space.points():
        column = [m.value(w) for m in family]
        assert max(column) == space.distance(o, w)


def test_internal_limits_along_moving_anchors():
    # anchors n*e_n: pointwise limit is the zero functional for p > 1 and the
    # internal at the origin for p = 1, on fixed finite-support points
    x = sparse({1: 1.0, 2: -2.0})
    # decay rate is n^(1-p), so the schedule must reach further for small p
    for p in (2.0, 1.5):
        vals = [fn.Internal(LpSpace(p), unit(n, float(n))).value(x)
                for n in (2 ** 10, 2 ** 30, 2 ** 50)]
        assert abs(vals[-1]) < 1e-6
        assert abs(vals[-1]) <= abs(vals[0])
    vals1 = [fn.Internal(L1, unit(n, float(n))).value(x) for n in (2 ** 10, 2 ** 30)]
    assert vals1[-1] == fn.Internal(L1, SparseVector()).value(x)


def test_shift_scale_view_matches_internal():
    h = fn.Internal(L2, sparse({1: 1.0, 3: 2.0}))
    view = fn.ShiftScaleView(L2, h, -2.0, 1.5, unit(3))
    direct = fn.Internal(L2, (h.anchor - unit(3) * 1.5) * (1.0 / -2.0))
    rng = np.random.default_rng(9)
    for x in L2.sample(rng, 50):
        assert view.value(x) == pytest.approx(direct.value(x), abs=1e-12)
