"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines. Tolerances are pinned here, not configured elsewhere.
"""
import math
import time

import numpy as np
import pytest

from dweak import convergence as conv
from dweak import functionals as fn
from dweak import oracle
from dweak.points import Atom, ScalarPoint, SparseVector, sparse, unit
from dweak.sequences import (
    Alternating,
    CoordinateBlowup,
    ExplicitList,
    FreshAtoms,
    RecurrentWithFresh,
    ScalarRamp,
    SeededRandomBounded,
    SequenceSpec,
    UserFormula,
)
from dweak.spaces import (
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
)

L1 = LpSpace(1.0)
L2 = LpSpace(2.0)
BALL1 = LpBall(1.0, 1.0)
BALL2 = LpBall(2.0, 1.0)
RADIUS_HALF = math.sqrt(5.0) / 2.0 - 1.0


def _verdict_line(name: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{name}: {detail}"


def _ball_grid(space, count, seed, threshold, margin=1e-3):
    rng = np.random.default_rng(seed)
    grid = []
    while len(grid) < count:
        x = space.sample(rng, 1)[0]
        if abs(x.norm(space.p) - threshold) <= margin:
            continue
        grid.append(x)
    return grid


def test_criterion_1_l2_ball_limit_set():
    start = time.perf_counter()
    seq = SequenceSpec(BALL2, CoordinateBlowup(0.5), 256)
    grid = _ball_grid(BALL2, 100, seed=41, threshold=RADIUS_HALF)
    family = fn.default_family(BALL2, 400, anchors=tuple(grid))
    assert len(family) >= 200

    estimate = conv.lambda_set(seq, family, grid, n_terms=256)
    membership_exact = all(
        v.is_consistent == (z.norm(2.0) ** 2 + 2.0 * z.norm(2.0) <= 0.25)
        for z, v in zip(estimate.grid, estimate.verdicts)
    )
    closed_err = abs(estimate.closed_form.threshold - RADIUS_HALF)
    tested = conv.membership_radius(seq, family, unit(1), n_terms=256)
    tested_err = abs(tested - RADIUS_HALF)
    elapsed = time.perf_counter() - start

    ok = (membership_exact and closed_err <= 1e-9 and tested_err <= 1e-6
          and elapsed < 5.0)
    _verdict_line(
        "1 l2-ball limit set", ok,
        f"family={len(family)}, grid exact={membership_exact}, "
        f"closed-form err={closed_err:.2e} (<=1e-9), "
        f"tested err={tested_err:.2e} (<=1e-6), {elapsed:.2f}s (<5s)")


def test_criterion_2_l1_ball_limit_set():
    seq = SequenceSpec(BALL1, CoordinateBlowup(0.5), 256)
    grid = _ball_grid(BALL1, 100, seed=42, threshold=0.5)
    family = fn.default_family(BALL1, 120, anchors=tuple(grid))
    assert {m.kind for m in family} == {"internal"}

    estimate = conv.lambda_set(seq, family, grid, n_terms=256)
    membership_exact = all(
        v.is_consistent == (z.norm(1.0) <= 0.5)
        for z, v in zip(estimate.grid, estimate.verdicts)
    )

    worst_tail = 0.0
    for member in family.members[:40]:
        w = member.anchor
        for n in range(w.max_index() + 1, w.max_index() + 6):
            worst_tail = max(worst_tail, abs(member.value(unit(n, 0.5)) - 0.5))

    ok = membership_exact and worst_tail <= 1e-9
    _verdict_line(
        "2 l1-ball limit set", ok,
        f"grid exact={membership_exact}, internal tail residual={worst_tail:.2e} "
        "(<=1e-9)")


def test_criterion_3_delta_vs_dweak_divergence():
    seq = SequenceSpec(L1, CoordinateBlowup(1.0), 400)
    family = fn.default_family(L1, 64)

    delta = conv.test_delta(seq, SparseVector(), n_terms=400, tol=1e-7)
    weak = conv.test_dweak(seq, SparseVector(), family, n_terms=400, tol=1e-7)
    replayed = conv.liminf_estimate(weak.witness, seq, n_terms=400, tol=1e-7)
    replay_gap = weak.witness.value(SparseVector()) - replayed.value

    ok = (delta.is_consistent and weak.is_violation
          and weak.witness.kind == "l1_linear"
          and abs(replay_gap - weak.gap) <= 1e-12)
    _verdict_line(
        "3 delta vs d-weak divergence", ok,
        f"delta={delta.outcome}, dweak={weak.outcome} via {weak.witness.kind}, "
        f"gap={weak.gap}, replay residual={abs(replay_gap - weak.gap):.1e}")


def test_criterion_4_gliding_hump_batch():
    failures = []
    for i in range(10):
        gen = SeededRandomBounded(seed=4000 + i, bound=2.0, slide=6)
        seq = SequenceSpec(L1, gen, 200)
        eps = 1.0
        cert = conv.gliding_hump(seq, eps, n_terms=200)
        # independent re-verification by direct summation
        signs = dict(cert.signs)
        for idx, reported in zip(cert.indices, cert.row_sums):
            x = seq.point_at(idx)
            direct = math.fsum(signs.get(k, 0) * v for k, v in x.items())
            assert reported == pytest.approx(direct, abs=1e-15)
        if cert.achieved < eps / 4.0:
            failures.append((i, cert.achieved))
    ok = not failures
    _verdict_line("4 gliding hump", ok,
                  f"10 seeded sequences, achieved >= eps/4, failures={failures}")


def test_criterion_5_busemann_identities():
    start = time.perf_counter()
    rng = np.random.default_rng(55)
    cross_res = 0.0
    direction_res = 0.0
    subadd_res = 0.0
    homog_res = 0.0
    separation_res = 0.0
    trials_per_p = 25
    for p in (1.0, 1.5, 2.0, 3.0):
        space = LpSpace(p)
        report = oracle.busemann_cross_validate(p, trials=trials_per_p,
                                                seed=int(rng.integers(1 << 30)))
        cross_res = max(cross_res, report.max_residual)
        for _ in range(trials_per_p):
            pts = space.sample(rng, 3)
            v = pts[0] if not pts[0].is_zero else unit(2, 1.2)
            nv = v.norm(p)
            up = fn.BusemannClosedLp(space, v * (-1.0 / nv))
            down = fn.BusemannClosedLp(space, v * (1.0 / nv))
            direction_res = max(direction_res, abs(up.value(v) - nv),
                                abs(down.value(v) + nv))

            x, y = pts[1], pts[2]
            subadd_res = max(subadd_res, up.value(x + y) - up.value(x) - up.value(y))
            s = float(rng.uniform(0.0, 3.0))
            homog_res = max(homog_res, abs(up.value(x * s) - s * up.value(x)))
            if x != y:
                h, gap = fn.separating_busemann(space, x, y)
                d = space.distance(x, y)
                separation_res = max(separation_res, abs(gap - d),
                                     abs(h.value(x) - (-d + h.value(y))))
    elapsed = time.perf_counter() - start
    ok = (cross_res <= 1e-6 and direction_res <= 1e-9 and subadd_res <= 1e-7
          and homog_res <= 1e-7 and separation_res <= 1e-7 and elapsed < 10.0)
    _verdict_line(
        "5 directional-functional identities", ok,
        f"closed-vs-numeric={cross_res:.2e} (<=1e-6), "
        f"direction={direction_res:.2e} (<=1e-9), subadd={subadd_res:.2e}, "
        f"homog={homog_res:.2e}, separation={separation_res:.2e} (<=1e-7), "
        f"{elapsed:.2f}s (<10s)")


def test_criterion_6_finite_space_oracle_equivalence():
    rng = np.random.default_rng(66)
    disagreements = 0
    candidates = 0
    worst_row = 0.0
    for _ in range(100):
        space = oracle.random_finite_metric(int(rng.integers(2, 9)), rng)
        table = oracle.finite_compactification(space)
        worst_row = max(worst_row, table.max_row_identity_residual())
        seq = oracle.random_periodic_sequence(space, rng)
        family = fn.default_family(space)
        tester = conv.DweakTester(seq, family, n_terms=64, tol=1e-9)
        for z in space.points():
            exact = oracle.brute_force_dweak(space, seq, z, tol=1e-9)
            candidates += 1
            if exact.outcome != tester.verdict(z).outcome:
                disagreements += 1
    ok = disagreements == 0 and worst_row == 0.0
    _verdict_line(
        "6 finite-space oracle equivalence", ok,
        f"100 spaces, {candidates} candidates, disagreements={disagreements}, "
        f"max-row residual={worst_row} (exact)")


def test_criterion_7_discrete_classification():
    space = DiscreteSpace()
    cases = [
        (ExplicitList((Atom(3), Atom(1), Atom(2)), tail="hold"),
         "eventually_constant", "singleton"),
        (Alternating(Atom(1), Atom(2)), "two_accumulation", "empty"),
        (RecurrentWithFresh(Atom(1), 100), "one_infinite", "singleton"),
        (FreshAtoms(20), "all_finite", "all_points"),
    ]
    results = []
    for gen, expect_case, expect_set in cases:
        seq = SequenceSpec(space, gen, 64)
        cls = conv.discrete_classify(seq, n_terms=64)
        case_ok = cls.case == expect_case and cls.limit_set == expect_set
        family = conv.discrete_family_for(seq, cls)
        tester = conv.DweakTester(seq, family, n_terms=64, tol=1e-7)
        if expect_case == "eventually_constant":
            cross_ok = tester.verdict(cls.limit).is_consistent
        elif expect_case == "two_accumulation":
            cross_ok = all(tester.verdict(a).is_violation for a in cls.recurrent)
        elif expect_case == "one_infinite":
            cross_ok = (tester.verdict(cls.limit).is_consistent
                        and tester.verdict(Atom(10 ** 6)).is_violation)
        else:
            cross_ok = all(tester.verdict(a).is_consistent
                           for a in (Atom(20), Atom(50), Atom(0), Atom(10 ** 6)))
        results.append((expect_case, case_ok and cross_ok))
    ok = all(r for _, r in results)
    _verdict_line("7 discrete classification", ok,
                  ", ".join(f"{name}={'ok' if good else 'bad'}"
                            for name, good in results))


def test_criterion_8_compactification_limits():
    grid1 = [SparseVector()] + [unit(k, 0.5 * k) for k in range(1, 11)] \
        + [sparse({k: 1.0, k + 1: -1.0}) for k in range(1, 10)]
    assert len(grid1) == 20

    seq1 = SequenceSpec(L1, CoordinateBlowup(None), 2 ** 60)
    ext1 = oracle.diagonal_subsequence(seq1, grid1, tol=1e-6)
    res1 = max(abs(v - L1.distance(y, SparseVector()))
               for v, y in zip(ext1.limits, grid1))

    seq2 = SequenceSpec(L2, CoordinateBlowup(None), 2 ** 60)
    ext2 = oracle.diagonal_subsequence(seq2, grid1, tol=1e-6)
    res2 = max(abs(v) for v in ext2.limits)

    snow = SnowflakeLine(0.5)
    snow_grid = [ScalarPoint(float(v)) for v in (-2, -1, 0, 1, 2)]
    up = oracle.snowflake_limit_check(
        SequenceSpec(snow, ScalarRamp(2.0, 1), 2 ** 30), snow_grid)
    down = oracle.snowflake_limit_check(
        SequenceSpec(snow, ScalarRamp(2.0, -1), 2 ** 30), snow_grid)

    ok = (res1 <= 1e-6 and res2 <= 1e-6 and up.escaped and down.escaped
          and up.max_abs <= 1e-6 and down.max_abs <= 1e-6)
    _verdict_line(
        "8 compactification limits", ok,
        f"l1 residual={res1:.2e}, l2 residual={res2:.2e}, "
        f"snowflake max={max(up.max_abs, down.max_abs):.2e} (all <=1e-6)")


def test_criterion_9_property_suites():
    start = time.perf_counter()
    summary = []

    # 9a: 1-Lipschitz across every catalog family, >= 100 members
    rng = np.random.default_rng(90)
    members_checked = 0
    lipschitz_failures = 0
    for space in (L1, L2, BALL1, BALL2, SnowflakeLine(0.5), DiscreteSpace(),
                  FiniteMetricSpace.discrete(5)):
        family = fn.default_family(space, 24, seed=90)
        pts = list(space.sample(rng, 20)) + [space.basepoint]
        for member in family:
            members_checked += 1
            for _ in range(25):
                i, j = rng.integers(0, len(pts), size=2)
                x, y = pts[int(i)], pts[int(j)]
                if abs(member.value(x) - member.value(y)) > space.distance(x, y) + 1e-9:
                    lipschitz_failures += 1
    assert members_checked >= 100
    summary.append(("lipschitz", members_checked, lipschitz_failures))

    # 9b: basepoint invariance of verdicts, >= 100 comparisons
    compared = 0
    invariance_failures = 0
    for seed in (1, 2):
        seq = SequenceSpec(BALL2, CoordinateBlowup(0.5), 192)
        rng_b = np.random.default_rng(seed)
        candidates = [x * (0.3 / max(x.norm(2.0), 1e-9))
                      for x in BALL2.sample(rng_b, 10)]
        candidates += [SparseVector(), unit(1, 0.4)]
        family = fn.default_family(BALL2, 48, anchors=tuple(candidates), seed=seed)
        base_tester = conv.DweakTester(seq, family, n_terms=192, tol=1e-7)
        for b in BALL2.sample(rng_b, 5):
            rebased = fn.FunctionalFamily(
                BALL2, tuple(fn.rebase(m, b) for m in family), "rebased")
            tester = conv.DweakTester(seq, rebased, n_terms=192, tol=1e-7)
            for z in candidates:
                compared += 1
                v1, v2 = base_tester.verdict(z), tester.verdict(z)
                if v1.outcome != v2.outcome:
                    invariance_failures += 1
                    continue
                if v1.is_violation:
                    original = getattr(v2.witness, "inner", v2.witness)
                    if original != v1.witness:
                        invariance_failures += 1
    assert compared >= 100
    summary.append(("basepoint_invariance", compared, invariance_failures))

    # 9c: strong implies weak acceptance, 100 seeded cases
    strong_failures = 0
    rng_c = np.random.default_rng(91)
    for trial in range(100):
        z, w = L2.sample(rng_c, 2)
        seq = SequenceSpec(L2, UserFormula(
            lambda n, z=z, w=w: z + w * (0.25 * 0.5 ** n), "z+w/2^n"), 256)
        if not conv.test_strong(seq, z, n_terms=256, tol=1e-9).is_consistent:
            strong_failures += 1
            continue
        family = fn.default_family(L2, 24, anchors=(z,), seed=trial)
        verdict = conv.test_dweak(seq, z, family, n_terms=256, burn_in=64, tol=1e-7)
        if not verdict.is_consistent:
            strong_failures += 1
    summary.append(("strong_implies_dweak", 100, strong_failures))

    # 9d: distance bound at accepted limits, >= 100 probe rows
    rows = 0
    bound_failures = 0
    seq_d = SequenceSpec(BALL2, CoordinateBlowup(0.5), 192)
    rng_d = np.random.default_rng(92)
    for trial in range(10):
        z = BALL2.sample(rng_d, 1)[0] * 0.05
        probes = BALL2.sample(rng_d, 10)
        report = conv.liminf_distance_bound(seq_d, z, probes, n_terms=192, tol=1e-7)
        rows += len(report.rows)
        bound_failures += sum(not r.ok for r in report.rows)
    assert rows >= 100
    summary.append(("liminf_distance_bound", rows, bound_failures))

    # 9e: combinations of accepted limits stay accepted, >= 100 pairs
    grid_e = [x * (0.1 / max(x.norm(2.0), 1e-9))
              for x in BALL2.sample(np.random.default_rng(93), 25) if not x.is_zero]
    family_e = fn.default_family(BALL2, 80, anchors=tuple(grid_e), seed=93)
    estimate = conv.lambda_set(seq_d, family_e, grid_e, n_terms=192)
    convexity = conv.check_lambda_convex_closed(estimate, seq_d, family_e,
                                                n_pairs=100, seed=93, n_terms=192)
    assert convexity.n_checked >= 100
    summary.append(("lambda_convexity", convexity.n_checked,
                    len(convexity.counterexamples)))

    # 9f: linear combinations, 100 seeded instances
    combo_failures = 0
    rng_f = np.random.default_rng(94)
    for trial in range(100):
        u, v, w = L2.sample(rng_f, 3)
        s = float(rng_f.uniform(-2.0, 2.0))
        t = float(rng_f.uniform(-2.0, 2.0))
        seq_x = SequenceSpec(L2, UserFormula(
            lambda n, u=u, w=w: u + w * (0.25 * 0.5 ** n), "to u"), 256)
        seq_y = SequenceSpec(L2, UserFormula(
            lambda n, v=v, w=w: v + w * (0.25 * 0.5 ** n), "to v"), 256)
        family = fn.default_family(L2, 20, anchors=(u, v, u * s + v * t), seed=trial)
        try:
            verdict = conv.linear_combination_check(
                seq_x, u, seq_y, v, s, t, family, n_terms=256, burn_in=64,
                tol=1e-7, strong_tol=1e-6)
        except Exception:
            combo_failures += 1
            continue
        if not verdict.is_consistent:
            combo_failures += 1
    summary.append(("linear_combination", 100, combo_failures))

    # 9g: norm-convergence dichotomy branches, 100 seeded cases
    branch_failures = 0
    rng_g = np.random.default_rng(95)
    for trial in range(100):
        xhat = BALL2.sample(rng_g, 1)[0] * 0.6
        if xhat.is_zero:
            xhat = unit(1, 0.5)
        if trial % 2 == 0:
            seq = SequenceSpec(BALL2, UserFormula(
                lambda n, xh=xhat: xh * (1.0 - 0.25 * 0.5 ** n), "shrink"), 192)
            expected = "strong"
        else:
            r0 = xhat.norm(2.0)
            seq = SequenceSpec(BALL2, UserFormula(
                lambda n, r0=r0: unit(n + 8, r0), "rotate"), 192)
            expected = "internal_violation"
        report = conv.uniform_convex_strong_check(BALL2, seq, xhat, n_terms=192,
                                                  tol=1e-2, seed=trial)
        if report.branch != expected:
            branch_failures += 1
    summary.append(("uniform_convexity", 100, branch_failures))

    elapsed = time.perf_counter() - start
    failures = sum(f for _, _, f in summary)
    detail = ", ".join(f"{name}:{count} cases/{fails} bad"
                       for name, count, fails in summary)
    ok = failures == 0 and elapsed < 60.0
    _verdict_line("9 property suites", ok, f"{detail}, {elapsed:.1f}s (<60s)")
