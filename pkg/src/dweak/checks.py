"""Named checks executable from scenario files and the built-in suite.

Each runner takes the scenario context plus its own parameters and returns a
JSON-compatible details dict containing at least `passed`. Certificates
embedded in details are full functional descriptions, so a violation can be
replayed from the report alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Mapping

import numpy as np

from . import convergence as conv
from . import oracle
from .errors import ExecutionError, PreconditionFailedError, ScenarioParseError
from .functionals import (
    BusemannClosedLp,
    FunctionalFamily,
    Internal,
    check_properties,
    default_family,
    norm_via_busemann,
    rebase,
    separating_busemann,
    shift_scale,
)
from .points import Atom, Point, unit
from .sequences import (
    EventuallyPeriodic,
    SequenceSpec,
    UserFormula,
)
from .serialize import (
    functional_to_dict,
    point_from_dict,
    point_to_dict,
    sequence_from_dict,
)
from .spaces import (
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    Space,
    hull,
    validate_space,
    w_combine,
)


@dataclass
class CheckContext:
    space: Space
    sequence: SequenceSpec | None
    horizon: int
    tol: float
    seed: int
    family_budget: int

    def require_sequence(self) -> SequenceSpec:
        if self.sequence is None:
            raise ExecutionError("this check needs a sequence in the scenario")
        return self.sequence

    def family(self, anchors: tuple[Point, ...] = (), budget: int | None = None) -> FunctionalFamily:
        return default_family(self.space, budget or self.family_budget,
                              anchors=anchors, seed=self.seed)


def verdict_to_dict(v: conv.Verdict) -> dict:
    out: dict[str, Any] = {
        "outcome": v.outcome,
        "candidate": point_to_dict(v.candidate),
        "n_terms": v.n_terms,
        "tol": v.tol,
    }
    if v.margin is not None:
        out["margin"] = v.margin
    if v.gap is not None:
        out["gap"] = v.gap
    if v.witness is not None:
        out["witness"] = functional_to_dict(v.witness)
    if v.probe is not None:
        out["probe"] = point_to_dict(v.probe)
    if v.window is not None:
        out["window"] = list(v.window)
    if v.reason is not None:
        out["reason"] = v.reason
    return out


def _point(params: Mapping[str, Any], key: str) -> Point:
    if key not in params:
        raise ScenarioParseError(f"check parameter {key!r} is required")
    return point_from_dict(params[key], f"param {key}")


def _points(params: Mapping[str, Any], key: str) -> list[Point]:
    return [point_from_dict(p, f"param {key}") for p in params.get(key, [])]


def _replay_violation(ctx: CheckContext, seq: SequenceSpec, v: conv.Verdict,
                      burn_in: int | None) -> dict:
    """Re-run the certificate's window minimum and reproduce the gap."""
    est = conv.liminf_estimate(v.witness, seq, burn_in=burn_in,
                               n_terms=v.n_terms, tol=v.tol)
    gap = v.witness.value(v.candidate) - est.value
    return {"replayed_gap": gap, "replay_ok": abs(gap - v.gap) <= 1e-12}


# ---------------------------------------------------------------------------
# Runners


def run_validate_space(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    report = validate_space(ctx.space, n_samples=int(params.get("n_samples", 80)),
                            seed=ctx.seed)
    return {
        "passed": report.ok,
        "violations": [str(v) for v in report.violations],
        "n_samples": report.n_samples,
        "seed": report.seed,
    }


def run_test_dweak(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    z = _point(params, "z")
    expect = params.get("expect", "consistent")
    anchors = tuple(_points(params, "anchors")) + (z,)
    family = ctx.family(anchors, params.get("budget"))
    burn_in = params.get("burn_in")
    tol = float(params.get("tol", ctx.tol))
    v = conv.test_dweak(seq, z, family, n_terms=ctx.horizon, burn_in=burn_in, tol=tol)
    details = {"verdict": verdict_to_dict(v), "family_size": len(family),
               "passed": v.outcome == expect}
    if v.is_violation:
        details.update(_replay_violation(ctx, seq, v, burn_in))
        details["passed"] = details["passed"] and details["replay_ok"]
    return details


def run_test_delta(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    z = _point(params, "z")
    probes = _points(params, "probes") or None
    expect = params.get("expect", "consistent")
    v = conv.test_delta(seq, z, probes, n_terms=ctx.horizon,
                        tol=float(params.get("tol", ctx.tol)))
    return {"verdict": verdict_to_dict(v), "passed": v.outcome == expect}


def run_test_strong(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    z = _point(params, "z")
    expect = params.get("expect", "consistent")
    v = conv.test_strong(seq, z, n_terms=ctx.horizon,
                         tol=float(params.get("tol", 1e-6)))
    return {"verdict": verdict_to_dict(v), "passed": v.outcome == expect}


def run_liminf_value(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    from .serialize import functional_from_dict

    seq = ctx.require_sequence()
    h = functional_from_dict(params["functional"], ctx.space, "param functional")
    est = conv.liminf_estimate(h, seq, n_terms=ctx.horizon, tol=ctx.tol)
    expected = float(params["expected"])
    atol = float(params.get("atol", 1e-9))
    return {
        "value": est.value,
        "stable": est.stable,
        "expected": expected,
        "passed": est.stable and abs(est.value - expected) <= atol,
    }


def _region_grid(ctx: CheckContext, params: Mapping[str, Any],
                 region: conv.RegionDescriptor | None) -> list[Point]:
    explicit = _points(params, "grid")
    if explicit:
        return explicit
    space = ctx.space
    count = int(params.get("grid_size", 100))
    margin = float(params.get("boundary_margin", 1e-3))
    rng = np.random.default_rng(ctx.seed + 1)
    grid: list[Point] = []
    while len(grid) < count:
        x = space.sample(rng, 1)[0]
        if region is not None:
            m = region.boundary_margin(x)
            if m is not None and m <= margin:
                continue
        grid.append(x)
    return grid


def run_lambda_set(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    region = conv.closed_form_region(seq)
    grid = _region_grid(ctx, params, region)
    family = ctx.family(tuple(grid), params.get("budget"))
    estimate = conv.lambda_set(seq, family, grid, n_terms=ctx.horizon, tol=ctx.tol,
                               boundary_slack=float(params.get("boundary_margin", 1e-3)))
    details: dict[str, Any] = {
        "grid_size": len(grid),
        "family_size": len(family),
        "members": len(estimate.members),
        "mismatches": list(estimate.mismatches),
        "inconclusive": sum(v.is_inconclusive for v in estimate.verdicts),
    }
    passed = not estimate.mismatches and details["inconclusive"] == 0
    expect = params.get("expect_region")
    if expect is not None:
        if estimate.closed_form is None:
            passed = False
            details["closed_form"] = None
        else:
            details["closed_form"] = {
                "kind": estimate.closed_form.kind,
                "p": estimate.closed_form.p,
                "threshold": estimate.closed_form.threshold,
            }
            if estimate.closed_form.kind != expect["kind"]:
                passed = False
            elif expect["kind"] == "norm_ball":
                atol = float(expect.get("atol", 1e-9))
                if abs(estimate.closed_form.threshold - float(expect["threshold"])) > atol:
                    passed = False
    details["passed"] = passed
    return details


def run_membership_radius(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    direction = _point(params, "direction")
    expected = float(params["expected"])
    atol = float(params.get("atol", 1e-6))
    family = ctx.family((direction,), params.get("budget"))
    radius = conv.membership_radius(seq, family, direction, n_terms=ctx.horizon,
                                    tol=ctx.tol)
    return {"radius": radius, "expected": expected,
            "passed": abs(radius - expected) <= atol}


def run_lambda_convex(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    region = conv.closed_form_region(seq)
    grid = _region_grid(ctx, params, region)
    family = ctx.family(tuple(grid), params.get("budget"))
    estimate = conv.lambda_set(seq, family, grid, n_terms=ctx.horizon, tol=ctx.tol)
    report = conv.check_lambda_convex_closed(
        estimate, seq, family, n_pairs=int(params.get("pairs", 40)),
        seed=ctx.seed, n_terms=ctx.horizon, tol=ctx.tol)
    return {
        "members": report.n_members,
        "checked": report.n_checked,
        "counterexamples": len(report.counterexamples),
        "seed": report.seed,
        "passed": report.ok,
    }


def run_gliding_hump(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    eps = float(params["eps"])
    expect = params.get("expect", "certificate")
    try:
        cert = conv.gliding_hump(seq, eps, n_terms=ctx.horizon,
                                 n_blocks=int(params.get("blocks", 5)))
    except PreconditionFailedError as e:
        return {"outcome": "precondition_failed", "reason": str(e),
                "passed": expect == "precondition_failed"}
    certified = cert.achieved >= eps / 4.0
    return {
        "outcome": "certificate",
        "indices": list(cert.indices),
        "achieved": cert.achieved,
        "bound": eps / 4.0,
        "row_sums": list(cert.row_sums),
        "passed": expect == "certificate" and certified,
    }


def run_gliding_hump_batch(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    from .sequences import SeededRandomBounded

    count = int(params.get("count", 10))
    bound = float(params.get("bound", 2.0))
    eps = bound / 2.0
    worst = math.inf
    failures = 0
    for i in range(count):
        gen = SeededRandomBounded(seed=ctx.seed + i, bound=bound, slide=6)
        seq = SequenceSpec(ctx.space, gen, ctx.horizon)
        try:
            cert = conv.gliding_hump(seq, eps, n_terms=min(ctx.horizon, 200))
        except PreconditionFailedError:
            failures += 1
            continue
        worst = min(worst, cert.achieved)
        if cert.achieved < eps / 4.0:
            failures += 1
    return {
        "count": count,
        "eps": eps,
        "worst_achieved": None if worst is math.inf else worst,
        "bound": eps / 4.0,
        "failures": failures,
        "seed": ctx.seed,
        "passed": failures == 0,
    }


def run_uniform_convexity(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    xhat = _point(params, "xhat")
    report = conv.uniform_convex_strong_check(
        ctx.space, seq, xhat, n_terms=ctx.horizon,
        tol=float(params.get("tol", 1e-2)), liminf_tol=ctx.tol, seed=ctx.seed)
    details = {
        "branch": report.branch,
        "norm_residual": report.norm_residual,
        "passed": report.branch == params.get("expect_branch", "strong"),
    }
    if report.witness is not None:
        details["witness"] = functional_to_dict(report.witness)
        details["gap"] = report.gap
    if report.tail_distance is not None:
        details["tail_distance"] = report.tail_distance
    return details


def run_discrete_classify(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    cls = conv.discrete_classify(seq, n_terms=ctx.horizon)
    details: dict[str, Any] = {
        "case": cls.case,
        "limit_set": cls.limit_set,
        "recurrent": [point_to_dict(a) for a in cls.recurrent],
        "passed": cls.case == params["expect_case"],
    }
    if not params.get("cross_check", True) or not details["passed"]:
        return details
    family = conv.discrete_family_for(seq, cls)
    tester = conv.DweakTester(seq, family, n_terms=ctx.horizon, tol=ctx.tol)
    checks_ok = True
    if cls.case in ("eventually_constant", "one_infinite"):
        checks_ok &= tester.verdict(cls.limit).is_consistent
        other = Atom(cls.limit.id + 1000)
        checks_ok &= tester.verdict(other).is_violation
    elif cls.case == "two_accumulation":
        for a in cls.recurrent[:2]:
            checks_ok &= tester.verdict(a).is_violation
    else:  # all_finite
        probes = [seq.point_at(1), seq.point_at(ctx.horizon // 2), Atom(0), Atom(10 ** 6)]
        for a in probes:
            checks_ok &= tester.verdict(a).is_consistent
    details["cross_check_ok"] = bool(checks_ok)
    details["passed"] = details["passed"] and bool(checks_ok)
    return details


def run_ball_closedness(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    q = _point(params, "q")
    z = _point(params, "z")
    r = float(params["r"])
    v = conv.ball_closedness_probe(ctx.space, q, r, seq, z,
                                   n_terms=ctx.horizon, tol=ctx.tol)
    h_q = Internal(ctx.space, q)
    est = conv.liminf_estimate(h_q, seq, n_terms=ctx.horizon, tol=ctx.tol)
    canonical_ok = est.stable and est.value < h_q.value(z) - ctx.tol
    return {
        "verdict": verdict_to_dict(v),
        "canonical_witness_ok": canonical_ok,
        "passed": v.is_violation and canonical_ok,
    }


def run_liminf_distance_bound(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    z = _point(params, "z")
    probes = _points(params, "probes")
    report = conv.liminf_distance_bound(seq, z, probes, n_terms=ctx.horizon,
                                        tol=ctx.tol)
    return {
        "rows": [
            {"probe": point_to_dict(r.probe), "candidate_distance": r.candidate_distance,
             "liminf": r.liminf_estimate, "ok": r.ok}
            for r in report.rows
        ],
        "passed": report.ok,
    }


def run_linear_combination(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq_x = ctx.require_sequence()
    seq_y = sequence_from_dict(params["sequence_y"], ctx.space, "param sequence_y")
    u = _point(params, "u")
    v = _point(params, "v")
    s = float(params["s"])
    t = float(params["t"])
    family = ctx.family((u, v, u * s + v * t), params.get("budget"))
    verdict = conv.linear_combination_check(
        seq_x, u, seq_y, v, s, t, family, n_terms=ctx.horizon,
        tol=float(params.get("tol", ctx.tol)),
        strong_tol=float(params.get("strong_tol", 1e-2)))
    expect = params.get("expect", "consistent")
    return {"verdict": verdict_to_dict(verdict), "passed": verdict.outcome == expect}


def run_oracle_agreement(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    n_spaces = int(params.get("n_spaces", 100))
    max_size = int(params.get("max_size", 8))
    rng = np.random.default_rng(ctx.seed)
    tol = 1e-9
    disagreements = 0
    worst_row_residual = 0.0
    checked = 0
    for _ in range(n_spaces):
        n = int(rng.integers(2, max_size + 1))
        space = oracle.random_finite_metric(n, rng)
        table = oracle.finite_compactification(space)
        worst_row_residual = max(worst_row_residual, table.max_row_identity_residual())
        seq = oracle.random_periodic_sequence(space, rng)
        family = default_family(space)
        tester = conv.DweakTester(seq, family, n_terms=seq.horizon, tol=tol)
        for z in space.points():
            exact = oracle.brute_force_dweak(space, seq, z, tol=tol)
            sampled = tester.verdict(z)
            checked += 1
            if exact.outcome != sampled.outcome:
                disagreements += 1
    return {
        "spaces": n_spaces,
        "candidates_checked": checked,
        "disagreements": disagreements,
        "max_row_identity_residual": worst_row_residual,
        "seed": ctx.seed,
        "passed": disagreements == 0 and worst_row_residual == 0.0,
    }


def run_busemann_cross_validate(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    p = float(params["p"])
    trials = int(params.get("trials", 100))
    bound = float(params.get("bound", 1e-6))
    report = oracle.busemann_cross_validate(p, trials=trials, seed=ctx.seed)
    return {
        "p": p, "trials": trials, "max_residual": report.max_residual,
        "seed": report.seed, "passed": report.max_residual <= bound,
    }


def run_busemann_identities(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    p_values = [float(p) for p in params.get("p_values", [1.0, 1.5, 2.0, 3.0])]
    trials = int(params.get("trials", 25))
    rng = np.random.default_rng(ctx.seed)
    direction_residual = 0.0
    separation_residual = 0.0
    norm_sup_residual = 0.0
    subadd = 0.0
    homog = 0.0
    for p in p_values:
        space = LpSpace(p)
        for trial in range(trials):
            pts = space.sample(rng, 3)
            v = pts[0] if not pts[0].is_zero else unit(1, 1.5)
            nv = v.norm(p)
            u1 = v * (-1.0 / nv)
            u2 = v * (1.0 / nv)
            direction_residual = max(
                direction_residual,
                abs(BusemannClosedLp(space, u1).value(v) - nv),
                abs(BusemannClosedLp(space, u2).value(v) + nv),
            )
            x, y = pts[1], pts[2]
            if x != y:
                h, gap = separating_busemann(space, x, y)
                d = space.distance(x, y)
                separation_residual = max(
                    separation_residual,
                    abs(gap - d),
                    abs(h.value(x) - (-d + h.value(y))),
                )
            sup, _ = norm_via_busemann(space, v, n_directions=8,
                                       seed=ctx.seed + trial)
            norm_sup_residual = max(norm_sup_residual, abs(sup - nv))
            report = check_properties(BusemannClosedLp(space, u1), n_samples=60,
                                      seed=ctx.seed + trial)
            subadd = max(subadd, report.max_subadditivity_violation or 0.0)
            homog = max(homog, report.max_homogeneity_residual or 0.0)
    return {
        "p_values": p_values,
        "trials": trials,
        "direction_residual": direction_residual,
        "separation_residual": separation_residual,
        "norm_sup_residual": norm_sup_residual,
        "subadditivity": subadd,
        "homogeneity": homog,
        "seed": ctx.seed,
        "passed": (direction_residual <= 1e-9 and separation_residual <= 1e-7
                   and norm_sup_residual <= 1e-9 and subadd <= 1e-7 and homog <= 1e-7),
    }


def run_compactification_limit(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    target = params.get("target", "zero")
    tol = float(params.get("tol", 1e-6))
    rng = np.random.default_rng(ctx.seed + 2)
    grid = list(ctx.space.sample(rng, int(params.get("grid_size", 20))))
    extraction = oracle.diagonal_subsequence(seq, grid, tol=tol)
    if target == "zero":
        expected = [0.0] * len(grid)
    elif target == "internal_basepoint":
        o = ctx.space.basepoint
        expected = [ctx.space.distance(y, o) for y in grid]
    else:
        raise ExecutionError(f"unknown target {target!r}")
    residual = max(abs(v - e) for v, e in zip(extraction.limits, expected))
    return {
        "target": target,
        "grid_size": len(grid),
        "subsequence_length": len(extraction.indices),
        "max_residual": residual,
        "passed": residual <= tol,
    }


def run_snowflake_limit(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    grid = _points(params, "grid")
    tol = float(params.get("tol", 1e-6))
    table = oracle.snowflake_limit_check(seq, grid, tol=tol)
    expect = params.get("expect", "zero")
    if expect == "zero":
        passed = table.escaped and table.max_abs <= tol
    else:
        anchor = _point(params, "anchor")
        h = Internal(ctx.space, anchor)
        residual = max(abs(v - h.value(y)) for v, y in zip(table.limits, grid))
        passed = not table.escaped and residual <= tol
    return {"escaped": table.escaped, "max_abs": table.max_abs, "passed": passed}


def run_norm_via_busemann(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    v = _point(params, "v")
    sup, witness = norm_via_busemann(ctx.space, v,
                                     n_directions=int(params.get("n_directions", 32)),
                                     seed=ctx.seed)
    expected = ctx.space.norm(v)
    details = {"sup": sup, "norm": expected,
               "passed": abs(sup - expected) <= float(params.get("atol", 1e-9))}
    if witness is not None:
        details["witness"] = functional_to_dict(witness)
    return details


def run_hull(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    members = [Atom(int(i)) for i in params["points"]]
    expect = sorted(int(i) for i in params["expect"])
    got = sorted(a.id for a in hull(ctx.space, members))
    return {"hull": got, "expected": expect, "passed": got == expect}


def run_finite_compactification(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    if not isinstance(ctx.space, FiniteMetricSpace):
        raise ExecutionError("the scenario space is not a finite metric space")
    table = oracle.finite_compactification(ctx.space)
    n = ctx.space.size
    lipschitz_ok = True
    for row in table.rows:
        for i in range(n):
            for j in range(n):
                if abs(row[i] - row[j]) > ctx.space.matrix[i][j]:
                    lipschitz_ok = False
    residual = table.max_row_identity_residual()
    return {
        "rows": len(table.rows),
        "max_row_identity_residual": residual,
        "rows_lipschitz": lipschitz_ok,
        "passed": len(table.rows) == n and residual == 0.0 and lipschitz_ok,
    }


def run_w_combine_takahashi(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    samples = int(params.get("samples", 200))
    rng = np.random.default_rng(ctx.seed)
    pts = ctx.space.sample(rng, max(8, samples // 8))
    worst = 0.0
    for _ in range(samples):
        i, j, k = rng.integers(0, len(pts), size=3)
        t = float(rng.uniform(0, 1))
        x, y, z = pts[int(i)], pts[int(j)], pts[int(k)]
        mid = w_combine(ctx.space, x, y, t)
        excess = ctx.space.distance(z, mid) - ((1 - t) * ctx.space.distance(z, x)
                                               + t * ctx.space.distance(z, y))
        worst = max(worst, excess)
    return {"samples": samples, "max_excess": worst, "seed": ctx.seed,
            "passed": worst <= 1e-9}


def run_functional_properties(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    family = ctx.family(budget=params.get("budget"))
    samples = int(params.get("samples", 120))
    worst_lip = 0.0
    worst_conv = 0.0
    worst_base = 0.0
    for i, member in enumerate(family):
        report = check_properties(member, n_samples=samples, seed=ctx.seed + i)
        worst_base = max(worst_base, abs(report.basepoint_value))
        if report.max_lipschitz_ratio is not None:
            worst_lip = max(worst_lip, report.max_lipschitz_ratio)
        if report.max_wconvex_violation is not None:
            worst_conv = max(worst_conv, report.max_wconvex_violation)
    return {
        "family_size": len(family),
        "max_lipschitz_ratio": worst_lip,
        "max_wconvex_violation": worst_conv,
        "max_basepoint_value": worst_base,
        "seed": ctx.seed,
        "passed": worst_lip <= 1.0 + 1e-7 and worst_conv <= 1e-7 and worst_base <= 1e-9,
    }


def _strong_sequence(space: Space, z: Point, w: Point, horizon: int) -> SequenceSpec:
    def term(n: int) -> Point:
        return z + w * (0.5 ** n)

    return SequenceSpec(space, UserFormula(term, "z + w/2^n"), horizon)


def run_strong_implies_dweak(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    trials = int(params.get("trials", 100))
    rng = np.random.default_rng(ctx.seed)
    space = ctx.space
    # Geometric decay with a deep burn-in keeps the early perturbation dips
    # far below the violation tolerance, so the implication is actually
    # testable at tol on a finite window.
    horizon, burn_in = 256, 64
    failures = 0
    for trial in range(trials):
        if isinstance(space, (FiniteMetricSpace,)) or space.kind == "discrete":
            z, q = space.sample(rng, 2)
            seq = SequenceSpec(space, EventuallyPeriodic((q, q), (z,)), horizon)
        else:
            z, w = space.sample(rng, 2)
            if isinstance(space, LpBall):
                z = z * 0.5
            seq = _strong_sequence(space, z, w * 0.25, horizon)
        strong = conv.test_strong(seq, z, n_terms=horizon, tol=1e-9)
        if not strong.is_consistent:
            failures += 1
            continue
        family = ctx.family((z,))
        weak = conv.test_dweak(seq, z, family, n_terms=horizon, burn_in=burn_in,
                               tol=ctx.tol)
        if not weak.is_consistent:
            failures += 1
    return {"trials": trials, "failures": failures, "seed": ctx.seed,
            "passed": failures == 0}


def run_basepoint_invariance(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    seq = ctx.require_sequence()
    trials = int(params.get("trials", 20))
    rng = np.random.default_rng(ctx.seed)
    space = ctx.space
    candidates = space.sample(rng, max(2, trials // 4))
    bases = space.sample(rng, 4)
    family = ctx.family(tuple(candidates))
    mismatch = 0
    compared = 0
    for b in bases:
        rebased = FunctionalFamily(space, tuple(rebase(m, b) for m in family),
                                   family.coverage_note + " (rebased)")
        t1 = conv.DweakTester(seq, family, n_terms=ctx.horizon, tol=ctx.tol)
        t2 = conv.DweakTester(seq, rebased, n_terms=ctx.horizon, tol=ctx.tol)
        for z in candidates:
            v1, v2 = t1.verdict(z), t2.verdict(z)
            compared += 1
            if v1.outcome != v2.outcome:
                mismatch += 1
                continue
            if v1.is_violation:
                w2 = v2.witness
                original = w2.inner if hasattr(w2, "inner") else w2
                if original != v1.witness:
                    mismatch += 1
    return {"compared": compared, "mismatches": mismatch, "seed": ctx.seed,
            "passed": mismatch == 0}


def run_shift_scale_identity(ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    trials = int(params.get("trials", 100))
    rng = np.random.default_rng(ctx.seed)
    space = ctx.space
    worst = 0.0
    for _ in range(trials):
        w, v, x = space.sample(rng, 3)
        s = float(rng.uniform(0.3, 2.5)) * float(rng.choice([-1.0, 1.0]))
        t = float(rng.uniform(-2.0, 2.0))
        h = Internal(space, w)
        eta, offset = shift_scale(h, s, t, v)
        lhs = h.value(x * s + v * t)
        rhs = abs(s) * eta.value(x) + offset
        worst = max(worst, abs(lhs - rhs))
    return {"trials": trials, "max_residual": worst, "seed": ctx.seed,
            "passed": worst <= 1e-12}


CHECKS: dict[str, tuple[Callable[[CheckContext, Mapping[str, Any]], dict], str, set[str]]] = {
    "validate_space": (run_validate_space, "metric axioms hold (exhaustive or sampled)",
                       {"n_samples"}),
    "test_dweak": (run_test_dweak, "liminf inequality at z against the family",
                   {"z", "expect", "anchors", "budget", "burn_in", "tol"}),
    "test_delta": (run_test_delta, "asymptotic-center comparison at z over probes",
                   {"z", "probes", "expect", "tol"}),
    "test_strong": (run_test_strong, "tail distances to z below tol",
                    {"z", "expect", "tol"}),
    "liminf_value": (run_liminf_value, "window minimum of a functional equals a constant",
                     {"functional", "expected", "atol"}),
    "lambda_set": (run_lambda_set, "grid membership matches the known limit-set region",
                   {"grid", "grid_size", "boundary_margin", "expect_region", "budget"}),
    "membership_radius": (run_membership_radius, "bisected acceptance radius on a ray",
                          {"direction", "expected", "atol", "budget"}),
    "lambda_convex": (run_lambda_convex, "combinations of accepted limits stay accepted",
                      {"grid", "grid_size", "boundary_margin", "pairs", "budget"}),
    "gliding_hump": (run_gliding_hump, "block-and-sign certificate of l1 mass",
                     {"eps", "expect", "blocks"}),
    "gliding_hump_batch": (run_gliding_hump_batch,
                           "block certificates on seeded sliding sequences",
                           {"count", "bound"}),
    "uniform_convexity": (run_uniform_convexity, "norm-convergence dichotomy branch",
                          {"xhat", "expect_branch", "tol"}),
    "discrete_classify": (run_discrete_classify, "four-way discrete classification",
                          {"expect_case", "cross_check"}),
    "ball_closedness": (run_ball_closedness, "candidates outside a ball are refuted",
                        {"q", "r", "z"}),
    "liminf_distance_bound": (run_liminf_distance_bound,
                              "d(z, w) below tail distances per probe", {"z", "probes"}),
    "linear_combination": (run_linear_combination,
                           "combination of accepted + strong sequences",
                           {"u", "v", "s", "t", "sequence_y", "strong_tol", "tol",
                            "budget", "expect"}),
    "oracle_agreement": (run_oracle_agreement,
                         "window tester equals the exact periodic oracle",
                         {"n_spaces", "max_size"}),
    "busemann_cross_validate": (run_busemann_cross_validate,
                                "closed-form vs numeric directional values",
                                {"p", "trials", "bound"}),
    "busemann_identities": (run_busemann_identities,
                            "directional values, separation, subadditivity",
                            {"p_values", "trials"}),
    "compactification_limit": (run_compactification_limit,
                               "diagonal limits of internals along the sequence",
                               {"target", "grid_size", "tol"}),
    "snowflake_limit": (run_snowflake_limit, "escape limits on the snowflake line",
                        {"grid", "expect", "anchor", "tol"}),
    "norm_via_busemann": (run_norm_via_busemann, "norm as a supremum of directional values",
                          {"v", "n_directions", "atol"}),
    "hull": (run_hull, "intersection of enclosing balls on a finite space",
             {"points", "expect"}),
    "finite_compactification": (run_finite_compactification,
                                "complete functional table of a finite space", set()),
    "w_combine_takahashi": (run_w_combine_takahashi,
                            "combination map satisfies the convexity inequality",
                            {"samples"}),
    "functional_properties": (run_functional_properties,
                              "family members are Lipschitz, convex, vanish at base",
                              {"budget", "samples"}),
    "strong_implies_dweak": (run_strong_implies_dweak,
                             "strong acceptance implies weak acceptance",
                             {"trials"}),
    "basepoint_invariance": (run_basepoint_invariance,
                             "verdicts survive rebasing the family",
                             {"trials"}),
    "shift_scale_identity": (run_shift_scale_identity,
                             "affine rewrite of internals is exact",
                             {"trials"}),
}


def check_names() -> list[str]:
    return sorted(CHECKS)


def describe_check(name: str) -> str:
    return CHECKS[name][1]


def allowed_params(name: str) -> set[str]:
    return CHECKS[name][2]


def execute_check(name: str, ctx: CheckContext, params: Mapping[str, Any]) -> dict:
    if name not in CHECKS:
        raise ExecutionError(f"unknown check {name!r}")
    runner, _, _ = CHECKS[name]
    return runner(ctx, params)
