"""Built-in reproduction suite: the documented catalog results as scenarios.

Each scenario bundles the checks that pin a known outcome: the l2-ball limit
set and its boundary radius, the l1 divergence between the asymptotic-center
and functional tests, block certificates, directional-functional identities,
oracle agreement on finite spaces, the discrete classification, and the
escape limits of internals. `reproduce_catalog` runs them all and merges the
results into one report.
"""
from __future__ import annotations

import math

from .points import Atom, PLFunction, ScalarPoint, SparseVector, unit
from .scenario import CheckRequest, Report, Scenario, run_checks
from .sequences import (
    Alternating,
    CoordinateBlowup,
    ExplicitList,
    FreshAtoms,
    RecurrentWithFresh,
    ScalarRamp,
    SequenceSpec,
)
from .serialize import point_to_dict, sequence_to_dict
from .spaces import (
    CountableSubsetOfL1,
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
    SupNormSpace,
)

L2_BALL_RADIUS_HALF = math.sqrt(5.0) / 2.0 - 1.0  # boundary of the theta=1/2 limit set


def _seq(space, generator, horizon):
    return SequenceSpec(space, generator, horizon)


def catalog_scenarios() -> list[Scenario]:
    e1 = point_to_dict(unit(1))
    zero = point_to_dict(SparseVector())

    scenarios: list[Scenario] = []

    # Limit set of theta * e_n in the l2 unit ball.
    ball2 = LpBall(2.0, 1.0)
    scenarios.append(Scenario(
        space=ball2,
        sequence=_seq(ball2, CoordinateBlowup(0.5), 256),
        horizon=256, family_budget=240,
        checks=(
            CheckRequest("l2_ball_lambda_grid", "lambda_set", {
                "grid_size": 100,
                "expect_region": {"kind": "norm_ball",
                                  "threshold": L2_BALL_RADIUS_HALF, "atol": 1e-9},
            }),
            CheckRequest("l2_ball_boundary_radius", "membership_radius", {
                "direction": e1, "expected": L2_BALL_RADIUS_HALF, "atol": 1e-6,
            }),
            CheckRequest("l2_ball_lambda_convex", "lambda_convex", {
                "grid_size": 40, "pairs": 40,
            }),
            CheckRequest("l2_ball_reject_half_e1", "test_dweak", {
                "z": point_to_dict(unit(1, 0.5)), "expect": "violation",
            }),
        ),
    ))

    # Limit set of e_n / 2 in the l1 unit ball, internals only.
    ball1 = LpBall(1.0, 1.0)
    scenarios.append(Scenario(
        space=ball1,
        sequence=_seq(ball1, CoordinateBlowup(0.5), 256),
        horizon=256, family_budget=80,
        checks=(
            CheckRequest("l1_ball_lambda_grid", "lambda_set", {
                "grid_size": 100,
                "expect_region": {"kind": "norm_ball", "threshold": 0.5, "atol": 1e-12},
            }),
            CheckRequest("l1_ball_internal_tail", "liminf_value", {
                "functional": {"kind": "internal",
                               "anchor": point_to_dict(SparseVector({1: 0.25, 3: -0.25}))},
                "expected": 0.5, "atol": 1e-9,
            }),
        ),
    ))

    # Moving units in l1: accepted by the asymptotic-center test at 0,
    # refuted by a signed linear functional.
    l1 = LpSpace(1.0)
    scenarios.append(Scenario(
        space=l1,
        sequence=_seq(l1, CoordinateBlowup(1.0), 400),
        horizon=400,
        checks=(
            CheckRequest("l1_delta_at_zero", "test_delta",
                         {"z": zero, "expect": "consistent"}),
            CheckRequest("l1_dweak_at_zero", "test_dweak",
                         {"z": zero, "expect": "violation"}),
            CheckRequest("l1_strong_at_zero", "test_strong",
                         {"z": zero, "expect": "violation"}),
            CheckRequest("l1_gliding_hump_units", "gliding_hump", {"eps": 1.0}),
            CheckRequest("l1_gliding_hump_batch", "gliding_hump_batch",
                         {"count": 10, "bound": 2.0}),
            CheckRequest("l1_ball_closedness", "ball_closedness",
                         {"q": zero, "r": 1.0, "z": point_to_dict(unit(1, 3.0))}),
        ),
    ))

    # Directional-functional identities across p.
    scenarios.append(Scenario(
        space=LpSpace(2.0),
        checks=(
            CheckRequest("busemann_identities", "busemann_identities",
                         {"p_values": [1.0, 1.5, 2.0, 3.0], "trials": 25}),
            CheckRequest("busemann_cross_p1", "busemann_cross_validate",
                         {"p": 1.0, "trials": 100, "bound": 1e-6}),
            CheckRequest("busemann_cross_p15", "busemann_cross_validate",
                         {"p": 1.5, "trials": 100, "bound": 1e-6}),
            CheckRequest("busemann_cross_p2", "busemann_cross_validate",
                         {"p": 2.0, "trials": 100, "bound": 1e-6}),
            CheckRequest("busemann_cross_p3", "busemann_cross_validate",
                         {"p": 3.0, "trials": 100, "bound": 1e-6}),
        ),
    ))

    # Exact oracle agreement on random finite spaces, plus hulls.
    scenarios.append(Scenario(
        space=FiniteMetricSpace.discrete(5),
        checks=(
            CheckRequest("oracle_agreement", "oracle_agreement",
                         {"n_spaces": 100, "max_size": 8}),
            CheckRequest("finite_table_discrete5", "finite_compactification", {}),
            CheckRequest("hull_singleton", "hull", {"points": [2], "expect": [2]}),
            CheckRequest("hull_pair_whole_space", "hull",
                         {"points": [1, 2], "expect": [0, 1, 2, 3, 4]}),
        ),
    ))
    scenarios.append(Scenario(
        space=FiniteMetricSpace.line(3),
        checks=(
            CheckRequest("hull_line_segment", "hull",
                         {"points": [0, 2], "expect": [0, 1, 2]}),
        ),
    ))

    # Discrete classification, one scenario per case.
    disc = DiscreteSpace()
    scenarios.append(Scenario(
        space=disc,
        sequence=_seq(disc, ExplicitList((Atom(3), Atom(1), Atom(2)), tail="hold"), 64),
        horizon=64,
        checks=(CheckRequest("discrete_eventually_constant", "discrete_classify",
                             {"expect_case": "eventually_constant"}),),
    ))
    scenarios.append(Scenario(
        space=disc,
        sequence=_seq(disc, Alternating(Atom(1), Atom(2)), 64),
        horizon=64,
        checks=(CheckRequest("discrete_two_accumulation", "discrete_classify",
                             {"expect_case": "two_accumulation"}),),
    ))
    scenarios.append(Scenario(
        space=disc,
        sequence=_seq(disc, RecurrentWithFresh(Atom(1), 100), 64),
        horizon=64,
        checks=(CheckRequest("discrete_one_infinite", "discrete_classify",
                             {"expect_case": "one_infinite"}),),
    ))
    scenarios.append(Scenario(
        space=disc,
        sequence=_seq(disc, FreshAtoms(20), 64),
        horizon=64,
        checks=(CheckRequest("discrete_all_finite", "discrete_classify",
                             {"expect_case": "all_finite"}),),
    ))
    scenarios.append(Scenario(
        space=disc,
        sequence=_seq(disc, Alternating(Atom(1), Atom(2)), 64),
        horizon=64,
        checks=(CheckRequest("alternating_no_limit", "test_dweak",
                             {"z": point_to_dict(Atom(1)), "expect": "violation"}),),
    ))

    # Limits of internals along escaping anchors.
    scenarios.append(Scenario(
        space=l1,
        sequence=_seq(l1, CoordinateBlowup(None), 2 ** 60),
        horizon=2 ** 60,
        checks=(CheckRequest("l1_internal_limit_is_internal_zero",
                             "compactification_limit",
                             {"target": "internal_basepoint", "grid_size": 20,
                              "tol": 1e-6}),),
    ))
    scenarios.append(Scenario(
        space=LpSpace(2.0),
        sequence=_seq(LpSpace(2.0), CoordinateBlowup(None), 2 ** 60),
        horizon=2 ** 60,
        checks=(CheckRequest("l2_internal_limit_is_zero", "compactification_limit",
                             {"target": "zero", "grid_size": 20, "tol": 1e-6}),),
    ))
    snow = SnowflakeLine(0.5)
    snow_grid = [point_to_dict(ScalarPoint(v)) for v in (0.0, 1.0, 2.0)]
    scenarios.append(Scenario(
        space=snow,
        sequence=_seq(snow, ScalarRamp(2.0, 1), 2 ** 30),
        horizon=2 ** 30,
        checks=(CheckRequest("snowflake_escape_up", "snowflake_limit",
                             {"grid": snow_grid, "expect": "zero", "tol": 1e-6}),),
    ))
    scenarios.append(Scenario(
        space=snow,
        sequence=_seq(snow, ScalarRamp(2.0, -1), 2 ** 30),
        horizon=2 ** 30,
        checks=(CheckRequest("snowflake_escape_down", "snowflake_limit",
                             {"grid": snow_grid, "expect": "zero", "tol": 1e-6}),),
    ))
    scenarios.append(Scenario(
        space=snow,
        sequence=_seq(snow, ExplicitList((ScalarPoint(1.0),), tail="hold"), 64),
        horizon=64,
        checks=(CheckRequest("snowflake_bounded_anchor", "snowflake_limit",
                             {"grid": snow_grid, "expect": "internal",
                              "anchor": point_to_dict(ScalarPoint(1.0)), "tol": 1e-6}),),
    ))

    # Countable l1 subsets where every point is a limit.
    units = CountableSubsetOfL1.zero_and_units()
    units_grid = [point_to_dict(SparseVector())] + [point_to_dict(unit(j))
                                                    for j in (1, 2, 5)]
    scenarios.append(Scenario(
        space=units,
        sequence=_seq(units, CoordinateBlowup(1.0), 256),
        horizon=256,
        checks=(CheckRequest("countable_units_all_points", "lambda_set",
                             {"grid": units_grid,
                              "expect_region": {"kind": "all_points"}}),),
    ))
    scaled = CountableSubsetOfL1.zero_and_scaled_units()
    scaled_grid = [point_to_dict(SparseVector())] + [point_to_dict(unit(j, float(j)))
                                                     for j in (1, 2, 5)]
    scenarios.append(Scenario(
        space=scaled,
        sequence=_seq(scaled, CoordinateBlowup(None), 256),
        horizon=256,
        checks=(CheckRequest("countable_scaled_unbounded_all_points", "lambda_set",
                             {"grid": scaled_grid,
                              "expect_region": {"kind": "all_points"}}),),
    ))

    # Norm-convergence dichotomy on the l2 ball.
    scenarios.append(Scenario(
        space=ball2,
        sequence=_seq(ball2, CoordinateBlowup(1.0), 256),
        horizon=256,
        checks=(CheckRequest("uniform_convexity_violation_branch", "uniform_convexity",
                             {"xhat": e1, "expect_branch": "internal_violation"}),),
    ))
    scenarios.append(Scenario(
        space=ball2,
        sequence=_seq(ball2, Alternating(unit(1), unit(1, -1.0)), 256),
        horizon=256,
        checks=(CheckRequest("uniform_convexity_alternating_branch", "uniform_convexity",
                             {"xhat": e1, "expect_branch": "internal_violation"}),),
    ))
    scenarios.append(Scenario(
        space=ball2,
        sequence=_seq(ball2, ExplicitList((unit(1),), tail="hold"), 256),
        horizon=256,
        checks=(CheckRequest("uniform_convexity_strong_branch", "uniform_convexity",
                             {"xhat": e1, "expect_branch": "strong"}),),
    ))

    # Distance bound at an accepted limit.
    scenarios.append(Scenario(
        space=ball2,
        sequence=_seq(ball2, CoordinateBlowup(0.5), 256),
        horizon=256, family_budget=120,
        checks=(
            CheckRequest("l2_ball_accept_zero", "test_dweak",
                         {"z": zero, "expect": "consistent"}),
            CheckRequest("liminf_distance_bound", "liminf_distance_bound",
                         {"z": zero,
                          "probes": [zero, point_to_dict(unit(1, 0.5)),
                                     point_to_dict(unit(2, -0.3))]}),
        ),
    ))

    # Structure of the testers on whole lp spaces.
    l2 = LpSpace(2.0)
    scenarios.append(Scenario(
        space=l2,
        sequence=_seq(l2, CoordinateBlowup(1.0), 256),
        horizon=256, family_budget=32,
        checks=(
            CheckRequest("l2_space_validation", "validate_space", {}),
            CheckRequest("l2_combination_inequality", "w_combine_takahashi", {}),
            CheckRequest("l2_family_properties", "functional_properties",
                         {"samples": 80}),
            CheckRequest("l2_strong_implies_dweak", "strong_implies_dweak",
                         {"trials": 100}),
            CheckRequest("l2_basepoint_invariance", "basepoint_invariance",
                         {"trials": 16}),
            CheckRequest("l2_shift_scale_identity", "shift_scale_identity",
                         {"trials": 100}),
            CheckRequest("l2_norm_via_directional", "norm_via_busemann",
                         {"v": point_to_dict(unit(1, 3.0))}),
            CheckRequest("l2_linear_combination", "linear_combination", {
                "u": zero, "v": point_to_dict(unit(3, 0.5)), "s": 2.0, "t": 3.0,
                "sequence_y": sequence_to_dict(
                    _seq(l2, ExplicitList((unit(3, 0.5),), tail="hold"), 256)),
            }),
        ),
    ))
    scenarios.append(Scenario(
        space=l1,
        sequence=_seq(l1, CoordinateBlowup(1.0), 256),
        horizon=256, family_budget=32,
        checks=(
            CheckRequest("l1_space_validation", "validate_space", {}),
            CheckRequest("l1_family_properties", "functional_properties",
                         {"samples": 80}),
            CheckRequest("l1_strong_implies_dweak", "strong_implies_dweak",
                         {"trials": 100}),
            CheckRequest("l1_basepoint_invariance", "basepoint_invariance",
                         {"trials": 16}),
        ),
    ))

    # Sup-norm space over piecewise-linear functions.
    sup = SupNormSpace()
    hat = PLFunction((0.0, 0.5, 1.0), (0.0, 1.0, 0.0))
    scenarios.append(Scenario(
        space=sup,
        sequence=_seq(sup, ExplicitList((hat,), tail="hold"), 128),
        horizon=128, family_budget=48,
        checks=(
            CheckRequest("sup_norm_validation", "validate_space", {}),
            CheckRequest("sup_norm_family_properties", "functional_properties",
                         {"samples": 60}),
            CheckRequest("sup_norm_strong_implies_dweak", "strong_implies_dweak",
                         {"trials": 30}),
            CheckRequest("sup_norm_via_directional", "norm_via_busemann",
                         {"v": point_to_dict(hat), "n_directions": 8, "atol": 1e-6}),
        ),
    ))

    # Snowflake line sanity.
    scenarios.append(Scenario(
        space=snow,
        checks=(
            CheckRequest("snowflake_validation", "validate_space", {}),
            CheckRequest("snowflake_family_properties", "functional_properties",
                         {"samples": 60}),
        ),
    ))

    return scenarios


def reproduce_catalog(filter_id: str | None = None, seed: int | None = None,
                      horizon: int | None = None, tol: float | None = None) -> Report:
    """Run the built-in suite; overrides apply to every scenario."""
    results = []
    for scenario in catalog_scenarios():
        if horizon is not None and scenario.sequence is not None:
            # Escape-limit scenarios need their dyadic horizons; only shrink
            # ordinary window scenarios.
            if scenario.horizon <= 4096:
                scenario = scenario.with_overrides(seed=seed, horizon=horizon, tol=tol)
            else:
                scenario = scenario.with_overrides(seed=seed, tol=tol)
        else:
            scenario = scenario.with_overrides(seed=seed, tol=tol)
        report = run_checks(scenario, filter_id=filter_id)
        results.extend(report.results)
    return Report(tuple(results))
