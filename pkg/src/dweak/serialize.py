"""Declarative (de)serialization for points, spaces, sequences, functionals.

Every value maps to a dict with a `kind` tag. Parsing is strict: unknown
keys are rejected, so scenario documents round-trip exactly and certificate
descriptions can be re-evaluated later.
"""
from __future__ import annotations

from typing import Any, Mapping

from .errors import ScenarioParseError
from .functionals import (
    BusemannClosedLp,
    BusemannNumeric,
    HilbertBall,
    Internal,
    L1Linear,
    MetricFunctional,
    PointEvaluation,
    Rebased,
    ShiftScaleView,
    ZeroFunctional,
)
from .points import Atom, PLFunction, Point, ScalarPoint, SparseVector
from .sequences import (
    Alternating,
    CoordinateBlowup,
    EventuallyPeriodic,
    ExplicitList,
    FreshAtoms,
    RecurrentWithFresh,
    ScalarRamp,
    SeededRandomBounded,
    SequenceGenerator,
    SequenceSpec,
    UserFormula,
)
from .spaces import (
    CountableSubsetOfL1,
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
    Space,
    SupNormSpace,
)


def _expect(d: Mapping[str, Any], required: set[str], optional: set[str],
            context: str) -> None:
    if not isinstance(d, Mapping):
        raise ScenarioParseError(f"{context}: expected a mapping, got {type(d).__name__}")
    keys = set(d)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise ScenarioParseError(f"{context}: missing keys {sorted(missing)}")
    if unknown:
        raise ScenarioParseError(f"{context}: unknown keys {sorted(unknown)}")


# -- points -----------------------------------------------------------------

def point_to_dict(p: Point) -> dict:
    if isinstance(p, SparseVector):
        return {"kind": "sparse", "entries": [[k, v] for k, v in p.items()]}
    if isinstance(p, Atom):
        return {"kind": "atom", "id": p.id}
    if isinstance(p, ScalarPoint):
        return {"kind": "scalar", "value": p.value}
    if isinstance(p, PLFunction):
        return {"kind": "plf", "xs": list(p.xs), "ys": list(p.ys)}
    raise TypeError(f"not a point: {p!r}")


def point_from_dict(d: Mapping[str, Any], context: str = "point") -> Point:
    _expect(d, {"kind"}, {"entries", "id", "value", "xs", "ys"}, context)
    kind = d["kind"]
    try:
        if kind == "sparse":
            _expect(d, {"kind", "entries"}, set(), context)
            return SparseVector({int(k): float(v) for k, v in d["entries"]})
        if kind == "atom":
            _expect(d, {"kind", "id"}, set(), context)
            return Atom(int(d["id"]))
        if kind == "scalar":
            _expect(d, {"kind", "value"}, set(), context)
            return ScalarPoint(float(d["value"]))
        if kind == "plf":
            _expect(d, {"kind", "xs", "ys"}, set(), context)
            return PLFunction(d["xs"], d["ys"])
    except (TypeError, ValueError) as e:
        raise ScenarioParseError(f"{context}: {e}") from e
    raise ScenarioParseError(f"{context}: unknown point kind {kind!r}")


# -- spaces -----------------------------------------------------------------

def space_to_dict(space: Space) -> dict:
    base = point_to_dict(space.basepoint)
    if isinstance(space, LpSpace):
        return {"kind": "lp_space", "p": space.p, "basepoint": base}
    if isinstance(space, LpBall):
        return {"kind": "lp_ball", "p": space.p, "radius": space.radius,
                "basepoint": base}
    if isinstance(space, SnowflakeLine):
        return {"kind": "snowflake_line", "alpha": space.alpha, "basepoint": base}
    if isinstance(space, DiscreteSpace):
        return {"kind": "discrete", "basepoint": base}
    if isinstance(space, FiniteMetricSpace):
        return {"kind": "finite", "matrix": [list(row) for row in space.matrix],
                "basepoint": base}
    if isinstance(space, CountableSubsetOfL1):
        return {"kind": "countable_l1", "pattern": space.pattern,
                "points": [point_to_dict(p) for p in space.points],
                "basepoint": base}
    if isinstance(space, SupNormSpace):
        return {"kind": "sup_norm", "basepoint": base}
    raise TypeError(f"not a catalog space: {space!r}")


def space_from_dict(d: Mapping[str, Any], context: str = "space") -> Space:
    _expect(d, {"kind"}, {"p", "radius", "alpha", "matrix", "pattern", "points",
                          "basepoint"}, context)
    kind = d.get("kind")
    try:
        if kind == "lp_space":
            _expect(d, {"kind", "p"}, {"basepoint"}, context)
            return LpSpace(float(d["p"]), _base(d, SparseVector(), context))
        if kind == "lp_ball":
            _expect(d, {"kind", "p", "radius"}, {"basepoint"}, context)
            return LpBall(float(d["p"]), float(d["radius"]),
                          _base(d, SparseVector(), context))
        if kind == "snowflake_line":
            _expect(d, {"kind", "alpha"}, {"basepoint"}, context)
            return SnowflakeLine(float(d["alpha"]), _base(d, ScalarPoint(0.0), context))
        if kind == "discrete":
            _expect(d, {"kind"}, {"basepoint"}, context)
            return DiscreteSpace(_base(d, Atom(0), context))
        if kind == "finite":
            _expect(d, {"kind", "matrix"}, {"basepoint"}, context)
            return FiniteMetricSpace(tuple(tuple(row) for row in d["matrix"]),
                                     _base(d, Atom(0), context))
        if kind == "countable_l1":
            _expect(d, {"kind", "pattern"}, {"points", "basepoint"}, context)
            pts = tuple(point_from_dict(p, context) for p in d.get("points", []))
            return CountableSubsetOfL1(d["pattern"], pts,
                                       _base(d, SparseVector(), context))
        if kind == "sup_norm":
            _expect(d, {"kind"}, {"basepoint"}, context)
            return SupNormSpace(_base(d, PLFunction.zero(), context))
    except ScenarioParseError:
        raise
    except Exception as e:
        raise ScenarioParseError(f"{context}: {e}") from e
    raise ScenarioParseError(f"{context}: unknown space kind {kind!r}")


def _base(d: Mapping[str, Any], default: Point, context: str) -> Point:
    if "basepoint" in d:
        return point_from_dict(d["basepoint"], context + ".basepoint")
    return default


# -- sequences ---------------------------------------------------------------

def generator_to_dict(g: SequenceGenerator) -> dict:
    if isinstance(g, ExplicitList):
        return {"kind": "explicit", "points": [point_to_dict(p) for p in g.points],
                "tail": g.tail}
    if isinstance(g, EventuallyPeriodic):
        return {"kind": "eventually_periodic",
                "preamble": [point_to_dict(p) for p in g.preamble],
                "period": [point_to_dict(p) for p in g.period]}
    if isinstance(g, Alternating):
        return {"kind": "alternating", "first": point_to_dict(g.first),
                "second": point_to_dict(g.second)}
    if isinstance(g, CoordinateBlowup):
        return {"kind": "coordinate_blowup", "coefficient": g.coefficient}
    if isinstance(g, SeededRandomBounded):
        return {"kind": "seeded_random", "seed": g.seed, "bound": g.bound,
                "support_size": g.support_size, "max_index": g.max_index,
                "slide": g.slide}
    if isinstance(g, FreshAtoms):
        return {"kind": "fresh_atoms", "start": g.start, "step": g.step}
    if isinstance(g, RecurrentWithFresh):
        return {"kind": "recurrent_with_fresh", "anchor": point_to_dict(g.anchor),
                "fresh_start": g.fresh_start}
    if isinstance(g, ScalarRamp):
        return {"kind": "scalar_ramp", "power": g.power, "sign": g.sign}
    if isinstance(g, UserFormula):
        raise TypeError("formula generators are in-process only and do not serialize")
    raise TypeError(f"not a generator: {g!r}")


def generator_from_dict(d: Mapping[str, Any], context: str = "generator") -> SequenceGenerator:
    _expect(d, {"kind"}, {"points", "tail", "preamble", "period", "first", "second",
                          "coefficient", "seed", "bound", "support_size", "max_index",
                          "slide", "start", "step", "anchor", "fresh_start", "power",
                          "sign"},
            context)
    kind = d.get("kind")
    try:
        if kind == "explicit":
            _expect(d, {"kind", "points"}, {"tail"}, context)
            pts = tuple(point_from_dict(p, context) for p in d["points"])
            return ExplicitList(pts, d.get("tail", "hold"))
        if kind == "eventually_periodic":
            _expect(d, {"kind", "preamble", "period"}, set(), context)
            pre = tuple(point_from_dict(p, context) for p in d["preamble"])
            per = tuple(point_from_dict(p, context) for p in d["period"])
            return EventuallyPeriodic(pre, per)
        if kind == "alternating":
            _expect(d, {"kind", "first", "second"}, set(), context)
            return Alternating(point_from_dict(d["first"], context),
                               point_from_dict(d["second"], context))
        if kind == "coordinate_blowup":
            _expect(d, {"kind"}, {"coefficient"}, context)
            c = d.get("coefficient")
            return CoordinateBlowup(None if c is None else float(c))
        if kind == "seeded_random":
            _expect(d, {"kind", "seed"}, {"bound", "support_size", "max_index", "slide"},
                    context)
            return SeededRandomBounded(int(d["seed"]), float(d.get("bound", 1.0)),
                                       int(d.get("support_size", 3)),
                                       int(d.get("max_index", 12)),
                                       int(d.get("slide", 0)))
        if kind == "fresh_atoms":
            _expect(d, {"kind"}, {"start", "step"}, context)
            return FreshAtoms(int(d.get("start", 0)), int(d.get("step", 1)))
        if kind == "recurrent_with_fresh":
            _expect(d, {"kind", "anchor", "fresh_start"}, set(), context)
            anchor = point_from_dict(d["anchor"], context)
            return RecurrentWithFresh(anchor, int(d["fresh_start"]))
        if kind == "scalar_ramp":
            _expect(d, {"kind"}, {"power", "sign"}, context)
            return ScalarRamp(float(d.get("power", 2.0)), int(d.get("sign", 1)))
    except ScenarioParseError:
        raise
    except Exception as e:
        raise ScenarioParseError(f"{context}: {e}") from e
    raise ScenarioParseError(f"{context}: unknown generator kind {kind!r}")


def sequence_to_dict(seq: SequenceSpec) -> dict:
    return {"generator": generator_to_dict(seq.generator), "horizon": seq.horizon}


def sequence_from_dict(d: Mapping[str, Any], space: Space,
                       context: str = "sequence") -> SequenceSpec:
    _expect(d, {"generator"}, {"horizon"}, context)
    gen = generator_from_dict(d["generator"], context + ".generator")
    return SequenceSpec(space, gen, int(d.get("horizon", 2000)))


# -- functionals ---------------------------------------------------------------

def functional_to_dict(h: MetricFunctional) -> dict:
    if isinstance(h, Internal):
        return {"kind": "internal", "anchor": point_to_dict(h.anchor)}
    if isinstance(h, ZeroFunctional):
        return {"kind": "zero"}
    if isinstance(h, L1Linear):
        return {"kind": "l1_linear", "signs": [[k, s] for k, s in h.signs],
                "tail_sign": h.tail_sign}
    if isinstance(h, BusemannClosedLp):
        return {"kind": "busemann_lp", "direction": point_to_dict(h.direction)}
    if isinstance(h, BusemannNumeric):
        return {"kind": "busemann_numeric", "direction": point_to_dict(h.direction),
                "tol": h.tol, "max_doublings": h.max_doublings}
    if isinstance(h, HilbertBall):
        return {"kind": "hilbert_ball", "center": point_to_dict(h.center),
                "level": h.level}
    if isinstance(h, PointEvaluation):
        return {"kind": "point_eval", "location": h.location, "sign": h.sign}
    if isinstance(h, Rebased):
        return {"kind": "rebased", "inner": functional_to_dict(h.inner),
                "base": point_to_dict(h.base)}
    if isinstance(h, ShiftScaleView):
        return {"kind": "shift_scale_view", "inner": functional_to_dict(h.inner),
                "scale": h.scale, "shift": h.shift, "vector": point_to_dict(h.vector)}
    raise TypeError(f"not a serializable functional: {h!r}")


def functional_from_dict(d: Mapping[str, Any], space: Space,
                         context: str = "functional") -> MetricFunctional:
    _expect(d, {"kind"}, {"anchor", "signs", "tail_sign", "direction", "tol",
                          "max_doublings", "center", "level", "location", "sign",
                          "inner", "base", "scale", "shift", "vector"}, context)
    kind = d.get("kind")
    try:
        if kind == "internal":
            _expect(d, {"kind", "anchor"}, set(), context)
            return Internal(space, point_from_dict(d["anchor"], context))
        if kind == "zero":
            _expect(d, {"kind"}, set(), context)
            return ZeroFunctional(space)
        if kind == "l1_linear":
            _expect(d, {"kind", "signs"}, {"tail_sign"}, context)
            signs = tuple((int(k), int(s)) for k, s in d["signs"])
            tail = d.get("tail_sign")
            return L1Linear(space, signs, None if tail is None else int(tail))
        if kind == "busemann_lp":
            _expect(d, {"kind", "direction"}, set(), context)
            return BusemannClosedLp(space, point_from_dict(d["direction"], context))
        if kind == "busemann_numeric":
            _expect(d, {"kind", "direction"}, {"tol", "max_doublings"}, context)
            return BusemannNumeric(space, point_from_dict(d["direction"], context),
                                   float(d.get("tol", 1e-9)),
                                   int(d.get("max_doublings", 60)))
        if kind == "hilbert_ball":
            _expect(d, {"kind", "center", "level"}, set(), context)
            return HilbertBall(space, point_from_dict(d["center"], context),
                               float(d["level"]))
        if kind == "point_eval":
            _expect(d, {"kind", "location", "sign"}, set(), context)
            return PointEvaluation(space, float(d["location"]), int(d["sign"]))
        if kind == "rebased":
            _expect(d, {"kind", "inner", "base"}, set(), context)
            return Rebased(space, functional_from_dict(d["inner"], space, context),
                           point_from_dict(d["base"], context))
        if kind == "shift_scale_view":
            _expect(d, {"kind", "inner", "scale", "shift", "vector"}, set(), context)
            inner = functional_from_dict(d["inner"], space, context)
            return ShiftScaleView(space, inner, float(d["scale"]), float(d["shift"]),
                                  point_from_dict(d["vector"], context))
    except ScenarioParseError:
        raise
    except Exception as e:
        raise ScenarioParseError(f"{context}: {e}") from e
    raise ScenarioParseError(f"{context}: unknown functional kind {kind!r}")
