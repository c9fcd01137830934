"""Scenario documents, execution, and reports.

A scenario is a single JSON document naming a space, an optional sequence,
shared defaults (horizon, tolerance, seed, family budget), and a list of
checks. Parsing is strict: unknown fields are rejected everywhere and
malformed documents carry line information. Machine reports are canonical
JSON (sorted keys, no timestamps) so a rerun with the same scenario and seed
is byte-identical.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .checks import CheckContext, allowed_params, check_names, execute_check
from .errors import DweakError, ScenarioParseError
from .sequences import SequenceSpec
from .serialize import _expect, sequence_from_dict, sequence_to_dict, space_from_dict, space_to_dict
from .spaces import Space

DEFAULT_HORIZON = 2000
DEFAULT_TOL = 1e-7
DEFAULT_SEED = 2024
DEFAULT_BUDGET = 64


@dataclass(frozen=True)
class CheckRequest:
    id: str
    check: str
    params: dict

    def to_dict(self) -> dict:
        return {"id": self.id, "check": self.check, **self.params}


@dataclass(frozen=True)
class Scenario:
    space: Space
    sequence: SequenceSpec | None = None
    horizon: int = DEFAULT_HORIZON
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    family_budget: int = DEFAULT_BUDGET
    checks: tuple[CheckRequest, ...] = ()

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"space": space_to_dict(self.space)}
        if self.sequence is not None:
            out["sequence"] = sequence_to_dict(self.sequence)
        out.update({
            "horizon": self.horizon,
            "tol": self.tol,
            "seed": self.seed,
            "family_budget": self.family_budget,
            "checks": [c.to_dict() for c in self.checks],
        })
        return out

    def with_overrides(self, seed: int | None = None, horizon: int | None = None,
                       tol: float | None = None) -> "Scenario":
        return Scenario(
            space=self.space,
            sequence=self.sequence,
            horizon=horizon if horizon is not None else self.horizon,
            tol=tol if tol is not None else self.tol,
            seed=seed if seed is not None else self.seed,
            family_budget=self.family_budget,
            checks=self.checks,
        )


def scenario_from_dict(doc: Mapping[str, Any]) -> Scenario:
    _expect(doc, {"space", "checks"},
            {"sequence", "horizon", "tol", "seed", "family_budget"}, "scenario")
    space = space_from_dict(doc["space"], "scenario.space")
    sequence = None
    if "sequence" in doc:
        sequence = sequence_from_dict(doc["sequence"], space, "scenario.sequence")
    checks: list[CheckRequest] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(doc["checks"]):
        context = f"scenario.checks[{i}]"
        _expect(entry, {"id", "check"}, set(str(k) for k in entry.keys()) - {"id", "check"},
                context)
        name = entry["check"]
        if name not in check_names():
            raise ScenarioParseError(f"{context}: unknown check {name!r}")
        params = {k: v for k, v in entry.items() if k not in ("id", "check")}
        unknown = set(params) - allowed_params(name)
        if unknown:
            raise ScenarioParseError(f"{context}: unknown parameters {sorted(unknown)} "
                                     f"for check {name!r}")
        if entry["id"] in seen_ids:
            raise ScenarioParseError(f"{context}: duplicate check id {entry['id']!r}")
        seen_ids.add(entry["id"])
        checks.append(CheckRequest(str(entry["id"]), name, params))
    try:
        return Scenario(
            space=space,
            sequence=sequence,
            horizon=int(doc.get("horizon", DEFAULT_HORIZON)),
            tol=float(doc.get("tol", DEFAULT_TOL)),
            seed=int(doc.get("seed", DEFAULT_SEED)),
            family_budget=int(doc.get("family_budget", DEFAULT_BUDGET)),
            checks=tuple(checks),
        )
    except (TypeError, ValueError) as e:
        raise ScenarioParseError(f"scenario: {e}") from e


def parse_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    return scenario_from_dict(doc)


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text())


def scenario_to_json(scenario: Scenario) -> str:
    return json.dumps(scenario.to_dict(), sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class CheckResult:
    id: str
    check: str
    passed: bool
    details: dict = field(default_factory=dict)
    error: str | None = None
    runtime: float = 0.0

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"id": self.id, "check": self.check, "passed": self.passed,
                               "details": self.details}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> dict:
        return {
            "total": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "failed": sum(not r.passed for r in self.results),
        }

    def to_json(self) -> str:
        """Canonical machine output; wall-clock times are deliberately left
        out so a rerun is byte-identical."""
        doc = {"results": [r.to_dict() for r in self.results], "summary": self.summary()}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    def human_lines(self) -> list[str]:
        width = max([len(r.id) for r in self.results], default=10)
        lines = [f"{'check id':<{width}}  {'status':<6}  {'time':>8}  note"]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            if r.error is not None:
                note = f"error: {r.error}"
            else:
                keys = [k for k in ("outcome", "branch", "case", "max_residual",
                                    "achieved", "radius", "disagreements")
                        if k in r.details]
                note = ", ".join(f"{k}={r.details[k]}" for k in keys) or r.check
            lines.append(f"{r.id:<{width}}  {status:<6}  {r.runtime:>7.2f}s  {note}")
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return lines


def run_checks(scenario: Scenario, filter_id: str | None = None) -> Report:
    """Execute the scenario's checks in declaration order."""
    ctx = CheckContext(
        space=scenario.space,
        sequence=scenario.sequence,
        horizon=scenario.horizon,
        tol=scenario.tol,
        seed=scenario.seed,
        family_budget=scenario.family_budget,
    )
    results: list[CheckResult] = []
    for request in scenario.checks:
        if filter_id is not None and request.id != filter_id:
            continue
        start = time.perf_counter()
        try:
            details = execute_check(request.check, ctx, request.params)
            result = CheckResult(request.id, request.check, bool(details.get("passed")),
                                 details, runtime=time.perf_counter() - start)
        except ScenarioParseError:
            raise
        except DweakError as e:
            result = CheckResult(request.id, request.check, False,
                                 error=f"{type(e).__name__}: {e}",
                                 runtime=time.perf_counter() - start)
        results.append(result)
    return Report(tuple(results))


def run_scenario(path: str | Path, seed: int | None = None, horizon: int | None = None,
                 tol: float | None = None, filter_id: str | None = None) -> Report:
    scenario = load_scenario(path).with_overrides(seed=seed, horizon=horizon, tol=tol)
    return run_checks(scenario, filter_id=filter_id)
