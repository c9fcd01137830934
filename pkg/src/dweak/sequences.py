"""Lazy sequence descriptions over catalog spaces.

A sequence is a generator rule plus a space; terms are materialized on
demand and validated for membership when a tester walks a window. All
generators are deterministic, including the seeded random one, whose n-th
term depends only on (seed, n).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, ClassVar

import numpy as np

from .points import Atom, Point, ScalarPoint, SparseVector
from .spaces import Space


class SequenceGenerator:
    """Rule producing the n-th term of a sequence, 1-based."""

    kind: ClassVar[str] = "generator"

    def point_at(self, n: int) -> Point:
        raise NotImplementedError

    def periodic_structure(self) -> tuple[tuple[Point, ...], tuple[Point, ...]] | None:
        """(preamble, period) when the sequence is eventually periodic."""
        return None

    def params(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ExplicitList(SequenceGenerator):
    """A finite list of terms; `tail` says what happens past the end."""

    points: tuple[Point, ...]
    tail: str = "hold"  # hold | cycle | error
    kind: ClassVar[str] = "explicit"

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("explicit sequence needs at least one term")
        if self.tail not in ("hold", "cycle", "error"):
            raise ValueError(f"unknown tail mode {self.tail!r}")

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        if n <= len(self.points):
            return self.points[n - 1]
        if self.tail == "hold":
            return self.points[-1]
        if self.tail == "cycle":
            return self.points[(n - 1) % len(self.points)]
        raise ValueError(f"term {n} requested past an explicit list of {len(self.points)}")

    def periodic_structure(self):
        if self.tail == "hold":
            return self.points[:-1], (self.points[-1],)
        if self.tail == "cycle":
            return (), self.points
        return None

    def params(self) -> dict:
        return {"points": self.points, "tail": self.tail}


@dataclass(frozen=True)
class EventuallyPeriodic(SequenceGenerator):
    """A preamble followed by a repeating period."""

    preamble: tuple[Point, ...]
    period: tuple[Point, ...]
    kind: ClassVar[str] = "eventually_periodic"

    def __post_init__(self) -> None:
        if not self.period:
            raise ValueError("period must be nonempty")

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        if n <= len(self.preamble):
            return self.preamble[n - 1]
        return self.period[(n - 1 - len(self.preamble)) % len(self.period)]

    def periodic_structure(self):
        return self.preamble, self.period

    def params(self) -> dict:
        return {"preamble": self.preamble, "period": self.period}


@dataclass(frozen=True)
class Alternating(SequenceGenerator):
    """first, second, first, second, ..."""

    first: Point
    second: Point
    kind: ClassVar[str] = "alternating"

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        return self.first if n % 2 == 1 else self.second

    def periodic_structure(self):
        return (), (self.first, self.second)

    def params(self) -> dict:
        return {"first": self.first, "second": self.second}


@dataclass(frozen=True)
class CoordinateBlowup(SequenceGenerator):
    """coefficient(n) * e_n: a moving coordinate direction.

    A fixed `coefficient` gives the bounded escaping sequences; None uses the
    index itself, the canonical unbounded one.
    """

    coefficient: float | None = None
    kind: ClassVar[str] = "coordinate_blowup"

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        c = float(n) if self.coefficient is None else self.coefficient
        return SparseVector({n: c})

    def params(self) -> dict:
        return {"coefficient": self.coefficient}


@dataclass(frozen=True)
class SeededRandomBounded(SequenceGenerator):
    """Seeded sparse terms with l1 norm in [bound/2, bound]; term n depends
    only on (seed, n).

    With `slide` > 0 the support window moves by that many indices per term,
    so every fixed coordinate is eventually left behind.
    """

    seed: int
    bound: float = 1.0
    support_size: int = 3
    max_index: int = 12
    slide: int = 0
    kind: ClassVar[str] = "seeded_random"

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        rng = np.random.default_rng((self.seed, n))
        size = int(rng.integers(1, self.support_size + 1))
        base = 1 + (n - 1) * self.slide
        indices = rng.choice(np.arange(base, base + self.max_index), size=size,
                             replace=False)
        values = rng.uniform(-1.0, 1.0, size=size)
        x = SparseVector({int(i): float(v) for i, v in zip(indices, values)})
        n1 = x.norm(1.0)
        if n1 > 0:
            x = x * (self.bound * float(rng.uniform(0.5, 1.0)) / n1)
        return x

    def params(self) -> dict:
        return {"seed": self.seed, "bound": self.bound,
                "support_size": self.support_size, "max_index": self.max_index,
                "slide": self.slide}


@dataclass(frozen=True)
class FreshAtoms(SequenceGenerator):
    """Pairwise distinct atoms: Atom(start + (n-1) * step)."""

    start: int = 0
    step: int = 1
    kind: ClassVar[str] = "fresh_atoms"

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError("step must be positive")

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        return Atom(self.start + (n - 1) * self.step)

    def params(self) -> dict:
        return {"start": self.start, "step": self.step}


@dataclass(frozen=True)
class RecurrentWithFresh(SequenceGenerator):
    """One recurring atom interleaved with never-repeating fresh atoms."""

    anchor: Atom
    fresh_start: int
    kind: ClassVar[str] = "recurrent_with_fresh"

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        if n % 2 == 1:
            return self.anchor
        return Atom(self.fresh_start + n)

    def params(self) -> dict:
        return {"anchor": self.anchor, "fresh_start": self.fresh_start}


@dataclass(frozen=True)
class ScalarRamp(SequenceGenerator):
    """Scalar points sign * n^power, escaping when power > 0."""

    power: float = 2.0
    sign: int = 1
    kind: ClassVar[str] = "scalar_ramp"

    def point_at(self, n: int) -> Point:
        if n < 1:
            raise ValueError("sequence indices are 1-based")
        return ScalarPoint(self.sign * float(n) ** self.power)

    def params(self) -> dict:
        return {"power": self.power, "sign": self.sign}


@dataclass(frozen=True)
class UserFormula(SequenceGenerator):
    """Closed-form rule supplied as a callable; not serializable."""

    fn: Callable[[int], Point]
    description: str = "formula"
    kind: ClassVar[str] = "formula"

    def point_at(self, n: int) -> Point:
        return self.fn(n)

    def params(self) -> dict:
        return {"description": self.description}


@dataclass(frozen=True)
class SequenceSpec:
    """A sequence in a space, with a default horizon for finite-window tests."""

    space: Space
    generator: SequenceGenerator
    horizon: int = 2000

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError("horizon must be positive")

    def point_at(self, n: int) -> Point:
        return self.generator.point_at(n)

    def terms(self, n_terms: int | None = None, check: bool = True) -> list[Point]:
        """Materialize terms 1..n_terms, membership-checked by default."""
        n_terms = n_terms or self.horizon
        out = [self.generator.point_at(n) for n in range(1, n_terms + 1)]
        if check:
            self.space.require_member(*out)
        return out

    def periodic_structure(self):
        return self.generator.periodic_structure()


def combine_linear(s: float, seq_x: SequenceSpec, t: float,
                   seq_y: SequenceSpec) -> SequenceSpec:
    """The sequence s*x_n + t*y_n, over the common space."""
    if seq_x.space != seq_y.space:
        raise ValueError("sequences live in different spaces")
    gx, gy = seq_x.generator, seq_y.generator

    def term(n: int) -> Point:
        return gx.point_at(n) * s + gy.point_at(n) * t

    label = f"{s}*x_n + {t}*y_n"
    return SequenceSpec(seq_x.space, UserFormula(term, label),
                        min(seq_x.horizon, seq_y.horizon))
