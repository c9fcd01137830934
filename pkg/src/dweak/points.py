"""Point representations for the space catalog.

Four variants cover every catalog space: finite-support sparse vectors for
the sequence spaces, continuous piecewise-linear functions for the sup-norm
space, atoms for discrete and tabulated spaces, and plain scalars for the
snowflake line. Sparse vectors store no explicit zeros, so representation
equality coincides with mathematical equality.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class SparseVector:
    """Finite-support coordinate vector indexed by positive integers."""

    __slots__ = ("_entries", "_map")

    def __init__(self, entries: Mapping[int, float] | Iterable[tuple[int, float]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        kept: dict[int, float] = {}
        for index, value in items:
            index = int(index)
            value = float(value)
            if index < 1:
                raise ValueError(f"sparse indices are positive integers, got {index}")
            if value != 0.0:
                kept[index] = value
        self._entries: tuple[tuple[int, float], ...] = tuple(sorted(kept.items()))
        self._map = dict(self._entries)

    def items(self) -> tuple[tuple[int, float], ...]:
        return self._entries

    def get(self, index: int, default: float = 0.0) -> float:
        return self._map.get(index, default)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self._entries)

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def max_index(self) -> int:
        """Largest populated index, 0 for the zero vector."""
        return self._entries[-1][0] if self._entries else 0

    def as_dict(self) -> dict[int, float]:
        return dict(self._entries)

    def norm(self, p: float) -> float:
        if not self._entries:
            return 0.0
        if p == 1:
            return math.fsum(abs(v) for _, v in self._entries)
        if p == 2:
            return math.sqrt(math.fsum(v * v for _, v in self._entries))
        return math.fsum(abs(v) ** p for _, v in self._entries) ** (1.0 / p)

    def inner(self, other: "SparseVector") -> float:
        if len(self._map) > len(other._map):
            return other.inner(self)
        return math.fsum(v * other._map.get(k, 0.0) for k, v in self._entries)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for k, v in other._entries:
            out[k] = out.get(k, 0.0) + v
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        if not isinstance(other, SparseVector):
            return NotImplemented
        out = dict(self._entries)
        for k, v in other._entries:
            out[k] = out.get(k, 0.0) - v
        return SparseVector(out)

    def __mul__(self, scalar: float) -> "SparseVector":
        scalar = float(scalar)
        return SparseVector({k: v * scalar for k, v in self._entries})

    __rmul__ = __mul__

    def __neg__(self) -> "SparseVector":
        return self * -1.0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseVector) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(("SparseVector", self._entries))

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __repr__(self) -> str:
        return f"SparseVector({dict(self._entries)!r})"


def unit(index: int, value: float = 1.0) -> SparseVector:
    """The coordinate vector `value * e_index`."""
    return SparseVector({index: value})


def sparse(entries: Mapping[int, float]) -> SparseVector:
    return SparseVector(entries)


class PLFunction:
    """Continuous piecewise-linear function on [0, 1].

    Stored by strictly increasing breakpoints starting at 0 and ending at 1.
    The sup norm of a piecewise-linear function (and of a difference of two)
    is attained at a breakpoint of the merged grid, which keeps the sup-norm
    metric exact on this subclass.
    """

    __slots__ = ("xs", "ys")

    def __init__(self, xs: Iterable[float], ys: Iterable[float]):
        xs = tuple(float(t) for t in xs)
        ys = tuple(float(v) for v in ys)
        if len(xs) != len(ys):
            raise ValueError("breakpoints and values must have equal length")
        if len(xs) < 2:
            raise ValueError("need at least the endpoints 0 and 1")
        if xs[0] != 0.0 or xs[-1] != 1.0:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        # drop exactly collinear interior breakpoints so representation
        # equality coincides with equality as functions
        keep = [0]
        for i in range(1, len(xs) - 1):
            x0, x1 = xs[keep[-1]], xs[i + 1]
            y0, y1 = ys[keep[-1]], ys[i + 1]
            interp = y0 + (y1 - y0) * (xs[i] - x0) / (x1 - x0)
            if ys[i] != interp:
                keep.append(i)
        keep.append(len(xs) - 1)
        self.xs = tuple(xs[i] for i in keep)
        self.ys = tuple(ys[i] for i in keep)

    @classmethod
    def zero(cls) -> "PLFunction":
        return cls((0.0, 1.0), (0.0, 0.0))

    @classmethod
    def constant(cls, value: float) -> "PLFunction":
        return cls((0.0, 1.0), (value, value))

    def value_at(self, t: float) -> float:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"argument {t} outside [0, 1]")
        i = bisect_right(self.xs, t)
        if i >= len(self.xs):
            return self.ys[-1]
        if i == 0:
            return self.ys[0]
        x0, x1 = self.xs[i - 1], self.xs[i]
        y0, y1 = self.ys[i - 1], self.ys[i]
        return y0 + (y1 - y0) * (t - x0) / (x1 - x0)

    def merged_grid(self, other: "PLFunction") -> tuple[float, ...]:
        return tuple(sorted(set(self.xs) | set(other.xs)))

    def resample(self, grid: Iterable[float]) -> "PLFunction":
        grid = tuple(grid)
        return PLFunction(grid, tuple(self.value_at(t) for t in grid))

    def sup_norm(self) -> float:
        return max(abs(v) for v in self.ys)

    def sup_distance(self, other: "PLFunction") -> float:
        grid = self.merged_grid(other)
        return max(abs(self.value_at(t) - other.value_at(t)) for t in grid)

    def __add__(self, other: "PLFunction") -> "PLFunction":
        if not isinstance(other, PLFunction):
            return NotImplemented
        grid = self.merged_grid(other)
        return PLFunction(grid, tuple(self.value_at(t) + other.value_at(t) for t in grid))

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        if not isinstance(other, PLFunction):
            return NotImplemented
        grid = self.merged_grid(other)
        return PLFunction(grid, tuple(self.value_at(t) - other.value_at(t) for t in grid))

    def __mul__(self, scalar: float) -> "PLFunction":
        scalar = float(scalar)
        return PLFunction(self.xs, tuple(v * scalar for v in self.ys))

    __rmul__ = __mul__

    def __neg__(self) -> "PLFunction":
        return self * -1.0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PLFunction) and self.xs == other.xs and self.ys == other.ys

    def __hash__(self) -> int:
        return hash(("PLFunction", self.xs, self.ys))

    def __repr__(self) -> str:
        return f"PLFunction(xs={self.xs!r}, ys={self.ys!r})"


@dataclass(frozen=True)
class Atom:
    """A point of a discrete or tabulated space, identified by a nonnegative id."""

    id: int

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError(f"atom ids are nonnegative, got {self.id}")


@dataclass(frozen=True)
class ScalarPoint:
    """A real number seen as a point of the snowflake line."""

    value: float


Point = Union[SparseVector, PLFunction, Atom, ScalarPoint]
