"""Scalar and vector vertex weights.

Decimal inputs are scaled to integers when every value fits a common
denominator of at most 10**6, so sums stay exact.  Otherwise the values are
kept as floats and compared with a relative tolerance of 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

MAX_DENOMINATOR = 10**6
REL_TOL = 1e-9


def _scaled(values: Sequence[Fraction]) -> tuple[tuple, int]:
    denom = 1
    for v in values:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
        if denom > MAX_DENOMINATOR:
            return tuple(float(v) for v in values), 1
    return tuple(int(v * denom) for v in values), denom


def _positive(raw, where: str) -> Fraction:
    try:
        f = Fraction(str(raw)) if not isinstance(raw, Fraction) else raw
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: {raw!r} is not a number") from None
    if f <= 0:
        raise InputError(f"{where}: weight {raw!r} must be strictly positive")
    return f


def less(a, b) -> bool:
    """Strict ``a < b`` with the float tolerance when either side is a float."""
    if isinstance(a, float) or isinstance(b, float):
        return a < b - REL_TOL * max(abs(a), abs(b))
    return a < b


def close(a, b) -> bool:
    return not less(a, b) and not less(b, a)


@dataclass(frozen=True)
class WeightTable:
    """One positive weight per vertex; ``values[i]`` belongs to vertex ``i + 1``.

    ``values`` holds scaled integers (true weight = value / scale) or floats
    with ``scale == 1``.
    """

    values: tuple
    scale: int = 1

    @classmethod
    def from_values(cls, values: Iterable) -> "WeightTable":
        fr = [_positive(v, f"weight of vertex {i}") for i, v in enumerate(values, 1)]
        scaled, scale = _scaled(fr)
        return cls(scaled, scale)

    @classmethod
    def unit(cls, n: int) -> "WeightTable":
        return cls((1,) * n)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int):
        return self.values[v - 1]

    def total(self, vertices: Iterable[int]):
        return sum((self.values[v - 1] for v in vertices), 0)

    def display(self, raw):
        """Convert an accumulated scaled total into the user's units."""
        if self.scale == 1:
            return raw
        f = Fraction(raw, self.scale)
        return f.numerator if f.denominator == 1 else float(f)


@dataclass(frozen=True)
class WeightVectorTable:
    """Per-vertex weight vectors of common length ``mu``."""

    rows: tuple
    scale: int = 1

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "WeightVectorTable":
        rows = [list(r) for r in rows]
        if not rows:
            raise InputError("weight table is empty")
        mu = len(rows[0])
        if mu == 0:
            raise InputError("weight vectors need at least one criterion")
        flat = []
        for i, r in enumerate(rows, 1):
            if len(r) != mu:
                raise InputError(f"weight row {i} has {len(r)} components, expected {mu}")
            flat.extend(_positive(x, f"weight row {i}") for x in r)
        scaled, scale = _scaled(flat)
        return cls(tuple(tuple(scaled[i : i + mu]) for i in range(0, len(scaled), mu)), scale)

    @property
    def mu(self) -> int:
        return len(self.rows[0])

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, c: int) -> WeightTable:
        return WeightTable(tuple(r[c] for r in self.rows), self.scale)

    def total(self, vertices: Iterable[int]) -> tuple:
        acc = [0] * self.mu
        for v in vertices:
            for c, x in enumerate(self.rows[v - 1]):
                acc[c] += x
        return tuple(acc)

    def display(self, vec) -> tuple:
        col = WeightTable((), self.scale)
        return tuple(col.display(x) for x in vec)

    def true_rows(self) -> list[tuple]:
        """Rows in the user's units (undoing the integer scaling)."""
        return [self.display(r) for r in self.rows]
