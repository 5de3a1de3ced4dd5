"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps values in lowest
terms with a positive denominator. Elimination itself runs on integer rows in
:mod:`operadkit.kernels` (compiled when available).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import LengthMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def integer_row(values: Iterable[Fraction]) -> list[int]:
    """Scale a rational vector by the lcm of its denominators."""
    values = list(values)
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in values]


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major matrix of rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise LengthMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(to_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise LengthMismatch(f"row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    int_rows = [integer_row(r) for r in rows]
    reduced, pivots = kernels.rref_int(int_rows, ncols)
    out = []
    for i, r in enumerate(reduced):
        if i < len(pivots):
            p = r[pivots[i]]
            out.append([Fraction(x, p) for x in r])
        else:
            out.append([ZERO] * ncols)
    return out, pivots


def rref(m: RatMatrix) -> RatMatrix:
    """Reduced row echelon form; zero rows are moved to the bottom."""
    if m.rows == 0 or m.cols == 0:
        return m
    rows, _ = _rref_rows(m.to_rows(), m.cols)
    return RatMatrix.from_rows(rows, m.cols)


def pivot_columns(m: RatMatrix) -> list[int]:
    if m.rows == 0 or m.cols == 0:
        return []
    return _rref_rows(m.to_rows(), m.cols)[1]


def rank(m: RatMatrix) -> int:
    return len(pivot_columns(m))


def _vectors_rank(vectors: Sequence[Sequence], length: int) -> int:
    if not vectors or length == 0:
        return 0
    rows = [[to_rational(x) for x in v] for v in vectors]
    return len(_rref_rows(rows, length)[1])


def in_span(v: Sequence, basis: Sequence[Sequence]) -> bool:
    """True iff ``v`` is a rational linear combination of ``basis``."""
    n = len(v)
    for b in basis:
        if len(b) != n:
            raise LengthMismatch(f"vector of length {len(b)} in a span of length-{n} vectors")
    basis = list(basis)
    return _vectors_rank(basis, n) == _vectors_rank(basis + [v], n)


def inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square matrix; raises ZeroDivisionError when singular."""
    if m.rows != m.cols:
        raise LengthMismatch(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return RatMatrix.from_rows([r[n:] for r in rows], n)


class Echelon:
    """Incrementally grown row space of sparse rational vectors.

    Rows are stored fraction-free as primitive integer rows keyed by their
    leading (smallest) column, so the echelon basis is determined by column
    order. ``reduce`` returns the unique representative of ``v`` modulo the
    row space that vanishes on every pivot column.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _as_int_row(v: Mapping[int, Fraction]) -> tuple[dict[int, int], int]:
        den = 1
        for x in v.values():
            den = lcm(den, Fraction(x).denominator)
        return {c: int(Fraction(x) * den) for c, x in v.items() if x}, den

    def add(self, v: Mapping[int, Fraction]) -> bool:
        """Insert a sparse vector; True iff it enlarged the row space."""
        row, _ = self._as_int_row(v)
        if not row:
            return False
        return kernels.echelon_insert(self.pivots, row)

    def reduce(self, v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        row, den = self._as_int_row(v)
        if not row:
            return {}
        reduced, scale = kernels.reduce_full(self.pivots, row)
        d = den * scale
        return {c: Fraction(x, d) for c, x in sorted(reduced.items())}

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        return not self.reduce(v)

    def rows(self) -> list[dict[int, Fraction]]:
        """Echelon rows with leading entry 1, in increasing pivot order."""
        out = []
        for c in sorted(self.pivots):
            r = self.pivots[c]
            lead = r[c]
            out.append({k: Fraction(x, lead) for k, x in sorted(r.items())})
        return out

    def to_matrix(self) -> RatMatrix:
        dense = []
        for r in self.rows():
            row = [ZERO] * self.ncols
            for c, x in r.items():
                row[c] = x
            dense.append(row)
        return RatMatrix.from_rows(dense, self.ncols)
