"""Phase sequences, row-major phase arrays, and their axis-sum projections.

A phase sequence of order n stores exponents of w = exp(2*pi*1j/n); the
complex entries themselves are never materialised for exact work.  An R x C
array flattens row by row: entry (i, j) is sequence element i*C + j.

Summing an array across one axis yields a projection sequence whose entries
are cyclotomic integers (sums of roots of unity are generally not unimodular),
so projections store exact `CyclotomicInt` values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CyclotomicInt

__all__ = [
    "PhaseSequence",
    "PhaseArray",
    "ProjectionSequence",
    "flatten",
    "unflatten",
    "column_sum",
    "row_sum",
]


@dataclass(frozen=True)
class PhaseSequence:
    """Exponent vector modulo `order`; negative inputs are normalised, so a
    sequence has a single canonical form."""

    order: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"alphabet order must be positive, got {self.order}")
        exps = tuple(e % self.order for e in self.exponents)
        if len(exps) < 1:
            raise ValueError("sequence must have at least one element")
        object.__setattr__(self, "exponents", exps)

    def __len__(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class PhaseArray:
    """Row-major R x C array of phase exponents modulo `order`."""

    order: int
    rows: int
    cols: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"alphabet order must be positive, got {self.order}")
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"dimensions must be positive, got {self.rows}x{self.cols}")
        exps = tuple(e % self.order for e in self.exponents)
        if len(exps) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} array needs {self.rows * self.cols} "
                f"entries, got {len(exps)}"
            )
        object.__setattr__(self, "exponents", exps)

    def entry(self, i: int, j: int) -> int:
        return self.exponents[i * self.cols + j]

    def column(self, j: int) -> tuple[int, ...]:
        return self.exponents[j :: self.cols]

    def row(self, i: int) -> tuple[int, ...]:
        return self.exponents[i * self.cols : (i + 1) * self.cols]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]


@dataclass(frozen=True)
class ProjectionSequence:
    """Axis sums of a phase array: exact cyclotomic values, one per row
    (column-sum projection) or one per column (row-sum projection)."""

    order: int
    values: tuple[CyclotomicInt, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("projection must have at least one value")
        for v in self.values:
            if v.order != self.order:
                raise ValueError(f"value order {v.order} != projection order {self.order}")

    def __len__(self) -> int:
        return len(self.values)


def flatten(array: PhaseArray) -> PhaseSequence:
    """Row-major flattening: sequence element i*C + j is array entry (i, j)."""
    return PhaseSequence(array.order, array.exponents)


def unflatten(seq: PhaseSequence, rows: int, cols: int) -> PhaseArray:
    """Inverse of `flatten`; rows*cols must equal the sequence length."""
    if rows * cols != len(seq):
        raise ValueError(
            f"cannot shape length-{len(seq)} sequence as {rows}x{cols}"
        )
    return PhaseArray(seq.order, rows, cols, seq.exponents)


def _sum_of_roots(order: int, exponents) -> CyclotomicInt:
    coeffs = [0] * order
    for e in exponents:
        coeffs[e] += 1
    return CyclotomicInt(order, tuple(coeffs))


def column_sum(array: PhaseArray) -> ProjectionSequence:
    """Sum each row's entries across the columns: a length-R projection
    (value i is the exact sum of row i as roots of unity)."""
    values = tuple(
        _sum_of_roots(array.order, array.row(i)) for i in range(array.rows)
    )
    return ProjectionSequence(array.order, values)


def row_sum(array: PhaseArray) -> ProjectionSequence:
    """Sum each column's entries across the rows: a length-C projection."""
    values = tuple(
        _sum_of_roots(array.order, array.column(j)) for j in range(array.cols)
    )
    return ProjectionSequence(array.order, values)
