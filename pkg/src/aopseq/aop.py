"""The array orthogonality property (AOP) and perfection predicates.

An R x C array has the AOP for its own divisor C when

  1. every pair of distinct columns is orthogonal at every cyclic shift, and
  2. the column autocorrelations sum to zero at every off-peak vertical shift.

Both conditions are decided exactly.  Violations come with a witness (a column
pair and shift, or a shift) found by a fixed lexicographic scan, so verdicts
are reproducible and any reported witness re-evaluates to a nonzero
correlation.

The harness checks turn the structural facts this package is built around
into executable implications: AOP forces the flattened sequence to be perfect,
and a perfect array forces both axis projections to be perfect with the
projection peak equal to the array peak R*C.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cyclotomic import CyclotomicInt, counts_is_zero, cyc_conj, cyc_mul
from .correlation import autocorrelate, autocorrelate_2d, projection_autocorrelate
from .seqmodel import (
    PhaseArray,
    PhaseSequence,
    ProjectionSequence,
    column_sum,
    flatten,
    row_sum,
)

__all__ = [
    "AopVerdict",
    "check_condition_1",
    "check_condition_2",
    "check_aop",
    "is_perfect_sequence",
    "is_perfect_array",
    "is_perfect_projection",
    "is_degenerate_projection",
    "aop_implies_perfect",
    "perfect_array_projection_check",
]

CONDITION_1 = "condition-1"
CONDITION_2 = "condition-2"


@dataclass(frozen=True)
class AopVerdict:
    """Outcome of an AOP check.

    `witness` is (j0, j1, tau) for a condition-1 violation and (tau,) for a
    condition-2 violation; it is the first violation in lexicographic scan
    order and re-evaluates to a nonzero exact correlation.
    """

    holds: bool
    failing_condition: Optional[str]
    witness: Optional[tuple[int, ...]]
    divisor: int

    def __post_init__(self) -> None:
        if self.holds != (self.failing_condition is None):
            raise ValueError("verdict holds iff no failing condition is recorded")


def _cross_zero_at(u: tuple[int, ...], v: tuple[int, ...], tau: int, order: int) -> bool:
    # Exact zero test of sum_i w^(u_i - v_{i+tau}) without object wrappers.
    R = len(u)
    counts = [0] * order
    for i in range(R):
        counts[(u[i] - v[(i + tau) % R]) % order] += 1
    return counts_is_zero(counts, order)


def _condition_1_witness(
    cols: list[tuple[int, ...]], rows: int, order: int
) -> Optional[tuple[int, int, int]]:
    C = len(cols)
    for j0 in range(C):
        for j1 in range(C):
            if j0 == j1:
                continue
            u, v = cols[j0], cols[j1]
            for tau in range(rows):
                if not _cross_zero_at(u, v, tau, order):
                    return (j0, j1, tau)
    return None


def _condition_2_witness(
    cols: list[tuple[int, ...]], rows: int, order: int
) -> Optional[tuple[int]]:
    for tau in range(1, rows):
        counts = [0] * order
        for col in cols:
            for i in range(rows):
                counts[(col[i] - col[(i + tau) % rows]) % order] += 1
        if not counts_is_zero(counts, order):
            return (tau,)
    return None


def check_condition_1(array: PhaseArray) -> AopVerdict:
    """Mutual orthogonality of all distinct column pairs at all shifts.

    Scans (j0, j1, tau) lexicographically; a single column holds vacuously.
    """
    witness = _condition_1_witness(array.columns(), array.rows, array.order)
    if witness is None:
        return AopVerdict(True, None, None, array.cols)
    return AopVerdict(False, CONDITION_1, witness, array.cols)


def check_condition_2(array: PhaseArray) -> AopVerdict:
    """Columns form a complementary set: their autocorrelations sum to zero
    at every vertical shift not divisible by R (vacuous for R = 1)."""
    witness = _condition_2_witness(array.columns(), array.rows, array.order)
    if witness is None:
        return AopVerdict(True, None, None, array.cols)
    return AopVerdict(False, CONDITION_2, witness, array.cols)


def check_aop(array: PhaseArray) -> AopVerdict:
    """Both AOP conditions, condition 1 first."""
    verdict = check_condition_1(array)
    if not verdict.holds:
        return verdict
    return check_condition_2(array)


def _aop_holds_columns(cols: list[tuple[int, ...]], rows: int, order: int) -> bool:
    # Verdict-only fast path shared with the search engine.
    if _condition_1_witness(cols, rows, order) is not None:
        return False
    return _condition_2_witness(cols, rows, order) is None


def is_perfect_sequence(seq: PhaseSequence) -> bool:
    """All off-peak exact autocorrelations are zero."""
    exps = seq.exponents
    L = len(exps)
    n = seq.order
    for tau in range(1, L):
        counts = [0] * n
        for i in range(L):
            counts[(exps[i] - exps[(i + tau) % L]) % n] += 1
        if not counts_is_zero(counts, n):
            return False
    return True


def is_perfect_array(array: PhaseArray) -> bool:
    """All off-peak entries of the 2D autocorrelation are zero."""
    profile = autocorrelate_2d(array)
    return profile.is_perfect()


def is_perfect_projection(proj: ProjectionSequence) -> bool:
    """All off-peak autocorrelations of the cyclotomic values are zero.

    An identically-zero projection passes with peak 0; use
    `is_degenerate_projection` to tell that case apart from ordinary
    perfection.
    """
    vals = proj.values
    L = len(vals)
    n = proj.order
    for tau in range(1, L):
        acc = [0] * n
        for i in range(L):
            prod = cyc_mul(vals[i], cyc_conj(vals[(i + tau) % L]))
            for e in range(n):
                acc[e] += prod.coeffs[e]
        if not counts_is_zero(acc, n):
            return False
    return True


def is_degenerate_projection(proj: ProjectionSequence) -> bool:
    """True when every projection value is zero in the ring (peak energy 0)."""
    return all(v.is_zero() for v in proj.values)


def aop_implies_perfect(array: PhaseArray) -> bool:
    """Implication harness: AOP holding forces the flattened sequence to be
    perfect.  Returns the implication's truth (vacuously True when the AOP
    fails); a False return would refute the implication on this input."""
    if not check_aop(array).holds:
        return True
    return is_perfect_sequence(flatten(array))


def perfect_array_projection_check(array: PhaseArray) -> bool:
    """Implication harness for projection inheritance.

    If the array's 2D autocorrelation is perfect, then both axis projections
    must be perfect, the column-sum peak must equal the array peak R*C
    exactly, and (entries being unimodular) the projection cannot be
    degenerate.  Vacuously True for imperfect arrays.
    """
    profile = autocorrelate_2d(array)
    if not profile.is_perfect():
        return True
    cols_proj = column_sum(array)
    rows_proj = row_sum(array)
    if not (is_perfect_projection(cols_proj) and is_perfect_projection(rows_proj)):
        return False
    if is_degenerate_projection(cols_proj):
        return False
    peak = projection_autocorrelate(cols_proj).peak()
    array_peak = CyclotomicInt.integer(array.order, array.rows * array.cols)
    if not peak.equals(array_peak):
        return False
    if not peak.equals(profile.peak()):
        return False
    return True
