"""Periodic correlation kernels, exact and floating point.

All shifts are cyclic.  The exact kernels accumulate each product of
unimodular entries as a single exponent difference, so a correlation value is
a vector of term counts interpreted in Z[w]; zero verdicts then reduce to the
cyclotomic zero test.  Float kernels exist as an advisory fast path and never
decide a verdict.

Two-dimensional shifts are ordered (vertical, horizontal) everywhere: the
profile entry for shift pair (v, h) sits at flat index v*C + h.  Sources vary
on this ordering; this package states the convention once and sticks to it.

The direct O(L^2) accumulation is the reference path for every verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

from .cyclotomic import (
    CyclotomicInt,
    counts_is_zero,
    counts_to_complex,
    cyc_add,
    cyc_conj,
    cyc_mul,
    root_table,
)
from .seqmodel import PhaseArray, PhaseSequence, ProjectionSequence, column_sum, flatten

__all__ = [
    "CorrelationProfile",
    "autocorrelate",
    "crosscorrelate",
    "autocorrelate_2d",
    "projection_autocorrelate",
    "autocorrelate_float",
    "crosscorrelate_float",
    "autocorrelate_2d_float",
    "decomposition_check",
    "decomposition_check_all",
    "projection_sum_check",
    "projection_sum_check_all",
    "write_profile_csv",
]


@dataclass(frozen=True)
class CorrelationProfile:
    """Correlation values over one full period of shifts.

    `shape` is (L,) for sequences or (R, C) for arrays; 2D values are stored
    row-major by (v, h).  Exact profiles hold `CyclotomicInt` values; float
    profiles hold complex values, carry `exact=False`, and refuse to answer
    perfection queries.
    """

    order: int
    shape: tuple[int, ...]
    values: tuple
    kind: str  # "auto" | "cross"
    exact: bool = True

    @property
    def length(self) -> int:
        total = 1
        for s in self.shape:
            total *= s
        return total

    def value(self, *shift: int):
        """Value at a shift (one index for 1D, two for 2D), cyclically."""
        if len(shift) != len(self.shape):
            raise ValueError(f"expected {len(self.shape)} shift indices, got {len(shift)}")
        flat = 0
        for s, extent in zip(shift, self.shape):
            flat = flat * extent + (s % extent)
        return self.values[flat]

    def peak(self):
        return self.values[0]

    def is_perfect(self) -> bool:
        """True iff every off-peak value is exactly zero (exact mode only)."""
        if not self.exact:
            raise ValueError("perfection is decided by exact profiles only")
        return all(v.is_zero() for v in self.values[1:])

    def has_hermitian_symmetry(self) -> bool:
        """Exact check that the value at shift t equals the conjugate of the
        value at shift -t (meaningful for autocorrelation profiles)."""
        if not self.exact:
            raise ValueError("hermitian check is defined on exact profiles")
        if len(self.shape) == 1:
            (L,) = self.shape
            return all(
                self.values[t].equals(cyc_conj(self.values[(L - t) % L]))
                for t in range(L)
            )
        R, C = self.shape
        for v in range(R):
            for h in range(C):
                mirror = self.values[((R - v) % R) * C + ((C - h) % C)]
                if not self.values[v * C + h].equals(cyc_conj(mirror)):
                    return False
        return True

    def to_complex(self) -> list[complex]:
        if not self.exact:
            return list(self.values)
        return [counts_to_complex(v.coeffs, self.order) for v in self.values]


def _diff_counts(a: tuple[int, ...], b: tuple[int, ...], tau: int, order: int) -> list[int]:
    # Term counts of sum_i w^(a_i - b_{i+tau}), cyclic in the common length.
    L = len(a)
    counts = [0] * order
    for i in range(L):
        counts[(a[i] - b[(i + tau) % L]) % order] += 1
    return counts


def autocorrelate(seq: PhaseSequence) -> CorrelationProfile:
    """Exact periodic autocorrelation over shifts 0..L-1."""
    return crosscorrelate(seq, seq, _kind="auto")


def crosscorrelate(a: PhaseSequence, b: PhaseSequence, *, _kind: str = "cross") -> CorrelationProfile:
    """Exact periodic cross-correlation sum_i a_i * conj(b_{i+tau})."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    n = a.order
    values = tuple(
        CyclotomicInt(n, tuple(_diff_counts(a.exponents, b.exponents, tau, n)))
        for tau in range(len(a))
    )
    return CorrelationProfile(n, (len(a),), values, _kind)


def autocorrelate_2d(array: PhaseArray) -> CorrelationProfile:
    """Exact 2D periodic autocorrelation, indexed by shift pair (v, h)."""
    n, R, C = array.order, array.rows, array.cols
    exps = array.exponents
    values = []
    for v in range(R):
        for h in range(C):
            counts = [0] * n
            for i in range(R):
                base = i * C
                shifted = ((i + v) % R) * C
                for j in range(C):
                    counts[(exps[base + j] - exps[shifted + (j + h) % C]) % n] += 1
            values.append(CyclotomicInt(n, tuple(counts)))
    return CorrelationProfile(n, (R, C), tuple(values), "auto")


def projection_autocorrelate(proj: ProjectionSequence) -> CorrelationProfile:
    """Exact autocorrelation of a projection: entries are full cyclotomic
    integers, so each term is a genuine ring product, not an exponent shift."""
    vals = proj.values
    L = len(vals)
    n = proj.order
    out = []
    for tau in range(L):
        acc = CyclotomicInt.zero(n)
        for i in range(L):
            acc = cyc_add(acc, cyc_mul(vals[i], cyc_conj(vals[(i + tau) % L])))
        out.append(acc)
    return CorrelationProfile(n, (L,), tuple(out), "auto")


def autocorrelate_float(seq: PhaseSequence) -> CorrelationProfile:
    """Advisory float autocorrelation (direct summation)."""
    return crosscorrelate_float(seq, seq, _kind="auto")


def crosscorrelate_float(a: PhaseSequence, b: PhaseSequence, *, _kind: str = "cross") -> CorrelationProfile:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} != {len(b)}")
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    n = a.order
    roots = root_table(n)
    L = len(a)
    ae, be = a.exponents, b.exponents
    values = tuple(
        sum(roots[(ae[i] - be[(i + tau) % L]) % n] for i in range(L))
        for tau in range(L)
    )
    return CorrelationProfile(n, (L,), values, _kind, exact=False)


def autocorrelate_2d_float(array: PhaseArray) -> CorrelationProfile:
    n, R, C = array.order, array.rows, array.cols
    roots = root_table(n)
    exps = array.exponents
    values = []
    for v in range(R):
        for h in range(C):
            acc = 0j
            for i in range(R):
                base = i * C
                shifted = ((i + v) % R) * C
                for j in range(C):
                    acc += roots[(exps[base + j] - exps[shifted + (j + h) % C]) % n]
            values.append(acc)
    return CorrelationProfile(n, (R, C), tuple(values), "auto", exact=False)


def decomposition_check(array: PhaseArray, qprime: int, rprime: int) -> bool:
    """Verify the change-of-coordinates identity for shift tau = q'*C + r':

        theta_s(q'C + r') = sum_r theta_{S[r], S[(r+r') mod C]}(q' + (r+r')//C)

    with s the row-major flattening of the array.  This is an algebraic
    identity for any array; a False return indicates a kernel bug, which is
    exactly what makes it a useful property check.
    """
    C = array.cols
    if not 0 <= rprime < C:
        raise ValueError(f"rprime must be in [0, {C}), got {rprime}")
    n, R = array.order, array.rows
    seq = flatten(array)
    tau = (qprime * C + rprime) % len(seq)
    lhs = _diff_counts(seq.exponents, seq.exponents, tau, n)

    rhs = [0] * n
    cols = array.columns()
    for r in range(C):
        partner = (r + rprime) % C
        shift = qprime + (r + rprime) // C
        for e, cnt in enumerate(_diff_counts(cols[r], cols[partner], shift % R, n)):
            rhs[e] += cnt
    diff = [x - y for x, y in zip(lhs, rhs)]
    return counts_is_zero(diff, n)


def decomposition_check_all(array: PhaseArray) -> bool:
    """Run `decomposition_check` over every shift pair (q', r')."""
    return all(
        decomposition_check(array, qprime, rprime)
        for qprime in range(array.rows)
        for rprime in range(array.cols)
    )


def projection_sum_check(array: PhaseArray, tau: int) -> bool:
    """Verify that the column-sum projection's autocorrelation at shift tau
    equals the sum over h of the 2D profile at (tau, h), exactly."""
    R, C = array.rows, array.cols
    if not 0 <= tau < R:
        raise ValueError(f"tau must be in [0, {R}), got {tau}")
    n = array.order
    proj = column_sum(array)
    lhs = CyclotomicInt.zero(n)
    for i in range(R):
        lhs = cyc_add(lhs, cyc_mul(proj.values[i], cyc_conj(proj.values[(i + tau) % R])))

    exps = array.exponents
    rhs_counts = [0] * n
    for h in range(C):
        for i in range(R):
            base = i * C
            shifted = ((i + tau) % R) * C
            for j in range(C):
                rhs_counts[(exps[base + j] - exps[shifted + (j + h) % C]) % n] += 1
    diff = [x - y for x, y in zip(lhs.coeffs, rhs_counts)]
    return counts_is_zero(diff, n)


def projection_sum_check_all(array: PhaseArray) -> bool:
    """Run `projection_sum_check` at every vertical shift."""
    return all(projection_sum_check(array, tau) for tau in range(array.rows))


def write_profile_csv(profile: CorrelationProfile, stream: TextIO) -> None:
    """CSV export: shift index (or v,h pair), real part, imaginary part, and
    an exact-zero flag (blank for float profiles)."""
    two_d = len(profile.shape) == 2
    stream.write("v,h,re,im,exact_zero\n" if two_d else "tau,re,im,exact_zero\n")
    as_complex = profile.to_complex()
    for flat, z in enumerate(as_complex):
        flag = ""
        if profile.exact:
            flag = "1" if profile.values[flat].is_zero() else "0"
        if two_d:
            v, h = divmod(flat, profile.shape[1])
            stream.write(f"{v},{h},{z.real!r},{z.imag!r},{flag}\n")
        else:
            stream.write(f"{flat},{z.real!r},{z.imag!r},{flag}\n")
