"""Exact arithmetic over the cyclotomic integers Z[w], w a primitive n-th root
of unity.

Elements use the group-ring representation: a vector of n integer
coefficients, entry e counting occurrences of w^e.  This keeps correlation
accumulation allocation-light (adding a root of unity is a single counter
increment) and defers all reduction to the zero test, which divides the
represented polynomial by the n-th cyclotomic polynomial.  Divisibility by
that minimal polynomial is the exact criterion for representing 0, so every
orthogonality verdict in this package is an integer computation, never a
floating-point guess.

Coefficients are plain Python integers and therefore cannot overflow or wrap.

A float view (`cyc_to_complex`) exists for cross-checks and CSV output; it
never decides a verdict.  When the module-level audit is enabled, every exact
zero test is additionally evaluated numerically and exact/float disagreements
are counted (see `ConcordanceAudit`).
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass

__all__ = [
    "CyclotomicInt",
    "CyclotomicPolynomial",
    "cyclotomic_polynomial",
    "cyc_add",
    "cyc_sub",
    "cyc_neg",
    "cyc_mul",
    "cyc_mul_root",
    "cyc_conj",
    "cyc_is_zero",
    "cyc_to_complex",
    "counts_is_zero",
    "counts_to_complex",
    "root_table",
    "reduction_rows",
    "ConcordanceAudit",
    "audit",
    "FLOAT_ZERO_TOLERANCE",
]

# Relative magnitude below which the float view of a value is judged "zero";
# scaled by the sum of absolute coefficients because worst-case rounding grows
# with the number of accumulated terms.
FLOAT_ZERO_TOLERANCE = 1e-9


class ConcordanceAudit:
    """Tally of exact-vs-float zero-verdict comparisons.

    Enabled around a block of work, each exact zero test also evaluates the
    value numerically and compares the verdicts; `disagreements` must stay 0.
    Process-local: parallel search workers enable their own audit and return
    the counters with their results.
    """

    __slots__ = ("enabled", "checked", "disagreements")

    def __init__(self) -> None:
        self.enabled = False
        self.checked = 0
        self.disagreements = 0

    def start(self) -> None:
        self.enabled = True
        self.checked = 0
        self.disagreements = 0

    def stop(self) -> tuple[int, int]:
        self.enabled = False
        return self.checked, self.disagreements

    def record(self, exact_zero: bool, coeffs, order: int) -> None:
        mass = sum(abs(c) for c in coeffs)
        value = counts_to_complex(coeffs, order)
        float_zero = abs(value) < FLOAT_ZERO_TOLERANCE * max(mass, 1)
        self.checked += 1
        if float_zero != exact_zero:
            self.disagreements += 1


audit = ConcordanceAudit()


@dataclass(frozen=True)
class CyclotomicPolynomial:
    """Dense integer coefficients (low to high) of the n-th cyclotomic
    polynomial, the minimal polynomial of a primitive n-th root of unity."""

    order: int
    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials; denominator must be monic.
    assert den[-1] == 1
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * max(len(num) - deg_d, 1)
    for k in range(len(num) - 1, deg_d - 1, -1):
        c = num[k]
        if c == 0:
            continue
        quot[k - deg_d] = c
        for e in range(deg_d + 1):
            num[k - deg_d + e] -= c * den[e]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(order: int) -> CyclotomicPolynomial:
    """Compute the cyclotomic polynomial of the given order.

    X^n - 1 is divided exactly by the cyclotomic polynomials of all proper
    divisors of n; the memo table makes repeated zero tests cheap.
    """
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    poly = [-1] + [0] * (order - 1) + [1]  # X^n - 1
    for d in range(1, order):
        if order % d == 0:
            phi_d = list(cyclotomic_polynomial(d).coefficients)
            poly, rem = _poly_divmod(poly, phi_d)
            assert rem == [0], f"non-exact division for order {order} by {d}"
    return CyclotomicPolynomial(order, tuple(poly))


@functools.lru_cache(maxsize=None)
def reduction_rows(order: int) -> tuple[tuple[int, ...], ...]:
    """Rows of the linear map sending a length-n coefficient vector to the
    remainder of its polynomial modulo the cyclotomic polynomial.

    Row d, column e holds the coefficient of X^d in (X^e mod Phi_n).  A value
    is zero in the ring iff every row contracted with its coefficient vector
    vanishes.
    """
    phi = cyclotomic_polynomial(order).coefficients
    deg = len(phi) - 1
    columns: list[list[int]] = []
    for e in range(order):
        mono = [0] * e + [1]
        _, rem = _poly_divmod(mono, list(phi))
        rem += [0] * (deg - len(rem))
        columns.append(rem[:deg] if deg > 0 else [])
    rows = tuple(tuple(columns[e][d] for e in range(order)) for d in range(deg))
    return rows


@functools.lru_cache(maxsize=None)
def root_table(order: int) -> tuple[complex, ...]:
    """Powers of the primitive root exp(2*pi*1j/order), indexed by exponent."""
    return tuple(cmath.exp(2j * math.pi * (e / order)) for e in range(order))


def counts_is_zero(coeffs, order: int) -> bool:
    """Exact zero test on a raw coefficient vector (no object wrapper).

    This is the hot-loop form used by the correlation kernels and the search
    engine; `cyc_is_zero` delegates here.
    """
    result = True
    for row in reduction_rows(order):
        s = 0
        for e in range(order):
            ce = coeffs[e]
            if ce:
                s += row[e] * ce
        if s != 0:
            result = False
            break
    if audit.enabled:
        audit.record(result, coeffs, order)
    return result


def counts_to_complex(coeffs, order: int) -> complex:
    roots = root_table(order)
    return sum((coeffs[e] * roots[e] for e in range(order) if coeffs[e]), 0j)


@dataclass(frozen=True)
class CyclotomicInt:
    """An element of Z[w] with w = exp(2*pi*1j/order).

    `coeffs[e]` counts occurrences of w^e; the vector always has exactly
    `order` entries.  Values are immutable; all operations return new values
    and are safe to call concurrently.

    Note that `==` compares representations.  Two distinct coefficient
    vectors can name the same ring element (their difference is divisible by
    the cyclotomic polynomial); use `equals` for ring equality.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) != self.order:
            raise ValueError(
                f"coefficient vector has {len(self.coeffs)} entries, "
                f"expected {self.order}"
            )

    @classmethod
    def zero(cls, order: int) -> "CyclotomicInt":
        return cls(order, (0,) * order)

    @classmethod
    def one(cls, order: int) -> "CyclotomicInt":
        return cls.integer(order, 1)

    @classmethod
    def integer(cls, order: int, value: int) -> "CyclotomicInt":
        return cls(order, (value,) + (0,) * (order - 1))

    @classmethod
    def root(cls, order: int, exponent: int) -> "CyclotomicInt":
        coeffs = [0] * order
        coeffs[exponent % order] = 1
        return cls(order, tuple(coeffs))

    def is_zero(self) -> bool:
        return counts_is_zero(self.coeffs, self.order)

    def equals(self, other: "CyclotomicInt") -> bool:
        """Ring equality: the difference represents zero."""
        return cyc_sub(self, other).is_zero()

    def conjugate(self) -> "CyclotomicInt":
        return cyc_conj(self)

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return cyc_add(self, other)

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return cyc_sub(self, other)

    def __neg__(self) -> "CyclotomicInt":
        return cyc_neg(self)

    def __mul__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        return cyc_mul(self, other)

    def __complex__(self) -> complex:
        return cyc_to_complex(self)


def _require_same_order(a: CyclotomicInt, b: CyclotomicInt) -> None:
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")


def cyc_add(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    """Component-wise sum."""
    _require_same_order(a, b)
    return CyclotomicInt(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_sub(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    _require_same_order(a, b)
    return CyclotomicInt(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_neg(a: CyclotomicInt) -> CyclotomicInt:
    return CyclotomicInt(a.order, tuple(-x for x in a.coeffs))


def cyc_mul_root(a: CyclotomicInt, e: int) -> CyclotomicInt:
    """Multiply by w^e: a cyclic rotation of the coefficient vector."""
    n = a.order
    e %= n
    if e == 0:
        return a
    return CyclotomicInt(n, a.coeffs[n - e :] + a.coeffs[: n - e])


def cyc_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    """Full product (cyclic convolution of coefficient vectors)."""
    _require_same_order(a, b)
    n = a.order
    out = [0] * n
    for e1, c1 in enumerate(a.coeffs):
        if c1 == 0:
            continue
        for e2, c2 in enumerate(b.coeffs):
            if c2:
                out[(e1 + e2) % n] += c1 * c2
    return CyclotomicInt(n, tuple(out))


def cyc_conj(a: CyclotomicInt) -> CyclotomicInt:
    """Complex conjugation: w^e maps to w^(n-e)."""
    n = a.order
    return CyclotomicInt(n, (a.coeffs[0],) + a.coeffs[:0:-1])


def cyc_is_zero(a: CyclotomicInt) -> bool:
    """True iff the element is 0 in Z[w], i.e. the represented polynomial is
    divisible by the cyclotomic polynomial of its order."""
    return counts_is_zero(a.coeffs, a.order)


def cyc_to_complex(a: CyclotomicInt) -> complex:
    """Double-precision value; advisory only, never decides verdicts."""
    return counts_to_complex(a.coeffs, a.order)
