"""Orthogonality predicates: witnesses, known families, implication harnesses."""

import random

from aopseq.aop import (
    aop_implies_perfect,
    check_aop,
    check_condition_1,
    check_condition_2,
    is_degenerate_projection,
    is_perfect_projection,
    is_perfect_sequence,
    perfect_array_projection_check,
)
from aopseq.correlation import autocorrelate, crosscorrelate
from aopseq.cyclotomic import CyclotomicInt
from aopseq.indexfn import frank_array
from aopseq.seqmodel import PhaseArray, PhaseSequence, column_sum


def test_frank_arrays_satisfy_both_conditions():
    for n in (2, 3, 4, 5):
        arr = frank_array(n)
        assert check_condition_1(arr).holds
        assert check_condition_2(arr).holds
        verdict = check_aop(arr)
        assert verdict.holds and verdict.failing_condition is None


def test_condition_2_component_sums_frank_2x2():
    """The column autocorrelations are individually nonzero but cancel:
    theta_c0(1) = 2 and theta_c1(1) = -2 for the order-2 array."""
    arr = frank_array(2)
    c0 = PhaseSequence(2, arr.column(0))
    c1 = PhaseSequence(2, arr.column(1))
    assert autocorrelate(c0).value(1).equals(CyclotomicInt.integer(2, 2))
    assert autocorrelate(c1).value(1).equals(CyclotomicInt.integer(2, -2))


def test_condition_1_witness_points_at_violation():
    # duplicate column breaks orthogonality at shift 0
    arr = PhaseArray(2, 2, 2, (0, 0, 0, 0))
    verdict = check_condition_1(arr)
    assert not verdict.holds
    j0, j1, tau = verdict.witness
    u = PhaseSequence(2, arr.column(j0))
    v = PhaseSequence(2, arr.column(j1))
    assert not crosscorrelate(u, v).value(tau).is_zero()


def test_condition_2_witness_points_at_violation():
    # constant 2x1 column: theta(1) = 2 != 0
    arr = PhaseArray(2, 2, 1, (0, 0))
    verdict = check_condition_2(arr)
    assert not verdict.holds
    (tau,) = verdict.witness
    col = PhaseSequence(2, arr.column(0))
    assert not autocorrelate(col).value(tau).is_zero()
    full = check_aop(arr)
    assert not full.holds and full.failing_condition == "condition-2"


def test_single_column_aop_is_perfect_column():
    # condition 1 is vacuous at C = 1, so AOP reduces to a perfect column
    perfect_col = PhaseArray(2, 4, 1, (0, 0, 0, 1))
    assert check_aop(perfect_col).holds
    assert check_condition_1(perfect_col).holds
    imperfect_col = PhaseArray(2, 4, 1, (0, 1, 0, 1))
    assert not check_aop(imperfect_col).holds


def test_global_phase_invariance():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.choice((2, 3, 4))
        R, C = rng.randint(1, 4), rng.randint(1, 4)
        exps = tuple(rng.randrange(n) for _ in range(R * C))
        shift = rng.randrange(1, n)
        a = PhaseArray(n, R, C, exps)
        b = PhaseArray(n, R, C, tuple((e + shift) % n for e in exps))
        assert check_aop(a).holds == check_aop(b).holds


def test_aop_implies_perfect_never_refuted():
    rng = random.Random(29)
    for n in (2, 3, 4):
        assert aop_implies_perfect(frank_array(n))
    for _ in range(200):
        n = rng.choice((2, 3, 4))
        R, C = rng.randint(1, 4), rng.randint(1, 4)
        arr = PhaseArray(n, R, C, tuple(rng.randrange(n) for _ in range(R * C)))
        assert aop_implies_perfect(arr)


def test_perfect_array_projections_never_refuted():
    rng = random.Random(31)
    for n in (2, 3, 4, 5):
        assert perfect_array_projection_check(frank_array(n))
    for _ in range(200):
        n = rng.choice((2, 3, 4))
        R, C = rng.randint(1, 4), rng.randint(1, 4)
        arr = PhaseArray(n, R, C, tuple(rng.randrange(n) for _ in range(R * C)))
        assert perfect_array_projection_check(arr)


def test_degenerate_projection_detected():
    # rows [0, 1] over order 2 sum to zero: a degenerate projection is still
    # formally perfect, which is why the harness checks degeneracy separately
    arr = PhaseArray(2, 2, 2, (0, 1, 1, 0))
    proj = column_sum(arr)
    assert is_degenerate_projection(proj)
    assert is_perfect_projection(proj)


def test_perfect_sequence_examples():
    assert is_perfect_sequence(PhaseSequence(2, (0, 0, 0, 1)))
    assert not is_perfect_sequence(PhaseSequence(2, (0, 0, 0, 0)))
    assert not is_perfect_sequence(PhaseSequence(2, (0, 1, 0, 1)))
    # any length-1 sequence is vacuously perfect
    assert is_perfect_sequence(PhaseSequence(5, (3,)))
