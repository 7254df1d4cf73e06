"""Container invariants: validation, indexing, flatten round trips, axis sums."""

import pytest

from aopseq.cyclotomic import CyclotomicInt
from aopseq.seqmodel import (
    PhaseArray,
    PhaseSequence,
    ProjectionSequence,
    column_sum,
    flatten,
    row_sum,
    unflatten,
)


def test_sequence_validation_and_normalisation():
    assert PhaseSequence(2, (0, 1, 1, 0)).exponents == (0, 1, 1, 0)
    # out-of-range exponents reduce to the canonical residue
    assert PhaseSequence(2, (0, 2)).exponents == (0, 0)
    assert PhaseSequence(2, (0, -1)).exponents == (0, 1)
    with pytest.raises(ValueError):
        PhaseSequence(0, (0,))
    with pytest.raises(ValueError):
        PhaseSequence(2, ())


def test_array_validation_and_indexing():
    arr = PhaseArray(4, 2, 3, (0, 1, 2, 3, 0, 1))
    assert arr.entry(0, 0) == 0
    assert arr.entry(0, 2) == 2
    assert arr.entry(1, 0) == 3
    assert arr.row(1) == (3, 0, 1)
    assert arr.column(1) == (1, 0)
    assert arr.columns() == [(0, 3), (1, 0), (2, 1)]
    with pytest.raises(ValueError):
        PhaseArray(4, 2, 3, (0, 1, 2))
    with pytest.raises(ValueError):
        PhaseArray(4, 0, 3, ())


def test_flatten_unflatten_round_trip():
    arr = PhaseArray(3, 2, 2, (0, 1, 2, 0))
    seq = flatten(arr)
    assert seq.exponents == (0, 1, 2, 0)
    assert seq.order == 3
    back = unflatten(seq, 2, 2)
    assert back == arr
    with pytest.raises(ValueError):
        unflatten(seq, 3, 2)


def test_axis_sums():
    # [[0, 1], [0, 0]] over order 2: values [[1, -1], [1, 1]]
    arr = PhaseArray(2, 2, 2, (0, 1, 0, 0))
    cols = column_sum(arr)
    rows = row_sum(arr)
    assert len(cols) == 2 and cols.order == 2
    assert len(rows) == 2 and rows.order == 2
    # row sums: 1 + (-1) = 0 and 1 + 1 = 2
    assert cols.values[0].is_zero()
    assert cols.values[1].equals(CyclotomicInt.integer(2, 2))
    # column sums: 1 + 1 = 2 and -1 + 1 = 0
    assert rows.values[0].equals(CyclotomicInt.integer(2, 2))
    assert rows.values[1].is_zero()


def test_projection_validation():
    vals = (CyclotomicInt.one(3), CyclotomicInt.zero(3))
    ProjectionSequence(3, vals)
    with pytest.raises(ValueError):
        ProjectionSequence(4, vals)
    with pytest.raises(ValueError):
        ProjectionSequence(3, ())
