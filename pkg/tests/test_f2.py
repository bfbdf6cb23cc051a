import itertools

import pytest
from hypothesis import given, strategies as st

from qdesk.f2 import (
    F2DimensionError,
    F2Matrix,
    F2Vector,
    decode_single_error,
    dot,
    hamming_p,
    orthogonal_complement,
    pivot_columns,
    row_span,
    single_error_table,
    syndrome,
    toy_p,
    vectors_of_weight,
)


def v(s):
    return F2Vector.from_str(s)


vectors7 = st.integers(0, 127).map(lambda k: F2Vector(7, k))


# -- vectors ------------------------------------------------------------


def test_packing_is_msb_first():
    assert v("100").value == 4
    assert v("100").support1() == [1]
    assert str(F2Vector(5, 5)) == "00101"


@pytest.mark.parametrize("a,b,expected", [("101", "111", 0), ("100", "100", 1), ("110", "000", 0)])
def test_dot_examples(a, b, expected):
    assert dot(v(a), v(b)) == expected


@given(vectors7)
def test_dot_with_zero_vector(x):
    assert dot(x, F2Vector.zeros(7)) == 0


@given(vectors7, vectors7, vectors7)
def test_dot_is_bilinear(a, b, c):
    assert dot(a + b, c) == (dot(a, c) + dot(b, c)) % 2


@given(vectors7, vectors7)
def test_dot_matches_bitwise_definition(a, b):
    assert dot(a, b) == sum(x * y for x, y in zip(a, b)) % 2


def test_dot_length_mismatch():
    with pytest.raises(F2DimensionError):
        dot(v("10"), v("101"))


def test_vector_rejects_oversized_value():
    with pytest.raises(F2DimensionError):
        F2Vector(2, 4)


# -- matrices -----------------------------------------------------------


def lsb_first(i, width=3):
    return F2Vector.from_bits((i >> k) & 1 for k in range(width))


def test_hamming_columns_are_binary_indices():
    # the top row carries the least significant bit
    p = hamming_p()
    for i in range(1, 8):
        assert p.column(i - 1) == lsb_first(i)
    assert p.column(5).bits() == (0, 1, 1)


def test_constant_matrices():
    assert str(toy_p().row(0)) == "110"
    assert hamming_p().rank == 3
    assert toy_p().rank == 2


def test_text_round_trip():
    p = hamming_p()
    assert F2Matrix.from_text(p.to_text()) == p
    assert F2Matrix.from_text("# comment\n1 0 1\n\n011\n").to_lists() == [[1, 0, 1], [0, 1, 1]]


def test_row_span_hamming():
    span = row_span(hamming_p())
    assert len(span) == 8
    for s in ("0000000", "1010101", "0110011", "0001111"):
        assert v(s) in span
    assert span == sorted(span, key=lambda x: x.value)


def test_row_span_small_cases():
    assert row_span(F2Matrix.zeros(2, 3)) == [F2Vector.zeros(3)]
    assert [str(x) for x in row_span(F2Matrix.identity(2))] == ["00", "01", "10", "11"]


def test_row_span_oracle_against_subset_sums():
    p = F2Matrix.from_rows(["1100", "0110", "1010"])  # third row dependent
    sums = set()
    for mask in itertools.product((0, 1), repeat=3):
        acc = F2Vector.zeros(4)
        for bit, row in zip(mask, p.rows):
            if bit:
                acc = acc + row
        sums.add(acc)
    assert set(row_span(p)) == sums
    assert len(row_span(p)) == 4


def test_row_span_limit():
    with pytest.raises(ValueError):
        row_span(F2Matrix.zeros(21, 2))


@pytest.mark.parametrize(
    "e,expected",
    [("0100000", (0, 1, 0)), ("0000100", (1, 0, 1)), ("0000000", (0, 0, 0))],
)
def test_syndrome_examples(e, expected):
    assert syndrome(hamming_p(), v(e)).bits() == expected


def test_syndrome_mismatch():
    with pytest.raises(F2DimensionError):
        syndrome(hamming_p(), v("101"))


def test_row_span_is_in_kernel():
    for x in row_span(hamming_p()):
        assert syndrome(hamming_p(), x).is_zero()


def test_dual_of_hamming_span():
    perp = orthogonal_complement(hamming_p())
    assert len(perp) == 16
    assert v("1111111") in perp
    span = row_span(hamming_p())
    assert set(perp) == set(span) | {x + F2Vector.ones(7) for x in span}


def test_perfect_code_bijection():
    syndromes = [syndrome(hamming_p(), F2Vector.zeros(7))]
    syndromes += [syndrome(hamming_p(), e) for e in vectors_of_weight(7, 1)]
    assert sorted(s.value for s in syndromes) == list(range(8))


# -- decoding and pivots -------------------------------------------------


def test_decode_examples():
    assert str(decode_single_error(toy_p(), v("11"))) == "010"
    assert decode_single_error(hamming_p(), v("101")).support1() == [5]
    assert decode_single_error(hamming_p(), v("000")).is_zero()


@given(st.integers(1, 7))
def test_hamming_decode_reads_syndrome_as_binary(i):
    assert decode_single_error(hamming_p(), lsb_first(i)).support1() == [i]


def test_decode_unmatched_syndrome_is_none():
    p = F2Matrix.from_rows(["1100", "0011"])
    assert decode_single_error(p, v("11")) is None


def test_ambiguous_syndromes_dropped():
    p = F2Matrix.from_rows(["110", "110"])  # columns 1 and 2 equal
    table = single_error_table(p)
    assert v("11") not in table
    assert table[v("00")].is_zero()


def test_zero_column_keeps_trivial_syndrome():
    p = F2Matrix.from_rows(["100"])
    assert single_error_table(p)[v("0")].is_zero()


def test_pivot_columns():
    assert pivot_columns(hamming_p()) == [1, 2, 4]
    assert pivot_columns(toy_p()) == [1, 2]
    assert pivot_columns(F2Matrix.zeros(2, 3)) == []


@given(st.lists(st.integers(0, 63), min_size=1, max_size=5))
def test_rref_preserves_span(values):
    m = F2Matrix(tuple(F2Vector(6, x) for x in values), 6)
    reduced, pivots = m.rref()
    assert set(row_span(reduced)) == set(row_span(m))
    for row, piv in zip(reduced.rows, pivots):
        assert row[piv] == 1
        assert sum(r[piv] for r in reduced.rows) == 1
