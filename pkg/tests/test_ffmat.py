from itertools import product

import pytest
from hypothesis import given, strategies as st

from unitri.ffmat import (
    FieldError,
    FieldMatrix,
    MatrixParseError,
    PrimeField,
    decode_element,
    encode_element,
    field_ops,
    format_matrix_text,
    iter_all_matrices,
    mat_mul,
    parse_matrix_text,
    unitri_inverse,
)
from unitri.pattern import pattern_P, pattern_U

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def E(s, t, i, j, field, f=1):
    return FieldMatrix.elementary(s, t, i, j, field, f)


def test_field_examples():
    assert field_ops(F2, 1, 1, "add") == 0
    assert field_ops(F3, 2, 0, "inv") == 2
    assert field_ops(F5, 3, 4, "mul") == 2
    assert field_ops(F5, 1, 3, "sub") == 3


def test_field_errors():
    with pytest.raises(ZeroDivisionError):
        F5.inv(0)
    for bad in (0, 1, 4, 9, 15):
        with pytest.raises(FieldError):
            PrimeField(bad)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_inverse_table(p):
    f = PrimeField(p)
    for a in f.units():
        assert f.mul(a, f.inv(a)) == 1


def test_matrix_rejects_noncanonical_entries():
    with pytest.raises(ValueError):
        FieldMatrix(1, 2, (0, 3), F3)
    with pytest.raises(ValueError):
        FieldMatrix(2, 2, (0, 1, 2), F3)


def test_mat_mul_examples():
    x = FieldMatrix.from_rows([[1, 0, 1], [2, 1, 0], [0, 2, 2]], F3)
    assert mat_mul(FieldMatrix.identity(3, F3), x) == x
    assert mat_mul(E(3, 3, 1, 2, F2), E(3, 3, 2, 3, F2)) == E(3, 3, 1, 3, F2)
    a = FieldMatrix.from_rows([[1, 2], [0, 1]], F3)
    b = FieldMatrix.from_rows([[1, 1], [0, 1]], F3)
    assert mat_mul(a, b) == FieldMatrix.identity(2, F3)


def test_mat_mul_errors():
    with pytest.raises(ValueError):
        mat_mul(FieldMatrix.zeros(2, 3, F2), FieldMatrix.zeros(2, 3, F2))
    with pytest.raises(ValueError):
        mat_mul(FieldMatrix.zeros(2, 2, F2), FieldMatrix.zeros(2, 2, F3))


def test_unitri_inverse_examples():
    assert unitri_inverse(FieldMatrix.identity(4, F5)) == FieldMatrix.identity(4, F5)
    t = FieldMatrix.transvection(2, 1, 2, F2)
    assert unitri_inverse(t) == t
    assert unitri_inverse(FieldMatrix.transvection(2, 1, 2, F3, 2)) == FieldMatrix.transvection(2, 1, 2, F3, 1)
    with pytest.raises(ValueError):
        unitri_inverse(FieldMatrix.from_rows([[1, 0], [1, 1]], F3))
    with pytest.raises(ValueError):
        unitri_inverse(FieldMatrix.zeros(2, 3, F3))


@pytest.mark.parametrize("p", [2, 3])
def test_mat_mul_associative_exhaustive_n2(p):
    f = PrimeField(p)
    mats = list(iter_all_matrices(2, 2, f))
    for a, b, c in product(mats, repeat=3):
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@st.composite
def matrices(draw, n=3, p=None):
    p = p or draw(st.sampled_from([2, 3, 5]))
    ent = draw(st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n))
    return FieldMatrix(n, n, tuple(ent), PrimeField(p))


@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(matrices(p=p), matrices(p=p), matrices(p=p))))
def test_mat_mul_associative_random_n3(abc):
    a, b, c = abc
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@st.composite
def unitriangular(draw):
    n = draw(st.integers(1, 6))
    p = draw(st.sampled_from([2, 3, 5, 7]))
    rows = [[int(i == j) if j <= i else draw(st.integers(0, p - 1)) for j in range(n)] for i in range(n)]
    return FieldMatrix.from_rows(rows, PrimeField(p))


@given(unitriangular())
def test_unitri_inverse_properties(a):
    inv = unitri_inverse(a)
    assert inv.is_unitriangular()
    assert mat_mul(a, inv) == FieldMatrix.identity(a.rows, a.field)
    assert unitri_inverse(inv) == a


def test_encode_examples():
    assert encode_element(FieldMatrix.identity(3, F2), pattern_U(3)) == 0
    assert encode_element(FieldMatrix.transvection(2, 1, 2, F2), pattern_U(2)) == 1


def test_encode_round_trip_u3_exhaustive():
    pat = pattern_U(3)
    seen = set()
    for code in range(8):
        m = decode_element(code, pat, F2)
        assert m.is_unitriangular()
        assert encode_element(m, pat) == code
        seen.add(m.entries)
    assert len(seen) == 8


@pytest.mark.parametrize("pat,p", [(pattern_U(3), 3), (pattern_P(4, 2), 2)])
def test_encode_bijective(pat, p):
    f = PrimeField(p)
    size = p ** len(pat.pairs)
    codes = {encode_element(decode_element(c, pat, f), pat) for c in range(size)}
    assert codes == set(range(size))


def test_encode_rejects_off_pattern():
    m = FieldMatrix.transvection(4, 1, 2, F2)
    with pytest.raises(ValueError):
        encode_element(m, pattern_P(4, 2))
    with pytest.raises(ValueError):
        decode_element(32, pattern_P(4, 2), F2)


def test_matrix_text_round_trip():
    m = FieldMatrix.from_rows([[1, 0, 2], [0, 2, 1]], F3)
    assert parse_matrix_text(format_matrix_text(m)) == m


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("2 2\n0 0\n0 0\n", 1),
    ("2 2 4\n0 0\n0 0\n", 1),
    ("2 2 3\n0 0\n", 3),
    ("2 2 3\n0 0\n0 3\n", 3),
    ("2 2 3\n0  0\n0 1\n", 2),
    ("2 2 3\n0 x\n0 1\n", 2),
    ("1 1 3\n0\n1\n", 3),
])
def test_matrix_text_errors(text, line):
    with pytest.raises(MatrixParseError) as exc:
        parse_matrix_text(text)
    assert exc.value.line == line
