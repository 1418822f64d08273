from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import small_rationals
from zeropascal.errors import DimMismatch, NonUnitDiagonal, SingularDiagonal
from zeropascal.fps import Series
from zeropascal.triangle import (
    LowerTriangular,
    col_gf,
    row_gf,
    tri_exp,
    tri_hadamard,
    tri_inv,
    tri_log,
    tri_mul,
    tri_pow,
)
from zeropascal.zero_pascal import binomial_matrix


@st.composite
def triangles(draw, dim=5, unit=False):
    rows = []
    for n in range(dim):
        row = [draw(small_rationals) for _ in range(n)]
        d = Fraction(1) if unit else draw(small_rationals.filter(lambda v: v != 0))
        rows.append(tuple(row) + (d,))
    return LowerTriangular(tuple(rows))


def test_pascal_inverse_is_signed():
    P = binomial_matrix(6)
    signed = LowerTriangular.from_function(lambda n, m: (-1) ** (n - m) * P[n, m], 7)
    assert tri_inv(P) == signed


def test_pascal_log_is_subdiagonal():
    L = tri_log(binomial_matrix(6))
    want = LowerTriangular.from_function(lambda n, m: n if m == n - 1 else 0, 7)
    assert L == want


def test_row_and_column_gfs():
    P = binomial_matrix(4)
    assert list(row_gf(P, 3).coeffs) == [1, 3, 3, 1, 0]
    assert list(col_gf(P, 1).coeffs) == [0, 1, 2, 3, 4]


def test_errors():
    with pytest.raises(DimMismatch):
        tri_mul(LowerTriangular.identity(2), LowerTriangular.identity(3))
    with pytest.raises(SingularDiagonal):
        tri_inv(LowerTriangular.diagonal([1, 0]))
    with pytest.raises(NonUnitDiagonal):
        tri_log(LowerTriangular.diagonal([1, 2]))


def test_json_csv_export():
    M = LowerTriangular.from_dense([[1, 0], [Fraction(1, 2), 3]])
    assert M.to_json_obj() == {"dim": 2, "rows": [["1"], ["1/2", "3"]]}
    assert LowerTriangular.from_json(M.to_json()) == M
    assert M.to_csv() == "1,0\n1/2,3\n"


def test_first_difference_reports_entry():
    A = LowerTriangular.identity(3)
    B = LowerTriangular.from_dense([[1, 0, 0], [0, 1, 0], [0, 5, 1]])
    assert A.first_difference(B) == (2, 1)
    assert A.first_difference(A) is None


def test_apply_multiplies_coefficient_vector():
    P = binomial_matrix(5)
    assert P.apply(Series.one(5)) == Series.geometric(5)
    assert P.apply(Series.geometric(5)) == Series.geometric(5, 2)


@given(triangles(), triangles(), triangles())
def test_matrix_product_associative(a, b, c):
    assert tri_mul(tri_mul(a, b), c) == tri_mul(a, tri_mul(b, c))


@given(triangles())
def test_inverse(a):
    assert tri_mul(a, tri_inv(a)).is_identity()
    assert tri_mul(tri_inv(a), a).is_identity()


@given(triangles(unit=True))
def test_log_exp_roundtrip(a):
    assert tri_exp(tri_log(a)) == a


@given(triangles(unit=True))
def test_half_power(a):
    r = tri_pow(a, Fraction(1, 2))
    assert tri_mul(r, r) == a


@given(triangles(), triangles())
def test_hadamard_commutes(a, b):
    assert tri_hadamard(a, b) == tri_hadamard(b, a)
