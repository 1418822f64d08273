from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import series, small_rationals
from zeropascal.block_fractal import (
    BlockElement,
    FractalSeries,
    block_log,
    block_mul,
    digits,
    embedding_check,
    fractal_circ_mul,
    fractal_expand,
    fractal_log,
    is_fractal,
    kronecker_check,
    row_gf_identity,
    star_log,
    star_mul,
    substitute_q_power,
)
from zeropascal.errors import ConstantTermNotOne, SpecMismatch
from zeropascal.fps import Series, fps_log, fps_mul
from zeropascal.riordan import GroupParameter
from zeropascal.triangle import tri_log, tri_mul
from zeropascal.zero_pascal import CircSeries, Fractal, ZeroPascalSpec, circ_log, circ_mul, matrix_of, zp_matrix

F = Fraction


def fractal(q, order):
    return st.lists(small_rationals, min_size=q - 1, max_size=q - 1).map(lambda t: FractalSeries(q, (1, *t), order))


def test_digits():
    assert digits(0, 2) == []
    assert digits(11, 3) == [2, 0, 1]


def test_star_product_with_exp_parameter():
    c = GroupParameter.exponential(5)
    g = Series.geometric(5)
    # g(c, x) = e^x, so g * g = |c|^{-1} e^{2x} = 1/(1-2x) and log* g = x
    assert star_mul(g, g, c) == Series.geometric(5, 2)
    assert star_log(g, c) == Series.x(5)


@pytest.mark.parametrize("q", [2, 3])
def test_block_log_of_decorated_pascal(q):
    # the exp-decorated zero Pascal matrix has log  sum_{m<q} x^m/m + x^q
    outer = 12 // q
    e = BlockElement(Series.geometric(q - 1), Series.geometric(outer), q, GroupParameter.exponential(outer))
    lg = block_log(e).a
    want = Series.from_function(lambda n: F(1, n) if 0 < n < q else F(int(n == q)), e.order)
    assert lg == want
    assert matrix_of(block_log(e)) == tri_log(e.matrix())


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("decorated", [False, True])
@given(data=st.data())
def test_block_group_law_and_log(q, decorated, data):
    outer = 3
    c = GroupParameter(Series.from_coeffs([1, 1, 3, F(-1, 2)], outer)) if decorated else None
    mk = lambda: BlockElement(data.draw(series(order=q - 1, unit=True)), data.draw(series(order=outer, unit=True)), q, c)
    e, f = mk(), mk()
    assert block_mul(e, f).matrix() == tri_mul(e.matrix(), f.matrix())
    assert matrix_of(block_log(e)) == tri_log(e.matrix())
    assert (block_log(block_mul(e, f)).a) == (block_log(e) + block_log(f)).a


def test_block_specs_must_match():
    e = BlockElement.identity(2, 3)
    with pytest.raises(SpecMismatch):
        block_mul(e, BlockElement.identity(3, 3))


def test_block_log_needs_unit():
    with pytest.raises(ConstantTermNotOne):
        block_log(BlockElement(Series.constant(2, 1), Series.one(3), 2))


def test_fractal_coefficients_by_digits():
    fs = FractalSeries(3, (1, 2, 5), 20)
    assert fs.coefficient(0) == 1
    assert fs.coefficient(7) == 2 * 5  # 7 = 21 in base 3
    assert fs.coefficient(15) == 5 * 2  # 15 = 120 in base 3
    assert is_fractal(fractal_expand(fs), 3)
    assert not is_fractal(Series.from_coeffs([1, 2, 3, 4], 3), 2)


@pytest.mark.parametrize("q", [2, 3])
@given(data=st.data())
def test_fractal_group_closure(q, data):
    f1, f2 = data.draw(fractal(q, 20)), data.draw(fractal(q, 20))
    g = fractal_circ_mul(f1, f2)
    assert g.base_coeffs == fps_mul(Series.from_coeffs(f1.base_coeffs, q - 1), Series.from_coeffs(f2.base_coeffs, q - 1)).coeffs


@pytest.mark.parametrize("q", [2, 3])
@given(data=st.data())
def test_fractal_log_closed_form(q, data):
    fs = data.draw(fractal(q, 18))
    assert fractal_log(fs) == circ_log(fs.circ()).a


def test_fractal_log_of_sierpinski_matrix():
    lg = fractal_log(FractalSeries(2, (1, 1), 16))
    assert lg == Series.from_function(lambda n: F(int(n in (1, 2, 4, 8, 16))), 16)
    assert matrix_of(CircSeries(lg, ZeroPascalSpec.of(Fractal(2, 0)))) == tri_log(zp_matrix(ZeroPascalSpec.of(Fractal(2, 0)), 16))


@pytest.mark.parametrize("q,k", [(2, 1), (2, 2), (3, 1)])
@given(a=series(order=16), b=series(order=16))
def test_substitution_isomorphism(q, k, a, b):
    assert substitute_q_power(a, b, k, q, 16).equal


def test_substitution_trivial_case():
    assert substitute_q_power(Series.one(8), Series.one(8), 1, 2, 8)


@given(fs=fractal(2, 31))
def test_row_generating_functions(fs):
    assert row_gf_identity(fs, 31)


@pytest.mark.parametrize("q", [2, 3])
def test_entry_multiplicativity(q):
    N = 27
    fs = FractalSeries(q, (1,) + tuple(F(i + 2, 3) for i in range(q - 1)), N)
    M = matrix_of(fs.circ())
    Q = q
    while Q <= N:
        for r in range(N + 1):
            for s in range(r + 1):
                (n, i), (m, j) = divmod(r, Q), divmod(s, Q)
                assert M[r, s] == M[n, m] * M[i, j], (Q, r, s)
        Q *= q


@pytest.mark.parametrize("q", [2, 3])
def test_kronecker_square(q):
    assert kronecker_check(q)


def test_stretched_fractal_products_follow_base_q():
    f1, f2 = FractalSeries(2, (1, F(3)), 10), FractalSeries(2, (1, F(-2, 3)), 10)
    spec = ZeroPascalSpec.of(Fractal(2, 0))
    s1, s2 = fractal_expand(f1).stretch(2, 20), fractal_expand(f2).stretch(2, 20)
    prod = circ_mul(CircSeries(s1, spec), CircSeries(s2, spec)).a
    assert prod == fractal_expand(fractal_circ_mul(f1, f2)).stretch(2, 20)


def test_embedding_into_next_base():
    # the literal claim: a(x^2) is fractal over base 4 and products commute with the embedding
    f1, f2 = FractalSeries(2, (1, F(3)), 10), FractalSeries(2, (1, F(-2, 3)), 10)
    assert embedding_check(f1, f2, 1)
