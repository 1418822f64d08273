"""The group ``R(P0)`` of pairs ``(b(x), a(x))_0`` over a zero Pascal spec.

The Lagrange part acts on columns by ``(1, a)_0 x^n = x^n o a^(n)``, where ``o``
is the circle product of the spec and ``a^(n)`` its ``n``-th circle power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from zeropascal.block_fractal import FractalSeries, digits
from zeropascal.errors import ConstantTermNotOne, NotInvolution, SpecMismatch, ZeroConstant
from zeropascal.fps import ParamPolynomial, Series, as_fraction
from zeropascal.triangle import LowerTriangular, tri_inv, tri_mul
from zeropascal.zero_pascal import (
    Block,
    CircSeries,
    ZeroPascalSpec,
    check_eta_support,
    circ_inv,
    circ_log,
    circ_mul,
    circ_pow,
    matrix_of,
)


def _circ(a: Series, spec: ZeroPascalSpec, order: int | None = None) -> CircSeries:
    return CircSeries(a if order is None else a.with_order(order), spec)


def circ_powers(a: Series, spec: ZeroPascalSpec, count: int) -> list:
    """``[a^(0), a^(1), ..., a^(count)]`` as plain series."""
    u = _circ(a, spec)
    out = [CircSeries.one(spec, u.order)]
    for _ in range(count):
        out.append(circ_mul(out[-1], u))
    return [p.a for p in out]


def substitute(b: Series, a: Series, spec: ZeroPascalSpec) -> Series:
    """``b(a(x))_0 = sum_n b_n x^n o a^(n)``."""
    if a[0] == 0:
        raise ZeroConstant("substitution needs a_0 != 0")
    N = min(a.order, b.order)
    powers = circ_powers(a.with_order(N), spec, N)
    out = CircSeries(Series.zero(N), spec)
    for n in range(N + 1):
        if b[n]:
            out = out + circ_mul(_circ(Series.monomial(n, N), spec), _circ(powers[n], spec)).scale(b[n])
    return out.a


def lagrange_matrix(a: Series, spec: ZeroPascalSpec, N: int) -> LowerTriangular:
    """``(1, a)_0`` on rows ``0..N``: column ``n`` is ``x^n o a^(n)``."""
    if a[0] == 0:
        raise ZeroConstant("Lagrange matrices need a_0 != 0")
    a = a.with_order(N)
    powers = circ_powers(a, spec, N)
    cols = [circ_mul(_circ(Series.monomial(n, N), spec), _circ(powers[n], spec)).a for n in range(N + 1)]
    return LowerTriangular.from_columns(cols, N + 1)


@dataclass(frozen=True)
class RElement:
    b: Series
    a: Series
    spec: ZeroPascalSpec

    def __post_init__(self):
        if self.b[0] == 0 or self.a[0] == 0:
            raise ZeroConstant("(b, a)_0 needs b_0 != 0 and a_0 != 0")
        N = min(self.b.order, self.a.order)
        object.__setattr__(self, "b", self.b.with_order(N))
        object.__setattr__(self, "a", self.a.with_order(N))

    @property
    def order(self) -> int:
        return self.a.order

    def matrix(self, N: int | None = None) -> LowerTriangular:
        N = self.order if N is None else N
        return tri_mul(matrix_of(_circ(self.b, self.spec, N), N), lagrange_matrix(self.a, self.spec, N))

    def sign_conjugate(self) -> "RElement":
        """``(1,-1)_0 (b, a)_0 (1,-1)_0 = (b(-x), a(-x))_0``."""
        return RElement(self.b.scale_argument(-1), self.a.scale_argument(-1), self.spec)

    @classmethod
    def identity(cls, spec: ZeroPascalSpec, order: int) -> "RElement":
        return cls(Series.one(order), Series.one(order), spec)


def relement_mul(e1: RElement, e2: RElement) -> RElement:
    """``(b, a)_0 (f, g)_0 = (b o f(a)_0, a o g(a)_0)_0``."""
    if e1.spec != e2.spec:
        raise SpecMismatch("group elements over different specs")
    spec = e1.spec
    N = min(e1.order, e2.order)
    a = e1.a.with_order(N)
    fa = substitute(e2.b.with_order(N), a, spec)
    ga = substitute(e2.a.with_order(N), a, spec)
    return RElement(circ_mul(_circ(e1.b, spec, N), _circ(fa, spec)).a, circ_mul(_circ(a, spec), _circ(ga, spec)).a, spec)


def relement_inv(e: RElement) -> RElement:
    """Inverse through ``(1, a)^{-1} = (1, g)`` and ``(1, g)(b^(-1), 1) = (b^(-1)(g)_0, g)``."""
    spec, N = e.spec, e.order
    alpha = e.a[0]
    # (1, a) = (1, a/alpha)(1, alpha), so (1, a)^{-1} = (1, 1/alpha)(1, e) = (1, e(x/alpha)/alpha)
    unit = lagrange_inverse(e.a * (1 / alpha), spec, N)
    g = unit.scale_argument(1 / alpha) * (1 / alpha)
    b_inv = circ_inv(_circ(e.b, spec)).a
    return RElement(substitute(b_inv, g, spec), g, spec)


# -- convolution polynomials and the Lagrange analog ----------------------------


def conv_polys(a: Series, spec: ZeroPascalSpec, N: int | None = None) -> list:
    """``c_n(phi) = [x^n] sum_k phi^k / k! (log o a)^(k)`` as exact polynomials in ``phi``."""
    if a[0] != 1:
        raise ConstantTermNotOne("convolution polynomials need a_0 = 1")
    N = a.order if N is None else N
    L = circ_log(_circ(a, spec, N))
    polys = [ParamPolynomial.constant(1)] + [ParamPolynomial() for _ in range(N)]
    power = CircSeries.one(spec, N)
    for k in range(1, N + 1):
        power = circ_mul(power, L)
        if power.a.is_zero():
            break
        w = Fraction(1, math.factorial(k))
        for n in range(k, N + 1):
            if power.a[n]:
                polys[n] = polys[n] + ParamPolynomial.monomial(k, power.a[n] * w)
    return polys


def beta_family_from_polys(polys: list, beta, phi) -> Series:
    """``[x^n] = phi (c_n(t)/t)|_{t = phi + beta n}`` for ``n >= 1``; ``c_n(0) = 0`` makes the quotient exact."""
    beta, phi = as_fraction(beta), as_fraction(phi)
    out = [Fraction(1)]
    for n in range(1, len(polys)):
        out.append(phi * polys[n].divide_by_variable()(phi + beta * n))
    return Series(tuple(out))


def beta_family(a: Series, beta, phi, spec: ZeroPascalSpec, N: int | None = None) -> Series:
    """The series ``_(beta) a^(phi)``; ``beta = 0`` gives ``a^(phi)``."""
    if a[0] != 1:
        raise ConstantTermNotOne("beta families need a_0 = 1")
    N = a.order if N is None else N
    if as_fraction(beta) == 0:
        return circ_pow(_circ(a, spec, N), phi).a
    return beta_family_from_polys(conv_polys(a, spec, N), beta, phi)


def lagrange_inverse(d: Series, spec: ZeroPascalSpec, N: int | None = None) -> Series:
    """A series ``e`` with ``(1, d)_0 (1, e)_0 = I``: the ``beta = 1`` family of ``d^(-1)``."""
    if d[0] != 1:
        raise ConstantTermNotOne("Lagrange inverse needs d_0 = 1")
    N = d.order if N is None else N
    a = circ_inv(_circ(d, spec, N)).a
    return beta_family(a, 1, 1, spec, N)


# -- pseudo-involutions and unipotents ------------------------------------------


def is_pseudo_involution(e: RElement, N: int | None = None) -> bool:
    N = e.order if N is None else N
    return tri_mul(e.matrix(N), e.sign_conjugate().matrix(N)).is_identity()


def is_involution(e: RElement, N: int | None = None) -> bool:
    N = e.order if N is None else N
    M = e.matrix(N)
    return tri_mul(M, M).is_identity()


@dataclass(frozen=True)
class SqrtFactorization:
    """``(b, -a)_0 = S (1,-1)_0 S^{-1}`` with ``S = (b^(1/2), a^(1/2))_0``."""

    b_half: Series
    a_half: Series
    spec: ZeroPascalSpec
    order: int
    verified: bool

    @property
    def root(self) -> RElement:
        return RElement(self.b_half, self.a_half, self.spec)


def sqrt_factorization(b: Series, a: Series, spec: ZeroPascalSpec, N: int | None = None) -> SqrtFactorization:
    N = min(a.order, b.order) if N is None else N
    target = RElement(b, -a, spec)
    if not is_involution(target, N):
        raise NotInvolution("(b, -a)_0 is not an involution at this order")
    b_half = circ_pow(_circ(b, spec, N), Fraction(1, 2)).a
    a_half = circ_pow(_circ(a, spec, N), Fraction(1, 2)).a
    root = RElement(b_half, a_half, spec)
    flip = RElement(Series.one(N), Series.constant(-1, N), spec)
    R = root.matrix(N)
    product = tri_mul(tri_mul(R, flip.matrix(N)), tri_inv(R))
    return SqrtFactorization(b_half, a_half, spec, N, product == target.matrix(N))


def _require_unipotent(w: Series, q: int):
    if w[0] != 1:
        raise ConstantTermNotOne("unipotents have constant term 1")
    check_eta_support(w - 1, q)


def unipotent_mul(e1: RElement, e2: RElement) -> RElement:
    """``(w1, w2)_0 (w3, w4)_0 = (w1 o w3, w2 o w4)_0`` for unipotent ``w_i``."""
    if e1.spec != e2.spec:
        raise SpecMismatch("group elements over different specs")
    q = e1.spec.zero_base()
    for w in (e1.b, e1.a, e2.b, e2.a):
        _require_unipotent(w, q)
    spec = e1.spec
    N = min(e1.order, e2.order)
    return RElement(
        circ_mul(_circ(e1.b, spec, N), _circ(e2.b, spec, N)).a,
        circ_mul(_circ(e1.a, spec, N), _circ(e2.a, spec, N)).a,
        spec,
    )


# -- digit arithmetic -------------------------------------------------------------


@dataclass(frozen=True)
class DigitStats:
    q: int
    n: int
    digit_sum: int
    digit_factorial: int


def digit_stats(q: int, n: int) -> DigitStats:
    ds = digits(n, q)
    return DigitStats(q, n, sum(ds), reduce(lambda acc, d: acc * math.factorial(d), ds, 1))


def digit_sum(q: int, n: int) -> int:
    return sum(digits(n, q))


def t_binom(q: int, n: int, m: int) -> Fraction:
    """``(n)! / ((m)! (n-m)!)`` when no base-``q`` digit of ``m`` exceeds that of ``n``, else 0."""
    if m < 0 or m > n:
        return Fraction(0)
    dn, dm = digits(n, q), digits(m, q)
    dm += [0] * (len(dn) - len(dm))
    if any(j > i for i, j in zip(dn, dm)):
        return Fraction(0)
    return Fraction(digit_stats(q, n).digit_factorial,
                    digit_stats(q, m).digit_factorial * digit_stats(q, n - m).digit_factorial)


def q_epsilon(q: int, N: int) -> FractalSeries:
    """The fractal series with base ``[e^x]_q``; ``[x^n] = 1/(n)!``."""
    return FractalSeries(q, tuple(Fraction(1, math.factorial(i)) for i in range(q)), N)


def q_epsilon_power(q: int, phi, N: int) -> Series:
    """``[x^n] = phi^{{n}} / (n)!``."""
    phi = as_fraction(phi)
    return Series(tuple(_power(phi, digit_sum(q, n)) / digit_stats(q, n).digit_factorial for n in range(N + 1)))


def _power(base: Fraction, exponent: int) -> Fraction:
    # 0^0 = 1
    return Fraction(1) if exponent == 0 else base**exponent


def abel_a(q: int, beta, j: int) -> Fraction:
    """``beta (beta + j)^{{j} - 1}`` with the boundary value 1 at ``j = 0``."""
    if j == 0:
        return Fraction(1)
    beta = as_fraction(beta)
    return beta * _power(beta + j, digit_sum(q, j) - 1)


def abel_e(q: int, phi, j: int) -> Fraction:
    """``phi^{{j}}``."""
    return _power(as_fraction(phi), digit_sum(q, j))


@dataclass(frozen=True)
class AbelEntry:
    identity: str
    n: int
    lhs: Fraction
    rhs: Fraction

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json_obj(self) -> dict:
        return {"identity": self.identity, "n": self.n, "lhs": str(self.lhs), "rhs": str(self.rhs), "pass": self.passed}


@dataclass(frozen=True)
class AbelReport:
    q: int
    phi: Fraction
    beta: Fraction
    entries: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list:
        return [e for e in self.entries if not e.passed]

    def __bool__(self):
        return self.passed

    def to_json_obj(self) -> dict:
        return {
            "q": self.q,
            "phi": str(self.phi),
            "beta": str(self.beta),
            "pass": self.passed,
            "entries": [e.to_json_obj() for e in self.entries],
        }


def abel_entries(q: int, n: int, phi, beta) -> list:
    phi, beta = as_fraction(phi), as_fraction(beta)
    T = [t_binom(q, n, m) for m in range(n + 1)]
    ms = [m for m in range(n + 1) if T[m]]
    A, E = (lambda b, j: abel_a(q, b, j)), (lambda p, j: abel_e(q, p, j))
    return [
        AbelEntry("binomial-abel", n, A(phi + beta, n), sum((T[m] * A(phi, m) * A(beta, n - m) for m in ms), Fraction(0))),
        AbelEntry("abel-power", n, A(phi, n), sum((T[m] * E(phi, m) * A(m, n - m) for m in ms), Fraction(0))),
        AbelEntry("abel-inverse", n, E(phi, n), sum((T[m] * A(phi, m) * E(-m, n - m) for m in ms), Fraction(0))),
        AbelEntry("shifted-abel", n, E(phi + beta + n, n),
                  sum((T[m] * E(phi + m, m) * A(beta, n - m) for m in ms), Fraction(0))),
    ]


def special_case_entries(k: int, phi) -> list:
    """Base 2, ``n = 2^k - 1`` with ``k >= 1`` (all digits 1, so every digit binomial is 1)."""
    phi = as_fraction(phi)
    n = 2**k - 1
    s1 = Fraction(0)
    s2 = Fraction(0)
    for m in range(1, n + 1):
        # m n^{{n-m}-1} reads as 1 at m = n; the m = 0 terms vanish
        tail = Fraction(1) if m == n else m * _power(Fraction(n), digit_sum(2, n - m) - 1)
        s1 += _power(phi, digit_sum(2, m) - 1) * tail
        s2 += _power(phi + m, digit_sum(2, m) - 1) * _power(Fraction(-m), digit_sum(2, n - m))
    return [
        AbelEntry("base2-power-special", n, _power(phi + n, k - 1), s1),
        AbelEntry("base2-inverse-special", n, _power(phi, k - 1), s2),
    ]


def binomial_sum_entries(q: int, n: int) -> list:
    total = sum((t_binom(q, n, m) for m in range(n + 1)), Fraction(0))
    signed = sum((t_binom(q, n, m) * m * (-1) ** digit_sum(q, n - m) for m in range(n + 1)), Fraction(0))
    return [
        AbelEntry("digit-binomial-sum", n, total, Fraction(2 ** digit_sum(q, n))),
        AbelEntry("signed-first-moment", n, signed, Fraction(n if _is_power(q, n) else 0)),
    ]


def _is_power(q: int, n: int) -> bool:
    if n < 1:
        return False
    while n % q == 0:
        n //= q
    return n == 1


def verify_abel(q: int, n_max: int, phi, beta, special_k: int = 4, sums_to: int | None = None) -> AbelReport:
    """All Abel-type digit identities for ``0 <= n <= n_max``; base-2 special cases for ``k <= special_k``."""
    entries = []
    for n in range(n_max + 1):
        entries += abel_entries(q, n, phi, beta)
    if q == 2:
        for k in range(1, special_k + 1):
            entries += special_case_entries(k, phi)
    for n in range((n_max if sums_to is None else sums_to) + 1):
        entries += binomial_sum_entries(q, n)
    return AbelReport(q, as_fraction(phi), as_fraction(beta), tuple(entries))


# -- worked constructions ---------------------------------------------------------


def block_exp_polys(q: int, N: int) -> list:
    """Convolution polynomials of ``[e^x]_q e^{x^q}`` over ``Block(q, 0)``: ``c_{qk+i}(t) = t^{k+i} / (k! i!)``."""
    out = []
    for n in range(N + 1):
        k, i = divmod(n, q)
        out.append(ParamPolynomial.monomial(k + i, Fraction(1, math.factorial(k) * math.factorial(i))))
    return out


def block_exp_series(q: int, N: int) -> Series:
    """``h(x) = [e^x]_q e^{x^q}``."""
    return Series(tuple(Fraction(1, math.factorial(n // q) * math.factorial(n % q)) for n in range(N + 1)))


def exp_block_involution(dim: int = 9) -> LowerTriangular:
    """``(_(1)h^(2), _(1)h^(2))_0`` over ``Block(3, 0)`` for ``h = [e^x]_3 e^{x^3}``, on ``dim`` rows."""
    N = dim - 1
    spec = ZeroPascalSpec.of(Block(3, 0))
    h2 = beta_family_from_polys(block_exp_polys(3, N), 1, 2)
    return RElement(h2, h2, spec).matrix(N)


def exp_block_involution_element(dim: int = 9) -> RElement:
    N = dim - 1
    h2 = beta_family_from_polys(block_exp_polys(3, N), 1, 2)
    return RElement(h2, h2, ZeroPascalSpec.of(Block(3, 0)))
