"""Ordinary and generalized Riordan matrices, generalized Pascal matrices.

A generalized Riordan matrix is the conjugate ``|c|^{-1} (f, xg) |c|`` of an
ordinary one by the diagonal matrix of a group parameter ``c``; entry
``(n, m)`` of the result is ``c_m / c_n`` times the ordinary entry.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass, field
from fractions import Fraction
from typing import Sequence

from zeropascal.errors import (
    ConstraintViolation,
    IndexOutOfRange,
    InvalidSequence,
    InvalidSpec,
    ParameterMismatch,
)
from zeropascal.fps import Series, as_fraction, fps_compose, fps_hadamard, fps_mul, fps_pow, pochhammer
from zeropascal.triangle import LowerTriangular, tri_mul


@dataclass(frozen=True)
class GroupParameter:
    """Sequence ``c_0 = 1, c_1, c_2, ...`` of nonzero rationals.

    ``strict`` (the default) also enforces the normalization ``c_1 = 1``.
    The closed forms of some conjugation families are not normalized, so
    the family constructors pass ``strict=False``.
    """

    c: Series
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        if self.c[0] != 1:
            raise InvalidSequence("group parameter must have c_0 = 1")
        if self.c.order >= 1 and strict and self.c[1] != 1:
            raise InvalidSequence("group parameter must be normalized to c_1 = 1")
        for n, v in enumerate(self.c):
            if v == 0:
                raise InvalidSequence(f"group parameter has c_{n} = 0")

    @property
    def order(self) -> int:
        return self.c.order

    def __getitem__(self, n):
        return self.c[n]

    def with_order(self, order: int) -> "GroupParameter":
        return GroupParameter(self.c.with_order(order), strict=False)

    @classmethod
    def geometric(cls, order: int) -> "GroupParameter":
        """``1/(1-x)``: the parameter of the ordinary Riordan group."""
        return cls(Series.geometric(order))

    @classmethod
    def exponential(cls, order: int) -> "GroupParameter":
        """``e^x``: the parameter of the exponential Riordan group."""
        return cls(Series.exp(order))


@dataclass(frozen=True)
class BSequence:
    b: Series

    def __post_init__(self):
        if self.b[0] != 0:
            raise InvalidSequence("b-sequence must have b_0 = 0")
        for n in range(1, self.b.order + 1):
            if self.b[n] == 0:
                raise InvalidSequence(f"b-sequence has b_{n} = 0")

    @property
    def order(self) -> int:
        return self.b.order

    def factorial(self, n: int) -> Fraction:
        out = Fraction(1)
        for m in range(1, n + 1):
            out *= self.b[m]
        return out

    def binomial(self, n: int, m: int) -> Fraction:
        if m > n:
            return Fraction(0)
        return self.factorial(n) / (self.factorial(m) * self.factorial(n - m))


@dataclass(frozen=True)
class RiordanSpec:
    """``(f(x), x g(x))`` in the group with parameter ``parameter`` (ordinary if ``None``)."""

    f: Series
    g: Series
    parameter: GroupParameter | None = field(default=None)

    def __post_init__(self):
        if self.f[0] == 0:
            raise InvalidSpec("Riordan spec needs f_0 != 0")
        if self.g[0] == 0:
            raise InvalidSpec("Riordan spec needs g_0 != 0")

    @property
    def order(self) -> int:
        n = min(self.f.order, self.g.order)
        if self.parameter is not None:
            n = min(n, self.parameter.order)
        return n


def ordinary_matrix(f: Series, g: Series, N: int) -> LowerTriangular:
    """Column ``m`` is ``f(x) x^m g(x)^m``."""
    if min(f.order, g.order) < N:
        raise InvalidSpec(f"series must be known to order {N}")
    f, g = f.with_order(N), g.with_order(N)
    xg = Series.x(N) * g
    columns = []
    col = f
    for _ in range(N + 1):
        columns.append(col)
        col = fps_mul(col, xg)
    return LowerTriangular.from_columns(columns, N + 1)


def riordan_matrix(spec: RiordanSpec, N: int) -> LowerTriangular:
    ordinary = ordinary_matrix(spec.f, spec.g, N)
    if spec.parameter is None:
        return ordinary
    if spec.parameter.order < N:
        raise InvalidSpec(f"group parameter must be known to order {N}")
    return ordinary.conjugate_diagonal(spec.parameter.c.coeffs)


def _same_parameter(p1: GroupParameter | None, p2: GroupParameter | None) -> bool:
    if p1 is None or p2 is None:
        return p1 is None and p2 is None
    n = min(p1.order, p2.order)
    return p1.c.with_order(n) == p2.c.with_order(n)


def riordan_mul(s1: RiordanSpec, s2: RiordanSpec) -> RiordanSpec:
    """``(f1, x g1)(f2, x g2) = (f1 f2(x g1), x g1 g2(x g1))``.

    Conjugation by ``|c|`` is a group automorphism, so the same law holds
    inside every generalized Riordan group.
    """
    if not _same_parameter(s1.parameter, s2.parameter):
        raise ParameterMismatch("Riordan specs belong to different groups")
    N = min(s1.f.order, s1.g.order, s2.f.order, s2.g.order)
    xg1 = Series.x(N) * s1.g.with_order(N)
    f = fps_mul(s1.f, fps_compose(s2.f, xg1))
    g = fps_mul(s1.g, fps_compose(s2.g, xg1))
    return RiordanSpec(f, g, s1.parameter)


def gen_binomial(c: GroupParameter, n: int, m: int) -> Fraction:
    if n < 0 or m < 0 or n > c.order:
        raise IndexOutOfRange(f"({n},{m}) outside the known range of the parameter (order {c.order})")
    if m > n:
        return Fraction(0)
    return c[m] * c[n - m] / c[n]


def b_of_c(c: GroupParameter) -> BSequence:
    vals = [Fraction(0)] + [c[1] * c[n - 1] / c[n] for n in range(1, c.order + 1)]
    return BSequence(Series(tuple(vals)))


def c_of_b(b: BSequence) -> GroupParameter:
    if b.order >= 1 and b.b[1] != 1:
        raise InvalidSequence("b_1 must be 1 for a normalized group parameter")
    vals = [Fraction(1)]
    for n in range(1, b.order + 1):
        vals.append(vals[-1] / b.b[n])
    return GroupParameter(Series(tuple(vals)))


def pascal_matrix(c: GroupParameter, N: int) -> LowerTriangular:
    """``P_c``: entries ``c_m c_{n-m} / c_n``."""
    if c.order < N:
        raise InvalidSpec(f"group parameter must be known to order {N}")
    return LowerTriangular.from_function(lambda n, m: gen_binomial(c, n, m), N + 1)


# -- the six solution families of |c|^{-1} (f1, x g1) |c| = (f2, x g2) ------


def star_sequence(m: int, block: Sequence, cm, order: int) -> Series:
    """``c*``: ``c*_{km+i} = (c*_m)^k c*_i`` with free ``c*_0=1, c*_1..c*_{m-1}`` and ``c*_m``."""
    if m < 1:
        raise ConstraintViolation("period m must be positive")
    block = _block_values(m, block)
    cm = as_fraction(cm)
    return Series.from_function(lambda n: cm ** (n // m) * block[n % m], order)


def _block_values(m: int, block: Sequence) -> list:
    vals = [Fraction(1)] + [as_fraction(v) for v in block]
    if len(vals) != m:
        raise ConstraintViolation(f"period {m} needs {m - 1} free block values c_1..c_{m - 1}, got {len(vals) - 1}")
    if any(v == 0 for v in vals):
        raise ConstraintViolation("block values must be nonzero")
    return vals


def _nonzero(value, what):
    if as_fraction(value) == 0:
        raise ConstraintViolation(f"{what} must be nonzero")


def _avoid_negative_ratios(value, m: int, order: int, what: str):
    """Reject ``value = -n/m`` for any ``0 <= n <= order`` (a vanishing Pochhammer factor in range)."""
    v = as_fraction(value)
    for n in range(order + 1):
        if v == Fraction(-n, m):
            raise ConstraintViolation(f"{what} = -{n}/{m} zeroes a factor within the truncation range")


def family_parameter(k: int, order: int, **params) -> GroupParameter:
    """The group parameter of family ``k`` (1..6) of solutions of ``|c|^{-1} (f1, x g1) |c| = (f2, x g2)``.

    Common keywords: ``m`` (period), ``block`` (``c_1..c_{m-1}``), ``cm`` (``c_m``).
    Family-specific keywords: 2: ``phi, n0``; 3: ``n0, c_jump`` (the free value
    ``c_{n0+m}``); 4: ``alpha``; 5: ``alpha, beta``; 6: ``beta``.
    """
    m = int(params.get("m", 1))
    if m < 1:
        raise ConstraintViolation("period m must be positive")
    block = _block_values(m, params.get("block", ()))
    cm = as_fraction(params.get("cm", 1))
    _nonzero(cm, "c_m")

    if k == 1:
        c = star_sequence(m, block[1:], cm, order)
    elif k == 2:
        phi = as_fraction(params["phi"])
        n0 = int(params["n0"])
        _nonzero(phi, "phi")
        if n0 < 0:
            raise ConstraintViolation("n0 must be non-negative")
        star = star_sequence(m, block[1:], cm, order)
        if n0 == 0:
            c = Series.from_function(lambda n: 1 if n == 0 else phi * star[n], order)
        else:
            c = Series.from_function(lambda n: phi * star[n] if n == n0 else star[n], order)
    elif k == 3:
        n0 = int(params["n0"])
        if n0 <= 0:
            raise ConstraintViolation("family 3 needs n0 > 0")
        k0, i0 = divmod(n0, m)
        c_jump = as_fraction(params["c_jump"])
        _nonzero(c_jump, "c_{n0+m}")

        def coeff(n):
            kk, i = divmod(n, m)
            if i != i0 or kk <= k0:
                return cm**kk * block[i]
            return cm ** (kk - k0 - 1) * c_jump

        c = Series.from_function(coeff, order)
    elif k == 4:
        alpha = as_fraction(params["alpha"])
        _avoid_negative_ratios(alpha, m, order, "alpha")

        def coeff(n):
            kk, i = divmod(n, m)
            return (alpha * cm) ** kk * block[i] / pochhammer(alpha + Fraction(i, m), kk)

        c = Series.from_function(coeff, order)
    elif k == 5:
        alpha = as_fraction(params["alpha"])
        beta = as_fraction(params["beta"])
        if alpha == beta:
            raise ConstraintViolation("family 5 needs alpha != beta")
        _avoid_negative_ratios(alpha, m, order, "alpha")
        _avoid_negative_ratios(beta, m, order, "beta")

        def coeff(n):
            kk, i = divmod(n, m)
            r = Fraction(i, m)
            return pochhammer(beta + r, kk) / pochhammer(alpha + r, kk) * (alpha * cm / beta) ** kk * block[i]

        c = Series.from_function(coeff, order)
    elif k == 6:
        beta = as_fraction(params["beta"])
        _avoid_negative_ratios(beta, m, order + m, "beta")

        def coeff(n):
            kk, i = divmod(n, m)
            r = Fraction(i, m)
            return (beta + r) / (beta + kk + r) * ((beta + 1) * cm / beta) ** kk * block[i]

        c = Series.from_function(coeff, order)
    else:
        raise ConstraintViolation(f"there is no family {k}; families are numbered 1..6")
    return GroupParameter(c, strict=False)


@dataclass(frozen=True)
class FamilyCase:
    """Both sides of one instance of the conjugation equation ``(f1, x g1)_c = (f2, x g2)``."""

    family: int
    c: GroupParameter
    f1: Series
    g1: Series
    f2: Series
    g2: Series


def _one_plus(coef, m: int, order: int) -> Series:
    """``1 + coef * x^m``."""
    return Series.one(order) + Series.monomial(m, order, coef)


def family_case(k: int, order: int, **params) -> FamilyCase:
    """Parameter and the two Riordan pairs of the displayed identity of family ``k``.

    Beyond :func:`family_parameter` keywords, families 1, 2 and 6 take a series
    ``g`` (family 1 also ``f``), and families 3-5 take ``phi``; family 5 takes ``b``.
    """
    c = family_parameter(k, order, **params)
    m = int(params.get("m", 1))
    # the star value c*_m; it equals c_m except in family 2 with n0 in {0, m}
    cm = as_fraction(params.get("cm", 1))
    one = Series.one(order)
    if k == 1:
        f = params.get("f", Series.geometric(order))
        g = params.get("g", Series.geometric(order))
        f1, g1 = f.stretch(m, order), g.stretch(m, order)
        f2 = f.scale_argument(1 / cm).stretch(m, order)
        g2 = g.scale_argument(1 / cm).stretch(m, order)
    elif k == 2:
        g = params["g"]
        q = _leading_gap(g)
        n0 = int(params["n0"])
        if not n0 < q * m:
            raise ConstraintViolation(f"family 2 needs n0 < q*m = {q * m} (n0 = {n0})")
        gm = g.stretch(m, order)
        gm2 = g.scale_argument(1 / cm).stretch(m, order)
        f1, g1 = fps_pow(gm, -n0), gm
        f2, g2 = fps_pow(gm2, -n0), gm2
    elif k == 3:
        phi = as_fraction(params["phi"])
        n0 = int(params["n0"])
        left = _one_plus(phi, m, order)
        right = _one_plus(phi / cm, m, order)
        f1, g1 = fps_pow(left, Fraction(n0, m)), fps_pow(left, Fraction(-1, m))
        f2, g2 = fps_pow(right, Fraction(n0, m)), fps_pow(right, Fraction(-1, m))
    elif k == 4:
        phi = as_fraction(params["phi"])
        alpha = as_fraction(params["alpha"])
        f1 = Series.exp(order // m, phi / m).stretch(m, order)
        g1 = one
        right = _one_plus(-phi / (m * alpha * cm), m, order)
        f2, g2 = fps_pow(right, -alpha), fps_pow(right, Fraction(-1, m))
    elif k == 5:
        phi = as_fraction(params["phi"])
        alpha = as_fraction(params["alpha"])
        beta = as_fraction(params["beta"])
        b = as_fraction(params.get("b", m * beta))
        for n in range(order + 1):
            if b == -n:
                raise ConstraintViolation(f"family 5 needs b != -{n}")
        left = _one_plus(phi, m, order)
        f1, g1 = fps_pow(left, -b / m), fps_pow(left, Fraction(-1, m))
        gamma = 1 + (b + 1) * (beta - alpha) / (alpha * (1 + m * beta))
        if gamma == 0:
            raise ConstraintViolation("family 5 parameters give a degenerate exponent")
        right = _one_plus(phi * gamma / cm, m, order)
        f2, g2 = fps_pow(right, -b / (m * gamma)), fps_pow(right, Fraction(-1, m))
    elif k == 6:
        beta = as_fraction(params["beta"])
        g = params["g"]
        if g[0] != 1:
            raise ConstraintViolation("family 6 needs g(0) = 1")
        gm = g.stretch(m, order)
        f1, g1 = fps_pow(gm, m * beta), gm
        beta_star = (beta + 1) / beta
        inner = g.scale_argument(1 / (beta_star * cm)).stretch(m, order)
        xinner = (Series.x(order + 1) * Series.from_coeffs(inner.coeffs, order + 1)).derivative()
        f2 = fps_mul(xinner, fps_pow(inner, m * beta - 1))
        g2 = inner
    else:
        raise ConstraintViolation(f"there is no family {k}; families are numbered 1..6")
    return FamilyCase(k, c, f1, g1, f2, g2)


def _leading_gap(g: Series) -> int:
    """``q`` for ``g = 1 + g_q x^q + ...`` with ``g_q != 0``."""
    if g[0] != 1:
        raise ConstraintViolation("family 2 needs g(0) = 1")
    for n in range(1, g.order + 1):
        if g[n] != 0:
            return n
    raise ConstraintViolation("family 2 needs g != 1")


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    first_difference: tuple | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None

    def __bool__(self):
        return self.equal


def verify_equivalence(f1: Series, g1: Series, c: GroupParameter, f2: Series, g2: Series, N: int) -> EquivalenceReport:
    """Whether ``|c|^{-1} (f1, x g1) |c| = (f2, x g2)`` up to order ``N``."""
    lhs = riordan_matrix(RiordanSpec(f1, g1, c), N)
    rhs = riordan_matrix(RiordanSpec(f2, g2), N)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return EquivalenceReport(True)
    return EquivalenceReport(False, diff, lhs[diff], rhs[diff])


def verify_family(case: FamilyCase, N: int) -> EquivalenceReport:
    return verify_equivalence(case.f1, case.g1, case.c, case.f2, case.g2, N)


def membership_parameter(alpha, N: int) -> GroupParameter:
    """``c(x) = (1 + phi x)^{1/phi}`` with ``phi = -1/alpha``."""
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise ConstraintViolation("alpha must be nonzero")
    phi = -1 / alpha
    # c_n = prod_{j<n} (1 - j phi) / n!
    vals = [Fraction(1)]
    for n in range(1, N + 1):
        vals.append(vals[-1] * (1 - (n - 1) * phi) / n)
    for n, v in enumerate(vals):
        if v == 0:
            raise ConstraintViolation(f"alpha = {alpha} makes c_{n} = 0; the parameter is degenerate")
    return GroupParameter(Series(tuple(vals)))


def pascal_membership(alpha, N: int) -> bool:
    """Whether ``P = ((1+phi x)^{1/phi}, x/(1+phi x))_c`` with ``c = (1+phi x)^{1/phi}``."""
    c = membership_parameter(alpha, N)
    phi = -1 / as_fraction(alpha)
    g = Series.geometric(N, -phi)
    lhs = riordan_matrix(RiordanSpec(c.c, g, c), N)
    pascal = LowerTriangular.from_function(lambda n, m: math.comb(n, m), N + 1)
    return lhs == pascal


def hadamard_factorize(c: GroupParameter, qmax: int) -> dict:
    """``phi_q`` with ``b_n = prod_{q | n, 2 <= q <= qmax} phi_q`` for ``n <= qmax``."""
    if qmax > c.order:
        raise IndexOutOfRange(f"qmax {qmax} exceeds the parameter order {c.order}")
    b = b_of_c(c).b
    phis: dict = {}
    for q in range(2, qmax + 1):
        denom = Fraction(1)
        for d in range(2, q):
            if q % d == 0:
                denom *= phis[d]
        phis[q] = b[q] / denom
    return phis


def block_parameter(phi, q: int, order: int) -> GroupParameter:
    """``c(phi, q, x) = (1 + x + ... + x^{q-1}) / (1 - x^q/phi)``, the parameter of ``P_{phi,q}``."""
    phi = as_fraction(phi)
    if phi == 0:
        raise InvalidSequence("P_{0,q} has no group parameter; use a Block factor instead")
    return GroupParameter(Series.from_function(lambda n: phi ** -(n // q), order))


def hadamard_reconstruct(phis: dict, n: int) -> Fraction:
    out = Fraction(1)
    for q, v in phis.items():
        if n % q == 0:
            out *= v
    return out


def exponential_row_identity(f: Series, g: Series, phi, N: int) -> bool:
    """Rows ``s_n`` of ``(f, xg)_E`` satisfy ``sum s_n(phi) x^n / n! = f exp(phi x g)``."""
    phi = as_fraction(phi)
    mat = riordan_matrix(RiordanSpec(f, g, GroupParameter.exponential(N)), N)
    lhs = Series.from_function(lambda n: Series.from_coeffs(mat.rows[n]).evaluate(phi) / math.factorial(n), N)
    xg = Series.x(N) * g.with_order(N)
    rhs = fps_mul(f, fps_compose(Series.exp(N, phi), xg))
    return lhs == rhs


def hadamard_parameter(c: GroupParameter, g: GroupParameter) -> GroupParameter:
    return GroupParameter(fps_hadamard(c.c, g.c), strict=False)
