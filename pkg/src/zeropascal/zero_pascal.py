"""Special and zero generalized Pascal matrices and the circle-product algebra.

A :class:`ZeroPascalSpec` is a Hadamard product of primitive factors:

* ``Block(q, phi)``: entry ``1`` if ``n mod q >= m mod q`` else ``phi`` (``P_{phi,q}``).
* ``Fractal(q, phi)``: the product of ``Block(q^k, phi)`` over all ``k >= 1``
  (``P_{[phi,q]}``).  Factors with ``q^k > n`` are 1 on row ``n``, so only
  finitely many are evaluated.
* ``CParam(c)``: the generalized Pascal matrix ``P_c``.

Entries are evaluated directly from these rules; nothing infinite is built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from zeropascal.errors import (
    ConstantTermNotOne,
    IndexOutOfRange,
    InvalidSpec,
    NonzeroConstantTerm,
    SpecMismatch,
    SupportViolation,
    ZeroConstant,
)
from zeropascal.fps import ParamPolynomial, Series, as_fraction, fps_block_truncate, fps_mul, generalized_binomial
from zeropascal.riordan import GroupParameter
from zeropascal.triangle import LowerTriangular


def _scalar(phi):
    if isinstance(phi, ParamPolynomial):
        return phi
    return as_fraction(phi)


@dataclass(frozen=True)
class Block:
    q: int
    phi: object = Fraction(0)

    def __post_init__(self):
        if self.q < 2:
            raise InvalidSpec("Block factor needs q >= 2")
        object.__setattr__(self, "phi", _scalar(self.phi))

    def entry(self, n: int, m: int):
        return 1 if n % self.q >= m % self.q else self.phi

    def literal(self) -> str:
        return f"block:q={self.q},phi={self.phi}"


@dataclass(frozen=True)
class Fractal:
    q: int
    phi: object = Fraction(0)

    def __post_init__(self):
        if self.q < 2:
            raise InvalidSpec("Fractal factor needs q >= 2")
        object.__setattr__(self, "phi", _scalar(self.phi))

    def entry(self, n: int, m: int):
        out = 1
        p = self.q
        while p <= n:
            if n % p < m % p:
                if self.phi == 0:
                    return 0
                out = out * self.phi
            p *= self.q
        return out

    def literal(self) -> str:
        return f"fractal:q={self.q},phi={self.phi}"


@dataclass(frozen=True)
class CParam:
    c: GroupParameter

    def entry(self, n: int, m: int):
        if n > self.c.order:
            raise IndexOutOfRange(f"row {n} is beyond the known order {self.c.order} of the parameter")
        return self.c[m] * self.c[n - m] / self.c[n]

    def literal(self) -> str:
        return "cparam:" + ";".join(str(v) for v in self.c.c)


Factor = Union[Block, Fractal, CParam]


@dataclass(frozen=True)
class ZeroPascalSpec:
    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise InvalidSpec("a spec needs at least one factor")
        for f in factors:
            if not isinstance(f, (Block, Fractal, CParam)):
                raise InvalidSpec(f"unknown factor {f!r}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *factors) -> "ZeroPascalSpec":
        return cls(tuple(factors))

    @property
    def is_zero(self) -> bool:
        return any(isinstance(f, (Block, Fractal)) and f.phi == 0 for f in self.factors)

    @property
    def max_order(self) -> int | None:
        orders = [f.c.order for f in self.factors if isinstance(f, CParam)]
        return min(orders) if orders else None

    def zero_base(self) -> int:
        """The period ``q`` of the first ``Block(q, 0)`` or ``Fractal(q, 0)`` factor."""
        for f in self.factors:
            if isinstance(f, (Block, Fractal)) and f.phi == 0:
                return f.q
        raise InvalidSpec("spec has no Block(q,0) or Fractal(q,0) factor")

    def literal(self) -> str:
        return " * ".join(f.literal() for f in self.factors)

    def __str__(self):
        return self.literal()


def zp_entry(spec: ZeroPascalSpec, n: int, m: int):
    if n < 0 or m < 0:
        raise IndexOutOfRange(f"negative index ({n},{m})")
    if m > n:
        return Fraction(0)
    out = Fraction(1)
    for f in spec.factors:
        out = out * f.entry(n, m)
        if out == 0:
            return Fraction(0)
    return out


@lru_cache(maxsize=256)
def entry_table(spec: ZeroPascalSpec, N: int) -> tuple:
    """Rows ``0..N`` of the lower triangle of the spec's matrix, memoized."""
    return tuple(tuple(zp_entry(spec, n, m) for m in range(n + 1)) for n in range(N + 1))


def zp_matrix(spec: ZeroPascalSpec, N: int) -> LowerTriangular:
    if N < 0:
        raise ValueError("order must be non-negative")
    return LowerTriangular(entry_table(spec, N))


def fractal_first_column(q: int, N: int) -> Series:
    """Column 1 of ``P_{[q]} = P_{[q,q]}``: ``[x^n] = q^{v_q(n)}``."""
    if q < 2:
        raise InvalidSpec("q must be at least 2")
    spec = ZeroPascalSpec.of(Fractal(q, q))
    return Series((Fraction(0),) + tuple(zp_entry(spec, n, 1) for n in range(1, N + 1)))


def cq_parameter(c: GroupParameter, q: int, order: int) -> GroupParameter:
    """``c_q(x) = [1/(1-x)]_q c(x^q)``, so that ``[x^{qn+i}] c_q = c_n`` for ``0 <= i < q``."""
    if c.order < order // q:
        raise InvalidSpec(f"c must be known to order {order // q}")
    head = fps_block_truncate(Series.geometric(order), q)
    return GroupParameter(fps_mul(head, c.c.stretch(q, order)))


def zero_cq_spec(c: GroupParameter, q: int, order: int) -> ZeroPascalSpec:
    """``P_{0,c_q(x)} = P_{0,q} x P_{c_q(x)}``."""
    return ZeroPascalSpec.of(Block(q, 0), CParam(cq_parameter(c, q, order)))


def pauli_spec(order: int) -> ZeroPascalSpec:
    """``P_{g(-1,x)} = P_{0,2} x P_c`` with ``c = (1+x) e^{x^2}``."""
    c = Series.from_coeffs([1, 1], order) * Series.exp(order // 2).stretch(2, order)
    return ZeroPascalSpec.of(Block(2, 0), CParam(GroupParameter(c)))


# -- the algebra [[P0]] -------------------------------------------------------


@dataclass(frozen=True)
class CircSeries:
    """A series viewed as the matrix ``(a(x) | P0)`` with entries ``a_{n-m} (P0)_{n,m}``."""

    a: Series
    spec: ZeroPascalSpec

    def __post_init__(self):
        limit = self.spec.max_order
        if limit is not None and self.a.order > limit:
            object.__setattr__(self, "a", self.a.with_order(limit))

    @property
    def order(self) -> int:
        return self.a.order

    def __getitem__(self, n):
        return self.a[n]

    def _check(self, other: "CircSeries"):
        if self.spec != other.spec:
            raise SpecMismatch("circle product of series over different specs")

    def __add__(self, other):
        if isinstance(other, CircSeries):
            self._check(other)
            return CircSeries(self.a + other.a, self.spec)
        return CircSeries(self.a + other, self.spec)

    __radd__ = __add__

    def __neg__(self):
        return CircSeries(-self.a, self.spec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "CircSeries":
        return CircSeries(self.a * as_fraction(factor), self.spec)

    def __matmul__(self, other: "CircSeries") -> "CircSeries":
        return circ_mul(self, other)

    def with_order(self, order: int) -> "CircSeries":
        return CircSeries(self.a.with_order(order), self.spec)

    @classmethod
    def one(cls, spec: ZeroPascalSpec, order: int) -> "CircSeries":
        return cls(Series.one(order), spec)


def circ_mul(u: CircSeries, v: CircSeries) -> CircSeries:
    """``[x^n] a o b = sum_m (P0)_{n,m} a_{n-m} b_m``."""
    u._check(v)
    N = min(u.order, v.order)
    table = entry_table(u.spec, N)
    a, b = u.a.coeffs, v.a.coeffs
    out = []
    for n in range(N + 1):
        row = table[n]
        s = Fraction(0)
        for m in range(n + 1):
            if b[m] and a[n - m]:
                e = row[m]
                if e:
                    s += e * a[n - m] * b[m]
        out.append(s)
    return CircSeries(Series(tuple(out)), u.spec)


def circ_inv(u: CircSeries) -> CircSeries:
    """The series ``e`` with ``u o e = 1``; needs ``a_0 != 0``."""
    a0 = u.a[0]
    if a0 == 0:
        raise ZeroConstant("series with zero constant term is not invertible under the circle product")
    N = u.order
    table = entry_table(u.spec, N)
    a = u.a.coeffs
    out = [1 / a0]
    for n in range(1, N + 1):
        # the diagonal entry (n, n) of any spec is 1
        s = Fraction(0)
        for m in range(n):
            if a[n - m]:
                s += table[n][m] * a[n - m] * out[m]
        out.append(-s / a0)
    return CircSeries(Series(tuple(out)), u.spec)


def _integer_exponent(phi):
    if isinstance(phi, int):
        return phi
    phi = as_fraction(phi)
    return int(phi) if phi.denominator == 1 else None


def circ_pow(u: CircSeries, phi) -> CircSeries:
    """``a^(phi)``: integer powers by repeated product (any ``a_0``, nonzero if negative),
    other rational powers by the binomial series in ``a - 1`` (needs ``a_0 = 1``)."""
    k = _integer_exponent(phi)
    if k is not None:
        base = u if k >= 0 else circ_inv(u)
        k = abs(k)
        out = CircSeries.one(u.spec, u.order)
        while k:
            if k & 1:
                out = circ_mul(out, base)
            k >>= 1
            if k:
                base = circ_mul(base, base)
        return out
    if u.a[0] != 1:
        raise ConstantTermNotOne("non-integer circle powers need constant term 1")
    phi = as_fraction(phi)
    d = u - 1
    out = CircSeries.one(u.spec, u.order)
    term = CircSeries.one(u.spec, u.order)
    for n in range(1, u.order + 1):
        term = circ_mul(term, d)
        if term.a.is_zero():
            break
        out = out + term.scale(generalized_binomial(phi, n))
    return out


def circ_log(u: CircSeries) -> CircSeries:
    if u.a[0] != 1:
        raise ConstantTermNotOne("circle logarithm needs constant term 1")
    d = u - 1
    out = CircSeries(Series.zero(u.order), u.spec)
    term = CircSeries.one(u.spec, u.order)
    for n in range(1, u.order + 1):
        term = circ_mul(term, d)
        if term.a.is_zero():
            break
        out = out + term.scale(Fraction((-1) ** (n - 1), n))
    return out


def circ_exp(v: CircSeries) -> CircSeries:
    if v.a[0] != 0:
        raise NonzeroConstantTerm("circle exponential needs constant term 0")
    out = CircSeries.one(v.spec, v.order)
    term = CircSeries.one(v.spec, v.order)
    for n in range(1, v.order + 1):
        term = circ_mul(term, v).scale(Fraction(1, n))
        if term.a.is_zero():
            break
        out = out + term
    return out


def matrix_of(u: CircSeries, N: int | None = None) -> LowerTriangular:
    N = u.order if N is None else N
    if N > u.order:
        raise ValueError(f"series known only to order {u.order}")
    table = entry_table(u.spec, N)
    a = u.a.coeffs
    return LowerTriangular(tuple(tuple(a[n - m] * table[n][m] for m in range(n + 1)) for n in range(N + 1)))


def legal_residues(q: int) -> range:
    """Residues ``i`` mod ``q`` allowed in a square-zero series: ``q - floor(q/2) <= i < q``."""
    return range(q - q // 2, q)


def check_eta_support(coeffs: Series, q: int):
    allowed = set(legal_residues(q))
    for n, c in enumerate(coeffs):
        if c != 0 and n % q not in allowed:
            raise SupportViolation(
                f"coefficient of x^{n} is nonzero but {n} mod {q} = {n % q} is outside {sorted(allowed)}"
            )


def nilpotent_eta(spec: ZeroPascalSpec, coefficients) -> CircSeries:
    """A series supported on the legal residues of the spec's zero base; it squares to 0."""
    q = spec.zero_base()
    a = coefficients if isinstance(coefficients, Series) else Series.from_coeffs(coefficients)
    check_eta_support(a, q)
    return CircSeries(a, spec)


# -- spec literals -------------------------------------------------------------

_NAMED_SERIES = ("geom", "exp", "one")


def named_series(name: str, order: int) -> Series:
    if name == "geom":
        return Series.geometric(order)
    if name == "exp":
        return Series.exp(order)
    if name == "one":
        return Series.one(order)
    raise InvalidSpec(f"unknown named series {name!r}; known: {', '.join(_NAMED_SERIES)}")


def parse_coefficients(text: str, order: int, sep: str = ",") -> Series:
    """A named series or a ``sep``-separated list of ``p/q`` literals padded with zeros."""
    text = text.strip()
    if text in _NAMED_SERIES:
        return named_series(text, order)
    try:
        vals = [Fraction(t.strip()) for t in text.split(sep) if t.strip()]
    except ValueError as exc:
        raise InvalidSpec(f"cannot parse coefficient list {text!r}") from exc
    if not vals:
        raise InvalidSpec("empty coefficient list")
    return Series.from_coeffs(vals, order)


def _parse_options(parts: Sequence[str]) -> dict:
    opts = {}
    for p in parts:
        if "=" not in p:
            raise InvalidSpec(f"expected key=value, got {p!r}")
        key, value = p.split("=", 1)
        opts[key.strip()] = value.strip()
    return opts


def parse_factor(text: str, order: int) -> Factor:
    text = text.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("block", "fractal"):
        opts = _parse_options([p for p in rest.split(",") if p.strip()])
        if "q" not in opts:
            raise InvalidSpec(f"{kind} factor needs q=")
        phi_text = opts.get("phi", "0")
        phi = ParamPolynomial.variable() if phi_text == "phi" else Fraction(phi_text)
        cls = Block if kind == "block" else Fractal
        return cls(int(opts["q"]), phi)
    if kind == "cparam":
        head, *extra = rest.split(",")
        opts = _parse_options(extra)
        if "q" in opts:
            q = int(opts["q"])
            base = GroupParameter(parse_coefficients(head, order // q, sep=";"), strict=False)
            return CParam(cq_parameter(base, q, order))
        return CParam(GroupParameter(parse_coefficients(head, order, sep=";"), strict=False))
    raise InvalidSpec(f"unknown factor kind {kind!r}; expected block, fractal or cparam")


def parse_spec(text: str, order: int) -> ZeroPascalSpec:
    """Parse ``"block:q=2,phi=0 * fractal:q=2,phi=0 * cparam:exp"`` left to right."""
    parts = [p for p in text.split("*") if p.strip()]
    if not parts:
        raise InvalidSpec("empty spec literal")
    return ZeroPascalSpec(tuple(parse_factor(p, order) for p in parts))


def symbolic_entries(spec: ZeroPascalSpec, N: int) -> list:
    """Entries of the spec's matrix without coercion, so symbolic ``phi`` survives."""
    return [[zp_entry(spec, n, m) for m in range(n + 1)] for n in range(N + 1)]


def binomial_matrix(N: int) -> LowerTriangular:
    return LowerTriangular.from_function(lambda n, m: math.comb(n, m), N + 1)
