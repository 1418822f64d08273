"""Truncated formal power series with exact rational coefficients.

A :class:`Series` of order ``N`` stores the coefficients of ``x^0 .. x^N``.
Binary operations between series of different orders first truncate both to
the smaller order; nothing is ever silently extended.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from zeropascal.errors import (
    ConstantTermNotOne,
    NonzeroConstantInner,
    NonzeroConstantTerm,
    ZeroConstantTerm,
)

Number = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    return str(as_fraction(value))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    return Fraction(text)


def generalized_binomial(phi, n: int):
    """``phi (phi-1) ... (phi-n+1) / n!``; ``phi`` may be any ring element."""
    out = Fraction(1)
    for j in range(n):
        out = out * (phi - j)
    return out / math.factorial(n)


def pochhammer(alpha, k: int):
    """Rising factorial ``alpha (alpha+1) ... (alpha+k-1)``."""
    out = Fraction(1)
    for j in range(k):
        out = out * (alpha + j)
    return out


@dataclass(frozen=True)
class Series:
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a Series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, values: Iterable, order: int | None = None) -> "Series":
        vals = [as_fraction(v) for v in values]
        if order is None:
            order = max(len(vals) - 1, 0)
        vals = vals[: order + 1] + [Fraction(0)] * (order + 1 - len(vals))
        return cls(tuple(vals))

    @classmethod
    def from_function(cls, fn: Callable[[int], Number], order: int) -> "Series":
        return cls(tuple(as_fraction(fn(n)) for n in range(order + 1)))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value, order: int) -> "Series":
        return cls.from_coeffs([value], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.constant(1, order)

    @classmethod
    def monomial(cls, k: int, order: int, coeff=1) -> "Series":
        vals = [Fraction(0)] * (order + 1)
        if k <= order:
            vals[k] = as_fraction(coeff)
        return cls(tuple(vals))

    @classmethod
    def x(cls, order: int) -> "Series":
        return cls.monomial(1, order)

    @classmethod
    def geometric(cls, order: int, ratio=1) -> "Series":
        """``1/(1 - ratio*x)``."""
        r = as_fraction(ratio)
        return cls.from_function(lambda n: r**n, order)

    @classmethod
    def exp(cls, order: int, scale=1) -> "Series":
        """``exp(scale*x)``."""
        s = as_fraction(scale)
        return cls.from_function(lambda n: s**n / math.factorial(n), order)

    # -- basic access -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coeffs[n]
        if n < 0:
            raise IndexError(n)
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                terms.append(str(c))
            elif n == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{n}")
        body = " + ".join(terms) if terms else "0"
        return f"Series({body}; O(x^{self.order + 1}))"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def with_order(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to order {order}")
        return Series(self.coeffs[: order + 1])

    def block_truncate(self, q: int) -> "Series":
        return fps_block_truncate(self, q)

    # -- arithmetic ---------------------------------------------------------

    def _align(self, other: "Series"):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        if isinstance(other, Series):
            a, b = self._align(other)
            return Series(tuple(x + y for x, y in zip(a, b)))
        other = as_fraction(other)
        return Series((self.coeffs[0] + other,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self):
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return fps_mul(self, other)
        other = as_fraction(other)
        return Series(tuple(c * other for c in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Series):
            return fps_mul(self, fps_inv(other))
        other = as_fraction(other)
        return Series(tuple(c / other for c in self.coeffs))

    def derivative(self) -> "Series":
        """Formal derivative; the result has order ``N-1`` (order 0 for constants)."""
        if self.order == 0:
            return Series.zero(0)
        return Series(tuple(n * self.coeffs[n] for n in range(1, self.order + 1)))

    def xderivative(self) -> "Series":
        """``x a'(x)``, keeping the order."""
        return Series(tuple(n * c for n, c in enumerate(self.coeffs)))

    def integral(self) -> "Series":
        """Antiderivative with zero constant term, of order ``N+1``."""
        return Series((Fraction(0),) + tuple(c / (n + 1) for n, c in enumerate(self.coeffs)))

    def scale_argument(self, phi) -> "Series":
        """``a(phi*x)``."""
        phi = as_fraction(phi)
        return Series(tuple(c * phi**n for n, c in enumerate(self.coeffs)))

    def stretch(self, q: int, order: int) -> "Series":
        """``a(x^q)`` truncated at ``order``; needs ``self.order >= order // q``."""
        need = order // q
        if need > self.order:
            raise ValueError(f"a(x^{q}) to order {order} needs coefficients up to {need}")
        vals = [Fraction(0)] * (order + 1)
        for n in range(need + 1):
            vals[q * n] = self.coeffs[n]
        return Series(tuple(vals))

    def compress(self, q: int) -> "Series":
        """Inverse of :meth:`stretch`: keeps the coefficients at multiples of ``q``."""
        return Series(tuple(self.coeffs[q * n] for n in range(self.order // q + 1)))

    def evaluate(self, value):
        """Horner evaluation of the truncated polynomial."""
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def hadamard(self, other: "Series") -> "Series":
        return fps_hadamard(self, other)

    def compose(self, inner: "Series") -> "Series":
        return fps_compose(self, inner)

    # -- serialization ------------------------------------------------------

    def to_strings(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    @classmethod
    def from_strings(cls, items: Sequence[str], order: int | None = None) -> "Series":
        return cls.from_coeffs([parse_rational(s) for s in items], order)

    @classmethod
    def from_json(cls, text: str, order: int | None = None) -> "Series":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("series JSON must be an array of 'p/q' strings")
        return cls.from_strings([str(s) for s in data], order)


def fps_mul(a: Series, b: Series) -> Series:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = Fraction(0)
        for m in range(k + 1):
            if ac[m] and bc[k - m]:
                s += ac[m] * bc[k - m]
        out.append(s)
    return Series(tuple(out))


def fps_inv(a: Series) -> Series:
    if a[0] == 0:
        raise ZeroConstantTerm("series with zero constant term has no reciprocal")
    a0 = a[0]
    out = [1 / a0]
    for n in range(1, a.order + 1):
        s = Fraction(0)
        for m in range(1, n + 1):
            s += a.coeffs[m] * out[n - m]
        out.append(-s / a0)
    return Series(tuple(out))


def fps_compose(a: Series, h: Series) -> Series:
    """``a(h(x))`` by Horner's scheme; requires ``h(0) = 0``."""
    if h[0] != 0:
        raise NonzeroConstantInner("inner series must have zero constant term")
    n = min(a.order, h.order)
    h = h.with_order(n)
    out = Series.zero(n)
    for k in range(n, -1, -1):
        out = fps_mul(out, h) + a.coeffs[k]
    return out


def fps_log(a: Series) -> Series:
    """``log a`` for ``a(0) = 1`` via ``(log a)' = a'/a``."""
    if a[0] != 1:
        raise ConstantTermNotOne("logarithm needs constant term 1")
    if a.order == 0:
        return Series.zero(0)
    quotient = fps_mul(a.derivative(), fps_inv(a.with_order(a.order - 1)))
    return quotient.integral()


def fps_exp(b: Series) -> Series:
    """``exp b`` for ``b(0) = 0`` via ``n e_n = sum_k k b_k e_{n-k}``."""
    if b[0] != 0:
        raise NonzeroConstantTerm("exponential needs constant term 0")
    out = [Fraction(1)]
    for n in range(1, b.order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if b.coeffs[k]:
                s += k * b.coeffs[k] * out[n - k]
        out.append(s / n)
    return Series(tuple(out))


def fps_pow(a: Series, phi) -> Series:
    """``a^phi`` for ``a(0) = 1`` as the binomial series in ``a - 1``."""
    if a[0] != 1:
        raise ConstantTermNotOne("real powers need constant term 1")
    phi = as_fraction(phi)
    d = a - 1
    out = Series.one(a.order)
    term = Series.one(a.order)
    for n in range(1, a.order + 1):
        term = fps_mul(term, d)
        out = out + term * generalized_binomial(phi, n)
    return out


def fps_hadamard(a: Series, b: Series) -> Series:
    x, y = a._align(b)
    return Series(tuple(u * v for u, v in zip(x, y)))


def fps_block_truncate(a: Series, q: int) -> Series:
    if q < 1:
        raise ValueError("block size q must be positive")
    return Series(tuple(c if n < q else Fraction(0) for n, c in enumerate(a.coeffs)))


@dataclass(frozen=True)
class ParamPolynomial:
    """Polynomial in a formal scalar with rational coefficients, lowest degree first."""

    coeffs: tuple = ()

    def __post_init__(self):
        vals = [as_fraction(c) for c in self.coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "coeffs", tuple(vals))

    @classmethod
    def variable(cls) -> "ParamPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, value) -> "ParamPolynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "ParamPolynomial":
        return cls((0,) * k + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, value):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def _lift(self, other) -> "ParamPolynomial":
        return other if isinstance(other, ParamPolynomial) else ParamPolynomial((other,))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ParamPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return ParamPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return ParamPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return ParamPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of a polynomial are not polynomials")
        out = ParamPolynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, ParamPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ParamPolynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def divide_by_variable(self) -> "ParamPolynomial":
        """Exact division by the variable; requires a zero constant term."""
        if self.coeffs and self.coeffs[0] != 0:
            raise ValueError("polynomial with nonzero constant term is not divisible by its variable")
        return ParamPolynomial(self.coeffs[1:])

    def __str__(self):
        return self.format("phi")

    def format(self, symbol: str = "phi") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = symbol if k == 1 else f"{symbol}^{k}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
