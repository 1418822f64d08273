"""Block groups over ``P_{0,q}`` / ``P_{0,c_q(x)}`` and fractal series over ``P_{[0,q]}``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from zeropascal.errors import ClosureViolation, ConstantTermNotOne, InvalidSpec, SpecMismatch, ZeroConstantTerm
from zeropascal.fps import Series, as_fraction, fps_block_truncate, fps_log, fps_mul
from zeropascal.riordan import GroupParameter
from zeropascal.triangle import LowerTriangular, row_gf
from zeropascal.zero_pascal import Block, CircSeries, Fractal, ZeroPascalSpec, circ_mul, matrix_of, zero_cq_spec


def star_mul(a1: Series, a2: Series, c: GroupParameter) -> Series:
    """``a1 * a2 = |c|^{-1} (a1(c,x) a2(c,x))`` with ``a(c,x) = sum a_n c_n x^n``."""
    N = min(a1.order, a2.order, c.order)
    cc = c.c.with_order(N)
    prod = fps_mul(a1.with_order(N).hadamard(cc), a2.with_order(N).hadamard(cc))
    return Series(tuple(v / cn for v, cn in zip(prod.coeffs, cc.coeffs)))


def star_log(a: Series, c: GroupParameter) -> Series:
    """``log* a = |c|^{-1} log a(c,x)``."""
    N = min(a.order, c.order)
    cc = c.c.with_order(N)
    lg = fps_log(a.with_order(N).hadamard(cc))
    return Series(tuple(v / cn for v, cn in zip(lg.coeffs, cc.coeffs)))


@dataclass(frozen=True)
class BlockElement:
    """The matrix ``([b]_q a(x^q) | P_{0,q})``, or over ``P_{0,c_q(x)}`` when ``c`` is given.

    The realized series is exact through order ``q (a.order + 1) - 1``.
    """

    b: Series
    a: Series
    q: int
    c: GroupParameter | None = None

    def __post_init__(self):
        if self.q < 2:
            raise InvalidSpec("block period q must be at least 2")
        if self.b[0] == 0 or self.a[0] == 0:
            raise ZeroConstantTerm("block elements need b_0 != 0 and a_0 != 0")
        if self.b.order < self.q - 1:
            raise InvalidSpec(f"b must be known to order {self.q - 1}")
        object.__setattr__(self, "b", fps_block_truncate(self.b, self.q).with_order(self.q - 1))
        if self.c is not None and self.c.order < self.a.order:
            object.__setattr__(self, "a", self.a.with_order(self.c.order))

    @property
    def order(self) -> int:
        return self.q * (self.a.order + 1) - 1

    @property
    def spec(self) -> ZeroPascalSpec:
        if self.c is None:
            return ZeroPascalSpec.of(Block(self.q, 0))
        return zero_cq_spec(self.c.with_order(self.a.order), self.q, self.order)

    def series(self) -> Series:
        N = self.order
        return fps_mul(self.b.with_order(N) if self.b.order >= N else Series.from_coeffs(self.b.coeffs, N),
                       self.a.stretch(self.q, N))

    def circ(self) -> CircSeries:
        return CircSeries(self.series(), self.spec)

    def matrix(self, N: int | None = None) -> LowerTriangular:
        return matrix_of(self.circ(), N)

    @classmethod
    def identity(cls, q: int, outer_order: int, c: GroupParameter | None = None) -> "BlockElement":
        return cls(Series.one(q - 1), Series.one(outer_order), q, c)


def _same_block_spec(e1: BlockElement, e2: BlockElement) -> bool:
    if e1.q != e2.q:
        return False
    if (e1.c is None) != (e2.c is None):
        return False
    if e1.c is None:
        return True
    N = min(e1.a.order, e2.a.order)
    return e1.c.c.with_order(N) == e2.c.c.with_order(N)


def block_mul(e1: BlockElement, e2: BlockElement) -> BlockElement:
    """``[b1 b2]_q`` on the inner blocks; ``a1 a2`` (or ``a1 * a2`` when decorated) outside."""
    if not _same_block_spec(e1, e2):
        raise SpecMismatch("block elements over different specs")
    b = fps_block_truncate(fps_mul(e1.b, e2.b), e1.q)
    if e1.c is None:
        a = fps_mul(e1.a, e2.a)
    else:
        a = star_mul(e1.a, e2.a, e1.c)
    return BlockElement(b, a, e1.q, e1.c)


def block_log(e: BlockElement) -> CircSeries:
    """``[log b]_q + log a(x^q)``; with a parameter, ``|c_q|^{-1} log a(c, x^q)`` replaces the second term."""
    if e.b[0] != 1 or e.a[0] != 1:
        raise ConstantTermNotOne("block logarithm needs b_0 = a_0 = 1")
    N = e.order
    inner = Series.from_coeffs(fps_block_truncate(fps_log(e.b), e.q).coeffs, N)
    outer = fps_log(e.a) if e.c is None else star_log(e.a, e.c)
    return CircSeries(inner + outer.stretch(e.q, N), e.spec)


# -- fractal series -------------------------------------------------------------


def digits(n: int, q: int) -> list:
    """Base-``q`` digits of ``n``, least significant first (``[]`` for 0)."""
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


@dataclass(frozen=True)
class FractalSeries:
    """A series with ``a_{q^k n + i} = a_n a_i`` (``0 <= i < q^k``), stored by its first ``q`` coefficients."""

    q: int
    base_coeffs: tuple
    order: int

    def __post_init__(self):
        if self.q < 2:
            raise InvalidSpec("fractal base q must be at least 2")
        base = tuple(as_fraction(v) for v in self.base_coeffs)
        if len(base) > self.q:
            raise InvalidSpec(f"a fractal series over base {self.q} has {self.q} base coefficients")
        base = base + (Fraction(0),) * (self.q - len(base))
        if base[0] != 1:
            raise ConstantTermNotOne("fractal series need base coefficient a_0 = 1")
        object.__setattr__(self, "base_coeffs", base)

    def coefficient(self, n: int) -> Fraction:
        out = Fraction(1)
        for d in digits(n, self.q):
            out *= self.base_coeffs[d]
            if out == 0:
                break
        return out

    @property
    def spec(self) -> ZeroPascalSpec:
        return ZeroPascalSpec.of(Fractal(self.q, 0))

    def circ(self) -> CircSeries:
        return CircSeries(fractal_expand(self), self.spec)

    @classmethod
    def unit(cls, q: int, order: int) -> "FractalSeries":
        return cls(q, (1,), order)


def fractal_expand(fs: FractalSeries) -> Series:
    return Series(tuple(fs.coefficient(n) for n in range(fs.order + 1)))


def is_fractal(a: Series, q: int) -> bool:
    """Whether ``a_0 = 1`` and every coefficient is the digit product of the first ``q``."""
    if a[0] != 1:
        return False
    base = tuple(a[i] if i <= a.order else Fraction(0) for i in range(q))
    return fractal_expand(FractalSeries(q, base, a.order)) == a


def fractal_circ_mul(f1: FractalSeries, f2: FractalSeries) -> FractalSeries:
    if f1.q != f2.q:
        raise SpecMismatch("fractal series over different bases")
    N = min(f1.order, f2.order)
    prod = circ_mul(CircSeries(fractal_expand(f1).with_order(N), f1.spec),
                    CircSeries(fractal_expand(f2).with_order(N), f2.spec)).a
    base = tuple(prod[i] if i <= N else Fraction(0) for i in range(f1.q))
    out = FractalSeries(f1.q, base, N)
    if fractal_expand(out) != prod:
        raise ClosureViolation("circle product of fractal series is not fractal")
    return out


def fractal_log(fs: FractalSeries) -> Series:
    """``sum_{1 <= n < q} l_n sum_k x^{n q^k}`` with ``l_n = [x^n] log a(x)``."""
    q, N = fs.q, fs.order
    head = fps_log(Series.from_coeffs(fs.base_coeffs, q - 1))
    out = [Fraction(0)] * (N + 1)
    for n in range(1, q):
        p = n
        while p <= N:
            out[p] += head[n]
            p *= q
    return Series(tuple(out))


@dataclass(frozen=True)
class SubstitutionReport:
    q: int
    k: int
    order: int
    mismatches: tuple = field(default=())

    @property
    def equal(self) -> bool:
        return not self.mismatches

    def __bool__(self):
        return self.equal


def substitute_q_power(a: Series, b: Series, k: int, q: int, N: int) -> SubstitutionReport:
    """Compare ``[x^{q^k n}] a(x^{q^k}) o b(x^{q^k})`` with ``[x^n] a o b`` over ``Fractal(q, 0)``."""
    spec = ZeroPascalSpec.of(Fractal(q, 0))
    Q = q**k
    n_max = N // Q
    small = circ_mul(CircSeries(a.with_order(n_max), spec), CircSeries(b.with_order(n_max), spec)).a
    big = circ_mul(CircSeries(a.stretch(Q, N), spec), CircSeries(b.stretch(Q, N), spec)).a
    bad = []
    for n in range(N + 1):
        expected = small[n // Q] if n % Q == 0 else Fraction(0)
        if big[n] != expected:
            bad.append((n, big[n], expected))
    return SubstitutionReport(q, k, N, tuple(bad))


def row_gf_identity(fs: FractalSeries, N: int) -> bool:
    """``u_{q^k n + i}(x) = u_n(x^{q^k}) u_i(x)`` for the rows of ``(a | P_{[0,q]})``, all splits to ``N``."""
    M = matrix_of(CircSeries(fractal_expand(fs).with_order(N), fs.spec), N)
    rows = [row_gf(M, n) for n in range(N + 1)]
    q = fs.q
    Q = q
    while Q <= N:
        for r in range(Q, N + 1):
            n, i = divmod(r, Q)
            if fps_mul(rows[n].stretch(Q, N), rows[i]) != rows[r]:
                return False
        Q *= q
    return True


def kronecker_check(q: int) -> bool:
    """``P_{[0,q]}`` on ``q^2`` rows equals ``S (x) S`` for the all-ones ``q x q`` lower triangle ``S``."""
    from zeropascal.zero_pascal import zp_matrix

    M = zp_matrix(ZeroPascalSpec.of(Fractal(q, 0)), q * q - 1).dense()
    for r in range(q * q):
        for s in range(q * q):
            (n, i), (m, j) = divmod(r, q), divmod(s, q)
            if M[r][s] != (1 if n >= m and i >= j else 0):
                return False
    return True


def embedding_check(f1: FractalSeries, f2: FractalSeries, k: int) -> bool:
    """``a(x^{q^k})`` is fractal over base ``q^{k+1}`` and the embedding respects the circle product."""
    q = f1.q
    Q, big_q = q**k, q ** (k + 1)
    N = min(f1.order, f2.order)
    M = N * Q

    def lift(fs):
        s = fractal_expand(fs).with_order(N).stretch(Q, M)
        if not is_fractal(s, big_q):
            return None
        return FractalSeries(big_q, tuple(s[i] for i in range(big_q)), M)

    g1, g2 = lift(f1), lift(f2)
    if g1 is None or g2 is None:
        return False
    lhs = fractal_expand(fractal_circ_mul(g1, g2))
    rhs = fractal_expand(fractal_circ_mul(f1, f2)).stretch(Q, M)
    return lhs == rhs
