"""Finite truncations of infinite lower-triangular matrices over the rationals.

Only the lower triangle is stored: ``rows[n]`` holds the entries ``(n, 0..n)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from zeropascal.errors import DimMismatch, IndexOutOfRange, NonUnitDiagonal, SingularDiagonal
from zeropascal.fps import Series, as_fraction, format_rational, generalized_binomial, parse_rational


@dataclass(frozen=True)
class LowerTriangular:
    rows: tuple

    def __post_init__(self):
        if len(self.rows) == 0:
            raise ValueError("a LowerTriangular matrix needs dim >= 1")
        rows = []
        for n, row in enumerate(self.rows):
            row = tuple(row)
            if len(row) != n + 1:
                raise ValueError(f"row {n} must hold exactly {n + 1} entries, got {len(row)}")
            rows.append(tuple(as_fraction(v) for v in row))
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_function(cls, fn: Callable[[int, int], object], dim: int) -> "LowerTriangular":
        return cls(tuple(tuple(fn(n, m) for m in range(n + 1)) for n in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> "LowerTriangular":
        return cls.from_function(lambda n, m: 1 if n == m else 0, dim)

    @classmethod
    def zero(cls, dim: int) -> "LowerTriangular":
        return cls.from_function(lambda n, m: 0, dim)

    @classmethod
    def diagonal(cls, values: Sequence) -> "LowerTriangular":
        vals = list(values)
        return cls.from_function(lambda n, m: vals[n] if n == m else 0, len(vals))

    @classmethod
    def from_columns(cls, columns: Sequence[Series], dim: int) -> "LowerTriangular":
        """Matrix whose column ``m`` has generating function ``columns[m]``."""
        return cls.from_function(lambda n, m: columns[m][n], dim)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence]) -> "LowerTriangular":
        dim = len(dense)
        for n, row in enumerate(dense):
            for m in range(n + 1, len(row)):
                if as_fraction(row[m]) != 0:
                    raise ValueError(f"entry ({n},{m}) above the diagonal is nonzero")
        return cls(tuple(tuple(dense[n][m] for m in range(n + 1)) for n in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, index):
        n, m = index
        if not (0 <= n < self.dim and 0 <= m < self.dim):
            raise IndexOutOfRange(f"({n},{m}) outside a {self.dim}x{self.dim} matrix")
        return self.rows[n][m] if m <= n else Fraction(0)

    def truncate(self, dim: int) -> "LowerTriangular":
        if dim > self.dim:
            raise ValueError("cannot enlarge a truncated matrix")
        return LowerTriangular(self.rows[:dim])

    def dense(self) -> list:
        return [list(row) + [Fraction(0)] * (self.dim - n - 1) for n, row in enumerate(self.rows)]

    def diagonal_entries(self) -> list:
        return [row[-1] for row in self.rows]

    def first_difference(self, other: "LowerTriangular"):
        """First ``(n, m)`` in row-major order where the matrices differ, or ``None``."""
        if self.dim != other.dim:
            raise DimMismatch(f"{self.dim} != {other.dim}")
        for n in range(self.dim):
            for m in range(n + 1):
                if self.rows[n][m] != other.rows[n][m]:
                    return (n, m)
        return None

    def __add__(self, other: "LowerTriangular") -> "LowerTriangular":
        _check_dims(self, other)
        return LowerTriangular(tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "LowerTriangular") -> "LowerTriangular":
        return self + other.scale(-1)

    def scale(self, factor) -> "LowerTriangular":
        f = as_fraction(factor)
        return LowerTriangular(tuple(tuple(v * f for v in row) for row in self.rows))

    def __matmul__(self, other: "LowerTriangular") -> "LowerTriangular":
        return tri_mul(self, other)

    def is_identity(self) -> bool:
        return self == LowerTriangular.identity(self.dim)

    def conjugate_diagonal(self, diag: Sequence) -> "LowerTriangular":
        """``D^{-1} A D`` for ``D = diag(diag)``: entry ``(n,m)`` becomes ``a_nm d_m / d_n``."""
        d = [as_fraction(v) for v in diag[: self.dim]]
        if len(d) < self.dim:
            raise DimMismatch("diagonal is shorter than the matrix")
        return LowerTriangular(
            tuple(tuple(v * d[m] / d[n] for m, v in enumerate(row)) for n, row in enumerate(self.rows))
        )

    def apply(self, a: Series) -> Series:
        """Matrix times the column vector of coefficients of ``a``."""
        n = min(self.dim - 1, a.order)
        return Series(tuple(sum((self.rows[k][j] * a[j] for j in range(k + 1)), Fraction(0)) for k in range(n + 1)))

    # -- export -------------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {"dim": self.dim, "rows": [[format_rational(v) for v in row] for row in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str) -> "LowerTriangular":
        data = json.loads(text)
        rows = tuple(tuple(parse_rational(str(v)) for v in row) for row in data["rows"])
        if len(rows) != data["dim"]:
            raise ValueError("dim does not match the number of rows")
        return cls(rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.dense():
            writer.writerow([format_rational(v) for v in row])
        return buf.getvalue()

    def to_pretty(self, formatter: Callable[[object], str] = format_rational) -> str:
        cells = [[formatter(v) for v in row] for row in self.dense()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _check_dims(a: LowerTriangular, b: LowerTriangular):
    if a.dim != b.dim:
        raise DimMismatch(f"dimensions differ: {a.dim} and {b.dim}")


def tri_mul(a: LowerTriangular, b: LowerTriangular) -> LowerTriangular:
    _check_dims(a, b)
    ar, br = a.rows, b.rows
    out = []
    for n in range(a.dim):
        row_a = ar[n]
        row = []
        for m in range(n + 1):
            s = Fraction(0)
            for k in range(m, n + 1):
                x = row_a[k]
                if x:
                    y = br[k][m]
                    if y:
                        s += x * y
            row.append(s)
        out.append(tuple(row))
    return LowerTriangular(tuple(out))


def tri_inv(a: LowerTriangular) -> LowerTriangular:
    """Inverse by forward substitution, column by column."""
    diag = a.diagonal_entries()
    if any(d == 0 for d in diag):
        raise SingularDiagonal("a zero diagonal entry makes the matrix singular")
    dim = a.dim
    inv = [[Fraction(0)] * (n + 1) for n in range(dim)]
    for m in range(dim):
        inv[m][m] = 1 / diag[m]
        for n in range(m + 1, dim):
            s = Fraction(0)
            row = a.rows[n]
            for k in range(m, n):
                if row[k] and inv[k][m]:
                    s += row[k] * inv[k][m]
            inv[n][m] = -s / diag[n]
    return LowerTriangular(tuple(tuple(r) for r in inv))


def tri_hadamard(a: LowerTriangular, b: LowerTriangular) -> LowerTriangular:
    _check_dims(a, b)
    return LowerTriangular(tuple(tuple(x * y for x, y in zip(r, s)) for r, s in zip(a.rows, b.rows)))


def _require_unit_diagonal(a: LowerTriangular):
    if any(d != 1 for d in a.diagonal_entries()):
        raise NonUnitDiagonal("matrix functions are defined here only for unit-diagonal matrices")


def _nilpotent_series(nil: LowerTriangular, weights) -> LowerTriangular:
    """``sum_k weights[k] * nil^k`` for ``k = 0..dim-1``; ``nil`` is strictly lower."""
    dim = nil.dim
    out = LowerTriangular.identity(dim).scale(weights[0])
    power = LowerTriangular.identity(dim)
    for k in range(1, dim):
        power = tri_mul(power, nil)
        if weights[k]:
            out = out + power.scale(weights[k])
    return out


def tri_log(a: LowerTriangular) -> LowerTriangular:
    _require_unit_diagonal(a)
    nil = a - LowerTriangular.identity(a.dim)
    weights = [Fraction(0)] + [Fraction((-1) ** (k - 1), k) for k in range(1, a.dim)]
    return _nilpotent_series(nil, weights)


def tri_pow(a: LowerTriangular, phi) -> LowerTriangular:
    _require_unit_diagonal(a)
    phi = as_fraction(phi)
    nil = a - LowerTriangular.identity(a.dim)
    weights = [generalized_binomial(phi, k) for k in range(a.dim)]
    return _nilpotent_series(nil, weights)


def tri_exp(a: LowerTriangular) -> LowerTriangular:
    """Exponential of a strictly lower-triangular matrix."""
    if any(d != 0 for d in a.diagonal_entries()):
        raise ValueError("exponential is implemented for strictly lower-triangular matrices")
    weights = [Fraction(1)]
    for k in range(1, a.dim):
        weights.append(weights[-1] / k)
    return _nilpotent_series(a, weights)


def row_gf(a: LowerTriangular, n: int) -> Series:
    if not 0 <= n < a.dim:
        raise IndexOutOfRange(f"row {n} outside dim {a.dim}")
    return Series.from_coeffs(a.rows[n], a.dim - 1)


def col_gf(a: LowerTriangular, n: int) -> Series:
    if not 0 <= n < a.dim:
        raise IndexOutOfRange(f"column {n} outside dim {a.dim}")
    return Series(tuple(a.rows[k][n] if k >= n else Fraction(0) for k in range(a.dim)))
