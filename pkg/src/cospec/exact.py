"""Exact rational linear algebra: dense matrices and characteristic polynomials.

Scalars are :class:`fractions.Fraction`; nothing here ever touches a float.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

Rational = Fraction


def rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floating-point input is not exact; pass a Fraction or 'num/den' string")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _object_array(rows: Sequence[Sequence]) -> np.ndarray:
    data = [[rational(v) for v in row] for row in rows]
    arr = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        if len(row) != arr.shape[1]:
            raise ValueError("ragged matrix rows")
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


class ExactMatrix:
    """Dense rows x cols matrix of Fractions (immutable)."""

    __slots__ = ("_a",)

    def __init__(self, rows: Sequence[Sequence] | np.ndarray):
        if isinstance(rows, np.ndarray):
            if rows.ndim != 2:
                raise ValueError("ExactMatrix needs a 2-d array")
            arr = np.empty(rows.shape, dtype=object)
            for idx, v in np.ndenumerate(rows):
                arr[idx] = rational(v)
        else:
            arr = _object_array(rows)
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("ExactMatrix must have positive dimensions")
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls([[0] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        return cls([[1] * (rows if cols is None else cols) for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def array(self) -> np.ndarray:
        """Read-only object array of Fractions."""
        return self._a

    def __getitem__(self, idx) -> Fraction:
        return self._a[idx]

    def tolist(self) -> list[list[Fraction]]:
        return self._a.tolist()

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self._a.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.shape, tuple(self._a.flat)))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix(self._a + other._a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ExactMatrix(self._a - other._a)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(self._a * rational(c))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self._a[i, i] for i in range(self.rows)), Fraction(0))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self._a.tolist())
        return f"ExactMatrix([{body}])"


def mat_mul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    # integer product over a common denominator: far cheaper than Fraction dot
    na, da = _integer_form(A)
    nb, db = _integer_form(B)
    out = na.dot(nb)
    den = da * db
    frac = np.empty(out.shape, dtype=object)
    for idx, x in np.ndenumerate(out):
        frac[idx] = Fraction(x, den)
    return ExactMatrix(frac)


def _integer_form(M: ExactMatrix):
    """(N, d) with M = N / d, N an object array of Python ints."""
    a = M.array()
    d = math.lcm(1, *(f.denominator for f in a.flat))
    num = np.empty(a.shape, dtype=object)
    for idx, f in np.ndenumerate(a):
        num[idx] = f.numerator * (d // f.denominator)
    return num, d


def is_orthogonal(Q: ExactMatrix) -> bool:
    if Q.rows != Q.cols:
        return False
    return mat_mul(Q, Q.T) == ExactMatrix.identity(Q.rows)


def permutation_matrix(perm: Sequence[int]) -> ExactMatrix:
    """Matrix P with P[perm[j], j] = 1 (0-based), i.e. P e_j = e_perm[j]."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    rows = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return ExactMatrix(rows)


@dataclass(frozen=True)
class Polynomial:
    """Exact polynomial in lambda; ``coefficients[i]`` multiplies lambda**i."""

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = [rational(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_json(self) -> str:
        return json.dumps([rational_str(c) for c in self.coefficients])

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls(tuple(Fraction(s) for s in json.loads(text)))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "λ" if i == 1 else f"λ^{i}"
                body = power if mag == 1 else f"{mag}·{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_equal(p: Polynomial, q: Polynomial) -> bool:
    return Polynomial(p.coefficients).coefficients == Polynomial(q.coefficients).coefficients


def char_poly(M: ExactMatrix) -> Polynomial:
    """det(lambda*I - M), exactly.

    M = B/d with B integral; the Faddeev-LeVerrier recurrence
    N_0 = I, c_{n-j} = -tr(B N_{j-1}) / j, N_j = B N_{j-1} + c_{n-j} I
    stays in the integers for B, and c_i(M) = c_i(B) * d**(i - n).
    """
    if M.rows != M.cols:
        raise ValueError(f"characteristic polynomial of a non-square {M.shape} matrix")
    n = M.rows
    fr = M.array()
    d = math.lcm(*(f.denominator for f in fr.flat))
    B = np.empty((n, n), dtype=object)
    eye = np.empty((n, n), dtype=object)
    for idx, f in np.ndenumerate(fr):
        B[idx] = f.numerator * (d // f.denominator)
        eye[idx] = int(idx[0] == idx[1])
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    N = eye
    for j in range(1, n + 1):
        BN = B.dot(N)
        c, rem = divmod(-sum(BN[i, i] for i in range(n)), j)
        assert rem == 0, "Faddeev-LeVerrier trace not divisible"
        coeffs[n - j] = c
        N = BN + eye * c
    return Polynomial(tuple(Fraction(c, d ** (n - i)) for i, c in enumerate(coeffs)))
