"""Dense exact tensors and the multilinear operations on them.

A :class:`Tensor` of order k and dimension n stores an integer numerator array
of shape ``(n,) * k`` over one positive common denominator.  Contractions run
on Python integers (numpy object arrays), which keeps them exact and far
cheaper than contracting arrays of Fractions.  Tensor indices are 0-based;
``adjacency_tensor`` puts vertex ``v`` at index ``v - 1``.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from .exact import ExactMatrix, rational, rational_str
from .hypergraph import Hypergraph

MAX_ENTRIES = 10**7

ExactVector = tuple[Fraction, ...]


class EigenMode(str, Enum):
    H = "H-eigen"
    E = "E-eigen"


def _check_size(order: int, dim: int) -> None:
    if order < 1 or dim < 1:
        raise ValueError(f"tensor order and dimension must be positive, got {order}, {dim}")
    if dim**order > MAX_ENTRIES:
        raise ValueError(f"dense tensor with {dim}^{order} entries exceeds the {MAX_ENTRIES} limit")


def _int_zeros(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(0)
    return arr


class Tensor:
    """Order-k, dimension-n tensor of exact rationals (immutable)."""

    __slots__ = ("_num", "_den")

    def __init__(self, numerators: np.ndarray, denominator: int = 1):
        num = np.asarray(numerators, dtype=object)
        if num.ndim < 1 or len(set(num.shape)) != 1:
            raise ValueError(f"tensor must be hypercubic, got shape {num.shape}")
        _check_size(num.ndim, num.shape[0])
        if denominator == 0:
            raise ZeroDivisionError("zero tensor denominator")
        num = np.vectorize(int, otypes=[object])(num) if num.size else num
        den = int(denominator)
        if den < 0:
            num, den = -num, -den
        g = math.gcd(den, *num.flat)
        if g > 1:
            num = num // g
            den //= g
        num.setflags(write=False)
        self._num = num
        self._den = den

    @classmethod
    def from_fractions(cls, entries: np.ndarray | Sequence) -> "Tensor":
        arr = np.asarray(entries, dtype=object)
        fr = np.vectorize(rational, otypes=[object])(arr)
        den = math.lcm(*(f.denominator for f in fr.flat)) if fr.size else 1
        num = np.vectorize(lambda f: f.numerator * (den // f.denominator), otypes=[object])(fr)
        return cls(num, den)

    @classmethod
    def zeros(cls, order: int, dim: int) -> "Tensor":
        _check_size(order, dim)
        return cls(_int_zeros((dim,) * order))

    @classmethod
    def from_matrix(cls, M: ExactMatrix) -> "Tensor":
        if M.rows != M.cols:
            raise ValueError("only square matrices are order-2 tensors")
        return cls.from_fractions(M.array())

    @classmethod
    def from_vector(cls, x: Sequence) -> "Tensor":
        return cls.from_fractions(list(x))

    @property
    def order(self) -> int:
        return self._num.ndim

    @property
    def dim(self) -> int:
        return self._num.shape[0]

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, idx) -> Fraction:
        return Fraction(self._num[tuple(idx)], self._den)

    def entries(self) -> np.ndarray:
        """Object array of Fractions."""
        return np.vectorize(lambda v: Fraction(v, self._den), otypes=[object])(self._num)

    def nonzero(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Sorted (0-based index, value) pairs of the nonzero entries."""
        return [(idx, Fraction(v, self._den)) for idx, v in np.ndenumerate(self._num) if v != 0]

    def to_matrix(self) -> ExactMatrix:
        if self.order != 2:
            raise ValueError("only order-2 tensors are matrices")
        return ExactMatrix(self.entries())

    def to_vector(self) -> ExactVector:
        if self.order != 1:
            raise ValueError("only order-1 tensors are vectors")
        return tuple(Fraction(v, self._den) for v in self._num)

    def scale(self, c) -> "Tensor":
        c = rational(c)
        return Tensor(self._num * c.numerator, self._den * c.denominator)

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same_shape(other)
        return Tensor(self._num * other._den + other._num * self._den, self._den * other._den)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + other.scale(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self._num.shape == other._num.shape
            and self._den == other._den
            and bool(np.all(self._num == other._num))
        )

    def __hash__(self):
        return hash((self._num.shape, self._den, tuple(self._num.flat)))

    def __repr__(self):
        return f"Tensor(order={self.order}, dim={self.dim}, nnz={len(self.nonzero())})"

    def _check_same_shape(self, other: "Tensor") -> None:
        if self._num.shape != other._num.shape:
            raise ValueError(f"shape mismatch {self._num.shape} vs {other._num.shape}")


def tensor_dump(A: Tensor) -> str:
    """Sparse debug listing, one ``(i1,...,ik) = num/den`` line per nonzero, 1-based."""
    lines = []
    for idx, value in A.nonzero():
        label = ",".join(str(i + 1) for i in idx)
        lines.append(f"({label}) = {rational_str(value)}")
    return "\n".join(lines) + ("\n" if lines else "")


def adjacency_tensor(G: Hypergraph) -> Tensor:
    """Entries 1/(k-1)! at every permutation of every edge, zero elsewhere."""
    _check_size(G.k, G.n)
    num = _int_zeros((G.n,) * G.k)
    for e in G.edges:
        for p in permutations(v - 1 for v in e):
            num[p] = 1
    return Tensor(num, math.factorial(G.k - 1))


def unit_tensor(k: int, n: int) -> Tensor:
    _check_size(k, n)
    num = _int_zeros((n,) * k)
    for i in range(n):
        num[(i,) * k] = 1
    return Tensor(num)


def _integer_matrix(Q: ExactMatrix) -> tuple[np.ndarray, int]:
    arr = Q.array()
    den = math.lcm(*(f.denominator for f in arr.flat))
    num = np.empty(arr.shape, dtype=object)
    for idx, f in np.ndenumerate(arr):
        num[idx] = f.numerator * (den // f.denominator)
    return num, den


def shao_product(A: Tensor, B: Tensor) -> Tensor:
    """General product of an order-m (m >= 2) and an order-k tensor.

    c[i, a_1, ..., a_{m-1}] = sum over i_2..i_m of
    a[i, i_2, ..., i_m] * b[i_2, a_1] * ... * b[i_m, a_{m-1}],
    each a_s a multi-index in [n]^(k-1); the result has order (m-1)(k-1)+1.
    """
    if A.order < 2:
        raise ValueError("left factor of the product must have order >= 2")
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch {A.dim} vs {B.dim}")
    n, m, k = A.dim, A.order, B.order
    out_order = (m - 1) * (k - 1) + 1
    _check_size(out_order, n)
    b = B.numerators.reshape(n, n ** (k - 1))
    c = A.numerators
    for _ in range(m - 1):
        # contracted axis 1 is always the next i_s; the new index lands last
        c = np.tensordot(c, b, axes=([1], [0]))
    return Tensor(c.reshape((n,) * out_order), A.denominator * B.denominator ** (m - 1))


def sandwich(Q: ExactMatrix, A: Tensor) -> Tensor:
    """Q A Q^T: (Q A Q^T)[i_1..i_k] = sum_j a[j_1..j_k] q[i_1,j_1] ... q[i_k,j_k].

    Evaluated as k successive single-mode contractions.
    """
    if A.order < 2:
        raise ValueError("sandwich needs a tensor of order >= 2")
    if Q.rows != Q.cols or Q.rows != A.dim:
        raise ValueError(f"matrix {Q.shape} does not match tensor dimension {A.dim}")
    q, qden = _integer_matrix(Q)
    t = A.numerators
    for axis in range(A.order):
        t = np.moveaxis(np.tensordot(q, t, axes=([1], [axis])), 0, axis)
    return Tensor(t, A.denominator * qden**A.order)


def is_symmetric(A: Tensor) -> bool:
    num = A.numerators
    return all(bool(np.all(num == np.swapaxes(num, s, s + 1))) for s in range(A.order - 1))


def preserves_unit_tensor(Q: ExactMatrix, k: int) -> bool:
    if Q.rows != Q.cols:
        return False
    identity = unit_tensor(k, Q.rows)
    return sandwich(Q, identity) == identity


def tensor_apply(A: Tensor, x: Sequence) -> ExactVector:
    """(A x)_i = sum a[i, i_2..i_k] x_{i_2} ... x_{i_k}."""
    if A.order < 2:
        raise ValueError("A x needs a tensor of order >= 2")
    if len(x) != A.dim:
        raise ValueError(f"vector length {len(x)} does not match dimension {A.dim}")
    return shao_product(A, Tensor.from_vector(x)).to_vector()


def eigenpair_residual(A: Tensor, lam, x: Sequence, mode: EigenMode | str = EigenMode.H):
    """Residual of a claimed eigenpair and whether it vanishes exactly.

    H-mode: A x - lam * x^[k-1] (entrywise power).  E-mode: A x - lam * x,
    with x^T x = 1 enforced.
    """
    mode = EigenMode(mode)
    lam = rational(lam)
    x = tuple(rational(v) for v in x)
    if not any(x):
        raise ValueError("eigenvector must be nonzero")
    if mode is EigenMode.E and sum(v * v for v in x) != 1:
        raise ValueError("E-eigenvector must satisfy x^T x = 1")
    ax = tensor_apply(A, x)
    power = A.order - 1 if mode is EigenMode.H else 1
    residual = tuple(a - lam * v**power for a, v in zip(ax, x))
    return residual, not any(residual)
