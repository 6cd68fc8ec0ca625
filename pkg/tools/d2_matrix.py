"""
Matrices over the Pimenov algebra D2.

Every matrix splits uniquely as A = A0 + i1*A1 + i2*A2 + i1i2*A3 with real
A0..A3. The real parts are handled as numpy object arrays so Fraction entries
stay exact; float-mode real inverses and determinants go through numpy.linalg.

Square-matrix operations (determinant, inverses, group predicates) raise
DimensionMismatch on rectangular input. Column vectors and outer products are
ordinary rectangular MatD2 values.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

import numpy as np

from config import EPS_INV, EPS_MATRIX
from errors import DimensionMismatch, NonInvertible
from pimenov_core import (
    D2Element,
    coerce_scalar,
    d2_add,
    d2_conj_iota2,
    d2_inverse,
    d2_mul,
    d2_neg,
    d2_sub,
    is_exact,
    is_zero_scalar,
)

logger = logging.getLogger(__name__)


def _as_d2(value) -> D2Element:
    if isinstance(value, D2Element):
        return value
    return D2Element(coerce_scalar(value))


@dataclass(frozen=True)
class MatD2:
    """Immutable rows x cols grid of D2 elements."""

    entries: Tuple[Tuple[D2Element, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_d2(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "MatD2":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def column(cls, values: Iterable) -> "MatD2":
        return cls(tuple((v,) for v in values))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def n(self) -> int:
        rows, cols = self.shape
        if rows != cols:
            raise DimensionMismatch(f"expected a square matrix, got {rows}x{cols}")
        return rows

    def is_square(self) -> bool:
        rows, cols = self.shape
        return rows == cols

    def __getitem__(self, index) -> D2Element:
        i, j = index
        return self.entries[i][j]

    def rows(self):
        return self.entries

    def __matmul__(self, other: "MatD2") -> "MatD2":
        return mat_mul(self, other)

    def __add__(self, other: "MatD2") -> "MatD2":
        return mat_add(self, other)

    def __sub__(self, other: "MatD2") -> "MatD2":
        return mat_sub(self, other)

    def __neg__(self) -> "MatD2":
        return _map(self, d2_neg)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.entries) + "]"


def _map(A: MatD2, fn) -> MatD2:
    return MatD2(tuple(tuple(fn(x) for x in row) for row in A.entries))


def _require_square(A: MatD2) -> int:
    return A.n


def _require_same_shape(A: MatD2, B: MatD2) -> None:
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")


# ──────────────────────────────────────────────
# Constructors and elementwise operations
# ──────────────────────────────────────────────

def mat_identity(n: int) -> MatD2:
    return MatD2(tuple(tuple(D2Element(1 if i == j else 0) for j in range(n)) for i in range(n)))


def mat_zero(rows: int, cols: int = None) -> MatD2:
    cols = rows if cols is None else cols
    return MatD2(tuple(tuple(D2Element() for _ in range(cols)) for _ in range(rows)))


def mat_add(A: MatD2, B: MatD2) -> MatD2:
    _require_same_shape(A, B)
    return MatD2(tuple(
        tuple(d2_add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)
    ))


def mat_sub(A: MatD2, B: MatD2) -> MatD2:
    _require_same_shape(A, B)
    return MatD2(tuple(
        tuple(d2_sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A.entries, B.entries)
    ))


def mat_scale(A: MatD2, c) -> MatD2:
    """Multiply every entry by a D2 element (or plain scalar)."""
    c = _as_d2(c)
    return _map(A, lambda x: d2_mul(c, x))


def mat_mul(A: MatD2, B: MatD2) -> MatD2:
    """Matrix product over the commutative ring D2."""
    rows, inner = A.shape
    inner_b, cols = B.shape
    if inner != inner_b:
        raise DimensionMismatch(f"cannot multiply {rows}x{inner} by {inner_b}x{cols}")
    result = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = d2_mul(A.entries[i][0], B.entries[0][j])
            for k in range(1, inner):
                acc = d2_add(acc, d2_mul(A.entries[i][k], B.entries[k][j]))
            row.append(acc)
        result.append(tuple(row))
    return MatD2(tuple(result))


def mat_transpose(A: MatD2) -> MatD2:
    return MatD2(tuple(zip(*A.entries)))


def mat_conj_iota2(A: MatD2) -> MatD2:
    return _map(A, d2_conj_iota2)


def mat_star(A: MatD2) -> MatD2:
    """Dual conjugation: entrywise i2-conjugation, then transpose."""
    return mat_transpose(mat_conj_iota2(A))


def mat_close(A: MatD2, B: MatD2, tol: float = EPS_MATRIX) -> bool:
    """Componentwise comparison; exact when both entries are rational."""
    if A.shape != B.shape:
        return False
    return all(
        x.close(y, tol)
        for ra, rb in zip(A.entries, B.entries)
        for x, y in zip(ra, rb)
    )


def mat_is_exact(A: MatD2) -> bool:
    return all(x.is_exact() for row in A.entries for x in row)


# ──────────────────────────────────────────────
# Real-part decomposition
# ──────────────────────────────────────────────

def mat_decompose(A: MatD2) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split A into the real object arrays (A0, A1, A2, A3)."""
    rows, cols = A.shape
    parts = [np.empty((rows, cols), dtype=object) for _ in range(4)]
    for i in range(rows):
        for j in range(cols):
            for k, c in enumerate(A.entries[i][j].coefficients):
                parts[k][i, j] = c
    return tuple(parts)


def mat_recompose(A0, A1, A2, A3) -> MatD2:
    """Inverse of mat_decompose."""
    parts = [np.asarray(P, dtype=object) for P in (A0, A1, A2, A3)]
    shape = parts[0].shape
    if any(P.shape != shape for P in parts) or len(shape) != 2:
        raise DimensionMismatch("the four real parts must be 2-d arrays of one shape")
    rows, cols = shape
    return MatD2(tuple(
        tuple(D2Element(*(P[i, j] for P in parts)) for j in range(cols))
        for i in range(rows)
    ))


def mat_real_part(A: MatD2) -> np.ndarray:
    return mat_decompose(A)[0]


def from_real(M) -> MatD2:
    """Embed a real matrix (nested lists or array) as a matrix over D2."""
    M = np.asarray(M, dtype=object)
    if M.ndim != 2:
        raise DimensionMismatch("expected a 2-d real matrix")
    zero = np.full(M.shape, Fraction(0), dtype=object)
    return mat_recompose(M, zero, zero, zero)


# ──────────────────────────────────────────────
# Real linear algebra on the scalar parts
# ──────────────────────────────────────────────

def _all_exact(M: np.ndarray) -> bool:
    return all(is_exact(x) for x in M.flat)


def _real_identity(n: int) -> np.ndarray:
    return np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)


def real_det(M: np.ndarray):
    """Determinant of a real square matrix; exact for Fraction entries."""
    M = np.asarray(M, dtype=object)
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"expected a square matrix, got {n}x{m}")
    if not _all_exact(M):
        return float(np.linalg.det(M.astype(float)))
    X = M.copy()
    det = Fraction(1)
    for i in range(n):
        pivot = next((r for r in range(i, n) if X[r, i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            X[[i, pivot]] = X[[pivot, i]]
            det = -det
        det *= X[i, i]
        for r in range(i + 1, n):
            factor = X[r, i] / X[i, i]
            X[r, :] -= factor * X[i, :]
    return det


def real_inverse(M: np.ndarray, eps: float = EPS_INV) -> np.ndarray:
    """Inverse of a real square matrix.

    Fraction input: exact Gauss-Jordan elimination on an object array.
    Float input: numpy.linalg.inv after a |det| > eps check.
    """
    M = np.asarray(M, dtype=object)
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"expected a square matrix, got {n}x{m}")
    if not _all_exact(M):
        det = np.linalg.det(M.astype(float))
        if abs(det) <= eps:
            raise NonInvertible(f"real part is singular (det={det:.3e})")
        return np.linalg.inv(M.astype(float)).astype(object)

    X = M.copy()
    Y = _real_identity(n)
    for i in range(n):
        pivot = next((r for r in range(i, n) if X[r, i] != 0), None)
        if pivot is None:
            raise NonInvertible("real part is singular")
        if pivot != i:
            X[[i, pivot]] = X[[pivot, i]]
            Y[[i, pivot]] = Y[[pivot, i]]
        p = X[i, i]
        Y[i, :] = Y[i, :] / p
        X[i, :] = X[i, :] / p
        for r in range(n):
            if r != i and X[r, i] != 0:
                factor = X[r, i]
                Y[r, :] -= factor * Y[i, :]
                X[r, :] -= factor * X[i, :]
    return Y


# ──────────────────────────────────────────────
# Determinant and inverses over D2
# ──────────────────────────────────────────────

def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def _det_leibniz(A: MatD2) -> D2Element:
    n = A.n
    total = D2Element()
    for perm in itertools.permutations(range(n)):
        term = D2Element(_permutation_sign(perm))
        for i, j in enumerate(perm):
            term = d2_mul(term, A.entries[i][j])
        total = d2_add(total, term)
    return total


def _det_bareiss(A: MatD2) -> D2Element:
    """Fraction-free elimination; divisions only by invertible pivots.

    Falls back to the permutation expansion when a column has no entry with
    invertible scalar part.
    """
    n = A.n
    M = [list(row) for row in A.entries]
    sign = 1
    prev = D2Element(1)
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if M[r][k].is_invertible()), None)
        if pivot is None:
            logger.debug("mat_det: no invertible pivot in column %d, using permutation expansion", k)
            return _det_leibniz(A)
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        prev_inv = d2_inverse(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = d2_sub(d2_mul(M[k][k], M[i][j]), d2_mul(M[i][k], M[k][j]))
                M[i][j] = d2_mul(num, prev_inv)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else d2_neg(det)


def mat_det(A: MatD2) -> D2Element:
    """Determinant over D2 (permutation expansion for n <= 3, Bareiss above)."""
    n = _require_square(A)
    if n <= 3:
        return _det_leibniz(A)
    return _det_bareiss(A)


def mat_is_invertible(A: MatD2, eps: float = EPS_INV) -> bool:
    """True when the real part A0 is an invertible real matrix."""
    _require_square(A)
    det0 = real_det(mat_real_part(A))
    return not is_zero_scalar(det0, eps)


def mat_is_nondegenerate(A: MatD2, eps: float = EPS_INV) -> bool:
    """True when det A has invertible scalar part."""
    return mat_det(A).is_invertible(eps)


def mat_inverse_prop1(A: MatD2, eps: float = EPS_INV) -> MatD2:
    """Closed-form inverse through the real part.

    With R = A0^-1:
        A^-1 = R [A0 - i1 A1 - i2 A2 + i1i2 (A1 R A2 + A2 R A1 - A3)] R

    Raises:
        NonInvertible: when A0 is singular.
    """
    _require_square(A)
    A0, A1, A2, A3 = mat_decompose(A)
    try:
        R = real_inverse(A0, eps)
    except NonInvertible:
        logger.warning(f"mat_inverse_prop1: real part of {A.shape[0]}x{A.shape[1]} matrix is singular")
        raise
    inner3 = A1.dot(R).dot(A2) + A2.dot(R).dot(A1) - A3
    return mat_recompose(
        R,
        -R.dot(A1).dot(R),
        -R.dot(A2).dot(R),
        R.dot(inner3).dot(R),
    )


def mat_inverse_gauss(A: MatD2, eps: float = EPS_INV) -> MatD2:
    """Gauss-Jordan inverse over D2, pivoting only on invertible entries.

    Independent of mat_inverse_prop1; the property suites use it as the
    cross-check.
    """
    n = _require_square(A)
    X = [list(row) for row in A.entries]
    Y = [list(row) for row in mat_identity(n).entries]
    for i in range(n):
        pivot = next((r for r in range(i, n) if X[r][i].is_invertible(eps)), None)
        if pivot is None:
            raise NonInvertible(f"no invertible pivot in column {i}")
        X[i], X[pivot] = X[pivot], X[i]
        Y[i], Y[pivot] = Y[pivot], Y[i]
        p_inv = d2_inverse(X[i][i], eps)
        X[i] = [d2_mul(p_inv, x) for x in X[i]]
        Y[i] = [d2_mul(p_inv, y) for y in Y[i]]
        for r in range(n):
            if r == i:
                continue
            factor = X[r][i]
            X[r] = [d2_sub(x, d2_mul(factor, xi)) for x, xi in zip(X[r], X[i])]
            Y[r] = [d2_sub(y, d2_mul(factor, yi)) for y, yi in zip(Y[r], Y[i])]
    return MatD2(tuple(tuple(row) for row in Y))


# ──────────────────────────────────────────────
# Group predicates (never raise)
# ──────────────────────────────────────────────

def _det_is_one(A: MatD2, tol: float) -> bool:
    return mat_det(A).close(D2Element(1), tol)


def is_su_d2(A: MatD2, tol: float = EPS_MATRIX) -> bool:
    """A* = A^-1 and det A = 1."""
    if not A.is_square():
        return False
    try:
        inverse = mat_inverse_prop1(A)
    except NonInvertible:
        return False
    return mat_close(mat_star(A), inverse, tol) and _det_is_one(A, tol)


def is_orthogonal_unimodular(A: MatD2, tol: float = EPS_MATRIX) -> bool:
    """A^T A = A A^T = I and det A = 1 over D2."""
    if not A.is_square():
        return False
    identity = mat_identity(A.n)
    At = mat_transpose(A)
    return (
        mat_close(mat_mul(At, A), identity, tol)
        and mat_close(mat_mul(A, At), identity, tol)
        and _det_is_one(A, tol)
    )


# Which coefficient slots each entry of a 3x3 SO(3; i1, i2) matrix may use
_SO3_SLOTS = {
    (0, 0): {0}, (1, 1): {0}, (2, 2): {0},
    (0, 1): {1}, (1, 0): {1},
    (0, 2): {3}, (2, 0): {3},
    (1, 2): {2}, (2, 1): {2},
}


def matches_so3_pattern(A: MatD2, tol: float = EPS_MATRIX) -> bool:
    """Entry pattern of the orthogonal group at j1 = i1, j2 = i2, plus orthogonality."""
    if A.shape != (3, 3):
        return False
    for (i, j), allowed in _SO3_SLOTS.items():
        coeffs = A.entries[i][j].coefficients
        if any(k not in allowed and not is_zero_scalar(c, tol) for k, c in enumerate(coeffs)):
            return False
    return is_orthogonal_unimodular(A, tol)
