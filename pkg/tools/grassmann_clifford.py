"""
Grassmann algebra on two generators and the Clifford algebra Cl3.

Grassmann: e1^2 = e2^2 = 0, e1 e2 = -e2 e1. Elements with unit scalar part
form a group isomorphic to G(2) through

    q = 1 + phi*e1 + beta*e2 + gamma*e1e2    (phi, beta, gamma) = su_parameters(m)

and the 2x2 realization E1 = diag(i2, -i2), E2 = [[0, i1], [-i1, 0]] turns q
into the SU(D2) matrix of the same motion.

Cl3: e1, e2, e3 pairwise anticommuting with e1^2 = e2^2 = 0 and e3^2 = 1.
Products use a sign table built from those relations at import time.
cl3_to_matrix sends e3 to diag(-1, 1); it is linear but agrees with cl3_mul
only on 58 of the 64 basis products, so the sandwich action is evaluated in
the matrix realization and mapped back with matrix_to_cl3.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from config import CL3_BASIS, EPS_MATRIX, EPS_POINT, GRASSMANN_BASIS
from d2_matrix import MatD2, mat_add, mat_close, mat_identity, mat_mul, mat_scale, mat_zero
from errors import GalileanError, NonInvertible, NotAPointElement, NotInLambda1
from galilean_group import GalileanMotion, motion_from_su_parameters, su_parameters
from pimenov_core import (
    HALF,
    D2Element,
    Scalar,
    coerce_scalar,
    is_zero_scalar,
    scalars_close,
)
from plane_actions import SpherePoint

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# Grassmann algebra
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class GrassmannElement:
    """alpha0 + alpha1*e1 + alpha2*e2 + alpha3*e1e2."""

    alpha0: Scalar = Fraction(0)
    alpha1: Scalar = Fraction(0)
    alpha2: Scalar = Fraction(0)
    alpha3: Scalar = Fraction(0)

    def __post_init__(self):
        for name in ("alpha0", "alpha1", "alpha2", "alpha3"):
            object.__setattr__(self, name, coerce_scalar(getattr(self, name)))

    @property
    def coefficients(self) -> tuple:
        return (self.alpha0, self.alpha1, self.alpha2, self.alpha3)

    def close(self, other: "GrassmannElement", tol: float = EPS_MATRIX) -> bool:
        return all(scalars_close(x, y, tol) for x, y in zip(self.coefficients, other.coefficients))

    def in_lambda1(self, tol: float = EPS_MATRIX) -> bool:
        return scalars_close(self.alpha0, 1, tol)

    def __add__(self, other):
        return grassmann_add(self, other)

    def __sub__(self, other):
        return grassmann_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return grassmann_mul(self, other)
        return grassmann_scale(self, other)

    def __rmul__(self, other):
        return grassmann_scale(self, other)

    def __neg__(self):
        return grassmann_scale(self, -1)


E1 = GrassmannElement(0, 1, 0, 0)
E2 = GrassmannElement(0, 0, 1, 0)
E1E2 = GrassmannElement(0, 0, 0, 1)


def grassmann_add(p: GrassmannElement, q: GrassmannElement) -> GrassmannElement:
    return GrassmannElement(*(x + y for x, y in zip(p.coefficients, q.coefficients)))


def grassmann_sub(p: GrassmannElement, q: GrassmannElement) -> GrassmannElement:
    return GrassmannElement(*(x - y for x, y in zip(p.coefficients, q.coefficients)))


def grassmann_scale(q: GrassmannElement, r) -> GrassmannElement:
    r = coerce_scalar(r)
    return GrassmannElement(*(r * x for x in q.coefficients))


def grassmann_mul(p: GrassmannElement, q: GrassmannElement) -> GrassmannElement:
    p0, p1, p2, p3 = p.coefficients
    q0, q1, q2, q3 = q.coefficients
    return GrassmannElement(
        p0 * q0,
        p0 * q1 + p1 * q0,
        p0 * q2 + p2 * q0,
        p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
    )


def grassmann_conj(q: GrassmannElement) -> GrassmannElement:
    return GrassmannElement(q.alpha0, -q.alpha1, -q.alpha2, -q.alpha3)


def grassmann_norm_sq(q: GrassmannElement) -> Scalar:
    """|q|^2 = q q-bar = alpha0^2."""
    return q.alpha0 * q.alpha0


def grassmann_inverse(q: GrassmannElement, eps: float = EPS_MATRIX) -> GrassmannElement:
    """(alpha0 (1 + n))^-1 = (1 - n + n^2) / alpha0 for the nilpotent part n."""
    if is_zero_scalar(q.alpha0, eps):
        raise NonInvertible("Grassmann element has zero scalar part")
    r = 1 / q.alpha0
    n = grassmann_scale(GrassmannElement(0, q.alpha1, q.alpha2, q.alpha3), r)
    one = GrassmannElement(1)
    series = grassmann_add(grassmann_sub(one, n), grassmann_mul(n, n))
    return grassmann_scale(series, r)


def motion_to_lambda1(m: GalileanMotion) -> GrassmannElement:
    phi, beta, gamma = su_parameters(m)
    return GrassmannElement(1, phi, beta, gamma)


def lambda1_to_motion(q: GrassmannElement, tol: float = EPS_MATRIX) -> GalileanMotion:
    if not q.in_lambda1(tol):
        raise NotInLambda1(f"scalar part is {q.alpha0}, expected 1")
    return motion_from_su_parameters(q.alpha1, q.alpha2, q.alpha3)


# 2x2 realization of the generators
E1_MATRIX = MatD2.from_rows([[D2Element(0, 0, 1), 0], [0, D2Element(0, 0, -1)]])
E2_MATRIX = MatD2.from_rows([[0, D2Element(0, 1)], [D2Element(0, -1), 0]])
E1E2_MATRIX = MatD2.from_rows([[0, D2Element(0, 0, 0, 1)], [D2Element(0, 0, 0, 1), 0]])
E3_MATRIX = MatD2.from_rows([[-1, 0], [0, 1]])


def lambda_to_matrix(q: GrassmannElement) -> MatD2:
    """alpha0 E + alpha1 E1 + alpha2 E2 + alpha3 E1E2."""
    result = mat_scale(mat_identity(2), q.alpha0)
    for coeff, M in zip(q.coefficients[1:], (E1_MATRIX, E2_MATRIX, E1E2_MATRIX)):
        result = mat_add(result, mat_scale(M, coeff))
    return result


def matrix_to_lambda(M: MatD2, tol: float = EPS_MATRIX) -> GrassmannElement:
    if M.shape != (2, 2):
        raise GalileanError(f"expected a 2x2 matrix, got {M.shape}")
    q = GrassmannElement(M[0, 0].a0, M[0, 0].a2, M[0, 1].a1, M[0, 1].a3)
    if not mat_close(lambda_to_matrix(q), M, tol):
        raise GalileanError("matrix is not in the span of E, E1, E2, E1E2")
    return q


# ──────────────────────────────────────────────
# Clifford algebra Cl3
# ──────────────────────────────────────────────

_BLADES: List[Tuple[int, ...]] = [(), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
_BLADE_INDEX = {blade: k for k, blade in enumerate(_BLADES)}
_SQUARES = {1: 0, 2: 0, 3: 1}


def _blade_product(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, Optional[int]]:
    """(sign, basis index) of the product of two basis blades; sign 0 means zero."""
    word = list(a) + list(b)
    sign = 1
    # bubble sort, one sign flip per swap of distinct anticommuting generators
    for end in range(len(word) - 1, 0, -1):
        for i in range(end):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
    reduced = []
    for g in word:
        if reduced and reduced[-1] == g:
            reduced.pop()
            sign *= _SQUARES[g]
            if sign == 0:
                return 0, None
        else:
            reduced.append(g)
    return sign, _BLADE_INDEX[tuple(reduced)]


CL3_TABLE: List[List[Tuple[int, Optional[int]]]] = [
    [_blade_product(a, b) for b in _BLADES] for a in _BLADES
]


@dataclass(frozen=True)
class Cl3Element:
    """Coefficients over (1, e1, e2, e3, e1e2, e1e3, e2e3, e1e2e3)."""

    coeffs: Tuple[Scalar, ...] = (Fraction(0),) * 8

    def __post_init__(self):
        values = tuple(coerce_scalar(c) for c in self.coeffs)
        if len(values) != 8:
            raise GalileanError(f"Cl3 element needs 8 coefficients, got {len(values)}")
        object.__setattr__(self, "coeffs", values)

    def __getitem__(self, name: str) -> Scalar:
        return self.coeffs[CL3_BASIS.index(name)]

    def close(self, other: "Cl3Element", tol: float = EPS_MATRIX) -> bool:
        return all(scalars_close(x, y, tol) for x, y in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        return Cl3Element(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Cl3Element(tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, Cl3Element):
            return cl3_mul(self, other)
        r = coerce_scalar(other)
        return Cl3Element(tuple(r * x for x in self.coeffs))

    def __rmul__(self, other):
        r = coerce_scalar(other)
        return Cl3Element(tuple(r * x for x in self.coeffs))

    def __neg__(self):
        return Cl3Element(tuple(-x for x in self.coeffs))


def cl3_basis(name: str) -> Cl3Element:
    if name not in CL3_BASIS:
        raise GalileanError(f"unknown Cl3 basis element '{name}' (known: {', '.join(CL3_BASIS)})")
    coeffs = [0] * 8
    coeffs[CL3_BASIS.index(name)] = 1
    return Cl3Element(tuple(coeffs))


def cl3_mul(p: Cl3Element, q: Cl3Element) -> Cl3Element:
    out = [Fraction(0)] * 8
    for i, x in enumerate(p.coeffs):
        if x == 0:
            continue
        for j, y in enumerate(q.coeffs):
            if y == 0:
                continue
            sign, k = CL3_TABLE[i][j]
            if sign:
                out[k] = out[k] + sign * x * y
    return Cl3Element(tuple(out))


def cl3_from_grassmann(q: GrassmannElement) -> Cl3Element:
    coeffs = [Fraction(0)] * len(CL3_BASIS)
    for name, c in zip(GRASSMANN_BASIS, q.coefficients):
        coeffs[CL3_BASIS.index(name)] = c
    return Cl3Element(tuple(coeffs))


_CL3_MATRICES = [
    mat_identity(2),
    E1_MATRIX,
    E2_MATRIX,
    E3_MATRIX,
    E1E2_MATRIX,
    mat_mul(E1_MATRIX, E3_MATRIX),
    mat_mul(E2_MATRIX, E3_MATRIX),
    mat_mul(E1E2_MATRIX, E3_MATRIX),
]


def cl3_to_matrix(v: Cl3Element) -> MatD2:
    """Linear map sending each basis blade to the product of its generator matrices."""
    result = mat_zero(2)
    for coeff, M in zip(v.coeffs, _CL3_MATRICES):
        if coeff != 0:
            result = mat_add(result, mat_scale(M, coeff))
    return result


def matrix_to_cl3(M: MatD2, tol: float = EPS_MATRIX) -> Cl3Element:
    """Inverse of cl3_to_matrix on its image."""
    if M.shape != (2, 2):
        raise GalileanError(f"expected a 2x2 matrix, got {M.shape}")
    m00, m01, m10, m11 = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    v = Cl3Element((
        HALF * (m00.a0 + m11.a0),
        HALF * (m00.a2 - m11.a2),
        HALF * (m01.a1 - m10.a1),
        HALF * (m11.a0 - m00.a0),
        HALF * (m01.a3 + m10.a3),
        -HALF * (m00.a2 + m11.a2),
        HALF * (m01.a1 + m10.a1),
        HALF * (m01.a3 - m10.a3),
    ))
    if not mat_close(cl3_to_matrix(v), M, tol):
        raise GalileanError("matrix is not in the image of Cl3")
    return v


def point_to_cl3(s: SpherePoint) -> Cl3Element:
    """(1 + y e2 + z e1e2) e3 = e3 + y e2e3 + z e1e2e3."""
    return Cl3Element((0, 0, 0, 1, 0, 0, s.y, s.z))


def is_point_element(v: Cl3Element, tol: float = EPS_POINT) -> bool:
    for name, c in zip(CL3_BASIS, v.coeffs):
        if name == "e3":
            if not scalars_close(c, 1, tol):
                return False
        elif name not in ("e2e3", "e1e2e3") and not is_zero_scalar(c, tol):
            return False
    return True


def cl3_to_point(v: Cl3Element, tol: float = EPS_POINT) -> SpherePoint:
    if not is_point_element(v, tol):
        raise NotAPointElement("expected e3 + y e2e3 + z e1e2e3")
    return SpherePoint(v["e2e3"], v["e1e2e3"])


def clifford_act(q: GrassmannElement, v: Cl3Element) -> Cl3Element:
    """q q_v q-bar, evaluated in the 2x2 realization."""
    if not q.in_lambda1():
        raise NotInLambda1(f"scalar part is {q.alpha0}, expected 1")
    if not is_point_element(v):
        raise NotAPointElement("clifford_act moves point elements only")
    u = lambda_to_matrix(q)
    u_bar = lambda_to_matrix(grassmann_conj(q))
    return matrix_to_cl3(mat_mul(mat_mul(u, cl3_to_matrix(v)), u_bar))


def matrix_disagreements() -> Dict[Tuple[str, str], int]:
    """Basis pairs where rho(a) rho(b) != rho(ab), mapped to the sign relating them.

    The value is -1 when rho(a) rho(b) = -rho(ab) and 0 for any other mismatch.
    """
    result = {}
    basis = [cl3_basis(name) for name in CL3_BASIS]
    for a_name, a in zip(CL3_BASIS, basis):
        for b_name, b in zip(CL3_BASIS, basis):
            product = cl3_to_matrix(cl3_mul(a, b))
            matrix_product = mat_mul(cl3_to_matrix(a), cl3_to_matrix(b))
            if mat_close(product, matrix_product, 0.0):
                continue
            negated = mat_scale(product, -1)
            result[(a_name, b_name)] = -1 if mat_close(negated, matrix_product, 0.0) else 0
    return result
