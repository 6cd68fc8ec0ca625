"""
The motion group G(2) of the Galilean plane.

GalileanMotion (a, b, theta) is the hub every representation converts
through:

    Std3x3          [[1,0,0],[a,1,0],[b,theta,1]]
    Ortho3x3D2      orthogonal 3x3 matrix over D2
    SuD2            2x2 matrix of SU(D2) with (phi, beta, gamma)
    UpperDual       upper-triangular dual matrix with (phi, zeta, eta)
    ConvenientDual  [[1 + i*theta, a + i*b], [0, 1]]
    Grassmann       1 + phi*e1 + beta*e2 + gamma*e1e2 in the Grassmann algebra

In the two dual-number representations the single nilpotent unit lives in
the i2 slot of D2.

Usage:
    from galilean_group import GalileanMotion, RepId, compose, to_rep, from_rep

    m = compose(GalileanMotion(1, 2, 3), GalileanMotion(4, 5, 6))  # (5, 19, 9)
    e = to_rep(m, RepId.SU_D2)
    from_rep(e) == m
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, Tuple

from config import EPS_MATRIX
from d2_matrix import (
    MatD2,
    is_su_d2,
    mat_close,
    mat_inverse_prop1,
    mat_mul,
    mat_sub,
    mat_zero,
    matches_so3_pattern,
)
from errors import DimensionMismatch, EmptyInput, MalformedRepElement, ParseError, Unsupported
from pimenov_core import HALF, QUARTER, D2Element, Scalar, coerce_scalar, scalars_close

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# Canonical motions
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class GalileanMotion:
    """Translation by a along x, by b along y, and Galilean boost theta."""

    a: Scalar = 0
    b: Scalar = 0
    theta: Scalar = 0

    def __post_init__(self):
        for name in ("a", "b", "theta"):
            object.__setattr__(self, name, coerce_scalar(getattr(self, name)))

    @classmethod
    def identity(cls) -> "GalileanMotion":
        return cls(0, 0, 0)

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.theta)

    def close(self, other: "GalileanMotion", tol: float = EPS_MATRIX) -> bool:
        return all(scalars_close(x, y, tol) for x, y in zip(self.as_tuple(), other.as_tuple()))


def compose(m1: GalileanMotion, m2: GalileanMotion) -> GalileanMotion:
    """m1 after m2: the parameters of the product of their Std3x3 matrices."""
    return GalileanMotion(
        m1.a + m2.a,
        m1.b + m2.b + m1.theta * m2.a,
        m1.theta + m2.theta,
    )


def inverse(m: GalileanMotion) -> GalileanMotion:
    return GalileanMotion(-m.a, m.theta * m.a - m.b, -m.theta)


def compose_all(motions: Iterable[GalileanMotion]) -> GalileanMotion:
    """Left-to-right fold of compose over a non-empty sequence."""
    motions = list(motions)
    if not motions:
        raise EmptyInput("need at least one motion to compose")
    result = motions[0]
    for m in motions[1:]:
        result = compose(result, m)
    return result


def motion_power(m: GalileanMotion, n: int) -> GalileanMotion:
    if n < 0:
        return motion_power(inverse(m), -n)
    result = GalileanMotion.identity()
    base = m
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def conjugate(m: GalileanMotion, n: GalileanMotion) -> GalileanMotion:
    """m n m^-1."""
    return compose(compose(m, n), inverse(m))


# ──────────────────────────────────────────────
# Parameter dictionaries
# ──────────────────────────────────────────────

def su_parameters(m: GalileanMotion) -> Tuple[Scalar, Scalar, Scalar]:
    """(phi, beta, gamma) of the SU(D2) matrix: (theta/2, a/2, b/2 - a*theta/4)."""
    return (
        HALF * m.theta,
        HALF * m.a,
        HALF * m.b - QUARTER * m.a * m.theta,
    )


def motion_from_su_parameters(phi, beta, gamma) -> GalileanMotion:
    phi, beta, gamma = (coerce_scalar(x) for x in (phi, beta, gamma))
    return GalileanMotion(2 * beta, 2 * gamma + 2 * beta * phi, 2 * phi)


def upper_parameters(m: GalileanMotion) -> Tuple[Scalar, Scalar, Scalar]:
    """(phi, zeta, eta) of the upper-triangular dual matrix.

    zeta + i*eta = (a + i*b)/2 * e^{-i*theta/2}, so the values coincide with
    su_parameters.
    """
    return su_parameters(m)


def motion_from_upper_parameters(phi, zeta, eta) -> GalileanMotion:
    return motion_from_su_parameters(phi, zeta, eta)


# ──────────────────────────────────────────────
# Representations
# ──────────────────────────────────────────────

class RepId(Enum):
    STD_3X3 = "Std3x3"
    ORTHO_3X3_D2 = "Ortho3x3D2"
    SU_D2 = "SuD2"
    UPPER_DUAL = "UpperDual"
    CONVENIENT_DUAL = "ConvenientDual"
    GRASSMANN = "Grassmann"

    @classmethod
    def parse(cls, name: str) -> "RepId":
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(r.value for r in cls)
            raise ParseError(f"unknown representation '{name}' (known: {known})")

    @property
    def is_matrix(self) -> bool:
        return self is not RepId.GRASSMANN


@dataclass(frozen=True)
class RepElement:
    rep: RepId
    payload: object  # MatD2, or GrassmannElement for RepId.GRASSMANN


def _d2(a0=0, a1=0, a2=0, a3=0) -> D2Element:
    return D2Element(a0, a1, a2, a3)


def _build_std(m: GalileanMotion) -> MatD2:
    return MatD2.from_rows([
        [1, 0, 0],
        [m.a, 1, 0],
        [m.b, m.theta, 1],
    ])


def _read_std(M: MatD2) -> GalileanMotion:
    return GalileanMotion(M[1, 0].a0, M[2, 0].a0, M[2, 1].a0)


def so3_element(a, b, theta, sigma1: int = 1, sigma2: int = 1) -> MatD2:
    """General element of SO(3; i1, i2); sigma1 = sigma2 = 1 gives G(2)."""
    if sigma1 not in (1, -1) or sigma2 not in (1, -1):
        raise MalformedRepElement(f"signs must be +1 or -1, got ({sigma1}, {sigma2})")
    a, b, theta = (coerce_scalar(x) for x in (a, b, theta))
    s1, s2 = sigma1, sigma2
    return MatD2.from_rows([
        [s1, _d2(a1=-s1 * s2 * a), _d2(a3=-(s2 * b - a * theta))],
        [_d2(a1=a), s2, _d2(a2=-s1 * theta)],
        [_d2(a3=b), _d2(a2=theta), s1 * s2],
    ])


def so3_parameters(A: MatD2, tol: float = EPS_MATRIX) -> Tuple[Scalar, Scalar, Scalar, int, int]:
    """Inverse of so3_element: (a, b, theta, sigma1, sigma2)."""
    if A.shape != (3, 3):
        raise MalformedRepElement(f"expected a 3x3 matrix, got {A.shape}")
    signs = []
    for value in (A[0, 0].a0, A[1, 1].a0):
        if scalars_close(value, 1, tol):
            signs.append(1)
        elif scalars_close(value, -1, tol):
            signs.append(-1)
        else:
            raise MalformedRepElement(f"diagonal entry {value} is not a sign")
    a, b, theta = A[1, 0].a1, A[2, 0].a3, A[2, 1].a2
    if not mat_close(so3_element(a, b, theta, *signs), A, tol):
        raise MalformedRepElement("matrix does not have the SO(3; i1, i2) form")
    return (a, b, theta, signs[0], signs[1])


def _build_ortho(m: GalileanMotion) -> MatD2:
    return so3_element(m.a, m.b, m.theta, 1, 1)


def _read_ortho(M: MatD2) -> GalileanMotion:
    return GalileanMotion(M[1, 0].a1, M[2, 0].a3, M[2, 1].a2)


def su_matrix(phi, beta, gamma) -> MatD2:
    """[[e^{i2 phi}, i1(beta + i2 gamma)], [-i1(beta - i2 gamma), e^{-i2 phi}]]."""
    phi, beta, gamma = (coerce_scalar(x) for x in (phi, beta, gamma))
    return MatD2.from_rows([
        [_d2(1, 0, phi), _d2(a1=beta, a3=gamma)],
        [_d2(a1=-beta, a3=gamma), _d2(1, 0, -phi)],
    ])


def _build_su(m: GalileanMotion) -> MatD2:
    return su_matrix(*su_parameters(m))


def _read_su(M: MatD2) -> GalileanMotion:
    return motion_from_su_parameters(M[0, 0].a2, M[0, 1].a1, M[0, 1].a3)


def _build_upper(m: GalileanMotion) -> MatD2:
    phi, zeta, eta = upper_parameters(m)
    return MatD2.from_rows([
        [_d2(1, 0, phi), _d2(zeta, 0, eta)],
        [0, _d2(1, 0, -phi)],
    ])


def _read_upper(M: MatD2) -> GalileanMotion:
    return motion_from_upper_parameters(M[0, 0].a2, M[0, 1].a0, M[0, 1].a2)


def _build_convenient(m: GalileanMotion) -> MatD2:
    # e^{i theta} = 1 + i theta exactly
    return MatD2.from_rows([
        [_d2(1, 0, m.theta), _d2(m.a, 0, m.b)],
        [0, 1],
    ])


def _read_convenient(M: MatD2) -> GalileanMotion:
    return GalileanMotion(M[0, 1].a0, M[0, 1].a2, M[0, 0].a2)


def _build_grassmann(m: GalileanMotion):
    from grassmann_clifford import motion_to_lambda1

    return motion_to_lambda1(m)


def _read_grassmann(q) -> GalileanMotion:
    from grassmann_clifford import lambda1_to_motion

    return lambda1_to_motion(q)


_BUILDERS: Dict[RepId, Callable] = {
    RepId.STD_3X3: _build_std,
    RepId.ORTHO_3X3_D2: _build_ortho,
    RepId.SU_D2: _build_su,
    RepId.UPPER_DUAL: _build_upper,
    RepId.CONVENIENT_DUAL: _build_convenient,
    RepId.GRASSMANN: _build_grassmann,
}

_READERS: Dict[RepId, Callable] = {
    RepId.STD_3X3: _read_std,
    RepId.ORTHO_3X3_D2: _read_ortho,
    RepId.SU_D2: _read_su,
    RepId.UPPER_DUAL: _read_upper,
    RepId.CONVENIENT_DUAL: _read_convenient,
    RepId.GRASSMANN: _read_grassmann,
}

_SHAPES = {
    RepId.STD_3X3: (3, 3),
    RepId.ORTHO_3X3_D2: (3, 3),
    RepId.SU_D2: (2, 2),
    RepId.UPPER_DUAL: (2, 2),
    RepId.CONVENIENT_DUAL: (2, 2),
}


def to_rep(m: GalileanMotion, rep: RepId) -> RepElement:
    return RepElement(rep, _BUILDERS[rep](m))


def _payload_close(rep: RepId, x, y, tol: float) -> bool:
    if rep.is_matrix:
        return mat_close(x, y, tol)
    return x.close(y, tol)


def validate_rep(e: RepElement, tol: float = EPS_MATRIX) -> bool:
    """True iff the payload has exactly the form of its representation."""
    try:
        if e.rep.is_matrix:
            if not isinstance(e.payload, MatD2) or e.payload.shape != _SHAPES[e.rep]:
                return False
        else:
            from grassmann_clifford import GrassmannElement

            if not isinstance(e.payload, GrassmannElement):
                return False
        m = _READERS[e.rep](e.payload)
        if not _payload_close(e.rep, _BUILDERS[e.rep](m), e.payload, tol):
            return False
    except (MalformedRepElement, DimensionMismatch, ValueError, TypeError) as exc:
        logger.debug(f"validate_rep({e.rep.value}): {exc}")
        return False
    if e.rep is RepId.SU_D2:
        return is_su_d2(e.payload, tol)
    if e.rep is RepId.ORTHO_3X3_D2:
        return matches_so3_pattern(e.payload, tol)
    return True


def from_rep(e: RepElement, tol: float = EPS_MATRIX, validate: bool = True) -> GalileanMotion:
    """Canonical parameters of a representation element.

    validate=False reads the parameter slots directly; only for elements
    built by to_rep or rep_product.

    Raises:
        MalformedRepElement: when validate_rep fails.
    """
    if validate and not validate_rep(e, tol):
        raise MalformedRepElement(f"payload is not a valid {e.rep.value} element")
    return _READERS[e.rep](e.payload)


def rep_identity(rep: RepId) -> RepElement:
    return to_rep(GalileanMotion.identity(), rep)


def rep_product(e1: RepElement, e2: RepElement) -> RepElement:
    """Matrix product, or Grassmann product for the Grassmann representation."""
    if e1.rep is not e2.rep:
        raise Unsupported(f"cannot multiply {e1.rep.value} by {e2.rep.value}")
    if e1.rep.is_matrix:
        return RepElement(e1.rep, mat_mul(e1.payload, e2.payload))
    from grassmann_clifford import grassmann_mul

    return RepElement(e1.rep, grassmann_mul(e1.payload, e2.payload))


def rep_inverse(e: RepElement) -> RepElement:
    if e.rep.is_matrix:
        return RepElement(e.rep, mat_inverse_prop1(e.payload))
    from grassmann_clifford import grassmann_inverse

    return RepElement(e.rep, grassmann_inverse(e.payload))


def reps_close(e1: RepElement, e2: RepElement, tol: float = EPS_MATRIX) -> bool:
    return e1.rep is e2.rep and _payload_close(e1.rep, e1.payload, e2.payload, tol)


def factorize(m: GalileanMotion, rep: RepId) -> Tuple[RepElement, RepElement, RepElement]:
    """(translation-a, translation-b, boost-theta) factors whose product is to_rep(m, rep)."""
    if rep not in (RepId.STD_3X3, RepId.ORTHO_3X3_D2, RepId.SU_D2):
        raise Unsupported(f"factorization is defined for Std3x3, Ortho3x3D2 and SuD2, not {rep.value}")
    return (
        to_rep(GalileanMotion(m.a, 0, 0), rep),
        to_rep(GalileanMotion(0, m.b, 0), rep),
        to_rep(GalileanMotion(0, 0, m.theta), rep),
    )


# ──────────────────────────────────────────────
# Lie algebra
# ──────────────────────────────────────────────

def commutator(X: MatD2, Y: MatD2) -> MatD2:
    """XY - YX."""
    if X.shape != Y.shape or not X.is_square():
        raise DimensionMismatch(f"commutator needs square matrices of one size, got {X.shape} and {Y.shape}")
    return mat_sub(mat_mul(X, Y), mat_mul(Y, X))


def _e(n: int, i: int, j: int, value) -> MatD2:
    rows = [[0] * n for _ in range(n)]
    rows[i][j] = value
    return MatD2.from_rows(rows)


def _generator_matrices(rep: RepId) -> Tuple[MatD2, MatD2, MatD2]:
    if rep is RepId.STD_3X3:
        return (_e(3, 1, 0, 1), _e(3, 2, 0, 1), _e(3, 2, 1, 1))
    if rep is RepId.ORTHO_3X3_D2:
        return (
            MatD2.from_rows([[0, _d2(a1=-1), 0], [_d2(a1=1), 0, 0], [0, 0, 0]]),
            MatD2.from_rows([[0, 0, _d2(a3=-1)], [0, 0, 0], [_d2(a3=1), 0, 0]]),
            MatD2.from_rows([[0, 0, 0], [0, 0, _d2(a2=-1)], [0, _d2(a2=1), 0]]),
        )
    if rep is RepId.SU_D2:
        return (
            MatD2.from_rows([[0, _d2(a1=HALF)], [_d2(a1=-HALF), 0]]),
            MatD2.from_rows([[0, _d2(a3=HALF)], [_d2(a3=HALF), 0]]),
            MatD2.from_rows([[_d2(a2=HALF), 0], [0, _d2(a2=-HALF)]]),
        )
    if rep is RepId.UPPER_DUAL:
        return (
            _e(2, 0, 1, HALF),
            _e(2, 0, 1, _d2(a2=HALF)),
            MatD2.from_rows([[_d2(a2=HALF), 0], [0, _d2(a2=-HALF)]]),
        )
    if rep is RepId.CONVENIENT_DUAL:
        return (
            _e(2, 0, 1, 1),
            _e(2, 0, 1, _d2(a2=1)),
            _e(2, 0, 0, _d2(a2=1)),
        )
    raise Unsupported("Grassmann generators live in the algebra; use grassmann_generators()")


def generators(rep: RepId) -> Tuple[RepElement, RepElement, RepElement]:
    """Infinitesimal generators (A1, A2, A3) for the a, b and theta directions."""
    return tuple(RepElement(rep, M) for M in _generator_matrices(rep))


def grassmann_generators() -> Tuple[RepElement, RepElement, RepElement]:
    """(e2/2, e1e2/2, e1/2): the a, b and theta directions of 1 + phi e1 + beta e2 + gamma e1e2."""
    from grassmann_clifford import GrassmannElement

    return (
        RepElement(RepId.GRASSMANN, GrassmannElement(0, 0, HALF, 0)),
        RepElement(RepId.GRASSMANN, GrassmannElement(0, 0, 0, HALF)),
        RepElement(RepId.GRASSMANN, GrassmannElement(0, HALF, 0, 0)),
    )


def rep_commutator(x: RepElement, y: RepElement) -> RepElement:
    if x.rep is not y.rep:
        raise Unsupported(f"cannot bracket {x.rep.value} with {y.rep.value}")
    if x.rep.is_matrix:
        return RepElement(x.rep, commutator(x.payload, y.payload))
    from grassmann_clifford import grassmann_mul, grassmann_sub

    return RepElement(
        x.rep,
        grassmann_sub(grassmann_mul(x.payload, y.payload), grassmann_mul(y.payload, x.payload)),
    )


def _zero_like(e: RepElement) -> RepElement:
    if e.rep.is_matrix:
        rows, cols = e.payload.shape
        return RepElement(e.rep, mat_zero(rows, cols))
    from grassmann_clifford import GrassmannElement

    return RepElement(e.rep, GrassmannElement(0, 0, 0, 0))


def lie_bracket_check(
    triple: Tuple[RepElement, RepElement, RepElement],
    bracket: Callable[[RepElement, RepElement], RepElement] = rep_commutator,
    tol: float = EPS_MATRIX,
) -> Dict[str, bool]:
    """Check [A1,A2] = 0, [A2,A3] = 0 and [A3,A1] = A2."""
    A1, A2, A3 = triple
    zero = _zero_like(A1)
    return {
        "[A1,A2]=0": reps_close(bracket(A1, A2), zero, tol),
        "[A2,A3]=0": reps_close(bracket(A2, A3), zero, tol),
        "[A3,A1]=A2": reps_close(bracket(A3, A1), A2, tol),
    }
