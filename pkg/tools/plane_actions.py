"""
Points of the Galilean plane and the ways G(2) moves them.

The plane point (x, y) is identified with the sphere point (1, i1*x, i1i2*y)
of the component x^2 = 1 in R^3(i1, i2); a SpherePoint stores that pair as
(y, z). Every representation has its own carrier:

    Std3x3          column (1, x, y)
    Ortho3x3D2      column (1, i1*y, i1i2*z)
    SuD2            point matrix h_v, acted on by u h_v u*
    UpperDual       point matrix p_v, acted on by w p_v w^-1
    ConvenientDual  column (x + i*y, 1)
    Grassmann       Cl3 point element q_v, acted on by q q_v q-bar

act_via_rep computes the motion in the chosen carrier and reads the image
point back, so every path can be checked against act().
"""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

from config import EPS_DIST, FIGURE_COLUMNS
from d2_matrix import MatD2, mat_conj_iota2, mat_inverse_prop1, mat_mul, mat_star
from errors import GalileanError, NonNormalizable
from galilean_group import GalileanMotion, RepId, to_rep
from pimenov_core import (
    HALF,
    D2Element,
    DualNumber,
    Scalar,
    coerce_scalar,
    d2_add,
    d2_div,
    d2_mul,
    is_zero_scalar,
    scalars_close,
)

logger = logging.getLogger(__name__)


# ──────────────────────────────────────────────
# Points
# ──────────────────────────────────────────────

@dataclass(frozen=True)
class GalileanPoint:
    x: Scalar = 0
    y: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "x", coerce_scalar(self.x))
        object.__setattr__(self, "y", coerce_scalar(self.y))

    def to_sphere(self) -> "SpherePoint":
        return SpherePoint(self.x, self.y)

    def close(self, other: "GalileanPoint", tol: float) -> bool:
        return scalars_close(self.x, other.x, tol) and scalars_close(self.y, other.y, tol)


@dataclass(frozen=True)
class SpherePoint:
    """The point (1, i1*y, i1i2*z) of the unit sphere component x^2 = 1."""

    y: Scalar = 0
    z: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "y", coerce_scalar(self.y))
        object.__setattr__(self, "z", coerce_scalar(self.z))

    def to_plane(self) -> GalileanPoint:
        return GalileanPoint(self.y, self.z)

    def close(self, other: "SpherePoint", tol: float) -> bool:
        return scalars_close(self.y, other.y, tol) and scalars_close(self.z, other.z, tol)


def distance(p: GalileanPoint, q: GalileanPoint, eps: float = EPS_DIST) -> Scalar:
    """|x1 - x2| when the x-coordinates differ, otherwise |y1 - y2|."""
    dx = p.x - q.x
    if not is_zero_scalar(dx, eps):
        return abs(dx)
    return abs(p.y - q.y)


def act(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    """(x, y) -> (x + a, y + theta*x + b)."""
    return GalileanPoint(p.x + m.a, p.y + m.theta * p.x + m.b)


def act_on_sphere(m: GalileanMotion, s: SpherePoint) -> SpherePoint:
    return act(m, s.to_plane()).to_sphere()


def is_isometry_sample(m: GalileanMotion, p: GalileanPoint, q: GalileanPoint, tol: float = EPS_DIST) -> bool:
    return scalars_close(distance(act(m, p), act(m, q)), distance(p, q), tol)


# ──────────────────────────────────────────────
# Point matrices
# ──────────────────────────────────────────────

def point_matrix_h(s: SpherePoint) -> MatD2:
    """[[0, i1(y/2 + i2 z/2)], [i1(y/2 - i2 z/2), 1]]."""
    hy, hz = HALF * s.y, HALF * s.z
    return MatD2.from_rows([
        [0, D2Element(0, hy, 0, hz)],
        [D2Element(0, hy, 0, -hz), 1],
    ])


def point_from_matrix_h(H: MatD2) -> SpherePoint:
    entry = H[0, 1]
    return SpherePoint(2 * entry.a1, 2 * entry.a3)


def point_matrix_p(s: SpherePoint) -> MatD2:
    """[[-1, y + i*z], [0, 1]] with the dual unit in the i2 slot."""
    return MatD2.from_rows([
        [-1, D2Element(s.y, 0, s.z, 0)],
        [0, 1],
    ])


def point_from_matrix_p(P: MatD2) -> SpherePoint:
    entry = P[0, 1]
    return SpherePoint(entry.a0, entry.a2)


# ──────────────────────────────────────────────
# Action in each representation
# ──────────────────────────────────────────────

def _act_std(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    g = to_rep(m, RepId.STD_3X3).payload
    v = mat_mul(g, MatD2.column([1, p.x, p.y]))
    return GalileanPoint(v[1, 0].a0, v[2, 0].a0)


def _act_ortho(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    s = p.to_sphere()
    g = to_rep(m, RepId.ORTHO_3X3_D2).payload
    v = mat_mul(g, MatD2.column([1, D2Element(0, s.y), D2Element(0, 0, 0, s.z)]))
    return SpherePoint(v[1, 0].a1, v[2, 0].a3).to_plane()


def _act_su(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    u = to_rep(m, RepId.SU_D2).payload
    h = mat_mul(mat_mul(u, point_matrix_h(p.to_sphere())), mat_star(u))
    return point_from_matrix_h(h).to_plane()


def _act_upper(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    w = to_rep(m, RepId.UPPER_DUAL).payload
    moved = mat_mul(mat_mul(w, point_matrix_p(p.to_sphere())), mat_inverse_prop1(w))
    return point_from_matrix_p(moved).to_plane()


def _act_convenient(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    g = to_rep(m, RepId.CONVENIENT_DUAL).payload
    v = mat_mul(g, MatD2.column([D2Element(p.x, 0, p.y, 0), 1]))
    return GalileanPoint(v[0, 0].a0, v[0, 0].a2)


def _act_grassmann(m: GalileanMotion, p: GalileanPoint) -> GalileanPoint:
    from grassmann_clifford import clifford_act, cl3_to_point, motion_to_lambda1, point_to_cl3

    moved = clifford_act(motion_to_lambda1(m), point_to_cl3(p.to_sphere()))
    return cl3_to_point(moved).to_plane()


_ACTIONS = {
    RepId.STD_3X3: _act_std,
    RepId.ORTHO_3X3_D2: _act_ortho,
    RepId.SU_D2: _act_su,
    RepId.UPPER_DUAL: _act_upper,
    RepId.CONVENIENT_DUAL: _act_convenient,
    RepId.GRASSMANN: _act_grassmann,
}


def act_via_rep(m: GalileanMotion, p: GalileanPoint, rep: RepId) -> GalileanPoint:
    """Move p in the carrier of the given representation."""
    return _ACTIONS[rep](m, p)


# ──────────────────────────────────────────────
# Stereographic projection and fractional-linear maps
# ──────────────────────────────────────────────

def stereo_project(s: SpherePoint) -> Tuple[Scalar, Scalar]:
    """Projection from the pole (-1, 0, 0) onto the plane x = 0."""
    return (HALF * s.y, HALF * s.z)


def hypercomplex_coordinates(s: SpherePoint) -> Tuple[D2Element, D2Element]:
    """(xi, xi~) = (i1(y/2 + i2 z/2), i1(y/2 - i2 z/2))."""
    hy, hz = stereo_project(s)
    return D2Element(0, hy, 0, hz), D2Element(0, hy, 0, -hz)


@dataclass(frozen=True)
class HomogeneousDualPair:
    """Homogeneous coordinates (i1*xi1, xi2) with xi1, xi2 in the i2 dual numbers."""

    xi1: DualNumber
    xi2: DualNumber

    def as_column(self) -> MatD2:
        return MatD2.column([
            D2Element(0, self.xi1.a0, 0, self.xi1.a1),
            D2Element(self.xi2.a0, 0, self.xi2.a1, 0),
        ])

    @classmethod
    def from_column(cls, col: MatD2, tol: float = 0.0) -> "HomogeneousDualPair":
        top, bottom = col[0, 0], col[1, 0]
        if not (is_zero_scalar(top.a0, tol) and is_zero_scalar(top.a2, tol)):
            raise GalileanError(f"first coordinate {top} is not a multiple of i1")
        if not (is_zero_scalar(bottom.a1, tol) and is_zero_scalar(bottom.a3, tol)):
            raise GalileanError(f"second coordinate {bottom} is not in the i2 dual numbers")
        return cls(DualNumber(top.a1, top.a3), DualNumber(bottom.a0, bottom.a2))

    def normalized(self, eps: float = EPS_DIST) -> "HomogeneousDualPair":
        """Scale so that xi2 = 1."""
        if is_zero_scalar(self.xi2.a0, eps):
            logger.warning(f"cannot normalize homogeneous pair with xi2 = {self.xi2}")
            raise NonNormalizable("second coordinate has zero scalar part")
        return HomogeneousDualPair(self.xi1 / self.xi2, DualNumber(1, 0))

    def to_xi(self) -> D2Element:
        """The affine coordinate i1 * xi1 / xi2."""
        q = self.normalized().xi1
        return D2Element(0, q.a0, 0, q.a1)

    def close(self, other: "HomogeneousDualPair", tol: float) -> bool:
        return self.xi1.close(other.xi1, tol) and self.xi2.close(other.xi2, tol)


def homogeneous_from_point(s: SpherePoint) -> HomogeneousDualPair:
    hy, hz = stereo_project(s)
    return HomogeneousDualPair(DualNumber(hy, hz), DualNumber(1, 0))


def point_from_homogeneous(pair: HomogeneousDualPair) -> SpherePoint:
    """Undo the projection: the sphere point whose projection is the pair."""
    q = pair.normalized().xi1
    return SpherePoint(2 * q.a0, 2 * q.a1)


def moebius(m: GalileanMotion, pair: HomogeneousDualPair) -> HomogeneousDualPair:
    """Apply the SU(D2) matrix of m to homogeneous coordinates (not normalized)."""
    if is_zero_scalar(pair.xi2.a0, 0.0):
        logger.warning(f"moebius: homogeneous pair {pair} is not normalizable")
        raise NonNormalizable("second coordinate has zero scalar part")
    u = to_rep(m, RepId.SU_D2).payload
    return HomogeneousDualPair.from_column(mat_mul(u, pair.as_column()))


def _fractional(u: MatD2, xi: D2Element) -> D2Element:
    numerator = d2_add(d2_mul(u[0, 0], xi), u[0, 1])
    denominator = d2_add(d2_mul(u[1, 0], xi), u[1, 1])
    return d2_div(numerator, denominator)


def fractional_linear(m: GalileanMotion, xi: D2Element) -> D2Element:
    """eta = (u00 xi + u01) / (u10 xi + u11) with u the SU(D2) matrix of m."""
    return _fractional(to_rep(m, RepId.SU_D2).payload, xi)


def fractional_linear_conj(m: GalileanMotion, xi_conj: D2Element) -> D2Element:
    """The same map for the i2-conjugate coordinate xi~."""
    return _fractional(mat_conj_iota2(to_rep(m, RepId.SU_D2).payload), xi_conj)


def outer_star(pair: HomogeneousDualPair) -> MatD2:
    """xi xi* for the column of the pair."""
    col = pair.as_column()
    return mat_mul(col, mat_star(col))


# ──────────────────────────────────────────────
# Figure data
# ──────────────────────────────────────────────

def emit_projection_figure(points: Iterable[SpherePoint], m: GalileanMotion) -> List[Dict[str, Scalar]]:
    """One row per sphere point: the point, its image, and both projections."""
    rows = []
    for s in points:
        image = act_via_rep(m, s.to_plane(), RepId.ORTHO_3X3_D2).to_sphere()
        eta_y, eta_z = stereo_project(s)
        moved = moebius(m, homogeneous_from_point(s)).normalized().xi1
        eta_y_image, eta_z_image = moved.a0, moved.a1
        rows.append(dict(zip(FIGURE_COLUMNS, (
            s.y, s.z, image.y, image.z, eta_y, eta_z, eta_y_image, eta_z_image,
        ))))
    logger.debug(f"emit_projection_figure: {len(rows)} rows")
    return rows


def write_figure_csv(rows: List[Dict[str, Scalar]], target: Union[str, Path, object]) -> None:
    """Write figure rows as CSV with a header; values are written as floats."""

    def _write(f):
        writer = csv.DictWriter(f, fieldnames=FIGURE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: repr(float(row[key])) for key in FIGURE_COLUMNS})

    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as f:
            _write(f)
        logger.info(f"Wrote {len(rows)} figure rows to {target}")
    else:
        _write(target)
