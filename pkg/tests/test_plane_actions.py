"""Tests for plane points, the six action paths and the stereographic projection."""
import io
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "tools"))

from config import FIGURE_COLUMNS
from d2_matrix import MatD2
from errors import NonNormalizable
from galilean_group import GalileanMotion, RepId, compose
from pimenov_core import D2Element, DualNumber
from plane_actions import (
    GalileanPoint,
    HomogeneousDualPair,
    SpherePoint,
    act,
    act_on_sphere,
    act_via_rep,
    distance,
    emit_projection_figure,
    fractional_linear,
    fractional_linear_conj,
    homogeneous_from_point,
    hypercomplex_coordinates,
    is_isometry_sample,
    moebius,
    outer_star,
    point_from_homogeneous,
    point_from_matrix_h,
    point_from_matrix_p,
    point_matrix_h,
    point_matrix_p,
    stereo_project,
    write_figure_csv,
)


def random_scalar(rng):
    return Fraction(rng.randint(-60, 60), 12)


def random_motion(rng):
    return GalileanMotion(random_scalar(rng), random_scalar(rng), random_scalar(rng))


def random_point(rng):
    return GalileanPoint(random_scalar(rng), random_scalar(rng))


# ──────────────────────────────────────────────
# Points and distance
# ──────────────────────────────────────────────

class TestDistance:
    def test_different_x(self):
        assert distance(GalileanPoint(1, 5), GalileanPoint(4, -7)) == 3

    def test_same_x_uses_y(self):
        assert distance(GalileanPoint(2, 1), GalileanPoint(2, 6)) == 5

    def test_float_threshold(self):
        assert distance(GalileanPoint(2.0, 1.0), GalileanPoint(2.0 + 1e-14, 6.0)) == 5.0

    def test_sphere_identification(self):
        p = GalileanPoint(2, 3)
        assert p.to_sphere() == SpherePoint(2, 3)
        assert p.to_sphere().to_plane() == p


class TestAct:
    def test_formula(self):
        assert act(GalileanMotion(1, 2, 3), GalileanPoint(4, 5)) == GalileanPoint(5, 5 + 12 + 2)

    def test_identity(self, rng):
        p = random_point(rng)
        assert act(GalileanMotion.identity(), p) == p

    def test_homomorphism(self, rng):
        for _ in range(100):
            m1, m2, p = random_motion(rng), random_motion(rng), random_point(rng)
            assert act(compose(m1, m2), p) == act(m1, act(m2, p))

    def test_isometry(self, rng):
        for i in range(100):
            m, p, q = random_motion(rng), random_point(rng), random_point(rng)
            if i % 2:
                q = GalileanPoint(p.x, q.y)
            assert is_isometry_sample(m, p, q)

    @pytest.mark.parametrize("rep", list(RepId))
    def test_every_path_agrees(self, rep, rng):
        for _ in range(30):
            m, p = random_motion(rng), random_point(rng)
            assert act_via_rep(m, p, rep) == act(m, p)

    @pytest.mark.parametrize("rep", list(RepId))
    def test_float_paths_agree(self, rep):
        m, p = GalileanMotion(0.5, -1.25, 2.0), GalileanPoint(1.5, 0.75)
        assert act_via_rep(m, p, rep).close(act(m, p), 1e-9)

    def test_act_on_sphere(self):
        assert act_on_sphere(GalileanMotion(1, 1, 1), SpherePoint(2, 3)) == SpherePoint(3, 6)


# ──────────────────────────────────────────────
# Point matrices
# ──────────────────────────────────────────────

class TestPointMatrices:
    def test_h_example(self):
        H = point_matrix_h(SpherePoint(2, 4))
        assert H == MatD2.from_rows([[0, D2Element(0, 1, 0, 2)], [D2Element(0, 1, 0, -2), 1]])
        assert point_from_matrix_h(H) == SpherePoint(2, 4)

    def test_p_round_trip(self):
        s = SpherePoint(Fraction(1, 3), -2)
        assert point_from_matrix_p(point_matrix_p(s)) == s


# ──────────────────────────────────────────────
# Projection and fractional-linear maps
# ──────────────────────────────────────────────

class TestProjection:
    def test_stereo_example(self):
        assert stereo_project(SpherePoint(2, 6)) == (1, 3)

    def test_hypercomplex(self):
        xi, xi_conj = hypercomplex_coordinates(SpherePoint(2, 6))
        assert xi == D2Element(0, 1, 0, 3)
        assert xi_conj == D2Element(0, 1, 0, -3)

    def test_homogeneous_round_trip(self, rng):
        s = SpherePoint(random_scalar(rng), random_scalar(rng))
        assert point_from_homogeneous(homogeneous_from_point(s)) == s

    def test_normalization(self):
        pair = HomogeneousDualPair(DualNumber(2, 4), DualNumber(2, 0))
        assert pair.normalized() == HomogeneousDualPair(DualNumber(1, 2), DualNumber(1, 0))

    def test_not_normalizable(self, caplog):
        pair = HomogeneousDualPair(DualNumber(1, 0), DualNumber(0, 1))
        with pytest.raises(NonNormalizable):
            pair.normalized()
        with pytest.raises(NonNormalizable):
            moebius(GalileanMotion(1, 2, 3), pair)
        assert "normaliz" in caplog.text

    def test_commuting_square(self, rng):
        for _ in range(50):
            m = random_motion(rng)
            s = SpherePoint(random_scalar(rng), random_scalar(rng))
            moved = moebius(m, homogeneous_from_point(s)).normalized()
            assert moved == homogeneous_from_point(act_on_sphere(m, s))

    def test_outer_star_is_point_matrix(self, rng):
        for _ in range(20):
            s = SpherePoint(random_scalar(rng), random_scalar(rng))
            assert outer_star(homogeneous_from_point(s)) == point_matrix_h(s)

    def test_fractional_linear(self, rng):
        for _ in range(50):
            m = random_motion(rng)
            s = SpherePoint(random_scalar(rng), random_scalar(rng))
            xi, xi_conj = hypercomplex_coordinates(s)
            eta, eta_conj = hypercomplex_coordinates(act_on_sphere(m, s))
            assert fractional_linear(m, xi) == eta
            assert fractional_linear_conj(m, xi_conj) == eta_conj


# ──────────────────────────────────────────────
# Figure data
# ──────────────────────────────────────────────

class TestFigure:
    def test_identity_maps_to_itself(self):
        rows = emit_projection_figure([SpherePoint(0, 0)], GalileanMotion.identity())
        assert len(rows) == 1
        row = rows[0]
        assert list(row) == list(FIGURE_COLUMNS)
        assert (row["y"], row["z"]) == (row["y_image"], row["z_image"])
        assert (row["eta_y"], row["eta_z"]) == (row["eta_y_image"], row["eta_z_image"])

    def test_empty_grid(self):
        assert emit_projection_figure([], GalileanMotion(1, 2, 3)) == []
        buf = io.StringIO()
        write_figure_csv([], buf)
        assert buf.getvalue().splitlines() == [",".join(FIGURE_COLUMNS)]

    def test_rows_agree_with_act(self):
        m = GalileanMotion(1, 1, 1)
        points = [SpherePoint(y, z) for y in (-1, 0, 1) for z in (-1, 0, 1)]
        rows = emit_projection_figure(points, m)
        assert len(rows) == 9
        for s, row in zip(points, rows):
            image = act_on_sphere(m, s)
            assert (row["y_image"], row["z_image"]) == (image.y, image.z)
            assert (row["eta_y_image"], row["eta_z_image"]) == stereo_project(image)

    def test_csv_stream(self):
        rows = emit_projection_figure([SpherePoint(2, 6)], GalileanMotion.identity())
        buf = io.StringIO()
        write_figure_csv(rows, buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == ",".join(FIGURE_COLUMNS)
        assert lines[1] == "2.0,6.0,2.0,6.0,1.0,3.0,1.0,3.0"

    def test_csv_file(self, tmp_path):
        path = tmp_path / "figure.csv"
        write_figure_csv(emit_projection_figure([SpherePoint(0, 0)], GalileanMotion(1, 0, 0)), path)
        assert path.read_text().splitlines()[1] == "0.0,0.0,1.0,0.0,0.0,0.0,0.5,0.0"
