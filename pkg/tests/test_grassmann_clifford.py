"""Tests for the Grassmann algebra, its matrix realization and Cl3."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "tools"))

from config import CL3_BASIS
from d2_matrix import mat_identity
from errors import GalileanError, NonInvertible, NotAPointElement, NotInLambda1
from galilean_group import GalileanMotion, RepId, compose, to_rep
from grassmann_clifford import (
    E1,
    E1E2,
    E2,
    CL3_TABLE,
    Cl3Element,
    GrassmannElement,
    clifford_act,
    cl3_basis,
    cl3_from_grassmann,
    cl3_mul,
    cl3_to_matrix,
    cl3_to_point,
    grassmann_conj,
    grassmann_inverse,
    grassmann_mul,
    grassmann_norm_sq,
    is_point_element,
    lambda1_to_motion,
    lambda_to_matrix,
    matrix_disagreements,
    matrix_to_cl3,
    matrix_to_lambda,
    motion_to_lambda1,
    point_to_cl3,
)
from plane_actions import SpherePoint, act_on_sphere

EXPECTED_FLIPS = {
    ("e3", "e1"),
    ("e3", "e1e2"),
    ("e3", "e1e3"),
    ("e3", "e1e2e3"),
    ("e2e3", "e1"),
    ("e2e3", "e1e3"),
}


def random_motion(rng):
    return GalileanMotion(*(Fraction(rng.randint(-30, 30), 6) for _ in range(3)))


# ──────────────────────────────────────────────
# Grassmann algebra
# ──────────────────────────────────────────────

class TestGrassmann:
    def test_relations(self):
        zero = GrassmannElement()
        assert grassmann_mul(E1, E1) == zero
        assert grassmann_mul(E2, E2) == zero
        assert grassmann_mul(E1, E2) == E1E2
        assert grassmann_mul(E2, E1) == -E1E2

    def test_conj_and_norm(self):
        q = GrassmannElement(3, 1, 2, 5)
        assert grassmann_conj(q) == GrassmannElement(3, -1, -2, -5)
        assert grassmann_mul(q, grassmann_conj(q)) == GrassmannElement(9)
        assert grassmann_norm_sq(q) == 9

    def test_inverse(self):
        q = GrassmannElement(2, 1, 3, 4)
        assert grassmann_mul(q, grassmann_inverse(q)) == GrassmannElement(1)
        assert grassmann_mul(grassmann_inverse(q), q) == GrassmannElement(1)

    def test_inverse_needs_scalar_part(self):
        with pytest.raises(NonInvertible):
            grassmann_inverse(E1)

    def test_lambda1_is_the_motion_group(self, rng):
        for _ in range(100):
            m1, m2 = random_motion(rng), random_motion(rng)
            product = grassmann_mul(motion_to_lambda1(m1), motion_to_lambda1(m2))
            assert product == motion_to_lambda1(compose(m1, m2))

    def test_lambda1_round_trip(self, rng):
        m = random_motion(rng)
        assert lambda1_to_motion(motion_to_lambda1(m)) == m

    def test_not_in_lambda1(self):
        with pytest.raises(NotInLambda1):
            lambda1_to_motion(GrassmannElement(2, 0, 0, 0))

    def test_matrix_realization_is_su(self, rng):
        for _ in range(20):
            m = random_motion(rng)
            assert lambda_to_matrix(motion_to_lambda1(m)) == to_rep(m, RepId.SU_D2).payload

    def test_matrix_realization_is_multiplicative(self, rng):
        p = GrassmannElement(*(Fraction(rng.randint(-5, 5)) for _ in range(4)))
        q = GrassmannElement(*(Fraction(rng.randint(-5, 5)) for _ in range(4)))
        from d2_matrix import mat_mul

        assert lambda_to_matrix(grassmann_mul(p, q)) == mat_mul(lambda_to_matrix(p), lambda_to_matrix(q))

    def test_matrix_to_lambda(self):
        q = GrassmannElement(1, 2, 3, 4)
        assert matrix_to_lambda(lambda_to_matrix(q)) == q
        with pytest.raises(GalileanError):
            matrix_to_lambda(mat_identity(3))


# ──────────────────────────────────────────────
# Clifford algebra
# ──────────────────────────────────────────────

class TestCl3:
    def test_relations(self):
        e1, e2, e3 = cl3_basis("e1"), cl3_basis("e2"), cl3_basis("e3")
        zero, one = Cl3Element(), cl3_basis("1")
        assert cl3_mul(e1, e1) == zero
        assert cl3_mul(e2, e2) == zero
        assert cl3_mul(e3, e3) == one
        assert cl3_mul(e1, e2) == cl3_basis("e1e2")
        assert cl3_mul(e2, e1) == -cl3_basis("e1e2")
        assert cl3_mul(e3, e1) == -cl3_basis("e1e3")

    def test_associative(self, rng):
        def random_cl3():
            return Cl3Element(tuple(Fraction(rng.randint(-3, 3)) for _ in range(8)))

        for _ in range(20):
            a, b, c = random_cl3(), random_cl3(), random_cl3()
            assert cl3_mul(cl3_mul(a, b), c) == cl3_mul(a, cl3_mul(b, c))

    def test_table_shape(self):
        assert len(CL3_TABLE) == 8 and all(len(row) == 8 for row in CL3_TABLE)
        assert CL3_TABLE[7][7] == (0, None)

    def test_unknown_basis(self):
        with pytest.raises(GalileanError):
            cl3_basis("e4")

    def test_grassmann_embedding(self):
        p, q = GrassmannElement(1, 2, 3, 4), GrassmannElement(2, -1, 0, 5)
        assert cl3_mul(cl3_from_grassmann(p), cl3_from_grassmann(q)) == cl3_from_grassmann(grassmann_mul(p, q))

    def test_matrix_disagreements(self):
        flips = matrix_disagreements()
        assert set(flips) == EXPECTED_FLIPS
        assert all(sign == -1 for sign in flips.values())
        assert 64 - len(flips) == 58

    def test_matrix_round_trip(self):
        for name in CL3_BASIS:
            v = cl3_basis(name)
            assert matrix_to_cl3(cl3_to_matrix(v)) == v


class TestPointElements:
    def test_point_element(self):
        v = point_to_cl3(SpherePoint(2, 3))
        assert v["e3"] == 1 and v["e2e3"] == 2 and v["e1e2e3"] == 3
        assert is_point_element(v)
        assert cl3_to_point(v) == SpherePoint(2, 3)

    def test_not_a_point(self):
        with pytest.raises(NotAPointElement):
            cl3_to_point(cl3_basis("e1"))

    def test_sandwich_moves_points(self, rng):
        for _ in range(50):
            m = random_motion(rng)
            s = SpherePoint(Fraction(rng.randint(-20, 20), 4), Fraction(rng.randint(-20, 20), 4))
            moved = clifford_act(motion_to_lambda1(m), point_to_cl3(s))
            assert cl3_to_point(moved) == act_on_sphere(m, s)

    def test_sandwich_preconditions(self):
        with pytest.raises(NotInLambda1):
            clifford_act(GrassmannElement(2), point_to_cl3(SpherePoint(0, 0)))
        with pytest.raises(NotAPointElement):
            clifford_act(GrassmannElement(1), cl3_basis("e1"))
