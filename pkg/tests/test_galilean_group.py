"""Tests for the Galilean motion group and its six representations."""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "tools"))

from d2_matrix import MatD2, is_orthogonal_unimodular, is_su_d2, mat_identity, matches_so3_pattern
from errors import DimensionMismatch, EmptyInput, MalformedRepElement, ParseError, Unsupported
from galilean_group import (
    GalileanMotion,
    RepElement,
    RepId,
    commutator,
    compose,
    compose_all,
    conjugate,
    factorize,
    from_rep,
    generators,
    grassmann_generators,
    inverse,
    lie_bracket_check,
    motion_from_su_parameters,
    motion_from_upper_parameters,
    motion_power,
    rep_identity,
    rep_inverse,
    rep_product,
    reps_close,
    so3_element,
    so3_parameters,
    su_matrix,
    su_parameters,
    to_rep,
    upper_parameters,
    validate_rep,
)
from grassmann_clifford import GrassmannElement
from pimenov_core import D2Element


def random_motion(rng, denominator=4):
    return GalileanMotion(*(Fraction(rng.randint(-20, 20), denominator) for _ in range(3)))


# ──────────────────────────────────────────────
# Canonical motions
# ──────────────────────────────────────────────

class TestComposition:
    def test_worked_example(self):
        assert compose(GalileanMotion(1, 2, 3), GalileanMotion(4, 5, 6)) == GalileanMotion(5, 19, 9)

    def test_inverse_example(self):
        assert inverse(GalileanMotion(1, 2, 3)) == GalileanMotion(-1, 1, -3)

    def test_group_axioms(self, rng):
        identity = GalileanMotion.identity()
        for _ in range(100):
            m1, m2, m3 = random_motion(rng), random_motion(rng), random_motion(rng)
            assert compose(compose(m1, m2), m3) == compose(m1, compose(m2, m3))
            assert compose(m1, inverse(m1)) == identity
            assert compose(inverse(m1), m1) == identity
            assert compose(m1, identity) == m1

    def test_not_commutative(self):
        m1, m2 = GalileanMotion(1, 0, 0), GalileanMotion(0, 0, 1)
        assert compose(m1, m2) != compose(m2, m1)

    def test_compose_all(self):
        motions = [GalileanMotion(1, 2, 3), GalileanMotion(4, 5, 6), GalileanMotion(0, 0, 1)]
        assert compose_all(motions) == compose(compose(motions[0], motions[1]), motions[2])
        assert compose_all([GalileanMotion(1, 2, 3)]) == GalileanMotion(1, 2, 3)

    def test_compose_all_empty(self):
        with pytest.raises(EmptyInput):
            compose_all([])

    def test_power(self):
        m = GalileanMotion(1, 2, 3)
        assert motion_power(m, 3) == compose(m, compose(m, m))
        assert motion_power(m, -1) == inverse(m)
        assert motion_power(m, 0) == GalileanMotion.identity()

    def test_conjugate_of_translation(self):
        # boosts shear a pure a-translation into the b direction
        assert conjugate(GalileanMotion(0, 0, 2), GalileanMotion(1, 0, 0)) == GalileanMotion(1, 2, 0)


class TestParameterDictionaries:
    def test_su_round_trip(self, rng):
        for _ in range(50):
            m = random_motion(rng)
            assert motion_from_su_parameters(*su_parameters(m)) == m

    def test_su_example(self):
        assert motion_from_su_parameters(1, 2, 3) == GalileanMotion(4, 10, 2)

    def test_upper_matches_su(self):
        m = GalileanMotion(5, 7, 2)
        assert upper_parameters(m) == su_parameters(m)
        assert motion_from_upper_parameters(*upper_parameters(m)) == m


# ──────────────────────────────────────────────
# Representations
# ──────────────────────────────────────────────

class TestRepresentations:
    def test_parse(self):
        assert RepId.parse("SuD2") is RepId.SU_D2
        with pytest.raises(ParseError):
            RepId.parse("Quaternion")

    def test_std_matrix(self):
        e = to_rep(GalileanMotion(5, 7, 2), RepId.STD_3X3)
        assert e.payload == MatD2.from_rows([[1, 0, 0], [5, 1, 0], [7, 2, 1]])

    def test_convenient_example(self):
        e = to_rep(GalileanMotion(5, 7, 2), RepId.CONVENIENT_DUAL)
        assert e.payload == MatD2.from_rows([[D2Element(1, 0, 2), D2Element(5, 0, 7)], [0, 1]])

    def test_su_matrix_example(self):
        e = to_rep(GalileanMotion(4, 10, 2), RepId.SU_D2)
        assert e.payload == su_matrix(1, 2, 3)

    def test_grassmann_payload(self):
        e = to_rep(GalileanMotion(4, 10, 2), RepId.GRASSMANN)
        assert e.payload == GrassmannElement(1, 1, 2, 3)

    @pytest.mark.parametrize("rep", list(RepId))
    def test_homomorphism(self, rep, rng):
        for _ in range(30):
            m1, m2 = random_motion(rng), random_motion(rng)
            assert reps_close(rep_product(to_rep(m1, rep), to_rep(m2, rep)), to_rep(compose(m1, m2), rep), 0.0)

    @pytest.mark.parametrize("rep", list(RepId))
    def test_round_trip(self, rep, rng):
        for _ in range(30):
            m = random_motion(rng)
            assert from_rep(to_rep(m, rep)) == m

    @pytest.mark.parametrize("rep", list(RepId))
    def test_identity_and_inverse(self, rep, rng):
        m = random_motion(rng)
        e = to_rep(m, rep)
        assert reps_close(rep_identity(rep), to_rep(GalileanMotion.identity(), rep), 0.0)
        assert reps_close(rep_product(e, rep_inverse(e)), rep_identity(rep), 0.0)
        assert reps_close(rep_inverse(e), to_rep(inverse(m), rep), 0.0)

    def test_mixed_product_rejected(self):
        with pytest.raises(Unsupported):
            rep_product(rep_identity(RepId.SU_D2), rep_identity(RepId.UPPER_DUAL))


class TestMembership:
    def test_su_membership(self, rng):
        for _ in range(30):
            assert is_su_d2(to_rep(random_motion(rng), RepId.SU_D2).payload, 0.0)

    def test_ortho_membership(self, rng):
        for _ in range(30):
            m = random_motion(rng)
            for s1 in (1, -1):
                for s2 in (1, -1):
                    A = so3_element(m.a, m.b, m.theta, s1, s2)
                    assert is_orthogonal_unimodular(A, 0.0)
                    assert matches_so3_pattern(A, 0.0)

    def test_sign_variant_at_zero(self):
        assert so3_element(0, 0, 0, -1, -1) == MatD2.from_rows([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])

    def test_so3_parameters(self):
        A = so3_element(1, 2, 3, -1, 1)
        assert so3_parameters(A) == (1, 2, 3, -1, 1)

    def test_so3_parameters_rejects(self):
        with pytest.raises(MalformedRepElement):
            so3_parameters(mat_identity(2))
        with pytest.raises(MalformedRepElement):
            so3_element(1, 2, 3, 2, 1)


class TestValidation:
    def test_valid(self):
        assert validate_rep(to_rep(GalileanMotion(1, 2, 3), RepId.ORTHO_3X3_D2))

    def test_wrong_shape(self):
        assert not validate_rep(RepElement(RepId.SU_D2, mat_identity(3)))

    def test_wrong_form(self):
        bad = MatD2.from_rows([[2, 0], [0, 1]])
        assert not validate_rep(RepElement(RepId.CONVENIENT_DUAL, bad))
        with pytest.raises(MalformedRepElement):
            from_rep(RepElement(RepId.CONVENIENT_DUAL, bad))

    def test_unvalidated_read(self):
        bad = RepElement(RepId.CONVENIENT_DUAL, MatD2.from_rows([[2, 0], [0, 1]]))
        assert from_rep(bad, validate=False) == GalileanMotion(0, 0, 0)
        good = to_rep(GalileanMotion(1, 2, 3), RepId.SU_D2)
        assert from_rep(good, validate=False) == from_rep(good)

    def test_sign_variant_is_not_g2(self):
        variant = so3_element(1, 2, 3, -1, 1)
        assert matches_so3_pattern(variant)
        assert not validate_rep(RepElement(RepId.ORTHO_3X3_D2, variant))

    def test_grassmann_outside_lambda1(self):
        assert not validate_rep(RepElement(RepId.GRASSMANN, GrassmannElement(2, 0, 0, 0)))

    def test_grassmann_payload_type(self):
        assert not validate_rep(RepElement(RepId.GRASSMANN, mat_identity(2)))


class TestFactorization:
    @pytest.mark.parametrize("rep", [RepId.STD_3X3, RepId.ORTHO_3X3_D2, RepId.SU_D2])
    def test_factors_multiply_back(self, rep, rng):
        for _ in range(10):
            m = random_motion(rng)
            fa, fb, ft = factorize(m, rep)
            assert reps_close(rep_product(rep_product(fa, fb), ft), to_rep(m, rep), 0.0)

    def test_unsupported(self):
        with pytest.raises(Unsupported):
            factorize(GalileanMotion(1, 2, 3), RepId.UPPER_DUAL)


# ──────────────────────────────────────────────
# Lie algebra
# ──────────────────────────────────────────────

class TestLieAlgebra:
    @pytest.mark.parametrize("rep", [r for r in RepId if r.is_matrix])
    def test_commutation_relations(self, rep):
        checks = lie_bracket_check(generators(rep), tol=0.0)
        assert all(checks.values()), checks

    def test_grassmann_commutation_relations(self):
        checks = lie_bracket_check(grassmann_generators(), tol=0.0)
        assert all(checks.values()), checks

    def test_grassmann_generators_via_rep(self):
        with pytest.raises(Unsupported):
            generators(RepId.GRASSMANN)

    def test_commutator_shapes(self):
        with pytest.raises(DimensionMismatch):
            commutator(mat_identity(2), mat_identity(3))

    def test_std_generators(self):
        A1, A2, A3 = (g.payload for g in generators(RepId.STD_3X3))
        assert A1 == MatD2.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
        assert commutator(A3, A1) == A2
