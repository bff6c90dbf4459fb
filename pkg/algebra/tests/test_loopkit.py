from fractions import Fraction

from django.test import SimpleTestCase

from algebra.builders import chevalley_generators, classical
from algebra.exact_linalg import Matrix
from algebra.exceptions import AlgebraInputError
from algebra.loopkit import (
    CentroidCandidate, LoopAlgebra, LoopElement, affine_generators, apply_candidate, centroid_membership,
    chevalley_involution, describe_element, loop_bracket, sign_involution, symbolic_cocycle_check,
    toralcor_check, toralcor_check_loop, verify_jacobi, window_component_exclusion,
)


def affine(has_d=False):
    return LoopAlgebra(classical('A', 1), has_c=True, has_d=has_d)


class LoopBracketTests(SimpleTestCase):
    def test_affine_cocycle(self):
        l = affine()
        sl2 = l.base
        result = loop_bracket(l, l.monomial('e', 1), l.monomial('f', -1))
        self.assertEqual(result, LoopElement(((0, sl2.basis_vector('h')),), c=4))
        self.assertEqual(describe_element(l, result), '(1*h)t^0 + 4c')

    def test_degree_derivation(self):
        l = affine(has_d=True)
        result = loop_bracket(l, l.d_element, l.monomial('e', 2))
        self.assertEqual(result, l.monomial('e', 2).scaled(2))

    def test_missing_central_element(self):
        l = LoopAlgebra(classical('A', 1), has_c=False)
        with self.assertRaises(AlgebraInputError):
            l.c_element

    def test_elements_merge_terms(self):
        x = LoopElement(((1, (1, 0, 0)), (1, (-1, 0, 0))))
        self.assertTrue(x.is_zero())

    def test_jacobi_in_window(self):
        self.assertTrue(verify_jacobi(affine(has_d=True), window=1)['passed'])

    def test_symbolic_identities(self):
        self.assertTrue(symbolic_cocycle_check(affine(has_d=True))['passed'])


class TwistTests(SimpleTestCase):
    def test_sign_involution(self):
        sl2 = classical('A', 1)
        sigma = sign_involution(sl2, [-1, 1, -1])
        l = LoopAlgebra(sl2, twist=sigma)
        self.assertEqual(l.component(1).dim, 2)
        self.assertEqual(l.component(0).dim, 1)
        with self.assertRaises(AlgebraInputError):
            l.monomial('h', 1)

    def test_identity_twist_rejected(self):
        with self.assertRaises(AlgebraInputError):
            LoopAlgebra(classical('A', 1), twist=Matrix.identity(3))

    def test_non_automorphism_signs(self):
        with self.assertRaises(AlgebraInputError):
            sign_involution(classical('A', 1), [-1, 1, 1])

    def test_chevalley_involution(self):
        sigma = chevalley_involution(1)
        self.assertEqual(sigma @ sigma, Matrix.identity(3))
        self.assertEqual(sigma.apply((1, 0, 0)), (0, 0, -1))


class MembershipTests(SimpleTestCase):
    def test_identity_is_member(self):
        report = centroid_membership(affine(), CentroidCandidate(), window=2)
        self.assertTrue(report['member'])
        self.assertTrue(report['symbolically_verified'])

    def test_shift_rejected_with_witness(self):
        report = centroid_membership(affine(), CentroidCandidate(((1, 1),)), window=2)
        self.assertFalse(report['member'])
        self.assertEqual(report['witness']['family'], 'loop-loop')
        self.assertEqual(report['witness']['side'], '[chi x, y] vs [x, chi y]')
        self.assertEqual((report['witness']['p'], report['witness']['q']), (1, -2))
        self.assertNotEqual(report['witness']['left'], report['witness']['right'])

    def test_shift_kept_without_centre(self):
        l = LoopAlgebra(classical('A', 1), has_c=False)
        self.assertTrue(centroid_membership(l, CentroidCandidate(((1, 1),)), window=2)['member'])

    def test_d_to_c(self):
        l = affine(has_d=True)
        cand = CentroidCandidate((), 0, 1)
        self.assertEqual(apply_candidate(l, cand, l.d_element), l.c_element)
        self.assertTrue(centroid_membership(l, cand, window=2)['member'])
        with self.assertRaises(AlgebraInputError):
            centroid_membership(affine(), cand, window=1)


class ExclusionTests(SimpleTestCase):
    def test_degree_one_excluded_with_centre(self):
        report = window_component_exclusion(affine(), 1, window=2)
        self.assertTrue(report['excluded'])
        self.assertTrue(report['certificate'])

    def test_degree_one_survives_without_centre(self):
        report = window_component_exclusion(LoopAlgebra(classical('A', 1), has_c=False), 1, window=2)
        self.assertFalse(report['excluded'])
        self.assertEqual(report['result'], 'no certificate')

    def test_degree_zero_not_applicable(self):
        self.assertFalse(window_component_exclusion(affine(), 0)['applicable'])


class ToralCorTests(SimpleTestCase):
    def test_finite_cartan_matrix(self):
        report = toralcor_check(classical('A', 2), chevalley_generators('A', 2))
        self.assertTrue(report.passed)
        self.assertEqual(report.matrix_a, [[2, -1], [-1, 2]])
        self.assertEqual(report.conclusion['predicted_dim'], 1)
        self.assertTrue(report.conclusion['cross_check'])

    def test_affine_loop(self):
        l = affine(has_d=True)
        report = toralcor_check_loop(l, affine_generators(l), window=2)
        self.assertTrue(report.passed)
        self.assertEqual(report.matrix_a, [[Fraction(2), Fraction(-2)], [Fraction(-2), Fraction(2)]])
        self.assertEqual(report.conclusion['predicted_dim'], 2)
        self.assertTrue(report.conclusion['members_verified'])
        self.assertTrue(report.conclusion['degree_one_excluded'])

    def test_affine_generators_need_untwisted_sl2(self):
        with self.assertRaises(AlgebraInputError):
            affine_generators(LoopAlgebra(classical('A', 2)))
