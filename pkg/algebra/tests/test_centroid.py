from django.test import SimpleTestCase

from algebra.builders import (
    abelian, classical, finite_loop_analog, group_algebra, heisenberg, oscillator, tensor, truncated_poly,
)
from algebra.centroid import (
    centroid, centroid_cap_der, centroid_local_analysis, centroid_symmetry_check, centroid_witness,
    describe_centroid, division_graded_report, evaluation_map_injective, graded_centroid,
    induce_quotient_centroid, induced_aut_action, induced_der_action, is_centroidal,
    recognize_twisted_group_ring, toral_centroid, vanishing_ideal,
)
from algebra.exact_linalg import Matrix, Subspace
from algebra.exceptions import AlgebraInputError
from algebra.liecore import centre, direct_sum


class CentroidSolveTests(SimpleTestCase):
    def test_central_simple(self):
        for kind, rank in (('A', 1), ('A', 2), ('C', 2)):
            cent = centroid(classical(kind, rank))
            self.assertEqual(cent.dim, 1)
            self.assertTrue(cent.contains(Matrix.identity(cent.algebra.dim)))

    def test_heisenberg_family(self):
        for n in (1, 2, 3):
            cent = centroid(heisenberg(n))
            self.assertEqual(cent.dim, 2 * n + 1)
            self.assertTrue(cent.is_commutative)

    def test_abelian_centroid_is_full_matrix_algebra(self):
        cent = centroid(abelian(2))
        self.assertEqual(cent.dim, 4)
        self.assertFalse(cent.is_commutative)

    def test_tensor_centroid_matches_coordinates(self):
        sl2 = classical('A', 1)
        self.assertEqual(centroid(tensor(sl2, truncated_poly(2))).dim, 2)
        self.assertEqual(centroid(tensor(sl2, group_algebra([3]))).dim, 3)

    def test_identity_first(self):
        cent = centroid(oscillator())
        self.assertEqual(cent.maps[cent.identity_index], Matrix.identity(4))
        self.assertEqual(describe_centroid(cent)['dim'], cent.dim)

    def test_witness(self):
        sl2 = classical('A', 1)
        self.assertIsNotNone(centroid_witness(sl2, Matrix.diagonal([1, 0, 0])))
        self.assertTrue(is_centroidal(sl2, Matrix.identity(3).scaled(5)))


class IdealAndDerivationTests(SimpleTestCase):
    def test_vanishing_ideal_of_centre(self):
        h = heisenberg(1)
        self.assertEqual(len(vanishing_ideal(h, centre(h))), 2)

    def test_vanishing_ideal_needs_ideal(self):
        sl2 = classical('A', 1)
        with self.assertRaises(AlgebraInputError):
            vanishing_ideal(sl2, Subspace.span([sl2.basis_vector('e')], 3))

    def test_centroid_cap_der(self):
        self.assertEqual(len(centroid_cap_der(heisenberg(1))), 2)
        self.assertEqual(centroid_cap_der(classical('A', 1)), [])


class GradedCentroidTests(SimpleTestCase):
    def test_finite_loop_is_division_graded(self):
        g = finite_loop_analog(classical('A', 1), 3)
        gc = graded_centroid(g)
        self.assertEqual(gc.dim, 3)
        self.assertEqual(gc.support, [(0,), (1,), (2,)])
        report = division_graded_report(gc)
        self.assertTrue(report['division_graded'])
        self.assertTrue(report['support_is_subgroup'])
        recognized = recognize_twisted_group_ring(gc)
        self.assertTrue(recognized['supported'])
        self.assertTrue(recognized['trivial'])

    def test_graded_heisenberg_is_not_division_graded(self):
        report = division_graded_report(graded_centroid(heisenberg(1, graded=True)))
        self.assertFalse(report['division_graded'])

    def test_ungraded_algebra(self):
        with self.assertRaises(AlgebraInputError):
            graded_centroid(classical('A', 1))

    def test_evaluation_map(self):
        g = finite_loop_analog(classical('A', 1), 3)
        self.assertTrue(evaluation_map_injective(g, g.basis_vector('e*1')))
        with self.assertRaises(AlgebraInputError):
            evaluation_map_injective(g, (0,) * g.dim)


class LocalStructureTests(SimpleTestCase):
    def test_truncated_tensor_is_local(self):
        report = centroid_local_analysis(tensor(classical('A', 1), truncated_poly(2)))
        self.assertEqual(report['radical_dim'], 1)
        self.assertEqual(report['verdict'], 'indecomposable')

    def test_direct_sum_is_decomposable(self):
        s = direct_sum(classical('A', 1), classical('A', 1))
        report = centroid_local_analysis(s)
        self.assertEqual(report['centroid_dim'], 2)
        self.assertEqual(report['verdict'], 'decomposable')
        e = report['idempotent']
        self.assertEqual(e @ e, e)

    def test_symmetry(self):
        report = centroid_symmetry_check(classical('A', 1))
        self.assertTrue(report['precondition'])
        self.assertTrue(report['symmetric'])

    def test_quotient_by_centre(self):
        h = heisenberg(1)
        result = induce_quotient_centroid(h, centre(h))
        self.assertEqual(result['quotient'].dim, 2)
        self.assertEqual(len(result['compatible']), 3)
        self.assertIsNone(result['injective'])

    def test_quotient_needs_central_ideal(self):
        sl2 = classical('A', 1)
        with self.assertRaises(AlgebraInputError):
            induce_quotient_centroid(sl2, Subspace.whole(3))


class ToralTests(SimpleTestCase):
    def test_reconstruction_matches(self):
        basis, certificate = toral_centroid(classical('A', 2))
        self.assertEqual(basis.dim, 1)
        self.assertFalse(certificate['fallback'])
        self.assertTrue(certificate['matches_brute_force'])
        self.assertEqual(certificate['toral_dim'], 2)

    def test_oscillator(self):
        basis, certificate = toral_centroid(oscillator())
        self.assertEqual(basis.dim, centroid(oscillator()).dim)
        self.assertTrue(certificate['matches_brute_force'])

    def test_zero_toral_falls_back(self):
        _, certificate = toral_centroid(heisenberg(1), toral=Subspace.zero(3))
        self.assertTrue(certificate['fallback'])


class InducedActionTests(SimpleTestCase):
    def test_inner_derivation_acts_trivially(self):
        sl2 = classical('A', 1)
        self.assertTrue(induced_der_action(sl2, sl2.ad_basis(0)).is_zero())

    def test_identity_automorphism(self):
        self.assertEqual(induced_aut_action(classical('A', 1), Matrix.identity(3)), Matrix.identity(1))

    def test_rejects_non_derivation(self):
        with self.assertRaises(AlgebraInputError):
            induced_der_action(classical('A', 1), Matrix.diagonal([1, 1, 1]))
