from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from algebra.builders import (
    abelian, chevalley_generators, classical, field_ext, finite_loop_analog, group_algebra, heisenberg,
    height_graded, matrix_assoc, oscillator, restrict_scalars, sl_n_over, sl_n_over_embedding, tensor,
    tensor_centroid_expectation, tensor_grading_embedding, truncated_poly, twisted_group_ring,
)
from algebra.exceptions import AlgebraInputError
from algebra.liecore import is_homomorphism, validate


class CoordinateAlgebraTests(SimpleTestCase):
    def test_truncated_poly(self):
        b = truncated_poly(3)
        self.assertTrue(b.validate()['passed'])
        self.assertTrue(b.is_commutative)
        self.assertEqual(b.basis_names, ('1', 't', 't^2'))
        self.assertEqual(b.product_basis(1, 1), (0, 0, 1))
        self.assertEqual(b.product_basis(1, 2), (0, 0, 0))
        self.assertEqual(truncated_poly(2).derivations().dim, 1)

    def test_truncated_poly_needs_positive_k(self):
        with self.assertRaises(AlgebraInputError):
            truncated_poly(0)

    def test_field_extension(self):
        q2 = field_ext(['1', '0', '-2'])
        self.assertEqual(q2.dim, 2)
        self.assertEqual(q2.product_basis(1, 1), (Fraction(2), Fraction(0)))
        self.assertEqual(q2.derivations().dim, 0)

    def test_reducible_polynomial(self):
        with self.assertRaises(AlgebraInputError) as ctx:
            field_ext([1, 0, -1])
        self.assertIsNotNone(ctx.exception.witness)
        with self.assertRaises(AlgebraInputError):
            field_ext([5])

    def test_matrix_algebra(self):
        m2 = matrix_assoc(2)
        self.assertEqual(m2.dim, 4)
        self.assertFalse(m2.is_commutative)
        self.assertEqual(m2.centre().dim, 1)
        self.assertEqual(m2.commutator_space().dim, 3)

    def test_group_algebra(self):
        b = group_algebra([3])
        self.assertEqual(b.basis_names, ('1', 'u', 'u^2'))
        self.assertEqual(b.product_basis(1, 2), b.unit)
        self.assertEqual(b.grading.torsion, (3,))

    def test_twisted_group_ring(self):
        b = twisted_group_ring([2], {(1, 1): -1})
        self.assertEqual(b.name, 'Q^t[Z/2]')
        self.assertEqual(b.product_basis(1, 1), (Fraction(-1), Fraction(0)))

    def test_twist_must_be_cocycle(self):
        with self.assertRaises(AlgebraInputError):
            twisted_group_ring([3], {(1, 1): 2})
        with self.assertRaises(AlgebraInputError):
            twisted_group_ring([2], {(0, 0): 2})


class LieFamilyTests(SimpleTestCase):
    def test_heisenberg_names(self):
        self.assertEqual(heisenberg(1).basis_names, ('a', 'b', 'c'))
        self.assertEqual(heisenberg(2).basis_names, ('a1', 'a2', 'b1', 'b2', 'c'))
        graded = heisenberg(1, graded=True)
        self.assertEqual(graded.grading.degrees, ((1,), (-1,), (0,)))

    def test_oscillator(self):
        osc = oscillator()
        self.assertEqual(osc.basis_names, ('d', 'a', 'b', 'c'))
        self.assertEqual(osc.toral_indices, (0,))
        self.assertTrue(validate(osc)['passed'])

    def test_abelian(self):
        self.assertEqual(abelian(4).brackets, ())
        with self.assertRaises(AlgebraInputError):
            abelian(0)

    def test_classical_dimensions(self):
        for kind, rank, dim in (('A', 1, 3), ('A', 2, 8), ('B', 2, 10), ('C', 2, 10), ('D', 3, 15)):
            g = classical(kind, rank)
            self.assertEqual(g.dim, dim)
            self.assertEqual(len(g.toral_indices), rank)

    @override_settings(CENTROIDKIT={'VERIFY_BUILDS': True})
    def test_verified_build(self):
        self.assertEqual(classical('A', 1).basis_names, ('e', 'h', 'f'))

    def test_unsupported_classical(self):
        with self.assertRaises(AlgebraInputError):
            classical('E', 6)
        with self.assertRaises(AlgebraInputError):
            classical('D', 2)

    def test_chevalley_generators(self):
        sl3 = classical('A', 2)
        pairs = chevalley_generators('A', 2)
        self.assertEqual(len(pairs), 2)
        toral = sl3.toral_subspace()
        for e, f in pairs:
            self.assertTrue(toral.contains(sl3.bracket(e, f)))

    def test_height_grading(self):
        g = height_graded('A', 1)
        self.assertEqual(g.grading.degrees, ((1,), (0,), (-1,)))
        self.assertEqual(sorted({d[0] for d in height_graded('A', 2).grading.degrees}), [-2, -1, 0, 1, 2])


class TensorTests(SimpleTestCase):
    def test_tensor_with_truncated_poly(self):
        sl2 = classical('A', 1)
        b = truncated_poly(2)
        g = tensor(sl2, b)
        self.assertEqual(g.dim, 6)
        self.assertEqual(g.basis_names[:2], ('e*1', 'e*t'))
        self.assertTrue(validate(g)['passed'])
        self.assertIsNone(is_homomorphism(sl2, g, tensor_grading_embedding(sl2, b)))
        self.assertEqual(tensor_centroid_expectation(sl2, b)['expected_dim'], 2)

    def test_noncommutative_coefficients_rejected(self):
        with self.assertRaises(AlgebraInputError):
            tensor(classical('A', 1), matrix_assoc(2))

    def test_restrict_scalars(self):
        g = restrict_scalars(classical('A', 1), field_ext([1, 0, -2]))
        self.assertEqual(g.dim, 6)
        self.assertTrue(g.name.startswith('A1 over'))

    def test_finite_loop_analog(self):
        g = finite_loop_analog(classical('A', 1), 3)
        self.assertEqual(g.dim, 9)
        self.assertEqual(g.grading.torsion, (3,))

    def test_sl_n_over_matrices(self):
        m2 = matrix_assoc(2)
        g = sl_n_over(m2, 3)
        self.assertEqual(g.dim, 35)
        self.assertTrue(validate(g)['passed'])
        self.assertIsNone(is_homomorphism(classical('A', 2), g, sl_n_over_embedding(m2, 3)))

    def test_sl_n_over_commutative_matches_tensor(self):
        b = truncated_poly(2)
        self.assertEqual(sl_n_over(b, 2).dim, tensor(classical('A', 1), b).dim)
