import random
from fractions import Fraction

from django.test import SimpleTestCase

from algebra.builders import abelian, classical, heisenberg, height_graded, oscillator, truncated_poly
from algebra.cohomext import (
    Cocycle, central_extension, coboundary, decompose_extension_centroid, degree_derivation,
    degree_derivation_injective, der_tensor_decomposition_check, derivations, extension_centroid_from_triples,
    extension_from_algebra, h1_trivial_coeffs, h1_with_centre_coefficients, h2_trivial_coeffs,
    inner_derivations, sigma_S_extension, skew_derivations, triple_is_centroidal, validate_cocycle,
)
from algebra.exact_linalg import Matrix
from algebra.exceptions import AlgebraInputError
from algebra.liecore import SCAlgebra, validate


def permuted(a, perm):
    """The same algebra with basis element perm[k] moved to position k."""
    position = {old: new for new, old in enumerate(perm)}
    table = {(position[i], position[j]): {position[k]: c for k, c in terms} for (i, j), terms in a.brackets}
    return SCAlgebra.from_table(a.name, [a.basis_names[old] for old in perm], table)


class DerivationTests(SimpleTestCase):
    def test_simple_algebra_derivations_are_inner(self):
        sl2 = classical('A', 1)
        self.assertEqual(derivations(sl2), inner_derivations(sl2))

    def test_heisenberg_derivations(self):
        self.assertEqual(derivations(heisenberg(1)).dim, 6)

    def test_tensor_decomposition(self):
        report = der_tensor_decomposition_check(classical('A', 1), truncated_poly(3))
        self.assertEqual(report['der_dim'], 11)
        self.assertEqual(report['expected_dim'], 11)
        self.assertTrue(report['kernel_is_ideal'])
        self.assertTrue(report['passed'])

    def test_tensor_decomposition_inapplicable(self):
        report = der_tensor_decomposition_check(heisenberg(1), truncated_poly(2))
        self.assertFalse(report['applicable'])
        self.assertIsNone(report['passed'])

    def test_first_cohomology(self):
        self.assertEqual(h1_with_centre_coefficients(heisenberg(1))['dim'], 2)
        self.assertEqual(h1_with_centre_coefficients(classical('A', 1))['dim'], 0)
        self.assertEqual(h1_trivial_coeffs(heisenberg(1)), 2)
        self.assertEqual(h1_trivial_coeffs(classical('A', 2)), 0)

    def test_degree_derivation(self):
        h = heisenberg(1, graded=True)
        self.assertEqual(degree_derivation(h, [1]), Matrix.diagonal([1, -1, 0]))
        self.assertTrue(degree_derivation_injective(h)['injective'])


class CocycleTests(SimpleTestCase):
    def test_alternating_storage(self):
        sigma = Cocycle.from_dict(heisenberg(1), 1, {(1, 0): ['2']})
        self.assertEqual(sigma.value(0, 1), (Fraction(-2),))
        self.assertEqual(sigma.value(1, 0), (Fraction(2),))

    def test_rejects_diagonal_and_duplicates(self):
        h = heisenberg(1)
        with self.assertRaises(AlgebraInputError):
            Cocycle.from_dict(h, 1, {(1, 1): [1]})
        with self.assertRaises(AlgebraInputError):
            Cocycle.from_dict(h, 1, {(0, 1): [1], (1, 0): [1]})
        with self.assertRaises(AlgebraInputError):
            Cocycle.from_dict(h, 2, {(0, 1): [1]})

    def test_oscillator_witness(self):
        osc = oscillator()
        report = validate_cocycle(osc, Cocycle.from_dict(osc, 1, {(0, 3): [1]}))
        self.assertFalse(report['valid'])
        self.assertEqual(report['triple'], ['d', 'a', 'b'])
        with self.assertRaises(AlgebraInputError) as ctx:
            central_extension(osc, Cocycle.from_dict(osc, 1, {(0, 3): [1]}))
        self.assertEqual(ctx.exception.witness['triple'], ['d', 'a', 'b'])

    def test_coboundary_is_valid(self):
        h = heisenberg(2)
        sigma = coboundary(h, Matrix.from_rows([[1, 0, 2, 0, 1]]))
        self.assertTrue(validate_cocycle(h, sigma)['valid'])

    def test_second_cohomology(self):
        self.assertEqual(h2_trivial_coeffs(classical('A', 1)), 0)
        self.assertEqual(h2_trivial_coeffs(heisenberg(1)), 2)
        self.assertEqual(h2_trivial_coeffs(abelian(3)), 3)

    def test_second_cohomology_ignores_basis_order(self):
        for a, expected in ((heisenberg(1), 2), (classical('A', 1), 0)):
            for perm in ((2, 0, 1), (1, 2, 0), (2, 1, 0)):
                self.assertEqual(h2_trivial_coeffs(permuted(a, perm)), expected)

    def test_extension_refused_exactly_for_non_cocycles(self):
        rng = random.Random(20240601)
        for a in (heisenberg(2), oscillator()):
            outcomes = set()
            for trial in range(12):
                if trial % 3 == 0:
                    sigma = coboundary(a, Matrix.from_rows([[rng.randint(-2, 2) for _ in range(a.dim)]]))
                else:
                    values = {(i, j): [rng.randint(-2, 2)] for i in range(a.dim) for j in range(i + 1, a.dim)}
                    sigma = Cocycle.from_dict(a, 1, {key: v for key, v in values.items() if v[0]})
                valid = validate_cocycle(a, sigma)['valid']
                outcomes.add(valid)
                unchecked = central_extension(a, sigma, check=False)
                self.assertEqual(validate(unchecked.algebra)['passed'], valid)
                if valid:
                    self.assertEqual(central_extension(a, sigma).algebra.dim, a.dim + 1)
                else:
                    with self.assertRaises(AlgebraInputError):
                        central_extension(a, sigma)
            self.assertEqual(outcomes, {True, False})


class ExtensionTests(SimpleTestCase):
    def split_extension(self):
        sl2 = classical('A', 1)
        return central_extension(sl2, coboundary(sl2, Matrix.from_rows([[1, 0, 0]])))

    def test_coefficient_names(self):
        ext = self.split_extension()
        self.assertEqual(ext.algebra.basis_names, ('e', 'h', 'f', 'c'))
        self.assertEqual(ext.coeff_dim, 1)

    def test_centroid_from_triples(self):
        report = extension_centroid_from_triples(self.split_extension())
        self.assertEqual(report['dim'], 2)
        self.assertTrue(report['matches_brute_force'])

    def test_decomposition(self):
        ext = self.split_extension()
        pieces = decompose_extension_centroid(ext)
        self.assertEqual(len(pieces), 2)
        self.assertTrue(all(triple_is_centroidal(ext, d) for d in pieces))

    def test_decomposition_needs_centreless_base(self):
        ext = extension_from_algebra(heisenberg(1), 1)
        self.assertEqual(ext.base.brackets, ())
        with self.assertRaises(AlgebraInputError):
            decompose_extension_centroid(ext)

    def test_non_central_block(self):
        with self.assertRaises(AlgebraInputError):
            extension_from_algebra(classical('A', 1), 1)


class SkewDerivationTests(SimpleTestCase):
    def test_simple_algebra(self):
        space = skew_derivations(classical('A', 1))
        self.assertEqual(space.dim, 3)

    def test_height_graded_extension(self):
        g = height_graded('A', 1)
        ext, report = sigma_S_extension(g, skew_derivations(g))
        self.assertEqual(ext.algebra.dim, 6)
        self.assertTrue(report['centprop_checked'])
        self.assertTrue(report['passed'])

    def test_oscillator_is_inapplicable(self):
        osc = oscillator()
        _, report = sigma_S_extension(osc, skew_derivations(osc))
        self.assertEqual(report['status'], 'centprop inapplicable')
        self.assertIsNone(report['passed'])
