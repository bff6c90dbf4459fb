from fractions import Fraction

from django.test import SimpleTestCase

from algebra.exact_linalg import (
    CoordinateSolver, Matrix, RowEchelon, Subspace, characteristic_polynomial, format_rational, kernel,
    minimal_polynomial, parse_rational, rank, rational_eigenvalues, simultaneous_eigenspaces, solve,
)
from algebra.exceptions import AlgebraInputError, NotSplitError


def m(rows):
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows])


class RationalTextTests(SimpleTestCase):
    def test_parse_reduces(self):
        self.assertEqual(parse_rational('4/6'), Fraction(2, 3))
        self.assertEqual(parse_rational('-3'), Fraction(-3))

    def test_format_is_canonical(self):
        self.assertEqual(format_rational(Fraction(4, 6)), '2/3')
        self.assertEqual(format_rational(Fraction(5, 1)), '5')

    def test_malformed_rational(self):
        for bad in ('1/0', 'abc', '1.5', '2/-3'):
            with self.assertRaises(AlgebraInputError):
                parse_rational(bad)


class KernelTests(SimpleTestCase):
    def test_rank_nullity(self):
        a = m([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        k = kernel(a)
        self.assertEqual(k.dim + rank(a), 3)
        for v in k.basis:
            self.assertFalse(any(a.apply(v)))

    def test_identity_has_zero_kernel(self):
        self.assertEqual(kernel(Matrix.identity(4)).dim, 0)

    def test_solve_inconsistent(self):
        a = m([[1, 1], [2, 2]])
        self.assertIsNone(solve(a, [1, 3]))
        x = solve(a, [1, 2])
        self.assertEqual(a.apply(x), (Fraction(1), Fraction(2)))

    def test_row_echelon_dependency(self):
        echelon = RowEchelon(3)
        self.assertEqual(echelon.insert({0: Fraction(1), 1: Fraction(2)}), 0)
        self.assertIsNone(echelon.insert({0: Fraction(2), 1: Fraction(4)}))
        self.assertTrue(echelon.contains({0: Fraction(-1), 1: Fraction(-2)}))
        self.assertEqual(echelon.rank, 1)

    def test_coordinate_solver(self):
        solver = CoordinateSolver([(1, 1, 0), (0, 1, 1)], 3)
        self.assertEqual(solver.coordinates((1, 2, 1)), (Fraction(1), Fraction(1)))
        self.assertIsNone(solver.coordinates((1, 0, 0)))

    def test_inverse(self):
        a = m([[2, 1], [1, 1]])
        self.assertEqual(a @ a.inverse(), Matrix.identity(2))
        self.assertIsNone(m([[1, 2], [2, 4]]).inverse())


class SubspaceTests(SimpleTestCase):
    def test_canonical_form(self):
        s = Subspace.span([(1, 1, 0), (0, 1, 1)], 3)
        t = Subspace.span([(1, 2, 1), (1, 0, -1)], 3)
        self.assertEqual(s, t)

    def test_sum_and_intersection(self):
        s = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
        t = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
        self.assertEqual((s + t).dim, 3)
        self.assertEqual(s.intersection(t), Subspace.span([(0, 1, 0)], 3))

    def test_ambient_mismatch(self):
        with self.assertRaises(AlgebraInputError):
            Subspace.zero(2) + Subspace.zero(3)


class SpectrumTests(SimpleTestCase):
    def test_diagonal_eigenvalues(self):
        self.assertEqual(rational_eigenvalues(Matrix.diagonal([2, 0, -2])), [2, 0, -2])

    def test_irrational_spectrum(self):
        with self.assertRaises(NotSplitError):
            rational_eigenvalues(m([[0, 2], [1, 0]]))

    def test_polynomials(self):
        a = m([[0, 2], [1, 0]])
        self.assertEqual(characteristic_polynomial(a).all_coeffs(), [1, 0, -2])
        self.assertTrue(minimal_polynomial(a).is_irreducible)
        self.assertEqual(minimal_polynomial(Matrix.identity(3)).degree(), 1)

    def test_simultaneous(self):
        blocks = simultaneous_eigenspaces([Matrix.diagonal([1, 1, -1]), Matrix.diagonal([0, 2, 2])])
        self.assertEqual(sorted(label for label, _ in blocks), [(-1, 2), (1, 0), (1, 2)])

    def test_non_commuting(self):
        with self.assertRaises(AlgebraInputError):
            simultaneous_eigenspaces([m([[1, 1], [0, 1]]), m([[1, 0], [1, 1]])])
