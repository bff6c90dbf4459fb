from fractions import Fraction

from django.test import SimpleTestCase

from algebra.builders import abelian, classical, heisenberg, oscillator
from algebra.exact_linalg import Matrix, Subspace
from algebra.exceptions import AlgebraInputError, ResourceLimitError
from algebra.liecore import (
    SCAlgebra, centralizer, centre, derived_series, derived_subalgebra, direct_sum, generated_subalgebra,
    invariant_forms,
    is_derivation, is_ideal, is_perfect, killing_form, lie_generating_set, lower_central_series, mult_closure,
    mult_module_generators, quotient, validate, weight_decomposition,
)


def broken_algebra():
    # [x,y] = y, [y,z] = x, [x,z] = 0 fails Jacobi
    return SCAlgebra.from_table('broken', ('x', 'y', 'z'), {(0, 1): {1: 1}, (1, 2): {0: 1}})


class StructureConstantTests(SimpleTestCase):
    def test_antisymmetric_storage(self):
        sl2 = classical('A', 1)
        e, h, f = (sl2.basis_vector(x) for x in 'ehf')
        self.assertEqual(sl2.bracket(e, f), h)
        self.assertEqual(sl2.bracket(f, e), tuple(-x for x in h))
        self.assertEqual(sl2.bracket(h, e), tuple(2 * x for x in e))

    def test_rejects_bad_indices(self):
        with self.assertRaises(AlgebraInputError):
            SCAlgebra('bad', ('x', 'y'), (((1, 0), ((0, Fraction(1)),)),))
        with self.assertRaises(AlgebraInputError):
            SCAlgebra('bad', ('x', 'y'), (((0, 1), ((5, Fraction(1)),)),))

    def test_duplicate_names(self):
        with self.assertRaises(AlgebraInputError):
            SCAlgebra('dup', ('x', 'x'), ())

    def test_validate_reports_jacobi_witness(self):
        report = validate(broken_algebra())
        self.assertFalse(report['passed'])
        self.assertEqual(report['jacobi_failures'][0]['triple'], ['x', 'y', 'z'])

    def test_validate_families(self):
        for a in (classical('A', 2), classical('C', 2), heisenberg(2), oscillator(), abelian(3)):
            self.assertTrue(validate(a)['passed'], a.name)


class IdealTests(SimpleTestCase):
    def test_heisenberg(self):
        h = heisenberg(1)
        self.assertEqual(centre(h), Subspace.spanned_by_indices([2], 3))
        self.assertEqual(derived_subalgebra(h), centre(h))
        self.assertFalse(is_perfect(h))
        self.assertEqual([s.dim for s in lower_central_series(h)], [3, 1, 0])

    def test_oscillator_series(self):
        osc = oscillator()
        self.assertEqual([s.dim for s in derived_series(osc)], [4, 3, 1, 0])
        self.assertEqual(centre(osc).dim, 1)

    def test_classical_is_perfect(self):
        sl3 = classical('A', 2)
        self.assertTrue(is_perfect(sl3))
        self.assertEqual(centre(sl3).dim, 0)
        self.assertEqual(derived_series(sl3), [Subspace.whole(8)])

    def test_centralizer_of_cartan(self):
        sl3 = classical('A', 2)
        self.assertEqual(centralizer(sl3, sl3.toral_subspace()), sl3.toral_subspace())

    def test_quotient_by_centre(self):
        h = heisenberg(1)
        q, projection = quotient(h, centre(h))
        self.assertEqual(q.dim, 2)
        self.assertEqual(q.brackets, ())
        self.assertEqual((projection.rows, projection.cols), (2, 3))

    def test_quotient_needs_ideal(self):
        sl2 = classical('A', 1)
        with self.assertRaises(AlgebraInputError):
            quotient(sl2, Subspace.span([sl2.basis_vector('e')], 3))

    def test_direct_sum_renames_clashes(self):
        s = direct_sum(classical('A', 1), classical('A', 1))
        self.assertEqual(s.basis_names, ('e_1', 'h_1', 'f_1', 'e_2', 'h_2', 'f_2'))
        self.assertTrue(is_ideal(s, Subspace.spanned_by_indices([0, 1, 2], 6)))


class MultiplicationAlgebraTests(SimpleTestCase):
    def test_simple_algebra_has_full_closure(self):
        self.assertEqual(mult_closure(classical('A', 1)).dim, 9)

    def test_heisenberg_closure(self):
        self.assertEqual(mult_closure(heisenberg(1)).dim, 3)

    def test_closure_limit(self):
        with self.assertRaises(ResourceLimitError):
            mult_closure(classical('A', 1), max_dim=4)

    def test_module_generators(self):
        sl2 = classical('A', 1)
        self.assertTrue(mult_module_generators(sl2, Subspace.span([sl2.basis_vector('e')], 3)))
        h = heisenberg(1)
        self.assertFalse(mult_module_generators(h, centre(h)))

    def test_generating_set(self):
        sl3 = classical('A', 2)
        gens = lie_generating_set(sl3)
        self.assertEqual(generated_subalgebra(sl3, [sl3.basis_vector(i) for i in gens]).dim, 8)


class FormAndWeightTests(SimpleTestCase):
    def test_killing_form_sl2(self):
        k = killing_form(classical('A', 1))
        self.assertEqual(k, Matrix.from_rows([[0, 0, 4], [0, 8, 0], [4, 0, 0]]))

    def test_invariant_forms(self):
        self.assertEqual(invariant_forms(classical('A', 1)).dim, 1)
        self.assertEqual(invariant_forms(heisenberg(1)).dim, 3)

    def test_inner_derivation(self):
        sl2 = classical('A', 1)
        self.assertTrue(is_derivation(sl2, sl2.ad_basis(0)))
        self.assertFalse(is_derivation(sl2, Matrix.diagonal([1, 1, 1])))

    def test_weights_of_sl3(self):
        sl3 = classical('A', 2)
        decomposition = weight_decomposition(sl3, sl3.toral_subspace())
        self.assertEqual(decomposition.zero_space().dim, 2)
        self.assertEqual(len(decomposition.nonzero_weights()), 6)
        self.assertTrue(all(space.dim == 1 for w, space in decomposition.weights if any(w)))

    def test_non_toral_subspace(self):
        sl2 = classical('A', 1)
        with self.assertRaises(AlgebraInputError):
            weight_decomposition(sl2, Subspace.span([sl2.basis_vector('e')], 3))
