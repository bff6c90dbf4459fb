from django.test import SimpleTestCase

from algebra.builders import (
    abelian, classical, field_ext, heisenberg, matrix_assoc, sl_n_over, sl_n_over_embedding, tensor,
    tensor_grading_embedding, truncated_poly,
)
from algebra.cohomext import central_extension, coboundary
from algebra.exact_linalg import Matrix
from algebra.exceptions import AlgebraInputError
from algebra.liecore import direct_sum
from algebra.rootgraded import (
    OUTSIDE, cover_centroid_embedding, embedding_by_names, isotypic_decomposition, verify_cent_rg,
)


def truncated_model():
    sl2, b = classical('A', 1), truncated_poly(2)
    return isotypic_decomposition(tensor(sl2, b), tensor_grading_embedding(sl2, b), 'A', 1)


class IsotypicTests(SimpleTestCase):
    def test_tensor_has_one_block(self):
        model = truncated_model()
        self.assertEqual({b.label: b.multiplicity for b in model.blocks}, {'adjoint': 2})
        self.assertTrue(model.block_scalar)
        self.assertEqual(model.block('adjoint').module_dim, 3)

    def test_trivial_block(self):
        a = direct_sum(classical('A', 1), abelian(1))
        model = isotypic_decomposition(a, embedding_by_names(a, 'A', 1), 'A', 1)
        self.assertEqual({b.label: b.multiplicity for b in model.blocks}, {'adjoint': 1, 'trivial': 1})

    def test_matrix_coordinates(self):
        a = sl_n_over(matrix_assoc(2), 3)
        model = isotypic_decomposition(a, sl_n_over_embedding(matrix_assoc(2), 3), 'A', 2)
        self.assertEqual({b.label: b.multiplicity for b in model.blocks}, {'adjoint': 4, 'trivial': 3})

    def test_embedding_by_names(self):
        a = tensor(classical('A', 1), truncated_poly(2))
        self.assertEqual(embedding_by_names(a, 'A', 1), tensor_grading_embedding(classical('A', 1), truncated_poly(2)))
        with self.assertRaises(AlgebraInputError):
            embedding_by_names(heisenberg(1), 'A', 1)

    def test_rejects_non_homomorphism(self):
        a = tensor(classical('A', 1), truncated_poly(2))
        wrong = Matrix.from_columns([a.basis_vector('e*t'), a.basis_vector('h*1'), a.basis_vector('f*1')], a.dim)
        with self.assertRaises(AlgebraInputError):
            isotypic_decomposition(a, wrong, 'A', 1)


class RootGradedCentroidTests(SimpleTestCase):
    def test_truncated_coordinates(self):
        report = verify_cent_rg(truncated_model())
        self.assertTrue(report['passed'])
        self.assertEqual(report['centroid_dim'], 2)
        self.assertEqual(report['centre_dim'], 2)

    def test_field_coordinates(self):
        sl2, k = classical('A', 1), field_ext([1, 0, -2])
        model = isotypic_decomposition(tensor(sl2, k), tensor_grading_embedding(sl2, k), 'A', 1)
        report = verify_cent_rg(model)
        self.assertTrue(report['passed'])
        self.assertEqual(report['centroid_dim'], 2)

    def test_non_adjoint_blocks_are_outside(self):
        sl3 = classical('A', 2)
        embedding = Matrix.from_columns([sl3.basis_vector(x) for x in ('E12', 'H1', 'E21')], sl3.dim)
        model = isotypic_decomposition(sl3, embedding, 'A', 1)
        self.assertEqual({b.label: b.multiplicity for b in model.blocks}, {'adjoint': 1, 'V(1)': 2, 'trivial': 1})
        report = verify_cent_rg(model)
        self.assertEqual(report['status'], OUTSIDE)
        self.assertFalse(report['passed'])

    def test_cover_embedding(self):
        sl2 = classical('A', 1)
        ext = central_extension(sl2, coboundary(sl2, Matrix.from_rows([[0, 1, 0]])))
        report = cover_centroid_embedding(ext)
        self.assertEqual(report['cover_centroid_dim'], 2)
        self.assertTrue(report['passed'])
