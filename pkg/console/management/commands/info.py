"""
Management command to summarize an algebra file.
"""
from algebra.liecore import centre, derived_subalgebra, is_lie_algebra
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Show dimension, basis, derived algebra, centre and attached data of an algebra file'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        derived = derived_subalgebra(a)
        return {
            'name': a.name,
            'dim': a.dim,
            'basis': list(a.basis_names),
            'nonzero_brackets': len(a.brackets),
            'is_lie': is_lie_algebra(a),
            'perfect': derived.dim == a.dim,
            'derived_dim': derived.dim,
            'centre_dim': centre(a).dim,
            'grading': a.grading,
            'toral': list(a.toral_indices) if a.toral_indices is not None else None,
            'has_form': a.form is not None,
        }
