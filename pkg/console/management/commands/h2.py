"""
Management command for second cohomology with trivial coefficients.
"""
from algebra.cohomext import coboundary_space, cocycle_space, h2_trivial_coeffs
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Dimensions of Z^2, B^2 and H^2 with coefficients in Q'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        return {
            'algebra': a.name,
            'cocycles_dim': cocycle_space(a).dim,
            'coboundaries_dim': coboundary_space(a).dim,
            'dim': h2_trivial_coeffs(a),
        }
