"""
Management command for first cohomology.
"""
from algebra.centroid import centroid_cap_der
from algebra.cohomext import h1_trivial_coeffs, h1_with_centre_coefficients
from algebra.liecore import centre, derived_subalgebra
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'H^1 with trivial coefficients and with coefficients in the centre'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        with_centre = h1_with_centre_coefficients(a)
        predicted = (a.dim - derived_subalgebra(a).dim) * centre(a).dim
        cap = len(centroid_cap_der(a))
        return {
            'algebra': a.name,
            'h1_trivial': h1_trivial_coeffs(a),
            'h1_centre': with_centre['dim'],
            'centroid_cap_der_dim': cap,
            'predicted_dim': predicted,
            'passed': with_centre['dim'] == cap == predicted,
        }
