"""
Management command to build a central extension from a cocycle file.
"""
from algebra.cohomext import central_extension, validate_cocycle
from algebra.exceptions import AlgebraInputError
from algebra.serialization import cocycle_from_dict, read_json, save_algebra
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Validate a 2-cocycle and write the central extension E(L, sigma)'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--cocycle', required=True, help='Cocycle JSON file')
        parser.add_argument('-o', '--out', required=True, help='Output algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        sigma = cocycle_from_dict(a, read_json(options['cocycle']))
        check = validate_cocycle(a, sigma)
        if not check['valid']:
            raise AlgebraInputError(f"Not a 2-cocycle: cyclic sum fails at {check['triple']}", witness=check['triple'])
        ext = central_extension(a, check['cocycle'])
        save_algebra(ext.algebra, options['out'])
        return {'algebra': ext.algebra.name, 'dim': ext.algebra.dim, 'coeff_dim': ext.coeff_dim,
                'file': options['out']}
