"""
Management command to compute Der(L) and its inner part.
"""
from algebra.cohomext import derivations, inner_derivations
from algebra.liecore import maps_of
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Compute the derivation algebra and the inner derivations'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--maps', action='store_true', help='Include the derivation basis')

    def report(self, **options):
        a = self.load(options['file'])
        der = derivations(a)
        inner = inner_derivations(a)
        result = {
            'algebra': a.name,
            'dim': der.dim,
            'inner_dim': inner.dim,
            'outer_dim': der.dim - inner.dim,
        }
        if options['maps']:
            result['maps'] = maps_of(der, a.dim)
        return result
