"""
Management command to split the centroid of a central extension into blocks.
"""
from algebra.cohomext import decompose_extension_centroid, extension_centroid_from_triples, extension_from_algebra
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Decompose Cent(E) for E = L + C (C in the trailing coordinates) into (chi, psi, eta) blocks'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Extension algebra JSON file')
        parser.add_argument('--coeff-dim', type=int, default=1, help='Dimension of the trailing central block')

    def report(self, **options):
        e = self.load(options['file'])
        ext = extension_from_algebra(e, options['coeff_dim'])
        triples = decompose_extension_centroid(ext)
        converse = extension_centroid_from_triples(ext)
        return {
            'algebra': e.name,
            'base': ext.base.name,
            'dim': len(triples),
            'triples': [{'chi': d.chi, 'psi': d.psi, 'eta': d.eta} for d in triples],
            'from_triples_dim': converse['dim'],
            'matches_brute_force': converse['matches_brute_force'],
            'passed': converse['matches_brute_force'] and converse['dim'] == len(triples),
        }
