"""
Management command for the weight decomposition under a toral subalgebra.
"""
from algebra.exact_linalg import Subspace
from algebra.liecore import weight_decomposition
from console.base import AlgebraCommand, parse_int_list


class Command(AlgebraCommand):
    help = 'Joint eigenspaces of ad over the given toral basis indices'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--toral', help='Comma-separated basis indices (default: the file\'s toral designation)')

    def report(self, **options):
        a = self.load(options['file'])
        toral = a.toral_subspace() if options['toral'] is None else Subspace.spanned_by_indices(
            parse_int_list(options['toral'], 'toral indices'), a.dim)
        return {'algebra': a.name, **weight_decomposition(a, toral).as_dict()}
