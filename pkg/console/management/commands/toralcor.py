"""
Management command for the generator hypotheses on a finite-dimensional algebra.
"""
from algebra.builders import chevalley_generators
from algebra.exact_linalg import Subspace
from algebra.exceptions import AlgebraInputError
from algebra.loopkit import toralcor_check
from algebra.rootgraded import embedding_by_names
from console.base import AlgebraCommand, parse_int_list


def parse_generators(a, text: str):
    pairs = []
    for item in text.split(','):
        e, _, f = item.partition(':')
        if not f:
            raise AlgebraInputError(f"Generator pair {item!r} must look like e:f")
        pairs.append((a.basis_vector(e.strip()), a.basis_vector(f.strip())))
    return pairs


class Command(AlgebraCommand):
    help = 'Check the (e_i, f_i, h) hypotheses and, when they hold, the predicted centroid'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--gens', help='Generator pairs by basis name, e.g. E12:E21,E23:E32')
        parser.add_argument('--classical', help='Use the simple root pairs of TYPE:RANK instead of --gens')
        parser.add_argument('--toral', help='Comma-separated toral basis indices (default: the file\'s)')

    def report(self, **options):
        a = self.load(options['file'])
        if options['gens']:
            generators = parse_generators(a, options['gens'])
        elif options['classical']:
            kind, _, rank = options['classical'].partition(':')
            embedding = embedding_by_names(a, kind, int(rank))
            generators = [(embedding.apply(e), embedding.apply(f)) for e, f in chevalley_generators(kind, int(rank))]
        else:
            raise AlgebraInputError("Give --gens or --classical")
        toral = a.toral_subspace() if options['toral'] is None else Subspace.spanned_by_indices(
            parse_int_list(options['toral'], 'toral indices'), a.dim)
        return {'algebra': a.name, **toralcor_check(a, generators, toral).as_dict()}
