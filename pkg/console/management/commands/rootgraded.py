"""
Management command for the isotypic decomposition and the root-graded centroid check.
"""
from algebra.exceptions import AlgebraInputError
from algebra.rootgraded import embedding_by_names, isotypic_decomposition, verify_cent_rg
from algebra.serialization import matrix_from_json, read_json
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Decompose under a classical grading subalgebra and compare Cent(L) with the coordinate centre'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--gsub', required=True, help='Grading subalgebra as TYPE:RANK, e.g. A:2')
        parser.add_argument('--embedding', help='JSON matrix whose columns embed classical(TYPE, RANK)')

    def report(self, **options):
        a = self.load(options['file'])
        kind, _, rank = options['gsub'].partition(':')
        if not rank:
            raise AlgebraInputError(f"Grading subalgebra {options['gsub']!r} must look like TYPE:RANK")
        rank = int(rank)
        if options['embedding']:
            embedding = matrix_from_json(read_json(options['embedding']))
        else:
            embedding = embedding_by_names(a, kind, rank)
        model = isotypic_decomposition(a, embedding, kind, rank)
        return verify_cent_rg(model)
