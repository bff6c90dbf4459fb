"""
Management command to tensor an algebra file with a coefficient algebra.
"""
from algebra.builders import describe_assoc, tensor
from algebra.serialization import save_algebra
from console.base import AlgebraCommand, parse_assoc


class Command(AlgebraCommand):
    help = 'Write g (x) B for an algebra file g and a commutative coefficient algebra B (trunc:k, group:m, ...)'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('coefficients', help='Coefficient algebra, e.g. trunc:3 or group:2')
        parser.add_argument('-o', '--out', required=True, help='Output algebra JSON file')

    def report(self, **options):
        g = self.load(options['file'])
        b = parse_assoc(options['coefficients'])
        result = tensor(g, b)
        save_algebra(result, options['out'])
        return {'algebra': result.name, 'dim': result.dim, 'coefficients': describe_assoc(b),
                'file': options['out']}
