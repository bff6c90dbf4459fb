"""
Management command to compute the centre.
"""
from algebra.liecore import centre
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Compute the centre Z(L) of an algebra file'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        z = centre(a)
        return {'algebra': a.name, 'dim': z.dim, 'basis': z}
