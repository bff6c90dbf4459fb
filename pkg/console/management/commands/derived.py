"""
Management command to compute the derived and lower central series.
"""
from algebra.liecore import derived_series, lower_central_series
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Dimensions of the derived series and the lower central series'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        a = self.load(options['file'])
        derived = [s.dim for s in derived_series(a)]
        lower = [s.dim for s in lower_central_series(a)]
        return {
            'algebra': a.name,
            'derived_series': derived,
            'lower_central_series': lower,
            'perfect': len(derived) == 1 and a.dim > 0,
            'solvable': derived[-1] == 0,
            'nilpotent': lower[-1] == 0,
        }
