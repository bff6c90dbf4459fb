"""
Management command to build an algebra from a named family.
"""
from django.core.management.base import CommandError

from algebra.builders import (
    abelian, classical, finite_loop_analog, heisenberg, oscillator, restrict_scalars, sl_n_over, tensor,
)
from algebra.cohomext import h1_trivial_coeffs
from algebra.serialization import save_algebra
from console.base import INPUT_ERROR, AlgebraCommand, parse_assoc

FAMILIES = {
    'abelian': ('N', lambda n: abelian(int(n))),
    'heisenberg': ('N', lambda n: heisenberg(int(n))),
    'heisenberg-graded': ('N', lambda n: heisenberg(int(n), graded=True)),
    'oscillator': ('', lambda: oscillator()),
    'classical': ('TYPE RANK', lambda kind, rank: classical(kind, int(rank))),
    'tensor': ('TYPE RANK COEFFS', lambda kind, rank, spec: tensor(classical(kind, int(rank)), parse_assoc(spec))),
    'sl-over': ('N COEFFS', lambda n, spec: sl_n_over(parse_assoc(spec), int(n))),
    'loop-analog': ('TYPE RANK M', lambda kind, rank, m: finite_loop_analog(classical(kind, int(rank)), int(m))),
    'restrict': ('TYPE RANK field:COEFFS', lambda kind, rank, spec: restrict_scalars(classical(kind, int(rank)),
                                                                                  parse_assoc(spec))),
}


class Command(AlgebraCommand):
    help = ('Build an algebra: ' + '; '.join(f'{name} {args}'.strip() for name, (args, _) in FAMILIES.items())
            + '. COEFFS is trunc:k, group:m, twisted:m, matrix:n or field:c_d,...,c_0')

    def add_command_arguments(self, parser):
        parser.add_argument('family', choices=sorted(FAMILIES), help='Family name')
        parser.add_argument('params', nargs='*', metavar='ARGS', help='Family parameters')
        parser.add_argument('-o', '--out', required=True, help='Output algebra JSON file')

    def report(self, **options):
        usage, factory = FAMILIES[options['family']]
        expected = len(usage.split())
        if len(options['params']) != expected:
            raise CommandError(f"{options['family']} takes {expected} argument(s): {usage}", returncode=INPUT_ERROR)
        a = factory(*options['params'])
        save_algebra(a, options['out'])
        return {'algebra': a.name, 'dim': a.dim, 'file': options['out'], 'h1_trivial': h1_trivial_coeffs(a)}
