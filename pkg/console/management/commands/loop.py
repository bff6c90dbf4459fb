"""
Management command for loop and affine realizations.
"""
from algebra.builders import classical
from algebra.conf import kit_setting
from algebra.exact_linalg import parse_rational
from algebra.exceptions import AlgebraInputError
from algebra.loopkit import (
    CentroidCandidate, LoopAlgebra, affine_generators, centroid_membership, chevalley_involution, sign_involution,
    symbolic_cocycle_check, toralcor_check_loop, verify_jacobi, window_component_exclusion,
)
from console.base import AlgebraCommand, parse_int_list


def parse_multiplier(text: str):
    terms = []
    for item in text.split(','):
        shift, _, coeff = item.partition(':')
        if not coeff:
            raise AlgebraInputError(f"Multiplier term {item!r} must look like degree:coefficient")
        terms.append((int(shift), parse_rational(coeff)))
    return tuple(terms)


class Command(AlgebraCommand):
    help = 'Jacobi, cocycle, centroid membership, degree exclusion and generator checks on g (x) Q[t, t^-1]'

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=['jacobi', 'cocycle', 'member', 'exclude', 'toralcor'])
        parser.add_argument('--type', default='A', help='Classical type of the base algebra')
        parser.add_argument('--rank', type=int, default=1, help='Rank of the base algebra')
        parser.add_argument('--no-c', action='store_true', help='Drop the central element (centreless loop)')
        parser.add_argument('--with-d', action='store_true', help='Adjoin the degree derivation d')
        parser.add_argument('--twist', help='chevalley or signs:s_1,...,s_n for an order-2 twist')
        parser.add_argument('--window', type=int, help='Degree window (default CENTROIDKIT_WINDOW)')
        parser.add_argument('--z', default='0:1', help='Multiplier as degree:coefficient pairs, e.g. 0:1,2:3')
        parser.add_argument('--scale-c', default='1', help='Scalar on c')
        parser.add_argument('--d-to-c', default='0', help='Coefficient of c in the image of d')
        parser.add_argument('--degree', type=int, default=1, help='Degree q for the exclusion check')

    def realization(self, options) -> LoopAlgebra:
        base = classical(options['type'], options['rank'])
        twist = None
        if options['twist'] == 'chevalley':
            if options['type'].upper() != 'A':
                raise AlgebraInputError("The Chevalley involution is provided for type A")
            twist = chevalley_involution(options['rank'])
        elif options['twist']:
            kind, _, signs = options['twist'].partition(':')
            if kind != 'signs':
                raise AlgebraInputError(f"Unknown twist {options['twist']!r}")
            twist = sign_involution(base, parse_int_list(signs, 'signs'))
        return LoopAlgebra(base, twist, has_c=not options['no_c'], has_d=options['with_d'])

    def report(self, **options):
        l = self.realization(options)
        window = options['window'] if options['window'] is not None else kit_setting('WINDOW')
        action = options['action']
        if action == 'jacobi':
            return verify_jacobi(l, window)
        if action == 'cocycle':
            return symbolic_cocycle_check(l)
        if action == 'member':
            candidate = CentroidCandidate(parse_multiplier(options['z']), parse_rational(options['scale_c']),
                                          parse_rational(options['d_to_c']))
            return centroid_membership(l, candidate, window)
        if action == 'exclude':
            return window_component_exclusion(l, options['degree'], window)
        return {'algebra': l.name, **toralcor_check_loop(l, affine_generators(l), window).as_dict()}
