"""
Management command to compute the centroid and its structure.
"""
from algebra.centroid import (
    centroid, centroid_local_analysis, centroid_symmetry_check, describe_centroid, division_graded_report,
    evaluation_map_injective, graded_centroid, recognize_twisted_group_ring, toral_centroid,
)
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Compute Cent(L) by a direct solve, with optional graded, local, toral and symmetry analyses'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')
        parser.add_argument('--graded', action='store_true', help='Homogeneous components and division grading')
        parser.add_argument('--local', action='store_true', help='Radical, idempotents and decomposability')
        parser.add_argument('--toral', action='store_true', help='Rebuild the centroid from the toral data')
        parser.add_argument('--symmetry', action='store_true', help='Symmetry against invariant forms')
        parser.add_argument('--maps', action='store_true', help='Include the centroid basis maps')

    def report(self, **options):
        a = self.load(options['file'])
        cent = centroid(a)
        result = describe_centroid(cent)
        if options['maps']:
            result['maps'] = list(cent.maps)
        if options['graded']:
            gc = graded_centroid(a, cent)
            graded = division_graded_report(gc)
            graded['twisted_group_ring_recognition'] = recognize_twisted_group_ring(gc)
            graded['evaluation_injective'] = all(
                evaluation_map_injective(a, a.basis_vector(i), cent) for i in range(a.dim))
            result['graded'] = graded
        if options['local']:
            result['local'] = centroid_local_analysis(a, cent)
        if options['toral']:
            rebuilt, certificate = toral_centroid(a, cent=cent)
            result['toral'] = {**certificate, 'dim': rebuilt.dim}
        if options['symmetry']:
            result['symmetry'] = centroid_symmetry_check(a, cent=cent)
        return result
