"""
Management command to check an algebra file.
"""
from algebra.liecore import validate
from console.base import AlgebraCommand


class Command(AlgebraCommand):
    help = 'Check the Jacobi identity, grading compatibility and form invariance of an algebra file'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Algebra JSON file')

    def report(self, **options):
        return validate(self.load(options['file']))
