"""
Management command to run the verification suites.
"""
from django.core.management.base import CommandError

from console.base import VERIFICATION_FAILURE, AlgebraCommand
from console.suites import VerificationService


class Command(AlgebraCommand):
    help = 'Run a verification suite and print one pass/fail line per instance'

    def add_command_arguments(self, parser):
        parser.add_argument('suite', choices=list(VerificationService.SUITES) + ['all'],
                            metavar='SUITE', help='One of: ' + ', '.join(list(VerificationService.SUITES) + ['all']))
        parser.add_argument('--window', type=int, help='Loop degree window (default CENTROIDKIT_WINDOW)')
        parser.add_argument('--seed', type=int, help='Seed for randomized instances (default CENTROIDKIT_RANDOM_SEED)')

    def report(self, **options):
        service = VerificationService(window=options['window'], seed=options['seed'])
        if options['suite'] == 'all':
            return service.run_all()
        return service.run(options['suite'])

    def handle(self, *args, **options):
        report = self.report(**options)
        self.emit(report, options['output'])
        if not report['passed']:
            raise CommandError('Verification failed', returncode=VERIFICATION_FAILURE)

    def text_lines(self, data, indent=''):
        suites = data['suites'] if 'suites' in data else [data]
        lines = []
        for suite in suites:
            lines.append(f"{suite['suite']}: {suite['statement']}")
            for instance in suite['instances']:
                mark = 'PASS' if instance['passed'] else 'FAIL'
                detail = f" ({instance['error']})" if 'error' in instance else ''
                lines.append(f"  [{mark}] {instance['name']}{detail}")
        return lines
