"""
Shared plumbing for the algebra management commands.
"""
import logging
from typing import Any, Dict, List

from django.core.management.base import BaseCommand, CommandError

from algebra.builders import AssocTable, field_ext, group_algebra, matrix_assoc, truncated_poly, twisted_group_ring
from algebra.exceptions import AlgebraInputError, InvariantViolation, NotSplitError, ResourceLimitError
from algebra.serialization import dumps, jsonable, load_algebra

logger = logging.getLogger('console')

INPUT_ERROR = 2
VERIFICATION_FAILURE = 1


def parse_int_list(text: str, what: str = 'list') -> List[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise AlgebraInputError(f"Malformed {what} {text!r}: expected comma-separated integers")


def parse_assoc(spec: str) -> AssocTable:
    """trunc:k, group:m[,m...], twisted:m[,m...], matrix:n or field:c_d,...,c_0."""
    kind, _, args = spec.partition(':')
    if kind == 'trunc':
        return truncated_poly(int(args))
    if kind == 'group':
        return group_algebra(parse_int_list(args, 'group moduli'))
    if kind == 'twisted':
        return twisted_group_ring(parse_int_list(args, 'group moduli'))
    if kind == 'matrix':
        return matrix_assoc(int(args))
    if kind == 'field':
        return field_ext([x.strip() for x in args.split(',')])
    raise AlgebraInputError(f"Unknown coefficient algebra {spec!r}")


class AlgebraCommand(BaseCommand):
    """Base command: runs `report()`, prints it as text or JSON and maps errors to exit codes."""

    requires_system_checks = []
    output_transaction = False

    def add_arguments(self, parser):
        parser.add_argument(
            '--output',
            choices=['json', 'text'],
            default='text',
            help='Report format (JSON is the stable contract)',
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def report(self, **options) -> Dict[str, Any]:
        raise NotImplementedError

    def load(self, path: str):
        return load_algebra(path)

    def handle(self, *args, **options):
        try:
            report = self.report(**options)
        except ValueError as e:
            logger.warning(f"{self.__module__}: {e}")
            raise CommandError(f"Malformed input: {e}", returncode=INPUT_ERROR)
        except (AlgebraInputError, NotSplitError, ResourceLimitError) as e:
            logger.warning(f"{self.__module__}: {e} (witness: {e.witness})")
            raise CommandError(str(e), returncode=INPUT_ERROR)
        except InvariantViolation as e:
            logger.error(f"{self.__module__}: {e} (witness: {e.witness})")
            raise CommandError(f"Internal check failed: {e}", returncode=VERIFICATION_FAILURE)

        self.emit(report, options['output'])
        if report.get('passed') is False:
            raise CommandError('Verification failed', returncode=VERIFICATION_FAILURE)

    def emit(self, report: Dict[str, Any], output: str):
        data = jsonable(report)
        if output == 'json':
            self.stdout.write(dumps(data), ending='')
            return
        for line in self.text_lines(data):
            self.stdout.write(line)
        if data.get('passed') is True:
            self.stdout.write(self.style.SUCCESS('passed'))
        elif data.get('passed') is False:
            self.stdout.write(self.style.ERROR('FAILED'))

    def text_lines(self, data: Dict[str, Any], indent: str = '') -> List[str]:
        lines = []
        for key, value in data.items():
            if key == 'passed':
                continue
            if isinstance(value, dict):
                lines.append(f'{indent}{key}:')
                lines.extend(self.text_lines(value, indent + '  '))
            elif isinstance(value, list) and len(value) > 12:
                lines.append(f'{indent}{key}: [{len(value)} entries]')
            else:
                lines.append(f'{indent}{key}: {value}')
        return lines
