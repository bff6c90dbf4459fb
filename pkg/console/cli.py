"""
Single entry point dispatching subcommands to the console management commands.
"""
import os
import sys
from typing import List, Optional, TextIO

from django.core.management import find_commands, load_command_class
from django.core.management.base import CommandError

INPUT_ERROR = 2


def _setup() -> None:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'centroidkit.settings')
    import django
    django.setup()


def available_commands() -> List[str]:
    path = os.path.join(os.path.dirname(__file__), 'management')
    return sorted(name.replace('_', '-') for name in find_commands(path))


def usage() -> str:
    return 'usage: centroidkit SUBCOMMAND [ARGS] [--output json|text]\nsubcommands: ' + ', '.join(available_commands())


def cli_main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
             stderr: Optional[TextIO] = None) -> int:
    """Run one subcommand; returns 0 on success, 1 on a failed verification and 2 on malformed input."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    _setup()
    if not argv or argv[0] not in available_commands():
        if argv:
            stderr.write(f'unknown subcommand {argv[0]!r}\n')
        stderr.write(usage() + '\n')
        return INPUT_ERROR

    name = argv[0].replace('-', '_')
    command = load_command_class('console', name)
    parser = command.create_parser('centroidkit', argv[0])
    try:
        options = vars(parser.parse_args(argv[1:]))
    except CommandError as e:
        stderr.write(f'{e}\n' + parser.format_usage())
        return INPUT_ERROR
    except SystemExit as e:
        return e.code or 0
    args = options.pop('args', ())
    try:
        command.execute(*args, stdout=stdout, stderr=stderr, **options)
    except CommandError as e:
        stderr.write(f'{argv[0]}: {e}\n')
        return e.returncode
    return 0


def main() -> None:
    sys.exit(cli_main())
