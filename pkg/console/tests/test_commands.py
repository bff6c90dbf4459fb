import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from algebra.builders import classical
from algebra.cohomext import central_extension, coboundary
from algebra.exact_linalg import Matrix
from algebra.liecore import SCAlgebra
from algebra.serialization import save_algebra
from console.cli import cli_main


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return str(self.tmp / name)

    def run_json(self, *args, **options):
        out = StringIO()
        call_command(*args, output='json', stdout=out, **options)
        return json.loads(out.getvalue())


class BuildAndInspectTests(CommandTestCase):
    def test_heisenberg_centroid(self):
        target = self.path('h1.json')
        built = self.run_json('build', 'heisenberg', '1', out=target)
        self.assertEqual(built['dim'], 3)
        self.assertEqual(built['h1_trivial'], 2)
        self.assertEqual(self.run_json('centroid', target)['dim'], 3)

    def test_info_and_validate(self):
        target = self.path('sl2.json')
        self.run_json('build', 'classical', 'A', '1', out=target)
        info = self.run_json('info', target)
        self.assertEqual(info['basis'], ['e', 'h', 'f'])
        self.assertTrue(info['perfect'])
        self.assertTrue(self.run_json('validate', target)['passed'])
        self.assertEqual(self.run_json('h2', target)['dim'], 0)

    def test_build_argument_count(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('build', 'classical', 'A', out=self.path('x.json'), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_text_output(self):
        target = self.path('osc.json')
        self.run_json('build', 'oscillator', out=target)
        out = StringIO()
        call_command('centroid', target, toral=True, stdout=out)
        self.assertIn('dim:', out.getvalue())

    def test_failed_validation(self):
        broken = SCAlgebra.from_table('broken', ('x', 'y', 'z'), {(0, 1): {1: 1}, (1, 2): {0: 1}})
        target = self.path('broken.json')
        save_algebra(broken, target)
        with self.assertRaises(CommandError) as ctx:
            call_command('validate', target, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)

    def test_missing_file(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('info', self.path('missing.json'), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)


class ExtensionCommandTests(CommandTestCase):
    def test_decompose_centroid(self):
        sl2 = classical('A', 1)
        ext = central_extension(sl2, coboundary(sl2, Matrix.from_rows([[0, 1, 0]])))
        target = self.path('ext.json')
        save_algebra(ext.algebra, target)
        report = self.run_json('decompose_centroid', target, coeff_dim=1)
        self.assertEqual(report['dim'], 2)
        self.assertTrue(report['matches_brute_force'])
        self.assertTrue(report['passed'])

    def test_loop_member(self):
        report = self.run_json('loop', 'member', z='1:1', window=2)
        self.assertFalse(report['member'])
        report = self.run_json('loop', 'member', z='1:1', no_c=True, window=2)
        self.assertTrue(report['member'])


class CliTests(CommandTestCase):
    def cli(self, *argv):
        out, err = StringIO(), StringIO()
        code = cli_main(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    def test_unknown_subcommand(self):
        code, _, err = self.cli('frobnicate')
        self.assertEqual(code, 2)
        self.assertIn('usage', err)

    def test_no_subcommand(self):
        self.assertEqual(self.cli()[0], 2)

    def test_parser_error(self):
        self.assertEqual(self.cli('centroid')[0], 2)

    def test_build_then_centroid(self):
        target = self.path('h2.json')
        self.assertEqual(self.cli('build', 'heisenberg', '2', '-o', target)[0], 0)
        code, out, _ = self.cli('centroid', target, '--output', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['dim'], 5)

    def test_hyphenated_subcommand(self):
        sl2 = classical('A', 1)
        ext = central_extension(sl2, coboundary(sl2, Matrix.from_rows([[1, 0, 0]])))
        target = self.path('ext.json')
        save_algebra(ext.algebra, target)
        code, out, _ = self.cli('decompose-centroid', target, '--coeff-dim', '1', '--output', 'json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['base'], 'E(A1)/C')

    def test_missing_file_exit_code(self):
        code, _, err = self.cli('info', self.path('missing.json'))
        self.assertEqual(code, 2)
        self.assertIn('No such file', err)
