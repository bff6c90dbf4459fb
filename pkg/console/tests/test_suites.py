from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from algebra.exceptions import AlgebraInputError
from console.suites import VerificationService


class VerificationServiceTests(SimpleTestCase):
    def setUp(self):
        self.service = VerificationService(window=2, seed=7)

    def test_names(self):
        self.assertEqual(self.service.names()[0], 'easy')
        self.assertIn('centkm-finite', self.service.names())

    def test_unknown_suite(self):
        with self.assertRaises(KeyError):
            self.service.run('nonsense')

    def test_dernot(self):
        result = self.service.run('dernot')
        self.assertTrue(result['passed'], result['failed'])
        self.assertEqual(len(result['instances']), 5)

    def test_centkm_finite(self):
        result = self.service.run('centkm-finite')
        self.assertTrue(result['passed'], result['failed'])

    def test_easy(self):
        result = self.service.run('easy')
        self.assertTrue(result['passed'], result['failed'])

    def assertSuitePasses(self, name):
        result = self.service.run(name)
        self.assertTrue(result['passed'], result['failed'])
        self.assertTrue(result['instances'])
        return result

    def test_elem(self):
        self.assertSuitePasses('elem')

    def test_toral(self):
        self.assertSuitePasses('toral')

    def test_toralcor(self):
        self.assertSuitePasses('toralcor')

    def test_exaff(self):
        self.assertSuitePasses('exaff')

    def test_remkm(self):
        result = self.assertSuitePasses('remkm')
        windows = {inst['name']: inst.get('window') for inst in result['instances']}
        self.assertEqual(windows['K: no degree 2 component'], 2)
        self.assertEqual(windows['K: no degree -5 component'], 4)

    def test_remkm_small_window(self):
        result = VerificationService(window=3, seed=7).run('remkm')
        self.assertTrue(result['passed'], result['failed'])

    def test_xxx(self):
        self.assertSuitePasses('xxx')

    def test_centprop(self):
        self.assertSuitePasses('centprop')

    def test_lemcr(self):
        self.assertSuitePasses('lemcr')

    def test_centrg(self):
        self.assertSuitePasses('centrg')

    def test_centless(self):
        self.assertSuitePasses('centless')

    def test_errors_become_failed_instances(self):
        def broken():
            raise AlgebraInputError('bad input')
        instance = self.service._instance('broken', broken)
        self.assertEqual(instance, {'name': 'broken', 'passed': False, 'error': 'bad input'})


class VerifyCommandTests(SimpleTestCase):
    def test_text_report(self):
        out = StringIO()
        call_command('verify', 'dernot', stdout=out)
        self.assertIn('[PASS] sl2 (x) Q[t]/t^2: dim Der = 7', out.getvalue())

    def test_unknown_suite(self):
        with self.assertRaises(CommandError):
            call_command('verify', 'nonsense', stdout=StringIO())

    def test_small_window_exit_status(self):
        out = StringIO()
        call_command('verify', 'remkm', window=3, stdout=out)
        self.assertIn('[PASS] K: no degree 5 component', out.getvalue())
