from django.test import SimpleTestCase

from bianchi.acceptance import SUITES, check, run_check, run_suites, suite_names
from bianchi.exceptions import BianchiError, ZeroNormError


def broken():
    raise ZeroNormError("zero divisor")


class SuiteTests(SimpleTestCase):
    def test_suite_names(self):
        self.assertEqual(suite_names(), ['trivial', 'properties', 'presentation', 'orders', 'domain'])
        self.assertEqual(suite_names(slow=True), list(SUITES))

    def test_run_check(self):
        result = run_check('demo', check('two', 2, lambda: 1 + 1))
        self.assertTrue(result.passed)
        self.assertEqual((result.expected, result.found), ('2', '2'))

    def test_custom_acceptance(self):
        result = run_check('demo', check('one of', (12, 24), lambda: 24, accept=lambda e, f: f in e))
        self.assertTrue(result.passed)

    def test_errors_fail_the_check(self):
        result = run_check('demo', check('broken', True, broken))
        self.assertFalse(result.passed)
        self.assertTrue(result.found.startswith('error: '))

    def test_trivial_suite(self):
        results = run_suites(['trivial'])
        self.assertEqual(len(results), 3)
        self.assertTrue(all(r.passed for r in results))

    def test_unknown_suite(self):
        with self.assertRaises(BianchiError):
            run_suites(['nonesuch'])
