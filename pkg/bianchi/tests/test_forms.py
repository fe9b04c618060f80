from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from bianchi.algebra import DiagonalForm
from bianchi.codes import BinaryCode
from bianchi.forms import (
    AcceptForm,
    BottCheckForm,
    CodeForm,
    DomainForm,
    IndexForm,
    OrderSourceForm,
    RunConfigForm,
    UnitsForm,
    form_errors,
)


class OrderSourceFormTests(SimpleTestCase):
    def test_preset(self):
        form = OrderSourceForm(data={'preset': 'gaussian'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['threads'], 1)
        self.assertIsNone(form.cleaned_data['form'])

    def test_form_coefficients(self):
        form = OrderSourceForm(data={'form': '1,1,3'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['form'], DiagonalForm([1, 1, 3]))

    def test_exactly_one_source(self):
        self.assertFalse(OrderSourceForm(data={}).is_valid())
        form = OrderSourceForm(data={'preset': 'gaussian', 'form': '1'})
        self.assertFalse(form.is_valid())
        self.assertIn('only one order source', form_errors(form))

    def test_bad_values(self):
        self.assertFalse(OrderSourceForm(data={'preset': 'nonesuch'}).is_valid())
        form = OrderSourceForm(data={'form': '1,-1'})
        self.assertFalse(form.is_valid())
        self.assertTrue(form_errors(form).startswith('form: '))


class RunConfigFormTests(SimpleTestCase):
    @override_settings(BIANCHI_OUTPUT_DIR='/tmp/bianchi-output')
    def test_save_uses_the_output_dir(self):
        form = RunConfigForm(data={'save': True})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['out'], '/tmp/bianchi-output')

    def test_explicit_out_wins(self):
        form = RunConfigForm(data={'save': True, 'out': 'here'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['out'], 'here')

    def test_no_out(self):
        form = RunConfigForm(data={})
        self.assertTrue(form.is_valid())
        self.assertIsNone(form.cleaned_data['out'])


class CommandFormTests(SimpleTestCase):
    def test_units_modes_are_exclusive(self):
        self.assertFalse(UnitsForm(data={'preset': 'hurwitz', 'exhaustive': True, 'heuristic': 2}).is_valid())
        self.assertTrue(UnitsForm(data={'preset': 'hurwitz', 'heuristic': 2}).is_valid())

    @override_settings(BIANCHI_DENOMINATOR_NORM_BOUND=7)
    def test_domain_defaults(self):
        form = DomainForm(data={'preset': 'gaussian'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['bound'], 7)
        self.assertEqual(form.cleaned_data['plane'], (0, 1))
        self.assertIsNone(form.cleaned_data['slice'])

    def test_domain_section(self):
        form = DomainForm(data={'preset': 'hurwitz', 'plane': '0,2', 'slice': '1/2'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['plane'], (0, 2))
        self.assertEqual(form.cleaned_data['slice'], [Fraction(1, 2)])
        self.assertFalse(DomainForm(data={'preset': 'hurwitz', 'plane': '1,1'}).is_valid())
        self.assertFalse(DomainForm(data={'preset': 'hurwitz', 'slice': 'a'}).is_valid())

    def test_index_sources(self):
        self.assertTrue(IndexForm(data={'gamma0': 5}).is_valid())
        self.assertFalse(IndexForm(data={'gamma0': 5, 'suborder': 'sqrt-3'}).is_valid())
        self.assertFalse(IndexForm(data={'preset': 'eisenstein'}).is_valid())
        form = IndexForm(data={'preset': 'eisenstein', 'suborder': 'sqrt-3', 'cusps': '1/2,1/2; 0,1'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['cusps'], [[Fraction(1, 2), Fraction(1, 2)], [0, 1]])

    def test_bott_form(self):
        form = BottCheckForm(data={'decompose': '1,2'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['form'], DiagonalForm(()))
        self.assertEqual(form.cleaned_data['decompose'], (1, 2))
        self.assertFalse(BottCheckForm(data={'decompose': '1'}).is_valid())

    def test_code_form(self):
        form = CodeForm(data={'build_order': '11110'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['code'], BinaryCode(5, ['11110']))
        self.assertFalse(CodeForm(data={'list_doubly_even': True}).is_valid())
        self.assertFalse(CodeForm(data={}).is_valid())

    @override_settings(BIANCHI_CODE_LENGTH_CAP=8)
    def test_code_length_cap(self):
        self.assertFalse(CodeForm(data={'list_doubly_even': True, 'length': 9}).is_valid())
        self.assertTrue(CodeForm(data={'list_doubly_even': True, 'length': 9, 'stretch': True}).is_valid())

    def test_accept_suites(self):
        form = AcceptForm(data={'suites': 'trivial, orders'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['suites'], ['trivial', 'orders'])
        self.assertFalse(AcceptForm(data={'suites': 'nonesuch'}).is_valid())
