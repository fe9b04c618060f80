from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from bianchi import presets
from bianchi.bott import (
    PauliFrame,
    TableAlgebra,
    central_element,
    decomposition_iso,
    even_dimension_matches,
    iota,
    phi,
    psi,
    psi_checks,
    rep_report,
    verify_decomposition,
)
from bianchi.exceptions import ParseError, RankCapError
from bianchi.mobius import SL2Element, inversion, translation


class TableAlgebraTests(SimpleTestCase):
    def setUp(self):
        self.hyperbolic = TableAlgebra(['f', 'g'], [0, 0], {(0, 1): 1})

    def test_null_generators(self):
        f, g = self.hyperbolic.gen(1), self.hyperbolic.gen(2)
        self.assertFalse(f * f)
        self.assertEqual(f * g + g * f, 1)
        self.assertEqual(g * f, 1 - f * g)

    def test_label(self):
        self.assertEqual(self.hyperbolic.label(0b11), 'f.g')

    def test_bad_tables(self):
        with self.assertRaises(ParseError):
            TableAlgebra(['f', 'g'], [0])
        with self.assertRaises(RankCapError):
            TableAlgebra(['a', 'b', 'c'], [1, 1, 1], max_arity=2)


class BottMapTests(SimpleTestCase):
    def test_phi_is_multiplicative_on_generators(self):
        a = presets.algebra_of((1,))
        i = a.gen(1)
        self.assertEqual(phi(i) * phi(i), phi(i * i))
        self.assertEqual(phi(i) * phi(i), -1)

    def test_identity_maps_to_one(self):
        a = presets.algebra_of((1,))
        one = SL2Element.identity(a)
        self.assertEqual(iota(one), 1)
        self.assertEqual(psi(one), 1)

    def test_psi_of_inversion_is_a_spinor(self):
        a = presets.algebra_of((1,))
        x = psi(inversion(a))
        self.assertEqual(x * x.transpose(), 1)
        self.assertEqual(x.parity(), x)

    def test_identities_at_low_arity(self):
        for form in [(), (1,), (1, 3)]:
            checks = psi_checks(presets.algebra_of(form), samples=20)
            failed = [c.name for c in checks if not c.passed]
            self.assertEqual(failed, [], form)

    @skipUnless(settings.BIANCHI_RUN_SLOW_CHECKS, 'slow')
    def test_identities_at_arity_three(self):
        checks = psi_checks(presets.algebra_of((1, 1, 3)))
        self.assertTrue(all(c.passed for c in checks))

    def test_even_dimension(self):
        self.assertTrue(even_dimension_matches(presets.algebra_of((1,))))


class DecompositionTests(SimpleTestCase):
    def test_splits_along_two_generators(self):
        data = decomposition_iso(presets.algebra_of((1, 1, 3)), (1, 2))
        self.assertTrue(verify_decomposition(data))
        self.assertTrue(data.unimodular)
        self.assertEqual(data.v_algebra.form.coefficients, (-3,))

    def test_non_unimodular_plane(self):
        data = decomposition_iso(presets.algebra_of((1, 1, 3)), (1, 3))
        self.assertFalse(data.unimodular)
        self.assertTrue(verify_decomposition(data))

    def test_bad_plane(self):
        with self.assertRaises(ParseError):
            decomposition_iso(presets.algebra_of((1, 1)), (1, 1))
        with self.assertRaises(ParseError):
            decomposition_iso(presets.algebra_of((1, 1)), (1, 3))

    def test_central_element(self):
        a = presets.algebra_of((1, 1, 1))
        z = central_element(a)
        self.assertTrue(all(z * a.gen(i) == a.gen(i) * z for i in range(1, 4)))


class PauliFrameTests(SimpleTestCase):
    def test_determinant_is_the_form(self):
        for form in [(), (1,), (1, 3)]:
            self.assertTrue(PauliFrame(presets.algebra_of(form)).check(), form)

    def test_orthogonal_image_of_members(self):
        order = presets.gaussian()
        a = order.algebra
        for g in [inversion(a), translation(a.gen(1))]:
            report = rep_report(g, order)
            self.assertTrue(report['preserves_q'])
            self.assertTrue(report['integral_entries'])
            self.assertTrue(report['preserves_integral_q'])
