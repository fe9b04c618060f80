from unittest import mock

from django.test import SimpleTestCase

from bianchi import presets
from bianchi.euclid import (
    RIGHT,
    DivisionResult,
    EuclideanFailure,
    GcdCertificate,
    check_certificate_ratio,
    divide_left,
    divide_right,
    gcd,
    gcd_coeffs_left,
    gcd_left,
    is_order_unit,
    is_unimodular,
    lift_to_sl2,
)
from bianchi.exceptions import LiftNotFoundError, NotParavectorError
from bianchi.mobius import sl2_check
from bianchi.orders import clifford_order


class DivisionTests(SimpleTestCase):
    def setUp(self):
        self.order = presets.gaussian()
        self.a = self.order.algebra

    def test_exact_division(self):
        five, p = self.a.scalar(5), 1 + 2 * self.a.gen(1)
        result = divide_left(self.order, five, p)
        self.assertIsInstance(result, DivisionResult)
        self.assertEqual(result.remainder, 0)
        self.assertEqual(result.quotient * p, five)

    def test_remainder_is_smaller(self):
        y, x = 7 + 3 * self.a.gen(1), 2 - self.a.gen(1)
        result = divide_right(self.order, y, x)
        self.assertEqual(x * result.quotient + result.remainder, y)
        self.assertLess(result.remainder.nrd().scalar_part(), x.nrd().scalar_part())

    def test_ties_round_down(self):
        result = divide_left(presets.integers(), presets.integers().algebra.scalar(3), presets.integers().algebra.scalar(2))
        self.assertEqual(result.quotient, 1)
        self.assertEqual(result.remainder, 1)

    def test_ratio_must_be_a_paravector(self):
        hurwitz = presets.hurwitz()
        a = hurwitz.algebra
        with self.assertRaises(NotParavectorError):
            divide_right(hurwitz, a.gen(1) * a.gen(2), a.one())


class GcdTests(SimpleTestCase):
    def test_gaussian_prime(self):
        order = presets.gaussian()
        a = order.algebra
        five, p = a.scalar(5), 1 + 2 * a.gen(1)
        certificate = gcd(order, five, p)
        self.assertIsInstance(certificate, GcdCertificate)
        self.assertEqual(certificate.gcd.nrd(), 5)
        c, d = certificate.coeffs
        self.assertEqual(c * five + d * p, certificate.gcd)

    def test_integers(self):
        order = presets.integers()
        a = order.algebra
        certificate = gcd(order, a.scalar(3), a.scalar(2))
        self.assertEqual(certificate.gcd, 1)
        self.assertEqual(certificate.coeffs, (1, -1))
        self.assertEqual(len(certificate.steps), 2)

    def test_right_certificate(self):
        order = presets.gaussian()
        a = order.algebra
        x, y = 4 + a.gen(1), 3 - 2 * a.gen(1)
        certificate = gcd(order, x, y, side=RIGHT)
        c, d = certificate.coeffs
        self.assertEqual(x * c + y * d, certificate.gcd)
        self.assertTrue(is_order_unit(order, certificate.gcd))

    def test_zero_second_argument(self):
        order = presets.gaussian()
        a = order.algebra
        self.assertEqual(gcd_left(order, 2 + a.gen(1), a.zero()), 2 + a.gen(1))

    def test_non_euclidean_order(self):
        order = clifford_order(presets.algebra_of((5,)))
        a = order.algebra
        result = gcd(order, a.scalar(2), 1 + a.gen(1))
        self.assertIsInstance(result, EuclideanFailure)
        self.assertEqual(result.divisor_norm, 4)
        self.assertEqual(result.remainder_norm, 6)

    def test_certificate_ratio(self):
        a = presets.hurwitz().algebra
        check_certificate_ratio(a.one(), 1 + a.gen(1))
        check_certificate_ratio(a.zero(), a.gen(1) * a.gen(2))
        with self.assertRaises(NotParavectorError):
            check_certificate_ratio(a.one(), a.gen(1) * a.gen(2))

    def test_non_paravector_certificate_is_refused(self):
        order = presets.hurwitz()
        a = order.algebra
        steps = [DivisionResult(a.gen(1) * a.gen(2), a.one()), DivisionResult(a.gen(1), a.zero())]
        with mock.patch('bianchi.euclid.divide_left', side_effect=steps):
            with self.assertRaises(NotParavectorError):
                gcd_coeffs_left(order, 1 + a.gen(2), a.gen(1))


class LiftTests(SimpleTestCase):
    def setUp(self):
        self.order = presets.gaussian()
        self.a = self.order.algebra

    def test_lift_of_a_coprime_row(self):
        mu, nu = 1 + self.a.gen(1), 2 + self.a.gen(1)
        self.assertTrue(is_unimodular(self.order, mu, nu))
        matrix = lift_to_sl2(self.order, mu, nu)
        self.assertEqual((matrix.c, matrix.d), (mu, nu))
        self.assertTrue(sl2_check(matrix, self.order).ok)

    def test_unit_entry(self):
        matrix = lift_to_sl2(self.order, self.a.gen(1), self.a.scalar(7))
        self.assertTrue(sl2_check(matrix, self.order).ok)

    def test_zero_entry(self):
        matrix = lift_to_sl2(self.order, self.a.zero(), -self.a.gen(1))
        self.assertEqual(matrix.d, -self.a.gen(1))
        self.assertTrue(sl2_check(matrix, self.order).ok)

    def test_common_factor(self):
        mu, nu = 1 + self.a.gen(1), 1 - self.a.gen(1)
        self.assertFalse(is_unimodular(self.order, mu, nu))
        with self.assertRaises(LiftNotFoundError):
            lift_to_sl2(self.order, mu, nu)

    def test_units(self):
        self.assertTrue(is_order_unit(self.order, -self.a.gen(1)))
        self.assertFalse(is_order_unit(self.order, 1 + self.a.gen(1)))
