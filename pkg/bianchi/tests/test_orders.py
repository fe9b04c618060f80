from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase
from unittest import skipUnless

from bianchi import presets
from bianchi.algebra import CONJUGATE, TRANSPOSE
from bianchi.exceptions import NotAnOrderError, ParseError
from bianchi.lattices import cubic_lattice
from bianchi.orders import (
    Order,
    clifford_conjugate,
    clifford_order,
    code_of,
    is_integral,
    maximal_orders,
    minimal_overorders,
    order_from_generators,
    p_maximal_orders,
    radical_mod_p,
)


class DiscriminantTests(SimpleTestCase):
    def test_gaussian(self):
        self.assertEqual(presets.gaussian().discriminant().value, -4)

    def test_lipschitz(self):
        disc = presets.lipschitz().discriminant()
        self.assertEqual(disc.value, -256)
        self.assertEqual(disc.factorization, {2: 8})

    def test_index_p_divides_by_p_squared(self):
        lipschitz, hurwitz = presets.lipschitz(), presets.hurwitz()
        self.assertEqual(lipschitz.index_in(hurwitz), 2)
        self.assertEqual(hurwitz.discriminant().value, -64)
        self.assertEqual(presets.sqrt_minus_3().discriminant().value, -12)
        self.assertEqual(presets.eisenstein().discriminant().value, -3)


class IntegralityTests(SimpleTestCase):
    def test_half_sum_is_integral_for_hurwitz(self):
        a = presets.algebra_of((1, 1))
        zeta = (1 + a.gen(1) + a.gen(2) + a.gen(1) * a.gen(2)) / 2
        self.assertTrue(is_integral(zeta))
        self.assertFalse(is_integral((1 + a.gen(1)) / 2))

    def test_non_integral_generator_is_refused(self):
        a = presets.algebra_of((1, 1))
        with self.assertRaises(NotAnOrderError):
            order_from_generators(a, [(1 + a.gen(1)) / 2])

    def test_rank_deficient_module(self):
        a = presets.algebra_of((1,))
        with self.assertRaises(NotAnOrderError):
            Order(a, [a.one()])

    def test_verify(self):
        self.assertTrue(presets.o13().verify())


class MaximalOrderTests(SimpleTestCase):
    def test_lipschitz_at_two(self):
        self.assertEqual(p_maximal_orders(presets.lipschitz(), 2), [presets.hurwitz()])

    def test_lipschitz_at_three(self):
        lipschitz = presets.lipschitz()
        self.assertEqual(p_maximal_orders(lipschitz, 3), [lipschitz])

    def test_maximal_orders_of_lipschitz(self):
        self.assertEqual(maximal_orders(presets.lipschitz()), [presets.hurwitz()])

    def test_maximal_order_is_a_fixed_point(self):
        hurwitz = presets.hurwitz()
        self.assertEqual(maximal_orders(hurwitz), [hurwitz])

    def test_clifford_111_has_one_maximal_order(self):
        self.assertEqual(maximal_orders(presets.clifford_111()), [presets.o4()])

    def test_radical_dimensions_at_two(self):
        self.assertEqual(len(radical_mod_p(presets.lipschitz(), 2)), 3)
        self.assertEqual(len(radical_mod_p(presets.hurwitz(), 2)), 2)

    def test_closures_are_shared(self):
        lipschitz = presets.lipschitz()
        closures = {}
        first = minimal_overorders(lipschitz, 2, closures)
        cached = dict(closures)
        self.assertIn(presets.hurwitz(), first)
        self.assertTrue(cached)
        self.assertEqual(minimal_overorders(lipschitz, 2, closures), first)
        self.assertEqual(closures, cached)

    @skipUnless(settings.BIANCHI_RUN_SLOW_CHECKS, 'slow')
    def test_counts(self):
        self.assertEqual(len(maximal_orders(presets.clifford_113())), 4)
        self.assertEqual(len(maximal_orders(presets.clifford_1111())), 6)


class InvolutionTests(SimpleTestCase):
    def test_hurwitz_is_clifford_stable(self):
        hurwitz = presets.hurwitz()
        self.assertTrue(hurwitz.is_star_stable())
        self.assertTrue(hurwitz.is_clifford_stable())

    def test_o4_is_clifford_stable(self):
        self.assertTrue(presets.o4().is_clifford_stable())

    def test_order_through_a_rotated_direction(self):
        hurwitz = presets.hurwitz()
        a = hurwitz.algebra
        v = 1 + a.gen(1)
        rotated = clifford_conjugate(hurwitz, v)
        self.assertEqual(rotated.discriminant().value, hurwitz.discriminant().value)
        self.assertEqual(rotated.involution_image(TRANSPOSE).involution_image(TRANSPOSE), rotated)

    def test_conjugating_by_one(self):
        o4 = presets.o4()
        self.assertEqual(clifford_conjugate(o4, o4.algebra.one()), o4)

    def test_involution_image_of_the_clifford_order(self):
        order = presets.clifford_113()
        self.assertEqual(order.involution_image(CONJUGATE), order)


class VectorsAndCodesTests(SimpleTestCase):
    def test_vectors_of_hurwitz_are_cubic(self):
        self.assertTrue(presets.hurwitz().vectors_of().same_points(cubic_lattice(3)))
        self.assertTrue(presets.hurwitz().vectors_of().same_points(presets.lipschitz().vectors_of()))

    def test_vectors_of_o4_are_half_d4(self):
        vec = presets.o4().vectors_of()
        self.assertTrue(vec.contains([Fraction(1, 2)] * 4))
        self.assertFalse(vec.contains([Fraction(1, 2), Fraction(1, 2), 0, 0]))

    def test_code_of_o4(self):
        self.assertEqual(code_of(presets.o4()).words, [(1, 1, 1, 1)])

    def test_code_of_lipschitz_is_trivial(self):
        self.assertEqual(code_of(presets.lipschitz()).words, [])

    def test_code_needs_the_all_minus_one_form(self):
        with self.assertRaises(NotAnOrderError):
            code_of(presets.b113())


class JsonTests(SimpleTestCase):
    def test_round_trip(self):
        o4 = presets.o4()
        self.assertEqual(Order.from_json(o4.to_json()), o4)

    def test_bad_payload(self):
        with self.assertRaises(ParseError):
            Order.from_json({'form': [1]})

    def test_non_order_payload(self):
        payload = clifford_order(presets.algebra_of((1,))).to_json()
        payload['basis'] = [['1', '0'], ['0', '1/2']]
        with self.assertRaises(NotAnOrderError):
            Order.from_json(payload)


class OddballTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.base = presets.o5_code('01111')
        cls.oddball = presets.o5_oddball()

    def test_conjugator_has_no_scalar_norm(self):
        a = self.base.algebra
        v = 1 + a.gen(2) + a.gen(1) * a.gen(2) + a.gen(2) * a.gen(3) * a.gen(4)
        self.assertFalse(v.nrd().is_scalar())
        self.assertEqual(v * v.inverse(), a.one())

    def test_vectors_are_cubic(self):
        self.assertEqual(self.oddball.label, 'O5,!')
        self.assertTrue(self.oddball.vectors_of().same_points(cubic_lattice(5)))
        self.assertFalse(self.base.vectors_of().same_points(cubic_lattice(5)))

    def test_conjugate_keeps_the_discriminant(self):
        self.assertEqual(self.oddball.discriminant().value, self.base.discriminant().value)
        self.assertEqual(self.oddball.rank, self.base.rank)
