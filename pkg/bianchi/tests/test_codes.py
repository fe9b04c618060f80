from fractions import Fraction
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from bianchi.codes import (
    BinaryCode,
    doubly_even_codes,
    euclidean_by_code,
    extended_hamming_code,
    half_lattice,
    order_from_code,
    parse_word,
    weight_four_words,
)
from bianchi.exceptions import ParseError, RankCapError
from bianchi.orders import code_of


class BinaryCodeTests(SimpleTestCase):
    def test_echelon_basis(self):
        code = BinaryCode(5, ['11110', '01111'])
        self.assertEqual(code.words, [(1, 0, 0, 0, 1), (0, 1, 1, 1, 1)])
        self.assertEqual(code.dimension, 2)
        self.assertFalse(code.is_doubly_even())

    def test_extended_hamming(self):
        code = extended_hamming_code()
        self.assertEqual(code.parameters(), (8, 4, 4))
        self.assertEqual(code.weight_distribution(), [1, 0, 0, 0, 14, 0, 0, 0, 1])
        self.assertTrue(code.is_doubly_even())
        self.assertTrue(code.contains('11111111'))
        self.assertFalse(code.contains('11000000'))

    def test_from_text(self):
        self.assertEqual(BinaryCode.from_text('1111, 1111'), BinaryCode(4, ['1111']))
        self.assertEqual(BinaryCode.from_text('', 4).dimension, 0)
        with self.assertRaises(ParseError):
            BinaryCode.from_text('')
        with self.assertRaises(ParseError):
            parse_word('0120')
        with self.assertRaises(ParseError):
            BinaryCode(4, ['11110'])

    def test_direct_sum_and_padding(self):
        code = BinaryCode(4, ['1111'])
        self.assertEqual(code.direct_sum(code), BinaryCode(8, ['11110000', '00001111']))
        self.assertEqual(code.padded(5), BinaryCode(5, ['11110']))
        with self.assertRaises(ParseError):
            code.padded(3)

    def test_json(self):
        self.assertEqual(BinaryCode(4, ['1111']).to_json(), {'length': 4, 'dimension': 1, 'words': ['1111']})


class DoublyEvenTests(SimpleTestCase):
    def test_length_four(self):
        self.assertEqual(doubly_even_codes(4), [BinaryCode(4), BinaryCode(4, ['1111'])])

    def test_length_five(self):
        self.assertEqual(len(doubly_even_codes(5)), 6)
        self.assertEqual(len(doubly_even_codes(5, 1)), 5)
        self.assertEqual(len(weight_four_words(5)), 5)


class EuclideanTests(SimpleTestCase):
    def test_all_ones_word(self):
        verdict = euclidean_by_code(BinaryCode(4, ['1111']))
        self.assertTrue(verdict.euclidean)
        self.assertEqual(verdict.covering_radius_sq, 2)
        self.assertEqual(verdict.half_scale_radius_sq, Fraction(1, 2))

    def test_zero_code_is_not_euclidean(self):
        verdict = euclidean_by_code(BinaryCode(4))
        self.assertFalse(verdict.euclidean)
        self.assertEqual(verdict.covering_radius_sq, 4)


class CodeOrderTests(SimpleTestCase):
    def test_all_ones_word_closes(self):
        code = BinaryCode(4, ['1111'])
        built = order_from_code(code)
        self.assertIsNotNone(built.order)
        self.assertEqual(code_of(built.order), code)
        self.assertTrue(built.order.vectors_of().same_points(half_lattice(code)))

    def test_rejected_codes(self):
        with self.assertRaises(ParseError):
            order_from_code(BinaryCode(5, ['11000']))
        with self.assertRaises(RankCapError):
            order_from_code(BinaryCode(settings.BIANCHI_CODE_LENGTH_CAP + 2))

    @skipUnless(settings.BIANCHI_RUN_SLOW_CHECKS, 'slow')
    def test_e8_order(self):
        built = order_from_code(extended_hamming_code(), stretch=True)
        self.assertTrue(built.order.vectors_of().same_points(half_lattice(extended_hamming_code())))
