import random
from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase, override_settings

from bianchi.algebra import CliffordAlgebra, DiagonalForm, mask_label, parse_label, popcount
from bianchi.exceptions import AlgebraMismatchError, ParseError, RankCapError, ZeroNormError


def random_element(algebra, rng, terms=4):
    masks = rng.sample(range(algebra.rank), min(terms, algebra.rank))
    return algebra.element({m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in masks})


class GeneratorRelationsTests(SimpleTestCase):
    def setUp(self):
        self.algebra = CliffordAlgebra(DiagonalForm((1, 2, 3)))

    def test_squares_are_minus_the_form(self):
        for i, d in enumerate((1, 2, 3), start=1):
            g = self.algebra.gen(i)
            self.assertEqual(g * g, -d)

    def test_generators_anticommute(self):
        g1, g2, g3 = (self.algebra.gen(i) for i in (1, 2, 3))
        self.assertEqual(g1 * g2, -(g2 * g1))
        self.assertEqual(g2 * g3 + g3 * g2, 0)

    def test_product_of_generators_is_a_basis_element(self):
        self.assertEqual(self.algebra.gen(1) * self.algebra.gen(3), self.algebra.basis_element(0b101))
        self.assertEqual(self.algebra.gen(3) * self.algebra.gen(1), -self.algebra.basis_element(0b101))

    def test_rank_cap(self):
        with self.assertRaises(RankCapError):
            CliffordAlgebra(DiagonalForm([1] * 4), max_arity=3)

    @override_settings(BIANCHI_MAX_ARITY=2)
    def test_rank_cap_from_settings(self):
        with self.assertRaises(RankCapError):
            CliffordAlgebra(DiagonalForm((1, 1, 1)))

    def test_mixed_algebras_are_refused(self):
        other = CliffordAlgebra(DiagonalForm((1, 1, 1)))
        with self.assertRaises(AlgebraMismatchError):
            self.algebra.gen(1) * other.gen(1)


class InvolutionTests(SimpleTestCase):
    def setUp(self):
        self.algebra = CliffordAlgebra(DiagonalForm((1, 1, 3)))
        self.rng = random.Random(settings.BIANCHI_RANDOM_SEED)

    def test_involutions_on_random_pairs(self):
        for _ in range(50):
            x, y = random_element(self.algebra, self.rng), random_element(self.algebra, self.rng)
            self.assertEqual((x * y).parity(), x.parity() * y.parity())
            self.assertEqual((x * y).transpose(), y.transpose() * x.transpose())
            self.assertEqual((x * y).conjugate(), y.conjugate() * x.conjugate())
            self.assertEqual(x.transpose().transpose(), x)

    def test_conjugate_of_a_generator(self):
        g = self.algebra.gen(2)
        self.assertEqual(g.conjugate(), -g)
        self.assertEqual(g.transpose(), g)
        self.assertEqual(g.parity(), -g)

    def test_transpose_reverses_products(self):
        e12 = self.algebra.gen(1) * self.algebra.gen(2)
        self.assertEqual(e12.transpose(), -e12)


class NormTests(SimpleTestCase):
    def setUp(self):
        self.algebra = CliffordAlgebra(DiagonalForm((1, 2, 3)))
        self.rng = random.Random(settings.BIANCHI_RANDOM_SEED)

    def paravector(self):
        return self.algebra.paravector([Fraction(self.rng.randint(-6, 6), self.rng.randint(1, 3)) for _ in range(4)])

    def test_paravector_norm(self):
        x = self.algebra.paravector([1, 1, 1, 1])
        self.assertEqual(x.nrd(), 1 + 1 + 2 + 3)
        self.assertTrue(x.is_monoid())

    def test_monoid_norm_is_multiplicative(self):
        for _ in range(40):
            x = self.paravector() * self.paravector()
            y = self.paravector()
            self.assertEqual((x * y).nrd(), x.nrd() * y.nrd())

    def test_inverse(self):
        x = self.algebra.paravector([1, 2, 0, 1])
        self.assertEqual(x * x.inverse(), 1)
        self.assertEqual(x.inverse() * x, 1)

    def test_zero_has_no_inverse(self):
        with self.assertRaises(ZeroNormError):
            self.algebra.zero().inverse()

    def test_nonscalar_norm_inverse(self):
        x = 1 + self.algebra.basis_element(0b111)
        self.assertFalse(x.nrd().is_scalar())
        self.assertEqual(x.inverse(), (1 - self.algebra.basis_element(0b111)) / -5)
        self.assertEqual(x * x.inverse(), 1)

    def test_zero_divisor_has_no_inverse(self):
        algebra = CliffordAlgebra(DiagonalForm((1, 1, 1)))
        with self.assertRaises(ZeroNormError):
            (1 + algebra.basis_element(0b111)).inverse()

    def test_quaternion_unit_is_a_unit(self):
        algebra = CliffordAlgebra(DiagonalForm((1, 1)))
        zeta = (1 + algebra.gen(1) + algebra.gen(2) + algebra.gen(1) * algebra.gen(2)) / 2
        self.assertTrue(zeta.is_unit())
        self.assertEqual(zeta ** 6, 1)


class TextFormatTests(SimpleTestCase):
    def setUp(self):
        self.algebra = CliffordAlgebra(DiagonalForm((1, 1, 3)))

    def test_labels(self):
        self.assertEqual(mask_label(0), '1')
        self.assertEqual(mask_label(0b101), 'e13')
        self.assertEqual(parse_label('e23'), 0b110)

    def test_print(self):
        x = self.algebra.parse('1/2 - 3*e13 + e2')
        self.assertEqual(str(x), '1/2*1 + 1*e2 - 3*e13')

    def test_parse_print_parse(self):
        rng = random.Random(settings.BIANCHI_RANDOM_SEED)
        for _ in range(20):
            x = random_element(self.algebra, rng)
            self.assertEqual(self.algebra.parse(str(x)), x)

    def test_zero(self):
        self.assertEqual(str(self.algebra.zero()), '0')
        self.assertEqual(self.algebra.parse('0'), 0)

    def test_bad_text(self):
        for text in ('', 'e31', 'e4', '1/*e1', 'x'):
            with self.assertRaises(ParseError, msg=text):
                self.algebra.parse(text)

    def test_form_from_text(self):
        self.assertEqual(DiagonalForm.from_text('1, 1, 3').coefficients, (1, 1, 3))
        self.assertEqual(DiagonalForm.from_text('').arity, 0)
        with self.assertRaises(ParseError):
            DiagonalForm.from_text('1,-2')


class GradingTests(SimpleTestCase):
    def test_graded_parts(self):
        algebra = CliffordAlgebra(DiagonalForm((1, 1, 1)))
        x = algebra.parse('1 + e1 + e12 + e123')
        even, odd = x.graded()
        self.assertTrue(all(popcount(m) % 2 == 0 for m in even.coeffs))
        self.assertEqual(even + odd, x)
        self.assertEqual(even - odd, x.parity())
