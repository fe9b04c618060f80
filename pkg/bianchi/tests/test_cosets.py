from django.test import SimpleTestCase

from bianchi.cosets import CosetTable, coset_enumeration, invert_word, word_letters

A, A_INV, B, B_INV = 0, 1, 2, 3


class ToddCoxeterTests(SimpleTestCase):
    def test_trivial_group(self):
        self.assertEqual(coset_enumeration(1, [[A]]).index, 1)

    def test_cyclic_group(self):
        result = coset_enumeration(1, [[A] * 5])
        self.assertTrue(result.complete)
        self.assertEqual(result.index, 5)

    def test_symmetric_group(self):
        relators = [[A, A], [B, B, B], [A, B, A, B]]
        self.assertEqual(coset_enumeration(2, relators).index, 6)
        self.assertEqual(coset_enumeration(2, relators, [[A]]).index, 3)
        self.assertEqual(coset_enumeration(2, relators, [[B]]).index, 2)

    def test_cap_on_an_infinite_group(self):
        result = coset_enumeration(2, [[A, A], [B, B, B]], cap=50)
        self.assertFalse(result.complete)
        self.assertIsNone(result.index)

    def test_permutations(self):
        table = CosetTable(1, [[A] * 3])
        table.enumerate()
        [perm] = table.permutations()
        self.assertEqual(sorted(perm), [0, 1, 2])
        self.assertTrue(all(perm[i] != i for i in range(3)))


class WordTests(SimpleTestCase):
    def test_letters(self):
        self.assertEqual(word_letters([('a', 1), ('b', -2)], ['a', 'b']), [A, B_INV, B_INV])

    def test_inverse(self):
        self.assertEqual(invert_word([A, B_INV]), [B, A_INV])
