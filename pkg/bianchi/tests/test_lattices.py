from fractions import Fraction

from django.test import SimpleTestCase

from bianchi import matrices
from bianchi.exceptions import CatalogueError, ParseError
from bianchi.lattices import Lattice, cubic_lattice

HALF = Fraction(1, 2)


def e8():
    rows = [[int(j == i) - int(j == i + 1) for j in range(8)] for i in range(7)]
    rows.append([0] * 6 + [1, 1])
    rows.append([HALF] * 8)
    return Lattice(matrices.hnf_fraction_rows(rows, 8))


def d4():
    rows = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]]
    return Lattice(rows)


class EnumerationTests(SimpleTestCase):
    def test_short_vectors_of_z2(self):
        found = cubic_lattice(2).enumerate_by_norm(1)
        self.assertEqual(len(found), 5)
        self.assertEqual(found[0], ([0, 0], 0))

    def test_negative_bound(self):
        self.assertEqual(cubic_lattice(2).enumerate_by_norm(-1), [])

    def test_minimal_vectors_of_e8(self):
        minimum, vectors = e8().minimal_vectors()
        self.assertEqual(minimum, 2)
        self.assertEqual(len(vectors), 240)

    def test_weighted_metric(self):
        lattice = Lattice([[1, 0], [0, 1]], [1, 19])
        norms = [n for _, n in lattice.enumerate_by_norm(5)]
        self.assertEqual(sorted(set(norms)), [0, 1, 4])


class ClosestVectorTests(SimpleTestCase):
    def test_all_ties_are_returned(self):
        distance, ties = cubic_lattice(2).closest_vectors([HALF, HALF])
        self.assertEqual(distance, HALF)
        self.assertEqual(ties, [[0, 0], [0, 1], [1, 0], [1, 1]])

    def test_ties_break_lexicographically(self):
        vector, distance = cubic_lattice(1).closest_vector([HALF])
        self.assertEqual(vector, [0])
        self.assertEqual(distance, Fraction(1, 4))

    def test_target_outside_the_span(self):
        with self.assertRaises(ParseError):
            Lattice([[1, 0]]).closest_vectors([0, 1])


class CoveringRadiusTests(SimpleTestCase):
    def test_cubic(self):
        self.assertEqual(cubic_lattice(3).covering_radius(), Fraction(3, 4))

    def test_hexagonal(self):
        a2 = Lattice([[1, 0], [0, 1]], [[2, -1], [-1, 2]])
        self.assertEqual(a2.covering_radius(), Fraction(2, 3))

    def test_d4(self):
        self.assertEqual(d4().covering_radius(), 1)

    def test_catalogue_above_exact_rank(self):
        self.assertEqual(cubic_lattice(7).covering_radius(), Fraction(7, 4))
        self.assertEqual(e8().covering_radius(), 1)

    def test_unrecognized_lattice(self):
        lattice = Lattice([[int(i == j) for j in range(7)] for i in range(7)], [1] * 6 + [2])
        with self.assertRaises(CatalogueError):
            lattice.covering_radius()


class StructureTests(SimpleTestCase):
    def test_voronoi_relevant_vectors_of_z2(self):
        self.assertEqual(cubic_lattice(2).voronoi_relevant_vectors(), [[-1, 0], [0, -1], [0, 1], [1, 0]])

    def test_recognize(self):
        [component] = d4().recognize()
        self.assertEqual(component.kind, 'D4')
        [component] = e8().recognize()
        self.assertEqual(component.kind, 'E8')

    def test_contains_and_coordinates(self):
        lattice = d4()
        self.assertTrue(lattice.contains([1, 1, 0, 0]))
        self.assertFalse(lattice.contains([1, 0, 0, 0]))

    def test_same_points(self):
        self.assertTrue(Lattice([[1, 1], [0, 1]]).same_points(cubic_lattice(2)))
        self.assertFalse(Lattice([[2, 0], [0, 1]]).same_points(cubic_lattice(2)))

    def test_dependent_basis(self):
        with self.assertRaises(ParseError):
            Lattice([[1, 0], [2, 0]])

    def test_json(self):
        lattice = Lattice.from_json(d4().to_json())
        self.assertTrue(lattice.same_points(d4()))
