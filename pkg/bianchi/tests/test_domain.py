from fractions import Fraction
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from bianchi import presets
from bianchi.domain import (
    DOMINATED,
    WITNESS,
    Bubble,
    InftyStabilizer,
    Polytope,
    candidate_cusps,
    coverage,
    cusp_classes,
    deephole_cover_check,
    exclusion_test,
    facet_bubbles,
    grid_disagreements,
    grid_verdict,
    infty_domain,
    reduce_point,
    resolve_cusp,
    sqrt_upper,
    under_spheres,
)
from bianchi.exceptions import ParseError
from bianchi.mobius import HPoint

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def sphere(algebra, center, radius_sq):
    return Bubble.sphere(algebra, center, radius_sq)


class ExclusionTests(SimpleTestCase):
    def setUp(self):
        self.gaussian = presets.algebra_of((1,))
        self.unit = sphere(self.gaussian, (0, 0), 1)

    def test_small_bubble_inside_the_unit_hemisphere(self):
        small = sphere(self.gaussian, (Fraction(2, 5), Fraction(1, 5)), Fraction(1, 5))
        self.assertTrue(exclusion_test(small, self.unit))
        self.assertFalse(exclusion_test(self.unit, small))

    def test_identical_bubbles(self):
        self.assertTrue(exclusion_test(self.unit, sphere(self.gaussian, (0, 0), 1)))

    def test_disjoint_bubbles(self):
        self.assertFalse(exclusion_test(self.unit, sphere(self.gaussian, (2, 0), 1)))


class UnderSpheresTests(SimpleTestCase):
    def test_hurwitz_deep_hole_is_dominated(self):
        a = presets.algebra_of((1, 1))
        third = Fraction(1, 3)
        h0 = sphere(a, (third, third, third), third)
        cover = [sphere(a, (0, 0, 0), 1), sphere(a, (1, 1, 1), 1)]
        self.assertEqual(under_spheres(h0, cover).status, DOMINATED)

    def test_gaussian_half_bubble_is_dominated(self):
        a = presets.algebra_of((1,))
        h0 = sphere(a, (HALF, HALF), HALF)
        cover = [sphere(a, c, 1) for c in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        self.assertEqual(under_spheres(h0, cover).status, DOMINATED)

    def test_gaussian_half_bubble_with_one_neighbour(self):
        a = presets.algebra_of((1,))
        h0 = sphere(a, (HALF, HALF), HALF)
        verdict = under_spheres(h0, [sphere(a, (0, 0), 1)])
        self.assertEqual(verdict.status, WITNESS)
        self.assertGreater(h0.height_sq_at(verdict.point), 0)
        self.assertGreater(h0.height_sq_at(verdict.point), sphere(a, (0, 0), 1).height_sq_at(verdict.point))

    def test_lone_bubble_has_a_witness(self):
        a = presets.algebra_of(())
        h0 = sphere(a, (0,), 1)
        verdict = under_spheres(h0, [sphere(a, (2,), 1)])
        self.assertEqual(verdict.status, WITNESS)
        self.assertGreater(h0.height_sq_at(verdict.point), 0)


class GridOracleTests(SimpleTestCase):
    def setUp(self):
        self.gaussian = presets.algebra_of((1,))
        self.h0 = sphere(self.gaussian, (HALF, HALF), HALF)

    def test_half_bubble_under_four_corners(self):
        cover = [sphere(self.gaussian, c, 1) for c in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        self.assertEqual(grid_verdict(self.h0, cover).status, DOMINATED)

    def test_half_bubble_with_one_neighbour(self):
        verdict = grid_verdict(self.h0, [sphere(self.gaussian, (0, 0), 1)])
        self.assertEqual(verdict.status, WITNESS)
        x = [Fraction(t) for t in verdict.point]
        self.assertGreater(self.h0.height_sq_at(x), sphere(self.gaussian, (0, 0), 1).height_sq_at(x))

    def test_region_restricts_the_scan(self):
        left = Polytope.from_inequalities([((1, 0), 0), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
        verdict = grid_verdict(self.h0, [sphere(self.gaussian, (0, 0), 1)], left)
        self.assertEqual(verdict.status, DOMINATED)

    def test_gaussian_domain_agrees_with_the_grid(self):
        self.assertEqual(grid_disagreements(facet_bubbles(presets.gaussian(), 2)), [])


class PolytopeTests(SimpleTestCase):
    def square(self):
        return Polytope.from_inequalities([((1, 0), HALF), ((-1, 0), HALF), ((0, 1), HALF), ((0, -1), HALF)])

    def test_contains(self):
        square = self.square()
        self.assertTrue(square.contains([HALF, 0]))
        self.assertFalse(square.contains([HALF, 0], strict=True))
        self.assertFalse(square.contains([1, 0]))

    def test_bounding_box(self):
        self.assertEqual(self.square().bounding_box(), ([-HALF, -HALF], [HALF, HALF]))

    def test_redundant_walls_are_dropped(self):
        rows = [((1, 0), HALF), ((-1, 0), HALF), ((0, 1), HALF), ((0, -1), HALF), ((1, 1), 2)]
        self.assertEqual(len(Polytope.from_inequalities(rows).without_redundant()), 4)

    def test_duplicate_walls(self):
        rows = [((1, 0), HALF), ((2, 0), 1), ((-1, 0), HALF)]
        self.assertEqual(len(Polytope.from_inequalities(rows)), 2)

    def test_empty_interior(self):
        empty = Polytope.from_inequalities([((1,), 0), ((-1,), -1)])
        self.assertIsNone(empty.interior_point())

    def test_json(self):
        square = self.square()
        self.assertEqual(Polytope.from_json(square.to_json()).halfspaces, square.halfspaces)
        with self.assertRaises(ParseError):
            Polytope.from_json({})

    def test_sqrt_upper(self):
        value = sqrt_upper(2)
        self.assertGreaterEqual(value * value, 2)
        self.assertLess((value - Fraction(1, 2 ** 24)) ** 2, 2)


class CuspTests(SimpleTestCase):
    def test_bubble_of_a_pair(self):
        a = presets.algebra_of((1,))
        bubble = Bubble(a.one(), 1 + a.gen(1))
        self.assertEqual(bubble.center, (HALF, -HALF))
        self.assertEqual(bubble.radius_sq, HALF)

    def test_resolve_gaussian_cusp(self):
        resolution = resolve_cusp(presets.gaussian(), (HALF, HALF))
        self.assertEqual(resolution.index, 2)
        self.assertEqual(resolution.bubble.radius_sq, HALF)

    def test_integral_cusp(self):
        resolution = resolve_cusp(presets.gaussian(), (1, 0))
        self.assertEqual(resolution.bubble.radius_sq, 1)
        self.assertEqual(resolution.index, 1)

    def test_singular_cusp(self):
        resolution = resolve_cusp(presets.clifford_111(), (HALF,) * 4)
        self.assertIsNone(resolution.bubble)

    def test_bound_zero(self):
        self.assertEqual(candidate_cusps(presets.gaussian(), 0), [])

    def test_sqrt_minus_19_half_bubbles(self):
        order = presets.sqrt_minus_19()
        keys = {b.key for b in candidate_cusps(order, 4, region=presets.triangle_19())}
        self.assertIn(((QUARTER, QUARTER), QUARTER), keys)
        self.assertIn(((-QUARTER, QUARTER), QUARTER), keys)

    def test_deep_hole_cover(self):
        self.assertTrue(deephole_cover_check(3, HALF, QUARTER))
        self.assertTrue(deephole_cover_check(4, 1, 0))
        self.assertTrue(deephole_cover_check(4, HALF, HALF))
        self.assertTrue(deephole_cover_check(5, 1, QUARTER))
        with self.assertRaises(ParseError):
            deephole_cover_check(3, HALF, HALF)


class GaussianDomainTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.order = presets.gaussian()
        cls.domain = facet_bubbles(cls.order, 2)

    def test_single_bubble(self):
        self.assertEqual([b.key for b in self.domain.representatives], [((0, 0), 1)])
        self.assertTrue(all(b.radius_sq == 1 for b in self.domain.bubbles))
        self.assertEqual(self.domain.singular, [])

    def test_crossing_matrix_of_the_unit_bubble(self):
        [rep] = self.domain.representatives
        self.assertTrue(rep.tidy)
        self.assertEqual(rep.crossing.apply(HPoint(self.order.algebra.zero())), HPoint.infinity(self.order.algebra))

    def test_one_cusp_class(self):
        self.assertEqual(len(self.domain.cusp_classes), 1)

    def test_every_facet_has_a_witness(self):
        for bubble in self.domain.bubbles:
            self.assertGreater(bubble.height_sq_at(self.domain.witnesses[bubble]), 0)

    def test_cell_is_covered(self):
        found = coverage(self.domain, count=32)
        self.assertGreater(found.samples, 0)
        self.assertEqual(found.uncovered, [])

    def test_cell_reduction(self):
        stabilizer = InftyStabilizer(self.order)
        move = stabilizer.reduce((Fraction(7, 3), Fraction(-5, 4)), self.domain.cell)
        self.assertTrue(self.domain.cell.contains(move.image))

    def test_reduce_point(self):
        a = self.order.algebra
        start = HPoint(a.paravector([Fraction(1, 3), Fraction(1, 5)]), Fraction(1, 100))
        reduction = reduce_point(self.domain, start)
        self.assertEqual(reduction.element.apply(start), reduction.point)
        self.assertGreaterEqual(reduction.point.distance_sq_to(a.zero()), 1)
        self.assertEqual(reduction.heights, sorted(reduction.heights))

    def test_json(self):
        payload = self.domain.to_json()
        self.assertEqual(payload['verified_to_bound'], 2)
        self.assertEqual(len(payload['cusp_classes']), 1)


class PresetDomainTests(SimpleTestCase):
    def test_infty_domain_of_gaussian(self):
        cell = infty_domain(presets.gaussian())
        self.assertIsNotNone(cell.interior_point())
        p = [Fraction(1, 5), Fraction(1, 7)]
        self.assertNotEqual(cell.contains(p, strict=True), cell.contains([-x for x in p], strict=True))

    def test_hurwitz_is_the_unit_bubble(self):
        cell, region = presets.preset_region('hurwitz')
        domain = facet_bubbles(presets.hurwitz(), cell=cell, region=region)
        self.assertEqual([b.key for b in domain.representatives], [((0, 0, 0), 1)])

    def test_sqrt_minus_19_has_five_bubbles(self):
        cell, region = presets.preset_region('sqrt-19')
        domain = facet_bubbles(presets.sqrt_minus_19(), cell=cell, region=region)
        self.assertEqual({b.key for b in domain.bubbles}, {
            ((0, 0), 1),
            ((HALF, HALF), 1),
            ((-HALF, HALF), 1),
            ((QUARTER, QUARTER), QUARTER),
            ((-QUARTER, QUARTER), QUARTER),
        })

    def test_eisenstein_is_the_unit_bubble(self):
        cell, region = presets.preset_region('eisenstein')
        domain = facet_bubbles(presets.eisenstein(), 2, cell=cell, region=region)
        self.assertEqual([b.key for b in domain.representatives], [((0, 0), 1)])

    @skipUnless(settings.BIANCHI_RUN_SLOW_CHECKS, 'slow')
    def test_clifford_111_has_two_cusp_classes(self):
        classes = cusp_classes(presets.clifford_111(), 2)
        self.assertEqual([c.kind for c in classes], ['infinity', 'singular'])
