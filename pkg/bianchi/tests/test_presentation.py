from fractions import Fraction
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase

from bianchi import presets
from bianchi.acceptance import b113_relations, gaussian_relation_orders
from bianchi.domain import facet_bubbles
from bianchi.exceptions import BianchiError
from bianchi.mobius import SL2Element, inversion, rotation, translation
from bianchi.presentation import (
    COMMUTATOR,
    FINITE_ORDER,
    INVERSION,
    SWITCH,
    TRANSLATION,
    check_generators,
    coset_reps_from_orbits,
    cusp_connectors,
    facet_pairing,
    gamma0_key,
    gamma0_member,
    gamma0_orbit_data,
    generators,
    infty_generators,
    is_involution,
    psl_order,
    relation_holds,
    relations,
    stabilizer_cosets,
    subgroup_index,
    suborder_key,
    suborder_member,
    suborder_orbit_data,
    verify_inequivalent,
    word_text,
)

HALF = Fraction(1, 2)


class ModularGroupTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.domain = facet_bubbles(presets.integers(), 2)
        cls.gens = generators(cls.domain)
        cls.relations = relations(cls.gens)

    def test_generators(self):
        self.assertEqual(sorted(self.gens.kinds.values()), [INVERSION, TRANSLATION])
        self.assertIn('S', self.gens.labels)

    def test_relation_shapes(self):
        shapes = sorted((len(r.word), r.power) for r in self.relations if r.kind == FINITE_ORDER)
        self.assertEqual(shapes, [(1, 2), (2, 3)])
        self.assertTrue(all(relation_holds(self.gens, r) for r in self.relations))

    def test_inversion_is_paired_with_itself(self):
        pairing = facet_pairing(self.gens)
        self.assertEqual(pairing, {'S': 'S'})
        self.assertTrue(is_involution(pairing))
        self.assertIn(SWITCH, {r.kind for r in self.relations})

    def test_crossing_generators_check_out(self):
        self.assertTrue(all(check_generators(self.domain).values()))

    def test_gamma0_by_discovery(self):
        certificate = subgroup_index(self.gens, gamma0_key(5), self.relations, member=gamma0_member(5))
        self.assertEqual(certificate.index, 6)
        self.assertTrue(certificate.certified)

    def test_gamma0_by_orbits(self):
        algebra = presets.algebra_of(())
        reps = coset_reps_from_orbits(gamma0_orbit_data(5, algebra), gamma0_member(5))
        self.assertEqual(len(reps), 6)

    def test_stabilizer_cosets_at_zero(self):
        algebra = presets.algebra_of(())
        reps = stabilizer_cosets(infty_generators(presets.integers()), gamma0_key(5), inversion(algebra))
        self.assertEqual(len(reps), 5)

    def test_json(self):
        payload = self.gens.to_json()
        self.assertEqual({g['label'] for g in payload}, set(self.gens.labels))


class WordTests(SimpleTestCase):
    def setUp(self):
        self.algebra = presets.algebra_of(())

    def test_orders(self):
        s = inversion(self.algebra)
        self.assertEqual(psl_order(s), (2, -1))
        self.assertEqual(psl_order(translation(self.algebra.one()) * s), (3, 1))
        self.assertIsNone(psl_order(translation(self.algebra.one())))

    def test_word_text(self):
        self.assertEqual(word_text([('S', 1), ('T', -1)]), 'S T^-1')

    def test_gamma0_key(self):
        key = gamma0_key(5)
        self.assertEqual(key(SL2Element.identity(self.algebra)), (0, 1))
        self.assertEqual(key(inversion(self.algebra)), (1, 0))

    def test_equivalent_representatives_are_refused(self):
        one = SL2Element.identity(self.algebra)
        with self.assertRaises(BianchiError):
            verify_inequivalent([one, one], gamma0_member(5))


class GaussianRelationTests(SimpleTestCase):
    def setUp(self):
        self.algebra = presets.algebra_of((1,))
        self.i = self.algebra.gen(1)
        self.s = inversion(self.algebra)
        self.tau = translation(self.algebra.one())

    def test_relation_orders(self):
        self.assertEqual(gaussian_relation_orders(), [2, 2, 3, 3, 2])

    def test_gamma3_is_a_member(self):
        gamma = SL2Element(self.i, -1, 0, -self.i, algebra=self.algebra)
        self.assertTrue(gamma.check().ok)
        self.assertEqual(psl_order(gamma * self.s), (3, -1))

    def test_rotation_by_i(self):
        self.assertEqual(psl_order(rotation(self.i) * self.s), (2, -1))
        self.assertEqual(psl_order(self.tau * rotation(self.i)), (2, -1))

    def test_translations_commute(self):
        cell, region = presets.preset_region('gaussian')
        gens = generators(facet_bubbles(presets.gaussian(), 2, cell=cell, region=region))
        rels = relations(gens)
        commutators = [r for r in rels if r.kind == COMMUTATOR]
        self.assertEqual(len(commutators), 1)
        self.assertTrue(all(relation_holds(gens, r) for r in commutators))


class B113RelationTests(SimpleTestCase):
    def test_s_tau_s_pi_relations(self):
        self.assertEqual(b113_relations(), {'S tau1': True, 'S pi_alpha': True, 'S pi_i1': True})


class SuborderIndexTests(SimpleTestCase):
    def test_eisenstein_over_sqrt_minus_3(self):
        cell, region = presets.preset_region('eisenstein')
        gens = generators(facet_bubbles(presets.eisenstein(), cell=cell, region=region))
        suborder = presets.sqrt_minus_3()
        certificate = subgroup_index(gens, suborder_key(suborder), relations(gens), member=suborder_member(suborder))
        self.assertEqual(certificate.index, 10)
        self.assertIsNotNone(certificate.enumeration)

    def test_singular_connector(self):
        with self.assertRaises(BianchiError):
            cusp_connectors(presets.clifford_111(), [(HALF,) * 4])

    @skipUnless(settings.BIANCHI_RUN_SLOW_CHECKS, 'slow')
    def test_o4_over_the_clifford_order(self):
        order, suborder = presets.o4(), presets.clifford_111()
        data = suborder_orbit_data(order, suborder, [(HALF,) * 4])
        self.assertEqual([len(reps) for _, reps in data], [72, 48])
        self.assertEqual(len(coset_reps_from_orbits(data, suborder_member(suborder))), 120)
