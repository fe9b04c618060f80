"""
Named acceptance suites. Fast suites run on every ``accept``; slow suites
(rank-16 orders, the oddball domain, the index-120 computation, the E8 code
order) need ``--slow``.
"""
import logging
import random
import time
from collections import namedtuple
from fractions import Fraction

from django.conf import settings

from . import presets
from .algebra import CliffordAlgebra, CliffordElement, DiagonalForm
from .bott import PauliFrame, psi_checks, random_member
from .codes import BinaryCode, extended_hamming_code, half_lattice, order_from_code, weight_four_words
from .domain import deephole_cover_check, facet_bubbles, grid_disagreements, reduce_point, resolve_cusp
from .exceptions import BianchiError
from .mobius import (
    HPoint, SL2Element, height_law_holds, inversion, magic_formula_residual, rotation, translation,
)
from .orders import code_of, maximal_orders
from .presentation import (
    FINITE_ORDER, coset_reps_from_orbits, evaluate_word, gamma0_key, gamma0_member, gamma0_orbit_data,
    generators, psl_order, relations, subgroup_index, suborder_key, suborder_member, suborder_orbit_data,
)
from .units import unit_group

logger = logging.getLogger(__name__)

SuiteResult = namedtuple('SuiteResult', ['suite', 'check', 'expected', 'found', 'passed', 'seconds'])
Check = namedtuple('Check', ['name', 'expected', 'compute', 'accept'])


def check(name, expected, compute, accept=None):
    return Check(name, expected, compute, accept)


def _rng():
    return random.Random(getattr(settings, 'BIANCHI_RANDOM_SEED', 0))


def _random_element(algebra, rng, terms=4):
    masks = rng.sample(range(algebra.rank), min(terms, algebra.rank))
    return CliffordElement(algebra, {m: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for m in masks})


def _random_paravector(algebra, rng):
    return algebra.paravector([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(algebra.arity + 1)])


def _preset_domain(name, bound=None):
    cell, region = presets.preset_region(name)
    return facet_bubbles(presets.preset_order(name), bound, cell=cell, region=region)


def _unit_count(name):
    return unit_group(presets.preset_order(name)).order


def _maximal_count(name):
    return len(maximal_orders(presets.preset_order(name)))


# trivial

def trivial_checks():
    algebra = presets.algebra_of(())
    s = inversion(algebra)
    return [
        check('S^2 = -I', True, lambda: (s ** 2) == -SL2Element.identity(algebra)),
        check('units of Z', 2, lambda: _unit_count('integers')),
        check('units of Z[i]', 4, lambda: _unit_count('gaussian')),
    ]


# properties

def involution_laws(samples=200):
    rng = _rng()
    algebra = CliffordAlgebra(DiagonalForm((1, 1, 3)))
    for _ in range(samples):
        x, y = _random_element(algebra, rng), _random_element(algebra, rng)
        if (x * y).transpose() != y.transpose() * x.transpose():
            return False
        if (x * y).parity() != x.parity() * y.parity():
            return False
        if (x * y).conjugate() != y.conjugate() * x.conjugate():
            return False
    return True


def norm_multiplicativity(samples=200):
    rng = _rng()
    algebra = CliffordAlgebra(DiagonalForm((1, 2, 3)))
    for _ in range(samples):
        x = _random_paravector(algebra, rng) * _random_paravector(algebra, rng)
        y = _random_paravector(algebra, rng)
        if (x * y).nrd() != x.nrd() * y.nrd():
            return False
    return True


def magic_formula(samples=500):
    rng = _rng()
    algebra = CliffordAlgebra(DiagonalForm((1, 1)))
    tested = 0
    while tested < samples:
        g = random_member(algebra, rng, length=rng.randint(1, 4))
        x, y = _random_paravector(algebra, rng), _random_paravector(algebra, rng)
        if not (g.c * x + g.d).nrd() or not (y * g.c.transpose() + g.d.transpose()).nrd():
            continue
        if magic_formula_residual(g, x, y):
            return False
        tested += 1
    return True


def action_laws(samples=100):
    """(gh)P = g(hP) and the height law on random members and interior points."""
    rng = _rng()
    algebra = CliffordAlgebra(DiagonalForm((1, 1)))
    for _ in range(samples):
        g, h = random_member(algebra, rng, 2), random_member(algebra, rng, 2)
        point = HPoint(_random_paravector(algebra, rng), Fraction(rng.randint(1, 9), rng.randint(1, 5)))
        if (g * h).apply(point) != g.apply(h.apply(point)):
            return False
        if not height_law_holds(g, point):
            return False
    return True


def height_maximality(samples=20, length=6):
    """A point above the domain is the highest of its orbit: reducing g(P) returns to P's height."""
    rng = _rng()
    domain = _preset_domain('gaussian', 2)
    gens = generators(domain)
    letters = gens.letters()
    algebra = domain.order.algebra
    for _ in range(samples):
        x = domain.cell.sample(1, rng)[0]
        point = HPoint(algebra.paravector(x), 2)
        word = [rng.choice(letters)[:2] for _ in range(rng.randint(1, length))]
        image = evaluate_word(gens, word).apply(point)
        if reduce_point(domain, image).point.height_sq != point.height_sq:
            return False
    return True


def bott_passes(arities, samples=None):
    for coefficients in arities:
        algebra = CliffordAlgebra(DiagonalForm(coefficients))
        if not all(c.passed for c in psi_checks(algebra, samples)):
            return False
    return True


def pauli_identities(forms):
    return all(PauliFrame(CliffordAlgebra(DiagonalForm(f))).check() for f in forms)


GRID_PRESETS = ('integers', 'gaussian', 'eisenstein', 'sqrt-19', 'hurwitz')


def grid_oracle():
    """Disagreements between the exact domination test and the 1/32 grid scan, summed over presets."""
    return sum(len(grid_disagreements(_preset_domain(name))) for name in GRID_PRESETS)


def property_checks():
    return [
        check('domination agrees with the 1/32 grid', 0, grid_oracle),
        check('involution laws', True, involution_laws),
        check('monoid norm multiplicativity', True, norm_multiplicativity),
        check('magic formula residual, 500 triples', True, magic_formula),
        check('action associativity and height law', True, action_laws),
        check('height maximality on Gaussian orbits', True, height_maximality),
        check('deep hole cover, n = 3', True, lambda: deephole_cover_check(3, Fraction(1, 2), Fraction(1, 4))),
        check('Bott identities, arity <= 2', True, lambda: bott_passes([(), (1,), (1, 3)])),
        check('Pauli determinant = Q(y)', True, lambda: pauli_identities([(), (1,), (1, 1), (1, 1, 3)])),
    ]


# presentations and indices

def _psl2z():
    domain = _preset_domain('integers', 2)
    gens = generators(domain)
    return gens, relations(gens)


def psl2z_relation_shapes():
    _, rels = _psl2z()
    return sorted((len(r.word), r.power) for r in rels if r.kind == FINITE_ORDER)


def gamma0_by_discovery(p):
    gens, rels = _psl2z()
    return subgroup_index(gens, gamma0_key(p), rels, member=gamma0_member(p)).index


def gamma0_by_orbits(p):
    algebra = presets.algebra_of(())
    return len(coset_reps_from_orbits(gamma0_orbit_data(p, algebra), gamma0_member(p)))


def eisenstein_index():
    gens = generators(_preset_domain('eisenstein'))
    suborder = presets.preset_order('sqrt-3')
    return subgroup_index(gens, suborder_key(suborder), relations(gens), member=suborder_member(suborder)).index


def gaussian_relation_orders():
    """PSL orders of tau1 gamma3, tau1 pi_i, tau1 S, gamma3 S and pi_i S over Z[i]."""
    algebra = presets.algebra_of((1,))
    i = algebra.gen(1)
    tau = translation(algebra.one())
    gamma = SL2Element(i, -1, 0, -i, algebra=algebra)
    pi = rotation(i)
    s = inversion(algebra)
    return [psl_order(m)[0] for m in (tau * gamma, tau * pi, tau * s, gamma * s, pi * s)]


def presentation_checks():
    return [
        check('PSL2(Z) relations S^2, (tau S)^3', [(1, 2), (2, 3)], psl2z_relation_shapes),
        check('PSL2(Z[i]) relation orders', [2, 2, 3, 3, 2], gaussian_relation_orders),
        check('[PSL2(Z) : Gamma0(5)] by discovery', 6, lambda: gamma0_by_discovery(5)),
        check('[PSL2(Z) : Gamma0(5)] by orbits', 6, lambda: gamma0_by_orbits(5)),
        check('[SL2(Z[zeta3]) : SL2(Z[sqrt-3])]', 10, eisenstein_index),
    ]


SINGULAR_111 = (Fraction(1, 2),) * 4


def o4_index():
    """(total, per-orbit sizes) of SL2(Z[i1,i2,i3]) in SL2(O4) through the cusps infinity and zeta."""
    order = presets.preset_order('o4')
    suborder = presets.preset_order('clifford-111')
    if resolve_cusp(suborder, SINGULAR_111).bubble is not None:
        raise BianchiError("zeta is expected to be a singular cusp of Z[i1,i2,i3]")
    data = suborder_orbit_data(order, suborder, [SINGULAR_111])
    reps = coset_reps_from_orbits(data, suborder_member(suborder))
    return len(reps), [len(c) for _, c in data]


def b113_relations():
    """(S tau1)^3, (S pi_alpha)^6 and (S pi_i1)^2 are +-I for alpha = (-i12 + i12 a3)/2."""
    algebra = presets.algebra_of((1, 1, 3))
    alpha = (-algebra.basis_element(0b011) + algebra.basis_element(0b111)) / 2
    if not presets.preset_order('b113').contains(alpha):
        raise BianchiError(f"{alpha} is not in B(-1,-1,-3)_0")
    s = inversion(algebra)
    words = {
        'S tau1': (translation(algebra.one()), 3),
        'S pi_alpha': (rotation(alpha), 6),
        'S pi_i1': (rotation(algebra.gen(1)), 2),
    }
    return {name: ((s * m) ** power).is_projective_identity() for name, (m, power) in words.items()}


def slow_presentation_checks():
    return [
        check('[SL2(O4) : SL2(Z[i1,i2,i3])] = 72 + 48', (120, [72, 48]), o4_index),
        check('B(-1,-1,-3)_0 relations (S tau1)^3, (S pi_alpha)^6, (S pi_i1)^2',
              {'S tau1': True, 'S pi_alpha': True, 'S pi_i1': True}, b113_relations),
    ]


# orders, units, domains, codes

def order_checks():
    return [
        check('maximal orders over Lipschitz', 1, lambda: _maximal_count('lipschitz')),
        check('the maximal order over Lipschitz is Hurwitz', True,
              lambda: maximal_orders(presets.preset_order('lipschitz'))[0] == presets.preset_order('hurwitz')),
        check('units of Hurwitz', 24, lambda: _unit_count('hurwitz')),
        check('units of A(-1,-1,-3)', 24, lambda: _unit_count('a113')),
        check('units of B(-1,-1,-3)_0 (12 or 24)', (12, 24), lambda: _unit_count('b113'),
              accept=lambda expected, found: found in expected),
        check('code of O4', BinaryCode.from_text('1111'), lambda: code_of(presets.preset_order('o4'))),
    ]


def slow_order_checks():
    return [
        check('maximal orders over Z[i1,i2,i3]', 1, lambda: _maximal_count('clifford-111')),
        check('maximal orders over Z[i1,i2,a3]', 4, lambda: _maximal_count('clifford-113')),
        check('maximal orders over Z[i1,i2,i3,i4]', 6, lambda: _maximal_count('clifford-1111')),
        check('units of O4', 576, lambda: _unit_count('o4')),
        check('units of O5,0', 1152, lambda: _unit_count('o5-code')),
        check('units of O5,!', 1920, lambda: _unit_count('o5-oddball')),
    ]


def _representative_keys(name, bound=None):
    return sorted((b.center, b.radius_sq) for b in _preset_domain(name, bound).representatives)


def _bubble_keys(name):
    return {b.key for b in _preset_domain(name).bubbles}


ORIGIN_2 = ((Fraction(0),) * 3, Fraction(1))
HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
SQRT_19_BUBBLES = {
    ((Fraction(0), Fraction(0)), Fraction(1)),
    ((HALF, HALF), Fraction(1)),
    ((-HALF, HALF), Fraction(1)),
    ((QUARTER, QUARTER), QUARTER),
    ((-QUARTER, QUARTER), QUARTER),
}


def domain_checks():
    return [
        check('Z[i] domain is B(0)', [((Fraction(0),) * 2, Fraction(1))], lambda: _representative_keys('gaussian')),
        check('Z[omega] domain is B(0)', [((Fraction(0),) * 2, Fraction(1))],
              lambda: _representative_keys('eisenstein')),
        check('Hurwitz domain is B(0)', [ORIGIN_2], lambda: _representative_keys('hurwitz')),
        check('sqrt-19 bubbles B(0), B(omega), B(omega - 1), B(omega/2), B((omega - 1)/2)', SQRT_19_BUBBLES,
              lambda: _bubble_keys('sqrt-19')),
    ]


def slow_domain_checks():
    origin = ((Fraction(0),) * 5, Fraction(1))
    sigma_halves = {((HALF,) * 4 + (sign * HALF,), QUARTER) for sign in (1, -1)}
    return [
        check('B(-1,-1,-3)_0 domain is B(0)', [((Fraction(0),) * 4, Fraction(1))],
              lambda: _representative_keys('b113')),
        check('O5,! facets are B(0) and B(sigma/2 +- i4/2)', {origin} | sigma_halves,
              lambda: _bubble_keys('o5-oddball')),
    ]


def five_o5_codes():
    return sorted(code_of(presets.o5_code(''.join(map(str, w)))).words[0] for w in weight_four_words(5))


def e8_order():
    built = order_from_code(extended_hamming_code(), stretch=True)
    if built.order is None:
        return False
    return built.order.vectors_of().same_points(half_lattice(extended_hamming_code()))


def slow_code_checks():
    return [
        check('five O5 orders from the weight-4 words', sorted(weight_four_words(5)), five_o5_codes),
        check('order of H(8,4) has Vec = E8 / 2', True, e8_order),
        check('Bott identities, arity 3 and 4', True, lambda: bott_passes([(1, 1, 1), (1, 1, 1, 1)])),
    ]


SUITES = {
    'trivial': (trivial_checks, False),
    'properties': (property_checks, False),
    'presentation': (presentation_checks, False),
    'orders': (order_checks, False),
    'domain': (domain_checks, False),
    'presentation-slow': (slow_presentation_checks, True),
    'orders-slow': (slow_order_checks, True),
    'domain-slow': (slow_domain_checks, True),
    'codes-slow': (slow_code_checks, True),
}


def suite_names(slow=False):
    return [name for name, (_, is_slow) in SUITES.items() if slow or not is_slow]


def run_check(suite, item):
    start = time.perf_counter()
    try:
        found = item.compute()
        passed = item.accept(item.expected, found) if item.accept else found == item.expected
    except BianchiError as exc:
        logger.error(f"{suite}: {item.name} raised {exc}")
        found, passed = f"error: {exc}", False
    seconds = time.perf_counter() - start
    level = logging.INFO if passed else logging.ERROR
    logger.log(level, f"{suite}: {item.name} -> {found} ({'pass' if passed else 'FAIL'}, {seconds:.1f}s)")
    return SuiteResult(suite, item.name, str(item.expected), str(found), bool(passed), seconds)


def run_suites(names=None, slow=False):
    names = names or suite_names(slow)
    results = []
    for name in names:
        if name not in SUITES:
            raise BianchiError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}")
        build, _ = SUITES[name]
        logger.info(f"Running suite {name}")
        results += [run_check(name, item) for item in build()]
    return results
