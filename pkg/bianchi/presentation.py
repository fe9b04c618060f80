"""
Generators and relations of PSL2(O) read off a fundamental domain, and the
subgroup-index machinery.
"""
import logging
from collections import deque, namedtuple
from itertools import product

from django.conf import settings

from .cosets import coset_enumeration, word_letters
from .domain import crossing_matrix, resolve_cusp
from .exceptions import BianchiError, ReductionError
from . import matrices
from .mobius import HPoint, SL2Element, inversion, rotation, translation
from .units import unit_group

logger = logging.getLogger(__name__)

TRANSLATION = 'translation'
ROTATION = 'rotation'
INVERSION = 'inversion'
TIDY = 'tidy'
CROSSING = 'crossing'

SWITCH = 'switch'
FINITE_ORDER = 'finite-order'
COMMUTATOR = 'commutator'

Relation = namedtuple('Relation', ['word', 'power', 'sign', 'kind'])
CosetDiscovery = namedtuple('CosetDiscovery', ['representatives', 'words', 'subgroup_words', 'complete'])
IndexCertificate = namedtuple('IndexCertificate', ['index', 'lower', 'upper', 'certified', 'representatives',
                                                   'subgroup_words', 'enumeration'])


class GeneratorSet:
    """
    Labeled generators of SL2(O) with the facet each crossing generator belongs to.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.labels = []
        self.elements = {}
        self.kinds = {}
        self.facets = {}

    def add(self, label, element, kind, facet=None):
        if label in self.elements:
            raise BianchiError(f"Duplicate generator label {label}")
        self.labels.append(label)
        self.elements[label] = element
        self.kinds[label] = kind
        if facet is not None:
            self.facets[label] = facet
        return label

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, label):
        return self.elements[label]

    def letters(self):
        """(label, exponent, matrix) for every generator and its inverse."""
        found = []
        for label in self.labels:
            element = self.elements[label]
            found.append((label, 1, element))
            found.append((label, -1, element.inverse()))
        return found

    def to_json(self):
        return [
            {'label': label, 'kind': self.kinds[label], 'matrix': self.elements[label].to_json(),
             'facet': None if label not in self.facets else [str(x) for x in self.facets[label].center]}
            for label in self.labels
        ]


def evaluate_word(gens, word):
    """The product of (label, exponent) pairs, left to right."""
    result = SL2Element.identity(gens.algebra)
    for label, exponent in word:
        result = result * (gens[label] ** exponent)
    return result


def psl_order(matrix, bound=12):
    """(n, sign) with matrix^n = sign * I for the least n <= bound, else None."""
    power = matrix
    for n in range(1, bound + 1):
        if power.is_identity():
            return n, 1
        if (-power).is_identity():
            return n, -1
        power = power * matrix
    return None


def word_text(word):
    return ' '.join(label if exponent == 1 else f"{label}^{exponent}" for label, exponent in word)


def infty_generators(order, units=None):
    """Translations by a basis of Vec(O), then rotations by the unit generators other than +-1."""
    algebra = order.algebra
    units = units or unit_group(order)
    gens = GeneratorSet(algebra)
    for row in reversed(order.vectors_of().canonical_basis()):
        v = algebra.paravector(row)
        gens.add(f"tau[{v}]", translation(v), TRANSLATION)
    for t in units.generators:
        if t == 1 or t == -1:
            continue
        gens.add(f"pi[{t}]", rotation(t), ROTATION)
    return gens


def generators(domain):
    """
    The generators of Gamma_infty and, for each facet orbit, the crossing g
    followed by the element of Gamma_infty that brings g(infinity) back into
    the cell.
    """
    order = domain.order
    algebra = order.algebra
    stabilizer = domain.stabilizer
    gens = infty_generators(order, stabilizer.units)
    s_key = inversion(algebra).projective_key()
    for rep in domain.representatives:
        if rep.crossing is None:
            logger.warning(f"Facet orbit of {rep!r} has no crossing matrix and contributes no generator")
            continue
        g = rep.crossing
        q = g.apply(HPoint.infinity(algebra))
        move = stabilizer.reduce(q.coords(), domain.cell)
        element = stabilizer.element(move) * g
        if element.projective_key() == s_key:
            label, kind = 'S', INVERSION
        elif rep.tidy:
            label, kind = f"M[{rep.center_element()}]", TIDY
        else:
            label, kind = f"g[{rep.center_element()}]", CROSSING
        gens.add(label, element, kind, facet=rep)
    logger.info(f"{len(gens)} generators: {', '.join(gens.labels)}")
    return gens


def check_generator(domain, bubble, point):
    """
    The crossing of ``bubble`` sends a point just above it (over ``point``, where
    the bubble is highest) strictly under some bubble of the domain.
    """
    algebra = domain.order.algebra
    height_sq = bubble.height_sq_at(point)
    if height_sq <= 0 or bubble.crossing is None:
        return False
    above = HPoint(algebra.paravector(point), height_sq + height_sq / 64)
    image = bubble.crossing.apply(above)
    try:
        move = domain.stabilizer.reduce(image.coords(), domain.cell)
    except ReductionError:
        return False
    moved = HPoint(algebra.paravector(move.image), image.height_sq)
    return any(b.covers(moved) for b in domain.cover_near(domain.cell))


def check_generators(domain):
    """{bubble center: result of check_generator} for the facet bubbles over the region."""
    return {
        bubble.center: check_generator(domain, bubble, domain.witnesses[bubble])
        for bubble in domain.bubbles if bubble in domain.witnesses
    }


def facet_pairing(gens):
    """label -> label with gamma gamma' = +-I among the facet generators."""
    facet_labels = [label for label in gens.labels if label in gens.facets]
    pairing = {}
    for label in facet_labels:
        inverse_key = gens[label].inverse().projective_key()
        partner = next((other for other in facet_labels if gens[other].projective_key() == inverse_key), None)
        if partner is not None:
            pairing[label] = partner
    return pairing


def is_involution(pairing):
    return all(pairing.get(partner) == label for label, partner in pairing.items())


def _canonical(word):
    """Least cyclic rotation, so conjugate words are searched once."""
    return min(tuple(word[k:] + word[:k]) for k in range(len(word)))


def _is_power(word):
    n = len(word)
    return any(n % k == 0 and word == word[:k] * (n // k) for k in range(1, n))


def relations(gens, order_bound=12, length=3):
    """
    Switch relations of the facet pairing, commutators of the translations,
    then finite-order relations: each cyclically reduced positive word of
    length <= ``length`` whose matrix has finite order in PSL2, certified by
    an exact power equal to +-I.
    """
    found = []
    seen = set()
    pairing = facet_pairing(gens)
    for label, partner in pairing.items():
        word = ((label, 1), (partner, 1))
        key = _canonical(list(word))
        if key in seen:
            continue
        seen.add(key)
        product_matrix = evaluate_word(gens, word)
        sign = 1 if product_matrix.is_identity() else -1
        found.append(Relation(word, 1, sign, SWITCH))
    translations = [label for label in gens.labels if gens.kinds[label] == TRANSLATION]
    for k, first in enumerate(translations):
        for second in translations[k + 1:]:
            word = ((first, 1), (second, 1), (first, -1), (second, -1))
            found.append(Relation(word, 1, 1, COMMUTATOR))
    for size in range(1, length + 1):
        for labels in product(gens.labels, repeat=size):
            word = [(label, 1) for label in labels]
            if _is_power(word):
                continue
            key = _canonical(word)
            if key != tuple(word) or key in seen:
                continue
            seen.add(key)
            result = psl_order(evaluate_word(gens, word), order_bound)
            if result is None:
                continue
            power, sign = result
            found.append(Relation(tuple(word), power, sign, FINITE_ORDER))
    logger.info(f"{len(found)} relations up to word length {length}")
    return found


def relation_holds(gens, relation):
    """word^power = +-I."""
    value = evaluate_word(gens, list(relation.word) * relation.power)
    return value.is_projective_identity()


def relator_letters(gens, relation):
    return word_letters(list(relation.word) * relation.power, gens.labels)


# coset keys

def suborder_key(suborder):
    """
    Key of the right coset SL2(R) g: the left R-module spanned by the rows of g,
    in Hermite normal form.
    """
    rank = suborder.rank

    def key(g):
        rows = []
        for r in suborder.elements:
            rows.append((r * g.a).coords() + (r * g.b).coords())
            rows.append((r * g.c).coords() + (r * g.d).coords())
        return tuple(tuple(row) for row in matrices.hnf_fraction_rows(rows, 2 * rank))

    return key


def gamma0_key(p):
    """Key of the right coset Gamma_0(p) g: the bottom row of g in P^1(F_p)."""

    def key(g):
        c = int(g.c.scalar_part()) % p
        d = int(g.d.scalar_part()) % p
        if c:
            return (1, d * pow(c, -1, p) % p)
        return (0, 1)

    return key


def gamma0_member(p):
    def member(g):
        return int(g.c.scalar_part()) % p == 0
    return member


def suborder_member(suborder):
    def member(g):
        return all(suborder.contains(x) for x in g.entries())
    return member


def discover_cosets(gens, key, cap=None):
    """
    Breadth-first search of the right cosets H g reachable by the generators.
    Each repeated key yields a Schreier word x s x'^{-1} lying in H.
    """
    cap = cap or getattr(settings, 'BIANCHI_COSET_TABLE_CAP', 20000)
    one = SL2Element.identity(gens.algebra)
    representatives = [one]
    words = [[]]
    index = {key(one): 0}
    subgroup_words = []
    queue = deque([0])
    letters = gens.letters()
    while queue:
        i = queue.popleft()
        for label, exponent, matrix in letters:
            y = representatives[i] * matrix
            word = words[i] + [(label, exponent)]
            k = key(y)
            if k in index:
                j = index[k]
                back = [(l, -e) for l, e in reversed(words[j])]
                subgroup_words.append(word + back)
                continue
            index[k] = len(representatives)
            representatives.append(y)
            words.append(word)
            queue.append(index[k])
            if len(representatives) > cap:
                logger.warning(f"Coset discovery stopped at the cap of {cap}")
                return CosetDiscovery(representatives, words, subgroup_words, False)
    logger.info(f"Coset discovery closed with {len(representatives)} cosets")
    return CosetDiscovery(representatives, words, subgroup_words, True)


def subgroup_index(gens, key, relations_list=None, cap=None, member=None):
    """
    [G : H] from coset discovery, certified by Todd-Coxeter on the presentation
    with the Schreier words as subgroup generators when relations are given.
    """
    discovery = discover_cosets(gens, key, cap)
    lower = len(discovery.representatives)
    if member is not None:
        verify_inequivalent(discovery.representatives, member)
    if not discovery.complete:
        return IndexCertificate(None, lower, None, False, discovery.words, discovery.subgroup_words, None)
    enumeration = None
    certified = False
    upper = lower
    if relations_list:
        relators = [relator_letters(gens, r) for r in relations_list]
        subgroup = [word_letters(w, gens.labels) for w in discovery.subgroup_words]
        enumeration = coset_enumeration(len(gens), relators, subgroup, cap)
        certified = enumeration.complete and enumeration.index == lower
        if enumeration.complete:
            upper = enumeration.index
        if enumeration.complete and enumeration.index != lower:
            logger.warning(f"Coset enumeration gives {enumeration.index}, discovery gives {lower}")
    return IndexCertificate(lower, lower, upper, certified, discovery.words, discovery.subgroup_words, enumeration)


def verify_inequivalent(representatives, member):
    """Raise unless x y^{-1} lies outside H for every pair of representatives."""
    for i, x in enumerate(representatives):
        for y in representatives[:i]:
            if member(x * y.inverse()):
                raise BianchiError(f"Coset representatives {x!r} and {y!r} are equivalent")
    return True


def coset_reps_from_orbits(orbits, member=None):
    """
    Right coset representatives of H in G from the action of G on a transitive
    set with base point x0. ``orbits`` lists, per H-orbit, the connector g_i with
    g_i(x0) = x_i and the representatives c_ij of (G_x0 cap g_i^-1 H g_i) \\ G_x0;
    the products g_i c_ij represent H \\ G.
    """
    representatives = [g * c for g, stabilizer_reps in orbits for c in stabilizer_reps]
    if member is not None:
        verify_inequivalent(representatives, member)
    logger.info(f"{len(representatives)} coset representatives from {len(orbits)} orbits")
    return representatives


def conjugated_key(key, g):
    """Key of the cosets of g^-1 H g, from the key of the cosets of H."""
    def conjugated(x):
        return key(g * x)
    return conjugated


def stabilizer_cosets(infty_gens, key, connector, cap=None):
    """Representatives of (Gamma_infty cap g^-1 H g) \\ Gamma_infty for the connector g."""
    discovery = discover_cosets(infty_gens, conjugated_key(key, connector), cap)
    if not discovery.complete:
        raise BianchiError(f"Stabilizer coset discovery hit its cap for connector {connector!r}")
    return discovery.representatives


def orbit_data(infty_gens, key, connectors, cap=None):
    """[(g_i, [c_ij])] for cusps g_i(infinity), one connector per H-orbit."""
    data = []
    for g in connectors:
        reps = stabilizer_cosets(infty_gens, key, g, cap)
        logger.info(f"Orbit of {g.apply(HPoint.infinity(g.algebra))!r}: stabilizer index {len(reps)}")
        data.append((g, reps))
    return data


def gamma0_orbit_data(p, algebra):
    """
    Gamma_0(p) acting on the cusps of PSL2(Z): the orbit of infinity (stabilizer
    index 1) and the orbit of 0 = S(infinity) (stabilizer index p, translations
    tau_j for j < p).
    """
    one = SL2Element.identity(algebra)
    shifts = [translation(algebra.scalar(j)) for j in range(p)]
    return [(one, [one]), (inversion(algebra), shifts)]


def stabilizer_index(infty_gens, key, cap=None):
    """[Gamma_infty(O) : Gamma_infty(O) cap H], or None when discovery hits its cap."""
    if not len(infty_gens):
        return 1
    discovery = discover_cosets(infty_gens, key, cap)
    return len(discovery.representatives) if discovery.complete else None


def cusp_connectors(order, centers):
    """The identity, then for each cusp center c an element of SL2(O) sending infinity to c."""
    algebra = order.algebra
    connectors = [SL2Element.identity(algebra)]
    for center in centers:
        resolution = resolve_cusp(order, center)
        if resolution.bubble is None:
            raise BianchiError(f"Cusp {center} is singular for {order!r}")
        matrix, _ = crossing_matrix(order, resolution.bubble)
        connectors.append(matrix.inverse())
    return connectors


def suborder_orbit_data(order, suborder, centers, units=None, cap=None):
    """
    Orbit data of SL2(suborder) on the cusps of SL2(order), one orbit through
    infinity and one through each center in ``centers``.
    """
    return orbit_data(infty_generators(order, units), suborder_key(suborder), cusp_connectors(order, centers), cap)
