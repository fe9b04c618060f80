"""
Clifford unit groups of orders and their action on paravectors.
"""
import logging
from collections import Counter, deque
from fractions import Fraction
from itertools import combinations_with_replacement, product

from django.conf import settings

from .algebra import popcount
from .exceptions import RankCapError
from .lattices import Lattice

logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'
HEURISTIC = 'heuristic'


def unit_key(u):
    """Deterministic ordering: small denominators, few terms, few minus signs first."""
    negatives = sum(1 for c in u.coeffs.values() if c < 0)
    return (u.denominator(), len(u.coeffs), negatives, sorted(u.coeffs), str(u))


def generated_subgroup(generators, one):
    """All products of the generators (a finite group, so inverses come for free)."""
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def action_matrix(u):
    """Rows are pi_u(e_j) = u e_j u* in paravector coordinates, e_0 = 1 and e_j = gamma_j."""
    algebra = u.algebra
    star = u.transpose()
    return tuple(
        tuple((u * algebra.basis_element(mask) * star).vector_coords())
        for mask in algebra.paravector_masks()
    )


def element_order(x, one, bound=1000):
    power = x
    for k in range(1, bound + 1):
        if power == one:
            return k
        power = power * x
    return None


class UnitGroup:
    """
    The finite group O^x with generators and the action matrices pi_u.

    Attributes:
        elements (list): every unit, sorted by ``unit_key``
        generators (list): greedy generating set taken in the same order
        rigorous (bool): False when the heuristic search produced the list
    """

    def __init__(self, order, elements, mode=EXHAUSTIVE, depth=None, stabilized=None):
        self.order_ring = order
        self.elements = sorted(set(elements), key=unit_key)
        self.mode = mode
        self.depth = depth
        self.stabilized = stabilized
        self.rigorous = mode == EXHAUSTIVE
        self.one = order.algebra.one()
        self.generators = self._greedy_generators()
        self._matrices = None

    @property
    def order(self):
        return len(self.elements)

    def _greedy_generators(self):
        generators = []
        span = {self.one}
        for u in self.elements:
            if u in span:
                continue
            generators.append(u)
            span = generated_subgroup(generators, self.one)
            if len(span) == len(self.elements):
                break
        return generators

    def is_closed(self):
        """Closure table check: products and inverses stay inside the set."""
        members = set(self.elements)
        for x in self.elements:
            if x.inverse() not in members:
                return False
            for y in self.elements:
                if x * y not in members:
                    return False
        return True

    def action_matrices(self):
        if self._matrices is None:
            self._matrices = {u: action_matrix(u) for u in self.elements}
        return self._matrices

    def action_image(self):
        """Distinct action matrices; the kernel of u -> pi_u is {+1, -1}."""
        return sorted(set(self.action_matrices().values()))

    def order_profile(self):
        """Counter of element orders in the group."""
        return Counter(element_order(u, self.one, self.order) for u in self.elements)

    def image_order_profile(self):
        """Counter of element orders in the action image."""
        identity = action_matrix(self.one)
        counts = Counter()
        for matrix in self.action_image():
            counts[_matrix_order(matrix, identity)] += 1
        return counts

    def preserves_metric(self):
        metric = self.order_ring.algebra.paravector_metric()
        for matrix in self.action_image():
            for i, row_i in enumerate(matrix):
                for j, row_j in enumerate(matrix):
                    value = sum((x * m * y for x, m, y in zip(row_i, metric, row_j)), Fraction(0))
                    if value != (metric[i] if i == j else 0):
                        return False
        return True

    def to_json(self):
        return {
            'order': self.order,
            'mode': self.mode,
            'rigorous': self.rigorous,
            'depth': self.depth,
            'stabilized': self.stabilized,
            'generators': [str(g) for g in self.generators],
            'action_image_order': len(self.action_image()),
        }


def _matrix_order(matrix, identity, bound=1000):
    power = matrix
    for k in range(1, bound + 1):
        if power == identity:
            return k
        power = tuple(
            tuple(sum((row[l] * matrix[l][j] for l in range(len(matrix))), Fraction(0)) for j in range(len(matrix)))
            for row in power
        )
    return None


def order_norm_lattice(order):
    """The order as a lattice under the big form, where units have norm 1."""
    return Lattice(order.basis, order.algebra.bigform_metric())


def exhaustive_units(order):
    """Norm-1 lattice vectors of the order that lie in the Clifford monoid."""
    lattice = order_norm_lattice(order)
    units = []
    shells = lattice.enumerate_by_norm(1)
    for vector, norm in shells:
        if norm != 1:
            continue
        x = order.algebra.from_coords(vector)
        if x.is_monoid():
            units.append(x)
    logger.info(f"Exhaustive unit search: {len(shells)} short vectors, {len(units)} units")
    return units


def unit_seeds(order, width=None):
    """Norm-1 monoid elements among the signed sums of at most ``width`` basis elements, with +-1."""
    width = width or getattr(settings, 'BIANCHI_UNIT_SEED_WIDTH', 2)
    basis = order.elements
    metric = order.algebra.bigform_metric()
    one = order.algebra.one()
    seeds = {one, -one}
    for size in range(1, width + 1):
        for multiset in combinations_with_replacement(range(len(basis)), size):
            for signs in product((1, -1), repeat=size):
                x = order.algebra.zero()
                for i, s in zip(multiset, signs):
                    x = x + basis[i] * s
                weight = sum((c * c * metric[m] for m, c in x.coeffs.items()), Fraction(0))
                if weight == 1 and x.is_monoid():
                    seeds.add(x)
    logger.debug(f"{len(seeds)} unit seeds of width {width}")
    return sorted(seeds, key=unit_key)


def heuristic_units(order, depth, seeds=None):
    """U_k: the products of at most ``depth`` seed units."""
    seeds = seeds if seeds is not None else unit_seeds(order)
    reached = {order.algebra.one()}
    frontier = set(reached)
    for _ in range(depth):
        frontier = {x * s for x in frontier for s in seeds} - reached
        if not frontier:
            break
        reached |= frontier
    return sorted(reached, key=unit_key)


def unit_group(order, mode=None, depth=None):
    """
    O^x. Exhaustive up to rank BIANCHI_EXHAUSTIVE_UNIT_RANK; heuristic above, where
    U_k is compared with U_{k+1} and the result is flagged non-rigorous.
    """
    cap = getattr(settings, 'BIANCHI_EXHAUSTIVE_UNIT_RANK', 32)
    if mode is None:
        mode = EXHAUSTIVE if order.rank <= cap else HEURISTIC
    if mode == EXHAUSTIVE:
        if order.rank > cap:
            raise RankCapError(f"Exhaustive unit search is capped at rank {cap}, got {order.rank}")
        return UnitGroup(order, exhaustive_units(order))
    depth = depth or getattr(settings, 'BIANCHI_UNIT_HEURISTIC_DEPTH', 4)
    seeds = unit_seeds(order)
    current = heuristic_units(order, depth, seeds)
    following = heuristic_units(order, depth + 1, seeds)
    stabilized = set(current) == set(following)
    logger.warning(
        f"Heuristic unit search at depth {depth} from {len(seeds)} seeds: |U_k| = {len(current)}, "
        f"|U_k+1| = {len(following)}, stabilized: {stabilized}"
    )
    units = sorted(generated_subgroup(seeds, order.algebra.one()), key=unit_key)
    return UnitGroup(order, units, mode=HEURISTIC, depth=depth, stabilized=stabilized)


def action_image(group):
    return group.action_image()


def is_rotation(u):
    """Units of even grade act by rotations fixing the scalar line."""
    return all(popcount(m) % 2 == 0 for m in u.coeffs)
