"""
Exact integer lattices in rational inner-product spaces.

Everything is kept in squared form: norms, distances and covering radii are
exact Fractions and no square root is ever taken.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from itertools import combinations, product
from math import floor, ceil, isqrt

from .exceptions import CatalogueError, ParseError
from . import matrices

logger = logging.getLogger(__name__)

Hole = namedtuple('Hole', ['point', 'distance_sq'])
RootComponent = namedtuple('RootComponent', ['kind', 'rank', 'minimal_norm', 'covering_radius_sq'])

EXACT_COVERING_RANK = 6


def _sqrt_ceiling(value):
    """An integer >= sqrt(value) for a nonnegative Fraction."""
    if value <= 0:
        return 0
    return isqrt(value.numerator * value.denominator) // value.denominator + 1


class Lattice:
    """
    A lattice given by basis rows in an ambient space with a rational metric.

    Args:
        basis: k rows of length d (ints, Fractions or 'p/q' strings)
        metric: d x d matrix, a list of d diagonal entries, or None for the identity
    """

    def __init__(self, basis, metric=None):
        self.basis = [[Fraction(x) for x in row] for row in basis]
        if not self.basis:
            raise ParseError("A lattice needs at least one basis vector")
        self.dim = len(self.basis[0])
        self.rank = len(self.basis)
        if metric is None:
            metric = [Fraction(1)] * self.dim
        if metric and not isinstance(metric[0], (list, tuple)):
            metric = [[Fraction(metric[i]) if i == j else Fraction(0) for j in range(self.dim)]
                      for i in range(self.dim)]
        self.metric = [[Fraction(x) for x in row] for row in metric]
        self.gram = matrices.gram_matrix(self.basis, self.metric)
        if matrices.rank(self.basis) != self.rank:
            raise ParseError("Lattice basis rows are linearly dependent")
        self._reduced = None
        self._gram_inverse = None

    # ambient geometry

    def inner(self, u, v):
        total = Fraction(0)
        for i, x in enumerate(u):
            if x:
                row = self.metric[i]
                total += x * sum((m * y for m, y in zip(row, v)), Fraction(0))
        return total

    def norm(self, v):
        return self.inner(v, v)

    def combine(self, coords):
        return matrices.vec_mat(coords, self.basis)

    def coordinates(self, vector):
        """Coordinates of an ambient vector in this basis, or None outside the span."""
        if self._gram_inverse is None:
            self._gram_inverse = matrices.inverse(self.gram)
        pairing = [self.inner(b, vector) for b in self.basis]
        coords = matrices.vec_mat(pairing, self._gram_inverse)
        if self.combine(coords) != [Fraction(x) for x in vector]:
            return None
        return coords

    def contains(self, vector):
        coords = self.coordinates(vector)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def determinant(self):
        return matrices.determinant(self.gram)

    def scaled(self, factor):
        factor = Fraction(factor)
        return Lattice([[x * factor for x in row] for row in self.basis], self.metric)

    def direct_sum(self, other):
        dim = self.dim + other.dim
        basis = [row + [Fraction(0)] * other.dim for row in self.basis]
        basis += [[Fraction(0)] * self.dim + row for row in other.basis]
        metric = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                metric[i][j] = self.metric[i][j]
        for i in range(other.dim):
            for j in range(other.dim):
                metric[self.dim + i][self.dim + j] = other.metric[i][j]
        return Lattice(basis, metric)

    def canonical_basis(self):
        """HNF basis rows, so two lattices with the same points compare equal."""
        return matrices.hnf_fraction_rows(self.basis, self.dim)

    def same_points(self, other):
        return self.canonical_basis() == other.canonical_basis()

    def to_json(self):
        return {
            'basis': [[str(x) for x in row] for row in self.basis],
            'metric': [[str(x) for x in row] for row in self.metric],
        }

    @classmethod
    def from_json(cls, payload):
        try:
            return cls(payload['basis'], payload.get('metric'))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"Bad lattice JSON: {exc}") from exc

    def __repr__(self):
        return f"Lattice(rank={self.rank}, dim={self.dim}, det={self.determinant()})"

    # reduction

    def reduced_basis(self):
        """
        Greedy pairwise size reduction of the basis: b_i -= round(<b_i,b_j>/<b_j,b_j>) b_j
        while some norm decreases. Returns rows spanning the same lattice.
        """
        if self._reduced is not None:
            return self._reduced
        rows = [list(r) for r in self.basis]
        norms = [self.norm(r) for r in rows]
        changed = True
        rounds = 0
        while changed and rounds < 100 * self.rank:
            changed = False
            rounds += 1
            for i in range(len(rows)):
                for j in range(len(rows)):
                    if i == j:
                        continue
                    mu = self.inner(rows[i], rows[j]) / norms[j]
                    m = round(mu)
                    if m == 0:
                        continue
                    candidate = [x - m * y for x, y in zip(rows[i], rows[j])]
                    candidate_norm = self.norm(candidate)
                    if candidate_norm < norms[i]:
                        rows[i], norms[i] = candidate, candidate_norm
                        changed = True
        order = sorted(range(len(rows)), key=lambda k: (norms[k], rows[k]))
        self._reduced = [rows[k] for k in order]
        return self._reduced

    # enumeration

    def _fincke_pohst(self, rows, bound, center=None):
        """
        All integer coordinate vectors z with Q(z - center) <= bound for the Gram
        form of ``rows``. Exact: ranges come from an integer square-root overshoot
        and every step is rechecked with Fractions.
        """
        k = len(rows)
        gram = matrices.gram_matrix(rows, self.metric)
        q = [list(r) for r in gram]
        for i in range(k):
            for j in range(i + 1, k):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for l in range(i + 1, k):
                for j in range(l, k):
                    q[l][j] -= q[l][i] * q[i][j]
        if center is None:
            center = [Fraction(0)] * k
        results = []
        z = [0] * k

        def search(i, budget):
            if i < 0:
                results.append(list(z))
                return
            shift = sum((q[i][j] * (z[j] - center[j]) for j in range(i + 1, k)), Fraction(0))
            c = center[i] - shift
            radius_sq = budget / q[i][i]
            s = _sqrt_ceiling(radius_sq)
            for value in range(floor(c) - s, ceil(c) + s + 1):
                used = q[i][i] * (value - c) ** 2
                if used <= budget:
                    z[i] = value
                    search(i - 1, budget - used)
            z[i] = 0

        search(k - 1, Fraction(bound))
        return results

    def enumerate_by_norm(self, bound):
        """Every lattice vector of squared norm <= bound with its norm, sorted by (norm, coordinates)."""
        bound = Fraction(bound)
        if bound < 0:
            return []
        rows = self.reduced_basis()
        found = []
        for z in self._fincke_pohst(rows, bound):
            vector = matrices.vec_mat(z, rows)
            found.append((vector, self.norm(vector)))
        found.sort(key=lambda item: (item[1], item[0]))
        logger.debug(f"enumerate_by_norm: {len(found)} vectors up to norm {bound}")
        return found

    def minimal_vectors(self):
        """(minimal nonzero norm, sorted list of the vectors achieving it)."""
        rows = self.reduced_basis()
        bound = min(self.norm(r) for r in rows)
        shortest = [(v, n) for v, n in self.enumerate_by_norm(bound) if n > 0]
        minimum = shortest[0][1]
        return minimum, [v for v, n in shortest if n == minimum]

    def closest_vectors(self, target):
        """(squared distance, every lattice vector at that distance sorted lexicographically)."""
        target = [Fraction(x) for x in target]
        rows = self.reduced_basis()
        reduced = Lattice(rows, self.metric)
        t = reduced.coordinates(target)
        if t is None:
            raise ParseError("Closest vector target lies outside the lattice span")
        babai = matrices.vec_mat([round(x) for x in t], rows)
        bound = self.norm([a - b for a, b in zip(target, babai)])
        best = None
        ties = []
        for z in self._fincke_pohst(rows, bound, center=t):
            vector = matrices.vec_mat(z, rows)
            distance = self.norm([a - b for a, b in zip(target, vector)])
            if best is None or distance < best:
                best, ties = distance, [vector]
            elif distance == best:
                ties.append(vector)
        ties.sort()
        return best, ties

    def vectors_near(self, target, bound):
        """Lattice vectors within squared distance ``bound`` of ``target``, sorted by (distance, vector)."""
        target = [Fraction(x) for x in target]
        rows = self.reduced_basis()
        t = Lattice(rows, self.metric).coordinates(target)
        if t is None:
            raise ParseError("Target lies outside the lattice span")
        found = []
        for z in self._fincke_pohst(rows, Fraction(bound), center=t):
            vector = matrices.vec_mat(z, rows)
            found.append((self.norm([a - b for a, b in zip(vector, target)]), vector))
        found.sort()
        return [v for _, v in found]

    def closest_vector(self, target):
        """A closest lattice vector; ties go to the lexicographically smallest."""
        distance, ties = self.closest_vectors(target)
        return ties[0], distance

    # Voronoi geometry

    def voronoi_relevant_vectors(self):
        """
        The Voronoi-relevant vectors: for each nonzero class of L/2L, the shortest
        vectors of the class when there are exactly two of them (+v and -v).
        """
        doubled = self.scaled(2)
        relevant = []
        for bits in product((0, 1), repeat=self.rank):
            if not any(bits):
                continue
            representative = self.combine(list(bits))
            _, shortest = doubled.closest_vectors(representative)
            if len(shortest) == 2:
                for w in shortest:
                    relevant.append([a - b for a, b in zip(representative, w)])
        relevant.sort(key=lambda v: (self.norm(v), v))
        return relevant

    def _components(self, vectors):
        """Connected components of the non-orthogonality graph on ``vectors``."""
        remaining = list(range(len(vectors)))
        components = []
        while remaining:
            stack = [remaining.pop(0)]
            member = set(stack)
            while stack:
                i = stack.pop()
                for j in list(remaining):
                    if self.inner(vectors[i], vectors[j]) != 0:
                        remaining.remove(j)
                        member.add(j)
                        stack.append(j)
            components.append([vectors[i] for i in sorted(member)])
        return components

    def _component_deep_hole(self, vectors):
        """Farthest Voronoi vertex of one orthogonal component, as (point, distance_sq)."""
        spanning = []
        for v in vectors:
            if matrices.rank(spanning + [v]) > len(spanning):
                spanning.append(v)
        r = len(spanning)
        pair = [[self.inner(u, v) for u in spanning] for v in vectors]
        half = [self.norm(v) / 2 for v in vectors]
        gram = [[self.inner(u, w) for w in spanning] for u in spanning]
        keys = [tuple(v) for v in vectors]
        negatives = {i: keys.index(tuple(-x for x in v)) for i, v in enumerate(vectors)}
        best = None
        for subset in combinations(range(len(vectors)), r):
            if any(negatives[i] in subset for i in subset):
                continue
            system = [pair[i] for i in subset]
            if matrices.determinant(system) == 0:
                continue
            alpha = matrices.solve(system, [half[i] for i in subset])
            if any(sum((a * p for a, p in zip(alpha, pair[j])), Fraction(0)) > half[j]
                   for j in range(len(vectors))):
                continue
            distance = sum((alpha[i] * gram[i][j] * alpha[j] for i in range(r) for j in range(r)),
                           Fraction(0))
            if best is None or distance > best[1]:
                best = (matrices.vec_mat(alpha, spanning), distance)
        return best

    def deep_hole(self):
        """Exact deep hole from the Voronoi vertices; rank <= 6 only."""
        if self.rank > EXACT_COVERING_RANK:
            raise CatalogueError(f"Exact covering radius is limited to rank {EXACT_COVERING_RANK}")
        relevant = self.voronoi_relevant_vectors()
        point = [Fraction(0)] * self.dim
        total = Fraction(0)
        for component in self._components(relevant):
            hole, distance = self._component_deep_hole(component)
            point = [a + b for a, b in zip(point, hole)]
            total += distance
        return Hole(point, total)

    def recognize(self):
        """
        Split the lattice into root lattices A_n, D_n, E_6, E_7, E_8 (all with the same
        minimal norm) or return None. The determinant must match exactly.
        """
        minimum, roots = self.minimal_vectors()
        components = []
        det_product = Fraction(1)
        rank_total = 0
        for component in self._components(roots):
            r = matrices.rank(component)
            count = len(component)
            kind = _root_kind(r, count)
            if kind is None:
                return None
            span = Lattice(matrices.hnf_fraction_rows(component, self.dim), self.metric)
            scale = minimum / 2
            if span.determinant() != _ROOT_DETERMINANT[kind[0]](r) * scale ** r:
                return None
            det_product *= span.determinant()
            rank_total += r
            components.append(RootComponent(
                kind=f"{kind[0]}{r}", rank=r, minimal_norm=minimum,
                covering_radius_sq=scale * _ROOT_COVERING[kind[0]](r),
            ))
        if rank_total != self.rank or det_product != self.determinant():
            return None
        components.sort(key=lambda c: (c.rank, c.kind))
        return components

    def covering_radius(self):
        """Squared covering radius: Voronoi vertices up to rank 6, root-lattice catalogue above."""
        if self.rank <= EXACT_COVERING_RANK:
            return self.deep_hole().distance_sq
        components = self.recognize()
        if components is None:
            raise CatalogueError(f"Rank {self.rank} lattice is not a sum of catalogued root lattices")
        logger.info(f"Covering radius from catalogue: {[c.kind for c in components]}")
        return sum((c.covering_radius_sq for c in components), Fraction(0))


def _root_kind(r, count):
    if count == r * (r + 1):
        return ('A',)
    if r >= 4 and count == 2 * r * (r - 1):
        return ('D',)
    if (r, count) in ((6, 72), (7, 126), (8, 240)):
        return ('E',)
    return None


def _a_covering(r):
    a = (r + 1) // 2
    return Fraction(a * (r + 1 - a), r + 1)


_ROOT_DETERMINANT = {
    'A': lambda r: Fraction(r + 1),
    'D': lambda r: Fraction(4),
    'E': lambda r: Fraction({6: 3, 7: 2, 8: 1}[r]),
}

# squared covering radii at minimal norm 2
_ROOT_COVERING = {
    'A': _a_covering,
    'D': lambda r: Fraction(r, 4),
    'E': lambda r: {6: Fraction(4, 3), 7: Fraction(3, 2), 8: Fraction(1)}[r],
}


def cubic_lattice(n):
    return Lattice([[int(i == j) for j in range(n)] for i in range(n)])


def enumerate_by_norm(lattice, bound):
    return lattice.enumerate_by_norm(bound)


def closest_vector(lattice, target):
    return lattice.closest_vector(target)


def covering_radius(lattice):
    return lattice.covering_radius()
