"""
Fundamental domains for Clifford-Bianchi groups.

The domain is the region above every bubble and over a fundamental cell F of
the stabilizer of infinity. Everything is decided with exact rationals: bubble
heights are compared squared, and domination goes through the exact simplex in
``linprog``.
"""
import logging
import random
from collections import namedtuple
from fractions import Fraction
from itertools import product
from math import ceil, floor, isqrt, sqrt

from django.conf import settings
from sympy import Interval, Rational, Symbol, factorint, integer_nthroot, maximum

from .euclid import is_unimodular, lift_to_sl2
from .exceptions import BianchiError, LiftNotFoundError, NotParavectorError, ParseError, ReductionError
from .lattices import Lattice
from .linprog import LE, CAP, INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram
from .mobius import HPoint, SL2Element, is_tidy, rotation, sl2_check, tidy_matrix, translation
from .units import unit_group, unit_key
from . import matrices

logger = logging.getLogger(__name__)

DOMINATED = 'dominated'
WITNESS = 'witness'
INCONCLUSIVE = 'inconclusive'

UnderSpheres = namedtuple('UnderSpheres', ['status', 'point', 'iterations', 'cuts'])
Move = namedtuple('Move', ['unit', 'matrix', 'translation', 'image'])
SingularCusp = namedtuple('SingularCusp', ['center', 'index', 'factorization', 'is_power'])
CuspClass = namedtuple('CuspClass', ['representative', 'kind', 'members', 'index', 'factorization'])
CuspResolution = namedtuple('CuspResolution', ['bubble', 'index', 'root'])
Reduction = namedtuple('Reduction', ['point', 'element', 'steps', 'heights'])
Coverage = namedtuple('Coverage', ['samples', 'uncovered'])
GridVerdict = namedtuple('GridVerdict', ['status', 'point'])
Disagreement = namedtuple('Disagreement', ['bubble', 'exact', 'grid'])

GRID_TOLERANCE = 1e-9


def _inner(metric, u, v):
    return sum((m * a * b for m, a, b in zip(metric, u, v)), Fraction(0))


def _sub(u, v):
    return [a - b for a, b in zip(u, v)]


def sqrt_upper(value, bits=24):
    """A rational >= sqrt(value), within 2^-bits of it."""
    value = Fraction(value)
    if value <= 0:
        return Fraction(0)
    scale = 1 << bits
    return Fraction(isqrt(value.numerator * scale * scale // value.denominator) + 1, scale)


class Bubble:
    """
    The hemisphere |x - mu^{-1} lam| = 1/|mu| of a unimodular pair (lam, mu).

    ``Bubble.sphere`` builds one from a bare center and squared radius, with no
    pair attached; those are only used as test hemispheres.
    """

    __slots__ = ('algebra', 'lam', 'mu', 'center', 'radius_sq', 'crossing', 'tidy')

    def __init__(self, lam, mu):
        center = mu.inverse() * lam
        if not center.is_vector():
            raise NotParavectorError(f"Bubble center {center} is not a paravector")
        self.algebra = mu.algebra
        self.lam = lam
        self.mu = mu
        self.center = tuple(center.vector_coords())
        self.radius_sq = 1 / mu.nrd().scalar_part()
        self.crossing = None
        self.tidy = False

    @classmethod
    def sphere(cls, algebra, center, radius_sq):
        bubble = cls.__new__(cls)
        bubble.algebra = algebra
        bubble.lam = bubble.mu = None
        if hasattr(center, 'algebra'):
            center = center.vector_coords()
        bubble.center = tuple(Fraction(x) for x in center)
        bubble.radius_sq = Fraction(radius_sq)
        bubble.crossing = None
        bubble.tidy = False
        return bubble

    @property
    def key(self):
        return (self.center, self.radius_sq)

    def __eq__(self, other):
        return isinstance(other, Bubble) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"B({self.center_element()}, r^2={self.radius_sq})"

    def center_element(self):
        return self.algebra.paravector(self.center)

    def height_sq_at(self, x):
        """Squared height of the hemisphere over x (negative outside its disk)."""
        return self.radius_sq - _inner(self.algebra.paravector_metric(), _sub(x, self.center), _sub(x, self.center))

    def covers(self, point):
        """True when the interior point lies strictly under the hemisphere."""
        return point.distance_sq_to(self.center_element()) < self.radius_sq

    def moved(self, move):
        """The image under x -> pi_u(x) + v."""
        if self.mu is None:
            center = [a + b for a, b in zip(matrices.vec_mat(list(self.center), move.matrix), move.translation)]
            return Bubble.sphere(self.algebra, center, self.radius_sq)
        u = move.unit
        v = self.algebra.paravector(move.translation)
        mu = self.mu * u.conjugate()
        return Bubble(self.lam * u.transpose() + mu * v, mu)

    def to_json(self):
        return {
            'center': [str(x) for x in self.center],
            'radius_sq': str(self.radius_sq),
            'lam': None if self.lam is None else str(self.lam),
            'mu': None if self.mu is None else str(self.mu),
            'tidy': self.tidy,
            'crossing_matrix': None if self.crossing is None else self.crossing.to_json(),
        }


def _primitive(normal, offset):
    lead = next((abs(x) for x in normal if x), None)
    if lead is None:
        return tuple(normal), offset
    return tuple(x / lead for x in normal), offset / lead


class Polytope:
    """
    {x : normal . x <= offset for every halfspace} in paravector coordinates.

    ``labels`` optionally names the element of the stabilizer of infinity that
    pairs each wall.
    """

    def __init__(self, halfspaces, labels=None):
        labels = list(labels) if labels is not None else [None] * len(halfspaces)
        self.halfspaces = []
        self.labels = []
        seen = set()
        for (normal, offset), label in zip(halfspaces, labels):
            normal = tuple(Fraction(x) for x in normal)
            offset = Fraction(offset)
            key = _primitive(normal, offset)
            if key in seen:
                continue
            seen.add(key)
            self.halfspaces.append((normal, offset))
            self.labels.append(label)
        if not self.halfspaces:
            raise ParseError("A polytope needs at least one halfspace")
        self.dim = len(self.halfspaces[0][0])
        self._box = None

    @classmethod
    def from_inequalities(cls, inequalities):
        """Build from (normal, offset) pairs given as ints, Fractions or 'p/q' strings."""
        return cls([([Fraction(x) for x in normal], Fraction(offset)) for normal, offset in inequalities])

    def __len__(self):
        return len(self.halfspaces)

    def contains(self, x, strict=False):
        for normal, offset in self.halfspaces:
            value = sum((a * b for a, b in zip(normal, x)), Fraction(0))
            if value > offset or (strict and value == offset):
                return False
        return True

    def constraints(self):
        return [(list(normal), LE, offset) for normal, offset in self.halfspaces]

    def program(self, objective=None, sense='max'):
        return LinearProgram(self.dim, self.constraints(), objective, sense)

    def bounding_box(self):
        """(lo, hi) per coordinate, each from an exact LP."""
        if self._box is None:
            lo, hi = [], []
            for k in range(self.dim):
                objective = [Fraction(int(j == k)) for j in range(self.dim)]
                top = self.program(objective, 'max').solve()
                bottom = self.program(objective, 'min').solve()
                if top.status != OPTIMAL or bottom.status != OPTIMAL:
                    raise BianchiError(f"Polytope is not bounded and nonempty along coordinate {k}")
                lo.append(bottom.value)
                hi.append(top.value)
            self._box = (lo, hi)
        return self._box

    def bounding_ball(self, metric):
        """(center, squared radius) of a ball containing the polytope."""
        lo, hi = self.bounding_box()
        center = [(a + b) / 2 for a, b in zip(lo, hi)]
        half = [(b - a) / 2 for a, b in zip(lo, hi)]
        return center, _inner(metric, half, half)

    def interior_point(self):
        """A point of largest margin below every wall, or None when the interior is empty."""
        rows = [(list(normal) + [Fraction(1)], LE, offset) for normal, offset in self.halfspaces]
        objective = [Fraction(0)] * self.dim + [Fraction(1)]
        result = LinearProgram(self.dim + 1, rows, objective).solve()
        if result.status == UNBOUNDED:
            return result.point[:self.dim]
        if result.status != OPTIMAL or result.value <= 0:
            return None
        return result.point[:self.dim]

    def without_redundant(self):
        """Drop walls implied by the others, one exact LP each."""
        keep = list(range(len(self.halfspaces)))
        for i in list(keep):
            others = [j for j in keep if j != i]
            if not others:
                continue
            normal, offset = self.halfspaces[i]
            program = LinearProgram(self.dim, [(list(self.halfspaces[j][0]), LE, self.halfspaces[j][1]) for j in others],
                                    list(normal))
            result = program.solve()
            if result.status == OPTIMAL and result.value <= offset:
                keep.remove(i)
        logger.debug(f"Redundancy pass kept {len(keep)} of {len(self.halfspaces)} walls")
        return Polytope([self.halfspaces[i] for i in keep], [self.labels[i] for i in keep])

    def sample(self, count, rng, denominator=64):
        """Rational points of the polytope, drawn on a 1/denominator grid inside its box."""
        lo, hi = self.bounding_box()
        points = []
        for _ in range(count * 50):
            x = [Fraction(rng.randint(int(a * denominator) - 1, int(b * denominator) + 1), denominator)
                 for a, b in zip(lo, hi)]
            if self.contains(x, strict=True):
                points.append(x)
                if len(points) == count:
                    break
        return points

    def to_json(self):
        return {
            'halfspaces': [
                {'normal': [str(x) for x in normal], 'offset': str(offset), 'label': label}
                for (normal, offset), label in zip(self.halfspaces, self.labels)
            ],
        }

    @classmethod
    def from_json(cls, payload):
        try:
            rows = payload['halfspaces']
            return cls(
                [([Fraction(x) for x in row['normal']], Fraction(row['offset'])) for row in rows],
                [row.get('label') for row in rows],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"Bad polytope JSON: {exc}") from exc


# bubble geometry

def exclusion_test(h0, h1):
    """
    True when h0 lies under h1, i.e. r1 >= d + r0 for the distance d of the
    centers, decided in squared form.
    """
    metric = h0.algebra.paravector_metric()
    difference = _sub(h1.center, h0.center)
    d2 = _inner(metric, difference, difference)
    if h1.radius_sq < h0.radius_sq:
        return False
    total = h1.radius_sq + h0.radius_sq - d2
    return total >= 0 and total * total >= 4 * h1.radius_sq * h0.radius_sq


def disks_meet(h0, h1):
    """The open disks of the two hemispheres overlap: d < r0 + r1."""
    metric = h0.algebra.paravector_metric()
    difference = _sub(h1.center, h0.center)
    gap = _inner(metric, difference, difference) - h0.radius_sq - h1.radius_sq
    return gap < 0 or gap * gap < 4 * h0.radius_sq * h1.radius_sq


def bubble_constraint(h0, hi):
    """
    h0 at least as high as hi at x: r0^2 - |x - c0|^2 >= ri^2 - |x - ci|^2, which
    is linear, 2 <x, ci - c0> <= r0^2 - |c0|^2 - ri^2 + |ci|^2.
    """
    metric = h0.algebra.paravector_metric()
    row = [2 * g * (b - a) for g, a, b in zip(metric, h0.center, hi.center)]
    rhs = (h0.radius_sq - _inner(metric, h0.center, h0.center)
           - hi.radius_sq + _inner(metric, hi.center, hi.center))
    return row, rhs


def disk_box(h0):
    """Walls of a rational box containing the disk of h0."""
    metric = h0.algebra.paravector_metric()
    rows = []
    for k, (g, c) in enumerate(zip(metric, h0.center)):
        reach = sqrt_upper(h0.radius_sq / g)
        unit = [Fraction(int(j == k)) for j in range(len(metric))]
        rows.append((unit, c + reach))
        rows.append(([-x for x in unit], reach - c))
    return rows


def tangent_cut(h0, point):
    """A wall containing the disk of h0 with ``point`` on or outside it."""
    metric = h0.algebra.paravector_metric()
    u = _sub(point, h0.center)
    length_sq = _inner(metric, u, u)
    reach = sqrt_upper(h0.radius_sq * length_sq)
    if reach > length_sq:
        reach = length_sq
    row = [g * x for g, x in zip(metric, u)]
    return row, reach + _inner(metric, u, h0.center)


def _program(rows, dim, objective=None):
    return LinearProgram(dim, [(row, LE, rhs) for row, rhs in rows], objective)


def _max_margin(rows, dim):
    """The point maximizing the common slack t of every row."""
    lifted = [(list(row) + [Fraction(1)], LE, rhs) for row, rhs in rows]
    objective = [Fraction(0)] * dim + [Fraction(1)]
    result = LinearProgram(dim + 1, lifted, objective).solve()
    if result.status != OPTIMAL:
        return None, None
    return result.point[:dim], result.value


def under_spheres(h0, cover, region=None, cap=None):
    """
    Decide whether h0 lies under the union of ``cover`` above ``region``.

    Works on the linear inequalities "h0 at least as high as h_i", the walls of
    the region and a box around h0's disk. A tight constraint whose slack cannot
    be made positive means h0 is nowhere strictly highest; once every constraint
    is strictly satisfiable, a largest-margin point is checked against h0's disk
    and a tangent cut is added when it falls outside.

    Returns:
        UnderSpheres(status, point, iterations, cuts): status is DOMINATED,
        WITNESS (point is strictly inside h0's disk with h0 strictly highest)
        or INCONCLUSIVE after ``cap`` cuts
    """
    cap = cap or getattr(settings, 'BIANCHI_LP_ITERATION_CAP', 200)
    metric = h0.algebra.paravector_metric()
    dim = len(metric)
    for other in cover:
        if other is not h0 and exclusion_test(h0, other):
            return UnderSpheres(DOMINATED, None, 0, 0)
    rows = []
    if region is not None:
        rows += [(list(normal), offset) for normal, offset in region.halfspaces]
    rows += disk_box(h0)
    for other in cover:
        if other is h0 or not disks_meet(h0, other):
            continue
        row, rhs = bubble_constraint(h0, other)
        if not any(row):
            if rhs < 0:
                return UnderSpheres(DOMINATED, None, 0, 0)
            continue
        rows.append((row, rhs))
    cuts = 0
    for iteration in range(1, cap + 1):
        program = _program(rows, dim)
        result = program.solve()
        if result.status == INFEASIBLE:
            return UnderSpheres(DOMINATED, None, iteration, cuts)
        if result.status == CAP:
            break
        solutions = [result.point]
        tight = set(result.tight)
        while tight:
            j = min(tight)
            row, rhs = rows[j]
            best = program.with_objective([-x for x in row]).solve()
            if best.status == UNBOUNDED:
                point = [a + b for a, b in zip(best.point, best.ray)]
                solutions.append(point)
                tight.discard(j)
                continue
            if best.status != OPTIMAL:
                return UnderSpheres(INCONCLUSIVE, None, iteration, cuts)
            if rhs + best.value == 0:
                return UnderSpheres(DOMINATED, None, iteration, cuts)
            solutions.append(best.point)
            tight &= set(best.tight)
            tight.discard(j)
        centroid = [sum(column, Fraction(0)) / len(solutions) for column in zip(*solutions)]
        margin_point, _ = _max_margin(rows, dim)
        for point in (margin_point, centroid):
            if point is not None and h0.height_sq_at(point) > 0:
                return UnderSpheres(WITNESS, point, iteration, cuts)
        rows.append(tangent_cut(h0, margin_point if margin_point is not None else centroid))
        cuts += 1
    logger.warning(f"under_spheres for {h0!r} stopped after {cuts} cuts without a verdict")
    return UnderSpheres(INCONCLUSIVE, None, cap, cuts)


# the stabilizer of infinity

class InftyStabilizer:
    """
    Gamma_infty = Vec(O) semidirect the action image of O^x, acting on
    paravector coordinates by x -> pi_u(x) + v.
    """

    def __init__(self, order, units=None):
        self.order = order
        self.algebra = order.algebra
        self.units = units or unit_group(order)
        self.lattice = order.vectors_of()
        self.metric = self.algebra.paravector_metric()
        first = {}
        for u, matrix in sorted(self.units.action_matrices().items(), key=lambda item: unit_key(item[0])):
            first.setdefault(matrix, u)
        identity = tuple(tuple(Fraction(int(i == j)) for j in range(len(self.metric))) for i in range(len(self.metric)))
        self.moves = sorted(((u, m) for m, u in first.items()), key=lambda item: (item[1] != identity, unit_key(item[0])))

    @staticmethod
    def act(matrix, x):
        return matrices.vec_mat(list(x), [list(row) for row in matrix])

    def element(self, move):
        """The SL2 element translation(v) * rotation(u)."""
        return translation(self.algebra.paravector(move.translation)) * rotation(move.unit)

    def images(self, point, center, bound):
        """Every image of ``point`` within squared distance ``bound`` of ``center``."""
        seen = set()
        found = []
        for u, matrix in self.moves:
            y = self.act(matrix, point)
            for v in self.lattice.vectors_near(_sub(center, y), bound):
                image = tuple(a + b for a, b in zip(y, v))
                if image in seen:
                    continue
                seen.add(image)
                found.append(Move(u, matrix, tuple(v), image))
        return found

    def reduce(self, point, cell):
        """A Move taking ``point`` into the closed cell."""
        center, radius_sq = cell.bounding_ball(self.metric)
        for move in self.images(point, center, radius_sq):
            if cell.contains(move.image):
                return move
        raise ReductionError(f"No image of {list(point)} lands in the cell")

    def orbit_key(self, point, cell):
        """The smallest image of ``point`` in the closed cell."""
        center, radius_sq = cell.bounding_ball(self.metric)
        inside = [move.image for move in self.images(point, center, radius_sq) if cell.contains(move.image)]
        return min(inside) if inside else tuple(point)

    def bubble_images(self, bubble, center, bound):
        """(image, move) for the images whose centers lie within squared distance ``bound`` of ``center``."""
        found = {}
        for move in self.images(bubble.center, center, bound):
            image = bubble.moved(move)
            found.setdefault(image.key, (image, move))
        return list(found.values())

    def base_point(self):
        """A deterministic point moved by every nontrivial rotation of the image."""
        n = len(self.metric)
        primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        for shift in range(len(primes) - n + 1):
            point = [Fraction(primes[k + shift], 4 * 10 ** (n - k)) for k in range(n)]
            if all(tuple(self.act(matrix, point)) != tuple(point) for _, matrix in self.moves[1:]):
                return point
        raise BianchiError("No generic base point found for the unit action")

    def dirichlet_cell(self):
        """
        The Voronoi cell of Vec(O) at the origin cut by the Dirichlet cone of the
        rotation image about a generic base point.
        """
        halfspaces, labels = [], []
        for v in self.lattice.voronoi_relevant_vectors():
            halfspaces.append(([g * x for g, x in zip(self.metric, v)], self.lattice.norm(v) / 2))
            labels.append(f"tau({self.algebra.paravector([-x for x in v])})")
        p = self.base_point()
        for u, matrix in self.moves[1:]:
            q = self.act(matrix, p)
            halfspaces.append(([g * (a - b) for g, a, b in zip(self.metric, q, p)], Fraction(0)))
            labels.append(f"sigma({u.conjugate()})")
        cell = Polytope(halfspaces, labels).without_redundant()
        logger.info(f"Dirichlet cell for {self.order!r}: {len(cell)} walls")
        return cell


def infty_domain(order, units=None):
    """A fundamental polytope for Gamma_infty acting on the paravectors."""
    return InftyStabilizer(order, units).dirichlet_cell()


# cusps

def cusp_ideal(order, center):
    """HNF rows of J_c = {nu in O : nu c in O} = O cap O c^{-1}."""
    algebra = order.algebra
    c = center if hasattr(center, 'algebra') else algebra.paravector(center)
    if not c:
        return [list(row) for row in order.basis]
    inverse = c.inverse()
    return matrices.lattice_intersection(order.basis, [(x * inverse).coords() for x in order.elements])


def resolve_cusp(order, center):
    """
    The bubble at ``center`` when J_c is principal, found as a monoid element of
    J_c whose norm is the (rank/2)-th root of the index [O : J_c].

    Returns:
        CuspResolution(bubble or None, index, root or None)
    """
    algebra = order.algebra
    c = algebra.paravector(center)
    if order.contains(c):
        return CuspResolution(Bubble(c, algebra.one()), 1, 1)
    rows = cusp_ideal(order, c)
    index = Fraction(order.ideal_index(rows))
    if index.denominator != 1:
        return CuspResolution(None, index, None)
    root, exact = integer_nthroot(int(index), order.rank // 2)
    if not exact:
        return CuspResolution(None, index, None)
    lattice = Lattice(rows, algebra.bigform_metric())
    for vector, norm in lattice.enumerate_by_norm(int(root)):
        if norm != root:
            continue
        mu = algebra.from_coords(vector)
        if not mu.is_monoid():
            continue
        lam = mu * c
        if is_unimodular(order, mu, lam):
            return CuspResolution(Bubble(lam, mu), index, int(root))
    return CuspResolution(None, index, int(root))


def singular_cusp(order, center, index):
    index = int(index)
    _, exact = integer_nthroot(index, order.rank // 2)
    return SingularCusp(tuple(center), index, dict(factorint(index)), exact)


def candidate_centers(stabilizer, cell, bound):
    """(N, c) for c in (1/N) Vec(O) inside the closed cell, first N only, sorted by (N, c)."""
    center, radius_sq = cell.bounding_ball(stabilizer.metric)
    seen = set()
    found = []
    for n in range(1, bound + 1):
        lattice = stabilizer.lattice.scaled(Fraction(1, n))
        level = []
        for v in lattice.vectors_near(center, radius_sq):
            key = tuple(v)
            if key in seen or not cell.contains(v):
                continue
            seen.add(key)
            level.append(key)
        found += [(n, key) for key in sorted(level)]
    return found


def crossing_matrix(order, bubble):
    """
    (M, tidy) with M in SL2(O) of bottom row (mu, -lam) up to sign, so M sends
    the bubble's center to infinity. Tidy matrices are preferred.
    """
    lam, mu = bubble.lam, bubble.mu
    if mu.is_scalar() and lam.is_vector():
        scale = mu.scalar_part()
        if scale > 0 and scale.denominator == 1 and is_tidy(lam, scale):
            matrix = tidy_matrix(lam, int(scale))
            if sl2_check(matrix, order).ok:
                return matrix, True
    return lift_to_sl2(order, mu, -lam), False


class FundamentalDomain:
    """
    F with its facet bubbles, verified to a denominator-norm bound.

    Attributes:
        cell: fundamental polytope of Gamma_infty used to enumerate cusps
        region: the polytope over which facets are reported (``cell`` by default)
        bubbles: facet bubbles over ``region`` with crossing matrices
        representatives: one surviving bubble per Gamma_infty orbit
        witnesses: for each facet bubble, a point where it is strictly highest
        origins: orbit representative for the key of each bubble near the cell
        singular: singular cusps found in the cell
        inconclusive: hemispheres whose LP loop hit its cap
    """

    def __init__(self, order, stabilizer, cell, region, bound):
        self.order = order
        self.stabilizer = stabilizer
        self.cell = cell
        self.region = region
        self.bound = bound
        self.bubbles = []
        self.representatives = []
        self.witnesses = {}
        self.origins = {}
        self.singular = []
        self.inconclusive = []
        self.cusp_classes = []

    @property
    def walls(self):
        return list(zip(self.cell.halfspaces, self.cell.labels))

    def cover_near(self, polytope=None):
        """Images of the representatives whose disks may reach ``polytope``."""
        polytope = polytope or self.cell
        center, radius_sq = polytope.bounding_ball(self.stabilizer.metric)
        found = {}
        for rep in self.representatives:
            bound = 2 * radius_sq + 2 * rep.radius_sq
            for image, move in self.stabilizer.bubble_images(rep, center, bound):
                if image.key not in found:
                    if image.mu is not None and rep.crossing is not None:
                        image.crossing = rep.crossing * self.stabilizer.element(move).inverse()
                    found[image.key] = image
        return list(found.values())

    def to_json(self):
        return {
            'order': self.order.label,
            'verified_to_bound': self.bound,
            'F': self.cell.to_json(),
            'region': self.region.to_json(),
            'bubbles': [b.to_json() for b in self.bubbles],
            'representatives': [b.to_json() for b in self.representatives],
            'witnesses': [{'center': [str(x) for x in b.center], 'point': [str(x) for x in self.witnesses[b]]}
                          for b in self.bubbles if b in self.witnesses],
            'singular_cusps': [
                {'center': [str(x) for x in s.center], 'index': s.index,
                 'factorization': {str(p): e for p, e in s.factorization.items()}, 'power': s.is_power}
                for s in self.singular
            ],
            'cusp_classes': [
                {'representative': c.representative if isinstance(c.representative, str)
                 else [str(x) for x in c.representative],
                 'kind': c.kind, 'members': len(c.members), 'index': c.index}
                for c in self.cusp_classes
            ],
            'inconclusive': [b.to_json() for b in self.inconclusive],
        }


class BubbleSearch:
    """
    Sweep of candidate cusps by denominator norm, keeping the bubbles not
    dominated by those already accepted (and their Gamma_infty images).
    """

    def __init__(self, order, stabilizer, cell, bound, cap=None):
        self.order = order
        self.algebra = order.algebra
        self.stabilizer = stabilizer
        self.cell = cell
        self.bound = bound
        self.cap = cap
        self.center, self.radius_sq = cell.bounding_ball(stabilizer.metric)
        self.survivors = []
        self.cover = []
        self.singular = []
        self.inconclusive = []

    def images(self, bubble):
        bound = 2 * self.radius_sq + 2 * bubble.radius_sq
        return [image for image, _ in self.stabilizer.bubble_images(bubble, self.center, bound)]

    def covered(self, point):
        return any(b.height_sq_at(point) > 0 for b in self.cover)

    def dominated(self, bubble):
        """Every image of the orbit meeting the cell lies under the current cover."""
        for image in self.images(bubble):
            peers = [b for b in self.cover if disks_meet(image, b)]
            if any(exclusion_test(image, b) for b in peers):
                continue
            verdict = under_spheres(image, peers, self.cell, self.cap)
            if verdict.status == WITNESS:
                return False
            if verdict.status == INCONCLUSIVE:
                self.inconclusive.append(image)
                return False
        return True

    def accept(self, bubble):
        logger.info(f"Bubble {bubble!r} kept")
        self.survivors.append(bubble)
        self.cover.extend(self.images(bubble))

    def run(self):
        one = self.algebra.one()
        self.accept(Bubble(self.algebra.zero(), one))
        for n, point in candidate_centers(self.stabilizer, self.cell, self.bound):
            if n == 1:
                continue
            if self.covered(point):
                if self.dominated(Bubble.sphere(self.algebra, point, Fraction(1, n))):
                    continue
                resolution = resolve_cusp(self.order, point)
                if resolution.bubble is None or resolution.root > self.bound:
                    continue
                if not self.dominated(resolution.bubble):
                    self.accept(resolution.bubble)
                continue
            resolution = resolve_cusp(self.order, point)
            if resolution.bubble is None:
                logger.info(f"Singular cusp at {list(point)} with ideal index {resolution.index}")
                self.singular.append(singular_cusp(self.order, point, resolution.index))
            else:
                self.accept(resolution.bubble)
        return self


def _facets_over(pool, polytope, cap, inconclusive):
    facets = {}
    for bubble in pool:
        peers = [b for b in pool if b is not bubble and disks_meet(bubble, b)]
        if any(exclusion_test(bubble, b) for b in peers):
            continue
        verdict = under_spheres(bubble, peers, polytope, cap)
        if verdict.status == WITNESS:
            facets[bubble] = verdict.point
        elif verdict.status == INCONCLUSIVE:
            inconclusive.append(bubble)
    return facets


def _shortest_monoid(order, rows):
    lattice = Lattice(rows, order.algebra.bigform_metric())
    minimum, _ = lattice.minimal_vectors()
    for factor in (1, 2, 3, 4):
        found = []
        for vector, norm in lattice.enumerate_by_norm(minimum * factor):
            x = order.algebra.from_coords(vector)
            if norm and x.is_monoid():
                found.append((norm, x))
        if found:
            least = min(norm for norm, _ in found)
            return [x for norm, x in found if norm == least]
    return []


def ideal_class_certificate(order, rows1, rows2):
    """x with J1 x = J2 for left ideals given by HNF rows, or None when none is found."""
    first = _shortest_monoid(order, rows1)
    if not first:
        return None
    j = first[0]
    elements = [order.algebra.from_coords(row) for row in rows1]
    target = matrices.hnf_fraction_rows(rows2, order.rank)
    for other in _shortest_monoid(order, rows2):
        x = j.inverse() * other
        if order.module([y * x for y in elements]) == target:
            return x
    return None


def classify_cusps(domain):
    """Infinity plus one class per ideal class among the singular cusps."""
    order = domain.order
    classes = [CuspClass('inf', 'infinity', [b.center for b in domain.representatives], 1, {})]
    buckets = []
    for cusp in domain.singular:
        rows = cusp_ideal(order, cusp.center)
        for bucket in buckets:
            if ideal_class_certificate(order, bucket[0], rows) is not None:
                bucket[1].append(cusp)
                break
        else:
            buckets.append((rows, [cusp]))
    for rows, members in buckets:
        head = members[0]
        classes.append(CuspClass(head.center, 'singular', [m.center for m in members], head.index, head.factorization))
    return classes


def facet_bubbles(order, bound=None, cell=None, region=None, units=None, cap=None):
    """
    The fundamental domain verified to ``bound``: bubbles swept by denominator
    norm, pruned by exclusion and the under-spheres LP, then re-tested against
    all survivors over the cell and over ``region``.
    """
    bound = bound if bound is not None else getattr(settings, 'BIANCHI_DENOMINATOR_NORM_BOUND', 10)
    stabilizer = InftyStabilizer(order, units)
    cell = cell or stabilizer.dirichlet_cell()
    region = region or cell
    search = BubbleSearch(order, stabilizer, cell, bound, cap).run()
    domain = FundamentalDomain(order, stabilizer, cell, region, bound)
    domain.inconclusive = list(search.inconclusive)

    center, radius_sq = cell.bounding_ball(stabilizer.metric)
    pool, origin = {}, {}
    for rep in search.survivors:
        for image in search.images(rep):
            pool.setdefault(image.key, image)
            origin.setdefault(image.key, rep)
    over_cell = _facets_over(list(pool.values()), cell, cap, domain.inconclusive)
    kept = {origin[b.key] for b in over_cell}
    domain.origins = {key: rep for key, rep in origin.items() if rep in kept}
    domain.witnesses = dict(over_cell)
    domain.representatives = [rep for rep in search.survivors if rep in kept]
    for rep in domain.representatives:
        try:
            rep.crossing, rep.tidy = crossing_matrix(order, rep)
        except LiftNotFoundError:
            logger.warning(f"No crossing matrix for {rep!r}")

    if region is cell:
        facets = over_cell
        cover = [b for b in domain.cover_near(cell) if b in facets]
    else:
        cover = domain.cover_near(region)
        facets = _facets_over(cover, region, cap, domain.inconclusive)
        cover = [b for b in cover if b in facets]
    for bubble in cover:
        try:
            matrix, tidy = crossing_matrix(order, bubble)
            bubble.crossing, bubble.tidy = matrix, tidy
        except LiftNotFoundError:
            pass
    domain.bubbles = sorted(cover, key=lambda b: (-b.radius_sq, b.center))
    domain.witnesses.update({b: facets[b] for b in domain.bubbles})

    singular = {}
    for cusp in search.singular:
        singular.setdefault(stabilizer.orbit_key(cusp.center, cell), cusp)
    domain.singular = list(singular.values())
    domain.cusp_classes = classify_cusps(domain)
    logger.info(
        f"Domain of {order!r} to bound {bound}: {len(domain.bubbles)} facet bubbles, "
        f"{len(domain.representatives)} orbits, {len(domain.cusp_classes)} cusp classes"
    )
    return domain


def candidate_cusps(order, bound, region=None, units=None):
    """
    Bubbles of unimodular cusps with nrd(mu) <= bound that may reach the prism
    over ``region``, with no domination pruning, deduplicated by center.
    """
    if bound < 1:
        return []
    stabilizer = InftyStabilizer(order, units)
    cell = stabilizer.dirichlet_cell()
    region = region or cell
    center, radius_sq = region.bounding_ball(stabilizer.metric)
    found = {}
    for n, point in candidate_centers(stabilizer, cell, bound):
        resolution = resolve_cusp(order, point)
        if resolution.bubble is None or resolution.root > bound:
            continue
        for image, _ in stabilizer.bubble_images(resolution.bubble, center, 2 * radius_sq + 2 * resolution.bubble.radius_sq):
            found.setdefault(image.center, image)
    return sorted(found.values(), key=lambda b: (1 / b.radius_sq, b.center))


def cusp_classes(order, bound=None, cell=None, units=None):
    return facet_bubbles(order, bound, cell=cell, units=units).cusp_classes


# points

def reduce_point(domain, point, cap=200):
    """
    Move an interior point into the closed domain: translate and rotate it into
    the cell, and when it sits under a facet bubble apply that bubble's
    crossing matrix, until it is above every bubble.

    Returns:
        Reduction(point, element, steps, heights) with element * P = point
    """
    stabilizer = domain.stabilizer
    algebra = domain.order.algebra
    cover = [b for b in domain.cover_near(domain.cell) if b.crossing is not None]
    element = SL2Element.identity(algebra)
    heights = [point.height_sq]
    for step in range(cap):
        move = stabilizer.reduce(point.coords(), domain.cell)
        g = stabilizer.element(move)
        point = HPoint(algebra.paravector(move.image), point.height_sq)
        element = g * element
        under = next((b for b in cover if b.covers(point)), None)
        if under is None:
            return Reduction(point, element, step, heights)
        point = under.crossing.apply(point)
        element = under.crossing * element
        heights.append(point.height_sq)
    raise ReductionError(f"Point reduction did not finish in {cap} steps")


def coverage(domain, count=64, seed=None):
    """Random rational points of the cell that no facet bubble strictly covers."""
    rng = random.Random(seed if seed is not None else getattr(settings, 'BIANCHI_RANDOM_SEED', 0))
    cover = domain.cover_near(domain.cell)
    samples = domain.cell.sample(count, rng)
    uncovered = [x for x in samples if not any(b.height_sq_at(x) > 0 for b in cover)]
    return Coverage(len(samples), uncovered)


def grid_verdict(h0, cover, region=None, resolution=32):
    """
    Float scan of the points of (1/resolution) Z^n in h0's disk and ``region``:
    WITNESS with the first point where h0 is strictly highest, DOMINATED when
    there is none.
    """
    metric = [float(g) for g in h0.algebra.paravector_metric()]
    center = [float(c) for c in h0.center]
    radius_sq = float(h0.radius_sq)
    lo = [c - sqrt(radius_sq / g) for g, c in zip(metric, center)]
    hi = [c + sqrt(radius_sq / g) for g, c in zip(metric, center)]
    walls = []
    if region is not None:
        box_lo, box_hi = region.bounding_box()
        lo = [max(a, float(b)) for a, b in zip(lo, box_lo)]
        hi = [min(a, float(b)) for a, b in zip(hi, box_hi)]
        walls = [([float(x) for x in normal], float(offset)) for normal, offset in region.halfspaces]
    peers = [([float(c) for c in b.center], float(b.radius_sq)) for b in cover if b is not h0]

    def height_sq(x, c, r_sq):
        return r_sq - sum(g * (a - b) ** 2 for g, a, b in zip(metric, x, c))

    axes = [[k / resolution for k in range(ceil(a * resolution), floor(b * resolution) + 1)] for a, b in zip(lo, hi)]
    for x in product(*axes):
        if any(sum(a * b for a, b in zip(normal, x)) > offset + GRID_TOLERANCE for normal, offset in walls):
            continue
        own = height_sq(x, center, radius_sq)
        if own <= GRID_TOLERANCE:
            continue
        if all(own > height_sq(x, c, r_sq) + GRID_TOLERANCE for c, r_sq in peers):
            return GridVerdict(WITNESS, x)
    return GridVerdict(DOMINATED, None)


def domination_instances(domain):
    """(h0, peers) for every bubble near the domain's region, posed as the facet search poses them."""
    pool = domain.cover_near(domain.region)
    return [(b, [o for o in pool if o is not b and disks_meet(b, o)]) for b in pool]


def grid_disagreements(domain, resolution=32, cap=None):
    """Instances where the exact verdict and the grid verdict differ; inconclusive runs are skipped."""
    found = []
    instances = domination_instances(domain)
    for bubble, peers in instances:
        exact = under_spheres(bubble, peers, domain.region, cap)
        if exact.status == INCONCLUSIVE:
            continue
        grid = grid_verdict(bubble, peers, domain.region, resolution)
        if grid.status != exact.status:
            logger.warning(f"{bubble!r}: exact verdict {exact.status}, grid verdict {grid.status}")
            found.append(Disagreement(bubble, exact.status, grid.status))
    logger.info(f"Grid oracle at 1/{resolution}: {len(instances)} instances, {len(found)} disagreements")
    return found


def deephole_cover_check(n, r1_sq, r2_sq, resolution=4):
    """
    Every a in [0, 1/2]^n has |a|^2 <= r1_sq or |a - h|^2 <= r2_sq, h = (1/2, ..., 1/2),
    when r1_sq + r2_sq = n/4: symbolically, because each coordinate adds at most
    1/4 to |a|^2 + |a - h|^2, and on a rational grid.
    """
    r1_sq, r2_sq = Fraction(r1_sq), Fraction(r2_sq)
    if r1_sq + r2_sq != Fraction(n, 4):
        raise ParseError(f"Need r1^2 + r2^2 = {Fraction(n, 4)}, got {r1_sq + r2_sq}")
    x = Symbol('x', real=True)
    per_coordinate = maximum(x ** 2 + (x - Rational(1, 2)) ** 2, x, Interval(0, Rational(1, 2)))
    if per_coordinate != Rational(1, 4):
        return False
    grid = [Fraction(k, 2 * resolution) for k in range(resolution + 1)]
    half = Fraction(1, 2)
    for a in product(grid, repeat=n):
        near = sum((t * t for t in a), Fraction(0))
        far = sum(((t - half) ** 2 for t in a), Fraction(0))
        if near > r1_sq and far > r2_sq:
            return False
    return True
