"""
Orders in rational Clifford algebras.

An order is stored through the canonical Hermite normal form of its Z-basis
(with one common denominator), so equality and hashing are HNF equality.
"""
import logging
from collections import namedtuple, deque
from fractions import Fraction
from itertools import product

from django.conf import settings
from sympy import factorint

from .algebra import CliffordAlgebra, DiagonalForm, TRANSPOSE, CONJUGATE
from .codes import BinaryCode
from .exceptions import NotAnOrderError, ParseError
from .lattices import Lattice
from . import matrices

logger = logging.getLogger(__name__)

Discriminant = namedtuple('Discriminant', ['value', 'factorization'])
ClosureResult = namedtuple('ClosureResult', ['order', 'witness', 'rounds'])

CHARPOLY_RANK = 32


def left_multiplication_matrix(x):
    """Rows are the images x * gamma_S of the basis, in mask coordinates."""
    algebra = x.algebra
    return [(x * algebra.basis_element(mask)).coords() for mask in range(algebra.rank)]


def minimal_polynomial(x):
    """Monic minimal polynomial over Q as coefficients [c0, ..., c_{k-1}, 1]."""
    power = x.algebra.one()
    rows = []
    while True:
        coords = power.coords()
        combination = matrices.solve_in_span(rows, coords)
        if combination is not None:
            return [-c for c in combination] + [Fraction(1)]
        rows.append(coords)
        power = power * x


def is_integral(x):
    """
    True iff x is integral over Z. Paravectors use trd and nrd; small algebras
    use the characteristic polynomial of left multiplication; large ones the
    minimal polynomial.
    """
    if x.is_vector():
        return x.trd().scalar_part().denominator == 1 and x.nrd().scalar_part().denominator == 1
    if x.algebra.rank <= CHARPOLY_RANK:
        coefficients = matrices.charpoly(left_multiplication_matrix(x))
    else:
        coefficients = minimal_polynomial(x)
    return all(c.denominator == 1 for c in coefficients)


class Order:
    """
    A full-rank subring of Clf(q), finitely generated over Z.

    The constructor only normalizes the basis; ``verify`` checks the ring axioms
    and integrality, and ``from_generators`` builds orders by ring closure.
    """

    def __init__(self, algebra, basis, label=None):
        rows = [x.coords() if hasattr(x, 'coords') else x for x in basis]
        den, int_rows = matrices.rational_hnf(rows, algebra.rank)
        if len(int_rows) != algebra.rank:
            raise NotAnOrderError(f"Module has rank {len(int_rows)}, expected {algebra.rank}")
        self.algebra = algebra
        self.denominator = den
        self.int_basis = [tuple(r) for r in int_rows]
        self.basis = [[Fraction(x, den) for x in r] for r in int_rows]
        self.elements = [algebra.from_coords(r) for r in self.basis]
        self.label = label
        self.key = (algebra.key, den, tuple(self.int_basis))
        self._inverse = None
        self._vectors = None
        self._discriminant = None
        self._structure = None

    @property
    def rank(self):
        return self.algebra.rank

    def __eq__(self, other):
        return isinstance(other, Order) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        name = self.label or f"index-{self.denominator} order"
        return f"<Order {name} in {self.algebra!r}>"

    # membership

    def coordinates(self, x):
        if self._inverse is None:
            self._inverse = matrices.inverse(self.basis)
        return matrices.vec_mat(x.coords(), self._inverse)

    def contains(self, x):
        return all(c.denominator == 1 for c in self.coordinates(x))

    def contains_order(self, other):
        return all(self.contains(x) for x in other.elements)

    def index_in(self, other):
        """[other : self] for an order ``other`` containing this one."""
        ratio = matrices.determinant(self.basis) / matrices.determinant(other.basis)
        ratio = abs(ratio)
        if ratio.denominator != 1:
            raise NotAnOrderError(f"{self!r} is not contained in {other!r}")
        return int(ratio)

    # structure

    def structure_constants(self):
        """P[k][j] = Z-coordinates of b_k * b_j in this basis (integers for an order)."""
        if self._structure is None:
            table = []
            for bk in self.elements:
                row = []
                for bj in self.elements:
                    coords = self.coordinates(bk * bj)
                    if any(c.denominator != 1 for c in coords):
                        raise NotAnOrderError(f"{self!r} is not closed under multiplication", bk * bj)
                    row.append([int(c) for c in coords])
                table.append(row)
            self._structure = table
        return self._structure

    def verify(self):
        """Check 1 in O, closure on basis pairs and integrality of each basis element."""
        if not self.contains(self.algebra.one()):
            raise NotAnOrderError(f"{self!r} does not contain 1", self.algebra.one())
        self.structure_constants()
        for x in self.elements:
            if not is_integral(x):
                raise NotAnOrderError(f"{x} is not integral", x)
        return True

    def discriminant(self):
        """det(tr(b_i b_j)) for the left-regular trace tr(x) = 2^m * scalar part."""
        if self._discriminant is None:
            scale = self.algebra.rank
            pairing = [[scale * (bi * bj).scalar_part() for bj in self.elements] for bi in self.elements]
            value = matrices.determinant(pairing)
            if value.denominator != 1:
                raise NotAnOrderError(f"{self!r} has a non-integral discriminant {value}")
            value = int(value)
            self._discriminant = Discriminant(value, dict(factorint(abs(value))) if value else {})
        return self._discriminant

    # involutions

    def involution_image(self, kind):
        return Order(self.algebra, [x.involution(kind) for x in self.elements])

    def is_star_stable(self):
        return self.involution_image(TRANSPOSE) == self

    def is_clifford_stable(self):
        return self.is_star_stable() and self.involution_image(CONJUGATE) == self

    # ideals

    def module(self, elements):
        """Canonical rows of the Z-module spanned by ``elements``."""
        return matrices.hnf_fraction_rows([x.coords() for x in elements], self.rank)

    def right_ideal(self, generators):
        return self.module([x * b for x in generators for b in self.elements])

    def left_ideal(self, generators):
        return self.module([b * x for x in generators for b in self.elements])

    def ideal_index(self, rows):
        """[O : I] for a full-rank submodule I given by rows."""
        if len(rows) != self.rank:
            return 0
        ratio = abs(matrices.determinant(rows) / matrices.determinant(self.basis))
        return 1 / ratio if ratio else 0

    # vectors

    def vectors_of(self):
        """Vec(O) = O cap V as a lattice in paravector coordinates with metric diag(1, d_i)."""
        if self._vectors is None:
            para = self.algebra.paravector_masks()
            rest = [m for m in range(self.rank) if m not in para]
            order = para + rest
            permuted = [[row[m] for m in order] for row in self.basis]
            den, hnf = matrices.rational_hnf(permuted, self.rank)
            # lower triangular row HNF: its first n rows vanish outside the paravector block
            n = len(para)
            rows = [[Fraction(x, den) for x in r[:n]] for r in hnf[:n] if not any(r[n:])]
            self._vectors = Lattice(rows, self.algebra.paravector_metric())
        return self._vectors

    def to_json(self):
        return {
            'form': self.algebra.form.to_json(),
            'basis': [[str(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, payload, label=None):
        try:
            algebra = CliffordAlgebra(DiagonalForm(payload['form']))
            order = cls(algebra, [[Fraction(x) for x in row] for row in payload['basis']], label=label)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"Bad order JSON: {exc}") from exc
        order.verify()
        return order


def clifford_order(algebra):
    """Z[gamma_1, ..., gamma_m]: the span of all basis monomials."""
    order = Order(algebra, [algebra.basis_element(m) for m in range(algebra.rank)])
    order.label = 'Clifford order'
    return order


def ring_closure(algebra, rows, generators, cap=None):
    """
    Smallest ring containing the module ``rows`` and ``generators``, built by
    right-multiplying the running module by the generators until it is stable.
    Stops with a witness when an element fails the integrality test.

    Returns:
        ClosureResult: order (None on failure), witness, rounds used
    """
    factor = getattr(settings, 'BIANCHI_CLOSURE_ITERATION_FACTOR', 2)
    cap = cap or factor * algebra.rank
    start = [list(r) for r in rows] + [g.coords() for g in generators] + [algebra.one().coords()]
    current = matrices.hnf_fraction_rows(start, algebra.rank)
    for g in generators:
        if not is_integral(g):
            logger.warning(f"Ring closure stopped: generator {g} is not integral")
            return ClosureResult(None, g, 0)
    for rounds in range(1, cap + 1):
        if len(current) != algebra.rank:
            inverse = None
        else:
            inverse = matrices.inverse(current)
        fresh = []
        for row in current:
            x = algebra.from_coords(row)
            for g in generators:
                y = x * g
                if inverse is not None:
                    coords = matrices.vec_mat(y.coords(), inverse)
                    if all(c.denominator == 1 for c in coords):
                        continue
                if not is_integral(y):
                    logger.warning(f"Ring closure stopped after {rounds} rounds: {y} is not integral")
                    return ClosureResult(None, y, rounds)
                fresh.append(y.coords())
        if not fresh:
            if len(current) != algebra.rank:
                return ClosureResult(None, None, rounds)
            return ClosureResult(Order(algebra, current), None, rounds)
        current = matrices.hnf_fraction_rows(current + fresh, algebra.rank)
        logger.debug(f"Ring closure round {rounds}: {len(fresh)} new products")
    logger.warning(f"Ring closure hit its cap of {cap} rounds")
    return ClosureResult(None, None, cap)


def order_from_generators(algebra, generators, base=None, label=None):
    """
    The ring generated by ``base`` (default: the Clifford order) and ``generators``.

    Raises:
        NotAnOrderError: when the closure meets a non-integral element
    """
    if base is None:
        rows = [algebra.basis_element(m).coords() for m in range(algebra.rank)]
        ring_generators = [algebra.gen(i) for i in range(1, algebra.arity + 1)]
    else:
        rows = base.basis
        ring_generators = list(base.elements)
    generators = [algebra.parse(g) for g in generators]
    result = ring_closure(algebra, rows, ring_generators + generators)
    if result.order is None:
        raise NotAnOrderError("Generators do not close up to an order", result.witness)
    result.order.label = label
    return result.order


def discriminant(order):
    return order.discriminant()


def is_star_stable(order):
    return order.is_star_stable()


def involution_image(order, kind):
    return order.involution_image(kind)


def vectors_of(order):
    return order.vectors_of()


def clifford_conjugate(order, v):
    """The order v^{-1} O v for an invertible element v."""
    inverse = v.inverse()
    return Order(order.algebra, [inverse * x * v for x in order.elements])


def code_of(order):
    """
    The doubly even code C with Vec(O) = (1/2) Lambda_C, read off from 2 Vec(O) mod 2.
    Coordinate 0 is the scalar 1 and coordinate j the generator i_j.
    """
    algebra = order.algebra
    if any(d != 1 for d in algebra.form.coefficients):
        raise NotAnOrderError("Codes are defined for the all -1 forms only")
    for i in range(1, algebra.arity + 1):
        if not order.contains(algebra.gen(i)):
            raise NotAnOrderError(f"{order!r} does not contain i_{i}", algebra.gen(i))
    words = []
    for row in order.vectors_of().basis:
        doubled = [x * 2 for x in row]
        if any(x.denominator != 1 for x in doubled):
            raise NotAnOrderError(f"Vec(O) is not contained in (1/2)Z^n: {row}")
        words.append([int(x) % 2 for x in doubled])
    return BinaryCode(algebra.arity + 1, words)


# p-maximal orders

def _product_mod_p(structure, u, v, p):
    n = len(structure)
    out = [0] * n
    for k, uk in enumerate(u):
        if not uk:
            continue
        row = structure[k]
        for j, vj in enumerate(v):
            if not vj:
                continue
            coef = uk * vj
            for l, c in enumerate(row[j]):
                if c:
                    out[l] += coef * c
    return [x % p for x in out]


def _trace_of_power(structure, w, exponent):
    """Tr(L^exponent) for the integer left-multiplication matrix of sum w_k b_k."""
    n = len(structure)
    lifted = [[0] * n for _ in range(n)]
    for k, wk in enumerate(w):
        if wk:
            for j in range(n):
                for l, c in enumerate(structure[k][j]):
                    if c:
                        lifted[j][l] += wk * c
    power = matrices.zz_matrix(lifted) ** exponent
    return sum(int(power[i, i].element) for i in range(n))


def _traces_of_basis(structure):
    """Tr(L_{b_k}) for every basis element; the level-0 trace is linear in these."""
    n = len(structure)
    return [sum(structure[k][j][j] for j in range(n)) for k in range(n)]


def radical_mod_p(order, p):
    """
    F_p-basis (coordinate rows) of the Jacobson radical of O/pO, by the trace
    sequence I_{-1} = O/pO, I_i = {a in I_{i-1} : g_i(ab) = 0 for all b} with
    g_i(a) = Tr(L_a^{p^i}) / p^i mod p, for every i with p^i <= rank.
    """
    structure = order.structure_constants()
    n = len(structure)
    basis = [[int(i == j) for j in range(n)] for i in range(n)]
    unit_vectors = [[int(i == j) for j in range(n)] for i in range(n)]
    linear = _traces_of_basis(structure)
    level = 0
    while basis and p ** level <= n:
        exponent = p ** level
        pairing = []
        for u in basis:
            row = []
            for e in unit_vectors:
                w = _product_mod_p(structure, u, e, p)
                if level == 0:
                    row.append(sum(wk * t for wk, t in zip(w, linear)) % p)
                    continue
                trace = _trace_of_power(structure, w, exponent)
                if trace % exponent:
                    logger.error(f"Trace {trace} not divisible by {exponent} at level {level}")
                row.append((trace // exponent) % p)
            pairing.append(row)
        kernel = matrices.left_kernel_mod_p(pairing, p)
        basis = [
            [sum(a * u[j] for a, u in zip(alpha, basis)) % p for j in range(n)]
            for alpha in kernel
        ]
        logger.debug(f"Radical at p={p}, level {level}: dimension {len(basis)}")
        level += 1
    return basis


def _socle_candidates(order, p):
    """rad cap Ann_left(rad) cap Ann_right(rad) in O/pO, as coordinate rows."""
    structure = order.structure_constants()
    radical = radical_mod_p(order, p)
    if not radical:
        return []
    conditions = []
    for u in radical:
        row = []
        for r in radical:
            row.extend(_product_mod_p(structure, u, r, p))
            row.extend(_product_mod_p(structure, r, u, p))
        conditions.append(row)
    kernel = matrices.left_kernel_mod_p(conditions, p)
    n = len(structure)
    return [
        [sum(a * u[j] for a, u in zip(alpha, radical)) % p for j in range(n)]
        for alpha in kernel
    ]


def _projective_points(basis, p):
    """One vector per line of the F_p-span of ``basis``."""
    k = len(basis)
    n = len(basis[0]) if basis else 0
    for alpha in product(range(p), repeat=k):
        nonzero = [a for a in alpha if a]
        if not nonzero or nonzero[0] != 1:
            continue
        yield [sum(a * b[j] for a, b in zip(alpha, basis)) % p for j in range(n)]


def _module_key(algebra, rows):
    den, int_rows = matrices.rational_hnf(rows, algebra.rank)
    return (algebra.key, den, tuple(tuple(r) for r in int_rows))


def minimal_overorders(order, p, closures=None):
    """
    Every order O[y/p] with y + pO in the two-sided annihilator of the radical of
    O/pO. Each minimal overorder of p-power index has this shape.

    ``closures`` maps the HNF key of a module O + Z y/p to its ring closure (None
    on failure) and may be shared between calls.
    """
    algebra = order.algebra
    value = order.discriminant().value
    closures = {} if closures is None else closures
    overorders = []
    covered = []
    computed = 0
    for t in _projective_points(_socle_candidates(order, p), p):
        y = algebra.zero()
        for coef, b in zip(t, order.elements):
            if coef:
                y = y + b * coef
        z = y / p
        if any(o.contains(z) for o in covered):
            continue
        if not is_integral(z):
            continue
        key = _module_key(algebra, list(order.basis) + [z.coords()])
        if key not in closures:
            result = ring_closure(algebra, order.basis, list(order.elements) + [z])
            closures[key] = result.order
            computed += 1
        bigger = closures[key]
        if bigger is None:
            continue
        index = order.index_in(bigger)
        if value % (index * index):
            continue
        covered.append(bigger)
        if bigger not in overorders:
            overorders.append(bigger)
    logger.debug(f"p={p}: {len(overorders)} minimal overorders, {computed} new ring closures")
    return overorders


def p_maximal_orders(order, p):
    """
    All p-maximal orders containing ``order``: a breadth-first walk through
    minimal p-power overorders; the orders with no overorder are p-maximal.
    Ring closures are shared across the walk, so an order reached from several
    parents is closed once.
    """
    value = order.discriminant().value
    if value % (p * p):
        return [order]
    seen = {order.key: order}
    closures = {}
    queue = deque([order])
    maximal = []
    while queue:
        current = queue.popleft()
        bigger = minimal_overorders(current, p, closures)
        if not bigger:
            maximal.append(current)
            continue
        for o in bigger:
            if o.key not in seen:
                seen[o.key] = o
                queue.append(o)
        logger.info(
            f"p={p}: visited {len(seen)} orders, queue {len(queue)}, p-maximal {len(maximal)}, "
            f"{len(closures)} closures cached"
        )
    maximal.sort(key=lambda o: o.key)
    return maximal


def maximal_orders(order):
    """All maximal orders containing ``order``, as sums over p-maximal families."""
    factorization = order.discriminant().factorization
    primes = sorted(p for p, e in factorization.items() if e >= 2)
    families = [p_maximal_orders(order, p) for p in primes]
    logger.info(f"Maximal orders over primes {primes}: family sizes {[len(f) for f in families]}")
    results = []
    for choice in product(*families):
        rows = list(order.basis)
        for o in choice:
            rows += o.basis
        rows = matrices.hnf_fraction_rows(rows, order.rank)
        results.append(Order(order.algebra, rows))
    unique = sorted({o.key: o for o in results}.values(), key=lambda o: o.key)
    return unique
