"""
Integral Bott periodicity.

phi:  Clf(q) -> Clf(q + x^2)_+,        v+ + v-  ->  v+ + v- e
iota: M2(Clf(q)) -> Clf(q - yz),       [[a, b], [c, d]]  ->  a~ fg + b~ f + c~ g + d~ gf
psi = phi o iota: M2(Clf(q)) -> Clf(q - yz + x^2)_+

with e^2 = -1, f^2 = g^2 = 0, fg + gf = 1 and x~ = x+ + x- u, u = fg - gf.

The targets are not diagonal, so they are built as ``TableAlgebra``: generators
with given squares and anticommutators, monomials normal-ordered by rewriting.
Source generators keep their bits, new generators take the next ones, so an
element of the source is an element of every target with the same masks.
"""
import logging
import random
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from itertools import product

from django.conf import settings
from sympy import Poly, Rational, symbols

from .algebra import AlgebraMixin, CliffordAlgebra, CliffordElement, DiagonalForm, mask_indices, popcount
from .exceptions import NotParavectorError, ParseError, RankCapError
from .mobius import SL2Element, inversion, translation
from . import matrices

logger = logging.getLogger(__name__)

BottCheck = namedtuple('BottCheck', ['name', 'passed', 'samples'])
Decomposition = namedtuple('Decomposition', ['algebra', 'u', 'v', 'u_algebra', 'v_algebra', 'images', 'unimodular'])

EXHAUSTIVE_ARITY = 3


class TableAlgebra(AlgebraMixin):
    """
    The Clifford algebra of a non-diagonal form, given by generator squares and
    the anticommutators gamma_i gamma_j + gamma_j gamma_i (zero when absent).

    Basis elements are bitmasks of increasing generator products, as in
    ``CliffordAlgebra``.
    """

    def __init__(self, names, squares, anticommutators=None, max_arity=None):
        cap = max_arity if max_arity is not None else getattr(settings, 'BIANCHI_MAX_ARITY', 9) + 3
        if len(names) > cap:
            raise RankCapError(f"Arity {len(names)} exceeds the cap {cap}")
        if len(names) != len(squares):
            raise ParseError("Every generator needs a square")
        self.names = tuple(names)
        self.squares = tuple(Fraction(s) for s in squares)
        self.anticommutators = {
            (min(i, j), max(i, j)): Fraction(value)
            for (i, j), value in (anticommutators or {}).items() if value
        }
        self.arity = len(self.names)
        self.rank = 1 << self.arity
        self.key = ('table', self.names, self.squares, tuple(sorted(self.anticommutators.items())))
        self._normal_forms = {}
        self._products = {}

    def __eq__(self, other):
        return isinstance(other, TableAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TableAlgebra({', '.join(self.names)})"

    def label(self, mask):
        if not mask:
            return '1'
        return '.'.join(self.names[i - 1] for i in mask_indices(mask))

    def presentation(self):
        return list(self.names), list(self.squares), dict(self.anticommutators)

    def _normal(self, word):
        """{sorted word: coefficient} equal to the product of the generators in ``word``."""
        cached = self._normal_forms.get(word)
        if cached is not None:
            return cached
        result = {word: Fraction(1)}
        for k in range(len(word) - 1):
            x, y = word[k], word[k + 1]
            if x < y:
                continue
            rest = word[:k] + word[k + 2:]
            if x == y:
                result = {w: c * self.squares[x] for w, c in self._normal(rest).items()}
            else:
                result = {w: -c for w, c in self._normal(word[:k] + (y, x) + word[k + 2:]).items()}
                anti = self.anticommutators.get((y, x))
                if anti:
                    for w, c in self._normal(rest).items():
                        result[w] = result.get(w, Fraction(0)) + anti * c
            break
        result = {w: c for w, c in result.items() if c}
        self._normal_forms[word] = result
        return result

    @staticmethod
    def _word(mask):
        return tuple(i - 1 for i in mask_indices(mask))

    @staticmethod
    def _mask(word):
        return sum(1 << i for i in word)

    def basis_product(self, a, b):
        cached = self._products.get((a, b))
        if cached is None:
            normal = self._normal(self._word(a) + self._word(b))
            cached = tuple((self._mask(w), c) for w, c in normal.items())
            self._products[(a, b)] = cached
        return cached

    def transpose_basis(self, mask):
        normal = self._normal(tuple(reversed(self._word(mask))))
        return tuple((self._mask(w), c) for w, c in normal.items())


def presentation_of(algebra):
    """(names, squares, anticommutators) of a diagonal or table algebra."""
    if isinstance(algebra, TableAlgebra):
        return algebra.presentation()
    names = [f"i{k + 1}" for k in range(algebra.arity)]
    return names, [-d for d in algebra.form.coefficients], {}


@lru_cache(maxsize=None)
def phi_target(algebra):
    """Clf(q + x^2): one more generator e with e^2 = -1."""
    names, squares, anti = presentation_of(algebra)
    return TableAlgebra(names + ['e'], squares + [-1], anti)


@lru_cache(maxsize=None)
def iota_target(algebra):
    """Clf(q - yz): generators f, g with f^2 = g^2 = 0 and fg + gf = 1."""
    names, squares, anti = presentation_of(algebra)
    m = len(names)
    anti = dict(anti)
    anti[(m, m + 1)] = Fraction(1)
    return TableAlgebra(names + ['f', 'g'], squares + [0, 0], anti)


def psi_target(algebra):
    return phi_target(iota_target(algebra))


def lift(x, target):
    """The same masks read in an algebra that extends x's generators."""
    return CliffordElement(target, x.coeffs)


def phi(x):
    parts = x.graded()
    target = phi_target(x.algebra)
    e = target.gen(target.arity)
    return lift(parts.even, target) + lift(parts.odd, target) * e


def _hyperbolic_units(target, arity):
    f = target.gen(arity + 1)
    g = target.gen(arity + 2)
    return f, g, f * g, g * f


def tilde(x, target):
    f, g, fg, gf = _hyperbolic_units(target, x.algebra.arity)
    parts = x.graded()
    return lift(parts.even, target) + lift(parts.odd, target) * (fg - gf)


def iota(matrix):
    algebra = matrix.algebra
    target = iota_target(algebra)
    f, g, fg, gf = _hyperbolic_units(target, algebra.arity)
    a, b, c, d = matrix.entries()
    return tilde(a, target) * fg + tilde(b, target) * f + tilde(c, target) * g + tilde(d, target) * gf


def psi(matrix):
    return phi(iota(matrix))


# matrix involutions transported by iota

def matrix_parity(matrix):
    """A^sigma = [[a', -b'], [-c', d']], sent by iota to the parity of iota(A)."""
    a, b, c, d = matrix.entries()
    return SL2Element(a.parity(), -b.parity(), -c.parity(), d.parity(), algebra=matrix.algebra)


def matrix_transpose(matrix):
    """A^tau = [[conj d, conj b], [conj c, conj a]], sent by iota to the transpose of iota(A)."""
    a, b, c, d = matrix.entries()
    return SL2Element(d.conjugate(), b.conjugate(), c.conjugate(), a.conjugate(), algebra=matrix.algebra)


def adjugate(matrix):
    """Adj A = [[d*, -b*], [-c*, a*]]."""
    return matrix.inverse()


# samples

def _random_element(algebra, rng, terms=3):
    masks = rng.sample(range(algebra.rank), min(terms, algebra.rank))
    return CliffordElement(algebra, {m: rng.randint(-3, 3) for m in masks})


def _random_matrix(algebra, rng):
    return SL2Element(*(_random_element(algebra, rng) for _ in range(4)), algebra=algebra)


def random_member(algebra, rng, length=4):
    """A word in integral translations and S, hence a member of SL2(Z[gamma])."""
    result = SL2Element.identity(algebra)
    s = inversion(algebra)
    for _ in range(length):
        v = algebra.paravector([rng.randint(-2, 2) for _ in range(algebra.arity + 1)])
        result = result * translation(v) * s
    return result


def spanning_elements(algebra):
    return [algebra.basis_element(m) for m in range(algebra.rank)]


def spanning_matrices(algebra):
    """Matrix units times basis elements, a Z-basis of M2(Clf(q))."""
    zero = algebra.zero()
    found = []
    for position in range(4):
        for x in spanning_elements(algebra):
            entries = [zero] * 4
            entries[position] = x
            found.append(SL2Element(*entries, algebra=algebra))
    return found


def _pairs(items, rng, samples, exhaustive):
    if exhaustive:
        return list(product(items, repeat=2))
    return [(rng.choice(items), rng.choice(items)) for _ in range(samples)]


def _vector_masks(algebra):
    return {1 << k for k in range(algebra.arity)}


def psi_checks(algebra, samples=None, seed=None):
    """
    The identities of the Bott maps over ``algebra``: exhaustive on basis pairs
    up to arity 3, on random pairs above.
    """
    samples = samples or getattr(settings, 'BIANCHI_BOTT_SAMPLES', 200)
    rng = random.Random(seed if seed is not None else getattr(settings, 'BIANCHI_RANDOM_SEED', 0))
    exhaustive = algebra.arity <= EXHAUSTIVE_ARITY
    checks = []

    def record(name, results):
        results = list(results)
        passed = all(results)
        if not passed:
            logger.error(f"Bott identity {name} fails over {algebra!r}")
        checks.append(BottCheck(name, passed, len(results)))

    one = algebra.one()
    identity = SL2Element.identity(algebra)
    record('identity', [phi(one) == 1, iota(identity) == 1, psi(identity) == 1])

    elements = spanning_elements(algebra) if exhaustive else [_random_element(algebra, rng) for _ in range(samples)]
    record('phi_homomorphism', (phi(x * y) == phi(x) * phi(y) for x, y in _pairs(elements, rng, samples, exhaustive)))
    record('phi_even', (phi(x).parity() == phi(x) for x in elements))
    record('phi_involutions', (
        phi(x.parity()) == phi(x.transpose()).transpose() and phi(x.conjugate()) == phi(x).transpose()
        for x in elements
    ))

    mats = spanning_matrices(algebra) if exhaustive else [_random_matrix(algebra, rng) for _ in range(samples)]
    record('iota_homomorphism', (iota(x * y) == iota(x) * iota(y) for x, y in _pairs(mats, rng, samples, exhaustive)))
    record('iota_involutions', (
        iota(matrix_parity(m)) == iota(m).parity()
        and iota(matrix_transpose(m)) == iota(m).transpose()
        and iota(adjugate(m)) == iota(m).conjugate()
        for m in mats
    ))
    record('psi_homomorphism', (psi(x * y) == psi(x) * psi(y) for x, y in _pairs(mats, rng, samples, exhaustive)))
    record('psi_adjoint', (psi(adjugate(m)) == psi(m).transpose() for m in mats))

    rows = [psi(m).coords() for m in spanning_matrices(algebra)]
    record('psi_injective', [matrices.rank(rows) == 4 * algebra.rank])

    members = [inversion(algebra)] + [random_member(algebra, rng) for _ in range(min(samples, 50))]
    target = psi_target(algebra)
    vectors = [target.basis_element(m) for m in sorted(_vector_masks(target))]
    images = [psi(m) for m in members]
    record('spinor_norm', (x * x.transpose() == 1 for x in images))
    record('spin_even', (x.parity() == x for x in images))
    record('vector_stable', (
        set((x * w * x.transpose()).coeffs) <= _vector_masks(target)
        for x in images for w in vectors
    ))
    logger.info(f"Bott checks over {algebra!r}: {sum(c.passed for c in checks)}/{len(checks)} pass")
    return checks


# decomposition lemma

def decomposition_iso(algebra, u=(1, 2)):
    """
    Clf(q) = Clf(q|U) (x) Clf(-disc(U) q|V) for U spanned by two generators:
    gamma_i -> gamma_i (x) 1 for i in U and gamma_v -> delta gamma_v for the
    others, delta = gamma_u1 gamma_u2.
    """
    first, second = u
    if len(set(u)) != 2 or not all(1 <= i <= algebra.arity for i in u):
        raise ParseError(f"U must be two distinct generators of {algebra!r}, got {u}")
    d = algebra.form.coefficients
    disc = d[first - 1] * d[second - 1]
    rest = [i for i in range(1, algebra.arity + 1) if i not in u]
    delta = algebra.gen(first) * algebra.gen(second)
    images = {f"u{k + 1}": algebra.gen(i) for k, i in enumerate(u)}
    for k, i in enumerate(rest):
        images[f"v{k + 1}"] = delta * algebra.gen(i)
    u_algebra = CliffordAlgebra(DiagonalForm([d[first - 1], d[second - 1]]))
    v_algebra = CliffordAlgebra(DiagonalForm([-disc * d[i - 1] for i in rest], allow_indefinite=True))
    return Decomposition(algebra, tuple(u), tuple(rest), u_algebra, v_algebra, images, abs(disc) == 1)


def verify_decomposition(data):
    """The images satisfy both factors' relations, commute across factors and span Clf(q)."""
    images = data.images
    u_images = [images[f"u{k + 1}"] for k in range(2)]
    v_images = [images[f"v{k + 1}"] for k in range(len(data.v))]
    for x, coefficient in zip(u_images, data.u_algebra.form.coefficients):
        if x * x != -coefficient:
            return False
    for x, coefficient in zip(v_images, data.v_algebra.form.coefficients):
        if x * x != -coefficient:
            return False
    for block in (u_images, v_images):
        for i, x in enumerate(block):
            for y in block[i + 1:]:
                if x * y + y * x:
                    return False
    if any(x * y != y * x for x in u_images for y in v_images):
        return False
    one = data.algebra.one()
    spanning = []
    for mask_u in range(4):
        left = one
        for i in mask_indices(mask_u):
            left = left * u_images[i - 1]
        for mask_v in range(1 << len(v_images)):
            right = one
            for i in mask_indices(mask_v):
                right = right * v_images[i - 1]
            spanning.append((left * right).coords())
    return matrices.rank(spanning) == data.algebra.rank


def central_element(algebra):
    """gamma_1 ... gamma_m, central when m is odd."""
    result = algebra.one()
    for i in range(1, algebra.arity + 1):
        result = result * algebra.gen(i)
    return result


# Pauli matrices and the orthogonal representation

class PauliFrame:
    """
    tau_0 .. tau_{n+1} with sum y_j tau_j = [[y_{n+1} + y_n, conj y], [y, y_{n+1} - y_n]]
    for the paravector y = y_0 + y_1 gamma_1 + ..., n = arity + 1.
    """

    def __init__(self, algebra):
        self.algebra = algebra
        self.n = algebra.arity + 1
        zero, one = algebra.zero(), algebra.one()
        self.matrices = []
        for mask in algebra.paravector_masks():
            e = algebra.basis_element(mask)
            self.matrices.append(SL2Element(zero, e.conjugate(), e, zero, algebra=algebra))
        self.matrices.append(SL2Element(one, zero, zero, -one, algebra=algebra))
        self.matrices.append(SL2Element(one, zero, zero, one, algebra=algebra))

    def __len__(self):
        return len(self.matrices)

    def gram(self):
        """Q(y) = y_{n+1}^2 - y_n^2 - sum d_j y_j^2 as a diagonal Gram matrix."""
        diagonal = [-w for w in self.algebra.paravector_metric()] + [Fraction(-1), Fraction(1)]
        return [[diagonal[i] if i == j else Fraction(0) for j in range(len(diagonal))] for i in range(len(diagonal))]

    def quadratic_form(self, values):
        gram = self.gram()
        return sum((gram[i][i] * v * v for i, v in enumerate(values)), Fraction(0))

    def determinant_polynomials(self):
        """{mask: sympy expression} of Delta(sum y_j tau_j) = Y11 Y22* - Y12 Y21*."""
        ys = symbols(f"y0:{len(self)}")
        totals = {}
        for (j, left), (k, right) in product(enumerate(self.matrices), repeat=2):
            term = left.a * right.d.transpose() - left.b * right.c.transpose()
            for mask, c in term.coeffs.items():
                totals[mask] = totals.get(mask, 0) + Rational(c.numerator, c.denominator) * ys[j] * ys[k]
        return ys, totals

    def check(self):
        """det(sum y_j tau_j) = Q(y) as a polynomial identity."""
        ys, totals = self.determinant_polynomials()
        gram = self.gram()
        q = sum(Rational(gram[i][i].numerator, gram[i][i].denominator) * y ** 2 for i, y in enumerate(ys))
        if not Poly(totals.get(0, 0) - q, *ys).is_zero:
            return False
        return all(Poly(expr, *ys).is_zero for mask, expr in totals.items() if mask)

    def coordinates(self, matrix):
        """Coordinates of a Hermitian matrix in the frame."""
        alpha, beta, gamma, delta = matrix.entries()
        if not (alpha.is_scalar() and delta.is_scalar() and gamma.is_vector() and beta == gamma.conjugate()):
            raise NotParavectorError(f"{matrix!r} is not Clifford-Hermitian")
        a, d = alpha.scalar_part(), delta.scalar_part()
        return list(gamma.vector_coords()) + [(a - d) / 2, (a + d) / 2]


def _conjugation_images(matrix, basis):
    adjoint = matrix.adjoint_hermitian()
    return [matrix * y * adjoint for y in basis]


def orthogonal_rep(matrix, basis='pauli', order=None):
    """
    The matrix of Y -> M Y M^ddagger, columns the images of the basis: the Pauli
    frame, or with ``basis='integral'`` the basis E11, E22, [[0, conj v], [v, 0]]
    for v in a basis of Vec(O), where members of SL2(O) act integrally.
    """
    algebra = matrix.algebra
    frame = PauliFrame(algebra)
    if basis == 'pauli':
        columns = [frame.coordinates(y) for y in _conjugation_images(matrix, frame.matrices)]
    elif basis == 'integral':
        lattice = order.vectors_of()
        hermitian = integral_basis(order)
        columns = []
        for y in _conjugation_images(matrix, hermitian):
            coords = frame.coordinates(y)
            n = frame.n
            alpha = coords[n + 1] + coords[n]
            delta = coords[n + 1] - coords[n]
            columns.append([alpha, delta] + list(lattice.coordinates(coords[:n])))
    else:
        raise ParseError(f"Unknown basis {basis!r}")
    return matrices.transpose(columns)


def integral_basis(order):
    algebra = order.algebra
    zero, one = algebra.zero(), algebra.one()
    basis = [SL2Element(one, zero, zero, zero, algebra=algebra), SL2Element(zero, zero, zero, one, algebra=algebra)]
    for row in order.vectors_of().basis:
        v = algebra.paravector(row)
        basis.append(SL2Element(zero, v.conjugate(), v, zero, algebra=algebra))
    return basis


def integral_gram(order):
    """Q on (alpha, delta, Vec coordinates): alpha delta - nrd(y)."""
    lattice = order.vectors_of()
    size = 2 + len(lattice.basis)
    gram = [[Fraction(0)] * size for _ in range(size)]
    gram[0][1] = gram[1][0] = Fraction(1, 2)
    for i, u in enumerate(lattice.basis):
        for j, v in enumerate(lattice.basis):
            gram[2 + i][2 + j] = -lattice.inner(u, v)
    return gram


def preserves_form(rep, gram):
    return matrices.mat_mul(matrices.mat_mul(matrices.transpose(rep), gram), rep) == gram


def is_integral(rep):
    return all(Fraction(x).denominator == 1 for row in rep for x in row)


def rep_report(matrix, order=None):
    """Pauli matrix, its Q-preservation and, with an order, integrality in the integral basis."""
    frame = PauliFrame(matrix.algebra)
    pauli = orthogonal_rep(matrix)
    report = {
        'pauli': [[str(x) for x in row] for row in pauli],
        'preserves_q': preserves_form(pauli, frame.gram()),
        'determinant': str(matrices.determinant(pauli)),
    }
    if order is not None:
        integral = orthogonal_rep(matrix, 'integral', order)
        report['integral'] = [[str(x) for x in row] for row in integral]
        report['integral_entries'] = is_integral(integral)
        report['preserves_integral_q'] = preserves_form(integral, integral_gram(order))
    return report


def even_dimension_matches(algebra):
    """dim M2(Clf(q)) = dim Clf(q - yz + x^2)_+."""
    target = psi_target(algebra)
    return 4 * algebra.rank == sum(1 for m in range(target.rank) if not popcount(m) & 1)
