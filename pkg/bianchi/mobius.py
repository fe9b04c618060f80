"""
SL2 over Clifford algebras and the Mobius action on hyperbolic space.

A point of H^{n+1} is kept as (boundary paravector, height squared); infinity is a
separate flag. All formulas stay rational: heights only ever appear squared.
"""
import logging
from collections import namedtuple
from fractions import Fraction

from .algebra import to_fraction
from .exceptions import NotMemberError, NotParavectorError, NotTidyError, ParseError

logger = logging.getLogger(__name__)

Membership = namedtuple('Membership', ['ok', 'failure', 'pseudodeterminant'])

MEMBERSHIP_CONDITIONS = (
    'entry_not_in_order',
    'entry_not_in_monoid',
    'pseudodeterminant',
    'ab_star',
    'cd_star',
    'derived_ca',
    'derived_bd',
)


class SL2Element:
    """
    The matrix [[a, b], [c, d]] over a Clifford algebra.

    Construction does not check membership; ``check`` runs the full test and
    ``verified`` raises NotMemberError on failure.
    """

    __slots__ = ('algebra', 'a', 'b', 'c', 'd')

    def __init__(self, a, b, c, d, algebra=None):
        algebra = algebra or next(x.algebra for x in (a, b, c, d) if hasattr(x, 'algebra'))
        self.algebra = algebra
        self.a, self.b, self.c, self.d = (self._entry(x) for x in (a, b, c, d))

    def _entry(self, x):
        if hasattr(x, 'algebra'):
            self.algebra.check_same(x.algebra)
            return x
        if isinstance(x, str):
            return self.algebra.parse(x)
        return self.algebra.scalar(x)

    @classmethod
    def identity(cls, algebra):
        return cls(1, 0, 0, 1, algebra=algebra)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other):
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return SL2Element(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, algebra=self.algebra)

    def __neg__(self):
        return SL2Element(-self.a, -self.b, -self.c, -self.d, algebra=self.algebra)

    def __pow__(self, exponent):
        base = self if exponent >= 0 else self.inverse()
        result = SL2Element.identity(self.algebra)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other):
        return isinstance(other, SL2Element) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    def pseudodeterminant(self):
        return self.a * self.d.transpose() - self.b * self.c.transpose()

    def inverse(self):
        """The adjoint [[d*, -b*], [-c*, a*]], a two-sided inverse for members."""
        return SL2Element(
            self.d.transpose(), -self.b.transpose(), -self.c.transpose(), self.a.transpose(),
            algebra=self.algebra,
        )

    def adjoint_hermitian(self):
        """M^ddagger = [[conj a, conj c], [conj b, conj d]], used on Hermitian matrices."""
        return SL2Element(
            self.a.conjugate(), self.c.conjugate(), self.b.conjugate(), self.d.conjugate(),
            algebra=self.algebra,
        )

    def is_identity(self):
        return self == SL2Element.identity(self.algebra)

    def is_projective_identity(self):
        """True for +I and -I, the identity of PSL2."""
        return self.is_identity() or (-self).is_identity()

    def projective_key(self):
        """A key identifying M and -M."""
        key = tuple(str(x) for x in self.entries())
        negated = tuple(str(x) for x in (-self).entries())
        return min(key, negated)

    def check(self, order=None):
        return sl2_check(self, order)

    def verified(self, order=None):
        report = sl2_check(self, order)
        if not report.ok:
            raise NotMemberError(f"{self!r} fails the SL2 test at {report.failure}", report)
        return self

    def apply(self, point):
        return mobius_apply(self, point, check=False)

    def evaluate(self, x):
        """g(x) = (ax + b)(cx + d)^{-1} for an algebra element x."""
        return (self.a * x + self.b) * (self.c * x + self.d).inverse()

    def to_json(self):
        return [str(x) for x in self.entries()]

    @classmethod
    def from_json(cls, algebra, payload):
        if not isinstance(payload, (list, tuple)) or len(payload) != 4:
            raise ParseError(f"A matrix is four element strings, got {payload!r}")
        return cls(*(algebra.parse(x) for x in payload), algebra=algebra)


def sl2_check(matrix, order=None):
    """
    Full membership test: entries in the order (when given) and in the monoid,
    pseudodeterminant 1, a b* and c d* paravectors, and the derived c* a, b* d.
    The report names the first failed condition.
    """
    a, b, c, d = matrix.entries()
    delta = matrix.pseudodeterminant()
    if order is not None and not all(order.contains(x) for x in (a, b, c, d)):
        return Membership(False, 'entry_not_in_order', delta)
    if not all(x.is_monoid() for x in (a, b, c, d)):
        return Membership(False, 'entry_not_in_monoid', delta)
    if delta != 1:
        return Membership(False, 'pseudodeterminant', delta)
    if not (a * b.transpose()).is_vector():
        return Membership(False, 'ab_star', delta)
    if not (c * d.transpose()).is_vector():
        return Membership(False, 'cd_star', delta)
    if not (c.transpose() * a).is_vector():
        return Membership(False, 'derived_ca', delta)
    if not (b.transpose() * d).is_vector():
        return Membership(False, 'derived_bd', delta)
    return Membership(True, None, delta)


def sl2_inverse(matrix):
    return matrix.verified().inverse()


def translation(v):
    """tau_v = [[1, v], [0, 1]]."""
    return SL2Element(1, v, 0, 1, algebra=v.algebra)


def rotation(t):
    """sigma_t = [[t, 0], [0, (t*)^{-1}]] for a unit t."""
    return SL2Element(t, 0, 0, t.transpose().inverse(), algebra=t.algebra)


def inversion(algebra):
    """S = [[0, 1], [-1, 0]]."""
    return SL2Element(0, 1, -1, 0, algebra=algebra)


class HPoint:
    """
    A point of H^{n+1} or of its boundary: boundary + i_n * height, stored as
    (boundary paravector, height squared). ``HPoint.infinity`` is the cusp at infinity.
    """

    __slots__ = ('algebra', 'boundary', 'height_sq', 'at_infinity')

    def __init__(self, boundary, height_sq=0, at_infinity=False, algebra=None):
        if at_infinity:
            self.algebra = algebra
            self.boundary = None
            self.height_sq = None
            self.at_infinity = True
            return
        if not hasattr(boundary, 'algebra'):
            boundary = algebra.paravector(boundary)
        if not boundary.is_vector():
            raise NotParavectorError(f"Point boundary {boundary} is not a paravector")
        self.algebra = boundary.algebra
        self.boundary = boundary
        self.height_sq = to_fraction(height_sq)
        if self.height_sq < 0:
            raise ParseError(f"Negative squared height {self.height_sq}")
        self.at_infinity = False

    @classmethod
    def infinity(cls, algebra):
        return cls(None, at_infinity=True, algebra=algebra)

    def is_interior(self):
        return not self.at_infinity and self.height_sq > 0

    def coords(self):
        return self.boundary.vector_coords()

    def reflected(self):
        """conj(P) on the boundary part, height kept."""
        return HPoint(self.boundary.conjugate(), self.height_sq)

    def translated(self, v):
        return HPoint(self.boundary + v, self.height_sq)

    def distance_sq_to(self, center):
        """Squared Euclidean distance from this point to the boundary point ``center``."""
        return (self.boundary - center).nrd().scalar_part() + self.height_sq

    def __eq__(self, other):
        if not isinstance(other, HPoint):
            return NotImplemented
        if self.at_infinity or other.at_infinity:
            return self.at_infinity == other.at_infinity
        return self.boundary == other.boundary and self.height_sq == other.height_sq

    def __hash__(self):
        if self.at_infinity:
            return hash('inf')
        return hash((self.boundary, self.height_sq))

    def __repr__(self):
        if self.at_infinity:
            return 'HPoint(inf)'
        return f"HPoint({self.boundary}, height_sq={self.height_sq})"

    def to_json(self):
        if self.at_infinity:
            return {'inf': True}
        return {'boundary': [str(x) for x in self.coords()], 'height_sq': str(self.height_sq)}

    @classmethod
    def from_json(cls, algebra, payload):
        if payload.get('inf'):
            return cls.infinity(algebra)
        try:
            return cls(algebra.paravector(payload['boundary']), payload.get('height_sq', 0))
        except KeyError as exc:
            raise ParseError(f"Bad point JSON: {exc}") from exc


def mobius_apply(matrix, point, check=True):
    """
    g(P) for a member g. Interior points use
    boundary' = ((az+b) conj(cz+d) + h^2 a conj(c)) / den and h'^2 = h^2 / den^2,
    den = nrd(cz+d) + h^2 nrd(c).
    """
    if check:
        matrix.verified()
    a, b, c, d = matrix.entries()
    algebra = matrix.algebra
    if point.at_infinity:
        if not c:
            return HPoint.infinity(algebra)
        image = a * c.inverse()
        if not image.is_vector():
            logger.error(f"g(inf) = {image} is not a paravector for {matrix!r}")
            raise NotParavectorError(f"g(inf) = {image} is not a paravector")
        return HPoint(image, 0)
    z, h2 = point.boundary, point.height_sq
    w = c * z + d
    den = w.nrd().scalar_part() + h2 * c.nrd().scalar_part()
    if den == 0:
        return HPoint.infinity(algebra)
    numerator = (a * z + b) * w.conjugate() + a * c.conjugate() * h2
    image = numerator / den
    if not image.is_vector():
        logger.error(f"Image boundary {image} is not a paravector for {matrix!r}")
        raise NotParavectorError(f"Image boundary {image} is not a paravector")
    return HPoint(image, h2 / (den * den))


def magic_formula_residual(matrix, x, y):
    """g(x) - g(y)* - Delta(g) (y c* + d*)^{-1} (x - y) (cx + d)^{-1}; zero for members."""
    a, b, c, d = matrix.entries()
    left = (y * c.transpose() + d.transpose()).inverse()
    right = (c * x + d).inverse()
    delta = matrix.pseudodeterminant()
    return matrix.evaluate(x) - matrix.evaluate(y).transpose() - delta * left * (x - y) * right


def height_law_holds(matrix, point):
    """height(gP)^2 * den^2 == height(P)^2 with den = nrd(cz+d) + h^2 nrd(c)."""
    if not point.is_interior():
        return True
    image = matrix.apply(point)
    c, d = matrix.c, matrix.d
    den = (c * point.boundary + d).nrd().scalar_part() + point.height_sq * c.nrd().scalar_part()
    return image.height_sq * den * den == point.height_sq


class HermitianMatrix:
    """[[a, b], [conj b, c]] with rational a, c and a paravector b."""

    __slots__ = ('a', 'b', 'c')

    def __init__(self, a, b, c):
        if not b.is_vector():
            raise NotParavectorError(f"Off-diagonal entry {b} is not a paravector")
        self.a = to_fraction(a)
        self.b = b
        self.c = to_fraction(c)

    def determinant(self):
        return self.a * self.c - self.b.nrd().scalar_part()

    def is_positive_definite(self):
        return self.a > 0 and self.c > 0 and self.determinant() > 0

    def scaled(self, factor):
        factor = to_fraction(factor)
        return HermitianMatrix(self.a * factor, self.b * factor, self.c * factor)

    def is_homothetic(self, other):
        if other.c == 0 or self.c == 0:
            return False
        ratio = self.c / other.c
        return self.a == other.a * ratio and self.b == other.b * ratio

    def as_sl2(self):
        return SL2Element(self.b.algebra.scalar(self.a), self.b, self.b.conjugate(),
                          self.b.algebra.scalar(self.c), algebra=self.b.algebra)

    def __eq__(self, other):
        return isinstance(other, HermitianMatrix) and (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __repr__(self):
        return f"HermitianMatrix({self.a}, {self.b}, {self.c})"


def hermitian_of_point(point, scale=1):
    """scale * [[h^2 + |z|^2, z], [conj z, 1]] for P = z + i_n h."""
    if not point.is_interior():
        raise ParseError("Only interior points have Hermitian matrices")
    scale = to_fraction(scale)
    z = point.boundary
    return HermitianMatrix(scale * (point.height_sq + z.nrd().scalar_part()), z * scale, scale)


def point_of_hermitian(matrix):
    if not matrix.is_positive_definite():
        raise ParseError(f"{matrix!r} is not positive definite")
    return HPoint(matrix.b / matrix.c, matrix.determinant() / (matrix.c * matrix.c))


def act_on_hermitian(g, matrix):
    """g A g^ddagger; hermitian_of_point(gP) is homothetic to g applied to hermitian_of_point(P)."""
    product = g * matrix.as_sl2() * g.adjoint_hermitian()
    if not (product.a.is_scalar() and product.d.is_scalar()):
        logger.error(f"Congruence by {g!r} left the diagonal non-scalar")
        raise NotMemberError(f"{g!r} does not preserve Hermitian matrices")
    return HermitianMatrix(product.a.scalar_part(), product.b, product.d.scalar_part())


def form_value(matrix, u, v):
    """q_A(u, v) = a |u|^2 + 2 Re(conj(u) b v) + c |v|^2."""
    cross = (u.conjugate() * matrix.b * v).scalar_part()
    return matrix.a * u.nrd().scalar_part() + 2 * cross + matrix.c * v.nrd().scalar_part()


def stabilizer_infty_generators(order, units=None):
    """
    tau_s for s in a basis of Vec(O), then sigma_t for the unit-group generators
    t other than +-1.
    """
    from .units import unit_group

    algebra = order.algebra
    generators = [translation(algebra.paravector(row)) for row in order.vectors_of().canonical_basis()[::-1]]
    units = units or unit_group(order)
    for t in units.generators:
        if t == 1 or t == -1:
            continue
        generators.append(rotation(t))
    return generators


def tidy_constant(lam, mu):
    """(c, sign) with nrd(lam) - c mu = sign, sign in {1, -1}; NotTidyError otherwise."""
    if mu <= 0 or int(mu) != mu:
        raise NotTidyError(f"Tidy cusps need a positive integer denominator, got {mu}")
    mu = int(mu)
    norm = lam.nrd().scalar_part()
    if norm.denominator != 1:
        raise NotTidyError(f"nrd({lam}) = {norm} is not an integer")
    norm = int(norm)
    if (norm - 1) % mu == 0:
        return (norm - 1) // mu, 1
    if (norm + 1) % mu == 0:
        return (norm + 1) // mu, -1
    raise NotTidyError(f"{lam}/{mu} is not tidy: nrd {norm} is not +-1 mod {mu}")


def is_tidy(lam, mu):
    try:
        tidy_constant(lam, mu)
    except NotTidyError:
        return False
    return True


def tidy_matrix(lam, mu):
    """
    M_s for the tidy cusp s = lam / mu: [[-conj lam, c], [mu, -lam]] when
    nrd(lam) - c mu = 1, and [[conj lam, -c], [mu, -lam]] when it is -1.
    The cusp 0/1 gives S.
    """
    algebra = lam.algebra
    if not lam.is_vector():
        raise NotParavectorError(f"Tidy numerator {lam} is not a paravector")
    if not lam and mu == 1:
        return inversion(algebra)
    c, sign = tidy_constant(lam, mu)
    if sign == 1:
        return SL2Element(-lam.conjugate(), c, mu, -lam, algebra=algebra)
    return SL2Element(lam.conjugate(), -c, mu, -lam, algebra=algebra)


def dual_cusp(lam, mu):
    """s^vee = -conj(lam) / mu."""
    return -lam.conjugate() / mu


def tidy_reflection_point(point, lam, mu):
    """P^vee = -(conj P - s) + s^vee, the image of a point of H_s under M_s."""
    s = lam / mu
    return HPoint(-(point.boundary.conjugate() - s) + dual_cusp(lam, mu), point.height_sq)
