"""
Exact arithmetic in rational Clifford algebras.

A basis element is a bitmask: bit ``i`` stands for the generator gamma_{i+1}, and
the mask for {i1 < i2 < ... < ik} is the ordered product gamma_{i1}...gamma_{ik}.
Basis order everywhere (serialization, coordinate vectors, matrices) is the
integer value of the mask.

Elements print and parse in the form ``1/2*1 + 1/2*e1 - 3*e13``.
"""
import logging
import re
from collections import namedtuple
from fractions import Fraction

from django.conf import settings

from . import matrices
from .exceptions import AlgebraMismatchError, NotParavectorError, ParseError, RankCapError, ZeroNormError

logger = logging.getLogger(__name__)

Norms = namedtuple('Norms', ['nrd', 'trd', 'spinor', 'bigform'])
GradedParts = namedtuple('GradedParts', ['even', 'odd'])

PARITY = 'parity'
TRANSPOSE = 'transpose'
CONJUGATE = 'conjugate'
INVOLUTIONS = (PARITY, TRANSPOSE, CONJUGATE)


def to_fraction(value):
    """Coerce ints, Fractions and 'p/q' strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"Not a rational: {value!r}") from exc
    raise ParseError(f"Not a rational: {value!r}")


def popcount(mask):
    return bin(mask).count('1')


def mask_indices(mask):
    """1-based generator indices of a mask, increasing."""
    indices = []
    i = 1
    while mask:
        if mask & 1:
            indices.append(i)
        mask >>= 1
        i += 1
    return indices


def indices_mask(indices):
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def swap_count(a, b):
    """Transpositions needed to sort gamma_A gamma_B into increasing order."""
    a >>= 1
    count = 0
    while a:
        count += popcount(a & b)
        a >>= 1
    return count


def mask_label(mask):
    if mask == 0:
        return '1'
    indices = mask_indices(mask)
    if indices[-1] >= 10:
        return 'e{' + ','.join(str(i) for i in indices) + '}'
    return 'e' + ''.join(str(i) for i in indices)


_TERM = re.compile(r'([+-]?)([^+-]+)')
_LABEL = re.compile(r'^e(\d+|\{\d+(?:,\d+)*\})$')


def parse_label(label):
    label = label.strip()
    if label == '1':
        return 0
    match = _LABEL.match(label)
    if not match:
        raise ParseError(f"Bad basis label: {label!r}")
    body = match.group(1)
    if body.startswith('{'):
        indices = [int(part) for part in body[1:-1].split(',')]
    else:
        indices = [int(ch) for ch in body]
    if any(i <= 0 for i in indices) or any(x >= y for x, y in zip(indices, indices[1:])):
        raise ParseError(f"Generator indices must increase strictly: {label!r}")
    return indices_mask(indices)


class DiagonalForm:
    """
    The quadratic form d1*y1^2 + ... + dm*ym^2 with positive rational coefficients.

    Negative coefficients are only accepted with ``allow_indefinite=True``; the Bott
    module needs them for complements in the decomposition lemma.
    """

    def __init__(self, coefficients, allow_indefinite=False):
        coefficients = tuple(to_fraction(d) for d in coefficients)
        for d in coefficients:
            if d == 0 or (d < 0 and not allow_indefinite):
                raise ParseError(f"Form coefficients must be positive, got {d}")
        self.coefficients = coefficients
        self.definite = all(d > 0 for d in coefficients)

    @classmethod
    def from_text(cls, text):
        """Parse '1,1,3' (also accepts the empty string for the rank 0 form)."""
        text = (text or '').strip()
        if not text:
            return cls(())
        return cls(part for part in text.split(','))

    @property
    def arity(self):
        return len(self.coefficients)

    def is_integral_primitive(self):
        from math import gcd
        from sympy import factorint

        if not all(d.denominator == 1 for d in self.coefficients):
            return False
        values = [int(d) for d in self.coefficients]
        if any(v <= 0 for v in values):
            return False
        if any(e > 1 for v in values for e in factorint(v).values()):
            return False
        g = 0
        for v in values:
            g = gcd(g, v)
        return g in (0, 1)

    def to_json(self):
        return [str(d) for d in self.coefficients]

    def __eq__(self, other):
        return isinstance(other, DiagonalForm) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(('DiagonalForm', self.coefficients))

    def __repr__(self):
        return f"DiagonalForm({', '.join(str(d) for d in self.coefficients)})"


class AlgebraMixin:
    """
    Constructors, parsing and printing shared by the diagonal Clifford algebras and
    the structure-constant algebras of the Bott module.

    Subclasses provide ``arity``, ``rank``, ``key``, ``basis_product(a, b)`` and
    ``transpose_basis(mask)``; the last two return tuples of (mask, coefficient).
    """

    def element(self, coeffs=None):
        return CliffordElement(self, coeffs or {})

    def zero(self):
        return CliffordElement(self, {})

    def one(self):
        return CliffordElement(self, {0: Fraction(1)})

    def scalar(self, value):
        return CliffordElement(self, {0: to_fraction(value)})

    def basis_element(self, mask):
        if not 0 <= mask < self.rank:
            raise ParseError(f"Mask {mask} is outside an algebra of arity {self.arity}")
        return CliffordElement(self, {mask: Fraction(1)})

    def gen(self, i):
        """The generator gamma_i, 1-based."""
        if not 1 <= i <= self.arity:
            raise ParseError(f"No generator {i} in arity {self.arity}")
        return self.basis_element(1 << (i - 1))

    def paravector(self, coords):
        """x0 + x1*gamma_1 + ... from a coordinate list of length arity + 1."""
        coords = list(coords)
        if len(coords) != self.arity + 1:
            raise ParseError(f"Expected {self.arity + 1} coordinates, got {len(coords)}")
        coeffs = {0: to_fraction(coords[0])}
        for i, x in enumerate(coords[1:]):
            coeffs[1 << i] = to_fraction(x)
        return CliffordElement(self, coeffs)

    def from_coords(self, coords):
        """Element with coordinate list indexed by mask."""
        return CliffordElement(self, {mask: to_fraction(x) for mask, x in enumerate(coords)})

    def paravector_masks(self):
        return [0] + [1 << i for i in range(self.arity)]

    def parse(self, text):
        """Parse the textual element format; '0' is the zero element."""
        if isinstance(text, CliffordElement):
            return text
        body = re.sub(r'\s+', '', str(text))
        if not body:
            raise ParseError("Empty element text")
        if body == '0':
            return self.zero()
        # Fractions like 1/2 contain no sign, so splitting on +/- is safe
        pos = 0
        coeffs = {}
        for match in _TERM.finditer(body):
            if match.start() != pos:
                raise ParseError(f"Cannot parse element {text!r}")
            pos = match.end()
            sign, term = match.groups()
            if '*' in term:
                coef_text, label = term.split('*', 1)
                coef = to_fraction(coef_text)
            elif term.startswith('e'):
                coef, label = Fraction(1), term
            else:
                coef, label = to_fraction(term), '1'
            mask = parse_label(label)
            if mask >= self.rank:
                raise ParseError(f"Label {label!r} needs more than {self.arity} generators")
            if sign == '-':
                coef = -coef
            coeffs[mask] = coeffs.get(mask, Fraction(0)) + coef
        if pos != len(body):
            raise ParseError(f"Cannot parse element {text!r}")
        return CliffordElement(self, coeffs)

    def check_same(self, other):
        if self.key != other.key:
            raise AlgebraMismatchError(f"Operands come from {self!r} and {other!r}")


class CliffordAlgebra(AlgebraMixin):
    """
    Clf(q) for a diagonal form q: gamma_i^2 = -d_i, gamma_i gamma_j = -gamma_j gamma_i.

    Args:
        form (DiagonalForm): the quadratic form
        max_arity (int): arity cap, defaults to settings.BIANCHI_MAX_ARITY
    """

    def __init__(self, form, max_arity=None):
        if not isinstance(form, DiagonalForm):
            form = DiagonalForm(form)
        cap = max_arity if max_arity is not None else getattr(settings, 'BIANCHI_MAX_ARITY', 9)
        if form.arity > cap:
            raise RankCapError(f"Arity {form.arity} exceeds the cap {cap}")
        self.form = form
        self.arity = form.arity
        self.rank = 1 << self.arity
        self.key = ('diagonal', form.coefficients)
        self._products = {}

    def basis_product(self, a, b):
        cached = self._products.get((a, b))
        if cached is not None:
            return cached
        coef = Fraction(-1 if swap_count(a, b) & 1 else 1)
        for i in mask_indices(a & b):
            coef *= -self.form.coefficients[i - 1]
        result = ((a ^ b, coef),)
        self._products[(a, b)] = result
        return result

    def transpose_basis(self, mask):
        k = popcount(mask)
        return ((mask, Fraction(-1 if (k * (k - 1) // 2) & 1 else 1)),)

    def basis_square_weight(self, mask):
        """gamma_S * conj(gamma_S), the weight of mask S in the big form."""
        weight = Fraction(1)
        for i in mask_indices(mask):
            weight *= self.form.coefficients[i - 1]
        return weight

    def bigform_metric(self):
        return [self.basis_square_weight(mask) for mask in range(self.rank)]

    def paravector_metric(self):
        """Scaled Euclidean metric diag(1, d1, ..., dm) on paravector coordinates."""
        return [Fraction(1)] + list(self.form.coefficients)

    def __eq__(self, other):
        return isinstance(other, CliffordAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        coefficients = ','.join(str(-d) for d in self.form.coefficients)
        return f"CliffordAlgebra(({coefficients}/Q))"


class CliffordElement:
    """Immutable sparse element: a map mask -> Fraction with no zero entries."""

    __slots__ = ('algebra', 'coeffs')

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = {}
        for mask, c in coeffs.items():
            c = to_fraction(c)
            if c:
                self.coeffs[mask] = c

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, CliffordElement):
            self.algebra.check_same(other.algebra)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for mask, c in other.coeffs.items():
            coeffs[mask] = coeffs.get(mask, Fraction(0)) + c
        return CliffordElement(self.algebra, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.algebra, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = to_fraction(other)
            return CliffordElement(self.algebra, {m: c * other for m, c in self.coeffs.items()})
        if not isinstance(other, CliffordElement):
            return NotImplemented
        self.algebra.check_same(other.algebra)
        product = self.algebra.basis_product
        coeffs = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                for mask, c in product(a, b):
                    coeffs[mask] = coeffs.get(mask, Fraction(0)) + ca * cb * c
        return CliffordElement(self.algebra, coeffs)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroNormError("Division by zero scalar")
            return self * (Fraction(1) / to_fraction(other))
        if isinstance(other, CliffordElement):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.algebra.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == ({0: Fraction(other)} if other else {})
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.algebra.key == other.algebra.key and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra.key, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    # involutions

    def parity(self):
        return CliffordElement(
            self.algebra,
            {m: (-c if popcount(m) & 1 else c) for m, c in self.coeffs.items()},
        )

    def transpose(self):
        coeffs = {}
        for m, c in self.coeffs.items():
            for mask, t in self.algebra.transpose_basis(m):
                coeffs[mask] = coeffs.get(mask, Fraction(0)) + c * t
        return CliffordElement(self.algebra, coeffs)

    def conjugate(self):
        return self.transpose().parity()

    def involution(self, kind):
        if kind == PARITY:
            return self.parity()
        if kind == TRANSPOSE:
            return self.transpose()
        if kind == CONJUGATE:
            return self.conjugate()
        raise ParseError(f"Unknown involution {kind!r}")

    # norms

    def nrd(self):
        return self * self.conjugate()

    def trd(self):
        return self + self.conjugate()

    def spinor_norm(self):
        return self * self.transpose()

    def bigform(self):
        return self.nrd().scalar_part()

    def norms(self):
        return Norms(self.nrd(), self.trd(), self.spinor_norm(), self.bigform())

    def scalar_part(self):
        return self.coeffs.get(0, Fraction(0))

    def coefficient(self, mask):
        return self.coeffs.get(mask, Fraction(0))

    # predicates

    def is_scalar(self):
        return all(m == 0 for m in self.coeffs)

    def is_vector(self):
        """True for paravectors, supported on 1 and the generators."""
        return all(popcount(m) <= 1 for m in self.coeffs)

    def is_monoid(self):
        if not self.nrd().is_scalar():
            return False
        star = self.transpose()
        for mask in self.algebra.paravector_masks():
            if not (self * self.algebra.basis_element(mask) * star).is_vector():
                return False
        return True

    def is_unit(self):
        return self.is_monoid() and self.nrd() == 1

    def inverse(self):
        """
        conj(x)/nrd(x) when the reduced norm is a scalar, otherwise the solution of
        x * y = 1 through the left-regular matrix of x.
        """
        norm = self.nrd()
        if norm.is_scalar():
            if norm.scalar_part() == 0:
                raise ZeroNormError(f"{self} has reduced norm 0")
            return self.conjugate() / norm.scalar_part()
        rows = [(self * self.algebra.basis_element(mask)).coords() for mask in range(self.algebra.rank)]
        if matrices.determinant(rows) == 0:
            raise ZeroNormError(f"{self} is a zero divisor")
        target = [Fraction(int(mask == 0)) for mask in range(self.algebra.rank)]
        return self.algebra.from_coords(matrices.solve(matrices.transpose(rows), target))

    def graded(self):
        even = {m: c for m, c in self.coeffs.items() if not popcount(m) & 1}
        odd = {m: c for m, c in self.coeffs.items() if popcount(m) & 1}
        return GradedParts(CliffordElement(self.algebra, even), CliffordElement(self.algebra, odd))

    # coordinates

    def coords(self):
        """Dense coordinate list indexed by mask."""
        return [self.coeffs.get(m, Fraction(0)) for m in range(self.algebra.rank)]

    def vector_coords(self):
        """Paravector coordinates x0..xm; raises unless the element is a paravector."""
        if not self.is_vector():
            raise NotParavectorError(f"{self} is not a paravector")
        return [self.coeffs.get(m, Fraction(0)) for m in self.algebra.paravector_masks()]

    def denominator(self):
        from math import lcm
        den = 1
        for c in self.coeffs.values():
            den = lcm(den, c.denominator)
        return den

    def to_json(self):
        return str(self)

    def __str__(self):
        if not self.coeffs:
            return '0'
        label = getattr(self.algebra, 'label', mask_label)
        parts = []
        for mask in sorted(self.coeffs):
            c = self.coeffs[mask]
            if not parts:
                parts.append(f"{c}*{label(mask)}")
            elif c < 0:
                parts.append(f" - {-c}*{label(mask)}")
            else:
                parts.append(f" + {c}*{label(mask)}")
        return ''.join(parts)

    def __repr__(self):
        return f"<CliffordElement {self}>"


def useful_ratio_test(a, c):
    """
    True iff a*c^{-1} is a paravector.

    For invertible monoid elements this agrees with ``transpose(a)*c`` being a
    paravector; callers that want the cross-check use ``useful_ratio_agrees``.
    """
    return (a * c.inverse()).is_vector()


def useful_ratio_agrees(a, c):
    return useful_ratio_test(a, c) == (a.transpose() * c).is_vector()


def decompose_graded(x):
    return x.graded()


def multiply(x, y):
    return x * y
