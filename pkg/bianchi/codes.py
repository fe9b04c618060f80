"""
Doubly even binary codes and the orders they define.

Convention: the lattice of a code C of length n is the preimage
Lambda_C = {x in Z^n : x mod 2 in C}, which contains 2Z^n. An order built from C
has Clifford vectors (1/2) Lambda_C, and C is Euclidean when rho^2(Lambda_C) < 4.
Coordinate 0 of a word is the scalar 1; coordinate j is the generator i_j.
"""
import logging
from collections import namedtuple, deque
from fractions import Fraction
from itertools import product

from django.conf import settings

from .algebra import CliffordAlgebra, DiagonalForm
from .exceptions import ParseError, RankCapError
from .lattices import Lattice
from . import matrices

logger = logging.getLogger(__name__)

CodeOrder = namedtuple('CodeOrder', ['code', 'order', 'witness', 'rounds'])
EuclideanVerdict = namedtuple('EuclideanVerdict', ['euclidean', 'covering_radius_sq', 'half_scale_radius_sq'])


def parse_word(text):
    text = str(text).strip()
    if not text or any(ch not in '01' for ch in text):
        raise ParseError(f"Code words are bit strings, got {text!r}")
    return tuple(int(ch) for ch in text)


def word_text(word):
    return ''.join(str(b) for b in word)


class BinaryCode:
    """
    A binary linear code, stored by the reduced echelon basis over GF(2).

    Args:
        length (int): block length n
        words: generator words as bit tuples or '0110' strings
    """

    def __init__(self, length, words=()):
        self.length = length
        rows = []
        for w in words:
            w = parse_word(w) if isinstance(w, str) else tuple(int(b) % 2 for b in w)
            if len(w) != length:
                raise ParseError(f"Word {word_text(w)} does not have length {length}")
            rows.append(list(w))
        self.words = [tuple(r) for r in matrices.rref_mod_p(rows, 2)]
        self.dimension = len(self.words)
        self.key = (length, tuple(self.words))

    @classmethod
    def from_text(cls, text, length=None):
        """Parse '11110,01111'; an empty string gives the zero code of ``length``."""
        parts = [p for p in str(text or '').replace(' ', '').split(',') if p]
        if not parts:
            if length is None:
                raise ParseError("The zero code needs an explicit length")
            return cls(length)
        words = [parse_word(p) for p in parts]
        return cls(length or len(words[0]), words)

    def __eq__(self, other):
        return isinstance(other, BinaryCode) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"BinaryCode([{self.length},{self.dimension}], <{', '.join(word_text(w) for w in self.words)}>)"

    def codewords(self):
        out = []
        for bits in product((0, 1), repeat=self.dimension):
            word = [0] * self.length
            for b, w in zip(bits, self.words):
                if b:
                    word = [(x + y) % 2 for x, y in zip(word, w)]
            out.append(tuple(word))
        return sorted(out)

    def contains(self, word):
        word = parse_word(word) if isinstance(word, str) else tuple(word)
        return BinaryCode(self.length, self.words + [word]).dimension == self.dimension

    def contains_code(self, other):
        return all(self.contains(w) for w in other.words)

    def weight_distribution(self):
        counts = [0] * (self.length + 1)
        for w in self.codewords():
            counts[sum(w)] += 1
        return counts

    def minimum_distance(self):
        weights = [sum(w) for w in self.codewords() if any(w)]
        return min(weights) if weights else 0

    def is_doubly_even(self):
        # generators of weight 0 mod 4 with pairwise even overlaps give a doubly even code
        for i, w in enumerate(self.words):
            if sum(w) % 4:
                return False
            for v in self.words[i + 1:]:
                if sum(a & b for a, b in zip(w, v)) % 2:
                    return False
        return True

    def direct_sum(self, other):
        n = self.length + other.length
        words = [tuple(w) + (0,) * other.length for w in self.words]
        words += [(0,) * self.length + tuple(w) for w in other.words]
        return BinaryCode(n, words)

    def padded(self, length):
        """The same code with zero coordinates appended."""
        if length < self.length:
            raise ParseError(f"Cannot pad length {self.length} down to {length}")
        return BinaryCode(length, [tuple(w) + (0,) * (length - self.length) for w in self.words])

    def parameters(self):
        return (self.length, self.dimension, self.minimum_distance())

    def to_json(self):
        return {
            'length': self.length,
            'dimension': self.dimension,
            'words': [word_text(w) for w in self.words],
        }


def extended_hamming_code():
    """The [8,4,4] extended Hamming code H(8,4)."""
    return BinaryCode(8, ['11110000', '11001100', '10101010', '11111111'])


def lattice_of_code(code):
    """Lambda_C = C + 2Z^n as a lattice in Z^n with the standard metric, HNF basis."""
    n = code.length
    rows = [list(w) for w in code.words] + [[2 * int(i == j) for j in range(n)] for i in range(n)]
    return Lattice(matrices.hnf_fraction_rows(rows, n))


def euclidean_by_code(code):
    """
    Clifford-Euclidean test: rho^2(Lambda_C) < 4. Also reports rho^2 of (1/2) Lambda_C,
    where the threshold reads rho^2 < 1.
    """
    radius = lattice_of_code(code).covering_radius()
    verdict = EuclideanVerdict(radius < 4, radius, radius / 4)
    logger.info(f"{code!r}: rho^2(Lambda_C) = {radius}, Euclidean: {verdict.euclidean}")
    return verdict


def code_algebra(length, max_arity=None):
    """Clf(-1, ..., -1) on length - 1 generators."""
    return CliffordAlgebra(DiagonalForm([1] * (length - 1)), max_arity=max_arity)


def code_generators(code, algebra):
    """The elements (c . I)/2 for the generator words c of the code."""
    elements = []
    for w in code.words:
        x = algebra.zero()
        for j, bit in enumerate(w):
            if bit:
                x = x + (algebra.one() if j == 0 else algebra.gen(j))
        elements.append(x / 2)
    return elements


def order_from_code(code, stretch=False):
    """
    Close the Clifford order of Clf(-1, ..., -1) under the elements (c . I)/2.

    Returns:
        CodeOrder: ``order`` is None and ``witness`` holds the first non-integral
        product when the closure fails
    """
    from .orders import clifford_order, code_of, ring_closure

    cap = getattr(settings, 'BIANCHI_CODE_LENGTH_CAP', 9) + (1 if stretch else 0)
    if code.length > cap:
        raise RankCapError(f"Code length {code.length} exceeds the cap {cap}")
    if not code.is_doubly_even():
        raise ParseError(f"{code!r} is not doubly even")
    algebra = code_algebra(code.length, max_arity=max(cap - 1, getattr(settings, 'BIANCHI_MAX_ARITY', 9)))
    base = clifford_order(algebra)
    generators = [algebra.gen(i) for i in range(1, algebra.arity + 1)] + code_generators(code, algebra)
    result = ring_closure(algebra, base.basis, generators)
    if result.order is None:
        logger.warning(f"{code!r}: closure failed, witness {result.witness}")
        return CodeOrder(code, None, result.witness, result.rounds)
    order = result.order
    order.label = f"O_C for {', '.join(word_text(w) for w in code.words) or '0'}"
    found = code_of(order)
    if not found.contains_code(code):
        logger.error(f"code_of returned {found!r}, which misses {code!r}")
        raise ParseError(f"Order built from {code!r} has code {found!r}")
    logger.info(f"{code!r}: closure succeeded in {result.rounds} rounds, code_of = {found!r}")
    return CodeOrder(code, order, None, result.rounds)


def maximal_code_order(code):
    """The maximal order over the code closure whose code is exactly ``code``."""
    from .orders import code_of, maximal_orders

    built = order_from_code(code)
    if built.order is None:
        return None
    for order in maximal_orders(built.order):
        if code_of(order) == code:
            return order
    return None


def doubly_even_codes(length, dimension=None):
    """
    Every doubly even code of the given length (and dimension), by breadth-first
    extension of smaller codes by one admissible word. Codes are deduplicated by
    their echelon basis.
    """
    candidates = [w for w in product((0, 1), repeat=length) if any(w) and sum(w) % 4 == 0]
    start = BinaryCode(length)
    seen = {start.key: start}
    queue = deque([start])
    while queue:
        code = queue.popleft()
        if dimension is not None and code.dimension >= dimension:
            continue
        for w in candidates:
            if any(sum(a & b for a, b in zip(w, v)) % 2 for v in code.words):
                continue
            if code.contains(w):
                continue
            bigger = BinaryCode(length, code.words + [w])
            if bigger.key not in seen:
                seen[bigger.key] = bigger
                queue.append(bigger)
    codes = [c for c in seen.values() if dimension is None or c.dimension == dimension]
    codes.sort(key=lambda c: (c.dimension, c.words))
    logger.info(f"Found {len(codes)} doubly even codes of length {length}")
    return codes


def weight_four_words(length):
    return [w for w in product((0, 1), repeat=length) if sum(w) == 4]


def half_lattice(code):
    """(1/2) Lambda_C, the expected lattice of Clifford vectors."""
    return lattice_of_code(code).scaled(Fraction(1, 2))
