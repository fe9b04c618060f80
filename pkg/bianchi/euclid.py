"""
Clifford-Euclidean division, GCDs with certificates, unimodularity and SL2 lifts.

Right division is y = x q + r with a paravector quotient q closest to x^{-1} y.
Left division is y = q x + r and comes from right division through the
transpose: (q x + r)* = x* q + r*.
"""
import logging
from collections import namedtuple

from .exceptions import LiftNotFoundError, NotParavectorError
from .mobius import SL2Element, inversion, sl2_check, tidy_matrix, is_tidy

logger = logging.getLogger(__name__)

LEFT = 'left'
RIGHT = 'right'

DivisionResult = namedtuple('DivisionResult', ['quotient', 'remainder'])
EuclideanFailure = namedtuple(
    'EuclideanFailure', ['dividend', 'divisor', 'divisor_norm', 'best_remainder', 'remainder_norm'],
)
GcdCertificate = namedtuple('GcdCertificate', ['gcd', 'coeffs', 'steps'])


def _norm(x):
    return x.nrd().scalar_part()


def divide_right(order, y, x):
    """
    y = x q + r with q the closest Vec(O) point to x^{-1} y (lexicographic ties).

    Returns:
        DivisionResult, or EuclideanFailure when nrd(r) >= nrd(x)

    Raises:
        NotParavectorError: x^{-1} y is not a paravector
    """
    ratio = x.inverse() * y
    if not ratio.is_vector():
        raise NotParavectorError(f"{x}^-1 * {y} = {ratio} is not a paravector")
    lattice = order.vectors_of()
    point, _ = lattice.closest_vector(ratio.vector_coords())
    q = order.algebra.paravector(point)
    r = y - x * q
    if _norm(r) >= _norm(x):
        logger.warning(f"Division of {y} by {x} leaves remainder {r} of norm {_norm(r)} >= {_norm(x)}")
        return EuclideanFailure(y, x, _norm(x), r, _norm(r))
    return DivisionResult(q, r)


def divide_left(order, y, x):
    """y = q x + r, by transporting right division through the transpose."""
    result = divide_right(order, y.transpose(), x.transpose())
    if isinstance(result, EuclideanFailure):
        return EuclideanFailure(y, x, result.divisor_norm, result.best_remainder.transpose(), result.remainder_norm)
    return DivisionResult(result.quotient, result.remainder.transpose())


def check_certificate_ratio(c, d):
    """Raise unless c^{-1} d is a paravector, so that (c, d) is a row of a Clifford matrix."""
    if c and d and not (c.inverse() * d).is_vector():
        raise NotParavectorError(f"Certificate ratio {c}^-1 {d} is not a paravector")


def gcd_coeffs_left(order, a, b):
    """
    Left Euclidean algorithm on (a, b): the gcd g generates O a + O b and the
    certificate (c, d) satisfies c a + d b = g, built back from the quotients by
    (c, d) <- (d, c - d q).

    Returns:
        GcdCertificate, or EuclideanFailure at the first non-decreasing step

    Raises:
        NotParavectorError: a certificate ratio c^{-1} d leaves the paravectors
    """
    algebra = order.algebra
    remainders = [a, b]
    quotients = []
    while remainders[-1]:
        result = divide_left(order, remainders[-2], remainders[-1])
        if isinstance(result, EuclideanFailure):
            return result
        quotients.append(result.quotient)
        remainders.append(result.remainder)
        logger.debug(f"gcd step {len(quotients)}: q = {result.quotient}, r = {result.remainder}")
    gcd = remainders[-2]
    if not quotients:
        return GcdCertificate(gcd, (algebra.one(), algebra.zero()), [])
    c, d = algebra.zero(), algebra.one()
    for q in reversed(quotients[:-1]):
        c, d = d, c - d * q
        check_certificate_ratio(c, d)
    if c * a + d * b != gcd:
        logger.error(f"Certificate {c}, {d} does not reproduce gcd {gcd}")
        raise LiftNotFoundError(f"Certificate for ({a}, {b}) failed its recomputation")
    return GcdCertificate(gcd, (c, d), quotients)


def gcd_left(order, a, b):
    result = gcd_coeffs_left(order, a, b)
    if isinstance(result, EuclideanFailure):
        return result
    return result.gcd


def gcd_coeffs_right(order, a, b):
    """a c + b d = g with g generating a O + b O, the transpose of the left case."""
    result = gcd_coeffs_left(order, a.transpose(), b.transpose())
    if isinstance(result, EuclideanFailure):
        return EuclideanFailure(a, b, result.divisor_norm, result.best_remainder.transpose(), result.remainder_norm)
    c, d = result.coeffs
    return GcdCertificate(result.gcd.transpose(), (c.transpose(), d.transpose()), result.steps)


def gcd_right(order, a, b):
    result = gcd_coeffs_right(order, a, b)
    if isinstance(result, EuclideanFailure):
        return result
    return result.gcd


def gcd(order, a, b, side=LEFT):
    if side == RIGHT:
        return gcd_coeffs_right(order, a, b)
    return gcd_coeffs_left(order, a, b)


def is_order_unit(order, x):
    return order.contains(x) and x.is_monoid() and _norm(x) == 1 and x.nrd() == 1


def is_unimodular(order, mu, nu):
    """
    (mu, nu) can be the bottom row of an SL2(O) matrix: both in the order and the
    monoid, mu^{-1} nu a paravector (or one entry zero and the other a unit), and
    mu O + nu O = O, tested on the Hermite normal form of the right ideal.
    """
    if not (order.contains(mu) and order.contains(nu)):
        return False
    if not mu:
        return is_order_unit(order, nu)
    if not nu:
        return is_order_unit(order, mu)
    if not (mu.is_monoid() and nu.is_monoid()):
        return False
    if not (mu.inverse() * nu).is_vector():
        return False
    return order.ideal_index(order.right_ideal([mu, nu])) == 1


def lift_to_sl2(order, mu, nu):
    """
    A member [[a, b], [mu, nu]] of SL2(O). Tries unit entries, then the right
    Euclidean certificate mu x + nu y = g, then a tidy matrix (directly or
    through S when only nu is an integer).

    Raises:
        LiftNotFoundError: none of the constructions applies
    """
    algebra = order.algebra
    candidates = []
    if not mu and is_order_unit(order, nu):
        candidates.append(SL2Element(nu.transpose().inverse(), 0, 0, nu, algebra=algebra))
    if mu and is_order_unit(order, mu):
        candidates.append(SL2Element(0, -mu.transpose().inverse(), mu, nu, algebra=algebra))
    if mu and nu and not candidates:
        try:
            certificate = gcd_coeffs_right(order, mu, nu)
        except NotParavectorError as exc:
            logger.warning(f"Euclidean certificate for ({mu}, {nu}) unusable: {exc}")
            certificate = None
        if isinstance(certificate, GcdCertificate) and is_order_unit(order, certificate.gcd):
            x, y = certificate.coeffs
            g_inverse = certificate.gcd.inverse()
            x, y = x * g_inverse, y * g_inverse
            candidates.append(SL2Element(y.transpose(), -x.transpose(), mu, nu, algebra=algebra))
        if mu.is_scalar() and is_tidy(-nu, mu.scalar_part()):
            candidates.append(tidy_matrix(-nu, mu.scalar_part()))
        if mu.is_scalar() and mu.scalar_part() < 0 and is_tidy(nu, -mu.scalar_part()):
            candidates.append(-tidy_matrix(nu, -mu.scalar_part()))
        if nu.is_scalar() and nu.scalar_part() > 0 and is_tidy(mu, nu.scalar_part()):
            # (-M) S^{-1} has bottom row (mu, nu) when M has bottom row (nu, -mu)
            candidates.append((-tidy_matrix(mu, nu.scalar_part())) * inversion(algebra).inverse())
        if nu.is_scalar() and nu.scalar_part() < 0 and is_tidy(-mu, -nu.scalar_part()):
            candidates.append(tidy_matrix(-mu, -nu.scalar_part()) * inversion(algebra).inverse())
    for matrix in candidates:
        if matrix.c == mu and matrix.d == nu and sl2_check(matrix, order).ok:
            return matrix
    raise LiftNotFoundError(f"No SL2 lift found for the pair ({mu}, {nu})")
