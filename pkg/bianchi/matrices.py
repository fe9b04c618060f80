"""
Exact matrix helpers over ZZ, QQ and GF(p), built on sympy's DomainMatrix.

Rows are plain Python lists of Fractions (or ints) everywhere else in the
package; this module is the single place where they cross into sympy.
"""
import logging
from fractions import Fraction
from math import gcd, lcm

from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

logger = logging.getLogger(__name__)


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _fraction(x):
    return Fraction(int(x.numerator), int(x.denominator))


def qq_matrix(rows, ncols=None):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([[_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)


def zz_matrix(rows, ncols=None):
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([[ZZ(int(x)) for x in r] for r in rows], (len(rows), ncols), ZZ)


def gf_matrix(rows, p, ncols=None):
    field = GF(p)
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([[field(int(x) % p) for x in r] for r in rows], (len(rows), ncols), field)


def fraction_rows(matrix):
    """DomainMatrix over QQ or ZZ back to lists of Fractions."""
    nrows, ncols = matrix.shape
    if matrix.domain == ZZ:
        return [[Fraction(int(matrix[i, j].element)) for j in range(ncols)] for i in range(nrows)]
    matrix = matrix.convert_to(QQ)
    return [[_fraction(matrix[i, j].element) for j in range(ncols)] for i in range(nrows)]


def int_rows(matrix):
    nrows, ncols = matrix.shape
    return [[int(matrix[i, j].element) for j in range(ncols)] for i in range(nrows)]


def mod_rows(matrix, p):
    nrows, ncols = matrix.shape
    return [[int(matrix[i, j].element) % p for j in range(ncols)] for i in range(nrows)]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vec_mat(v, rows):
    """Row vector times matrix."""
    if not rows:
        return []
    out = [Fraction(0)] * len(rows[0])
    for x, row in zip(v, rows):
        if x:
            for j, y in enumerate(row):
                out[j] += x * y
    return out


def determinant(rows):
    if not rows:
        return Fraction(1)
    return _fraction(qq_matrix(rows).det())


def inverse(rows):
    return fraction_rows(qq_matrix(rows).inv())


def rank(rows):
    if not rows:
        return 0
    return qq_matrix(rows).rank()


def solve(rows, rhs):
    """The column vector x with A x = rhs for square invertible A."""
    b = qq_matrix([[x] for x in rhs])
    return [r[0] for r in fraction_rows(qq_matrix(rows).lu_solve(b))]


def solve_in_span(rows, vector):
    """Coefficients c with c * rows = vector, or None when vector is outside the span."""
    if not rows:
        return None if any(vector) else []
    augmented = transpose(rows)
    augmented = [r + [Fraction(x)] for r, x in zip(augmented, vector)]
    reduced, pivots = qq_matrix(augmented).rref()
    k = len(rows)
    if k in pivots:
        return None
    reduced = fraction_rows(reduced)
    coefficients = [Fraction(0)] * k
    for row_index, column in enumerate(pivots):
        coefficients[column] = reduced[row_index][k]
    return coefficients


def charpoly(rows):
    """Characteristic polynomial coefficients, leading coefficient first."""
    return [_fraction(c) for c in qq_matrix(rows).charpoly()]


def left_kernel_mod_p(rows, p):
    """Basis of {x in F_p^n : x A = 0} for the n x k matrix A."""
    if not rows:
        return []
    kernel = gf_matrix(transpose(rows), p).nullspace()
    return [r for r in mod_rows(kernel, p) if any(r)]


def rref_mod_p(rows, p):
    """Nonzero rows of the reduced row echelon form over GF(p)."""
    if not rows:
        return []
    reduced, _ = gf_matrix(rows, p).rref()
    return [r for r in mod_rows(reduced, p) if any(r)]


def rank_mod_p(rows, p):
    if not rows:
        return 0
    return gf_matrix(rows, p).rank()


def row_hnf(rows, dim):
    """
    Canonical basis of the integer lattice spanned by ``rows`` (integer vectors of
    length ``dim``), as rows of the Hermite normal form.
    """
    rows = [[int(x) for x in r] for r in rows if any(r)]
    if not rows:
        return []
    # sympy only sweeps min(rows, cols) rows, so pad to at least dim generators
    rows += [[0] * dim for _ in range(dim - len(rows))]
    columns = zz_matrix(rows).transpose()
    hnf = hermite_normal_form(columns)
    basis = int_rows(hnf.transpose())
    return [r for r in basis if any(r)]


def rational_hnf(rows, dim):
    """
    Canonical form of the Z-module spanned by rational ``rows``: a pair
    (denominator, integer HNF rows) with the denominator made minimal.
    """
    rows = [[Fraction(x) for x in r] for r in rows]
    den = 1
    for r in rows:
        for x in r:
            den = lcm(den, x.denominator)
    basis = row_hnf([[x * den for x in r] for r in rows], dim)
    g = den
    for r in basis:
        for x in r:
            g = gcd(g, x)
    if g > 1:
        den //= g
        basis = [[x // g for x in r] for r in basis]
    return den, basis


def hnf_fraction_rows(rows, dim):
    den, basis = rational_hnf(rows, dim)
    return [[Fraction(x, den) for x in r] for r in basis]


def dual_basis(rows):
    """Rows of (B^-1)^T, the dual lattice for the standard dot product."""
    return transpose(inverse(rows))


def lattice_intersection(rows1, rows2):
    """Intersection of two full-rank lattices of Q^n given by basis rows."""
    dim = len(rows1[0])
    dual_sum = hnf_fraction_rows(dual_basis(rows1) + dual_basis(rows2), dim)
    return hnf_fraction_rows(dual_basis(dual_sum), dim)


def gram_matrix(rows, metric):
    """B M B^T where ``metric`` is a full matrix or a list of diagonal entries."""
    if metric and not isinstance(metric[0], (list, tuple)):
        weighted = [[x * m for x, m in zip(r, metric)] for r in rows]
        return [[sum((x * y for x, y in zip(a, b)), Fraction(0)) for b in rows] for a in weighted]
    return mat_mul(mat_mul(rows, metric), transpose(rows))
