"""
Exact two-phase simplex over Fractions with Bland's smallest-index rule.
"""
import logging
from collections import namedtuple
from fractions import Fraction

logger = logging.getLogger(__name__)

LE, GE, EQ = '<=', '>=', '=='

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
UNBOUNDED = 'unbounded'
CAP = 'iteration_cap'

LPResult = namedtuple('LPResult', ['status', 'point', 'value', 'tight', 'ray'])


class LinearProgram:
    """
    Maximize (or minimize) objective . x subject to rows (row, relation, rhs).
    Variables are free unless ``nonnegative`` is set.
    """

    def __init__(self, variables, constraints=(), objective=None, sense='max', nonnegative=False):
        self.variables = variables
        self.constraints = []
        for row, relation, rhs in constraints:
            self.add(row, relation, rhs)
        self.objective = [Fraction(x) for x in (objective or [0] * variables)]
        self.sense = sense
        self.nonnegative = nonnegative

    def add(self, row, relation, rhs):
        if relation not in (LE, GE, EQ):
            raise ValueError(f"Unknown relation {relation!r}")
        row = [Fraction(x) for x in row]
        if len(row) != self.variables:
            raise ValueError(f"Constraint has {len(row)} coefficients, expected {self.variables}")
        self.constraints.append((row, relation, Fraction(rhs)))
        return len(self.constraints) - 1

    def with_objective(self, objective, sense='max'):
        return LinearProgram(self.variables, self.constraints, objective, sense, self.nonnegative)

    def solve(self, cap=10000):
        return lp_solve(self, cap)


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, i, j):
        row = self.rows[i]
        piv = row[j]
        self.rows[i] = row = [x / piv for x in row]
        self.rhs[i] = self.rhs[i] / piv
        for k, other in enumerate(self.rows):
            if k == i:
                continue
            f = other[j]
            if f:
                self.rows[k] = [x - f * y for x, y in zip(other, row)]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j

    def reduced_costs(self, cost):
        ncols = len(self.rows[0]) if self.rows else len(cost)
        reduced = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(ncols):
                    if row[j]:
                        reduced[j] -= cb * row[j]
        return reduced

    def run(self, cost, cap, forbidden=()):
        """Bland iterations maximizing cost; returns (status, entering column)."""
        for _ in range(cap):
            reduced = self.reduced_costs(cost)
            entering = next((j for j, r in enumerate(reduced) if r > 0 and j not in forbidden), None)
            if entering is None:
                return OPTIMAL, None
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    key = (self.rhs[i] / row[entering], self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED, entering
            self.pivot(best[1], entering)
        return CAP, None

    def values(self, ncols):
        x = [Fraction(0)] * ncols
        for i, b in enumerate(self.basis):
            x[b] = self.rhs[i]
        return x


def _standard_rows(program):
    """All constraints as (row, rhs) with <=; '==' gives two rows."""
    rows = []
    for row, relation, rhs in program.constraints:
        if relation in (LE, EQ):
            rows.append((row, rhs))
        if relation in (GE, EQ):
            rows.append(([-x for x in row], -rhs))
    return rows


def lp_solve(program, cap=10000):
    """
    Solve exactly. Returns LPResult(status, point, value, tight, ray) where
    ``tight`` lists the indices of constraints holding with equality at the
    optimum and ``ray`` is an improving direction when unbounded.
    """
    n = program.variables
    split = 1 if program.nonnegative else 2
    standard = _standard_rows(program)
    m = len(standard)
    ncols = split * n + m + 1
    aux = ncols - 1
    rows, rhs = [], []
    for i, (row, b) in enumerate(standard):
        full = [Fraction(0)] * ncols
        for j, x in enumerate(row):
            full[j] = x
            if split == 2:
                full[n + j] = -x
        full[split * n + i] = Fraction(1)
        full[aux] = Fraction(-1)
        rows.append(full)
        rhs.append(b)
    tableau = _Tableau(rows, rhs, [split * n + i for i in range(m)])

    if m and min(rhs) < 0:
        worst = min(range(m), key=lambda i: (rhs[i], i))
        tableau.pivot(worst, aux)
        phase_one = [Fraction(0)] * ncols
        phase_one[aux] = Fraction(-1)
        status, _ = tableau.run(phase_one, cap)
        if status == CAP:
            logger.warning("Simplex phase one hit its iteration cap")
            return LPResult(CAP, None, None, [], None)
        if tableau.values(ncols)[aux] > 0:
            return LPResult(INFEASIBLE, None, None, [], None)
        if aux in tableau.basis:
            i = tableau.basis.index(aux)
            j = next((j for j in range(aux) if tableau.rows[i][j]), None)
            if j is None:
                del tableau.rows[i], tableau.rhs[i], tableau.basis[i]
            else:
                tableau.pivot(i, j)

    sign = 1 if program.sense == 'max' else -1
    cost = [Fraction(0)] * ncols
    for j, c in enumerate(program.objective):
        cost[j] = sign * c
        if split == 2:
            cost[n + j] = -sign * c
    status, entering = tableau.run(cost, cap, forbidden=(aux,))
    if status == CAP:
        logger.warning("Simplex phase two hit its iteration cap")
        return LPResult(CAP, None, None, [], None)

    def original(values):
        if split == 2:
            return [values[j] - values[n + j] for j in range(n)]
        return values[:n]

    x = original(tableau.values(ncols))
    if status == UNBOUNDED:
        direction = [Fraction(0)] * ncols
        direction[entering] = Fraction(1)
        for i, b in enumerate(tableau.basis):
            direction[b] = -tableau.rows[i][entering]
        return LPResult(UNBOUNDED, x, None, [], original(direction))
    value = sum((c * v for c, v in zip(program.objective, x)), Fraction(0))
    tight = [
        k for k, (row, _, b) in enumerate(program.constraints)
        if sum((a * v for a, v in zip(row, x)), Fraction(0)) == b
    ]
    return LPResult(OPTIMAL, x, value, tight, None)
