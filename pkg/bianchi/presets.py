"""
Named orders and their published Gamma_infty regions.

Each preset notes where its data comes from; ``region`` replaces the Dirichlet
cell when the published region is itself a fundamental domain of Gamma_infty
(``region_is_cell``), and otherwise only restricts where facets are reported.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from .algebra import CliffordAlgebra, DiagonalForm
from .codes import BinaryCode, maximal_code_order
from .domain import Polytope
from .exceptions import CatalogueError
from .orders import Order, clifford_conjugate, clifford_order, order_from_generators

logger = logging.getLogger(__name__)

Preset = namedtuple('Preset', ['name', 'form', 'build', 'region', 'region_is_cell', 'slow', 'source'])

HALF = Fraction(1, 2)


def algebra_of(form):
    return CliffordAlgebra(DiagonalForm(form))


def _generated(form, label, *elements):
    """The ring generated over the Clifford order by elements built from the algebra."""
    algebra = algebra_of(form)
    return order_from_generators(algebra, [make(algebra) for make in elements], label=label)


def _clifford(form, label):
    order = clifford_order(algebra_of(form))
    order.label = label
    return order


def _g(algebra, *indices):
    x = algebra.one()
    for i in indices:
        x = x * algebra.gen(i)
    return x


# orders

def integers():
    return _clifford((), 'Z')


def gaussian():
    return _clifford((1,), 'Z[i]')


def sqrt_minus_3():
    return _clifford((3,), 'Z[sqrt-3]')


def eisenstein():
    return _generated((3,), 'Z[zeta_3]', lambda a: (1 + a.gen(1)) / 2)


def sqrt_minus_19():
    return _generated((19,), 'Z[(1+sqrt-19)/2]', lambda a: (1 + a.gen(1)) / 2)


def lipschitz():
    return _clifford((1, 1), 'Lipschitz')


def hurwitz():
    return _generated((1, 1), 'Hurwitz', lambda a: (1 + a.gen(1) + a.gen(2) + _g(a, 1, 2)) / 2)


def o13():
    """O(-1,-3)_2: zeta = (1 + i1 a2)/2 and J = (i1 + a2)/2 over Z[i1, a2]."""
    return _generated(
        (1, 3), 'O(-1,-3)_2',
        lambda a: (1 + _g(a, 1, 2)) / 2,
        lambda a: (a.gen(1) + a.gen(2)) / 2,
    )


def clifford_111():
    return _clifford((1, 1, 1), 'Z[i1,i2,i3]')


def o4():
    """Z[i1, i2, i3] with (1 + i123)/2 and zeta = (1 + i1 + i2 + i3)/2 adjoined."""
    return _generated(
        (1, 1, 1), 'O4',
        lambda a: (1 + _g(a, 1, 2, 3)) / 2,
        lambda a: (1 + a.gen(1) + a.gen(2) + a.gen(3)) / 2,
    )


def clifford_1111():
    return _clifford((1, 1, 1, 1), 'Z[i1,i2,i3,i4]')


def o5_code(word='01111'):
    """The maximal order of Clf(-1,-1,-1,-1) whose code is spanned by ``word``."""
    code = BinaryCode.from_text(word, length=5)
    order = maximal_code_order(code)
    if order is None:
        raise CatalogueError(f"No maximal order with code {word}")
    zero = next((j for j, bit in enumerate(code.words[0]) if not bit), None) if code.words else None
    order.label = f"O5,{zero}" if zero is not None else f"O5[{word}]"
    return order


def o5_oddball():
    """v O5,0 v^-1 for v = 1 + i2 + i1 i2 + i2 i3 i4."""
    base = o5_code('01111')
    a = base.algebra
    v = 1 + a.gen(2) + _g(a, 1, 2) + _g(a, 2, 3, 4)
    order = clifford_conjugate(base, v.inverse())
    order.label = 'O5,!'
    return order


def clifford_113():
    return _clifford((1, 1, 3), 'Z[i1,i2,a3]')


def b113():
    """B(-1,-1,-3)_0 = Z[i1, i2, a3][zeta_0], zeta_0 = (1 + a3)/2."""
    return _generated((1, 1, 3), 'B(-1,-1,-3)_0', lambda a: (1 + a.gen(3)) / 2)


def b113_conjugate(j):
    """B(-1,-1,-3)_j for j = 1, 2, generated by (1 + i_j a3)/2."""
    return _generated((1, 1, 3), f'B(-1,-1,-3)_{j}', lambda a: (1 + _g(a, j, 3)) / 2)


def a113():
    """A(-1,-1,-3) = Z[i1, i2, a3][alpha, beta, gamma]."""
    return _generated(
        (1, 1, 3), 'A(-1,-1,-3)',
        lambda a: (1 + _g(a, 1, 2) + _g(a, 1, 3) + _g(a, 2, 3)) / 2,
        lambda a: (a.gen(1) + _g(a, 1, 2) + _g(a, 1, 3) + _g(a, 1, 2, 3)) / 2,
        lambda a: (1 + a.gen(1) + a.gen(2) + _g(a, 1, 2)) / 2,
    )


# regions

def triangle_19():
    """The triangle 0, omega - 1, omega for omega = (1 + sqrt-19)/2."""
    return Polytope.from_inequalities([
        ((1, -1), 0),
        ((-1, -1), 0),
        ((0, 1), HALF),
    ])


def hurwitz_cell():
    """0 <= x0 <= x2 and |x1| <= x2 <= 1/2."""
    return Polytope.from_inequalities([
        ((-1, 0, 0), 0),
        ((1, 0, -1), 0),
        ((0, 1, -1), 0),
        ((0, -1, -1), 0),
        ((0, 0, 1), HALF),
    ])


def oddball_cell():
    """
    x_i <= 1/2 for all i, x_i >= 0 for i <= 3, x4 >= -1/2,
    x0 >= x1 >= x2 >= x3 and x2 >= |x4|.
    """
    rows = []
    for i in range(5):
        rows.append(([int(j == i) for j in range(5)], HALF))
    for i in range(4):
        rows.append(([-int(j == i) for j in range(5)], 0))
    rows.append(([0, 0, 0, 0, -1], HALF))
    for i in range(3):
        rows.append(([int(j == i + 1) - int(j == i) for j in range(5)], 0))
    rows.append(([0, 0, -1, 0, 1], 0))
    rows.append(([0, 0, -1, 0, -1], 0))
    return Polytope.from_inequalities(rows)


PRESETS = {
    p.name: p for p in [
        Preset('integers', (), integers, None, True, False, 'PSL2(Z)'),
        Preset('gaussian', (1,), gaussian, None, True, False, 'Q(i)'),
        Preset('sqrt-3', (3,), sqrt_minus_3, None, True, False, 'Z[sqrt-3], index 10 example'),
        Preset('eisenstein', (3,), eisenstein, None, True, False, 'Q(sqrt-3) maximal order'),
        Preset('sqrt-19', (19,), sqrt_minus_19, triangle_19, False, False, 'Q(sqrt-19), five bubbles'),
        Preset('lipschitz', (1, 1), lipschitz, None, True, False, 'Lipschitz quaternions'),
        Preset('hurwitz', (1, 1), hurwitz, hurwitz_cell, True, False, 'Hurwitz quaternions'),
        Preset('o13', (1, 3), o13, None, True, False, '(-1,-3/Q) stained glass order'),
        Preset('clifford-111', (1, 1, 1), clifford_111, None, True, False, 'Z[i1,i2,i3]'),
        Preset('o4', (1, 1, 1), o4, None, True, False, 'O4, the maximal order over Z[i1,i2,i3]'),
        Preset('clifford-1111', (1, 1, 1, 1), clifford_1111, None, True, True, 'Z[i1,i2,i3,i4]'),
        Preset('o5-code', (1, 1, 1, 1), o5_code, None, True, True, 'O5,0 (code 01111)'),
        Preset('o5-oddball', (1, 1, 1, 1), o5_oddball, oddball_cell, True, True, 'O5,!, the oddball'),
        Preset('clifford-113', (1, 1, 3), clifford_113, None, True, False, 'Z[i1,i2,a3]'),
        Preset('b113', (1, 1, 3), b113, None, True, False, 'B(-1,-1,-3)_0'),
        Preset('a113', (1, 1, 3), a113, None, True, False, 'A(-1,-1,-3)'),
    ]
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError as exc:
        raise CatalogueError(f"Unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}") from exc


@lru_cache(maxsize=None)
def preset_order(name):
    preset = get_preset(name)
    order = preset.build()
    order.verify()
    logger.info(f"Preset {name}: {order!r}, discriminant {order.discriminant().value}")
    return order


def preset_region(name):
    """(cell, region) for the domain module: None means the Dirichlet cell."""
    preset = get_preset(name)
    if preset.region is None:
        return None, None
    region = preset.region()
    if preset.region_is_cell:
        return region, region
    return None, region


def load_order(name=None, path=None):
    """A preset by name, or an order from its JSON file."""
    from .serialization import load_json

    if name:
        return preset_order(name)
    if path:
        return Order.from_json(load_json(path), label=str(path))
    raise CatalogueError("Give a preset name or an order file")
