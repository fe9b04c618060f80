"""
SVG sections of a fundamental domain: the circles where facet bubbles meet a
coordinate plane, and the trace of the Gamma_infty region on it.

Centers and radii stay exact until rendering; coordinates with metric weight
d are scaled by sqrt(d) so the sections are round, and every number is printed
with BIANCHI_SVG_PRECISION significant digits.
"""
import logging
import math
from collections import namedtuple
from fractions import Fraction
from itertools import combinations

from django.conf import settings
from django.template.loader import render_to_string
from sympy import N, Rational, sqrt

from .exceptions import ParseError

logger = logging.getLogger(__name__)

Circle = namedtuple('Circle', ['center', 'radius_sq', 'bubble'])


def _rational(x):
    x = Fraction(x)
    return Rational(x.numerator, x.denominator)


def decimal_text(value, precision=None):
    precision = precision or getattr(settings, 'BIANCHI_SVG_PRECISION', 20)
    if value == 0:
        return '0'
    return str(N(value, precision))


def _fixed(dim, plane, values):
    others = [k for k in range(dim) if k not in plane]
    values = list(values) if values is not None else [Fraction(0)] * len(others)
    if len(values) != len(others):
        raise ParseError(f"Slice needs {len(others)} values for the coordinates {others}, got {len(values)}")
    return dict(zip(others, (Fraction(v) for v in values)))


def plane_sections(bubbles, metric, plane=(0, 1), slice_values=None):
    """Exact (center, squared radius) of each bubble's section, skipping those that miss the plane."""
    i, j = plane
    if max(plane) >= len(metric):
        raise ParseError(f"Plane {plane} is outside the {len(metric)} coordinates")
    fixed = _fixed(len(metric), plane, slice_values)
    found = []
    for bubble in bubbles:
        radius_sq = bubble.radius_sq - sum(
            (metric[k] * (value - bubble.center[k]) ** 2 for k, value in fixed.items()), Fraction(0))
        if radius_sq <= 0:
            continue
        found.append(Circle((bubble.center[i], bubble.center[j]), radius_sq, bubble))
    return found


def region_trace(polytope, plane=(0, 1), slice_values=None):
    """Vertices of the polygon cut from ``polytope`` by the plane, counterclockwise."""
    i, j = plane
    fixed = _fixed(polytope.dim, plane, slice_values)
    lines = []
    for normal, offset in polytope.halfspaces:
        rest = offset - sum((normal[k] * value for k, value in fixed.items()), Fraction(0))
        if normal[i] == 0 and normal[j] == 0:
            if rest < 0:
                return []
            continue
        lines.append((normal[i], normal[j], rest))
    vertices = set()
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (c1 * b2 - c2 * b1) / det
        y = (a1 * c2 - a2 * c1) / det
        if all(a * x + b * y <= c for a, b, c in lines):
            vertices.add((x, y))
    if not vertices:
        return []
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))


def section_context(domain, plane=(0, 1), slice_values=None, precision=None):
    metric = domain.order.algebra.paravector_metric()
    i, j = plane
    scale_x, scale_y = sqrt(_rational(metric[i])), sqrt(_rational(metric[j]))
    circles = plane_sections(domain.bubbles, metric, plane, slice_values)
    trace = region_trace(domain.region, plane, slice_values)

    xs, ys = [], []
    rendered = []
    for circle in circles:
        cx = _rational(circle.center[0]) * scale_x
        cy = _rational(circle.center[1]) * scale_y
        r = sqrt(_rational(circle.radius_sq))
        xs += [float(cx - r), float(cx + r)]
        ys += [float(cy - r), float(cy + r)]
        rendered.append({
            'cx': decimal_text(cx, precision),
            'cy': decimal_text(cy, precision),
            'r': decimal_text(r, precision),
            'center': ' '.join(str(x) for x in circle.bubble.center),
            'radius_sq': str(circle.bubble.radius_sq),
            'tidy': circle.bubble.tidy,
        })
    points = []
    for x, y in trace:
        px, py = _rational(x) * scale_x, _rational(y) * scale_y
        xs.append(float(px))
        ys.append(float(py))
        points.append(f"{decimal_text(px, precision)},{decimal_text(py, precision)}")
    if not xs:
        xs, ys = [-1.0, 1.0], [-1.0, 1.0]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    left, bottom = min(xs) - pad, min(ys) - pad
    width, height = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
    return {
        'title': f"{domain.order.label or domain.order!r}: section x{i}, x{j}",
        'view_box': f"{left:.6f} {-(bottom + height):.6f} {width:.6f} {height:.6f}",
        'stroke': f"{max(width, height) / 400:.6f}",
        'circles': rendered,
        'trace': ' '.join(points),
        'plane': plane,
        'bound': domain.bound,
    }


def render_section(domain, plane=(0, 1), slice_values=None, precision=None):
    context = section_context(domain, plane, slice_values, precision)
    logger.info(f"Rendering {len(context['circles'])} circles for {context['title']}")
    return render_to_string('bianchi/section.svg', context)


def write_section(path, domain, plane=(0, 1), slice_values=None, precision=None):
    svg = render_section(domain, plane, slice_values, precision)
    with open(path, 'w') as handle:
        handle.write(svg)
    logger.info(f"Wrote SVG section to {path}")
    return path
