"""
Tabular reports built as pandas DataFrames: printed with ``to_string`` and
written as CSV when an output directory is configured.
"""
import logging
import os

import pandas as pd

from .codes import word_text
from .exceptions import NotAnOrderError
from .orders import code_of

logger = logging.getLogger(__name__)


def order_row(order, units=None):
    try:
        code = code_of(order)
        code_text = ', '.join(word_text(w) for w in code.words) or '0'
    except NotAnOrderError:
        code_text = ''
    row = {
        'order': order.label or repr(order),
        'rank': order.rank,
        'discriminant': order.discriminant().value,
        'star_stable': order.is_star_stable(),
        'clifford_stable': order.is_clifford_stable(),
        'code': code_text,
    }
    if units is not None:
        row['units'] = units.order
        row['units_rigorous'] = units.rigorous
    return row


def orders_frame(orders, unit_groups=None):
    unit_groups = unit_groups or [None] * len(orders)
    rows = [order_row(order, units) for order, units in zip(orders, unit_groups)]
    return pd.DataFrame(rows)


def codes_frame(codes, verdicts=None):
    rows = []
    for i, code in enumerate(codes):
        length, dimension, distance = code.parameters()
        row = {
            'generators': ', '.join(word_text(w) for w in code.words) or '0',
            'length': length,
            'dimension': dimension,
            'minimum_distance': distance,
            'doubly_even': code.is_doubly_even(),
        }
        if verdicts is not None:
            verdict = verdicts[i]
            row['rho_sq'] = str(verdict.covering_radius_sq)
            row['euclidean'] = verdict.euclidean
        rows.append(row)
    return pd.DataFrame(rows)


def acceptance_frame(results):
    """One row per suite result: suite, check, expected, found, passed, seconds."""
    frame = pd.DataFrame([r._asdict() for r in results],
                         columns=['suite', 'check', 'expected', 'found', 'passed', 'seconds'])
    if len(frame):
        frame['seconds'] = frame['seconds'].round(2)
    return frame


def bott_frame(checks):
    return pd.DataFrame([c._asdict() for c in checks], columns=['name', 'passed', 'samples'])


def emit_frame(frame, name, stdout, out=None):
    """Print the table and write ``<name>.csv`` under the output directory when one was given."""
    if frame.empty:
        stdout.write(f"{name}: no rows\n")
    else:
        stdout.write(frame.to_string(index=False) + '\n')
    if out:
        os.makedirs(out, exist_ok=True)
        path = os.path.join(out, f"{name}.csv")
        frame.to_csv(path, index=False)
        logger.info(f"Wrote {len(frame)} rows to {path}")
        return path
    return None
