"""
Canonical JSON for toolkit objects: sorted keys, rationals as 'p/q' strings.
"""
import json
import logging
import os
from fractions import Fraction

from django.core.serializers.json import DjangoJSONEncoder

from .exceptions import ParseError

logger = logging.getLogger(__name__)


class BianchiJSONEncoder(DjangoJSONEncoder):
    """DjangoJSONEncoder that also knows Fractions, elements and to_json() objects."""

    def default(self, o):
        if isinstance(o, Fraction):
            return str(o)
        if hasattr(o, 'to_json'):
            return o.to_json()
        if isinstance(o, (set, frozenset)):
            return sorted(o, key=str)
        return super().default(o)


def canonical_dumps(payload):
    return json.dumps(payload, cls=BianchiJSONEncoder, sort_keys=True, indent=2, ensure_ascii=False)


def write_json(path, payload):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(canonical_dumps(payload))
        handle.write('\n')
    logger.info(f"Wrote {path}")
    return path


def load_json(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"Cannot read JSON from {path}: {exc}") from exc


def fraction_list(values):
    return [str(Fraction(v)) for v in values]
