"""Naturally reductive spaces with exact rational arithmetic.

Documents are JSON strings in the natred schema; the helpers below accept either
strings or already-parsed dicts and return parsed dicts.
"""

import json

from . import _natred
from ._natred import NatredError, SCHEMA_VERSION, catalog_names

__all__ = [
    "NatredError",
    "SCHEMA_VERSION",
    "catalog_names",
    "catalog",
    "analyze",
    "verify",
    "reduce",
    "iso",
    "extend",
    "base",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def catalog(name):
    return json.loads(_natred.catalog(name))


def analyze(doc, format="json"):
    out = _natred.analyze(_text(doc), format)
    return json.loads(out) if format == "json" else out


def verify(doc):
    ok, out = _natred.verify(_text(doc))
    return ok, json.loads(out)


def reduce(doc):
    reducible, out = _natred.reduce(_text(doc))
    return reducible, json.loads(out)


def iso(a, b):
    verdict, out = _natred.iso(_text(a), _text(b))
    return verdict, json.loads(out)


def extend(spec):
    return json.loads(_natred.extend(_text(spec)))


def base(doc):
    return json.loads(_natred.base(_text(doc)))
