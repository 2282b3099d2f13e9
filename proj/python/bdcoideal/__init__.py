"""Exact coideal checks for real forms of complex simple Lie algebras.

Cases and configs use the JSON case-file schema of the command-line tool,
passed here as dicts (the "schema" key may be omitted).
"""

import json

from . import _core
from ._core import InputError, schema_version

__all__ = [
    "InputError",
    "check",
    "classify",
    "painted_root_criterion",
    "roots",
    "schema_version",
    "solve_lambda",
]


def _encode(doc):
    doc = dict(doc)
    doc.setdefault("schema", schema_version)
    return json.dumps(doc)


def roots(type_name):
    """Positive roots, Killing Gram matrix and highest root of a Dynkin type."""
    return json.loads(_core.roots(type_name))


def check(case):
    """Coideal verdict for one case; a missing lambda is replaced by an admissible base point."""
    return json.loads(_core.check(_encode(case)))


def solve_lambda(case):
    """Classification record of a case with lambda solved for."""
    return json.loads(_core.solve_lambda(_encode(case)))


def classify(config, jobs=0):
    """Classification records for a config; jobs > 0 overrides the config's worker count."""
    return json.loads(_core.classify(_encode(config), jobs))


def painted_root_criterion(type_name, J):
    """True iff exactly one simple root lies outside J and it has coefficient 1 in the highest root."""
    return _core.painted_root_criterion(type_name, list(J))
