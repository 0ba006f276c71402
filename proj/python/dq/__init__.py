"""Python access to the dq core: exact q-series, basic classes and invariants.

Results come back as plain Python structures; every number is an exact string
such as "-1/2".
"""

import json
from fractions import Fraction

from . import _core

__all__ = [
    "catalog_names",
    "series",
    "series_coefficients",
    "basic_classes",
    "donaldson",
    "structure",
    "blowup",
    "selftest",
    "parse_class",
    "format_class",
]

GRID = 48

catalog_names = _core.catalog_names
parse_class = _core.parse_class
format_class = _core.format_class


def series(name, qorder):
    return json.loads(_core.mfseries(name, str(qorder)))


def series_coefficients(name, qorder):
    """Map from q-exponent (Fraction) to coefficient; rational coefficients become Fractions."""
    out = {}
    for e, c in series(name, qorder)["terms"]:
        key = Fraction(e, GRID)
        out[key] = Fraction(c) if isinstance(c, str) else tuple(Fraction(x) for x in c)
    return out


def basic_classes(surface, F, G=""):
    return json.loads(_core.basic_classes(surface, F, G))


def donaldson(surface, C, F, x, rmax=0, zorder=8, G=""):
    return json.loads(_core.donaldson(surface, C, F, x, rmax, zorder, G))


def structure(surface, C, F, x, R=5, zorder=8):
    return json.loads(_core.structure(surface, C, F, x, R, zorder))


def blowup(max_k=6):
    return json.loads(_core.blowup(max_k))


def selftest(suite="all"):
    return json.loads(_core.selftest(suite))
