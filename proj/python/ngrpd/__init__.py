"""Finite n-groupoids, hypercovers, the graph-cover Galois correspondence and
localization checks. Inputs and outputs are the JSON shapes from
docs/formats.md, as plain dicts (strings are accepted too)."""

import json as _json

from . import _core
from ._core import InvalidInput, Refused

__all__ = [
    "InvalidInput",
    "Refused",
    "audit_cfo",
    "audit_site",
    "build_cover",
    "check_fibration",
    "check_groupoid",
    "check_hypercover",
    "compare_models",
    "delta",
    "fiber",
    "is_weak_equivalence",
    "localize",
    "max_cells",
    "selftest",
]


def _t(value):
    return value if isinstance(value, str) else _json.dumps(value)


def _site(site):
    # a bare kind name such as "finsets" is not JSON text
    if isinstance(site, str) and not site.lstrip().startswith(("{", '"')):
        return _json.dumps(site)
    return _t(site)


def _n(n):
    return "inf" if n in (None, float("inf")) else str(n)


def max_cells():
    return _core.max_cells()


def delta(k, N=None, boundary=False, horn=None):
    return _json.loads(_core.delta(k, -1 if N is None else N, boundary, -1 if horn is None else horn))


def check_groupoid(obj, n=1):
    return _json.loads(_core.check_groupoid(_t(obj), _n(n)))


def check_fibration(f):
    return _json.loads(_core.check_fibration(_t(f)))


def check_hypercover(f, n=None):
    return _json.loads(_core.check_hypercover(_t(f), _n(n)))


def is_weak_equivalence(f):
    return _core.is_weak_equivalence(_t(f))


def fiber(base, cover):
    return _json.loads(_core.fiber(_t(base), _t(cover)))


def build_cover(base, action):
    return _json.loads(_core.build_cover(_t(base), _t(action)))


def audit_site(site="finsets", bound=3):
    return _json.loads(_core.audit_site(_site(site), bound))


def audit_cfo(sample, n=1):
    return _json.loads(_core.audit_cfo(_t(sample), n))


def compare_models(cat, max_length=4, source=None, target=None):
    return _json.loads(_core.compare_models(_t(cat), max_length, source or "", target or ""))


def localize(site="finsets", n=0, bound=2, marks=None):
    return _json.loads(_core.localize(_site(site), n, bound, marks or ""))


def selftest(filter="", jobs=1, fixtures=None):
    return _json.loads(_core.selftest(filter, jobs, fixtures or ""))
