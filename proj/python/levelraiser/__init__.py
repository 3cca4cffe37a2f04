"""Level raising for elliptic curves over Q: a thin wrapper over the C++ core."""

import json

from . import _levelraiser as _core
from ._levelraiser import LevelraiserError

__all__ = [
    "LevelraiserError",
    "ap",
    "aux_primes",
    "certificate_1427",
    "check",
    "cn_bound",
    "coefficient",
    "error_kind",
    "family_member",
    "family_scan",
    "lmfdb_fetch",
    "modsym",
    "plan",
    "reverify",
    "verify",
]


def _curve(curve):
    if isinstance(curve, str):
        return curve
    return ",".join(str(a) for a in curve)


def error_kind(exc):
    """Stable kind name of a LevelraiserError, e.g. 'BadReduction'."""
    return exc.args[0]


def ap(curve, p):
    return json.loads(_core.ap(_curve(curve), p))


def plan(curve, p, avoid_p=False):
    return json.loads(_core.plan(_curve(curve), p, avoid_p))


def coefficient(p, charpoly):
    """charpoly as "[c0,c1,...]", constant term first, or a list of ints."""
    if not isinstance(charpoly, str):
        charpoly = "[" + ",".join(str(c) for c in charpoly) + "]"
    return json.loads(_core.coefficient(p, charpoly))


def cn_bound(n):
    return json.loads(_core.cn_bound(n))


def verify(curve, p, ell, eps, B=30, conductor=None, try_lower_levels=False):
    return json.loads(_core.verify(_curve(curve), p, ell, eps, B, conductor, try_lower_levels))


def reverify(certificate):
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate)
    return _core.reverify(certificate)


def check(curve, q_bound=200, isogeny_class_size=None):
    return json.loads(_core.check(_curve(curve), q_bound, isogeny_class_size))


def modsym(level, hecke=(), new=False):
    return json.loads(_core.modsym(level, list(hecke), new))


def family_member(k):
    return json.loads(_core.family_member(str(k)))


def family_scan(lo, hi):
    return [int(k) for k in _core.family_scan(str(lo), str(hi))]


def certificate_1427():
    return json.loads(_core.certificate_1427())


def aux_primes(curve, p, bound):
    return list(_core.aux_primes(_curve(curve), p, bound))


def lmfdb_fetch(label, offline=True):
    return json.loads(_core.lmfdb_fetch(label, offline))
