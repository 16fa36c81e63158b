"""Canonical JSON for exact values.

A value is written as ``{"vars": [...], "terms": [{"exp": [...], "coeff": C}]}``
with terms in monomial lex order (largest exponent first, so z1 precedes
z2).  A coefficient ``C`` is
``{"s_terms": [[e, num, den], ...]}`` meaning sum num/den * s^e with s^2 = q;
rational functions of q add ``"den_s_terms"`` for the denominator.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .corealg import LaurentPoly, QLaurent, QRatio, is_zero

__all__ = ["to_obj", "from_obj", "serialize", "parse", "scalar_obj", "scalar_from_obj"]


def _s_terms(x: QLaurent) -> list:
    return [[e, c.numerator, c.denominator] for e, c in x.items()]


def scalar_obj(c) -> dict:
    if isinstance(c, QRatio):
        if c.is_laurent():
            return {"s_terms": _s_terms(c.as_laurent())}
        return {"s_terms": _s_terms(c.num), "den_s_terms": _s_terms(c.den)}
    return {"s_terms": _s_terms(QLaurent.coerce(c))}


def _laurent_from(terms) -> QLaurent:
    return QLaurent({int(e): Fraction(int(n), int(d)) for e, n, d in terms})


def scalar_from_obj(obj: dict):
    num = _laurent_from(obj["s_terms"])
    if "den_s_terms" in obj:
        return QRatio(num, _laurent_from(obj["den_s_terms"]))
    return num


def to_obj(value, var_names=None) -> dict:
    """JSON-ready dict for a LaurentPoly or a scalar (which has no variables)."""
    if isinstance(value, LaurentPoly):
        names = list(var_names) if var_names else [f"z{i + 1}" for i in range(value.nvars)]
        if len(names) != value.nvars:
            raise ValueError("wrong number of variable names")
        terms = [{"exp": list(e), "coeff": scalar_obj(c)} for e, c in reversed(value.items())]
        return {"vars": names, "terms": terms}
    if is_zero(value):
        return {"vars": [], "terms": []}
    return {"vars": [], "terms": [{"exp": [], "coeff": scalar_obj(value)}]}


def from_obj(obj: dict):
    """Inverse of :func:`to_obj`; scalars come back as QLaurent or QRatio."""
    nvars = len(obj["vars"])
    if nvars == 0:
        if not obj["terms"]:
            return QLaurent()
        return scalar_from_obj(obj["terms"][0]["coeff"])
    terms = {tuple(t["exp"]): scalar_from_obj(t["coeff"]) for t in obj["terms"]}
    return LaurentPoly(nvars, terms)


def serialize(value, var_names=None) -> str:
    return json.dumps(to_obj(value, var_names), separators=(",", ":"))


def parse(text: str):
    return from_obj(json.loads(text))
