"""Truncated q-series and constant-term extraction at t = 0.

A :class:`TruncSeries` is a Laurent polynomial in some active variables
whose coefficients are power series in ``q`` cut off above ``q**N``.
Small-circle contour integrals become coefficient extraction: the integral
over ``y`` of ``dy/(2 pi i y)`` picks the ``y**0`` term.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .corealg import LaurentPoly, QLaurent, q_factorial
from .errors import BudgetExhaustedError
from .macdonald import SpecPoint, macdonald_t0, norm_closed_form

__all__ = [
    "TruncSeries",
    "inv_q_factorial_series",
    "q_pochhammer_inf",
    "expand_delta_t0",
    "expand_kernel_t0",
    "constant_term",
    "gamma_q_truncated",
    "degree_budget",
    "t0_recursion_rhs",
    "verify_t0_recursion",
    "norm_formulas",
    "constant_term_norm_check",
]


def _cut(c: QLaurent, N: int) -> QLaurent:
    return c.truncate(2 * N)


class TruncSeries:
    """Laurent polynomial over Q[[q]] / (q^(N+1)).

    ``terms`` maps exponent tuples of the active variables to QLaurent
    coefficients whose s-exponents lie in [0, 2N].
    """

    __slots__ = ("nvars", "N", "terms")

    def __init__(self, nvars: int, N: int, terms=None):
        self.nvars = nvars
        self.N = N
        clean = {}
        for e, c in (terms or {}).items():
            c = _cut(QLaurent.coerce(c), N)
            if not c.is_zero():
                if c.valuation() < 0:
                    raise ValueError("negative q-powers are not allowed in a truncated series")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, nvars, N, terms):
        obj = cls.__new__(cls)
        obj.nvars, obj.N, obj.terms = nvars, N, terms
        return obj

    @classmethod
    def one(cls, nvars: int, N: int) -> "TruncSeries":
        return cls(nvars, N, {(0,) * nvars: 1})

    @classmethod
    def from_poly(cls, p: LaurentPoly, N: int) -> "TruncSeries":
        return cls(p.nvars, N, p.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return TruncSeries._trusted(self.nvars, self.N, {e: c for e, c in acc.items() if not c.is_zero()})

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TruncSeries":
        c = QLaurent.coerce(c)
        return TruncSeries(self.nvars, self.N, {e: v * c for e, v in self.terms.items()})

    def mul(self, other: "TruncSeries", keep=None) -> "TruncSeries":
        """Product, re-truncated; ``keep(exp)`` may veto terms (pruning)."""
        N = min(self.N, other.N)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if keep is not None and not keep(e):
                    continue
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        out = {}
        for e, c in acc.items():
            c = _cut(c, N)
            if not c.is_zero():
                out[e] = c
        return TruncSeries._trusted(self.nvars, N, out)

    __mul__ = mul

    def by_q_power(self) -> dict:
        """The same data as ``{k: LaurentPoly coefficient of q**k}``."""
        out = {}
        for e, c in self.terms.items():
            for se, v in c.terms().items():
                if se % 2:
                    raise ValueError("half-integer q-power in a q-series")
                out.setdefault(se // 2, {})[e] = v
        return {k: LaurentPoly(self.nvars, t) for k, t in sorted(out.items())}

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly(self.nvars, self.terms)

    def truncate(self, N: int) -> "TruncSeries":
        return TruncSeries(self.nvars, min(N, self.N), self.terms)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        N = min(self.N, other.N)
        return self.truncate(N).terms == other.truncate(N).terms

    def __repr__(self):
        return f"TruncSeries(N={self.N}, {self.to_poly()})"


@lru_cache(maxsize=None)
def inv_q_factorial_series(m: int, N: int) -> QLaurent:
    """1/((1-q)...(1-q^m)) mod q^(N+1), via products of geometric series."""
    out = QLaurent(1)
    for j in range(1, m + 1):
        geo = QLaurent({2 * j * k: 1 for k in range(N // j + 1)})
        out = _cut(out * geo, N)
    return out


@lru_cache(maxsize=None)
def q_pochhammer_inf(N: int) -> QLaurent:
    """(q; q)_infinity mod q^(N+1)."""
    out = QLaurent(1)
    for m in range(1, N + 1):
        out = _cut(out * (1 - QLaurent.q(m)), N)
    return out


def _unit(n, i, sign=1):
    e = [0] * n
    e[i] = sign
    return e


def expand_delta_t0(nvars: int, N: int, total=None, offset: int = 0) -> TruncSeries:
    """prod_{i != j} prod_{n >= 0} (1 - x_i/x_j q^n) mod q^(N+1).

    Variables are ``offset .. offset+nvars-1`` inside ``total`` variables.
    """
    total = nvars if total is None else total
    out = TruncSeries.one(total, N)
    for i in range(nvars):
        for j in range(nvars):
            if i == j:
                continue
            e = [0] * total
            e[offset + i] += 1
            e[offset + j] -= 1
            for n in range(N + 1):
                factor = TruncSeries(total, N, {(0,) * total: 1, tuple(e): -QLaurent.q(n)})
                out = out * factor
    return out


def gamma_q_truncated(arg: LaurentPoly, N: int, max_power: int | None = None) -> TruncSeries:
    """1/prod_{j>=0}(1 - u q^j) = sum_m u^m/(q)_m for a monomial ``u``.

    When ``u`` carries no positive power of q the sum is infinite in the
    variables, and ``max_power`` must cap m.
    """
    if len(arg.terms) != 1:
        raise ValueError("gamma_q_truncated needs a monomial argument")
    (e, c), = arg.terms.items()
    c = QLaurent.coerce(c)
    qv = c.valuation() if not c.is_zero() else 0
    n = arg.nvars
    if c.is_zero():
        return TruncSeries.one(n, N)
    if max_power is None:
        if qv <= 0:
            raise BudgetExhaustedError("argument without a positive q-power needs max_power")
        max_power = (2 * N) // qv
    out = {}
    for m in range(max_power + 1):
        coeff = _cut(c ** m * inv_q_factorial_series(m, N), N)
        if not coeff.is_zero():
            out[tuple(m * x for x in e)] = coeff
    return TruncSeries(n, N, out)


@dataclass(frozen=True)
class DegreeBudget:
    """Maximum power of each y_j^(-1) that the kernel expansion may use."""

    caps: tuple

    def enlarged(self, extra: int) -> "DegreeBudget":
        return DegreeBudget(tuple(c + extra for c in self.caps))


def degree_budget(series: TruncSeries, yvars) -> DegreeBudget:
    """Largest positive exponent of each y-variable in ``series``.

    Kernel factors only lower y-degrees, so no term using more than this
    many powers of 1/y_j can reach the constant term.
    """
    caps = []
    for j in yvars:
        caps.append(max((e[j] for e in series.terms), default=0))
    return DegreeBudget(tuple(max(c, 0) for c in caps))


def expand_kernel_t0(nx: int, ny: int, N: int, budget: DegreeBudget) -> TruncSeries:
    """prod_{i,j} prod_n 1/(1 - x_i y_j^(-1) q^n) with y_j^(-m) capped per budget.

    Variables are x_1..x_nx followed by y_1..y_ny.
    """
    total = nx + ny
    out = TruncSeries.one(total, N)
    for i in range(nx):
        for j in range(ny):
            e = [0] * total
            e[i] = 1
            e[nx + j] = -1
            factor = gamma_q_truncated(LaurentPoly(total, {tuple(e): 1}), N, budget.caps[j])
            out = out * factor
    return out


def constant_term(series: TruncSeries, in_vars) -> TruncSeries:
    """Keep the terms with zero exponent in every variable of ``in_vars`` and drop them."""
    in_vars = set(in_vars)
    keep = [i for i in range(series.nvars) if i not in in_vars]
    out = {}
    for e, c in series.terms.items():
        if all(e[i] == 0 for i in in_vars):
            out[tuple(e[i] for i in keep)] = c
    return TruncSeries._trusted(len(keep), series.N, out)


def t0_recursion_rhs(lam, N: int, extra_budget: int = 0) -> TruncSeries:
    """(A_l / l!) CT_y[ C(x, 1/y) P_lam(y; q, 0) Delta(y | q, 0) ] mod q^(N+1).

    ``lam`` has l entries; the result lives in l+1 variables x.
    """
    lam = tuple(lam)
    ell = len(lam)
    nx = ell + 1
    total = nx + ell
    yidx = list(range(nx, total))
    P = macdonald_t0(lam, ell)
    F = TruncSeries.from_poly(P.embed(total, yidx), N)
    F = F * expand_delta_t0(ell, N, total, offset=nx)
    budget = degree_budget(F, yidx).enlarged(extra_budget)

    def nonneg_y(e):
        return all(e[j] >= 0 for j in yidx)

    for j in range(ell):
        for i in range(nx):
            e = [0] * total
            e[i] = 1
            e[nx + j] = -1
            factor = gamma_q_truncated(LaurentPoly(total, {tuple(e): 1}), N, budget.caps[j])
            F = F.mul(factor, keep=nonneg_y)
    ct = constant_term(F, yidx)
    A = q_pochhammer_inf(N) ** (ell - 1) * q_factorial(lam[-1]) if ell else QLaurent(1)
    return ct.scale(QLaurent(Fraction(1, factorial(ell))) * A)


def verify_t0_recursion(lam, N: int, extra_budget: int = 0, detail: bool = False):
    """Compare P_lam(x; q, 0) in l+1 variables with the constant-term recursion mod q^(N+1)."""
    lam = tuple(lam)
    rhs = t0_recursion_rhs(lam, N, extra_budget)
    lhs = TruncSeries.from_poly(macdonald_t0(lam + (0,), len(lam) + 1), N)
    ok = lhs == rhs
    return (ok, lhs, rhs) if detail else ok


def norm_formulas(lam, spec: SpecPoint, N: int = 20):
    """Closed forms (<P,P>', <P,P>) for a partition with l = len(lam) entries.

    At t = 0 these are prod_{i<l} prod_{m>=1} 1/(1 - q^(lam_i - lam_{i+1} + m))
    (returned mod q^(N+1)) and prod_{i<l} (lam_i - lam_{i+1})_q! (lam_l)_q!.
    At a numeric point the first is the product truncated at n <= N and
    the second is exact.
    """
    lam = tuple(lam)
    ell = len(lam)
    if spec.kind == "t0":
        prime = QLaurent(1)
        plain = QLaurent(1)
        for i in range(ell - 1):
            d = lam[i] - lam[i + 1]
            for m in range(1, N + 1):
                if d + m > N:
                    break
                geo = QLaurent({2 * (d + m) * k: 1 for k in range(N // (d + m) + 1)})
                prime = _cut(prime * geo, N)
            plain = plain * q_factorial(d)
        if ell:
            plain = plain * q_factorial(lam[-1])
        return prime, plain
    if spec.kind == "numeric":
        q, t = spec.q, spec.t
        prime = Fraction(1)
        for i in range(ell):
            for j in range(i + 1, ell):
                w = j - i
                d = lam[i] - lam[j]
                for n in range(N + 1):
                    prime *= (1 - t ** w * q ** (d + n)) * (1 - t ** w * q ** (d + n + 1))
                    prime /= (1 - t ** (w + 1) * q ** (d + n)) * (1 - t ** (w - 1) * q ** (d + n + 1))
        return prime, norm_closed_form(lam, spec)
    raise ValueError(f"norm formulas need a numeric or t = 0 specialization, got {spec}")


def constant_term_norm_check(nvars: int, N: int) -> bool:
    """(1/n!) CT[Delta(y | q, 0)] = (q;q)_inf^-(n-1) mod q^(N+1)."""
    ct = constant_term(expand_delta_t0(nvars, N), range(nvars))
    value = ct.terms.get((), QLaurent())
    value = value * QLaurent(Fraction(1, factorial(nvars)))
    expected = QLaurent(1)
    for _ in range(nvars - 1):
        expected = _cut(expected * inv_q_factorial_series(N, N), N)
    return _cut(value, N) == expected
