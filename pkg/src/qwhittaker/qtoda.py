"""q-deformed gl(l+1) Whittaker functions and the q-Toda difference operators.

Lattice points are integer tuples ``p = (p_1, ..., p_{l+1})``.  Whittaker
values are Laurent polynomials in ``z_1..z_{l+1}``: ``Psi`` has Q(q)
coefficients, the normalized ``Psi~ = Delta(p) Psi`` has coefficients in
Z[q].  Operators act on tables ``{p: value}``; they report the first
missing entry they need through :class:`MissingEntryError`.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

from .corealg import LaurentPoly, QLaurent, QRatio, elementary, enumerate_gz, q_factorial
from .corealg.combinat import is_weakly_decreasing, partitions_in_box
from .errors import InexactDivisionError, MissingEntryError
from .macdonald import apply_subset_operator, macdonald_t0, varrho

__all__ = [
    "is_dominant",
    "inv_q_factorial",
    "delta_p",
    "whittaker_gz",
    "whittaker_recursive",
    "normalize_whittaker",
    "whittaker_tilde",
    "whittaker_from_macdonald",
    "whittaker_table",
    "box_points",
    "toda_apply",
    "toda_eigen_check",
    "toda_dual_x_apply",
    "toda_dual_x_on_table",
    "x_of_p",
    "hat_x_apply",
    "hat_x_eigenvalue",
    "hat_x_on_table",
    "hat_dual_apply",
    "toda_dual_lambda_apply",
    "operator_identity_check",
    "symmetry_check",
    "sl2_discrete_check",
    "funchar_check",
    "translation_check",
    "modpsi_check",
]

Q = QLaurent.q(1)


def is_dominant(p) -> bool:
    return is_weakly_decreasing(tuple(p))


def inv_q_factorial(n: int):
    """1/(n)_q!, and 0 for negative n (the convention that kills non-interlacing terms)."""
    if n < 0:
        return QRatio(0)
    return QRatio(1, q_factorial(n))


def delta_p(p) -> QLaurent:
    """prod_i (p_i - p_{i+1})_q! for dominant p."""
    out = QLaurent(1)
    for a, b in zip(p, p[1:]):
        if a < b:
            raise ValueError(f"{p} is not dominant")
        out = out * q_factorial(a - b)
    return out


def _zero(n) -> LaurentPoly:
    return LaurentPoly(n)


@lru_cache(maxsize=None)
def whittaker_gz(p: tuple, ell: int | None = None) -> LaurentPoly:
    """Psi_z(p) as the Gelfand-Zetlin sum; zero off the dominant domain.

    Each pattern contributes prod_k z_k^(|row_k| - |row_{k-1}|) times the
    interior factorials prod_{k=2..l} prod_{i<k} (p_{k,i} - p_{k,i+1})_q!
    over the boundary factorials (p_{k+1,i} - p_{k,i})_q! (p_{k,i} - p_{k+1,i+1})_q!.
    """
    p = tuple(p)
    n = len(p)
    if ell is not None and ell + 1 != n:
        raise ValueError(f"point {p} does not have l+1 = {ell + 1} entries")
    if not is_dominant(p):
        return _zero(n)
    acc = {}
    for pat in enumerate_gz(p):
        sums = [sum(row) for row in pat]
        exp = tuple(sums[k] - (sums[k - 1] if k else 0) for k in range(n))
        num = QLaurent(1)
        for k in range(1, n - 1):  # rows of length 2..l
            row = pat[k]
            for i in range(len(row) - 1):
                num = num * q_factorial(row[i] - row[i + 1])
        den = QLaurent(1)
        for k in range(n - 1):
            row, up = pat[k], pat[k + 1]
            for i in range(len(row)):
                den = den * q_factorial(up[i] - row[i]) * q_factorial(row[i] - up[i + 1])
        acc.setdefault(exp, []).append((num, den))
    terms = {}
    for exp, fracs in acc.items():
        terms[exp] = _sum_fractions(fracs)
    return LaurentPoly(n, terms)


def _sum_fractions(fracs) -> QRatio:
    """Sum num/den pairs over one common denominator, then reduce once."""
    from .corealg.linalg import common_denominator

    L = common_denominator([QRatio(1, d) for _, d in fracs])
    total = QLaurent()
    for num, den in fracs:
        total = total + num * L.exact_div(den)
    return QRatio(total, L)


@lru_cache(maxsize=None)
def whittaker_recursive(p: tuple) -> LaurentPoly:
    """Psi_z(p) built one rank at a time by summing over interlacing rows."""
    p = tuple(p)
    n = len(p)
    if not is_dominant(p):
        return _zero(n)
    if n == 1:
        return LaurentPoly(1, {(p[0],): QRatio(1)})
    total = _zero(n)
    ranges = [range(p[i + 1], p[i] + 1) for i in range(n - 1)]
    for lower in product(*ranges):
        coeff = QRatio(1)
        for i in range(n - 2):
            coeff = coeff * q_factorial(lower[i] - lower[i + 1])
        for i in range(n - 1):
            coeff = coeff * inv_q_factorial(p[i] - lower[i]) * inv_q_factorial(lower[i] - p[i + 1])
        sub = whittaker_recursive(lower).embed(n, list(range(n - 1)))
        mono = [0] * n
        mono[n - 1] = sum(p) - sum(lower)
        total = total + sub.shift(mono) * coeff
    return total


def normalize_whittaker(p, psi: LaurentPoly) -> LaurentPoly:
    """Psi~ = Delta(p) Psi; asserts that every coefficient lands in Q[q]."""
    p = tuple(p)
    if not is_dominant(p):
        if psi.is_zero():
            return psi
        raise ValueError(f"{p} is not dominant")
    d = delta_p(p)
    out = {}
    for e, c in psi.terms.items():
        v = QRatio.coerce(c) * d
        if not v.is_laurent() or not v.num.is_polynomial():
            raise InexactDivisionError(f"non-polynomial coefficient {v} at {p}")
        out[e] = v.num
    return LaurentPoly(psi.nvars, out)


@lru_cache(maxsize=None)
def whittaker_tilde(p: tuple) -> LaurentPoly:
    """Normalized Whittaker function from the Gelfand-Zetlin sum."""
    p = tuple(p)
    if not is_dominant(p):
        return LaurentPoly(len(p))
    return normalize_whittaker(p, whittaker_gz(p))


def whittaker_from_macdonald(p) -> LaurentPoly:
    """Psi~(p) as P_p(z; q, 0) for a generalized partition p."""
    p = tuple(p)
    if not is_dominant(p):
        return LaurentPoly(len(p))
    return macdonald_t0(p, len(p))


def box_points(n: int, lo: int, hi: int):
    return list(product(range(lo, hi + 1), repeat=n))


def whittaker_table(n: int, lo: int, hi: int, normalized=False) -> dict:
    f = whittaker_tilde if normalized else whittaker_gz
    return {p: f(p) for p in box_points(n, lo, hi)}


# table operators


def _table_apply(r, n, table, coeff, points=None):
    """sum over r-subsets I of coeff(I, p) * table[p + e_I].

    ``coeff`` may return None or zero to skip the shifted entry.
    """
    keys = list(table) if points is None else [tuple(p) for p in points]
    out = {}
    for p in keys:
        total = None
        try:
            for I in combinations(range(n), r):
                c = coeff(I, p)
                if c is None or c == 0:
                    continue
                key = tuple(p[a] + (1 if a in I else 0) for a in range(n))
                if key not in table:
                    raise MissingEntryError(key)
                term = table[key] * c
                total = term if total is None else total + term
        except MissingEntryError:
            if points is not None:
                raise
            continue
        if total is None:
            total = next(iter(table.values())) * 0
        out[p] = total
    return out


def _toda_coeff(n):
    def coeff(I, p):
        c = QLaurent(1)
        Iset = set(I)
        for i in I:
            if i + 1 < n and (i + 1) not in Iset:
                c = c * (1 - QLaurent.q(p[i] - p[i + 1] + 1))
        return c

    return coeff


def toda_apply(r: int, table: dict, n: int, points=None) -> dict:
    """The r-th q-Toda Hamiltonian on a lattice table.

    Each r-subset I shifts p_i -> p_i + 1 for i in I, weighted by
    1 - q^(p_i - p_{i+1} + 1) for each i in I (other than the last index)
    whose successor is not in I.
    """
    return _table_apply(r, n, table, _toda_coeff(n), points)


def toda_eigen_check(n: int, lo: int, hi: int, normalized=False):
    """Check H_r Psi = e_r(z) Psi on every interior point of the box, all r.

    Returns ``(ok, failures)`` where failures lists ``(r, p, lhs, rhs)``.
    """
    table = whittaker_table(n, lo, hi)
    interior = box_points(n, lo, hi - 1)
    failures = []
    for r in range(1, n + 1):
        er = elementary(r, n)
        out = toda_apply(r, table, n, interior)
        for p in interior:
            if out[p] != er * table[p]:
                failures.append((r, p, out[p], er * table[p]))
    return not failures, failures


def x_of_p(p) -> list:
    """The change of variables x_i = q^(p_{l+2-i} + varrho_{l+2-i}) as QLaurent monomials."""
    n = len(p)
    vr = varrho(n)
    return [QLaurent.q(p[n - 1 - i] + vr[n - 1 - i]) for i in range(n)]


def toda_dual_x_apply(r: int, f: LaurentPoly) -> LaurentPoly:
    """The x-space Toda operator: sum_I prod X_i T_{x_i}, X_i = 1 - x_i/x_{i-1}.

    The factor X_i (i >= 2) appears for i in I when i-1 is not in I.
    """
    n = f.nvars
    out = LaurentPoly(n)
    for I in combinations(range(n), r):
        g = f
        for i in I:
            g = g.substitute_scale(i, Q)
        for i in I:
            if i > 0 and (i - 1) not in I:
                e = [0] * n
                e[i] = 1
                e[i - 1] = -1
                g = g * LaurentPoly(n, {(0,) * n: 1, tuple(e): -1})
        out = out + g
    return out


def toda_dual_x_on_table(r: int, table: dict, n: int, points=None) -> dict:
    """The x-space Toda operator on a p-table through the change of variables.

    T_{x_i} becomes the shift of p_{l+2-i}; the factors X_i are evaluated
    at x = x_of_p(p) directly.
    """

    def coeff(J, p):
        I = sorted(n - 1 - j for j in J)  # x-indices of the shifted coordinates
        x = x_of_p(p)
        c = QLaurent(1)
        for i in I:
            if i > 0 and (i - 1) not in I:
                c = c * (1 - x[i].exact_div(x[i - 1]))
        return c

    return _table_apply(r, n, table, coeff, points)


# the k -> -infinity limit operators


def hat_x_apply(r: int, f: LaurentPoly) -> LaurentPoly:
    """sum_I prod_{i in I, j not in I} x_j / (x_j - x_i) prod_{i in I} T_{x_i}."""

    def num(i, j, n):
        e = tuple(1 if a == j else 0 for a in range(n))
        return LaurentPoly(n, {e: -1})

    return apply_subset_operator(f, r, num, Q)


def hat_x_eigenvalue(r: int, lam) -> QLaurent:
    """q^(lam_{l+2-r} + ... + lam_{l+1}): the sum of the last r parts."""
    return QLaurent.q(sum(lam[len(lam) - r :]))


def _hat_dual_coeff(n):
    def coeff(I, lam):
        c = QLaurent(1)
        prev = -1
        for i in I:
            if i > 0 and i - prev != 1:
                c = c * (1 - QLaurent.q(lam[i - 1] - lam[i]))
            prev = i
        return c

    return coeff


def hat_dual_apply(r: int, table: dict, n: int, points=None) -> dict:
    """The spectral-side limit operator on a lambda-table.

    Subset I shifts lambda_i for i in I with weight prod (1 - q^(lam_{i-1} - lam_i))
    over i in I (i >= 2) whose predecessor is not in I.
    """
    return _table_apply(r, n, table, _hat_dual_coeff(n), points)


def hat_x_on_table(r: int, table: dict, n: int, points=None) -> dict:
    """hat_x_apply rewritten on a lambda-table through x = q^lambda."""

    def coeff(I, lam):
        x = [QLaurent.q(v) for v in lam]
        c = QRatio(1)
        for i in I:
            for j in range(n):
                if j not in I:
                    c = c * QRatio(x[j], x[j] - x[i])
        return c

    return _table_apply(r, n, table, coeff, points)


def toda_dual_lambda_apply(r: int, table: dict, n: int, points=None) -> dict:
    """q^(r(r-1)/2) sum_I prod q^lam_j / (q^lam_j - q^lam_i) prod T_{lam_i} on a table."""
    pref = QLaurent.q(Fraction(r * (r - 1), 2))

    def coeff(I, lam):
        c = QRatio(pref)
        for i in I:
            for j in range(n):
                if j not in I:
                    c = c * QRatio(QLaurent.q(lam[j]), QLaurent.q(lam[j]) - QLaurent.q(lam[i]))
        return c

    return _table_apply(r, n, table, coeff, points)


def _random_table(n, lo, hi, rng, nonzero_dominant_only=False):
    table = {}
    for p in box_points(n, lo, hi):
        table[p] = QRatio(QLaurent({0: Fraction(rng.randint(-9, 9)), 2: Fraction(rng.randint(-9, 9))}))
    return table


def operator_identity_check(n: int, trials: int = 20, seed: int = 0, box=(0, 4)) -> tuple:
    """Check the two operator identities relating the limit operators.

    1. hat_x_on_table = q^(-r(r-1)/2) toda_dual_lambda_apply on tables whose
       points have distinct coordinates (where both are defined).
    2. hat_dual_apply = Delta o (x-space Toda operator at reversed shifted
       variables) o Delta^-1 on dominant points, Delta^-1 vanishing off the
       dominant domain.
    Returns ``(ok, failures)`` with entries ``(identity, trial, r, p, lhs, rhs)``.
    """
    rng = random.Random(seed)
    lo, hi = box
    failures = []
    for trial in range(trials):
        table = _random_table(n, lo, hi, rng)
        inner = box_points(n, lo, hi - 1)
        distinct = [p for p in inner if len(set(p)) == n]
        dominant = [p for p in inner if is_dominant(p)]
        for r in range(1, n + 1):
            lhs = hat_x_on_table(r, table, n, distinct)
            rhs = toda_dual_lambda_apply(r, table, n, distinct)
            scale = QLaurent.q(Fraction(-r * (r - 1), 2))
            for p in distinct:
                if lhs[p] != rhs[p] * scale:
                    failures.append((1, trial, r, p, lhs[p], rhs[p] * scale))
            # identity 2
            scaled = {}
            for p, v in table.items():
                scaled[p] = v * QRatio(1, delta_p(p)) if is_dominant(p) else QRatio(0)
            lhs2 = hat_dual_apply(r, table, n, dominant)
            mid = _reversed_toda_x(r, scaled, n, dominant)
            for p in dominant:
                if lhs2[p] != mid[p] * delta_p(p):
                    failures.append((2, trial, r, p, lhs2[p], mid[p] * delta_p(p)))
    return not failures, failures


def _reversed_toda_x(r, table, n, points):
    """The x-space Toda operator at x_i = q^(lam_{l+2-i} + varrho_{l+2-i}) on a lambda-table."""
    return toda_dual_x_on_table(r, table, n, points)


# properties of Psi


def symmetry_check(n: int, lo: int, hi: int) -> bool:
    """Psi_z(p) is invariant under every permutation of z on the box."""
    perms = list(permutations(range(n)))
    for p in box_points(n, lo, hi):
        psi = whittaker_gz(p)
        for perm in perms:
            if psi.permute_vars(perm) != psi:
                return False
    return True


def _sl2_reduce(f: LaurentPoly) -> LaurentPoly:
    """Set z1 = z, z2 = 1/z."""
    out = {}
    for (a, b), c in f.terms.items():
        k = (a - b,)
        out[k] = out[k] + c if k in out else c
    return LaurentPoly(1, out)


def sl2_discrete_check(nmax: int = 5) -> bool:
    """The second-order difference equations for Psi(n) and Psi~(n), n = p1 - p2, p2 = 0."""
    zz = LaurentPoly(1, {(1,): 1, (-1,): 1})
    psi = {m: _sl2_reduce(whittaker_gz((m, 0))) for m in range(-1, nmax + 2)}
    tilde = {m: _sl2_reduce(whittaker_tilde((m, 0))) for m in range(-1, nmax + 2)}
    for m in range(0, nmax + 1):
        lhs = psi[m - 1] + psi[m + 1] * (1 - QLaurent.q(m + 1))
        if lhs != zz * psi[m]:
            return False
        lhs = tilde[m - 1] * (1 - QLaurent.q(m)) + tilde[m + 1]
        if lhs != zz * tilde[m]:
            return False
    return True


def funchar_check(n: int, k: int) -> bool:
    """Psi~(k+1,..,k+1,k,..,k) = (z1...zn)^k e_r(z) for every r."""
    for r in range(1, n + 1):
        p = tuple([k + 1] * r + [k] * (n - r))
        expected = elementary(r, n).shift((k,) * n)
        if whittaker_tilde(p) != expected:
            return False
    return True


def translation_check(n: int, lo: int, hi: int, shifts=(-1, 1, 2)) -> bool:
    """Psi~(p + k) = (z1...zn)^k Psi~(p)."""
    for p in box_points(n, lo, hi):
        if not is_dominant(p):
            continue
        base = whittaker_tilde(p)
        for k in shifts:
            q = tuple(x + k for x in p)
            if whittaker_tilde(q) != base.shift((k,) * n):
                return False
    return True


def modpsi_check(n: int, lam_max: int = 4) -> tuple:
    """Both eigen-relations for Psi^_lam = P_lam(x; q, 0) on partitions with lam_1 <= lam_max.

    hat_x_apply(r) P_lam = q^(last r parts) P_lam, and hat_dual_apply(r) on the
    lambda-table gives e_r(x) P_lam.  Returns ``(ok, failures)`` with entries
    ``(kind, r, lam, lhs, rhs)``.
    """
    lams = [lam for lam in partitions_in_box(n, 0, lam_max)]
    table = {}
    for lam in box_points(n, 0, lam_max + 1):
        table[lam] = macdonald_t0(lam, n) if is_dominant(lam) else LaurentPoly(n)
    failures = []
    for r in range(1, n + 1):
        er = elementary(r, n)
        dual = hat_dual_apply(r, table, n, lams)
        for lam in lams:
            P = table[lam]
            lhs = hat_x_apply(r, P)
            if lhs != P * hat_x_eigenvalue(r, lam):
                failures.append(("hat_x", r, lam, lhs, P * hat_x_eigenvalue(r, lam)))
            if dual[lam] != er * P:
                failures.append(("hat_dual", r, lam, dual[lam], er * P))
    return not failures, failures
