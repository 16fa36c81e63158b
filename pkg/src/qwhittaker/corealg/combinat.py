"""Partitions, Gelfand-Zetlin patterns and q-combinatorics."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterator

from ..errors import InexactDivisionError
from .laurent import LaurentPoly
from .scalars import QLaurent

__all__ = [
    "Partition",
    "GZPattern",
    "is_weakly_decreasing",
    "partitions",
    "partitions_in_box",
    "dominates",
    "dominated_by",
    "q_factorial",
    "q_binomial",
    "q_pochhammer",
    "monomial_symmetric",
    "power_sum",
    "elementary",
    "complete",
    "enumerate_gz",
    "count_gz_brute",
    "subsets",
]

Partition = tuple  # weakly decreasing tuple of ints, possibly negative
GZPattern = tuple  # rows[k-1] is the length-k row, rows[-1] is the top row


def is_weakly_decreasing(v) -> bool:
    return all(a >= b for a, b in zip(v, v[1:]))


def strip_zeros(lam) -> tuple:
    lam = list(lam)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def pad(lam, n: int) -> tuple:
    lam = tuple(lam)
    if len(lam) > n:
        if any(lam[n:]):
            raise ValueError(f"{lam} has more than {n} nonzero parts")
        return lam[:n]
    return lam + (0,) * (n - len(lam))


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None, max_len: int | None = None) -> tuple:
    """All partitions of ``n`` (no zero parts), in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions(n - first, first, rest_len):
            out.append((first,) + rest)
    return tuple(out)


def partitions_in_box(length: int, lo: int, hi: int) -> Iterator[tuple]:
    """Weakly decreasing integer vectors of the given length with entries in [lo, hi]."""
    if length == 0:
        yield ()
        return
    for first in range(hi, lo - 1, -1):
        for rest in partitions_in_box(length - 1, lo, first):
            yield (first,) + rest


def dominates(lam, mu) -> bool:
    """True when ``mu <= lam`` in dominance order (equal total weight)."""
    n = max(len(lam), len(mu))
    lam, mu = pad(lam, n), pad(mu, n)
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    for x, y in zip(lam, mu):
        a += x
        b += y
        if b > a:
            return False
    return True


def dominated_by(lam) -> list:
    """Partitions strictly below ``lam`` in dominance order, reverse-lex sorted."""
    lam = strip_zeros(lam)
    return [mu for mu in partitions(sum(lam)) if mu != lam and dominates(lam, mu)]


# q-combinatorics


@lru_cache(maxsize=None)
def q_factorial(n: int) -> QLaurent:
    """(1-q)(1-q^2)...(1-q^n); the empty product is 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    out = QLaurent(1)
    for j in range(1, n + 1):
        out = out * QLaurent({0: 1, 2 * j: -1})
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, m: int) -> QLaurent:
    """Gaussian binomial; zero outside 0 <= m <= n."""
    if m < 0 or m > n:
        return QLaurent()
    num = q_factorial(n)
    den = q_factorial(m) * q_factorial(n - m)
    out = num.exact_div(den)
    if not out.is_polynomial():
        raise InexactDivisionError("q-binomial is not a polynomial")
    return out


def q_pochhammer(a: QLaurent, n: int) -> QLaurent:
    """(a; q)_n = (1-a)(1-aq)...(1-aq^(n-1))."""
    out = QLaurent(1)
    for j in range(n):
        out = out * (1 - a * QLaurent.s(2 * j))
    return out


# symmetric polynomials


@lru_cache(maxsize=None)
def monomial_symmetric(lam, nvars: int) -> LaurentPoly:
    """Sum of the distinct monomials obtained by permuting ``lam`` into ``nvars`` slots."""
    lam = pad(lam, nvars)
    return LaurentPoly(nvars, {e: 1 for e in set(permutations(lam))})


@lru_cache(maxsize=None)
def power_sum(lam, nvars: int) -> LaurentPoly:
    """Product of power sums; zero parts are dropped."""
    out = LaurentPoly.constant(nvars, 1)
    for part in lam:
        if part == 0:
            continue
        p = LaurentPoly(nvars, {tuple(part if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)})
        out = out * p
    return out


def subsets(n: int, r: int):
    return combinations(range(n), r)


@lru_cache(maxsize=None)
def elementary(r: int, nvars: int) -> LaurentPoly:
    """e_r in ``nvars`` variables."""
    terms = {}
    for idx in combinations(range(nvars), r):
        terms[tuple(1 if j in idx else 0 for j in range(nvars))] = 1
    return LaurentPoly(nvars, terms)


def complete(r: int, nvars: int) -> LaurentPoly:
    """h_r in ``nvars`` variables."""
    terms = {}
    for lam in partitions(r, max_len=nvars):
        for e in set(permutations(pad(lam, nvars))):
            terms[e] = 1
    return LaurentPoly(nvars, terms)


# Gelfand-Zetlin patterns


def _interlacing_rows(upper):
    """All rows of length len(upper)-1 interlacing ``upper``."""
    ranges = [range(upper[i + 1], upper[i] + 1) for i in range(len(upper) - 1)]
    return product(*ranges)


def enumerate_gz(top) -> Iterator[GZPattern]:
    """Yield every Gelfand-Zetlin pattern with the given top row.

    A pattern is a tuple of rows ``(row_1, ..., row_n)`` with ``row_k`` of
    length ``k``; consecutive rows interlace.  The order is deterministic.
    """
    top = tuple(top)
    if not is_weakly_decreasing(top):
        raise ValueError(f"top row {top} is not weakly decreasing")

    def rec(row):
        if len(row) == 1:
            yield (row,)
            return
        for lower in _interlacing_rows(row):
            for pat in rec(lower):
                yield pat + (row,)

    if not top:
        yield ()
        return
    yield from rec(top)


def count_gz_brute(top) -> int:
    """Count patterns by scanning the whole bounding box of every lower row."""
    top = tuple(top)
    n = len(top)
    if n == 0:
        return 1
    lo, hi = min(top), max(top)
    cells = [(k, i) for k in range(1, n) for i in range(k)]
    count = 0
    for vals in product(range(lo, hi + 1), repeat=len(cells)):
        rows = {n: top}
        it = iter(vals)
        for k in range(1, n):
            rows[k] = tuple(next(it) for _ in range(k))
        ok = all(
            rows[k + 1][i] >= rows[k][i] >= rows[k + 1][i + 1]
            for k in range(1, n)
            for i in range(k)
        )
        count += ok
    return count
