"""Exact linear solves over Q and over Q(s)."""
from __future__ import annotations

from fractions import Fraction

import flint

from ..errors import SingularSystemError
from .scalars import QLaurent, QRatio, is_zero

__all__ = ["solve", "solve_rational", "solve_laurent", "common_denominator"]


def solve_rational(A, b) -> list:
    """Solve ``A x = b`` with ``Fraction`` entries."""
    n = len(A)
    if n == 0:
        return []
    M = flint.fmpq_mat(n, n, [flint.fmpq(x.numerator, x.denominator) for row in A for x in row])
    rhs = flint.fmpq_mat(n, 1, [flint.fmpq(x.numerator, x.denominator) for x in b])
    try:
        x = M.solve(rhs)
    except ZeroDivisionError as exc:
        raise SingularSystemError("singular rational system") from exc
    return [Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(n)]


def common_denominator(entries) -> QLaurent:
    """Least common multiple of the denominators of QRatio entries."""
    den = flint.fmpq_poly([1])
    for x in entries:
        if isinstance(x, QRatio) and not x.is_laurent():
            d = x.den.poly
            g = den.gcd(d)
            den = den * divmod(d, g)[0]
    return QLaurent._raw(0, den)


def solve_laurent(A, b) -> list:
    """Solve ``A x = b`` over Q(s) by fraction-free (Bareiss) elimination.

    Entries may be ``Fraction``, ``QLaurent`` or ``QRatio``; denominators are
    cleared first so elimination stays inside the Laurent ring, and the
    solution comes back as ``QRatio`` values via Cramer numerators.
    """
    n = len(A)
    if n == 0:
        return []
    entries = [x for row in A for x in row] + list(b)
    L = common_denominator(entries)

    def clear(x):
        if isinstance(x, QRatio):
            return (x * L).as_laurent()
        return QLaurent.coerce(x) * L

    M = [[clear(A[i][j]) for j in range(n)] + [clear(b[i])] for i in range(n)]
    prev = QLaurent(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if not M[i][k].is_zero()), None)
        if piv is None:
            raise SingularSystemError("singular system over Q(s)")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        mkk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * mkk - mik * row_k[j]).exact_div(prev)
            row_i[k] = QLaurent()
        prev = mkk
    det = M[n - 1][n - 1]
    y = [None] * n
    for i in range(n - 1, -1, -1):
        acc = det * M[i][n]
        for j in range(i + 1, n):
            if not M[i][j].is_zero():
                acc = acc - M[i][j] * y[j]
        y[i] = acc.exact_div(M[i][i])
    return [QRatio(v, det) for v in y]


def solve(A, b) -> list:
    """Dispatch on the entry kind: rationals go to flint, the rest to Bareiss."""
    if all(isinstance(x, (int, Fraction)) for row in A for x in row) and all(
        isinstance(x, (int, Fraction)) for x in b
    ):
        return solve_rational([[Fraction(x) for x in row] for row in A], [Fraction(x) for x in b])
    return solve_laurent(A, b)
