"""The quantum torus with generators X_{k,i}, T_{k,i} (1 <= i <= k <= l).

Relations: T_{k,i} X_{m,j} = q^{[k=m][i=j]} X_{m,j} T_{k,i}; every other
pair commutes.  Elements are kept in the normal form X^a T^b (all X to the
left) with coefficients that are Laurent polynomials in the central
variables z_1..z_{l+1}.  Since moving T^b past X^a' costs q^{b.a'},

    (X^a T^b)(X^a' T^b') = q^{b.a'} X^{a+a'} T^{b+b'}.
"""
from __future__ import annotations

import random
from functools import lru_cache

from .corealg import LaurentPoly, QLaurent, q_binomial
from .corealg.laurent import var
from .qtoda import is_dominant

__all__ = [
    "generator_index",
    "TorusElem",
    "torus_mul",
    "f_poly",
    "matrix_element",
    "whittaker_matrix_element",
    "q_binomial_identity_check",
    "conversion_identity_check",
    "random_torus_elem",
]


@lru_cache(maxsize=None)
def _pairs(ell: int) -> tuple:
    return tuple((k, i) for k in range(1, ell + 1) for i in range(1, k + 1))


def generator_index(k: int, i: int, ell: int) -> int:
    """Position of the generator pair (k, i) in exponent vectors."""
    if not 1 <= i <= k <= ell:
        raise ValueError(f"no generator ({k},{i}) for l={ell}")
    return _pairs(ell).index((k, i))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class TorusElem:
    """Finite sum of coeff * X^xexp T^texp in normal order."""

    __slots__ = ("ell", "terms")

    def __init__(self, ell: int, terms=None):
        self.ell = ell
        self.terms = {}
        n = len(_pairs(ell))
        for (a, b), c in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n:
                raise ValueError(f"exponent vectors must have length {n}")
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(ell + 1, c)
            if c:
                self.terms[(a, b)] = c

    @property
    def nvars(self) -> int:
        return self.ell + 1

    @classmethod
    def scalar(cls, ell: int, c) -> "TorusElem":
        zero = (0,) * len(_pairs(ell))
        return cls(ell, {(zero, zero): c})

    @classmethod
    def one(cls, ell: int) -> "TorusElem":
        return cls.scalar(ell, 1)

    @classmethod
    def X(cls, k: int, i: int, ell: int, power: int = 1) -> "TorusElem":
        n = len(_pairs(ell))
        a = [0] * n
        a[generator_index(k, i, ell)] = power
        return cls(ell, {(tuple(a), (0,) * n): 1})

    @classmethod
    def T(cls, k: int, i: int, ell: int, power: int = 1) -> "TorusElem":
        n = len(_pairs(ell))
        b = [0] * n
        b[generator_index(k, i, ell)] = power
        return cls(ell, {((0,) * n, tuple(b)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TorusElem):
            return NotImplemented
        return self.ell == other.ell and self.terms == other.terms

    def __hash__(self):
        return hash((self.ell, frozenset(self.terms.items())))

    def __add__(self, other: "TorusElem") -> "TorusElem":
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out[key] + c if key in out else c
        return TorusElem(self.ell, out)

    def __neg__(self):
        return TorusElem(self.ell, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TorusElem":
        """Multiply by a central coefficient (scalar or z-polynomial)."""
        if isinstance(c, LaurentPoly):
            return TorusElem(self.ell, {k: v * c for k, v in self.terms.items()})
        return TorusElem(self.ell, {k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TorusElem):
            return torus_mul(self, other)
        return self.scale(other)

    def __pow__(self, n: int) -> "TorusElem":
        if n < 0:
            raise ValueError("only nonnegative powers")
        result, base = TorusElem.one(self.ell), self
        while n:
            if n & 1:
                result = torus_mul(result, base)
            n >>= 1
            if n:
                base = torus_mul(base, base)
        return result

    def z_degrees(self) -> set:
        return {sum(e) for c in self.terms.values() for e in c.terms}

    def __repr__(self):
        names = [f"{k}{i}" for k, i in _pairs(self.ell)]
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = [f"X{names[j]}^{e}" for j, e in enumerate(a) if e] + [
                f"T{names[j]}^{e}" for j, e in enumerate(b) if e
            ]
            parts.append(f"({c})" + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(parts) if parts else "0"


def torus_mul(a: TorusElem, b: TorusElem) -> TorusElem:
    if a.ell != b.ell:
        raise ValueError("factors live in different algebras")
    out = {}
    for (xa, ta), ca in a.terms.items():
        for (xb, tb), cb in b.terms.items():
            swap = sum(u * v for u, v in zip(ta, xb))
            c = ca * cb
            if swap:
                c = c.scale(QLaurent.q(swap))
            key = (_add(xa, xb), _add(ta, tb))
            out[key] = out[key] + c if key in out else c
    return TorusElem(a.ell, out)


@lru_cache(maxsize=None)
def f_poly(n: int, i: int, ell: int) -> TorusElem:
    """f_{n,i} = f_{n-1,i} X_{n-1,i} + z_n f_{n-1,i-1} T_{n-1,i}; f_{n,0} = 1; f_{n,n} = z_1...z_n."""
    if not (0 <= i <= n <= ell + 1):
        raise ValueError(f"f_({n},{i}) is not defined for l={ell}")
    if i == 0:
        return TorusElem.one(ell)
    z_n = var(n - 1, ell + 1)
    if i == n:
        return f_poly(n - 1, n - 1, ell).scale(z_n)
    left = torus_mul(f_poly(n - 1, i, ell), TorusElem.X(n - 1, i, ell))
    right = torus_mul(f_poly(n - 1, i - 1, ell), TorusElem.T(n - 1, i, ell)).scale(z_n)
    return left + right


def matrix_element(a: TorusElem) -> LaurentPoly:
    """<v_-| a |v_+> with <v_-|X = <v_-|, T|v_+> = |v_+>: the sum of normal-form coefficients."""
    out = LaurentPoly(a.nvars)
    for c in a.terms.values():
        out = out + c
    return out


def whittaker_matrix_element(p, ell: int | None = None, order: str = "ascending") -> LaurentPoly:
    """<v_-| prod_k f_{l+1,k}^{p_k - p_{k+1}} |v_+> with p_{l+2} = 0.

    ``order`` chooses whether k runs left to right ascending or descending.
    """
    p = tuple(p)
    if ell is None:
        ell = len(p) - 1
    if len(p) != ell + 1:
        raise ValueError(f"{p} does not have {ell + 1} entries")
    if not is_dominant(p):
        raise ValueError(f"{p} is not dominant")
    n = ell + 1
    ks = range(1, n + 1) if order == "ascending" else range(n, 0, -1)
    prod = TorusElem.one(ell)
    for k in ks:
        e = p[k - 1] - (p[k] if k < n else 0)
        if e < 0:
            raise ValueError(f"negative exponent at k={k}; entries must be >= 0")
        if e:
            prod = torus_mul(prod, f_poly(n, k, ell) ** e)
    return matrix_element(prod)


def q_binomial_identity_check(n: int) -> bool:
    """(X + T)^n == sum_m binom(n, m)_q X^m T^{n-m} for a single pair with TX = qXT."""
    X, T = TorusElem.X(1, 1, 1), TorusElem.T(1, 1, 1)
    lhs = (X + T) ** n
    rhs = TorusElem(1)
    for m in range(n + 1):
        rhs = rhs + torus_mul(TorusElem.X(1, 1, 1, m), TorusElem.T(1, 1, 1, n - m)).scale(q_binomial(n, m))
    return lhs == rhs


def conversion_identity_check(ell: int, k: int, a: int, b: int, c: int) -> bool:
    """The q-binomial conversion identity used to pass from rank l to l+1.

    With A = f_{l,k-1}, B = f_{l,k}, z = z_{l+1}:

        sum_{p=b}^{a} z^{a-p} binom(a-b, p-b)_q A^{c-p} B^{p-b} X_{l,k}^{p-b} T_{l,k}^{a-p}
            == A^{c-a} (B X_{l,k} + z A T_{l,k})^{a-b}

    for c >= a >= b >= 0.
    """
    if not (c >= a >= b >= 0 and 1 <= k <= ell):
        raise ValueError("need c >= a >= b >= 0 and 1 <= k <= l")
    A, B = f_poly(ell, k - 1, ell), f_poly(ell, k, ell)
    z = var(ell, ell + 1)
    X, T = TorusElem.X(ell, k, ell), TorusElem.T(ell, k, ell)
    lhs = TorusElem(ell)
    for p in range(b, a + 1):
        term = torus_mul(A ** (c - p), B ** (p - b))
        term = torus_mul(term, TorusElem.X(ell, k, ell, p - b))
        term = torus_mul(term, TorusElem.T(ell, k, ell, a - p))
        lhs = lhs + term.scale(z ** (a - p)).scale(q_binomial(a - b, p - b))
    rhs = torus_mul(A ** (c - a), (torus_mul(B, X) + torus_mul(A, T).scale(z)) ** (a - b))
    return lhs == rhs


def random_torus_elem(ell: int, rng: random.Random, size: int = 3, max_exp: int = 2) -> TorusElem:
    n = len(_pairs(ell))
    terms = {}
    for _ in range(size):
        a = tuple(rng.randint(0, max_exp) for _ in range(n))
        b = tuple(rng.randint(0, max_exp) for _ in range(n))
        z = tuple(rng.randint(0, 1) for _ in range(ell + 1))
        c = LaurentPoly(ell + 1, {z: QLaurent(rng.randint(-2, 2) or 1) + QLaurent.q(rng.randint(1, 2))})
        terms[(a, b)] = terms[(a, b)] + c if (a, b) in terms else c
    return TorusElem(ell, terms)
