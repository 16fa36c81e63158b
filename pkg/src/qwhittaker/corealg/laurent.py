"""Multivariate Laurent polynomials with exact scalar coefficients."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from ..errors import InexactDivisionError
from .scalars import QLaurent, QRatio, is_zero, sdiv, spow

__all__ = ["LaurentPoly", "var", "const"]


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Laurent polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients (``Fraction``,
    ``QLaurent`` or ``QRatio``).  Instances are treated as immutable.

    >>> z1, z2 = var(0, 2), var(1, 2)
    >>> (z1 + z2) * (z1 - z2)
    z1^2 - z2^2
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self._hash = None
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if isinstance(c, int):
                    c = Fraction(c)
                if not is_zero(c):
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, nvars, terms):
        """Wrap a dict that is already clean (no zeros, tuple keys)."""
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _from_accumulator(cls, nvars, acc):
        return cls._trusted(nvars, {e: c for e, c in acc.items() if not is_zero(c)})

    @classmethod
    def constant(cls, nvars, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exp, c=1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """Terms sorted lexicographically by exponent."""
        return sorted(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def coefficients(self):
        return list(self.terms.values())

    def leading_exp(self):
        """Lexicographically largest exponent."""
        return max(self.terms)

    def min_exp(self):
        """Componentwise minimum exponent over the support."""
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exp(self):
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def total_degrees(self):
        return {sum(e) for e in self.terms}

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for p in set(permutations(e)):
                if self.terms.get(p) != c:
                    return False
        return True

    # arithmetic
    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __neg__(self):
        return LaurentPoly._trusted(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc[e] + c if e in acc else c
        return LaurentPoly._from_accumulator(self.nvars, acc)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if is_zero(other):
                return LaurentPoly(self.nvars)
            return LaurentPoly._from_accumulator(
                self.nvars, {e: c * other for e, c in self.terms.items()}
            )
        other = self._check(other)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return LaurentPoly._from_accumulator(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise InexactDivisionError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly._trusted(self.nvars, {tuple(x * n for x in e): spow(c, n)})
        result = LaurentPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "LaurentPoly":
        return self * c

    def shift(self, exp) -> "LaurentPoly":
        """Multiply by the monomial ``x**exp``."""
        exp = tuple(exp)
        return LaurentPoly._trusted(
            self.nvars, {_add_exp(e, exp): c for e, c in self.terms.items()}
        )

    def map_coefficients(self, f) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: f(c) for e, c in self.terms.items()})

    def exact_div(self, other) -> "LaurentPoly":
        """Exact quotient ``self / other``; raises when the remainder is nonzero.

        Works by lex-order long division after both operands are shifted to
        honest polynomials, so any failure to divide the leading term proves
        inexactness.
        """
        if not isinstance(other, LaurentPoly):
            return self * sdiv(1, other)
        other = self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly(self.nvars)
        if len(other.terms) == 1:
            (eg, cg), = other.terms.items()
            inv = sdiv(1, cg)
            neg = tuple(-x for x in eg)
            return LaurentPoly._trusted(
                self.nvars, {_add_exp(e, neg): c * inv for e, c in self.terms.items()}
            )
        lo_f = self.min_exp()
        lo_g = other.min_exp()
        f = {tuple(a - b for a, b in zip(e, lo_f)): c for e, c in self.terms.items()}
        g = [(tuple(a - b for a, b in zip(e, lo_g)), c) for e, c in other.terms.items()]
        g.sort(reverse=True)
        eg, cg = g[0]
        rest = g[1:]
        quotient = {}
        while f:
            e = max(f)
            d = tuple(a - b for a, b in zip(e, eg))
            if any(x < 0 for x in d):
                raise InexactDivisionError("polynomial division leaves a remainder")
            c = sdiv(f.pop(e), cg)
            quotient[d] = c
            for e2, c2 in rest:
                key = _add_exp(d, e2)
                v = f.get(key)
                v = -c * c2 if v is None else v - c * c2
                if is_zero(v):
                    f.pop(key, None)
                else:
                    f[key] = v
        offset = tuple(a - b for a, b in zip(lo_f, lo_g))
        return LaurentPoly._trusted(
            self.nvars, {_add_exp(e, offset): c for e, c in quotient.items()}
        )

    # substitutions
    def substitute_scale(self, i: int, c) -> "LaurentPoly":
        """Replace ``x_i`` by ``c * x_i``."""
        powers = {}
        out = {}
        for e, v in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = spow(c, k)
            out[e] = v * powers[k]
        return LaurentPoly(self.nvars, out)

    def permute_vars(self, perm) -> "LaurentPoly":
        """Rename variables: old variable ``j`` becomes variable ``perm[j]``."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for j, x in enumerate(e):
                new[perm[j]] = x
            out[tuple(new)] = c
        return LaurentPoly._trusted(self.nvars, out)

    def evaluate(self, values):
        """Substitute scalars for every variable and return a scalar."""
        values = list(values)
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        cache = [dict() for _ in values]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = cache[i].get(k)
                    if p is None:
                        p = cache[i][k] = spow(values[i], k)
                    term = term * p
            total = total + term
        return total

    def partial_evaluate(self, values: dict, keep) -> "LaurentPoly":
        """Substitute scalars for the variables in ``values`` (index -> scalar).

        ``keep`` lists the indices of the remaining variables, in order.
        """
        out = {}
        for e, c in self.terms.items():
            term = c
            for i, v in values.items():
                if e[i]:
                    term = term * spow(v, e[i])
            key = tuple(e[i] for i in keep)
            out[key] = out[key] + term if key in out else term
        return LaurentPoly._from_accumulator(len(keep), out)

    def embed(self, nvars: int, positions) -> "LaurentPoly":
        """View as a polynomial in ``nvars`` variables, old var j -> positions[j]."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for j, x in enumerate(e):
                new[positions[j]] += x
            out[tuple(new)] = c
        return LaurentPoly(nvars, out)

    def truncate_q(self, max_s: int) -> "LaurentPoly":
        """Drop coefficient terms above ``s**max_s`` (QLaurent coefficients only)."""
        return LaurentPoly(
            self.nvars, {e: QLaurent.coerce(c).truncate(max_s) for e, c in self.terms.items()}
        )

    def evaluate_s(self, s_value) -> "LaurentPoly":
        """Specialize ``s`` in every coefficient."""
        from .scalars import evaluate_scalar

        return LaurentPoly(self.nvars, {e: evaluate_scalar(c, s_value) for e, c in self.terms.items()})

    # comparison
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars or len(other.terms) != len(self.terms):
                return False
            for e, c in self.terms.items():
                d = other.terms.get(e)
                if d is None or not (c == d):
                    return False
            return True
        if isinstance(other, (int, Fraction, QLaurent, QRatio)):
            return self == LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return format_poly(self)

    __str__ = __repr__


def format_poly(p: LaurentPoly, names=None) -> str:
    if names is None:
        names = [f"z{i + 1}" for i in range(p.nvars)]
    if not p.terms:
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" if k > 0 else f"{n}^({k})"
            for n, k in zip(names, e)
            if k
        )
        if isinstance(c, Fraction):
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
        else:
            neg = False
            cs = str(c)
            body = f"({cs})*{mono}" if mono else f"({cs})"
            if cs == "1" and mono:
                body = mono
        pieces.append(("-" if neg else "+", body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def var(i: int, nvars: int, c=1) -> LaurentPoly:
    """The variable ``x_i`` (0-based) in ``nvars`` variables."""
    e = [0] * nvars
    e[i] = 1
    return LaurentPoly(nvars, {tuple(e): c})


def const(nvars: int, c) -> LaurentPoly:
    return LaurentPoly.constant(nvars, c)
