"""Exact scalars.

Three coefficient kinds are used throughout the package:

* ``Fraction`` for plain rationals,
* :class:`QLaurent`, a Laurent polynomial in ``s`` where ``s**2 == q``,
* :class:`QRatio`, a reduced ratio of two :class:`QLaurent` values.

The helpers at the bottom (:func:`sdiv`, :func:`spow`, :func:`is_zero`, ...)
accept any of the three kinds and pick the narrowest result type.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import flint

from ..errors import InexactDivisionError

__all__ = [
    "QLaurent",
    "QRatio",
    "as_fraction",
    "sdiv",
    "spow",
    "is_zero",
    "is_one",
    "s_power",
    "q_power",
    "evaluate_scalar",
]


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def as_fraction(x) -> Fraction:
    """Coerce an int or rational-like value to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return _to_fraction(x)
    raise TypeError(f"not a rational: {x!r}")


_ZERO_POLY = flint.fmpq_poly([])


class QLaurent:
    """Laurent polynomial in ``s`` (``s**2 = q``) with rational coefficients.

    Stored as ``s**shift * poly(s)`` where ``poly`` has a nonzero constant
    term, so equal values always have equal representations.

    >>> one_minus_q = QLaurent({0: 1, 2: -1})
    >>> one_minus_q * one_minus_q
    1 - 2*q + q^2
    """

    __slots__ = ("shift", "poly", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        terms = {int(e): as_fraction(c) for e, c in terms.items() if c != 0}
        if not terms:
            self._set(0, _ZERO_POLY)
            return
        lo = min(terms)
        hi = max(terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            coeffs[e - lo] = _to_fmpq(c)
        self._set(lo, flint.fmpq_poly(coeffs))

    def _set(self, shift, poly):
        self.shift = shift
        self.poly = poly
        self._hash = None

    @classmethod
    def _raw(cls, shift: int, poly) -> "QLaurent":
        """Build from ``s**shift * poly`` and normalize."""
        obj = cls.__new__(cls)
        if poly.degree() < 0:
            obj._set(0, _ZERO_POLY)
            return obj
        if poly[0] == 0:
            coeffs = poly.coeffs()
            v = 0
            while coeffs[v] == 0:
                v += 1
            poly = flint.fmpq_poly(coeffs[v:])
            shift += v
        obj._set(shift, poly)
        return obj

    # constructors
    @classmethod
    def s(cls, n: int = 1, coeff=1) -> "QLaurent":
        """The monomial ``coeff * s**n``."""
        return cls({n: coeff})

    @classmethod
    def q(cls, n=1, coeff=1) -> "QLaurent":
        """The monomial ``coeff * q**n``; ``n`` may be a half-integer."""
        e = Fraction(n) * 2
        if e.denominator != 1:
            raise ValueError(f"q-exponent {n} is not a half-integer")
        return cls({int(e): coeff})

    @classmethod
    def coerce(cls, x) -> "QLaurent":
        if isinstance(x, QLaurent):
            return x
        if isinstance(x, QRatio):
            return x.as_laurent()
        return cls({0: x})

    # inspection
    def is_zero(self) -> bool:
        return self.poly.degree() < 0

    def __bool__(self):
        return not self.is_zero()

    def terms(self) -> dict:
        """Map from s-exponent to nonzero ``Fraction`` coefficient."""
        out = {}
        for i, c in enumerate(self.poly.coeffs()):
            if c != 0:
                out[self.shift + i] = _to_fraction(c)
        return out

    def items(self):
        return sorted(self.terms().items())

    def valuation(self) -> int:
        """Lowest s-exponent (raises on zero)."""
        if self.is_zero():
            raise ValueError("valuation of zero")
        return self.shift

    def degree(self) -> int:
        """Highest s-exponent (raises on zero)."""
        if self.is_zero():
            raise ValueError("degree of zero")
        return self.shift + self.poly.degree()

    def is_monomial(self) -> bool:
        return self.poly.degree() == 0

    def is_constant(self) -> bool:
        return self.is_zero() or (self.shift == 0 and self.poly.degree() == 0)

    def constant(self) -> Fraction:
        """The s**0 coefficient."""
        i = -self.shift
        if i < 0 or i > self.poly.degree():
            return Fraction(0)
        return _to_fraction(self.poly[i])

    def coefficient(self, e: int) -> Fraction:
        i = e - self.shift
        if i < 0 or i > self.poly.degree():
            return Fraction(0)
        return _to_fraction(self.poly[i])

    def is_q_integral(self) -> bool:
        """True when only even s-exponents (integer q-powers) occur."""
        return all(e % 2 == 0 for e in self.terms())

    def is_polynomial(self) -> bool:
        return self.is_zero() or self.shift >= 0

    # arithmetic
    def __neg__(self):
        return QLaurent._raw(self.shift, -self.poly)

    def __add__(self, other):
        if isinstance(other, QRatio):
            return NotImplemented
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        m = min(self.shift, other.shift)
        a = self.poly if self.shift == m else self.poly.left_shift(self.shift - m)
        b = other.poly if other.shift == m else other.poly.left_shift(other.shift - m)
        return QLaurent._raw(m, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QRatio):
            return NotImplemented
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, QRatio):
            return NotImplemented
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return QLaurent()
        return QLaurent._raw(self.shift + other.shift, self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n >= 0:
            return QLaurent._raw(self.shift * n, self.poly ** n)
        if not self.is_monomial():
            raise InexactDivisionError("negative power of a non-monomial Laurent polynomial")
        c = self.poly[0]
        return QLaurent._raw(self.shift * n, flint.fmpq_poly([c ** n]))

    def exact_div(self, other) -> "QLaurent":
        """Divide, asserting that the quotient is again a Laurent polynomial."""
        other = QLaurent.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        quo, rem = divmod(self.poly, other.poly)
        if rem.degree() >= 0:
            raise InexactDivisionError(f"({self}) / ({other}) is not exact")
        return QLaurent._raw(self.shift - other.shift, quo)

    def divides(self, other) -> bool:
        """True when ``other / self`` is a Laurent polynomial."""
        if self.is_zero():
            return False
        other = QLaurent.coerce(other)
        if other.is_zero():
            return True
        return divmod(other.poly, self.poly)[1].degree() < 0

    def __truediv__(self, other):
        if isinstance(other, QRatio):
            return NotImplemented
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        return sdiv(self, other)

    def __rtruediv__(self, other):
        other = _coerce_laurent(other)
        if other is None:
            return NotImplemented
        return sdiv(other, self)

    def truncate(self, max_exp: int) -> "QLaurent":
        """Drop every term with s-exponent greater than ``max_exp``."""
        if self.is_zero() or max_exp < self.shift:
            return QLaurent()
        return QLaurent._raw(self.shift, self.poly.truncate(max_exp - self.shift + 1))

    def substitute_s(self, c) -> "QLaurent":
        """Replace ``s`` by ``c*s`` for a rational ``c``."""
        c = as_fraction(c)
        return QLaurent({e: v * c ** e for e, v in self.terms().items()})

    def evaluate(self, s_value):
        """Evaluate at ``s = s_value`` (a rational)."""
        s_value = as_fraction(s_value)
        if self.is_zero():
            return Fraction(0)
        if s_value == 0 and self.shift < 0:
            raise ZeroDivisionError("negative power of s at s = 0")
        val = _to_fraction(self.poly(_to_fmpq(s_value)))
        return val * s_value ** self.shift

    # comparison and hashing
    def __eq__(self, other):
        if isinstance(other, QLaurent):
            return self.shift == other.shift and self.poly == other.poly
        if isinstance(other, QRatio):
            return other == self
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash(("QL", self.shift, tuple(self.items())))
        return self._hash

    def __repr__(self):
        return format_laurent(self)

    __str__ = __repr__


def _coerce_laurent(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return QLaurent({0: x})
    return None


def _fmt_exp(e: int) -> str:
    """Render ``s**e`` as a power of q."""
    if e % 2 == 0:
        n = e // 2
        return "q" if n == 1 else f"q^{n}" if n >= 0 else f"q^({n})"
    return f"q^({e}/2)"


def format_laurent(x: QLaurent) -> str:
    items = x.items()
    if not items:
        return "0"
    out = []
    for e, c in items:
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        elif a == 1:
            body = _fmt_exp(e)
        else:
            body = f"{a}*{_fmt_exp(e)}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


class QRatio:
    """Reduced quotient ``num/den`` of Laurent polynomials in ``s``.

    The gcd is removed exactly and ``den`` is a monic polynomial in ``s``
    with nonzero constant term (any power of ``s`` lives in ``num``), so
    equal rational functions have equal representations.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        num = QLaurent.coerce(num)
        den = QLaurent.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("QRatio with zero denominator")
        self._hash = None
        if num.is_zero():
            self.num, self.den = num, QLaurent(1)
            return
        shift = num.shift - den.shift
        a, b = num.poly, den.poly
        if b.degree() > 0:
            g = a.gcd(b)
            if g.degree() > 0:
                a = divmod(a, g)[0]
                b = divmod(b, g)[0]
        lc = b.leading_coefficient()
        if lc != 1:
            a = a / lc
            b = b / lc
        self.num = QLaurent._raw(shift, a)
        self.den = QLaurent._raw(0, b)

    @classmethod
    def coerce(cls, x) -> "QRatio":
        if isinstance(x, QRatio):
            return x
        return cls(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> QLaurent:
        if not self.is_laurent():
            raise InexactDivisionError(f"{self} is not a Laurent polynomial")
        return self.num

    def simplify(self):
        """Return a ``QLaurent`` when the denominator is trivial."""
        return self.num if self.is_laurent() else self

    def __neg__(self):
        r = QRatio.__new__(QRatio)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __add__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return QRatio(self.num + o.num, self.den)
        return QRatio(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return QRatio(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return QRatio(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n >= 0:
            return QRatio(self.num ** n, self.den ** n)
        return QRatio(self.den ** (-n), self.num ** (-n))

    def evaluate(self, s_value):
        d = self.den.evaluate(s_value)
        if d == 0:
            from ..errors import PoleError

            raise PoleError(f"denominator of {self} vanishes at s = {s_value}")
        return self.num.evaluate(s_value) / d

    def __eq__(self, other):
        if isinstance(other, QRatio):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (QLaurent, int, Fraction)):
            return self.is_laurent() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.is_laurent() else hash(("QR", self.num, self.den))
        return self._hash

    def __repr__(self):
        if self.is_laurent():
            return repr(self.num)
        return f"({self.num})/({self.den})"

    __str__ = __repr__


def _coerce_ratio(x):
    if isinstance(x, QRatio):
        return x
    if isinstance(x, (QLaurent, int, Fraction)):
        return QRatio(x)
    return None


# generic helpers over Fraction | QLaurent | QRatio


def is_zero(x) -> bool:
    if isinstance(x, (QLaurent, QRatio)):
        return x.is_zero()
    return x == 0


def is_one(x) -> bool:
    return x == 1


def sdiv(a, b):
    """Field division choosing the narrowest exact result type.

    Rationals divide to ``Fraction``; Laurent polynomials divide to a
    ``QLaurent`` when exact and to a ``QRatio`` otherwise.
    """
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(b, int):
        b = Fraction(b)
    if isinstance(a, QRatio) or isinstance(b, QRatio):
        return QRatio.coerce(a) / QRatio.coerce(b)
    if isinstance(b, Fraction):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b if isinstance(a, Fraction) else a * (1 / b)
    # b is a QLaurent
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    a = QLaurent.coerce(a)
    if b.divides(a):
        return a.exact_div(b)
    return QRatio(a, b)


def spow(x, n: int):
    """``x**n`` for any scalar kind; negative powers go through :func:`sdiv`."""
    if n >= 0:
        return x ** n
    if isinstance(x, QLaurent) and not x.is_monomial():
        return QRatio(1, x ** (-n))
    if isinstance(x, int):
        x = Fraction(x)
    return x ** n


def s_power(n: int, coeff=1) -> QLaurent:
    return QLaurent.s(n, coeff)


def q_power(n, coeff=1) -> QLaurent:
    return QLaurent.q(n, coeff)


def evaluate_scalar(x, s_value):
    """Evaluate a scalar of any kind at a rational value of ``s``."""
    if isinstance(x, (QLaurent, QRatio)):
        return x.evaluate(s_value)
    return as_fraction(x)
