"""Affine gl(l+1) weights, Demazure operators and Demazure characters.

Weights live in the lattice spanned by ``e_1..e_{l+1}``, ``e_-`` and
``e_+``.  An :class:`AffineWeight` stores the finite part, the ``e_-``
coefficient (the level) and the ``e_+`` coefficient (the degree, i.e. the
power of ``delta``).  The form pairs ``e_i`` orthonormally and ``e_+`` with
``e_-``.  Characters are finite integer combinations of ``e^mu``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .corealg import LaurentPoly, QLaurent
from .corealg.combinat import is_weakly_decreasing
from .macdonald import macdonald_t0

__all__ = [
    "AffineWeight",
    "CharSum",
    "bilinear_form",
    "simple_root",
    "fundamental_weight",
    "delta",
    "weyl_reflect",
    "apply_word",
    "is_positive_root",
    "is_reduced",
    "demazure_op",
    "demazure_op_rational_check",
    "demazure_word",
    "demazure_character",
    "pi_homomorphism",
    "orbit_representative",
    "orbit_weight",
    "antidominant_word",
    "sanderson_prefactor_exponent",
    "character_for_point",
    "sanderson_corsan_check",
    "sanderson_check_corrected",
    "whittaker_from_demazure",
    "random_charsum",
    "NonReducedWordError",
]


class NonReducedWordError(ValueError):
    """A Weyl word that was expected to be reduced is not."""


@dataclass(frozen=True, slots=True)
class AffineWeight:
    fin: tuple
    level: int = 0
    deg: int = 0

    def __post_init__(self):
        object.__setattr__(self, "fin", tuple(int(x) for x in self.fin))

    @property
    def rank(self) -> int:
        return len(self.fin)

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a + b for a, b in zip(self.fin, other.fin)),
            self.level + other.level,
            self.deg + other.deg,
        )

    def __neg__(self) -> "AffineWeight":
        return AffineWeight(tuple(-a for a in self.fin), -self.level, -self.deg)

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + (-other)

    def scale(self, n: int) -> "AffineWeight":
        return AffineWeight(tuple(n * a for a in self.fin), n * self.level, n * self.deg)

    def __repr__(self):
        return f"AffineWeight({self.fin}, level={self.level}, deg={self.deg})"


def bilinear_form(a: AffineWeight, b: AffineWeight) -> int:
    return sum(x * y for x, y in zip(a.fin, b.fin)) + a.level * b.deg + a.deg * b.level


def _unit(n: int, i: int) -> list:
    v = [0] * n
    v[i] = 1
    return v


def simple_root(i: int, ell: int) -> AffineWeight:
    """alpha_i = e_i - e_{i+1} for 1 <= i <= l; alpha_0 = e_+ - e_1 + e_{l+1}."""
    n = ell + 1
    if not 0 <= i <= ell:
        raise ValueError(f"simple root index {i} out of range 0..{ell}")
    fin = [0] * n
    if i == 0:
        fin[0], fin[-1] = -1, 1
        return AffineWeight(tuple(fin), 0, 1)
    fin[i - 1], fin[i] = 1, -1
    return AffineWeight(tuple(fin), 0, 0)


def fundamental_weight(i: int, ell: int) -> AffineWeight:
    """omega_i = e_1 + ... + e_i + e_-, so omega_0 = e_-.

    ``i = l + 1`` gives the weight with all finite entries equal to one.
    """
    n = ell + 1
    if not 0 <= i <= n:
        raise ValueError(f"fundamental weight index {i} out of range 0..{n}")
    return AffineWeight(tuple(1 if j < i else 0 for j in range(n)), 1, 0)


def delta(ell: int) -> AffineWeight:
    return AffineWeight((0,) * (ell + 1), 0, 1)


def weyl_reflect(i: int, mu: AffineWeight) -> AffineWeight:
    """s_i(mu) = mu - (mu, alpha_i) alpha_i; every simple root has square length 2."""
    alpha = simple_root(i, mu.rank - 1)
    m = bilinear_form(mu, alpha)
    if m == 0:
        return mu
    return mu - alpha.scale(m)


def apply_word(word, mu: AffineWeight) -> AffineWeight:
    """w(mu) for w = s_{word[0]} ... s_{word[-1]} (rightmost acts first)."""
    for i in reversed(tuple(word)):
        mu = weyl_reflect(i, mu)
    return mu


def is_positive_root(beta: AffineWeight) -> bool:
    """Positivity of a real root e_a - e_b + n delta: n > 0, or n = 0 and a < b."""
    if beta.level != 0:
        raise ValueError(f"{beta} is not a root")
    plus = [j for j, x in enumerate(beta.fin) if x == 1]
    minus = [j for j, x in enumerate(beta.fin) if x == -1]
    if len(plus) != 1 or len(minus) != 1 or sum(abs(x) for x in beta.fin) != 2:
        raise ValueError(f"{beta} is not a real root")
    if beta.deg != 0:
        return beta.deg > 0
    return plus[0] < minus[0]


def is_reduced(word, ell: int) -> bool:
    """Descent criterion: s_{j_r} ... s_{j_{k+1}}(alpha_{j_k}) > 0 for every k."""
    word = tuple(word)
    for k in range(len(word)):
        beta = apply_word(tuple(reversed(word[k + 1:])), simple_root(word[k], ell))
        if not is_positive_root(beta):
            return False
    return True


# characters


class CharSum:
    """Finite integer combination of formal exponentials e^mu."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: int(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def exp(cls, mu: AffineWeight, c: int = 1) -> "CharSum":
        return cls({mu: c})

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, CharSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "CharSum") -> "CharSum":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return CharSum(out)

    def __neg__(self):
        return CharSum({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CharSum({w: other * c for w, c in self.terms.items()})
        out = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = a + b
                out[key] = out.get(key, 0) + ca * cb
        return CharSum(out)

    __rmul__ = __mul__

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __repr__(self):
        parts = [f"{c}*e^{w}" for w, c in sorted(self.terms.items(), key=lambda t: (t[0].fin, t[0].level, t[0].deg))]
        return " + ".join(parts) if parts else "0"


def demazure_op(i: int, c: CharSum) -> CharSum:
    """D_i e^mu = (e^mu - e^{-alpha_i} e^{s_i mu}) / (1 - e^{-alpha_i}), as a finite sum."""
    out = {}
    alpha = None
    for mu, coeff in c.terms.items():
        if alpha is None:
            alpha = simple_root(i, mu.rank - 1)
        m = bilinear_form(mu, alpha)
        if m >= 0:
            nu, step, count, sign = mu, -alpha, m + 1, 1
        elif m == -1:
            continue
        else:
            nu, step, count, sign = mu + alpha, alpha, -m - 1, -1
        for _ in range(count):
            out[nu] = out.get(nu, 0) + sign * coeff
            nu = nu + step
    return CharSum(out)


def demazure_op_rational_check(i: int, mu: AffineWeight) -> bool:
    """(1 - e^{-alpha_i}) D_i(e^mu) == e^mu - e^{-alpha_i} e^{s_i mu}."""
    alpha = simple_root(i, mu.rank - 1)
    one_minus = CharSum({AffineWeight((0,) * mu.rank): 1, -alpha: -1})
    lhs = one_minus * demazure_op(i, CharSum.exp(mu))
    rhs = CharSum({mu: 1}) - CharSum({weyl_reflect(i, mu) - alpha: 1})
    return lhs == rhs


def demazure_word(word, c: CharSum) -> CharSum:
    """D_{word[0]} ... D_{word[-1]} c, applying the rightmost operator first."""
    for i in reversed(tuple(word)):
        c = demazure_op(i, c)
    return c


def _is_dominant_affine(mu: AffineWeight) -> bool:
    ell = mu.rank - 1
    return all(bilinear_form(mu, simple_root(j, ell)) >= 0 for j in range(ell + 1))


def demazure_character(omega: AffineWeight, word) -> CharSum:
    """Character of V_w(omega) for w = s_{word[0]} ... s_{word[-1]}.

    Raises :class:`NonReducedWordError` if the word is not reduced, and
    ``ValueError`` if ``omega`` is not dominant.
    """
    word = tuple(word)
    if not _is_dominant_affine(omega):
        raise ValueError(f"{omega} is not dominant")
    if not is_reduced(word, omega.rank - 1):
        raise NonReducedWordError(f"word {word} is not reduced")
    return demazure_word(word, CharSum.exp(omega))


def pi_homomorphism(c: CharSum, nvars: int | None = None) -> LaurentPoly:
    """e^mu -> q^deg * z^fin with e_- -> 1."""
    acc = {}
    for mu, coeff in c.terms.items():
        if nvars is None:
            nvars = mu.rank
        key = mu.fin
        acc[key] = acc.get(key, QLaurent()) + QLaurent.q(mu.deg) * coeff
    return LaurentPoly(nvars or 0, acc)


# orbits


def orbit_weight(vec) -> AffineWeight:
    """The level-one weight in the orbit of some lambda_{k,i} with finite part ``vec``.

    The degree is fixed by invariance of the form: (mu, mu) = |vec|^2 + 2 deg
    must equal the square length of the dominant representative.
    """
    vec = tuple(vec)
    n = len(vec)
    total = sum(vec)
    k, i = divmod(total, n)
    rep = (k + 1,) * i + (k,) * (n - i)
    diff = sum(x * x for x in rep) - sum(x * x for x in vec)
    if diff % 2:
        raise ValueError(f"{vec} has no level-one orbit weight")
    return AffineWeight(vec, 1, diff // 2)


def _ascend(mu: AffineWeight):
    ell = mu.rank - 1
    recorded = []
    while True:
        for j in range(ell + 1):
            if bilinear_form(mu, simple_root(j, ell)) < 0:
                mu = weyl_reflect(j, mu)
                recorded.append(j)
                break
        else:
            return mu, tuple(recorded)


def orbit_representative(vec):
    """Return ``(k, i, word)`` with apply_word(word, lambda_{k,i}) projecting to ``vec``."""
    top, word = _ascend(orbit_weight(vec))
    n = top.rank
    fin = top.fin
    if not (is_weakly_decreasing(fin) and fin[0] - fin[-1] <= 1) or top.deg != 0:
        raise RuntimeError(f"ascent from {vec} ended at {top}, which is not a lambda_(k,i)")
    k = fin[-1]
    i = sum(1 for x in fin if x == k + 1)
    if i == n:
        k, i = k + 1, 0
    return k, i, word


def antidominant_word(vec):
    """Orbit data for an antidominant finite weight, with a reducedness assertion."""
    vec = tuple(vec)
    if not is_weakly_decreasing(tuple(reversed(vec))):
        raise ValueError(f"{vec} is not antidominant")
    k, i, word = orbit_representative(vec)
    if not is_reduced(word, len(vec) - 1):
        raise NonReducedWordError(f"ascent word {word} for {vec} is not reduced")
    return k, i, word


def _lambda_ki(k: int, i: int, n: int) -> tuple:
    return (k + 1,) * i + (k,) * (n - i)


def sanderson_prefactor_exponent(vec) -> Fraction:
    """1/2 (v, v) - 1/2 (lambda_{k,i}, lambda_{k,i}) for the orbit of ``vec``."""
    vec = tuple(vec)
    n = len(vec)
    k, i = divmod(sum(vec), n)
    rep = _lambda_ki(k, i, n)
    return Fraction(sum(x * x for x in vec) - sum(x * x for x in rep), 2)


def character_for_point(p) -> tuple:
    """For dominant ``p``, the Demazure character whose extremal weight has finite part reversed(p).

    Returns ``(character, (k, i, word))``.
    """
    p = tuple(p)
    if not is_weakly_decreasing(p):
        raise ValueError(f"{p} is not dominant")
    anti = tuple(reversed(p))
    k, i, word = antidominant_word(anti)
    omega = AffineWeight(_lambda_ki(k, i, len(p)), 1, 0)
    return demazure_character(omega, word), (k, i, word)


def _q_exponent(e: Fraction) -> QLaurent:
    return QLaurent.q(e)


def sanderson_corsan_check(p, detail: bool = False):
    """Both prefactor identities with the literal sign, for dominant ``p``.

    Checks pi(ch) == q^{1/2(v,v) - 1/2(l,l)} P_p(z;q,0) and
    Psi~(p) == q^{1/2(l,l) - 1/2(v,v)} pi(ch) where ``v`` is reversed(p).
    """
    p = tuple(p)
    ch, data = character_for_point(p)
    image = pi_homomorphism(ch, len(p))
    a = sanderson_prefactor_exponent(tuple(reversed(p)))
    P = macdonald_t0(p, len(p))
    first = image == P * _q_exponent(a)
    second = P == image * _q_exponent(-a)
    ok = first and second
    if detail:
        return ok, {"orbit": data, "exponent": a, "pi_ch": image, "P": P,
                    "sanderson": first, "corsan": second}
    return ok


def sanderson_check_corrected(p, detail: bool = False):
    """pi(ch) == q^{-(1/2(v,v) - 1/2(l,l))} P_p(z;q,0): the prefactor with the sign forced by the grading.

    With alpha_0 carrying +delta, every weight of the module sits at degree
    <= 0 while P_p(z;q,0) has nonnegative q-powers, so the exponent has to
    be the degree of the extremal weight, which is -a.
    """
    p = tuple(p)
    ch, data = character_for_point(p)
    image = pi_homomorphism(ch, len(p))
    a = sanderson_prefactor_exponent(tuple(reversed(p)))
    P = macdonald_t0(p, len(p))
    ok = image == P * _q_exponent(-a)
    if detail:
        return ok, {"orbit": data, "exponent": -a, "pi_ch": image, "P": P}
    return ok


def whittaker_from_demazure(p, corrected: bool = False) -> LaurentPoly:
    """Psi~(p) from a Demazure character.

    ``corrected=False`` uses the literal prefactor q^{1/2(l,l) - 1/2(v,v)};
    ``corrected=True`` uses its inverse, which is what the grading requires.
    """
    p = tuple(p)
    ch, _ = character_for_point(p)
    image = pi_homomorphism(ch, len(p))
    a = sanderson_prefactor_exponent(tuple(reversed(p)))
    return image * _q_exponent(a if corrected else -a)


def random_charsum(ell: int, rng: random.Random, size: int = 4, box: int = 3) -> CharSum:
    terms = {}
    for _ in range(size):
        fin = tuple(rng.randint(-box, box) for _ in range(ell + 1))
        mu = AffineWeight(fin, rng.randint(0, 2), rng.randint(-2, 2))
        terms[mu] = terms.get(mu, 0) + rng.choice([-2, -1, 1, 2, 3])
    return CharSum(terms)
