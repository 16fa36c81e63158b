from fractions import Fraction
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwhittaker.corealg import (
    LaurentPoly,
    QLaurent,
    QRatio,
    count_gz_brute,
    dominates,
    elementary,
    enumerate_gz,
    monomial_symmetric,
    partitions,
    partitions_in_box,
    power_sum,
    q_binomial,
    q_factorial,
    solve,
    var,
)
from qwhittaker.corealg.linalg import solve_laurent
from qwhittaker.errors import InexactDivisionError, PoleError, SingularSystemError

q = QLaurent.q(1)


def qpoly(*coeffs):
    """Polynomial in q from its coefficient list."""
    return QLaurent({2 * i: c for i, c in enumerate(coeffs) if c})


# scalars


def test_qlaurent_canonical_terms():
    a = QLaurent({0: 1, 2: -1, 4: 0})
    assert a.terms() == {0: Fraction(1), 2: Fraction(-1)}
    assert a == 1 - q
    assert QLaurent({3: 2}).valuation() == 3


def test_half_integer_q_power():
    assert QLaurent.q(Fraction(1, 2)) == QLaurent.s(1)
    assert QLaurent.s(1) * QLaurent.s(1) == q


def test_negative_powers_of_monomials():
    assert q ** -2 * q ** 2 == 1
    with pytest.raises(Exception):
        (1 - q) ** -1


def test_exact_div_and_failure():
    assert (1 - q ** 2).exact_div(1 - q) == 1 + q
    with pytest.raises(InexactDivisionError):
        (1 + q).exact_div(1 - q)


def test_qratio_normalization():
    r = QRatio(1 - q ** 2, 1 - q)
    assert r.is_laurent()
    assert r.as_laurent() == 1 + q
    a = QRatio(1, 1 - q)
    b = QRatio(-1, q - 1)
    assert a == b
    assert hash(a) == hash(b)


def test_qratio_evaluate_pole():
    with pytest.raises(PoleError):
        QRatio(1, 1 - q).evaluate(Fraction(1))
    assert QRatio(1, 1 - q).evaluate(Fraction(1, 2)) == Fraction(4, 3)


def test_cross_type_equality_and_hash():
    assert QLaurent(3) == Fraction(3)
    assert hash(QLaurent(3)) == hash(Fraction(3))
    assert QRatio(QLaurent(3)) == QLaurent(3)


small_q = st.dictionaries(st.integers(-4, 6), st.fractions(max_denominator=5).filter(bool), max_size=4).map(QLaurent)


@given(small_q, small_q, small_q)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(small_q, small_q.filter(lambda x: not x.is_zero()))
@settings(max_examples=60, deadline=None)
def test_exact_div_roundtrip(a, b):
    assert (a * b).exact_div(b) == a


@given(small_q, small_q.filter(lambda x: not x.is_zero()), small_q.filter(lambda x: not x.is_zero()))
@settings(max_examples=40, deadline=None)
def test_qratio_field_ops(a, b, c):
    x = QRatio(a, b)
    y = QRatio(c, b)
    assert (x + y) * QRatio(b) == a + c
    if not a.is_zero():
        assert x * QRatio(b, a) == 1


# Laurent polynomials


def test_laurent_examples():
    z1, z2 = var(0, 2), var(1, 2)
    assert (z1 + z2) * (z1 - z2) == z1 ** 2 - z2 ** 2
    assert (z1 ** 2 - z2 ** 2).exact_div(z1 - z2) == z1 + z2
    assert (z1 * z2).substitute_scale(0, q) == (z1 * z2).scale(q)


def test_laurent_negative_exponents_and_shift():
    z1, z2 = var(0, 2), var(1, 2)
    f = (z1 + z2).shift((-1, -1))
    assert f == LaurentPoly(2, {(0, -1): 1, (-1, 0): 1})
    assert not f.is_polynomial()


def test_laurent_inexact_division():
    z1, z2 = var(0, 2), var(1, 2)
    with pytest.raises(InexactDivisionError):
        (z1 + 1).exact_div(z1 - z2)


def test_laurent_evaluate():
    z1, z2 = var(0, 2), var(1, 2)
    f = z1 * z1 + z2.scale(q)
    assert f.evaluate([q, QLaurent(2)]) == q ** 2 + 2 * q


def test_items_are_lex_sorted():
    f = LaurentPoly(2, {(0, 1): 1, (1, 0): 2, (0, 0): 3})
    assert [e for e, _ in f.items()] == [(0, 0), (0, 1), (1, 0)]


exps = st.tuples(st.integers(-2, 3), st.integers(-2, 3))
polys = st.dictionaries(exps, st.integers(-3, 3).filter(bool), max_size=4).map(lambda d: LaurentPoly(2, d))


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_laurent_canonical_form(a, b, c):
    assert ((a + b) + c).terms == (a + (b + c)).terms
    assert (a * (b + c)).terms == (a * b + a * c).terms


@given(polys, polys.filter(lambda p: not p.is_zero()))
@settings(max_examples=50, deadline=None)
def test_laurent_exact_div_roundtrip(a, b):
    assert (a * b).exact_div(b) == a


# q-combinatorics


def test_q_factorial_values():
    assert q_factorial(0) == 1
    assert q_factorial(1) == 1 - q
    assert q_factorial(3) == (1 - q) * (1 - q ** 2) * (1 - q ** 3)


def test_q_binomial_values():
    assert q_binomial(5, 0) == 1
    assert q_binomial(2, 1) == 1 + q
    assert q_binomial(4, 2) == qpoly(1, 1, 2, 1, 1)
    assert q_binomial(3, 4) == 0
    assert q_binomial(3, -1) == 0


@pytest.mark.parametrize("n", range(0, 8))
def test_q_binomial_properties(n):
    for m in range(n + 1):
        b = q_binomial(n, m)
        assert b == q_binomial(n, n - m)
        terms = b.terms()
        assert all(c > 0 and c.denominator == 1 for c in terms.values())
        assert max(terms) == 2 * m * (n - m)
        assert b.evaluate(Fraction(1)) == comb(n, m)


def test_partitions_and_dominance():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert dominates((3, 1), (2, 2))
    assert not dominates((2, 2), (3, 1))
    assert not dominates((3, 1, 1, 1), (2, 2, 2))
    assert not dominates((2, 2, 2), (3, 1, 1, 1))
    assert list(partitions_in_box(2, 0, 1)) == [(1, 1), (1, 0), (0, 0)]


def test_symmetric_polynomials():
    z1, z2 = var(0, 2), var(1, 2)
    assert monomial_symmetric((1, 0), 2) == z1 + z2
    assert monomial_symmetric((1, 1), 2) == z1 * z2
    assert monomial_symmetric((2, 1), 2) == z1 ** 2 * z2 + z1 * z2 ** 2
    assert power_sum((2,), 2) == z1 ** 2 + z2 ** 2
    assert power_sum((1, 1), 2) == (z1 + z2) ** 2
    assert power_sum((), 3) == LaurentPoly.constant(3, 1)
    assert power_sum((1, 0), 2) == z1 + z2
    assert elementary(2, 3) == monomial_symmetric((1, 1, 0), 3)


@pytest.mark.parametrize("lam", [(2, 1, 0), (3, 1, 1), (2, 2, 0), (1, 1, 1, 0)])
def test_symmetric_polys_permutation_invariant(lam):
    n = len(lam)
    for f in (monomial_symmetric(lam, n), power_sum(lam, n)):
        for perm in permutations(range(n)):
            assert f.permute_vars(perm) == f


def test_gz_small_counts():
    assert len(list(enumerate_gz((1, 0)))) == 2
    assert len(list(enumerate_gz((2, 0)))) == 3
    assert len(list(enumerate_gz((2, 1, 0)))) == 8
    pats = list(enumerate_gz((2, 1, 0)))
    assert len(set(pats)) == len(pats)
    assert all(p[-1] == (2, 1, 0) for p in pats)


def test_gz_matches_brute_force_everywhere():
    for n in range(1, 5):
        for top in partitions_in_box(n, 0, 4):
            assert len(list(enumerate_gz(top))) == count_gz_brute(top), top


def test_gz_interlacing():
    for pat in enumerate_gz((3, 1, 0, 0)):
        for k in range(len(pat) - 1):
            lower, upper = pat[k], pat[k + 1]
            assert all(upper[i] >= lower[i] >= upper[i + 1] for i in range(len(lower)))


# linear algebra


def test_solve_rational():
    A = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve(A, [Fraction(3), Fraction(4)]) == [Fraction(1), Fraction(1)]
    with pytest.raises(SingularSystemError):
        solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(1)])


def test_solve_over_qs():
    A = [[QLaurent(1), q], [q, QLaurent(1)]]
    b = [QLaurent(1), QLaurent(1)]
    x = solve_laurent(A, b)
    assert x[0] == QRatio(1, 1 + q) and x[1] == QRatio(1, 1 + q)
