from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwhittaker.corealg import (
    LaurentPoly,
    QLaurent,
    QRatio,
    monomial_symmetric,
    partitions,
    partitions_in_box,
    power_sum,
)
from qwhittaker.corealg.laurent import var
from qwhittaker.errors import PoleError
from qwhittaker.macdonald import (
    SpecPoint,
    dual_eigenvalue,
    dual_macdonald_apply,
    eigenvalue_c,
    extend_generalized,
    gram_schmidt_macdonald,
    macdonald_by_linear_solve,
    macdonald_op_apply,
    macdonald_t0,
    norm_closed_form,
    normalize_phi,
    phi_factor_symbolic_t,
    phi_factor_telescoped,
    rho,
    scalar_product_qt,
    self_duality_check,
    z_lambda,
)

Q, T = Fraction(1, 3), Fraction(1, 5)
SP = SpecPoint.numeric(Q, T)
SP2 = SpecPoint.numeric(Fraction(2, 7), Fraction(3, 11))
q = QLaurent.q(1)


def partitions_upto(d, nvars):
    for n in range(d + 1):
        for lam in partitions(n):
            if len(lam) <= nvars:
                yield lam


# examples


def test_z_lambda_value():
    # 2^1 1! * 1^2 2! times the (q,t) factors of parts 2, 1, 1
    expected = 4 * (1 - Q ** 2) / (1 - T ** 2) * ((1 - Q) / (1 - T)) ** 2
    assert z_lambda((2, 1, 1), SP) == expected == Fraction(625, 243)


def test_power_sums_orthogonal():
    p1, p2 = power_sum((1,), 2), power_sum((2,), 2)
    assert scalar_product_qt(p1, p1, SP) == (1 - Q) / (1 - T)
    assert scalar_product_qt(p1 * p1, p2, SP) == 0


def test_p20_closed_form():
    P = gram_schmidt_macdonald((2, 0), 2, SP)
    c = (1 + Q) * (1 - T) / (1 - Q * T)
    assert P.sym == {(2,): 1, (1, 1): c}
    assert P.poly == monomial_symmetric((2, 0), 2) + monomial_symmetric((1, 1), 2) * c
    assert c == Fraction(8, 7)


def test_p21_closed_form():
    P = gram_schmidt_macdonald((2, 1, 0), 3, SP)
    c = (1 - T) * (2 + Q + T + 2 * Q * T) / (1 - Q * T * T)
    assert P.sym == {(2, 1): 1, (1, 1, 1): c}


def test_t_equals_q_gives_schur():
    s = SpecPoint.numeric(Fraction(1, 2), Fraction(1, 2))
    assert gram_schmidt_macdonald((2, 1), 3, s).sym == {(2, 1): 1, (1, 1, 1): 2}
    h3 = {(3,): 1, (2, 1): 1, (1, 1, 1): 1}
    assert gram_schmidt_macdonald((3,), 3, s).sym == h3


def test_t0_example():
    P = macdonald_t0((2, 1, 0), 3)
    assert P == monomial_symmetric((2, 1, 0), 3) + monomial_symmetric((1, 1, 1), 3).scale(2 + q)


def test_generalized_shift():
    z1, z2 = var(0, 2), var(1, 2)
    assert extend_generalized((0, -1), 2, SP).poly == (z1 + z2).shift((-1, -1))
    assert extend_generalized((2, 2), 2, SP).poly == (z1 * z2) ** 2
    P = extend_generalized((1, -1), 2, SP).poly
    assert P == gram_schmidt_macdonald((2, 0), 2, SP).poly.shift((-1, -1))


def test_rejects_bad_partitions():
    with pytest.raises(ValueError):
        gram_schmidt_macdonald((1, 2), 2, SP)
    with pytest.raises(ValueError):
        gram_schmidt_macdonald((1, -1), 2, SP)
    with pytest.raises(ValueError):
        extend_generalized((1, 0, 0), 2, SP)


def test_operator_on_constant():
    one = LaurentPoly.constant(2, 1)
    assert macdonald_op_apply(1, one, SP) == one * (1 + T)
    assert macdonald_op_apply(2, one, SP) == one * T
    assert eigenvalue_c(1, (0, 0), SP, 2) == 1 + T


def test_eigenvalue_example():
    # q^lam_1 t + q^lam_2
    assert eigenvalue_c(1, (1, 0), SP, 2) == Q * T + 1
    assert eigenvalue_c(2, (2, 1), SP, 2) == Q ** 3 * T


def test_linear_solve_cross_check():
    for lam in [(2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2)]:
        assert macdonald_by_linear_solve(lam, SP) == gram_schmidt_macdonald(lam, len(lam), SP).sym


def test_linear_solve_symbolic_t0():
    t0 = SpecPoint.t_zero()
    for lam in [(2, 1), (2, 2), (3, 1)]:
        assert macdonald_by_linear_solve(lam, t0) == gram_schmidt_macdonald(lam, len(lam), t0).sym


# invariants


@pytest.mark.parametrize("spec", [SP, SP2], ids=["q1/3_t1/5", "q2/7_t3/11"])
def test_orthogonality(spec):
    for d in range(1, 7):
        polys = [gram_schmidt_macdonald(lam, len(lam), spec) for lam in partitions(d)]
        for i, a in enumerate(polys):
            for b in polys[i + 1:]:
                assert scalar_product_qt(a.sym, b.sym, spec) == 0, (a.lam, b.lam)


@pytest.mark.parametrize("spec", [SP, SP2, SpecPoint.t_zero()], ids=["num1", "num2", "t0"])
def test_eigenfunctions(spec):
    for nvars in (2, 3):
        for lam in partitions_upto(4, nvars):
            P = gram_schmidt_macdonald(lam, nvars, spec).poly
            for r in range(1, nvars + 1):
                assert macdonald_op_apply(r, P, spec) == P * eigenvalue_c(r, lam, spec, nvars), (lam, r)


def test_operators_commute():
    f = var(0, 3) ** 2 * var(1, 3) + var(2, 3)
    g = f * 0
    for perm in permutations(range(3)):
        g = g + f.permute_vars(perm)
    for r in (1, 2):
        for s in (2, 3):
            a = macdonald_op_apply(r, macdonald_op_apply(s, g, SP), SP)
            b = macdonald_op_apply(s, macdonald_op_apply(r, g, SP), SP)
            assert a == b


def test_symmetry():
    for lam in [(2, 1, 0), (3, 1, 1), (2, 2, 1)]:
        P = gram_schmidt_macdonald(lam, 3, SP).poly
        for perm in permutations(range(3)):
            assert P.permute_vars(perm) == P


def test_t0_positivity():
    for nvars in (2, 3):
        for lam in partitions_upto(5, nvars):
            for _, c in macdonald_t0(lam, nvars).items():
                coeffs = QRatio.coerce(c)
                assert coeffs.is_laurent()
                assert all(v > 0 and v.denominator == 1 for v in coeffs.as_laurent().terms().values())


def test_norm_closed_form():
    for lam in partitions_upto(5, 3):
        if not lam:
            continue
        P = gram_schmidt_macdonald(lam, len(lam), SP)
        assert norm_closed_form(lam, SP) == scalar_product_qt(P.sym, P.sym, SP), lam


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=3).map(lambda v: tuple(sorted(v, reverse=True))),
       st.integers(-2, 2))
@settings(max_examples=30, deadline=None)
def test_translation_rule(lam, m):
    n = len(lam)
    a = extend_generalized(tuple(x + m for x in lam), n, SP).poly
    b = extend_generalized(lam, n, SP).poly.shift((m,) * n)
    assert a == b


# normalization and self-duality


def literal_phi_factor(lam, nvars, k, N=40):
    """Truncate the infinite product at N factors per pair and cancel equal factors."""
    num, den = Counter(), Counter()
    for i in range(nvars):
        for j in range(i + 1, nvars):
            d, w = lam[i] - lam[j], j - i
            for n in range(N):
                num[d - k * (w + 1) + n] += 1
                den[d - k * w + n] += 1
    common = num & den
    num, den = num - common, den - common
    if num[0]:
        return None
    top = QLaurent.q(-k * sum(Fraction(a) * b for a, b in zip(lam, rho(nvars))))
    bottom = QLaurent(1)
    for e, mult in num.items():
        if e < N // 2:
            top = top * (1 - QLaurent.q(e)) ** mult
    for e, mult in den.items():
        if e < N // 2:
            bottom = bottom * (1 - QLaurent.q(e)) ** mult
    return QRatio(top, bottom)


@pytest.mark.parametrize("k", [1, 2, -1])
def test_telescoped_factor_matches_truncated_product(k):
    for nvars in (2, 3):
        for lam in partitions_in_box(nvars, 0, 3):
            oracle = literal_phi_factor(lam, nvars, k)
            if oracle is None:
                with pytest.raises(PoleError):
                    phi_factor_telescoped(lam, nvars, k)
            else:
                assert phi_factor_telescoped(lam, nvars, k) == oracle, lam


def test_telescoped_factor_example():
    assert phi_factor_telescoped((1, 0), 2, 1) == QLaurent.q(Fraction(-1, 2)) * (1 - QLaurent.q(-1))
    with pytest.raises(PoleError):
        phi_factor_telescoped((0, 0), 2, 0)


def test_normalize_phi_requires_qk():
    with pytest.raises(ValueError):
        normalize_phi(gram_schmidt_macdonald((1, 0), 2, SP))
    P = gram_schmidt_macdonald((1, 0), 2, SpecPoint.t_q_power(1))
    phi = normalize_phi(P)
    assert phi.poly == P.poly * phi.factor


def test_symbolic_t_factor_example():
    spec = SpecPoint.symbolic_t(Fraction(1, 4))
    tau = QLaurent.s(1)
    # t^(1/2) (1 - t) / (1 - t^2) = tau / (1 + tau^2)
    assert phi_factor_symbolic_t((1, 0), 2, spec) == QRatio(tau, 1 + tau * tau)


@pytest.mark.parametrize("k", [1, 2])
def test_self_duality_two_variables(k):
    lams = list(partitions_in_box(2, 0, 3))
    for i, lam in enumerate(lams):
        for mu in lams[i + 1:]:
            assert self_duality_check(lam, mu, k, 2), (lam, mu)


def test_self_duality_three_variables():
    for lam, mu in [((1, 0, 0), (2, 1, 0)), ((2, 0, 0), (1, 1, 0)), ((2, 1, 0), (3, 1, 0))]:
        assert self_duality_check(lam, mu, 1, 3)


def test_adjacent_only_normalization_breaks_self_duality():
    assert not self_duality_check((1, 0, 0), (2, 1, 0), 1, 3, adjacent_only=True)


def test_dual_operator_eigen():
    spec = SpecPoint.symbolic_t(Fraction(1, 4))
    for nvars, top in ((2, 3), (3, 2)):
        table = {}
        for lam in partitions_in_box(nvars, 0, top):
            table[lam] = gram_schmidt_macdonald(lam, nvars, spec).poly * phi_factor_symbolic_t(lam, nvars, spec)
        for r in range(1, nvars + 1):
            out = dual_macdonald_apply(r, table, spec, nvars)
            assert out
            ev = dual_eigenvalue(r, nvars, spec)
            for lam, v in out.items():
                assert v == ev * table[lam], (r, lam)
