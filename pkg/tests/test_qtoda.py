from itertools import product

import pytest

from qwhittaker.corealg import LaurentPoly, QLaurent, QRatio, monomial_symmetric, q_factorial
from qwhittaker.corealg.laurent import var
from qwhittaker.qtoda import (
    box_points,
    delta_p,
    funchar_check,
    is_dominant,
    modpsi_check,
    operator_identity_check,
    sl2_discrete_check,
    symmetry_check,
    toda_apply,
    toda_eigen_check,
    translation_check,
    whittaker_from_macdonald,
    whittaker_gz,
    whittaker_recursive,
    whittaker_tilde,
)

q = QLaurent.q(1)


def naive_psi(p):
    """Brute-force sum over every triangular array whose rows lie between the extreme entries.

    Non-interlacing arrays are dropped by the 1/(negative)! = 0 convention,
    applied factor by factor.
    """
    n = len(p)
    lo, hi = min(p), max(p)
    rows_shape = [k for k in range(1, n)]
    total = LaurentPoly(n)
    cells = sum(rows_shape)
    for flat in product(range(lo, hi + 1), repeat=cells):
        rows, pos = [], 0
        for k in rows_shape:
            rows.append(tuple(flat[pos:pos + k]))
            pos += k
        rows.append(tuple(p))
        coeff = QRatio(1)
        for k in range(n - 1):
            row, up = rows[k], rows[k + 1]
            for i in range(len(row)):
                a, b = up[i] - row[i], row[i] - up[i + 1]
                if a < 0 or b < 0:
                    coeff = QRatio(0)
                    break
                coeff = coeff * QRatio(1, q_factorial(a) * q_factorial(b))
            if coeff == 0:
                break
        if coeff == 0:
            continue
        for k in range(1, n - 1):
            row = rows[k]
            for i in range(len(row) - 1):
                coeff = coeff * q_factorial(row[i] - row[i + 1])
        sums = [sum(r) for r in rows]
        exp = tuple(sums[k] - (sums[k - 1] if k else 0) for k in range(n))
        total = total + LaurentPoly(n, {exp: coeff})
    return total


# examples


def test_rank_one_examples():
    z1, z2 = var(0, 2), var(1, 2)
    assert whittaker_gz((1, 0)) == (z1 + z2) * QRatio(1, 1 - q)
    assert whittaker_tilde((1, 0)) == z1 + z2
    assert whittaker_tilde((2, 0)) == z1 ** 2 + z2 ** 2 + (z1 * z2).scale(1 + q)
    assert whittaker_tilde((0, 0)) == LaurentPoly.constant(2, 1)


def test_rank_two_example():
    expected = monomial_symmetric((2, 1, 0), 3) + monomial_symmetric((1, 1, 1), 3).scale(2 + q)
    assert whittaker_tilde((2, 1, 0)) == expected


def test_negative_entries():
    z1, z2 = var(0, 2), var(1, 2)
    assert whittaker_tilde((0, -1)) == (z1 + z2).shift((-1, -1))


def test_delta_p():
    assert delta_p((3, 1, 0)) == q_factorial(2) * q_factorial(1)
    with pytest.raises(ValueError):
        delta_p((0, 1))


def test_matches_naive_sum():
    for n in (2, 3):
        for p in box_points(n, -1, 2):
            if is_dominant(p):
                assert whittaker_gz(p) == naive_psi(p), p


def test_three_constructions_agree():
    for n in (2, 3, 4):
        hi = 3 if n < 4 else 2
        for p in box_points(n, 0, hi):
            if is_dominant(p):
                assert whittaker_gz(p) == whittaker_recursive(p), p
                assert whittaker_tilde(p) == whittaker_from_macdonald(p), p


def test_normalized_coefficients_in_zq():
    for p in box_points(3, 0, 3):
        if is_dominant(p):
            for _, c in whittaker_tilde(p).items():
                c = QRatio.coerce(c)
                assert c.is_laurent() and c.as_laurent().is_polynomial()
                assert all(v.denominator == 1 and v > 0 for v in c.as_laurent().terms().values())


def test_vanishes_off_dominant_domain():
    for p in box_points(3, -1, 2):
        if not is_dominant(p):
            assert whittaker_gz(p).is_zero()
            assert whittaker_recursive(p).is_zero()


# invariants


@pytest.mark.parametrize("n,lo,hi", [(1, -2, 4), (2, -2, 4), (3, -1, 3), (4, 0, 2)])
def test_toda_eigen(n, lo, hi):
    ok, failures = toda_eigen_check(n, lo, hi)
    assert ok, failures[:1]


def test_toda_single_point():
    table = {p: whittaker_gz(p) for p in box_points(2, 0, 2)}
    out = toda_apply(1, table, 2, [(1, 0)])
    assert out[(1, 0)] == (var(0, 2) + var(1, 2)) * table[(1, 0)]


def test_symmetry():
    assert symmetry_check(3, -1, 2)


def test_translation():
    assert translation_check(3, -1, 2)


def test_sl2_difference_equations():
    assert sl2_discrete_check(6)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fundamental_characters(n):
    for k in (-1, 0, 2):
        assert funchar_check(n, k)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_limit_operators_on_macdonald(n):
    ok, failures = modpsi_check(n, 3)
    assert ok, failures[:1]


@pytest.mark.parametrize("n", [2, 3])
def test_limit_operator_identities(n):
    ok, failures = operator_identity_check(n, trials=5, seed=1, box=(0, 3))
    assert ok, failures[:1]
