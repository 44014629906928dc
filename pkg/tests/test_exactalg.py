"""Exact field arithmetic, polynomials and integer lattices.

Oracles: sympy (cyclotomic polynomials, characteristic polynomials, ranks)
and modular arithmetic done by hand.
"""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagroups.exactalg import (
    FieldConfig,
    cyclotomic_poly,
    default_prime,
    divisors,
    euler_phi,
    int_charpoly,
    int_poly_multiplicity,
    integer_kernel,
    kernel_over_field,
    mat_mul,
    rank_over_field,
    smith_normal_form,
)

x = sympy.symbols("x")
small_ints = st.integers(-6, 6)


@pytest.mark.parametrize("d", range(1, 25))
def test_cyclotomic_poly_matches_sympy(d):
    ref = sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(d)) == [int(c) for c in ref]


@pytest.mark.parametrize("n", range(1, 40))
def test_euler_phi_and_divisors(n):
    assert euler_phi(n) == sympy.totient(n)
    assert divisors(n) == sympy.divisors(n)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 9, 12, 24])
def test_zeta_has_exact_order(m):
    F = FieldConfig.cyclotomic(m)
    assert F.check_root_of_unity()
    assert F.degree == euler_phi(m)


@pytest.mark.parametrize("m,p", [(6, 7), (12, 13), (4, 13), (8, 17), (3, 7)])
def test_prime_field_root_of_unity(m, p):
    F = FieldConfig.prime(m, p)
    assert F.check_root_of_unity()
    assert F.characteristic == p


def test_prime_field_rejects_bad_characteristic():
    with pytest.raises(ValueError):
        FieldConfig.prime(12, 7)
    with pytest.raises(ValueError):
        FieldConfig.prime(2, 3)


def test_default_prime():
    assert default_prime(12) == 13
    assert default_prime(8) == 17
    assert default_prime(2) == 5


@settings(max_examples=60, deadline=None)
@given(st.lists(small_ints, min_size=1, max_size=4), st.lists(small_ints, min_size=1, max_size=4),
       st.sampled_from([3, 4, 5, 8, 12]))
def test_field_axioms(a, b, m):
    F = FieldConfig.cyclotomic(m)
    z = F.zeta

    def elt(cs):
        out = F.zero
        for i, c in enumerate(cs):
            out = out + F(c) * z ** i
        return out

    u, v = elt(a), elt(b)
    assert u + v == v + u
    assert u * v == v * u
    assert (u + v) * u == u * u + v * u
    if not u.is_zero():
        assert u * u.inverse() == F.one
        assert (v / u) * u == v


def test_sqrt_minus_three_in_q_zeta3():
    F = FieldConfig.cyclotomic(3)
    s = 2 * F.zeta + F.one
    assert s * s == F(-3)


def test_rational_roundtrip():
    F = FieldConfig.cyclotomic(12)
    q = F(Fraction(-7, 3))
    assert q.is_rational() and q.to_fraction() == Fraction(-7, 3)
    assert not F.zeta.is_rational()


def test_mod_arithmetic_by_hand():
    F = FieldConfig.prime(6, 7)
    assert (F(3) * F(5)).v == 1
    assert F(Fraction(1, 2)).v == 4
    assert F(3).inverse().v == 5


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_matches_sympy(rows):
    Q = FieldConfig.cyclotomic(1)
    assert rank_over_field(rows, Q) == sympy.Matrix(rows).rank()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=5, max_size=5), min_size=1, max_size=4))
def test_kernel_is_kernel(rows):
    Q = FieldConfig.cyclotomic(1)
    ker = kernel_over_field(rows, Q, ncols=5)
    assert len(ker) == 5 - sympy.Matrix(rows).rank()
    for v in ker:
        for r in rows:
            assert sum((Q(a) * b for a, b in zip(r, v)), Q.zero).is_zero()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=2, max_size=4))
def test_smith_normal_form(rows):
    S, U, V = smith_normal_form(rows)
    assert mat_mul(mat_mul(U, rows), V) == S
    assert abs(sympy.Matrix(U).det()) == 1 and abs(sympy.Matrix(V).det()) == 1
    diag = [S[i][i] for i in range(min(len(S), 3))]
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    for i, row in enumerate(S):
        for j, v in enumerate(row):
            assert i == j or v == 0


def test_integer_kernel_is_saturated():
    # kernel of (2 4 6): the lattice {v : v1 + 2 v2 + 3 v3 = 0}
    K = integer_kernel([[2, 4, 6]])
    assert len(K) == 2
    for v in K:
        assert v[0] + 2 * v[1] + 3 * v[2] == 0
    # saturated: the 2x2 minors have gcd 1
    minors = [K[0][i] * K[1][j] - K[0][j] * K[1][i] for i in range(3) for j in range(i + 1, 3)]
    assert sympy.gcd_list(minors) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_int_charpoly_matches_sympy(M):
    ref = sympy.Matrix(M).charpoly(x).all_coeffs()[::-1]
    assert list(int_charpoly(M)) == [int(c) for c in ref]


def test_cyclotomic_multiplicity():
    # (t^2 + t + 1)^2 (t - 1)
    f = sympy.Poly((x**2 + x + 1) ** 2 * (x - 1), x).all_coeffs()[::-1]
    f = [int(c) for c in f]
    assert int_poly_multiplicity(f, cyclotomic_poly(3)) == 2
    assert int_poly_multiplicity(f, cyclotomic_poly(1)) == 1
    assert int_poly_multiplicity(f, cyclotomic_poly(6)) == 0
