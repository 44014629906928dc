"""Kac automorphisms, gradings, torus decomposition and counting.

Oracles: the Kac description of g(0) (the nodes with label 0), the number of
order-m torus points, and direct application of theta to brackets.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagroups.chevalley import lie_algebra
from thetagroups.exactalg import FieldConfig
from thetagroups.kacautos import (
    KacDiagram,
    counting_check,
    enumerate_diagrams,
    fixed_algebra_type,
    grading,
    kac_automorphism,
    saturation_criterion,
    torus_decomposition,
)
from thetagroups.rootsystem import affine_diagram

F4 = affine_diagram("F4")
G2 = affine_diagram("G2")
D43 = affine_diagram("D4", 3)


@pytest.mark.parametrize("aff,s,m,dims,g0", [
    (F4, "01000", 2, (24, 28), "C3×A1"),
    (F4, "00001", 2, (36, 16), "B4"),
    (G2, "010", 2, (6, 8), "A1×Ã1"),
    (D43, "100", 3, (14, 7, 7), "G2"),
    (F4, "00011", 6, (16, 5, 10, 6, 10, 5), "A3"),
])
def test_grading_dims_and_fixed_algebra(aff, s, m, dims, g0):
    d = KacDiagram.parse(s, aff)
    assert d.order == m
    th = kac_automorphism(d)
    gr = grading(th)
    assert gr.dims == dims
    assert fixed_algebra_type(th)[0] == g0


@pytest.mark.parametrize("aff,s", [(F4, "11111"), (F4, "10100"), (G2, "111"), (D43, "111"), (D43, "010")])
def test_automorphism_and_order(aff, s):
    d = KacDiagram.parse(s, aff)
    th = kac_automorphism(d)
    assert th.order == d.order
    assert (th ** d.order).is_identity()
    assert th.automorphism_violations() == []


@pytest.mark.parametrize("aff,s", [(G2, "111"), (D43, "101"), (F4, "01001")])
def test_grading_compatibility(aff, s):
    gr = grading(kac_automorphism(KacDiagram.parse(s, aff)))
    assert gr.compatibility_violations(pairs=None if aff is G2 else 3000) == []


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_counting_identity_f4(m):
    lhs, rhs, ok = counting_check(F4, m)
    assert ok and lhs == rhs


def test_counting_identity_m2_value():
    assert counting_check(F4, 2)[:2] == (15, 15)


def test_zero_one_enumeration_counts():
    # 0/1 primitive diagrams of order > 1: 6 for G2, 30 for F4, 7 for D4^(3)
    def count(aff):
        top = aff.twist * sum(aff.marks)
        return sum(len(enumerate_diagrams(aff, m, zero_one_only=True)) for m in range(2, top + 1))

    assert count(G2) == 6
    assert count(F4) == 30
    assert count(D43) == 7


def test_parse_rejects_wrong_length():
    with pytest.raises(ValueError):
        KacDiagram.parse("0101", F4)


def test_saturation_simple_cases():
    assert saturation_criterion(torus_decomposition([[-1, 0], [0, -1]], 2))
    assert not saturation_criterion(torus_decomposition([[1, 0], [0, 1]], 2))
    with pytest.raises(ValueError):
        torus_decomposition([[0, -1], [1, 0]], 2)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["11111", "10101", "01010", "00100", "10001"]), st.integers(0, 51), st.integers(0, 51))
def test_theta_respects_brackets(s, i, j):
    d = KacDiagram.parse(s, F4)
    th = kac_automorphism(d)
    F = th.field()
    alg = lie_algebra("F4")
    x, y = alg.basis_element(i, F), alg.basis_element(j, F)
    assert th.apply(x.bracket(y)) == th.apply(x).bracket(th.apply(y))


def test_prime_field_grading_dims_agree():
    d = KacDiagram.parse("10101", F4)
    th = kac_automorphism(d)
    assert grading(th, FieldConfig.prime(6, 7), 6).dims == grading(th).dims
