"""Root systems, subsystems and affine diagrams.

Oracles: Bourbaki data (root counts, highest roots, Cartan matrices) and
closure properties checked directly on the root set.
"""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagroups.rootsystem import (
    SUPPORTED_TYPES,
    additive_closure,
    affine_diagram,
    build,
    long_subsystem,
    reflection_closure,
    subsystem_type,
)

BOURBAKI = {
    # type: (number of roots, highest root, Coxeter number)
    "A2": (6, (1, 1), 3),
    "B3": (18, (1, 2, 2), 6),
    "C3": (18, (2, 2, 1), 6),
    "D4": (24, (1, 2, 1, 1), 6),
    "G2": (12, (3, 2), 6),
    "F4": (48, (2, 3, 4, 2), 12),
}


@pytest.mark.parametrize("t", sorted(BOURBAKI))
def test_root_counts(t):
    rs = build(t)
    n, hi, h = BOURBAKI[t]
    assert len(rs.roots) == n
    assert rs.highest_root == hi
    # |Phi| = rank * h
    assert len(rs.roots) == rs.rank * h


@pytest.mark.parametrize("t", SUPPORTED_TYPES)
def test_roots_closed_under_reflections(t):
    rs = build(t)
    assert reflection_closure(rs, [rs.simple_root(i) for i in range(rs.rank)]) == frozenset(rs.roots)
    for a in rs.roots:
        assert rs.neg(a) in rs.index
        for b in rs.roots:
            assert rs.reflect(a, b) in rs.index


@pytest.mark.parametrize("t", SUPPORTED_TYPES)
def test_reflection_table(t):
    rs = build(t)
    T = rs.reflection_table
    for i, a in enumerate(rs.roots):
        for j, b in enumerate(rs.roots):
            assert rs.roots[T[i][j]] == rs.reflect(a, b)
        assert T[i][i] == rs.index[rs.neg(a)]


def test_f4_cartan_matrix():
    assert build("F4").cartan_matrix == ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -2, 2, -1), (0, 0, -1, 2))


@pytest.mark.parametrize("t", ["G2", "F4"])
def test_pairing_is_integral_and_bounded(t):
    rs = build(t)
    for a, b in itertools.product(rs.roots, repeat=2):
        assert abs(rs.pairing(b, a)) <= 3


@pytest.mark.parametrize("roots,label", [
    ([(1, 0, 0, 0), (0, 1, 0, 0)], "A2"),
    ([(0, 0, 1, 0), (0, 0, 0, 1)], "Ã2"),
    ([(0, 1, 0, 0), (0, 0, 1, 0)], "B2"),
    ([(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], "C3"),
    ([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], "B3"),
])
def test_subsystem_labels(roots, label):
    assert subsystem_type(build("F4"), roots) == label


def test_long_roots_of_f4_form_d4():
    E = long_subsystem(build("F4"))
    assert E.cartan_type == "D4"
    assert len(E.roots) == 24
    d4 = build("D4")
    for b in d4.roots:
        assert E.to_ambient(b) in E.roots


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 47), min_size=1, max_size=3))
def test_closures_are_subsystems(idx):
    rs = build("F4")
    S = reflection_closure(rs, [rs.roots[i] for i in idx])
    for a in S:
        assert rs.neg(a) in S
        for b in S:
            assert rs.reflect(a, b) in S
    A = additive_closure(rs, [rs.roots[i] for i in idx])
    for a in A:
        for b in A:
            c = tuple(x + y for x, y in zip(a, b))
            assert c not in rs.index or c in A


@pytest.mark.parametrize("t,twist,marks", [("G2", 1, (3, 2, 1)), ("F4", 1, (1, 2, 3, 4, 2)),
                                           ("D4", 3, (1, 2, 1))])
def test_affine_marks(t, twist, marks):
    assert affine_diagram(t, twist).marks == marks


def test_affine_diagram_rejects_unknown():
    with pytest.raises(ValueError):
        affine_diagram("E6")
