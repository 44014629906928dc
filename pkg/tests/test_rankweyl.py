"""Ranks, Cartan subspaces, little Weyl groups and KW evidence.

Oracles: characteristic polynomials of Weyl elements (rank), the Shephard-Todd
data of the named reflection groups (orders, degrees), and the invariant
degrees of W (degree identity).
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetagroups import rankweyl as rw
from thetagroups.chevalley import centralizer_dim, lie_algebra
from thetagroups.exactalg import FieldConfig
from thetagroups.kacautos import KacDiagram, grading, kac_automorphism
from thetagroups.rootsystem import affine_diagram, build
from thetagroups.weyl import WeylElement, generate, reflection

F4 = build("F4")
WF4 = generate(F4)


def cls(W, label):
    return next(c for c in W.classes if c.label == label)


def kac_grading(type_key, s, char=0):
    base, twist = rw.TYPES[type_key]
    d = KacDiagram.parse(s, affine_diagram(base, twist))
    th = kac_automorphism(d, lie_algebra(base))
    return grading(th, th.field(char) if char else None, d.order)


# -- realization -------------------------------------------------------------

def test_identity_realizes_identity():
    e = WeylElement(F4, tuple(range(len(F4.roots))))
    assert rw.realize_weyl_automorphism(e).is_identity()


def test_coxeter_realization():
    w = cls(WF4, "F4").representative
    th = rw.realize_weyl_automorphism(w)
    assert th.perm == w.perm
    assert [list(r) for r in th.torus] == [list(r) for r in w.matrix]
    gr = grading(th, m=12)
    assert gr.dims[0] == 4
    assert (th ** 12).is_identity()


@pytest.mark.parametrize("k", [0, 5, 17, 23])
def test_reflection_realization(k):
    w = reflection(F4, F4.roots[k])
    th = rw.realize_weyl_automorphism(w)
    assert th.automorphism_violations() == []
    sq = th.compose(th)
    assert [list(r) for r in sq.torus] == [[int(i == j) for j in range(4)] for i in range(4)]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, len(WF4.perms) - 1), st.lists(st.integers(0, 11), min_size=4, max_size=4))
def test_shift_is_automorphism(i, lam):
    w = WeylElement(F4, WF4.perms[i])
    th = rw.shift_by_torus(rw.realize_weyl_automorphism(w), [Fraction(x, 12) for x in lam])
    assert th.perm == w.perm
    assert th.automorphism_violations() == []


# -- ranks --------------------------------------------------------------------

@pytest.mark.parametrize("label,m,r", [("F4(a1)", 6, 2), ("Ã2", 3, 1), ("∅", 1, 4), ("B4", 8, 1),
                                       ("A1^4", 2, 4), ("D4(a1)", 4, 2)])
def test_rank_via_weyl(label, m, r):
    assert rw.rank_via_weyl(cls(WF4, label).representative, m) == r


@pytest.mark.parametrize("type_key,s,r", [("f4", "00010", 0), ("f4", "00011", 0), ("d4-3", "001", 2),
                                          ("f4", "01001", 1), ("g2", "010", 2)])
def test_rank_via_generic_orbit(type_key, s, r):
    cert = rw.rank_via_generic_orbit(kac_grading(type_key, s), seed=0)
    assert cert.rank == r
    assert cert.samples.count(cert.min_stab) >= 2
    if r:
        assert cert.semisimple_witness is not None and cert.semisimple_witness.is_semisimple()
    else:
        assert cert.dense_orbit


def test_zero_rank_witnesses():
    alg = lie_algebra("F4")
    gr = kac_grading("f4", "00011")
    x = alg.parse("e_0010+e_0001", gr.F)
    assert gr.dims[:2] == (16, 5)
    assert centralizer_dim(x, gr.spaces[0]) == 11
    assert 16 - 11 == 5  # orbit of x fills g(1)
    gr = kac_grading("f4", "00010")
    x = alg.parse("e_0010+f_1231", gr.F)
    assert gr.dims[:2] == (18, 8)
    assert centralizer_dim(x, gr.spaces[0]) == 10


def test_semisimple_witness_for_b2_row():
    gr = kac_grading("f4", "01001")
    x = lie_algebra("F4").parse("e_1100+e_0011+f_1122", gr.F)
    assert x.is_semisimple() and not x.is_nilpotent()
    assert gr.theta.apply(x) == gr.zeta(1) * x


# -- Cartan subspaces ----------------------------------------------------------

@pytest.mark.parametrize("W,label,m,dim", [(WF4, "F4", 12, 1), (WF4, "A1^4", 2, 4),
                                           (generate(build("G2")), "A2", 3, 1)])
def test_cartan_subspace(W, label, m, dim):
    c = rw.cartan_subspace(cls(W, label).representative, m)
    assert c.dim == dim
    assert c.verify()


def test_cartan_subspace_zero_rank():
    with pytest.raises(ValueError):
        rw.cartan_subspace(cls(WF4, "A1").representative, 3)


# -- little Weyl groups --------------------------------------------------------

def cand(type_key, label):
    return next(c for c in rw.weyl_candidates(type_key) if c.label == label)


@pytest.mark.parametrize("type_key,label,m,name,order,degrees", [
    ("f4", "D4(a1)", 4, "G8", 96, (8, 12)),
    ("f4", "F4(a1)", 6, "G5", 72, (6, 12)),
    ("f4", "A1^4", 2, "W(F4)", 1152, (2, 6, 8, 12)),
    ("f4", "Ã1", 2, "μ2", 2, (2,)),
    ("d4-3", "A2×Ã2", 3, "G4", 24, (4, 6)),
    ("d4-3", "F4", 12, "μ4", 4, (4,)),
    ("g2", "A1×Ã1", 2, "W(G2)", 12, (2, 6)),
])
def test_little_weyl(type_key, label, m, name, order, degrees):
    lw = rw.little_weyl(cand(type_key, label), m)
    assert (lw.name, lw.order, lw.degrees) == (name, order, degrees)
    assert sum(lw.reflection_orders.values()) == sum(d - 1 for d in degrees)


def test_a1_tilde_quotient_by_phi2():
    c = cand("f4", "Ã1")
    assert len(c.centralizer) == 96
    lw = rw.little_weyl(c, 2)
    # W(Phi_2) = W(B3) of order 48 acts trivially on c
    assert lw.order == 96 // 48
    assert rw.phi2_trivial_on_c(c, 2)


def test_d4_centralizer_order():
    assert len(cand("d4-3", "A2×Ã2").centralizer) == 24


def test_power_coherence():
    a = rw.little_weyl(cand("f4", "F4(a1)"), 6)
    b = rw.little_weyl(cand("f4", "A2×Ã2"), 3)
    assert (a.name, a.order) == (b.name, b.order) == ("G5", 72)


def test_identify_cyclic():
    F = FieldConfig.cyclotomic(12)
    mats = [((F.zeta_pow(k),),) for k in range(12)]
    assert rw.identify_reflection_group(mats, F)[0] == "μ12"


def test_identify_rejects_non_reflection_group():
    F = FieldConfig.cyclotomic(3)
    z = F.zeta
    mats = [((z ** k, F.zero), (F.zero, z ** (2 * k))) for k in range(3)]
    with pytest.raises(ValueError):
        rw.identify_reflection_group(mats, F)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8, 12])
def test_molien_cyclic(n):
    F = FieldConfig.cyclotomic(n)
    assert rw.molien_degrees([((F.zeta_pow(k),),) for k in range(n)], F) == (n,)


def test_molien_weyl_group_on_t():
    Q = FieldConfig.cyclotomic(1)
    mats = list({tuple(tuple(Q(v) for v in row) for row in WeylElement(F4, p).matrix) for p in WF4.perms})
    assert rw.molien_degrees(mats, Q) == (2, 6, 8, 12)


def test_prime_invariants_agree_with_molien():
    c = cand("f4", "F4(a1)")
    lw0 = rw.little_weyl(c, 6)
    lw7 = rw.little_weyl(c, 6, FieldConfig.prime(6, 7))
    assert lw0.degrees == lw7.degrees == (6, 12)


# -- matching ---------------------------------------------------------------

@pytest.mark.parametrize("type_key", sorted(rw.TYPES))
def test_matching_audit_is_clean(type_key):
    for m in rw._kac_orders(type_key):
        assert rw.matching_audit(type_key, m) == []


@pytest.mark.parametrize("type_key", sorted(rw.TYPES))
def test_phi2_trivial_on_c(type_key):
    for row in rw.classify(type_key).rows:
        c = cand(type_key, row.carter)
        assert rw.phi2_trivial_on_c(c, row.order)


# -- N-regularity and KW evidence --------------------------------------------

@pytest.mark.parametrize("type_key,s,expected", [("f4", "11111", True), ("f4", "01010", False),
                                                 ("g2", "010", True), ("f4", "11101", True)])
def test_n_regular_check(type_key, s, expected):
    ok, x = rw.n_regular_check(kac_grading(type_key, s))
    assert ok is expected
    if ok:
        assert x.is_nilpotent() and centralizer_dim(x) == x.alg.rank


@pytest.mark.parametrize("type_key,s,red,tl,degs", [
    ("f4", "10101", "N-reg.", "", (6, 12)),
    ("f4", "11000", "Spin(7)", "positive 3-cycle", (6,)),
    ("f4", "01010", "Sp(6)", "Coxeter", (6,)),
    ("d4-3", "010", "SL(2)^3", "τ", (2,)),
    ("d4-3", "100", "SL(2)^3", "τ²", (2,)),
])
def test_kw_evidence(type_key, s, red, tl, degs):
    rep = rw.analyze_diagram(type_key, s)
    kw = rep.kw
    assert (kw.reduction, kw.theta_on_L, kw.degrees) == (red, tl, degs)
    assert kw.verified


def test_degree_rule_full_f4():
    gr = kac_grading("f4", "10101")
    S = [F4.simple_root(i) for i in range(4)]
    # inner, S fixed: degrees of W(F4) divisible by 6
    assert rw.degree_rule(gr.theta, S, 6) == (6, 12)


def test_analyze_rejects_non_primitive():
    with pytest.raises(ValueError, match="primitive"):
        rw.analyze_diagram("f4", "20000")


def test_analyze_rejects_unknown_type():
    with pytest.raises(ValueError):
        rw.analyze_diagram("e6", "0000000")
