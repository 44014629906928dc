"""Ranks, little Weyl groups and the Kac-diagram/Weyl-class matching.

Two models of a positive-rank automorphism meet here.

* The *Kac model* ``theta_mu`` is diagonal (or diagonal after the triality
  twist); its grading is cheap and its g(1) root vectors are explicit.
* The *Weyl model* ``Ad(t_lambda) o n_w`` acts on the Cartan subalgebra as w,
  so the zeta-eigenspace c_w of w in t sits in g(1) and the little Weyl group
  is the image of the centralizer of w.

A Kac diagram is matched to a Weyl class by comparing conjugation invariants
of the two gradings (dimensions, centre of g(0), and the g(0)'-invariants in
each g(i)), never by constructing a conjugating element.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm, prod
from typing import Sequence

import numpy as np

from .chevalley import AlgElement, LieAlgebra, centralizer_dim, exp_ad_nilpotent, lie_algebra
from .exactalg import (
    FieldConfig,
    cyclotomic_poly,
    euler_phi,
    identity_matrix,
    int_charpoly,
    int_poly_multiplicity,
    kernel_over_field,
    rank_over_field,
    rref,
)
from .kacautos import (
    Automorphism,
    Grading,
    KacDiagram,
    _cycle_eigenvector,
    _frac_mod1,
    _gamma_cached,
    enumerate_diagrams,
    fixed_algebra_type,
    grading,
    kac_automorphism,
    saturation_criterion,
    torus_decomposition,
)
from .rootsystem import (
    RootSystem,
    additive_closure,
    affine_diagram,
    build,
    component_types,
    format_type,
    long_subsystem,
    reflection_closure,
    subsystem_type,
)
from .weyl import WeylElement, WeylGroup, eigenvalue_multiplicity, generate, reflection

__all__ = [
    "CartanSubspace",
    "LittleWeylGroup",
    "RankCertificate",
    "KWEvidence",
    "WeylCandidate",
    "Realization",
    "DiagramReport",
    "ClassificationRow",
    "ClassificationResult",
    "RankDisagreement",
    "TYPES",
    "ROW_ORDER",
    "realize_weyl_automorphism",
    "shift_by_torus",
    "rank_via_weyl",
    "rank_via_generic_orbit",
    "cartan_subspace",
    "little_weyl",
    "identify_reflection_group",
    "molien_series",
    "molien_degrees",
    "grading_invariants",
    "weyl_candidates",
    "realizations",
    "matching_audit",
    "invariant_collisions",
    "n_regular_check",
    "kw_evidence",
    "degree_rule",
    "analyze_diagram",
    "classify",
]

Q = FieldConfig.cyclotomic(1)

#: CLI type keys -> (Cartan type, twist)
TYPES = {"g2": ("G2", 1), "f4": ("F4", 1), "d4-3": ("D4", 3)}

#: Display order of the positive-rank rows (descending m, then table order).
ROW_ORDER = {
    "g2": ("111", "011", "010"),
    "f4": ("11111", "11101", "10101", "01010", "11100", "10100", "01001",
           "00100", "11000", "10001", "01000", "00001"),
    "d4-3": ("111", "101", "010", "001", "100"),
}


class RankDisagreement(AssertionError):
    """The two rank computations disagree on some diagram."""


# ---------------------------------------------------------------------------
# Weyl-element realizations


@lru_cache(maxsize=None)
def _simple_n(cartan_type: str, i: int) -> Automorphism:
    # n_i = exp(ad e_i) exp(ad -f_i) exp(ad e_i), read off as a signed permutation
    alg = lie_algebra(cartan_type)
    rs = alg.rs
    a = rs.simple_root(i)
    E = exp_ad_nilpotent(alg.e(a, Q))
    Fm = exp_ad_nilpotent(-1 * alg.e(rs.neg(a), Q))

    def apply(cols, v):
        out: dict = {}
        for j, c in v.items():
            for k, x in cols[j].items():
                out[k] = out.get(k, Q.zero) + c * x
        return {k: x for k, x in out.items() if x}

    r = rs.rank
    perm, phase = [], []
    for k in range(len(rs.roots)):
        v = apply(E, apply(Fm, apply(E, {r + k: Q.one})))
        if len(v) != 1:
            raise AssertionError("reflection representative is not monomial")
        (j, c), = v.items()
        if c == Q.one:
            phase.append(Fraction(0))
        elif c == -Q.one:
            phase.append(Fraction(1, 2))
        else:
            raise AssertionError(f"unexpected coefficient {c}")
        perm.append(j - r)
    return Automorphism(alg, perm, phase, reflection(rs, a).matrix, kind="weyl")


def _reduced_word(w: WeylElement) -> list[int]:
    rs = w.rs
    word, cur = [], w
    while not cur.is_identity():
        for i in range(rs.rank):
            if not rs.is_positive(cur(rs.simple_root(i))):
                word.append(i)
                cur = cur * reflection(rs, rs.simple_root(i))
                break
    return word  # w = s_{word[-1]} ... s_{word[0]}


def realize_weyl_automorphism(w: WeylElement, alg: LieAlgebra | None = None) -> Automorphism:
    """``Int n_w`` for the product of simple reflection representatives along
    a reduced word of w.

    Runs over Q, so the result is valid in every characteristic not
    dividing the phase denominators.
    """
    rs = w.rs
    alg = alg or lie_algebra(rs.cartan_type)
    if alg.rs.cartan_type != rs.cartan_type:
        raise ValueError("Weyl element and algebra of different types")
    theta = Automorphism(alg, range(len(rs.roots)), [0] * len(rs.roots),
                         identity_matrix(rs.rank), kind="weyl")
    for i in reversed(_reduced_word(w)):
        theta = theta.compose(_simple_n(rs.cartan_type, i))
    theta.kind = "weyl"
    if theta.perm != w.perm:
        raise AssertionError("realization does not act on roots as w")
    return theta


def shift_by_torus(theta: Automorphism, lam: Sequence) -> Automorphism:
    """``Ad(t) o theta`` where alpha_i(t) = exp(2 pi i lam[i])."""
    rs = theta.rs
    lam = [Fraction(x) for x in lam]
    phase = [theta.phase[k] + sum(l * c for l, c in zip(lam, rs.roots[theta.perm[k]]))
             for k in range(len(rs.roots))]
    out = Automorphism(theta.alg, theta.perm, phase, theta.torus, kind=theta.kind, data=theta.data)
    out.data["lambda"] = tuple(lam)
    return out


def rank_via_weyl(w, m: int) -> int:
    """Multiplicity of the m-th cyclotomic polynomial in the characteristic
    polynomial of w (a WeylElement or an integer matrix)."""
    if isinstance(w, WeylElement):
        return eigenvalue_multiplicity(w, m)
    return int_poly_multiplicity(int_charpoly([list(r) for r in w]), cyclotomic_poly(m))


@dataclass
class WeylCandidate:
    """A Weyl class together with its monomial realization ``base``.

    For the triality twist ``base = n_w o gamma`` with w in W(D4), and
    ``element`` is the element of W(F4) acting on the long roots as w gamma.
    """

    label: str
    element: WeylElement
    base: Automorphism
    centralizer: list = field(repr=False)
    phi1_type: str = ""
    phi2: frozenset = field(default=frozenset(), repr=False)
    ambient_order: int = 0

    def mult(self, m: int) -> int:
        return rank_via_weyl(self.base.torus, m)

    @property
    def order(self) -> int:
        return self.element.order


def _f4_element_for(perm_d4, f4: RootSystem, d4: RootSystem, WF: WeylGroup) -> WeylElement:
    E = long_subsystem(f4)
    src = [f4.index[E.to_ambient(d4.simple_root(i))] for i in range(4)]
    tgt = [f4.index[E.to_ambient(d4.roots[perm_d4[d4.index[d4.simple_root(i)]]])] for i in range(4)]
    for q in WF.perms:
        if all(q[a] == b for a, b in zip(src, tgt)):
            return WeylElement(f4, q)
    raise AssertionError("no element of W(F4) induces this automorphism of D4")


@lru_cache(maxsize=None)
def weyl_candidates(type_key: str) -> tuple[WeylCandidate, ...]:
    """One realized representative per Weyl class (per W(F4)-class meeting
    the coset W(D4) gamma for the twisted type)."""
    base_type, twist = TYPES[type_key]
    if twist == 1:
        rs = build(base_type)
        W = generate(rs)
        alg = lie_algebra(base_type)
        out = []
        for cc in W.classes:
            w = cc.representative
            out.append(WeylCandidate(cc.label, w, realize_weyl_automorphism(w, alg),
                                     W.centralizer(w),
                                     cc.phi1_type, cc.phi2, len(W)))
        return tuple(out)
    f4, d4 = build("F4"), build("D4")
    WF = generate(f4)
    WD = WeylGroup(d4)
    alg = lie_algebra("D4")
    gamma = _gamma_cached(alg)
    seen: dict = {}
    for p in WD.perms:
        q = tuple(p[gamma.perm[k]] for k in range(len(d4.roots)))
        x = _f4_element_for(q, f4, d4, WF)
        cc = WF.class_of(x)
        if cc.label in seen:
            continue
        base = realize_weyl_automorphism(WeylElement(d4, p), alg).compose(gamma)
        base.kind = "weyl*triality"
        cent = [WeylElement(d4, s) for s in WD.perms
                if all(s[q[k]] == q[s[k]] for k in range(len(q)))]
        # label, phi data refer to the F4 element with the same action on t
        seen[cc.label] = WeylCandidate(cc.label, x, base, cent, cc.phi1_type, cc.phi2, len(WD))
    return tuple(seen.values())


# ---------------------------------------------------------------------------
# the lambda search


def _eigen_basis(A, m: int, F: FieldConfig, k: int = 1) -> list:
    r = len(A)
    z = F.zeta_pow(k * (F.conductor // m))
    M = [[F(A[a][b]) - (z if a == b else F.zero) for b in range(r)] for a in range(r)]
    return kernel_over_field(M, F, ncols=r)


def _vanishes(rs: RootSystem, b, basis, F) -> bool:
    r = rs.rank
    return all(sum((v[j] * rs.pairing(b, rs.simple_root(j)) for j in range(r)), F.zero).is_zero()
               for v in basis)


def _lambda_classes(base: Automorphism, m: int, denominator: int = 2) -> list[tuple]:
    """Shifts ``Ad(t_lambda) o base`` of order dividing m, up to torus
    conjugation (classes of cycle phases), subject to the maximal-torus
    condition; returns ``[(dims, lambda)]``.

    lambda runs over (1 / (denominator * m)) Z^r modulo Z^r.  The maximal
    torus condition: no cycle of roots vanishing on both c_w and t^w may
    contribute a fixed vector, i.e. (T^w)^0 is a maximal torus of
    Z_G(c_w)^theta.
    """
    rs = base.rs
    r = rs.rank
    M = denominator * m
    A = base.torus
    F = FieldConfig.cyclotomic(m)
    cw = _eigen_basis(A, m, F)
    fix = _eigen_basis(A, 1, Q)
    grid = np.stack(np.meshgrid(*[np.arange(M)] * r, indexing="ij"), -1).reshape(-1, r)
    n = len(grid)
    valid = np.ones(n, bool)
    ok = np.ones(n, bool)
    dims = np.zeros((n, m), int)
    for q, c in base.torus_phases().items():
        if (q * m).denominator != 1:
            return []
        dims[:, int(q * m)] += c
    keys = []
    rows = np.arange(n)
    for C in base.cycles:
        L = len(C)
        if m % L:
            return []
        in_psi = all(_vanishes(rs, rs.roots[k], cw, F) for k in C)
        in_perp = in_psi and all(_vanishes(rs, rs.roots[k], fix, Q) for k in C)
        s = np.array([sum(rs.roots[k][i] for k in C) for i in range(r)])
        sig = sum(base.phase[k] for k in C) * M
        if sig.denominator != 1:
            return []
        a = (int(sig) + grid @ s) % M
        keys.append(a)
        valid &= (a % (denominator * L) == 0)
        b0 = (a // (denominator * L)) % (m // L)
        for j in range(L):
            k = (b0 + j * (m // L)) % m
            np.add.at(dims, (rows, k), 1)
            if in_perp:
                ok &= (k != 0)
    sel = np.nonzero(valid & ok)[0]
    K = np.stack(keys, 1) if keys else np.zeros((n, 0), int)
    out: dict = {}
    for i in sel:
        kk = K[i].tobytes()
        if kk not in out:
            out[kk] = (tuple(int(x) for x in dims[i]), tuple(Fraction(int(x), M) for x in grid[i]))
    return list(out.values())


# ---------------------------------------------------------------------------
# conjugation invariants of a grading


def _annihilated_dim(basis, ops, F) -> int:
    # dim of {y in span(basis) : [d, y] = 0 for every d in ops}
    if not basis:
        return 0
    rows: dict = {}
    for a, y in enumerate(basis):
        for t, d in enumerate(ops):
            for k, v in d.bracket(y).c.items():
                rows.setdefault((t, k), {})[a] = v
    return len(basis) - rank_over_field(list(rows.values()), F)


def grading_invariants(gr: Grading) -> tuple:
    """(dims, dim z(g(0)), dim g(i)^{[g(0), g(0)]} for each i).

    All entries are invariant under conjugation of the automorphism.
    """
    X = gr.spaces[0]
    F, alg = gr.F, gr.theta.alg
    brackets = [X[a].bracket(X[b]) for a in range(len(X)) for b in range(a + 1, len(X))]
    D = [AlgElement(alg, row, F) for _, row in rref([z.c for z in brackets if not z.is_zero()], F)]
    centre = _annihilated_dim(X, X, F)
    return (gr.dims, centre) + tuple(_annihilated_dim(sp, D, F) for sp in gr.spaces)


def _type_key(d: KacDiagram) -> str:
    return d.affine.key


def _kac_orders(type_key: str) -> list[int]:
    base_type, twist = TYPES[type_key]
    aff = affine_diagram(base_type, twist)
    return list(range(2, twist * sum(aff.marks) + 1))


@lru_cache(maxsize=None)
def _kac_table(type_key: str, m: int) -> dict:
    """{dims: {invariants: [diagram strings]}} over the primitive order-m diagrams."""
    base_type, twist = TYPES[type_key]
    aff = affine_diagram(base_type, twist)
    alg = lie_algebra(base_type)
    table: dict = {}
    for d in enumerate_diagrams(aff, m):
        gr = grading(kac_automorphism(d, alg), m=m)
        table.setdefault(gr.dims, {}).setdefault(grading_invariants(gr), []).append(str(d))
    return table


def invariant_collisions(type_key: str, m: int) -> list[tuple]:
    """Primitive order-m diagrams sharing an invariant tuple."""
    out = []
    for invs in _kac_table(type_key, m).values():
        for inv, names in invs.items():
            if len(names) > 1:
                out.append((inv, tuple(names)))
    return out


def matching_audit(type_key: str, m: int) -> list[tuple]:
    """Weyl-model realizations whose invariants fit several order-m
    diagrams, as ``(class label, lambda, diagrams)``.

    Empty when the matching is sound.  Collisions among diagrams that no
    realization reaches (see :func:`invariant_collisions`) are harmless.
    """
    return list(_realize(type_key, m)[1])


@dataclass
class Realization:
    """A Weyl-model automorphism matched to a Kac diagram."""

    candidate: WeylCandidate
    m: int
    theta: Automorphism
    kac: str

    @property
    def rank(self) -> int:
        return self.candidate.mult(self.m)


def realizations(type_key: str, m: int) -> tuple[Realization, ...]:
    """Every (class, lambda-class) whose grading matches some primitive
    order-m Kac diagram, restricted to classes with a primitive m-th root of
    unity among their eigenvalues."""
    return _realize(type_key, m)[0]


@lru_cache(maxsize=None)
def _realize(type_key: str, m: int) -> tuple[tuple, tuple]:
    table = _kac_table(type_key, m)
    out, ambiguous = [], []
    for cand in weyl_candidates(type_key):
        if cand.mult(m) == 0:
            continue
        for dims, lam in _lambda_classes(cand.base, m):
            invs = table.get(dims)
            if not invs:
                continue
            theta = shift_by_torus(cand.base, lam)
            if len(invs) == 1 and len(next(iter(invs.values()))) == 1:
                name = next(iter(invs.values()))[0]
            else:
                key = grading_invariants(grading(theta, m=m))
                if key not in invs:
                    continue
                if len(invs[key]) != 1:
                    ambiguous.append((cand.label, lam, tuple(invs[key])))
                    continue
                name = invs[key][0]
            out.append(Realization(cand, m, theta, name))
    return tuple(out), tuple(ambiguous)


def weyl_rank(type_key: str, kac: str, m: int) -> tuple[int, list[Realization]]:
    """Largest eigenvalue multiplicity over matched Weyl realizations, with
    the realizations attaining it."""
    hits = [r for r in realizations(type_key, m) if r.kac == kac]
    if not hits:
        return 0, []
    best = max(r.rank for r in hits)
    return best, [r for r in hits if r.rank == best]


# ---------------------------------------------------------------------------
# generic orbit rank


@dataclass
class RankCertificate:
    """Outcome of :func:`rank_via_generic_orbit`.

    ``rank = dim g(1) - dim g(0) + min_stab``; ``witness`` attains
    ``min_stab``.  A zero rank means G(0).witness is dense in g(1).
    """

    rank: int
    dim_g0: int
    dim_g1: int
    min_stab: int
    samples: list
    witness: AlgElement | None = field(default=None, repr=False)
    semisimple_witness: AlgElement | None = field(default=None, repr=False)

    @property
    def dense_orbit(self) -> bool:
        return self.rank == 0


def _random_element(basis, rng: random.Random):
    x = None
    for y in basis:
        c = rng.randint(-3, 3)
        if c:
            x = c * y if x is None else x + c * y
    return x


def _sparse_semisimple(basis, limit: int = 3):
    for k in range(2, limit + 1):
        for idx in combinations(range(len(basis)), k):
            x = basis[idx[0]]
            for i in idx[1:]:
                x = x + basis[i]
            if not x.is_nilpotent() and x.is_semisimple():
                return x
    return None


def rank_via_generic_orbit(gr: Grading, seed: int = 0, trials: int = 8, max_trials: int = 64,
                           find_semisimple: bool = True) -> RankCertificate:
    """Rank as dim g(1) minus the generic G(0)-orbit dimension.

    The minimum stabilizer dimension over random samples (coefficients in
    [-3, 3]) is accepted only once it has been attained twice.

    Raises
    ------
    RuntimeError
        If the minimum is not witnessed twice within ``max_trials``.
    """
    g0, g1 = gr.spaces[0], gr.spaces[1]
    if not g1:
        return RankCertificate(0, len(g0), 0, 0, [])
    rng = random.Random(seed)
    samples, elems = [], []
    while True:
        x = _random_element(g1, rng)
        if x is not None:
            samples.append(centralizer_dim(x, g0))
            elems.append(x)
        if len(samples) >= trials:
            lo = min(samples)
            if samples.count(lo) >= 2:
                break
        if len(samples) >= max_trials:
            raise RuntimeError("generic stabilizer did not stabilize")
    lo = min(samples)
    cert = RankCertificate(len(g1) - len(g0) + lo, len(g0), len(g1), lo, samples,
                           witness=elems[samples.index(lo)])
    if cert.rank < 0:
        raise AssertionError("negative rank: sampled stabilizers are inconsistent")
    if cert.rank > 0 and find_semisimple:
        cert.semisimple_witness = _sparse_semisimple(g1)
        if cert.semisimple_witness is None and cert.witness.is_semisimple():
            cert.semisimple_witness = cert.witness
    return cert


def dense_orbit_witness(gr: Grading, limit: int = 2):
    """A sparse x in g(1) with dim g(0) - dim z_{g(0)}(x) = dim g(1), or None."""
    g0, g1 = gr.spaces[0], gr.spaces[1]
    for k in range(1, limit + 1):
        for idx in combinations(range(len(g1)), k):
            x = g1[idx[0]]
            for i in idx[1:]:
                x = x + g1[i]
            if len(g0) - centralizer_dim(x, g0) == len(g1):
                return x
    return None


# ---------------------------------------------------------------------------
# Cartan subspaces


@dataclass
class CartanSubspace:
    """c = zeta-eigenspace of the torus part of a Weyl-model automorphism."""

    basis: list
    vectors: list = field(repr=False)
    theta: Automorphism = field(repr=False)
    m: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def verify(self) -> bool:
        if not self.basis:
            return False
        F = self.basis[0].F
        z = F.zeta_pow(F.conductor // self.m)
        for i, x in enumerate(self.basis):
            if self.theta.apply(x) != z * x or not x.is_semisimple():
                return False
            for y in self.basis[i + 1:]:
                if not x.bracket(y).is_zero():
                    return False
        return True


def cartan_subspace(theta, m: int, F: FieldConfig | None = None) -> CartanSubspace:
    """The zeta-eigenspace in t of a Weyl-model automorphism (or of
    ``realize_weyl_automorphism(w)`` when given a WeylElement).

    Raises
    ------
    ValueError
        If the eigenspace is zero.
    """
    if isinstance(theta, WeylElement):
        theta = realize_weyl_automorphism(theta)
    F = F or FieldConfig.cyclotomic(m)
    vecs = _eigen_basis(theta.torus, m, F)
    if not vecs:
        raise ValueError("zero rank: zeta is not an eigenvalue on t")
    basis = [AlgElement(theta.alg, {k: c for k, c in enumerate(v) if c}, F) for v in vecs]
    return CartanSubspace(basis, vecs, theta, m)


# ---------------------------------------------------------------------------
# finite matrix groups


def _mat_mul_f(A, B, F):
    n, k, p = len(A), len(B), len(B[0])
    return tuple(tuple(sum((A[i][t] * B[t][j] for t in range(k)), F.zero) for j in range(p))
                 for i in range(n))


def _is_identity(A, F) -> bool:
    return all(A[i][j] == (F.one if i == j else F.zero) for i in range(len(A)) for j in range(len(A)))


def _mat_order(A, F, bound: int = 10_000) -> int:
    P, k = A, 1
    while not _is_identity(P, F):
        P = _mat_mul_f(P, A, F)
        k += 1
        if k > bound:
            raise ValueError("matrix of infinite or huge order")
    return k


def _charpoly(A, F) -> tuple:
    """det(tI - A), low degree first (Faddeev-LeVerrier)."""
    n = len(A)
    c = [F.zero] * n + [F.one]
    Mk = tuple(tuple(F.zero for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        AM = _mat_mul_f(A, Mk, F)
        Mk = tuple(tuple(AM[i][j] + (c[n - k + 1] if i == j else F.zero) for j in range(n))
                   for i in range(n))
        AMk = _mat_mul_f(A, Mk, F)
        tr = sum((AMk[i][i] for i in range(n)), F.zero)
        c[n - k] = -(tr * F(Fraction(1, k)))
    return tuple(c)


def _to_int(x) -> int:
    if hasattr(x, "to_fraction"):
        f = x.to_fraction()
        if f.denominator != 1:
            raise ValueError("non-integral Molien coefficient")
        return int(f)
    return int(x.v)


def molien_series(matrices, F: FieldConfig, terms: int) -> list[int]:
    """Coefficients of (1/|G|) sum_g 1/det(1 - t g) up to t^(terms - 1)."""
    polys = Counter(_charpoly(g, F) for g in matrices)
    total = [F.zero] * terms
    for chi, mult in polys.items():
        r = len(chi) - 1
        a = [chi[r - k] for k in range(r + 1)]  # det(1 - t g) = t^r chi(1/t)
        b = [F.one] + [F.zero] * (terms - 1)
        for nn in range(1, terms):
            acc = F.zero
            for k in range(1, min(nn, r) + 1):
                acc = acc + a[k] * b[nn - k]
            b[nn] = -acc
        for nn in range(terms):
            total[nn] = total[nn] + F(mult) * b[nn]
    inv = F(Fraction(1, len(matrices)))
    return [_to_int(t * inv) for t in total]


def _rank_mod_p(A: np.ndarray, p: int) -> int:
    A = A.copy() % p
    rows, cols = A.shape
    rk = 0
    for c in range(cols):
        piv = np.nonzero(A[rk:, c])[0]
        if not len(piv):
            continue
        i = rk + piv[0]
        A[[rk, i]] = A[[i, rk]]
        A[rk] = A[rk] * pow(int(A[rk, c]), -1, p) % p
        nz = np.nonzero(A[:, c])[0]
        nz = nz[nz != rk]
        if len(nz):
            A[nz] = (A[nz] - np.outer(A[nz, c], A[rk])) % p
        rk += 1
        if rk == rows:
            break
    return rk


def _generators(matrices, F) -> list:
    gens, group = [], {_identity_tuple(len(matrices[0]), F)}
    for g in matrices:
        if g in group:
            continue
        gens.append(g)
        frontier = list(group)
        while frontier:
            nxt = []
            for h in frontier:
                for x in gens:
                    y = _mat_mul_f(h, x, F)
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
    return gens


def _identity_tuple(n, F):
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def invariant_dimensions(matrices, F: FieldConfig, terms: int) -> list[int]:
    """dim S^k(c*)^G for k < terms, by linear algebra over a prime field.

    Used when the group order is prime to the characteristic but the Molien
    coefficients would only be known modulo p.
    """
    p = F.characteristic
    r = len(matrices[0])
    gens = [[[int(x.v) for x in row] for row in g] for g in _generators(matrices, F)]
    out = [1]
    for k in range(1, terms):
        monos = _monomials(r, k)
        pos = {e: i for i, e in enumerate(monos)}
        blocks = []
        for g in gens:
            # x_i -> sum_j g[i][j] x_j, expanded monomial by monomial
            img = np.zeros((len(monos), len(monos)), dtype=np.int64)
            for a, e in enumerate(monos):
                poly = {(0,) * r: 1}
                for i, ei in enumerate(e):
                    for _ in range(ei):
                        nxt: dict = {}
                        for mono, c in poly.items():
                            for j in range(r):
                                if g[i][j] % p:
                                    mm = list(mono)
                                    mm[j] += 1
                                    mm = tuple(mm)
                                    nxt[mm] = (nxt.get(mm, 0) + c * g[i][j]) % p
                        poly = nxt
                for mono, c in poly.items():
                    img[pos[mono], a] = c
            blocks.append(img - np.eye(len(monos), dtype=np.int64))
        out.append(len(monos) - _rank_mod_p(np.vstack(blocks), p))
    return out


@lru_cache(maxsize=None)
def _monomials(r: int, k: int) -> tuple:
    if r == 1:
        return ((k,),)
    return tuple((i,) + rest for i in range(k, -1, -1) for rest in _monomials(r - 1, k - i))


def molien_degrees(matrices, F: FieldConfig) -> tuple:
    """Degrees of a polynomial invariant ring, read off its Hilbert series.

    The series comes from the Molien formula in characteristic 0 and from
    :func:`invariant_dimensions` over a prime field.

    Raises
    ------
    ValueError
        If the series is not of the form prod 1/(1 - t^d).
    """
    r = len(matrices[0])
    top = max(_mat_order(g, F) for g in matrices)
    if F.characteristic:
        if len(matrices) % F.characteristic == 0:
            raise ValueError("modular case: group order divisible by p")
        terms = top + 3
        h = invariant_dimensions(matrices, F, terms)
    else:
        terms = 2 * top + 2
        h = molien_series(matrices, F, terms)
    P = [1] + [0] * (terms - 1)
    degrees = []
    for k in range(1, terms):
        while h[k] > P[k] and len(degrees) < r:
            degrees.append(k)
            for nn in range(k, terms):
                P[nn] += P[nn - k]
        if h[k] != P[k]:
            raise ValueError("Hilbert series is not that of a polynomial ring")
    if len(degrees) != r or prod(degrees) != len(matrices):
        raise ValueError("degrees inconsistent with the group order")
    return tuple(degrees)


def _reflection_orders(matrices, F) -> Counter:
    out: Counter = Counter()
    for g in matrices:
        if _is_identity(g, F):
            continue
        n = len(g)
        D = [[g[i][j] - (F.one if i == j else F.zero) for j in range(n)] for i in range(n)]
        if rank_over_field(D, F) == 1:
            out[_mat_order(g, F)] += 1
    return out


_EXCEPTIONAL = {
    (24, (4, 6), ((3, 8),)): "G4",
    (72, (6, 12), ((3, 16),)): "G5",
    (96, (8, 12), ((2, 6), (4, 12))): "G8",
    (96, (8, 12), ((2, 18),)): "G13",
    (12, (2, 6), ((2, 6),)): "W(G2)",
    (1152, (2, 6, 8, 12), ((2, 24),)): "W(F4)",
}


def _cyclic_reflections(n: int) -> Counter:
    c: Counter = Counter()
    for k in range(1, n):
        c[n // gcd(n, k)] += 1
    return c


def _imprimitive_fingerprints(max_order: int = 144) -> dict:
    out = {}
    for mm in range(2, 13):
        for p in range(1, mm + 1):
            if mm % p:
                continue
            order = 2 * mm * mm // p
            if order > max_order:
                continue
            refl = Counter({2: mm}) + _cyclic_reflections(mm // p) + _cyclic_reflections(mm // p)
            degs = tuple(sorted((mm, 2 * mm // p)))
            out.setdefault((order, degs, tuple(sorted(refl.items()))), f"G({mm},{p},2)")
    return out


def identify_reflection_group(matrices, F: FieldConfig) -> tuple[str, tuple, Counter]:
    """Shephard-Todd label, degrees and reflection-order counts.

    Raises
    ------
    ValueError
        If the fingerprint is not in the catalog.
    """
    r = len(matrices[0])
    order = len(matrices)
    degrees = molien_degrees(matrices, F)
    refl = _reflection_orders(matrices, F)
    if sum(refl.values()) != sum(d - 1 for d in degrees):
        raise ValueError("not generated by pseudoreflections")
    key = (order, degrees, tuple(sorted(refl.items())))
    if r == 1:
        return f"μ{order}", degrees, refl
    if key in _EXCEPTIONAL:
        return _EXCEPTIONAL[key], degrees, refl
    abelian = all(_mat_mul_f(a, b, F) == _mat_mul_f(b, a, F) for a in matrices for b in matrices)
    if abelian and r == 2 and prod(degrees) == order:
        a, b = degrees
        if refl == _cyclic_reflections(a) + _cyclic_reflections(b):
            return f"μ{a}×μ{b}", degrees, refl
    imp = _imprimitive_fingerprints()
    if r == 2 and key in imp:
        return imp[key], degrees, refl
    raise ValueError(f"reflection group fingerprint {key} not in catalog")


@dataclass
class LittleWeylGroup:
    """The image of the centralizer of w on c (W-bar), possibly certified
    equal to W_c."""

    matrices: list = field(repr=False)
    F: FieldConfig = field(repr=False)
    rank: int
    order: int
    name: str
    degrees: tuple
    reflection_orders: Counter
    centralizer_order: int
    certificates: list = field(default_factory=list)

    @property
    def is_wc(self) -> bool:
        return bool(self.certificates)


def _coords(vecs, F):
    # coordinates w.r.t. an echelon basis: use the pivot (free) columns
    pivots = []
    for k, v in enumerate(vecs):
        cols = [j for j in range(len(v)) if v[j] == F.one
                and all(vecs[t][j] == F.zero for t in range(len(vecs)) if t != k)]
        if not cols:
            raise AssertionError("basis not in echelon form")
        pivots.append(cols[0])
    return pivots


def little_weyl(candidate: WeylCandidate, m: int, F: FieldConfig | None = None) -> LittleWeylGroup:
    """W-bar = image of the centralizer of w (in W, or in W(D4) for the
    twisted type) acting on c_w, with the promotion certificates to W_c."""
    F = F or FieldConfig.cyclotomic(m)
    vecs = _eigen_basis(candidate.base.torus, m, F)
    if not vecs:
        raise ValueError("zero rank")
    piv = _coords(vecs, F)
    r = len(vecs)
    mats = {}
    for g in candidate.centralizer:
        A = g.matrix
        n = len(A)
        images = [[sum((F(A[i][j]) * v[j] for j in range(n)), F.zero) for i in range(n)] for v in vecs]
        # image_k = sum_l M[l][k] vecs_l ; read coordinates at pivots
        Mg = tuple(tuple(images[k][piv[l]] for k in range(r)) for l in range(r))
        for k in range(r):
            back = [sum((Mg[l][k] * vecs[l][i] for l in range(r)), F.zero) for i in range(n)]
            if back != images[k]:
                raise AssertionError("centralizer does not preserve c")
        mats[Mg] = True
    matrices = list(mats)
    name, degrees, refl = identify_reflection_group(matrices, F)
    lw = LittleWeylGroup(matrices, F, r, len(matrices), name, degrees, refl, len(candidate.centralizer))
    if candidate.element.order == m:
        try:
            if saturation_criterion(torus_decomposition(candidate.base.torus, m)):
                lw.certificates.append("saturation")
        except ValueError:
            pass
    if r * euler_phi(m) == candidate.base.rs.rank:
        lw.certificates.append("maximal-rank")
    return lw


def phi2_trivial_on_c(candidate: WeylCandidate, m: int) -> bool:
    """Reflections in the roots orthogonal to Phi_1 fix c pointwise."""
    w = candidate.element
    rs = w.rs
    F = FieldConfig.cyclotomic(m)
    vecs = _eigen_basis(w.matrix, m, F)
    for b in candidate.phi2:
        A = reflection(rs, b).matrix
        for v in vecs:
            img = [sum((F(A[i][j]) * v[j] for j in range(len(v))), F.zero) for i in range(len(v))]
            if img != list(v):
                return False
    return True


# ---------------------------------------------------------------------------
# N-regularity and KW-section evidence (Kac model)


_DEGREES = {
    "A": lambda n: tuple(range(2, n + 2)),
    "B": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "C": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "D": lambda n: tuple(sorted(set(range(2, 2 * n - 1, 2)) | {n})) if n != 4 else (2, 4, 4, 6),
    "G": lambda n: (2, 6),
    "F": lambda n: (2, 6, 8, 12),
}
_COXETER = {"A": lambda n: n + 1, "B": lambda n: 2 * n, "C": lambda n: 2 * n,
            "D": lambda n: 2 * n - 2, "G": lambda n: 6, "F": lambda n: 12}


def _units(theta: Automorphism, m: int) -> list[tuple]:
    """Cycles of root vectors owning a zeta-eigenvector: (cycle, phase)."""
    target = Fraction(1, m)
    out = []
    for cyc in theta.cycles:
        L = len(cyc)
        Phi = theta.cycle_phase(cyc)
        if any(_frac_mod1((Phi + j) / L) == target for j in range(L)):
            out.append(cyc)
    return out


def _components(rs: RootSystem, S: list) -> list[list]:
    comps, seen = [], set()
    for a in S:
        if a in seen:
            continue
        comp, stack = [], [a]
        seen.add(a)
        while stack:
            x = stack.pop()
            comp.append(x)
            for b in S:
                if b not in seen and rs.inner(x, b) != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def degree_rule(theta: Automorphism, S: list, m: int) -> tuple | None:
    """Degrees of the little Weyl group of an N-regular theta|_l, l generated
    by the simple system S (a union of theta-cycles).

    A component orbit of length k contributes each degree d of the component
    with m | d k.  A triality-twisted D4 component contributes 2 and 6 when
    m divides them and one 4 when zeta^4 has order 3.  Returns None for
    other outer actions.
    """
    rs = theta.rs
    idx = {rs.roots[k]: k for k in range(len(rs.roots))}
    comps = _components(rs, S)
    where = {a: i for i, c in enumerate(comps) for a in c}
    done, out = set(), []
    for i, comp in enumerate(comps):
        if i in done:
            continue
        orbit, j = [i], where[rs.roots[theta.perm[idx[comp[0]]]]]
        while j != i:
            orbit.append(j)
            j = where[rs.roots[theta.perm[idx[comps[j][0]]]]]
        done.update(orbit)
        k = len(orbit)
        # theta^k on the component's simple roots
        moved = False
        for a in comp:
            b = idx[a]
            for _ in range(k):
                b = theta.perm[b]
            moved |= rs.roots[b] != a
        (series, n, _), = component_types(rs, comp)
        degs = _DEGREES[series](n)
        if not moved:
            out += [d for d in degs if (d * k) % m == 0]
        elif series == "D" and n == 4 and k == 1:
            out += [d for d in (2, 6) if d % m == 0]
            if m // gcd(m, 4) == 3:
                out.append(4)
        else:
            return None
    return tuple(sorted(out))


def _is_pi_system(rs: RootSystem, S) -> bool:
    for a, b in combinations(S, 2):
        d = tuple(x - y for x, y in zip(a, b))
        if rs.is_root(d) or not any(d):
            return False
    return rank_over_field([list(a) for a in S], Q) == len(S)


@dataclass
class KWEvidence:
    """Reduction data for one positive-rank row."""

    reduction: str
    theta_on_L: str
    subsystem: str
    simple_roots: list
    n_regular: bool
    rank_in_l: int
    rank_generic_in_l: int
    degrees: tuple
    degrees_match: bool
    criterion: bool
    witness: AlgElement | None = field(default=None, repr=False)

    @property
    def verified(self) -> bool:
        return self.n_regular and self.degrees_match and self.rank_in_l == self.rank_generic_in_l


_L_NAMES = {"B": lambda n: f"Spin({2 * n + 1})", "C": lambda n: f"Sp({2 * n})",
            "A": lambda n: f"SL({n + 1})", "D": lambda n: f"Spin({2 * n})",
            "G": lambda n: "G2", "F": lambda n: "F4"}


def _l_name(factors) -> str:
    parts = Counter()
    for series, n, tilde in factors:
        name = _L_NAMES[series](n)
        parts[("short " if tilde else "") + name] += 1
    return "×".join(k + (f"^{v}" if v > 1 else "") for k, v in sorted(parts.items()))


def _theta_on_l(theta: Automorphism, S: list, m: int) -> str:
    rs = theta.rs
    idx = {rs.roots[k]: k for k in range(len(rs.roots))}
    comps = _components(rs, S)
    factors = component_types(rs, S)
    if len(comps) == 1:
        (series, n, _), = factors
        h = _COXETER[series](n)
        if m == h:
            return "Coxeter"
        if series in "BC" and 2 * m == h and n % 2:
            return f"positive {n}-cycle"
        return f"order {m}"
    if len(comps) == 3 and all(len(c) == 1 for c in comps):
        cyc = [idx[c[0]] for c in comps]
        if theta.perm[cyc[0]] in cyc and theta.perm[cyc[0]] != cyc[0]:
            # tau when theta^3 acts non-trivially on a factor
            phase = _frac_mod1(sum(theta.phase[k] for k in cyc))
            return "τ" if phase != 0 else "τ²"
    return f"order {m}"


def _subalgebra_grading(gr: Grading, S_roots: list, Sigma: frozenset) -> list[list]:
    """g(i) cap l' for l' generated by Sigma (cycles inside Sigma plus the
    coroots of S)."""
    theta, F, m = gr.theta, gr.F, gr.m
    rs, alg = theta.rs, theta.alg
    r = rs.rank
    N = F.conductor
    spaces = [[] for _ in range(m)]
    for cyc in theta.cycles:
        if rs.roots[cyc[0]] not in Sigma:
            continue
        L = len(cyc)
        Phi = theta.cycle_phase(cyc)
        for j in range(L):
            phi = _frac_mod1((Phi + j) / L)
            spaces[int(phi * m)].append(_cycle_eigenvector(theta, cyc, phi, F))
    B = [rs.coroot(a) for a in S_roots]  # columns spanning t cap l'
    A = theta.torus
    for i in range(m):
        z = F.zeta_pow(i * (N // m))
        # (A - z) B c = 0
        AB = [[sum(A[a][t] * B[k][t] for t in range(r)) for k in range(len(B))] for a in range(r)]
        Mx = [[F(AB[a][k]) - z * F(B[k][a]) for k in range(len(B))] for a in range(r)]
        for c in kernel_over_field(Mx, F, ncols=len(B)):
            v = {a: sum((c[k] * F(B[k][a]) for k in range(len(B))), F.zero) for a in range(r)}
            spaces[i].append(AlgElement(alg, {a: x for a, x in v.items() if x}, F))
    return spaces


def _unit_vector(theta: Automorphism, cyc, m: int, F: FieldConfig) -> AlgElement:
    L = len(cyc)
    Phi = theta.cycle_phase(cyc)
    for j in range(L):
        phi = _frac_mod1((Phi + j) / L)
        if phi == Fraction(1, m):
            return _cycle_eigenvector(theta, cyc, phi, F)
    raise ValueError("cycle has no zeta-eigenvector")


def _pi_systems(theta: Automorphism, m: int, size: int):
    """Unions of g(1)-cycles with ``size`` roots forming a pi-system."""
    rs = theta.rs
    units = _units(theta, m)

    def rec(start, chosen, roots):
        if len(roots) == size:
            yield list(chosen), list(roots)
            return
        for i in range(start, len(units)):
            new = [rs.roots[k] for k in units[i]]
            if len(roots) + len(new) > size:
                continue
            cand = roots + new
            if _is_pi_system(rs, cand):
                chosen.append(units[i])
                yield from rec(i + 1, chosen, cand)
                chosen.pop()

    yield from rec(0, [], [])


def _n_regular_witness(gr: Grading, units, S_roots, Sigma) -> tuple[bool, AlgElement]:
    theta, F = gr.theta, gr.F
    alg, rs = theta.alg, theta.rs
    x = None
    for cyc in units:
        v = _unit_vector(theta, cyc, gr.m, F)
        x = v if x is None else x + v
    basis = [alg.e(b, F) for b in sorted(Sigma)]
    basis += [AlgElement(alg, {k: F(v) for k, v in alg.h_of(rs.coroot(a)).items()}, F) for a in S_roots]
    ok = x.is_nilpotent() and centralizer_dim(x, basis) == len(S_roots)
    return ok, x


def n_regular_check(gr: Grading) -> tuple[bool, AlgElement | None]:
    """Search g(1) for x = sum of simple root vectors (orbit eigenvectors in
    the twisted case) of some positive system; such x is regular nilpotent."""
    theta = gr.theta
    rs = theta.rs
    full = frozenset(rs.roots)
    for units, S in _pi_systems(theta, gr.m, rs.rank):
        if reflection_closure(rs, S) != full:
            continue
        ok, x = _n_regular_witness(gr, units, S, full)
        if ok:
            return True, x
    return False, None


def kw_evidence(gr: Grading, rank: int, wc: LittleWeylGroup, phi1_type: str = "",
                seed: int = 0) -> KWEvidence:
    """Find a theta-stable l with theta|_l N-regular, rank(theta|_l) = rank
    (so a Cartan subspace of l(1) is one of g(1)) and degree-rule little
    Weyl group equal to ``wc``.

    Candidates: subsystems of the type of Phi_1 first, then l = g, then
    the remaining subsystems by rank.  Returns the first that passes every check.

    Raises
    ------
    RuntimeError
        If no candidate passes.
    """
    theta, m = gr.theta, gr.m
    rs = theta.rs
    full = frozenset(rs.roots)

    def attempts():
        proper = []
        for size in range(1, rs.rank + 1):
            for units, S in _pi_systems(theta, m, size):
                Sigma = reflection_closure(rs, S)
                if Sigma == full or additive_closure(rs, Sigma) != Sigma:
                    continue
                label = subsystem_type(rs, Sigma)
                proper.append((label != phi1_type, size, label, units, S, Sigma))
        proper.sort(key=lambda t: t[:3])
        for *_, units, S, Sigma in (t for t in proper if not t[0]):
            yield units, S, Sigma
        for units, S in _pi_systems(theta, m, rs.rank):
            Sigma = reflection_closure(rs, S)
            if Sigma == full:
                yield units, S, Sigma
        for *_, units, S, Sigma in (t for t in proper if t[0]):
            yield units, S, Sigma

    for units, S, Sigma in attempts():
        degs = degree_rule(theta, S, m)
        if degs is None or len(degs) != rank or degs != wc.degrees or prod(degs) != wc.order:
            continue
        ok, x = _n_regular_witness(gr, units, S, Sigma)
        if not ok:
            continue
        sub = _subalgebra_grading(gr, S, Sigma)
        sub_gr = Grading(theta, m, gr.F, sub)
        rk = rank_via_generic_orbit(sub_gr, seed=seed, find_semisimple=False).rank
        if rk != rank:
            continue
        factors = component_types(rs, Sigma)
        if Sigma == full:
            red, tl = "N-reg.", ""
        else:
            red, tl = _l_name(factors), _theta_on_l(theta, S, m)
        return KWEvidence(red, tl, format_type(factors), sorted(S), True, len(degs), rk, degs,
                          True, "saturation" in wc.certificates, x)
    raise RuntimeError("no reduction subalgebra found")


# ---------------------------------------------------------------------------
# per-diagram analysis and classification


@dataclass
class DiagramReport:
    """Everything computed for one Kac diagram."""

    type_key: str
    diagram: KacDiagram
    order: int
    F: FieldConfig = field(repr=False)
    dims: tuple = ()
    g0_type: tuple = ()
    generic: RankCertificate | None = field(default=None, repr=False)
    weyl_rank: int = 0
    matches: list = field(default_factory=list, repr=False)
    carter: str = ""
    cartan: CartanSubspace | None = field(default=None, repr=False)
    little_weyl: LittleWeylGroup | None = field(default=None, repr=False)
    kw: KWEvidence | None = field(default=None, repr=False)
    notes: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return self.generic.rank if self.generic else 0


def _field_for(theta: Automorphism, m: int, char: int) -> tuple[FieldConfig, str]:
    N = lcm(m, theta.conductor)
    if char:
        if (char - 1) % N == 0:
            return FieldConfig.prime(N, char), ""
        return FieldConfig.cyclotomic(N), f"p={char} lacks primitive {N}-th roots; cyclotomic mode"
    return FieldConfig.cyclotomic(N), ""


def analyze_diagram(type_key: str, diagram: str | KacDiagram, char: int = 0, seed: int = 0,
                    full: bool = True) -> DiagramReport:
    """Grading, both ranks, matched Weyl class, little Weyl group and KW
    evidence for one primitive Kac diagram.

    Raises
    ------
    ValueError
        Unknown type, unparsable or non-primitive diagram.
    RankDisagreement
        If the two rank computations differ.
    """
    if type_key not in TYPES:
        raise ValueError(f"unknown type {type_key!r}")
    base_type, twist = TYPES[type_key]
    aff = affine_diagram(base_type, twist)
    d = diagram if isinstance(diagram, KacDiagram) else KacDiagram.parse(diagram, aff)
    if not d.primitive:
        raise ValueError(f"diagram {d} is not primitive; its primitive part is {d.primitive_part()}")
    m = d.order
    alg = lie_algebra(base_type)
    theta = kac_automorphism(d, alg)
    F, note = _field_for(theta, m, char)
    gr = grading(theta, F, m)
    rep = DiagramReport(type_key, d, m, F, gr.dims, fixed_algebra_type(theta))
    if note:
        rep.notes.append(note)
    rep.generic = rank_via_generic_orbit(gr, seed=seed, find_semisimple=full)
    rep.weyl_rank, rep.matches = weyl_rank(type_key, str(d), m)
    if rep.weyl_rank != rep.generic.rank:
        raise RankDisagreement(f"{type_key} {d}: generic orbit gives {rep.generic.rank}, "
                               f"Weyl realization gives {rep.weyl_rank}")
    if rep.rank == 0:
        return rep
    labels = sorted({r.candidate.label for r in rep.matches})
    if len(labels) != 1:
        raise AssertionError(f"{type_key} {d}: ambiguous Weyl classes {labels}")
    rep.carter = labels[0]
    if not full:
        return rep
    real = rep.matches[0]
    cand = real.candidate
    cF = FieldConfig.prime(m, F.characteristic) if F.characteristic else FieldConfig.cyclotomic(m)
    rep.cartan = cartan_subspace(real.theta, m, cF)
    rep.little_weyl = little_weyl(cand, m, cF)
    rep.kw = kw_evidence(gr, rep.rank, rep.little_weyl, cand.phi1_type, seed=seed)
    if rep.kw.degrees_match and prod(rep.kw.degrees) == rep.little_weyl.order:
        rep.little_weyl.certificates.append("kw-degrees")
    return rep


@dataclass
class ClassificationRow:
    """One row of a positive-rank table."""

    type: str
    kac: str
    order: int
    carter: str
    rank: int
    little_weyl: dict
    kw: dict
    dims: tuple = ()
    g0_type: str = ""
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"type": self.type, "kac": self.kac, "order": self.order, "carter": self.carter,
                "rank": self.rank, "little_weyl": dict(self.little_weyl), "kw": dict(self.kw)}


@dataclass
class ClassificationResult:
    rows: list
    zero_rank: list
    reports: dict = field(default_factory=dict, repr=False)


def _row(rep: DiagramReport) -> ClassificationRow:
    lw, kw = rep.little_weyl, rep.kw
    g0 = rep.g0_type[0] + (f"+T{rep.g0_type[1]}" if rep.g0_type[1] else "")
    return ClassificationRow(
        rep.type_key, str(rep.diagram), rep.order, rep.carter, rep.rank,
        {"name": lw.name, "order": lw.order, "degrees": list(lw.degrees)},
        {"reduction": kw.reduction, "theta_on_L": kw.theta_on_L, "n_regular": kw.n_regular,
         "criterion": kw.criterion},
        rep.dims, g0, list(rep.notes))


@lru_cache(maxsize=None)
def classify(type_key: str, char: int = 0, seed: int = 0, orders: tuple | None = None) -> ClassificationResult:
    """All primitive 0/1 Kac diagrams of order > 1, split into the
    positive-rank rows (in display order) and the zero-rank diagrams.

    ``orders`` restricts the diagrams considered (used by the prime-field
    comparison).
    """
    base_type, twist = TYPES[type_key]
    aff = affine_diagram(base_type, twist)
    reports, rows, zero = {}, [], []
    for m in _kac_orders(type_key):
        if orders is not None and m not in orders:
            continue
        for d in enumerate_diagrams(aff, m, zero_one_only=True):
            rep = analyze_diagram(type_key, d, char=char, seed=seed)
            reports[str(d)] = rep
            (rows if rep.rank else zero).append(rep)
    order = ROW_ORDER[type_key]
    rows.sort(key=lambda r: order.index(str(r.diagram)) if str(r.diagram) in order
              else (len(order), -r.order))
    return ClassificationResult([_row(r) for r in rows], zero, reports)
