"""Kac diagrams and the finite-order automorphisms they describe.

Every automorphism built in this package is *monomial*: it permutes the
root spaces, scaling each root vector by a root of unity, and acts on the
Cartan subalgebra through an integer matrix.  It is stored as

* ``perm[k]``  - index of the image of ``rs.roots[k]``,
* ``phase[k]`` - a Fraction q in [0, 1) with theta(e_k) = exp(2 pi i q) e_perm[k],
* ``torus``    - integer matrix on the coroot basis h_1, ..., h_r.

Orders and eigenvalue multiplicities are then arithmetic in Q/Z; exact
eigenvectors are produced over any :class:`FieldConfig` whose root of unity
has order divisible by all phase denominators.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Sequence

from .chevalley import AlgElement, LieAlgebra
from .exactalg import (
    FieldConfig,
    cyclotomic_poly,
    divisors,
    identity_matrix,
    int_charpoly,
    int_poly_multiplicity,
    integer_kernel,
    kernel_over_field,
    mat_mul,
    smith_normal_form,
)
from .rootsystem import AffineDiagram, RootSystem, build, subsystem_type

__all__ = [
    "KacDiagram",
    "Automorphism",
    "Grading",
    "TorusModel",
    "enumerate_diagrams",
    "inner_kac_automorphism",
    "triality_gamma",
    "twisted_kac_automorphism",
    "kac_automorphism",
    "twisted_root_vectors",
    "grading",
    "fixed_algebra_type",
    "torus_decomposition",
    "saturation_criterion",
    "counting_check",
    "torus_points_of_order",
]


# ---------------------------------------------------------------------------
# Kac diagrams


@dataclass(frozen=True)
class KacDiagram:
    """Non-negative integer labels on the nodes of an affine diagram.

    The order of the automorphism is ``twist * sum(marks[i] * coeffs[i])``.
    """

    affine: AffineDiagram
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != len(self.affine.nodes):
            raise ValueError(
                f"{self.affine.key} diagrams have {len(self.affine.nodes)} nodes, "
                f"got {len(self.coeffs)}")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("Kac coefficients must be non-negative")
        if not any(self.coeffs):
            raise ValueError("Kac diagram with all coefficients zero")

    @property
    def order(self) -> int:
        return self.affine.order(self.coeffs)

    @property
    def primitive(self) -> bool:
        return reduce(gcd, self.coeffs) == 1

    def primitive_part(self) -> "KacDiagram":
        g = reduce(gcd, self.coeffs)
        return KacDiagram(self.affine, tuple(c // g for c in self.coeffs))

    def __str__(self) -> str:
        if all(c < 10 for c in self.coeffs):
            return "".join(str(c) for c in self.coeffs)
        return ",".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, text: str, affine: AffineDiagram) -> "KacDiagram":
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        try:
            coeffs = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"cannot parse Kac diagram {text!r}") from None
        return cls(affine, coeffs)

    def exponents(self) -> tuple:
        """lambda(alpha_j) for the simple roots of the underlying root system.

        For the triality twist the labels of beta_1, beta_2 are spread over
        the simple roots of the corresponding gamma-orbits.
        """
        aff = self.affine
        rs = build(aff.base_type)
        lam = [0] * rs.rank
        if aff.twist == 3:
            for node, orbit in enumerate(aff.node_roots):
                if orbit is not None:
                    for j in orbit:
                        lam[j] = self.coeffs[node]
            return tuple(lam)
        simple = {rs.simple_root(j): j for j in range(rs.rank)}
        for node, root in enumerate(aff.node_roots):
            if root in simple:
                lam[simple[root]] = self.coeffs[node]
        return tuple(lam)


def enumerate_diagrams(affine: AffineDiagram, m: int, zero_one_only: bool = False) -> list[KacDiagram]:
    """Primitive Kac diagrams of order ``m`` up to diagram automorphisms.

    Each class is represented by its lexicographically largest member; the
    result is sorted by descending coefficient string.
    """
    if m < 1:
        raise ValueError("order must be positive")
    if m % affine.twist:
        return []
    target = m // affine.twist
    marks = affine.marks
    n = len(marks)
    found = set()

    def rec(i, rest, acc):
        if i == n:
            if rest == 0:
                found.add(tuple(acc))
            return
        top = 1 if zero_one_only else rest // marks[i]
        for c in range(min(top, rest // marks[i]) + 1):
            acc.append(c)
            rec(i + 1, rest - c * marks[i], acc)
            acc.pop()

    rec(0, target, [])
    out = set()
    for c in found:
        if reduce(gcd, c) != 1:
            continue
        images = []
        for p in affine.symmetries:
            img = [0] * n
            for i in range(n):
                img[p[i]] = c[i]
            images.append(tuple(img))
        out.add(max(images))
    return [KacDiagram(affine, c) for c in sorted(out, reverse=True)]


# ---------------------------------------------------------------------------
# monomial automorphisms


def _frac_mod1(q) -> Fraction:
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


def _mat_order(A) -> int:
    r = len(A)
    I = [list(row) for row in identity_matrix(r)]
    cur = [list(row) for row in A]
    k = 1
    while cur != I:
        cur = mat_mul(cur, A)
        k += 1
        if k > 1000:
            raise ValueError("torus matrix does not have finite order")
    return k


class Automorphism:
    """A monomial automorphism of a Chevalley Lie algebra.

    Parameters
    ----------
    alg : LieAlgebra
    perm : sequence of int
        Root permutation (indices into ``alg.rs.roots``).
    phase : sequence of Fraction
        Phase of the scalar attached to each root vector.
    torus : integer matrix
        Action on the Cartan subalgebra in the coroot basis (columns are
        images of ``h_j``).
    kind : str
        Free-form provenance tag (``"inner"``, ``"triality"``, ``"weyl"``).
    """

    def __init__(self, alg: LieAlgebra, perm, phase, torus, kind: str = "inner", data=None):
        self.alg = alg
        self.rs = alg.rs
        self.perm = tuple(perm)
        self.phase = tuple(_frac_mod1(q) for q in phase)
        self.torus = tuple(tuple(int(v) for v in row) for row in torus)
        self.kind = kind
        self.data = dict(data or {})
        if len(self.perm) != len(self.rs.roots) or len(self.phase) != len(self.perm):
            raise ValueError("perm/phase length mismatch")

    def __repr__(self):
        return f"Automorphism({self.kind}, {self.rs.cartan_type}, order {self.order})"

    # -- group structure ---------------------------------------------------
    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``."""
        if other.alg is not self.alg:
            raise ValueError("automorphisms of different algebras")
        perm = tuple(self.perm[other.perm[k]] for k in range(len(self.perm)))
        phase = tuple(other.phase[k] + self.phase[other.perm[k]] for k in range(len(self.perm)))
        torus = mat_mul(self.torus, other.torus)
        return Automorphism(self.alg, perm, phase, torus, kind=f"{self.kind}*{other.kind}")

    def __pow__(self, k: int) -> "Automorphism":
        if k < 0:
            raise ValueError("negative powers are not supported")
        r = self.rs.rank
        out = Automorphism(self.alg, range(len(self.perm)), [0] * len(self.perm),
                           identity_matrix(r), kind=self.kind)
        base = self
        while k:
            if k & 1:
                out = base.compose(out)
            base = base.compose(base)
            k >>= 1
        out.kind = self.kind
        return out

    def is_identity(self) -> bool:
        r = self.rs.rank
        return (all(i == j for i, j in enumerate(self.perm)) and not any(self.phase)
                and [list(x) for x in self.torus] == identity_matrix(r))

    @cached_property
    def cycles(self) -> list[tuple]:
        seen = set()
        out = []
        for k in range(len(self.perm)):
            if k in seen:
                continue
            cyc = [k]
            seen.add(k)
            j = self.perm[k]
            while j != k:
                cyc.append(j)
                seen.add(j)
                j = self.perm[j]
            out.append(tuple(cyc))
        return out

    def cycle_phase(self, cyc: Sequence[int]) -> Fraction:
        return _frac_mod1(sum(self.phase[k] for k in cyc))

    @cached_property
    def order(self) -> int:
        base = _mat_order(self.torus)
        for cyc in self.cycles:
            base = lcm(base, len(cyc))
        extra = 1
        for cyc in self.cycles:
            q = _frac_mod1(self.cycle_phase(cyc) * (base // len(cyc)))
            extra = lcm(extra, q.denominator)
        return base * extra

    @cached_property
    def conductor(self) -> int:
        """Smallest N such that eigenvectors are defined over Q(zeta_N)."""
        N = self.order
        for q in self.phase:
            N = lcm(N, q.denominator)
        return N

    def field(self, characteristic: int = 0) -> FieldConfig:
        if characteristic:
            return FieldConfig.prime(self.conductor, characteristic)
        return FieldConfig.cyclotomic(self.conductor)

    # -- spectra -----------------------------------------------------------------
    def torus_phases(self) -> Counter:
        cp = int_charpoly(self.torus)
        out: Counter = Counter()
        for d in divisors(_mat_order(self.torus)):
            mult = int_poly_multiplicity(cp, cyclotomic_poly(d))
            for j in range(d):
                if gcd(j, d) == 1:
                    out[Fraction(j, d)] += mult
        return out

    def eigenphases(self, roots: Sequence[int] | None = None, torus: bool = True) -> Counter:
        """Multiset of eigenvalue phases on g (or on the span of ``roots``,
        which must be a union of cycles, plus optionally t)."""
        out: Counter = Counter()
        keep = None if roots is None else set(roots)
        for cyc in self.cycles:
            if keep is not None and cyc[0] not in keep:
                continue
            L = len(cyc)
            Phi = self.cycle_phase(cyc)
            for j in range(L):
                out[_frac_mod1((Phi + j) / L)] += 1
        if torus:
            out.update(self.torus_phases())
        return out

    def dims(self, m: int | None = None) -> tuple:
        """``(dim g(0), ..., dim g(m-1))`` with g(i) the exp(2 pi i i/m)-eigenspace."""
        m = m or self.order
        ph = self.eigenphases()
        out = [0] * m
        for q, c in ph.items():
            k = q * m
            if k.denominator != 1:
                raise ValueError(f"eigenvalue phase {q} is not a multiple of 1/{m}")
            out[int(k)] += c
        return tuple(out)

    # -- exact action --------------------------------------------------------------
    def scalar(self, q, F: FieldConfig):
        q = _frac_mod1(q)
        k = q * F.conductor
        if k.denominator != 1:
            raise ValueError(f"field {F} cannot represent phase {q}")
        return F.zeta_pow(int(k))

    def apply(self, x: AlgElement) -> AlgElement:
        F, r = x.F, self.rs.rank
        out: dict = {}

        def add(k, v):
            nv = out.get(k, F.zero) + v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)

        for i, c in x.c.items():
            if i < r:
                for row in range(r):
                    a = self.torus[row][i]
                    if a:
                        add(row, c * a)
            else:
                k = i - r
                add(r + self.perm[k], c * self.scalar(self.phase[k], F))
        return AlgElement(self.alg, out, F)

    def matrix(self, F: FieldConfig | None = None) -> list[dict]:
        F = F or self.field()
        return [self.apply(self.alg.basis_element(j, F)).c for j in range(self.alg.dim)]

    def automorphism_violations(self, F: FieldConfig | None = None) -> list:
        """Basis pairs (i, j) with theta[b_i, b_j] != [theta b_i, theta b_j]."""
        F = F or self.field()
        alg = self.alg
        imgs = [self.apply(alg.basis_element(i, F)) for i in range(alg.dim)]
        bad = []
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = self.apply(alg.element(alg.table[i][j], F))
                rhs = imgs[i].bracket(imgs[j])
                if lhs != rhs:
                    bad.append((i, j))
        return bad

    def grading(self, F: FieldConfig | None = None, m: int | None = None) -> "Grading":
        return grading(self, F, m)


# ---------------------------------------------------------------------------
# gradings


@dataclass
class Grading:
    """Eigenspace decomposition ``g = sum_i g(i)`` of a finite-order automorphism."""

    theta: Automorphism
    m: int
    F: FieldConfig
    spaces: list = field(repr=False)

    @property
    def dims(self) -> tuple:
        return tuple(len(s) for s in self.spaces)

    def zeta(self, i: int = 1):
        return self.F.zeta_pow(i * (self.F.conductor // self.m))

    def compatibility_violations(self, pairs: int | None = None, seed: int = 0) -> list:
        """Pairs (i, a, j, b) with [g(i)_a, g(j)_b] not in g(i+j).

        Exhaustive over basis pairs unless ``pairs`` is given.
        """
        th = self.theta
        flat = [(i, a, x) for i, sp in enumerate(self.spaces) for a, x in enumerate(sp)]
        if pairs is None:
            todo = [(s, t) for s in range(len(flat)) for t in range(s, len(flat))]
        else:
            import random
            rng = random.Random(seed)
            todo = [(rng.randrange(len(flat)), rng.randrange(len(flat))) for _ in range(pairs)]
        bad = []
        for s, t in todo:
            i, a, x = flat[s]
            j, b, y = flat[t]
            z = x.bracket(y)
            if z.is_zero():
                continue
            if th.apply(z) != self.zeta(i + j) * z:
                bad.append((i, a, j, b))
        return bad


def _cycle_eigenvector(th: Automorphism, cyc, phi: Fraction, F: FieldConfig) -> AlgElement:
    r = th.rs.rank
    coeffs = {}
    acc = Fraction(0)
    for j, k in enumerate(cyc):
        coeffs[r + k] = th.scalar(acc - j * phi, F)
        acc += th.phase[k]
    return AlgElement(th.alg, coeffs, F)


def grading(theta: Automorphism, F: FieldConfig | None = None, m: int | None = None) -> Grading:
    """Exact bases of the eigenspaces g(i), i in Z/m.

    Raises
    ------
    ValueError
        If theta^m is not the identity, or F lacks the needed roots of unity.
    """
    m = m or theta.order
    if m % theta.order:
        raise ValueError(f"automorphism of order {theta.order} is not of order dividing {m}")
    F = F or FieldConfig.cyclotomic(lcm(m, theta.conductor))
    N = F.conductor
    if N % lcm(m, theta.conductor):
        raise ValueError(f"field {F} has no primitive {lcm(m, theta.conductor)}-th root of unity")
    alg, r = theta.alg, theta.rs.rank
    spaces = [[] for _ in range(m)]
    for cyc in theta.cycles:
        L = len(cyc)
        Phi = theta.cycle_phase(cyc)
        for j in range(L):
            phi = _frac_mod1((Phi + j) / L)
            spaces[int(phi * m)].append(_cycle_eigenvector(theta, cyc, phi, F))
    A = theta.torus
    for i in range(m):
        z = F.zeta_pow(i * (N // m))
        M = [[F(A[a][b]) - (z if a == b else F.zero) for b in range(r)] for a in range(r)]
        for v in kernel_over_field(M, F, ncols=r):
            spaces[i].append(AlgElement(alg, {k: c for k, c in enumerate(v) if c}, F))
    total = sum(len(s) for s in spaces)
    if total != alg.dim:
        raise AssertionError(f"eigenspaces have total dimension {total} != {alg.dim}")
    return Grading(theta, m, F, spaces)


# ---------------------------------------------------------------------------
# constructions


def _exponent_phases(rs: RootSystem, lam: Sequence, m: int) -> list[Fraction]:
    return [Fraction(sum(c * l for c, l in zip(b, lam)), m) for b in rs.roots]


def inner_kac_automorphism(d: KacDiagram, alg: LieAlgebra) -> Automorphism:
    """``Ad t`` with alpha_i(t) = zeta^{n_i}: e_beta -> zeta^{lambda(beta)} e_beta."""
    aff = d.affine
    if aff.twist != 1:
        raise ValueError("inner_kac_automorphism needs an untwisted diagram")
    if alg.rs.cartan_type != aff.base_type:
        raise ValueError(f"diagram of type {aff.base_type} on algebra {alg.rs.cartan_type}")
    rs = alg.rs
    m = d.order
    lam = d.exponents()
    th = Automorphism(alg, range(len(rs.roots)), _exponent_phases(rs, lam, m),
                      identity_matrix(rs.rank), kind="inner",
                      data={"diagram": str(d), "lambda": lam, "m": m})
    if th.order != m:
        raise AssertionError(f"{d}: realized order {th.order} != {m}")
    return th


_GAMMA = {0: 2, 2: 3, 3: 0, 1: 1}  # alpha_1 -> alpha_3 -> alpha_4 -> alpha_1


def triality_gamma(alg: LieAlgebra) -> Automorphism:
    """The order-3 graph automorphism of D4 with gamma(e_a) = e_{gamma(a)} on +-Delta.

    Signs on the remaining root vectors are forced by the bracket; the
    result is checked to be an automorphism.
    """
    rs = alg.rs
    if rs.cartan_type != "D4":
        raise ValueError("triality needs type D4")

    def groot(b):
        out = [0] * 4
        for j, c in enumerate(b):
            out[_GAMMA[j]] += c
        return tuple(out)

    sign: dict = {}
    for j in range(4):
        sign[rs.simple_root(j)] = 1
        sign[rs.neg(rs.simple_root(j))] = 1
    for b in sorted(rs.positive_roots, key=rs.height):
        if b in sign:
            continue
        for j in range(4):
            a = rs.simple_root(j)
            prev = tuple(x - y for x, y in zip(b, a))
            if rs.is_root(prev) and rs.is_positive(prev):
                break
        ga, gp = groot(a), groot(prev)
        sign[b] = sign[prev] * alg.N(ga, gp) // alg.N(a, prev)
        na, nprev = rs.neg(a), rs.neg(prev)
        sign[rs.neg(b)] = sign[nprev] * alg.N(groot(na), groot(nprev)) // alg.N(na, nprev)
    perm = [rs.index[groot(b)] for b in rs.roots]
    phase = [Fraction(0) if sign[b] == 1 else Fraction(1, 2) for b in rs.roots]
    torus = [[1 if _GAMMA[j] == i else 0 for j in range(4)] for i in range(4)]
    g = Automorphism(alg, perm, phase, torus, kind="triality")
    if g.order != 3:
        raise AssertionError(f"gamma has order {g.order}")
    bad = g.automorphism_violations(FieldConfig.cyclotomic(2))
    if bad:
        raise AssertionError(f"gamma is not an automorphism on {bad[:3]}")
    return g


def twisted_kac_automorphism(d: KacDiagram, alg: LieAlgebra) -> Automorphism:
    """``theta_mu = Ad t o gamma`` with beta_i(t) = zeta^{mu(beta_i)} for i = 1, 2."""
    aff = d.affine
    if aff.twist != 3:
        raise ValueError("twisted_kac_automorphism needs a D4^(3) diagram")
    m = d.order
    if m % 3:
        raise ValueError("twisted order must be a multiple of 3")
    rs = alg.rs
    gamma = _gamma_cached(alg)
    lam = d.exponents()
    ph = _exponent_phases(rs, lam, m)
    phase = [ph[rs.index[rs.roots[gamma.perm[k]]]] + gamma.phase[k] for k in range(len(rs.roots))]
    th = Automorphism(alg, gamma.perm, phase, gamma.torus, kind="triality",
                      data={"diagram": str(d), "lambda": lam, "m": m})
    if th.order != m:
        raise AssertionError(f"{d}: realized order {th.order} != {m}")
    return th


_GAMMA_CACHE: dict = {}


def _gamma_cached(alg: LieAlgebra) -> Automorphism:
    key = id(alg)
    if key not in _GAMMA_CACHE:
        _GAMMA_CACHE[key] = (alg, triality_gamma(alg))
    return _GAMMA_CACHE[key][1]


def kac_automorphism(d: KacDiagram, alg: LieAlgebra | None = None) -> Automorphism:
    """Dispatch on the twist of the diagram."""
    from .chevalley import lie_algebra

    alg = alg or lie_algebra(d.affine.base_type)
    if d.affine.twist == 3:
        return twisted_kac_automorphism(d, alg)
    return inner_kac_automorphism(d, alg)


def twisted_root_vectors(theta: Automorphism, F: FieldConfig) -> dict:
    """E_{+-beta_i} (i = 0, 1, 2) for a twisted Kac automorphism, over F.

    Returns a dict ``{(i, sign): AlgElement}``.  E_{beta_0} is assembled from
    e_{-abar}, abar = alpha_1 + alpha_2 + alpha_3, with sigma = zeta^{m/3}.
    """
    alg = theta.alg
    rs = alg.rs
    m = theta.order
    gamma = _gamma_cached(alg)
    N = F.conductor
    if N % m:
        raise ValueError("field too small")
    sigma = F.zeta_pow((m // 3) * (N // m))
    out = {}
    for s in (1, -1):
        out[(1, s)] = sum((alg.e(tuple(s * v for v in rs.simple_root(j)), F) for j in (2, 3)),
                          alg.e(tuple(s * v for v in rs.simple_root(0)), F))
        out[(2, s)] = alg.e(tuple(s * v for v in rs.simple_root(1)), F)
        abar = (1, 1, 1, 0)
        e = alg.e(tuple(-s * v for v in abar), F)
        g1 = gamma.apply(e)
        g2 = gamma.apply(g1)
        a, b = (sigma.inverse(), sigma) if s == 1 else (sigma, sigma.inverse())
        out[(0, s)] = e + a * g1 + b * g2
    return out


# ---------------------------------------------------------------------------
# fixed subalgebras


def _fold_d4(b) -> tuple:
    # restriction of a D4 root to the gamma-fixed torus, in G2 coordinates
    # (short simple root first)
    return (b[0] + b[2] + b[3], b[1])


def fixed_algebra_type(theta: Automorphism | Grading) -> tuple[str, int]:
    """Type of the semisimple part of g(0) and the dimension of its centre.

    Handles inner automorphisms (trivial root permutation) and the triality
    twist, where roots are read off on the gamma-fixed torus as G2 roots.
    """
    if isinstance(theta, Grading):
        theta = theta.theta
    rs = theta.rs
    r = rs.rank
    if all(i == j for i, j in enumerate(theta.perm)) and theta.torus == tuple(map(tuple, identity_matrix(r))):
        zero = [b for b, q in zip(rs.roots, theta.phase) if q == 0]
        label = subsystem_type(rs, zero)
        from .exactalg import rank_over_field
        ss_rank = rank_over_field([list(b) for b in zero], FieldConfig.cyclotomic(1)) if zero else 0
        return label, r - ss_rank
    if theta.kind.startswith("triality"):
        g2 = build("G2")
        zero = set()
        for cyc in theta.cycles:
            L = len(cyc)
            Phi = theta.cycle_phase(cyc)
            if any(_frac_mod1((Phi + j) / L) == 0 for j in range(L)):
                zero.add(_fold_d4(rs.roots[cyc[0]]))
        label = subsystem_type(g2, zero)
        fixed_t = sum(1 for q, c in theta.torus_phases().items() for _ in range(c) if q == 0)
        from .exactalg import rank_over_field
        ss_rank = rank_over_field([list(b) for b in zero], FieldConfig.cyclotomic(1)) if zero else 0
        return label, fixed_t - ss_rank
    raise NotImplementedError("fixed_algebra_type needs an inner or triality automorphism")


# ---------------------------------------------------------------------------
# torus decomposition and the saturation criterion


def _poly_at_matrix(coeffs: Sequence[int], A) -> list[list[int]]:
    r = len(A)
    out = [[0] * r for _ in range(r)]
    P = identity_matrix(r)
    for c in coeffs:
        if c:
            for i in range(r):
                for j in range(r):
                    out[i][j] += c * P[i][j]
        P = mat_mul(P, A)
    return out


@dataclass
class TorusModel:
    """Y(T) = Z^r with theta* and the sublattices Y(T_d) = ker p_d(theta*), d | m."""

    theta_star: tuple
    m: int
    lattices: dict

    @property
    def ranks(self) -> dict:
        return {d: len(b) for d, b in self.lattices.items()}


def torus_decomposition(theta_star, m: int) -> TorusModel:
    """Split Y(T) along the cyclotomic factors of the order of theta*.

    Raises
    ------
    ValueError
        If theta*^m is not the identity.
    """
    A = [list(row) for row in theta_star]
    r = len(A)
    if _poly_at_matrix([0] * m + [1], A) != identity_matrix(r):
        raise ValueError(f"theta* does not have order dividing {m}")
    lattices = {}
    for d in divisors(m):
        lattices[d] = integer_kernel(_poly_at_matrix(cyclotomic_poly(d), A), ncols=r)
    tm = TorusModel(tuple(map(tuple, A)), m, lattices)
    if sum(tm.ranks.values()) != r:
        raise AssertionError("torus pieces do not add up to the rank")
    return tm


def saturation_criterion(tm: TorusModel) -> bool:
    """m-torsion of the theta-fixed torus lies in {t^{-1} theta(t)}.

    With V' the rational span of im(theta* - 1), the quotient Y / (Y cap V')
    is free; a fixed cocharacter y gives an m-torsion point y/m, which lies
    in the image torus iff y maps to m * (quotient lattice).
    """
    A = [list(row) for row in tm.theta_star]
    r = len(A)
    M = [[A[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    fixed = tm.lattices[1]
    if not fixed:
        return True
    S, U, _ = smith_normal_form(M)
    k = sum(1 for i in range(r) if S[i][i] != 0)
    for y in fixed:
        for row in U[k:]:
            if sum(a * b for a, b in zip(row, y)) % tm.m:
                return False
    return True


# ---------------------------------------------------------------------------
# counting


def torus_points_of_order(r: int, m: int) -> int:
    """Number of elements of order exactly m in a rank-r torus (recursively)."""
    memo = {1: 1}

    def phi(n):
        if n not in memo:
            memo[n] = n ** r - sum(phi(d) for d in divisors(n) if d != n)
        return memo[n]

    return phi(m)


def counting_check(affine: AffineDiagram, m: int) -> tuple[int, int, bool]:
    """Sum of W-orbit sizes of the torus elements t_mu over primitive order-m
    diagrams, against the number of order-m points of T."""
    from .weyl import generate

    if affine.twist != 1:
        raise ValueError("counting_check is for untwisted diagrams")
    rs = build(affine.base_type)
    W = generate(rs)
    simple_idx = [rs.index[rs.simple_root(i)] for i in range(rs.rank)]
    lhs = 0
    for d in enumerate_diagrams(affine, m):
        lam = d.exponents()
        val = [sum(c * l for c, l in zip(b, lam)) % m for b in rs.roots]
        target = [val[i] for i in simple_idx]
        stab = sum(1 for p in W.perms if all(val[p[i]] == t for i, t in zip(simple_idx, target)))
        lhs += len(W) // stab
    rhs = torus_points_of_order(rs.rank, m)
    return lhs, rhs, lhs == rhs
