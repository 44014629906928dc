"""Weyl groups as permutation groups on roots.

An element is stored as a tuple ``p`` of root indices with ``w(roots[i]) =
roots[p[i]]``; composition ``(p * q)[i] = p[q[i]]``.  The integer matrix on
the coroot lattice Y(T) (basis alpha_i^vee) is derived on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .exactalg import cyclotomic_poly, int_charpoly, int_poly_multiplicity, rank_over_field, FieldConfig
from .rootsystem import RootSystem, build, reflection_closure, subsystem_type

__all__ = [
    "WeylGroup",
    "WeylElement",
    "CarterClass",
    "generate",
    "conjugacy_classes",
    "char_poly",
    "carter_label",
    "centralizer",
    "orthogonal_subsystem",
    "eigenvalue_multiplicity",
    "admissible_decomposition",
    "coxeter_element",
    "reflection",
    "identity",
]


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element of ``rs`` as a permutation of ``rs.roots``."""

    rs: RootSystem = field(repr=False)
    perm: tuple

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        p = self.perm
        return WeylElement(self.rs, tuple(p[i] for i in other.perm))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(self.rs, tuple(inv))

    def __call__(self, root) -> tuple:
        rs = self.rs
        return rs.roots[self.perm[rs.index[tuple(root)]]]

    @cached_property
    def root_matrix(self) -> tuple:
        """Matrix on simple-root coordinates (column j = w(alpha_j))."""
        r = self.rs.rank
        cols = [self(self.rs.simple_root(j)) for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    @cached_property
    def matrix(self) -> tuple:
        """Matrix on Y(T) in the alpha^vee basis (column j = w(alpha_j)^vee)."""
        rs = self.rs
        r = rs.rank
        cols = [rs.coroot(self(rs.simple_root(j))) for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    @cached_property
    def order(self) -> int:
        k, p = 1, self.perm
        cur = p
        ident = tuple(range(len(p)))
        while cur != ident:
            cur = tuple(p[i] for i in cur)
            k += 1
        return k

    @cached_property
    def length(self) -> int:
        n = self.rs.n_pos
        return sum(1 for i in range(n) if self.perm[i] >= n)

    @cached_property
    def charpoly(self) -> tuple:
        return int_charpoly(self.matrix)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))

    def __pow__(self, k: int) -> "WeylElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = WeylElement(self.rs, tuple(range(len(self.perm))))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def reflection(rs: RootSystem, a) -> WeylElement:
    return WeylElement(rs, tuple(rs.index[rs.reflect(a, b)] for b in rs.roots))


def coxeter_element(rs: RootSystem, simple: Sequence) -> WeylElement:
    """Product of the reflections in ``simple`` (left to right)."""
    w = identity(rs)
    for a in simple:
        w = w * reflection(rs, a)
    return w


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, tuple(range(len(rs.roots))))


class WeylGroup:
    """Finite group generated by reflections in ``generators`` (roots of rs).

    Parameters
    ----------
    rs : RootSystem
    generator_roots : sequence of roots, optional
        Defaults to the simple roots; pass e.g. a basis of the long roots to
        obtain W(D4) inside W(F4).
    """

    def __init__(self, rs: RootSystem, generator_roots: Sequence | None = None, name: str = ""):
        self.rs = rs
        if generator_roots is None:
            generator_roots = [rs.simple_root(i) for i in range(rs.rank)]
        self.generator_roots = [tuple(a) for a in generator_roots]
        self.gens = [reflection(rs, a).perm for a in self.generator_roots]
        self.name = name or f"W({subsystem_type(rs, self.generator_roots)})"
        ident = tuple(range(len(rs.roots)))
        seen = {ident}
        order = [ident]
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in self.gens:
                    q = tuple(g[i] for i in p)
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        new.append(q)
            frontier = new
        self.perms = order
        self._set = seen

    def __len__(self) -> int:
        return len(self.perms)

    def __contains__(self, w) -> bool:
        p = w.perm if isinstance(w, WeylElement) else w
        return p in self._set

    def elements(self) -> list[WeylElement]:
        return [WeylElement(self.rs, p) for p in self.perms]

    def centralizer(self, w: WeylElement) -> list[WeylElement]:
        wp = w.perm
        out = []
        for p in self.perms:
            if all(p[wp[i]] == wp[p[i]] for i in range(len(p))):
                out.append(WeylElement(self.rs, p))
        return out

    @cached_property
    def classes(self) -> list["CarterClass"]:
        return conjugacy_classes(self)

    def class_of(self, w: WeylElement) -> "CarterClass":
        idx = self._class_index[w.perm]
        return self.classes[idx]

    @cached_property
    def _class_index(self) -> dict:
        out = {}
        for k, c in enumerate(self.classes):
            for p in c.members:
                out[p] = k
        return out

    def __repr__(self):
        return f"WeylGroup({self.name}, order {len(self)})"


def generate(rs: RootSystem) -> WeylGroup:
    """The Weyl group of ``rs``."""
    return _weyl_cached(rs.cartan_type)


@lru_cache(maxsize=None)
def _weyl_cached(cartan_type: str) -> WeylGroup:
    return WeylGroup(build(cartan_type))


# ---------------------------------------------------------------------------
# classes and Carter labels


@dataclass
class CarterClass:
    label: str
    representative: WeylElement
    class_size: int
    element_order: int
    char_poly: tuple
    phi1: frozenset = field(repr=False)
    phi1_type: str = ""
    phi2: frozenset = field(repr=False, default=frozenset())
    phi2_type: str = ""
    diagram: tuple = field(repr=False, default=())  # (I1, I2) root lists
    members: frozenset = field(repr=False, default=frozenset())

    @property
    def centralizer_order(self) -> int:
        return self.group_order // self.class_size

    group_order: int = 0


def char_poly(w: WeylElement) -> tuple:
    """det(t - w) on Y(T), integer coefficients, lowest degree first."""
    return w.charpoly


def eigenvalue_multiplicity(w: WeylElement, m: int) -> int:
    """Multiplicity of Phi_m in the characteristic polynomial of w."""
    return int_poly_multiplicity(w.charpoly, cyclotomic_poly(m))


def centralizer(W: WeylGroup, w: WeylElement) -> list[WeylElement]:
    return W.centralizer(w)


def orthogonal_subsystem(rs: RootSystem, phi1: Iterable) -> tuple[frozenset, str]:
    """Roots orthogonal to every root of ``phi1``, with their type label."""
    phi1 = list(phi1)
    out = frozenset(b for b in rs.roots if all(rs.inner(a, b) == 0 for a in phi1))
    return out, subsystem_type(rs, out)


@lru_cache(maxsize=None)
def _orthogonal_sets(cartan_type: str) -> dict:
    """product permutation -> sorted list of orthogonal positive-root index sets."""
    rs = build(cartan_type)
    sets = [()]
    frontier = [()]
    while frontier:
        new = []
        for s in frontier:
            start = s[-1] + 1 if s else 0
            for i in range(start, rs.n_pos):
                a = rs.roots[i]
                if all(rs.inner(a, rs.roots[j]) == 0 for j in s):
                    new.append(s + (i,))
        sets.extend(new)
        frontier = new
    out: dict = {}
    for s in sets:
        w = identity(rs)
        for i in s:
            w = w * reflection(rs, rs.roots[i])
        out.setdefault(w.perm, []).append(s)
    for v in out.values():
        v.sort(key=lambda s: (len(s), s))
    return out


def _lin_rank(rs: RootSystem, idxs) -> int:
    F = FieldConfig.cyclotomic(1)
    return rank_over_field([list(rs.roots[i]) for i in idxs], F)


def admissible_decomposition(w: WeylElement) -> tuple[tuple, tuple]:
    """``w = w1 w2`` with each ``w_i`` a product of reflections in orthogonal
    roots, the roots of both sets linearly independent and totally
    ``rank - dim fix(w)`` in number.  Among all such decompositions the one
    with lexicographically least sorted root set is returned.

    Returns
    -------
    (I1, I2) : tuples of roots
    """
    rs = w.rs
    l = rs.rank - int_poly_multiplicity(w.charpoly, cyclotomic_poly(1))
    table = _orthogonal_sets(rs.cartan_type)
    best = None
    for p1, sets1 in table.items():
        w2 = tuple(p1[i] for i in w.perm)  # w1^{-1} w = w1 w
        sets2 = table.get(w2)
        if not sets2:
            continue
        for s1 in sets1:
            for s2 in sets2:
                if len(s1) + len(s2) != l or set(s1) & set(s2):
                    continue
                union = tuple(sorted(s1 + s2))
                if best is not None and union >= best[0]:
                    continue
                if _lin_rank(rs, union) == l:
                    best = (union, s1, s2)
    if best is None:
        raise RuntimeError("no admissible decomposition found")
    _, s1, s2 = best
    return tuple(rs.roots[i] for i in s1), tuple(rs.roots[i] for i in s2)


def conjugacy_classes(W: WeylGroup) -> list[CarterClass]:
    """Conjugacy classes of ``W`` with Carter labels (where catalogued).

    Classes are returned sorted by (element order, class size, representative).
    """
    rs = W.rs
    seen: set = set()
    raw = []
    gens = W.gens
    for p in W.perms:
        if p in seen:
            continue
        orbit = {p}
        frontier = [p]
        while frontier:
            new = []
            for q in frontier:
                for g in gens:  # g is an involution
                    r = tuple(g[q[g[i]]] for i in range(len(q)))
                    if r not in orbit:
                        orbit.add(r)
                        new.append(r)
            frontier = new
        seen |= orbit
        members = [WeylElement(rs, q) for q in orbit]
        rep = min(members, key=lambda e: (e.length, e.perm))
        raw.append((rep, frozenset(orbit)))
    out = []
    for rep, members in raw:
        I1, I2 = admissible_decomposition(rep)
        phi1 = reflection_closure(rs, I1 + I2) if I1 + I2 else frozenset()
        phi1_type = subsystem_type(rs, phi1)
        phi2, phi2_type = orthogonal_subsystem(rs, phi1)
        cc = CarterClass(label="", representative=rep, class_size=len(members),
                         element_order=rep.order, char_poly=rep.charpoly, phi1=phi1,
                         phi1_type=phi1_type, phi2=phi2, phi2_type=phi2_type,
                         diagram=(I1, I2), members=members, group_order=len(W))
        cc.label = _catalog_label(W, cc)
        out.append(cc)
    out.sort(key=lambda c: (c.element_order, c.class_size, c.representative.perm))
    return out


# Invariant tuple (order, char poly, class size, Phi_1 type) -> Carter label.
# Keys are per ambient group name; see tests/test_weyl.py for the independent
# derivation via Coxeter elements of subsystems.
CARTER_CATALOG: dict = {
    "W(G2)": {
        (1, (1, -2, 1), 1, "∅"): "∅",
        (2, (1, 2, 1), 1, "A1×Ã1"): "A1×Ã1",
        (2, (-1, 0, 1), 3, "A1"): "A1",
        (2, (-1, 0, 1), 3, "Ã1"): "Ã1",
        (3, (1, 1, 1), 2, "Ã2"): "A2",
        (6, (1, -1, 1), 2, "G2"): "G2",
    },
    "W(F4)": {
        (1, (1, -4, 6, -4, 1), 1, "∅"): "∅",
        (2, (1, 4, 6, 4, 1), 1, "A1^2×Ã1^2"): "A1^4",
        (2, (-1, 2, 0, -2, 1), 12, "Ã1"): "Ã1",
        (2, (-1, 2, 0, -2, 1), 12, "A1"): "A1",
        (2, (-1, -2, 0, 2, 1), 12, "A1×Ã1^2"): "A1^3",
        (2, (-1, -2, 0, 2, 1), 12, "A1^2×Ã1"): "A1^2×Ã1",
        (2, (1, 0, -2, 0, 1), 18, "A1^2"): "A1^2",
        (2, (1, 0, -2, 0, 1), 72, "A1×Ã1"): "A1×Ã1",
        (3, (1, 2, 3, 2, 1), 16, "A2×Ã2"): "A2×Ã2",
        (3, (1, -1, 0, -1, 1), 32, "Ã2"): "Ã2",
        (3, (1, -1, 0, -1, 1), 32, "A2"): "A2",
        (4, (1, 0, 2, 0, 1), 12, "D4"): "D4(a1)",
        (4, (1, 2, 2, 2, 1), 36, "A3×Ã1"): "A3×Ã1",
        (4, (1, -2, 2, -2, 1), 36, "B2"): "B2",
        (4, (-1, 0, 0, 0, 1), 72, "A3"): "A3",
        (4, (-1, 0, 0, 0, 1), 72, "B2×A1"): "B2×A1",
        (6, (1, -2, 3, -2, 1), 16, "F4"): "F4(a1)",
        (6, (1, 1, 0, 1, 1), 32, "B3×Ã1"): "D4",
        (6, (1, 1, 0, 1, 1), 32, "C3×A1"): "C3×A1",
        (6, (-1, 1, 0, -1, 1), 96, "B3"): "B3",
        (6, (-1, -1, 0, 1, 1), 96, "A2×Ã1"): "A2×Ã1",
        (6, (-1, 1, 0, -1, 1), 96, "C3"): "C3",
        (6, (-1, -1, 0, 1, 1), 96, "Ã2×A1"): "Ã2×A1",
        (8, (1, 0, 0, 0, 1), 144, "B4"): "B4",
        (12, (1, 0, -1, 0, 1), 96, "F4"): "F4",
    },
}


def _catalog_label(W: WeylGroup, cc: CarterClass) -> str:
    cat = CARTER_CATALOG.get(W.name)
    if cat is None:
        return ""
    key = (cc.element_order, cc.char_poly, cc.class_size, cc.phi1_type)
    if key not in cat:
        raise KeyError(f"class with invariants {key} missing from the {W.name} catalog")
    return cat[key]


def carter_label(W: WeylGroup, w: WeylElement) -> str:
    """Carter label of the class of ``w`` in ``W``."""
    return W.class_of(w).label
