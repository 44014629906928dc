"""Root systems in simple-root coordinates, subsystem typing, affine diagrams.

Roots are integer tuples ``(c_1, ..., c_r)`` meaning ``sum c_i alpha_i``.
Inner products use an integral Gram matrix scaled so that short roots have
squared length 2 (G2 long roots: 6; B/C/F long roots: 4).

F4 follows Bourbaki: alpha_1, alpha_2 long, alpha_3, alpha_4 short, highest
root 2342.  G2 takes alpha_1 short.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Sequence

Root = tuple

SUPPORTED_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4")


def _gram(cartan_type: str) -> list[list[int]]:
    series, n = cartan_type[0], int(cartan_type[1:])
    G = [[0] * n for _ in range(n)]
    if series == "A":
        for i in range(n):
            G[i][i] = 2
            if i + 1 < n:
                G[i][i + 1] = G[i + 1][i] = -1
    elif series == "B":
        # alpha_1..alpha_{n-1} long, alpha_n short
        for i in range(n):
            G[i][i] = 4 if i < n - 1 else 2
            if i + 1 < n:
                G[i][i + 1] = G[i + 1][i] = -2
    elif series == "C":
        # alpha_1..alpha_{n-1} short, alpha_n long
        for i in range(n):
            G[i][i] = 2 if i < n - 1 else 4
            if i + 1 < n - 1:
                G[i][i + 1] = G[i + 1][i] = -1
        G[n - 2][n - 1] = G[n - 1][n - 2] = -2
    elif series == "D":
        # Bourbaki: alpha_{n-2} is the branch node
        for i in range(n):
            G[i][i] = 2
        for i in range(n - 2):
            G[i][i + 1] = G[i + 1][i] = -1
        G[n - 3][n - 1] = G[n - 1][n - 3] = -1
    elif cartan_type == "G2":
        G = [[2, -3], [-3, 6]]
    elif cartan_type == "F4":
        G = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    else:
        raise ValueError(f"unsupported type {cartan_type}")
    return G


@dataclass(frozen=True)
class RootSystem:
    """A crystallographic root system given by its Gram matrix.

    Attributes
    ----------
    cartan_type : str
    gram : tuple of tuples
        ``gram[i][j] = (alpha_i, alpha_j)``.
    roots : tuple of Root
        Positive roots sorted by (height, descending coordinates), followed by
        their negatives in the same order.
    """

    cartan_type: str
    gram: tuple
    roots: tuple = field(repr=False)
    index: dict = field(repr=False, compare=False, hash=False)

    # -- basic data --------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def n_pos(self) -> int:
        return len(self.roots) // 2

    @property
    def positive_roots(self) -> tuple:
        return self.roots[: self.n_pos]

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        return sum(a[i] * g[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])

    def norm(self, a) -> int:
        return self.inner(a, a)

    def pairing(self, b, a) -> int:
        """<b, a^vee> = 2 (b, a) / (a, a)."""
        num = 2 * self.inner(b, a)
        den = self.norm(a)
        assert num % den == 0
        return num // den

    def reflect(self, a, b) -> Root:
        """s_a(b)."""
        k = self.pairing(b, a)
        return tuple(bi - k * ai for ai, bi in zip(a, b))

    @cached_property
    def reflection_table(self) -> tuple:
        """``reflection_table[i][j]`` is the index of s_{roots[i]}(roots[j])."""
        return tuple(tuple(self.index[self.reflect(a, b)] for b in self.roots) for a in self.roots)

    def height(self, a) -> int:
        return sum(a)

    def is_root(self, a) -> bool:
        return tuple(a) in self.index

    def is_positive(self, a) -> bool:
        return self.index[tuple(a)] < self.n_pos

    def neg(self, a) -> Root:
        return tuple(-x for x in a)

    @cached_property
    def cartan_matrix(self) -> tuple:
        """``A[i][j] = <alpha_j, alpha_i^vee>``."""
        r = self.rank
        return tuple(tuple(self.pairing(self.simple_root(j), self.simple_root(i)) for j in range(r))
                     for i in range(r))

    @cached_property
    def max_norm(self) -> int:
        return max(self.norm(a) for a in self.roots)

    def is_long(self, a) -> bool:
        return self.norm(a) == self.max_norm

    @cached_property
    def simply_laced(self) -> bool:
        return len({self.norm(a) for a in self.roots}) == 1

    @cached_property
    def highest_root(self) -> Root:
        return self.roots[self.n_pos - 1]

    def coroot(self, a) -> Root:
        """Coordinates of a^vee in the simple coroot basis."""
        na = self.norm(a)
        out = []
        for j, c in enumerate(a):
            num = c * self.gram[j][j]
            assert num % na == 0
            out.append(num // na)
        return tuple(out)

    def coroot_pairing(self, a, y) -> int:
        """<a, y> for a root a and a cocharacter y in coroot coordinates."""
        return sum(a[i] * self.cartan_matrix[j][i] * y[j] for j in range(self.rank) if y[j]
                   for i in range(self.rank) if a[i])

    def label(self, a) -> str:
        """``e_1100`` / ``f_1122`` style name."""
        if self.is_positive(a):
            return "e_" + "".join(str(x) for x in a)
        return "f_" + "".join(str(-x) for x in a)

    def parse_root(self, s: str) -> Root:
        s = s.strip()
        sign = 1
        if s.startswith(("e_", "f_")):
            sign = 1 if s[0] == "e" else -1
            s = s[2:]
        s = s.strip("{}")
        if len(s) != self.rank or not s.isdigit():
            raise ValueError(f"cannot parse root {s!r}")
        a = tuple(sign * int(ch) for ch in s)
        if not self.is_root(a):
            raise ValueError(f"{s!r} is not a root of {self.cartan_type}")
        return a

    def __repr__(self):
        return f"RootSystem({self.cartan_type}, {len(self.roots)} roots)"


def _generate_positive_roots(G) -> list[Root]:
    r = len(G)

    def inner(a, b):
        return sum(a[i] * G[i][j] * b[j] for i in range(r) for j in range(r))

    simple = [tuple(1 if j == i else 0 for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        new = []
        for b in layer:
            for i, a in enumerate(simple):
                # alpha_i-string through b: b - q a, ..., b + p a
                q = 0
                while True:
                    c = tuple(x - (q + 1) * y for x, y in zip(b, a))
                    if c in roots:
                        q += 1
                    else:
                        break
                p = q - (2 * inner(b, a)) // inner(a, a)
                if p > 0:
                    c = tuple(x + y for x, y in zip(b, a))
                    if c not in roots:
                        roots.add(c)
                        new.append(c)
        layer = new
    return sorted(roots, key=lambda a: (sum(a), tuple(-x for x in a)))


@lru_cache(maxsize=None)
def build(cartan_type: str) -> RootSystem:
    """Construct the root system of the given type.

    Raises
    ------
    ValueError
        If the type is not in :data:`SUPPORTED_TYPES`.
    """
    if cartan_type not in SUPPORTED_TYPES:
        raise ValueError(f"unsupported type {cartan_type}")
    G = _gram(cartan_type)
    pos = _generate_positive_roots(G)
    roots = tuple(pos) + tuple(tuple(-x for x in a) for a in pos)
    index = {a: i for i, a in enumerate(roots)}
    return RootSystem(cartan_type, tuple(tuple(r) for r in G), roots, index)


# ---------------------------------------------------------------------------
# subsystems


def reflection_closure(rs: RootSystem, roots: Iterable) -> frozenset:
    """Smallest root subsystem of ``rs`` containing ``roots``."""
    idx = set()
    for a in roots:
        a = tuple(a)
        if not rs.is_root(a):
            raise ValueError(f"{a} is not a root")
        idx.add(rs.index[a])
        idx.add(rs.index[rs.neg(a)])
    return _closure(rs, frozenset(idx))


@lru_cache(maxsize=65536)
def _closure(rs: RootSystem, idx: frozenset) -> frozenset:
    table = rs.reflection_table
    S = set(idx)
    frontier = list(S)
    while frontier:
        new = []
        for a in list(S):
            row = table[a]
            for b in frontier:
                for c in (row[b], table[b][a]):
                    if c not in S:
                        S.add(c)
                        new.append(c)
        frontier = new
    return frozenset(rs.roots[k] for k in S)


def additive_closure(rs: RootSystem, roots: Iterable) -> frozenset:
    """Smallest subset closed under negation and under sums that are roots."""
    S = set()
    for a in roots:
        S.add(tuple(a))
        S.add(rs.neg(a))
    changed = True
    while changed:
        changed = False
        for a in list(S):
            for b in list(S):
                c = tuple(x + y for x, y in zip(a, b))
                if rs.is_root(c) and c not in S:
                    S.add(c)
                    changed = True
    return frozenset(S)


def simple_system(rs: RootSystem, S: Iterable) -> list[Root]:
    """Simple roots of the subsystem ``S`` for the positivity induced from ``rs``."""
    S = set(map(tuple, S))
    pos = [a for a in S if rs.is_positive(a)]
    posset = set(pos)
    simple = []
    for a in pos:
        decomposable = False
        for b in pos:
            c = tuple(x - y for x, y in zip(a, b))
            if c in posset:
                decomposable = True
                break
        if not decomposable:
            simple.append(a)
    return sorted(simple, key=lambda a: rs.index[a])


def _component_type(rs: RootSystem, simple: list[Root]) -> tuple[str, int, bool]:
    """(series letter, rank, consists of ambient-short roots)."""
    n = len(simple)
    norms = [rs.norm(a) for a in simple]
    lengths = sorted(set(norms))
    tilde = len(lengths) == 1 and not rs.simply_laced and norms[0] < rs.max_norm
    if len(lengths) == 1:
        degrees = [sum(1 for b in simple if b != a and rs.inner(a, b) != 0) for a in simple]
        if n <= 3 or max(degrees) <= 2:
            return "A", n, tilde
        return "D", n, tilde
    ratio = lengths[1] // lengths[0]
    if ratio == 3:
        return "G", 2, False
    n_long = sum(1 for x in norms if x == lengths[1])
    if n == 2:
        return "B", 2, False
    if n == 4 and n_long == 2:
        return "F", 4, False
    if n_long == n - 1:
        return "B", n, False
    return "C", n, False


def component_types(rs: RootSystem, roots: Iterable) -> list[tuple[str, int, bool]]:
    """Irreducible factors of the root subsystem generated by ``roots``."""
    return list(_component_types(rs, reflection_closure(rs, roots)))


@lru_cache(maxsize=65536)
def _component_types(rs: RootSystem, S: frozenset) -> tuple:
    if not S:
        return ()
    simple = simple_system(rs, S)
    # connected components of the Dynkin graph
    comps = []
    seen = set()
    for a in simple:
        if a in seen:
            continue
        comp, stack = [], [a]
        seen.add(a)
        while stack:
            x = stack.pop()
            comp.append(x)
            for b in simple:
                if b not in seen and rs.inner(x, b) != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(comp)
    return tuple(_component_type(rs, c) for c in comps)


def format_type(factors: Sequence[tuple[str, int, bool]]) -> str:
    """Join factors as in ``C3×A1``, ``A2×Ã2``, ``A1^4``; empty gives ``∅``."""
    if not factors:
        return "∅"
    order = "FGEDCBA"
    keyed = sorted(factors, key=lambda f: (-f[1], order.index(f[0]), f[2]))
    parts: list[list] = []
    for f in keyed:
        if parts and parts[-1][0] == f:
            parts[-1][1] += 1
        else:
            parts.append([f, 1])
    out = []
    for (series, n, tilde), k in parts:
        name = series + ("̃" if tilde else "") + str(n)
        if k > 1:
            name += f"^{k}"
        out.append(name)
    return unicodedata.normalize("NFC", "×".join(out))


def subsystem_type(rs: RootSystem, roots: Iterable) -> str:
    """Cartan type label of the root subsystem generated by ``roots``."""
    return format_type(component_types(rs, roots))


def normalize_label(label: str) -> str:
    """Canonical unicode form of a type label (``~A1`` is accepted for Ã1)."""
    s = label.replace("x", "×").replace("*", "×")
    out = []
    i = 0
    while i < len(s):
        if s[i] == "~" and i + 1 < len(s):
            out.append(s[i + 1] + "̃")
            i += 2
        else:
            out.append(s[i])
            i += 1
    return unicodedata.normalize("NFC", "".join(out))


@dataclass(frozen=True)
class EmbeddedSubsystem:
    """A closed subsystem of an ambient root system, with a chosen basis."""

    ambient: RootSystem
    roots: frozenset
    basis: tuple
    cartan_type: str

    def to_ambient(self, coords: Sequence[int]) -> Root:
        """Ambient coordinates of ``sum coords[i] * basis[i]``."""
        r = self.ambient.rank
        return tuple(sum(c * b[k] for c, b in zip(coords, self.basis)) for k in range(r))


def long_subsystem(rs: RootSystem) -> EmbeddedSubsystem:
    """The long roots of F4 as a D4 system.

    The basis (alpha_2, alpha_1, alpha_2+2alpha_3, alpha_2+2alpha_3+2alpha_4) is in
    Bourbaki D4 order: its second member alpha_1 is the branch node.
    """
    if rs.cartan_type != "F4":
        raise ValueError("long_subsystem expects F4")
    longs = frozenset(a for a in rs.roots if rs.is_long(a))
    basis = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 1, 2, 0), (0, 1, 2, 2))
    label = subsystem_type(rs, longs)
    return EmbeddedSubsystem(rs, longs, basis, label)


# ---------------------------------------------------------------------------
# affine diagrams


@dataclass(frozen=True)
class AffineDiagram:
    """Extended Dynkin diagram with marks.

    Attributes
    ----------
    base_type : str
    twist : int
        1 for untwisted, 3 for the triality twist of D4.
    nodes : tuple of str
        Node names in the order used by Kac coefficient strings.
    marks : tuple of int
    node_roots : tuple
        Untwisted: the root attached to each node (``-highest`` for alpha_0).
        Twisted: for each node the tuple of simple-root indices of the
        gamma-orbit it denotes, or ``None`` for beta_0.
    symmetries : tuple of tuples
        Node permutations preserving the diagram and the marks.
    """

    base_type: str
    twist: int
    nodes: tuple
    marks: tuple
    node_roots: tuple
    symmetries: tuple

    def order(self, coeffs: Sequence[int]) -> int:
        return self.twist * sum(a * n for a, n in zip(self.marks, coeffs))

    @property
    def key(self) -> str:
        return {("G2", 1): "g2", ("F4", 1): "f4", ("D4", 1): "d4", ("D4", 3): "d4-3"}[
            (self.base_type, self.twist)]


@lru_cache(maxsize=None)
def affine_diagram(cartan_type: str, twist: int = 1) -> AffineDiagram:
    if (cartan_type, twist) not in {("G2", 1), ("F4", 1), ("D4", 1), ("D4", 3)}:
        raise ValueError(f"unsupported affine diagram ({cartan_type}, {twist})")
    rs = build(cartan_type)
    if twist == 3:
        return AffineDiagram("D4", 3, ("β0", "β1", "β2"), (1, 2, 1),
                             (None, (0, 2, 3), (1,)), ((0, 1, 2),))
    ht = rs.highest_root
    lowest = rs.neg(ht)
    if cartan_type == "G2":
        # strings read (alpha_1, alpha_2, alpha_0), alpha_1 short
        nodes = ("α1", "α2", "α0")
        node_roots = (rs.simple_root(0), rs.simple_root(1), lowest)
        marks = (ht[0], ht[1], 1)
    else:
        nodes = ("α0",) + tuple(f"α{i + 1}" for i in range(rs.rank))
        node_roots = (lowest,) + tuple(rs.simple_root(i) for i in range(rs.rank))
        marks = (1,) + tuple(ht)
    syms = _diagram_symmetries(rs, node_roots, marks)
    return AffineDiagram(cartan_type, 1, nodes, marks, node_roots, syms)


def _diagram_symmetries(rs, node_roots, marks) -> tuple:
    n = len(node_roots)
    G = [[rs.inner(a, b) for b in node_roots] for a in node_roots]
    out = []
    for p in permutations(range(n)):
        if all(marks[p[i]] == marks[i] for i in range(n)) and all(
                G[p[i]][p[j]] == G[i][j] for i in range(n) for j in range(n)):
            out.append(p)
    return tuple(out)
