"""Chevalley bases with integral structure constants.

Basis order: ``h_1..h_r`` (simple coroots) then ``e_beta`` for ``beta`` in
``rs.roots`` order.  Structure constants come from the extraspecial-pair
algorithm: positive roots are ordered by (height, descending coordinates), the
extraspecial pair of a positive root gets ``N = +(p + 1)``, and everything else
is forced by the Chevalley relations.  Jacobi is checked on construction.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .exactalg import (FieldConfig, poly_is_squarefree, poly_lcm,
                       poly_monic, rank_over_field)
from .rootsystem import RootSystem, build

__all__ = ["LieAlgebra", "AlgElement", "lie_algebra", "centralizer_dim", "exp_ad_nilpotent"]


class _StructureConstants:
    def __init__(self, rs: RootSystem, signs: Mapping | None = None):
        self.rs = rs
        self.N: dict = {}
        self._extraspecial = {}
        pos = rs.positive_roots
        posset = set(pos)
        for xi in pos:
            if rs.height(xi) == 1:
                continue
            for a in pos:  # already sorted in the fixed order
                b = tuple(x - y for x, y in zip(xi, a))
                if b in posset:
                    self._extraspecial[xi] = (a, b)
                    break
        self.signs = dict(signs or {})

    def _p(self, a, b) -> int:
        """Largest p with b - p a a root."""
        rs = self.rs
        p = 0
        while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    def get(self, a, b) -> int:
        key = (a, b)
        if key in self.N:
            return self.N[key]
        val = self._compute(a, b)
        self.N[key] = val
        return val

    def _compute(self, a, b) -> int:
        rs = self.rs
        s = tuple(x + y for x, y in zip(a, b))
        if not rs.is_root(s):
            return 0
        pa, pb = rs.is_positive(a), rs.is_positive(b)
        if pa and pb:
            es = self._extraspecial[s]
            if es == (a, b):
                return self.signs.get(s, 1) * (self._p(a, b) + 1)
            if es == (b, a):
                return -self.get(b, a)
            a1, b1 = es
            p1 = self._p(a1, b1)
            total = Fraction(0)
            # N_{a,b} N_{-a1,-b1}/|s|^2 + N_{b,-a1} N_{a,-b1}/|b-a1|^2
            #   + N_{-a1,a} N_{b,-b1}/|a-a1|^2 = 0
            na1, nb1 = rs.neg(a1), rs.neg(b1)
            d1 = tuple(x - y for x, y in zip(b, a1))
            if rs.is_root(d1):
                total += Fraction(self.get(b, na1) * self.get(a, nb1), rs.norm(d1))
            d2 = tuple(x - y for x, y in zip(a, a1))
            if rs.is_root(d2):
                total += Fraction(self.get(na1, a) * self.get(b, nb1), rs.norm(d2))
            val = total * rs.norm(s) / (p1 + 1) * self.signs.get(s, 1)
            assert val.denominator == 1
            return int(val)
        if not pa and not pb:
            return -self.get(rs.neg(a), rs.neg(b))
        g = rs.neg(s)  # a + b + g = 0
        # N_{a,b}/(g,g) = N_{b,g}/(a,a) = N_{g,a}/(b,b)
        if rs.is_positive(g) == pb:
            val = Fraction(self.get(b, g) * rs.norm(g), rs.norm(a))
        else:
            val = Fraction(self.get(g, a) * rs.norm(g), rs.norm(b))
        assert val.denominator == 1
        return int(val)


class LieAlgebra:
    """Split simple Lie algebra over Z with a Chevalley basis.

    Parameters
    ----------
    rs : RootSystem
    signs : dict, optional
        Sign flips ``{positive root: -1}`` applied to extraspecial constants;
        any choice yields a valid Chevalley basis.
    check : bool
        Verify the Jacobi identity exhaustively (G2) or on random triples.
    """

    def __init__(self, rs: RootSystem, signs: Mapping | None = None, check: bool = True):
        self.rs = rs
        self.rank = rs.rank
        self.dim = rs.rank + len(rs.roots)
        self._sc = _StructureConstants(rs, signs)
        r = self.rank
        self.root_of = {}  # basis index -> root
        self.index_of = {}  # root -> basis index
        for k, a in enumerate(rs.roots):
            self.root_of[r + k] = a
            self.index_of[a] = r + k
        # table[i][j] = {k: c}
        table = [[None] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                table[i][j] = self._basis_bracket(i, j)
        self.table = table
        if check:
            if self.dim <= 14:
                bad = self.jacobi_violations(exhaustive=True)
            else:
                bad = self.jacobi_violations(samples=2000, seed=0)
            if bad:
                raise AssertionError(f"Jacobi identity fails on {bad[:3]}")

    # -- structure ------------------------------------------------------------
    def N(self, a, b) -> int:
        return self._sc.get(tuple(a), tuple(b))

    def _basis_bracket(self, i: int, j: int) -> dict:
        r, rs = self.rank, self.rs
        if i < r and j < r:
            return {}
        if i < r:
            b = self.root_of[j]
            c = rs.pairing(b, rs.simple_root(i))
            return {j: c} if c else {}
        if j < r:
            out = self._basis_bracket(j, i)
            return {k: -v for k, v in out.items()}
        a, b = self.root_of[i], self.root_of[j]
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s):
            cor = rs.coroot(a)
            return {k: v for k, v in enumerate(cor) if v}
        if rs.is_root(s):
            return {self.index_of[s]: self.N(a, b)}
        return {}

    def basis_name(self, i: int) -> str:
        if i < self.rank:
            return f"h_{i + 1}"
        return self.rs.label(self.root_of[i])

    def h_of(self, coroot: Sequence[int]) -> dict:
        return {k: v for k, v in enumerate(coroot) if v}

    # -- Jacobi -----------------------------------------------------------------
    def _bracket_int(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def jacobi_at(self, i: int, j: int, k: int) -> bool:
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        t1 = self._bracket_int(x, self._bracket_int(y, z))
        t2 = self._bracket_int(y, self._bracket_int(z, x))
        t3 = self._bracket_int(z, self._bracket_int(x, y))
        total: dict = {}
        for t in (t1, t2, t3):
            for key, v in t.items():
                total[key] = total.get(key, 0) + v
        return not any(total.values())

    def jacobi_violations(self, exhaustive: bool = False, samples: int = 10_000,
                          seed: int = 0) -> list:
        bad = []
        n = self.dim
        if exhaustive:
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(j + 1, n):
                        if not self.jacobi_at(i, j, k):
                            bad.append((i, j, k))
        else:
            rng = random.Random(seed)
            for _ in range(samples):
                i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if not self.jacobi_at(i, j, k):
                    bad.append((i, j, k))
        return bad

    # -- elements ------------------------------------------------------------------
    def element(self, coeffs: Mapping, F: FieldConfig) -> "AlgElement":
        return AlgElement(self, {k: F(v) for k, v in coeffs.items() if v}, F)

    def basis_element(self, i: int, F: FieldConfig) -> "AlgElement":
        return AlgElement(self, {i: F.one}, F)

    def e(self, root, F: FieldConfig) -> "AlgElement":
        return self.basis_element(self.index_of[tuple(root)], F)

    def parse(self, text: str, F: FieldConfig) -> "AlgElement":
        """Parse sums such as ``e_1100+e_0011+f_1122`` or ``h_1-2*h_3``."""
        text = text.replace(" ", "").replace("-", "+-")
        out: dict = {}
        for term in filter(None, text.split("+")):
            coef = 1
            if "*" in term:
                c, term = term.split("*")
                coef = Fraction(c)
            elif term.startswith("-"):
                coef, term = -1, term[1:]
            if term.startswith("h_"):
                k = int(term[2:]) - 1
            else:
                k = self.index_of[self.rs.parse_root(term)]
            out[k] = out.get(k, 0) + coef
        return self.element(out, F)

    # -- linear maps -----------------------------------------------------------
    def ad_columns(self, x: "AlgElement") -> list[dict]:
        """Columns of ad x: ``cols[j] = [x, b_j]`` as a sparse dict."""
        F = x.F
        cols = []
        for j in range(self.dim):
            col: dict = {}
            for i, a in x.c.items():
                for k, c in self.table[i][j].items():
                    v = col.get(k, F.zero) + a * c
                    if v:
                        col[k] = v
                    else:
                        col.pop(k, None)
            cols.append(col)
        return cols

    def is_subalgebra(self, basis: Sequence["AlgElement"]) -> bool:
        if not basis:
            return True
        F = basis[0].F
        rows = [b.dense() for b in basis]
        r = rank_over_field(rows, F)
        for i, x in enumerate(basis):
            for y in basis[i + 1:]:
                z = x.bracket(y)
                if z.c and rank_over_field(rows + [z.dense()], F) != r:
                    return False
        return True


class AlgElement:
    """Sparse element of a :class:`LieAlgebra` over a :class:`FieldConfig`."""

    __slots__ = ("alg", "c", "F")

    def __init__(self, alg: LieAlgebra, coeffs: dict, F: FieldConfig):
        self.alg = alg
        self.c = {k: v for k, v in coeffs.items() if v}
        self.F = F

    def _check(self, other):
        if other.alg is not self.alg:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.c)
        for k, v in other.c.items():
            out[k] = out.get(k, self.F.zero) + v
        return AlgElement(self.alg, out, self.F)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgElement(self.alg, {k: -v for k, v in self.c.items()}, self.F)

    def __rmul__(self, s):
        s = self.F(s)
        return AlgElement(self.alg, {k: s * v for k, v in self.c.items()}, self.F)

    def __eq__(self, other):
        return isinstance(other, AlgElement) and other.alg is self.alg and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def is_zero(self) -> bool:
        return not self.c

    def dense(self) -> list:
        v = [self.F.zero] * self.alg.dim
        for k, x in self.c.items():
            v[k] = x
        return v

    def bracket(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        F = self.F
        out: dict = {}
        table = self.alg.table
        for i, a in self.c.items():
            row = table[i]
            for j, b in other.c.items():
                ab = a * b
                for k, c in row[j].items():
                    v = out.get(k, F.zero) + ab * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return AlgElement(self.alg, out, F)

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c):
            v = self.c[k]
            name = self.alg.basis_name(k)
            parts.append(name if v == 1 else f"({v})*{name}")
        return " + ".join(parts)

    # -- Jordan decomposition tests ----------------------------------------------
    def minimal_polynomial(self) -> list:
        """Minimal polynomial of ad x (monic, lowest degree first)."""
        cols = self.alg.ad_columns(self)
        return _minimal_polynomial(cols, self.alg.dim, self.F)

    def is_nilpotent(self) -> bool:
        cols = self.alg.ad_columns(self)
        return _is_nilpotent(cols, self.alg.dim, self.F)

    def is_semisimple(self) -> bool:
        return poly_is_squarefree(self.minimal_polynomial(), self.F)


def _apply(cols: list[dict], v: dict, F) -> dict:
    out: dict = {}
    for j, a in v.items():
        for k, c in cols[j].items():
            nv = out.get(k, F.zero) + a * c
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def _is_nilpotent(cols, n, F) -> bool:
    # A^n = 0 tested on every basis vector via repeated application
    for j in range(n):
        v = {j: F.one}
        for _ in range(n):
            v = _apply(cols, v, F)
            if not v:
                break
        if v:
            return False
    return True


def _local_minpoly(cols, v: dict, n: int, F) -> list:
    """Monic minimal polynomial of A relative to the vector v."""
    # Krylov sequence with incremental elimination
    basis: list[tuple[int, dict, dict]] = []  # (pivot, reduced vector, combination)
    cur = dict(v)
    deg = 0
    while True:
        # reduce cur against basis, tracking combination of Krylov vectors
        comb = {deg: F.one}
        w = dict(cur)
        for p, bv, bc in basis:
            c = w.get(p)
            if c:
                for k, x in bv.items():
                    nv = w.get(k, F.zero) - c * x
                    if nv:
                        w[k] = nv
                    else:
                        w.pop(k, None)
                for k, x in bc.items():
                    nv = comb.get(k, F.zero) - c * x
                    if nv:
                        comb[k] = nv
                    else:
                        comb.pop(k, None)
        if not w:
            poly = [F.zero] * (deg + 1)
            for k, x in comb.items():
                poly[k] = x
            return poly_monic(poly, F)
        p = min(w)
        inv = w[p].inverse()
        basis.append((p, {k: x * inv for k, x in w.items()}, {k: x * inv for k, x in comb.items()}))
        cur = _apply(cols, cur, F)
        deg += 1


def _minimal_polynomial(cols, n, F) -> list:
    """lcm of the local minimal polynomials of all basis vectors.

    Vectors already annihilated by the running lcm are skipped.
    """
    f = [F.one]
    for j in range(n):
        v = {j: F.one}
        # evaluate f(A) v by Horner
        acc: dict = {}
        for coef in reversed(f):
            acc = _apply(cols, acc, F)
            if coef:
                acc[j] = acc.get(j, F.zero) + coef
                if not acc[j]:
                    del acc[j]
        if not acc and len(f) > 1:
            continue
        g = _local_minpoly(cols, v, n, F)
        f = poly_lcm(f, g, F)
    return f


def centralizer_dim(x: AlgElement, sub_basis: Sequence[AlgElement] | None = None,
                    check_closed: bool = False) -> int:
    """dim {y in span(sub_basis) : [y, x] = 0}; whole algebra when omitted.

    Raises
    ------
    ValueError
        If ``check_closed`` and the span is not a subalgebra.
    """
    alg, F = x.alg, x.F
    if sub_basis is None:
        sub_basis = [alg.basis_element(i, F) for i in range(alg.dim)]
    if check_closed and not alg.is_subalgebra(sub_basis):
        raise ValueError("span is not closed under the bracket")
    if not sub_basis:
        return 0
    images = [y.bracket(x) for y in sub_basis]
    # kernel of the map coefficient vector -> sum c_i [y_i, x]
    rows: list[dict] = [dict() for _ in range(alg.dim)]
    for i, z in enumerate(images):
        for k, v in z.c.items():
            rows[k][i] = v
    rows = [r for r in rows if r]
    return len(sub_basis) - rank_over_field(rows, F)


def exp_ad_nilpotent(x: AlgElement) -> list[dict]:
    """exp(ad x) as columns, for nilpotent x.

    Raises
    ------
    ValueError
        If x is not nilpotent, or the characteristic is too small for the
        divided powers that occur.
    """
    alg, F = x.alg, x.F
    cols = alg.ad_columns(x)
    out = []
    top = 0
    for j in range(alg.dim):
        v = {j: F.one}
        term = {j: F.one}
        k = 0
        while True:
            term = _apply(cols, term, F)
            k += 1
            if not term:
                break
            if k > alg.dim:
                raise ValueError("element is not nilpotent")
            if F.characteristic and k >= F.characteristic:
                raise ValueError("characteristic too small for exp(ad x)")
            inv = F(Fraction(1, factorial(k)))
            for i, c in term.items():
                nv = v.get(i, F.zero) + c * inv
                if nv:
                    v[i] = nv
                else:
                    v.pop(i, None)
        top = max(top, k)
        out.append(v)
    return out


@lru_cache(maxsize=None)
def lie_algebra(cartan_type: str) -> LieAlgebra:
    """Cached Chevalley Lie algebra of the given type."""
    return LieAlgebra(build(cartan_type))
