"""Exact scalars, polynomials and linear algebra.

Two kinds of coefficient field are supported:

* ``FieldConfig.cyclotomic(m)`` -- Q(zeta_m), elements stored as integer
  polynomials of degree < phi(m) over a common positive denominator;
* ``FieldConfig.prime(m, p)`` -- F_p with a designated primitive m-th root.

Everything here is pure and immutable.  Integer lattice work (Smith normal
form, integer kernels) delegates to :mod:`sympy`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

__all__ = [
    "FieldConfig",
    "cyclotomic_poly",
    "euler_phi",
    "divisors",
    "smith_normal_form",
    "integer_kernel",
    "kernel_over_field",
    "rref",
    "rank_over_field",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_lcm",
    "poly_deriv",
    "poly_is_squarefree",
    "int_poly_mul",
    "int_poly_multiplicity",
    "int_charpoly",
    "mat_mul",
    "mat_vec",
    "identity_matrix",
]


# ---------------------------------------------------------------------------
# elementary number theory


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first.

    >>> cyclotomic_poly(12)
    (1, 0, -1, 0, 1)
    """
    if d < 1:
        raise ValueError("d must be positive")
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(d, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(sympy.isprime(p))


# ---------------------------------------------------------------------------
# scalars


class Cyc:
    """Element of Q(zeta_m): ``sum(c[i] * z**i) / d``, canonical form."""

    __slots__ = ("F", "c", "d", "_h")

    def __init__(self, F: "FieldConfig", c: tuple, d: int = 1):
        # caller guarantees canonical form (see FieldConfig._cyc)
        self.F = F
        self.c = c
        self.d = d
        self._h = None

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        return self.F(other)

    def is_zero(self) -> bool:
        return not self.c

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def to_fraction(self) -> Fraction:
        if len(self.c) > 1:
            raise ValueError("not rational")
        return Fraction(self.c[0], self.d) if self.c else Fraction(0)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if not o.c:
            return self
        if not self.c:
            return o
        a, b = self.c, o.c
        if self.d == o.d:
            d = self.d
            n = max(len(a), len(b))
            c = [0] * n
            for i, v in enumerate(a):
                c[i] = v
            for i, v in enumerate(b):
                c[i] += v
        else:
            d = self.d * o.d
            n = max(len(a), len(b))
            c = [0] * n
            for i, v in enumerate(a):
                c[i] = v * o.d
            for i, v in enumerate(b):
                c[i] += v * self.d
        return self.F._cyc(c, d)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.F, tuple(-v for v in self.c), self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0 or not self.c:
                return self.F.zero
            return self.F._cyc([v * other for v in self.c], self.d)
        if not isinstance(other, (Cyc, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        if not o.c or not self.c:
            return self.F.zero
        a, b = self.c, o.c
        if len(a) == 1:
            return self.F._cyc([a[0] * v for v in b], self.d * o.d)
        if len(b) == 1:
            return self.F._cyc([b[0] * v for v in a], self.d * o.d)
        prod = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    prod[i + j] += u * v
        return self.F._cyc(self.F._reduce(prod), self.d * o.d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.c:
            raise ZeroDivisionError("inverse of zero")
        if len(self.c) == 1:
            return self.F._cyc([self.d], self.c[0])
        return self.F._cyc_inverse(self)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.F.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.c == other.c and self.d == other.d and self.F is other.F
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                return not self.c
            return len(self.c) == 1 and Fraction(self.c[0], self.d) == f
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.c, self.d)) if len(self.c) > 1 else hash(
                Fraction(self.c[0], self.d) if self.c else 0)
        return self._h

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, v in enumerate(self.c):
            if v == 0:
                continue
            coef = Fraction(v, self.d)
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(coef))
            elif coef == 1:
                terms.append(mono)
            elif coef == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{coef}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


class Mod:
    """Residue modulo a prime, canonical representative in [0, p)."""

    __slots__ = ("F", "v")

    def __init__(self, F: "FieldConfig", v: int):
        self.F = F
        self.v = v

    def _coerce(self, other):
        if isinstance(other, Mod):
            return other
        return self.F(other)

    def is_zero(self) -> bool:
        return self.v == 0

    def is_rational(self) -> bool:
        return True

    def __add__(self, other):
        o = self._coerce(other)
        return Mod(self.F, (self.v + o.v) % self.F.characteristic)

    __radd__ = __add__

    def __neg__(self):
        return Mod(self.F, (-self.v) % self.F.characteristic)

    def __sub__(self, other):
        o = self._coerce(other)
        return Mod(self.F, (self.v - o.v) % self.F.characteristic)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Mod(self.F, (self.v * other) % self.F.characteristic)
        if not isinstance(other, (Mod, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return Mod(self.F, (self.v * o.v) % self.F.characteristic)

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero")
        return Mod(self.F, pow(self.v, -1, self.F.characteristic))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Mod(self.F, pow(self.v, k, self.F.characteristic))

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.v == other.v and self.F is other.F
        if isinstance(other, (int, Fraction)):
            return self.v == self.F(other).v
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.F.characteristic})"


class FieldConfig:
    """A working field together with a designated primitive m-th root.

    Instances are cached per parameter tuple, so ``is`` comparison between
    fields is meaningful.

    Parameters
    ----------
    mode : {"cyclotomic", "prime"}
    conductor : int
        The order m of the designated root of unity.
    characteristic : int
        0 in cyclotomic mode, otherwise a prime p > 3 with m | p - 1.
    """

    _cache: dict = {}

    def __new__(cls, mode: str, conductor: int, characteristic: int = 0):
        key = (mode, conductor, characteristic)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self._setup(mode, conductor, characteristic)
        cls._cache[key] = self
        return self

    @classmethod
    def cyclotomic(cls, m: int) -> "FieldConfig":
        return cls("cyclotomic", m, 0)

    @classmethod
    def prime(cls, m: int, p: int | None = None) -> "FieldConfig":
        if p is None:
            p = default_prime(m)
        return cls("prime", m, p)

    def _setup(self, mode, m, p):
        if m < 1:
            raise ValueError("conductor must be positive")
        self.mode = mode
        self.conductor = m
        if mode == "cyclotomic":
            if p != 0:
                raise ValueError("cyclotomic mode has characteristic 0")
            self.characteristic = 0
            self.modulus = cyclotomic_poly(m)
            self.degree = len(self.modulus) - 1
            n = self.degree
            # x^k for n <= k <= 2n-2 as reduced integer vectors
            table = {}
            cur = [-v for v in self.modulus[:n]]
            for k in range(n, 2 * n - 1):
                table[k] = list(cur)
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    for i in range(n):
                        cur[i] -= top * self.modulus[i]
            self._table = table
            self.zero = Cyc(self, (), 1)
            self.one = Cyc(self, (1,), 1)
            self.zeta = self._cyc([0, 1] if n > 1 else [-self.modulus[0]], 1)
        elif mode == "prime":
            if not _is_prime(p) or p <= 3:
                raise ValueError(f"characteristic must be a prime > 3, got {p}")
            if (p - 1) % m:
                raise ValueError(f"{m} does not divide {p} - 1")
            self.characteristic = p
            self.modulus = None
            self.degree = 1
            self.zero = Mod(self, 0)
            self.one = Mod(self, 1)
            self.zeta = Mod(self, _smallest_primitive_root(m, p))
        else:
            raise ValueError(f"unknown mode {mode!r}")
        self._zeta_pows = [self.one]
        for _ in range(1, m):
            self._zeta_pows.append(self._zeta_pows[-1] * self.zeta)

    # -- construction ------------------------------------------------------
    def __call__(self, value):
        if isinstance(value, (Cyc, Mod)):
            if value.F is self:
                return value
            if value.is_rational() and isinstance(value, Cyc):
                return self(value.to_fraction())
            raise TypeError("scalar from a different field")
        if self.mode == "prime":
            p = self.characteristic
            if isinstance(value, int):
                return Mod(self, value % p)
            f = Fraction(value)
            return Mod(self, f.numerator * pow(f.denominator, -1, p) % p)
        if isinstance(value, int):
            return Cyc(self, (value,), 1) if value else self.zero
        f = Fraction(value)
        if f == 0:
            return self.zero
        return Cyc(self, (f.numerator,), f.denominator)

    def zeta_pow(self, k: int):
        """zeta**k for any integer k."""
        return self._zeta_pows[k % self.conductor]

    # -- cyclotomic internals ---------------------------------------------
    def _reduce(self, prod: list) -> list:
        n = self.degree
        if len(prod) <= n:
            return prod
        out = prod[:n]
        table = self._table
        for k in range(n, len(prod)):
            v = prod[k]
            if v:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += v * t
        return out

    def _cyc(self, c: list, d: int) -> Cyc:
        while c and c[-1] == 0:
            c.pop()
        if not c:
            return self.zero
        if d < 0:
            d = -d
            c = [-v for v in c]
        if d != 1:
            g = d
            for v in c:
                if v:
                    g = gcd(g, v)
                    if g == 1:
                        break
            if g != 1:
                c = [v // g for v in c]
                d //= g
        return Cyc(self, tuple(c), d)

    def _cyc_inverse(self, a: Cyc) -> Cyc:
        # extended Euclid over Q, tracking s with s*a = r (mod Phi)
        r0 = [Fraction(v) for v in self.modulus]
        r1 = [Fraction(v, a.d) for v in a.c]
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _frac_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("non-invertible element")
        inv_c = 1 / r1[0]
        s = [v * inv_c for v in s1]
        den = 1
        for v in s:
            den = den * v.denominator // gcd(den, v.denominator)
        return self._cyc([int(v * den) for v in s], den)

    # -- conveniences -------------------------------------------------------
    def __repr__(self):
        if self.mode == "cyclotomic":
            return f"FieldConfig(cyclotomic, m={self.conductor})"
        return (f"FieldConfig(prime, m={self.conductor}, p={self.characteristic}, "
                f"zeta={self.zeta.v})")

    def __reduce__(self):
        return (FieldConfig, (self.mode, self.conductor, self.characteristic))

    def check_root_of_unity(self) -> bool:
        """zeta has exact multiplicative order m."""
        m = self.conductor
        if self.zeta ** m != self.one:
            return False
        return all(self.zeta ** d != self.one for d in divisors(m) if d < m)


def _frac_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return _frac_trim(out)


def _frac_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _frac_trim(out)


def _frac_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, v in enumerate(b):
            a[i + k] -= c * v
        a.pop()
        _frac_trim(a)
    return _frac_trim(q), a


def default_prime(m: int) -> int:
    """Smallest prime p > 3 with p = 1 (mod m)."""
    p = 5
    while True:
        if (p - 1) % m == 0 and _is_prime(p):
            return p
        p += 1


def _smallest_primitive_root(m: int, p: int) -> int:
    for z in range(1, p):
        if pow(z, m, p) != 1:
            continue
        if all(pow(z, d, p) != 1 for d in divisors(m) if d < m):
            return z
    raise ValueError("no primitive root")  # unreachable when m | p-1


# ---------------------------------------------------------------------------
# polynomials over a FieldConfig (lists of scalars, lowest degree first)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def poly_mul(a: Sequence, b: Sequence, F: FieldConfig) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = out[i + j] + u * v
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence, F: FieldConfig):
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(list(a))
    inv = b[-1].inverse()
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, v in enumerate(b):
            a[i + k] = a[i + k] - c * v
        a.pop()
        _trim(a)
    return _trim(q), a


def poly_monic(a: Sequence, F: FieldConfig) -> list:
    a = _trim(list(a))
    if not a:
        return a
    inv = a[-1].inverse()
    return [v * inv for v in a]


def poly_gcd(a: Sequence, b: Sequence, F: FieldConfig) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = poly_divmod(a, b, F)
        a, b = b, r
    return poly_monic(a, F)


def poly_lcm(a: Sequence, b: Sequence, F: FieldConfig) -> list:
    g = poly_gcd(a, b, F)
    q, r = poly_divmod(poly_mul(a, b, F), g, F)
    assert not r
    return poly_monic(q, F)


def poly_deriv(a: Sequence, F: FieldConfig) -> list:
    return _trim([a[i] * i for i in range(1, len(a))])


def poly_is_squarefree(a: Sequence, F: FieldConfig) -> bool:
    """gcd(f, f') == 1.

    In characteristic p a nonconstant f with f' = 0 is a p-th power and hence
    not squarefree; the gcd test reports that correctly since gcd(f, 0) = f.
    """
    return len(poly_gcd(a, poly_deriv(a, F), F)) == 1


# ---------------------------------------------------------------------------
# integer polynomials (tuples, lowest degree first)


def int_poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return tuple(out)


def _int_poly_divmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        k = len(a) - len(b)
        if a[-1] % b[-1]:
            return None, a
        c = a[-1] // b[-1]
        q[k] = c
        for i, v in enumerate(b):
            a[i + k] -= c * v
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def int_poly_multiplicity(f: Sequence[int], g: Sequence[int]) -> int:
    """Largest k such that g**k divides f (g monic, non-constant)."""
    k = 0
    cur = list(f)
    while True:
        q, r = _int_poly_divmod(cur, g)
        if q is None or r:
            return k
        k += 1
        cur = q


def int_charpoly(M: Sequence[Sequence[int]]) -> tuple:
    """Characteristic polynomial det(t*I - M) of an integer matrix."""
    t = sympy.Symbol("t")
    p = sympy.Matrix(M).charpoly(t)
    return tuple(int(c) for c in reversed(p.all_coeffs()))


# ---------------------------------------------------------------------------
# integer matrices


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(len(B[0]))]
            for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form ``S = U A V`` with ``U``, ``V`` unimodular.

    Returns
    -------
    (S, U, V) : tuple of list-of-lists of int
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [list(r) for r in A], identity_matrix(rows), identity_matrix(cols)
    S, U, V = smith_normal_decomp(sympy.Matrix(A), domain=sympy.ZZ)
    S, U, V = (_to_int_rows(X) for X in (S, U, V))
    # sympy may leave negative invariant factors; flip the sign via U
    for i in range(min(rows, cols)):
        if S[i][i] < 0:
            S[i][i] = -S[i][i]
            U[i] = [-v for v in U[i]]
    return S, U, V


def _to_int_rows(X) -> list[list[int]]:
    return [[int(X[i, j]) for j in range(X.cols)] for i in range(X.rows)]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of {v in Z^n : A v = 0}; the result spans a saturated lattice."""
    if not A:
        n = ncols or 0
        return identity_matrix(n)
    n = len(A[0])
    S, U, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i] != 0)
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


# ---------------------------------------------------------------------------
# linear algebra over a FieldConfig with sparse rows


def _sparse_rows(M, F) -> list[dict]:
    out = []
    for row in M:
        if isinstance(row, dict):
            out.append({j: F(v) for j, v in row.items() if v})
        else:
            out.append({j: F(v) for j, v in enumerate(row) if v})
    return out


def rref(M, F: FieldConfig):
    """Reduced row echelon form.

    Parameters
    ----------
    M : iterable of rows (dense lists or ``{col: value}`` dicts)

    Returns
    -------
    list of (pivot column, row dict), sorted by pivot column; each row has a
    1 at its pivot and zeros in every other pivot column.
    """
    rows = _sparse_rows(M, F)
    pivots: dict[int, dict] = {}
    for row in rows:
        # pivot rows are zero in every other pivot column, so one pass
        # over the pivot columns initially present clears them all
        for pc in [c for c in row if c in pivots]:
            c = row[pc]
            for j, v in pivots[pc].items():
                nv = row.get(j, F.zero) - c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = row[p].inverse()
        row = {j: v * inv for j, v in row.items()}
        # eliminate p from the other pivot rows
        for pc, prow in pivots.items():
            if p in prow:
                c = prow[p]
                for j, v in row.items():
                    nv = prow.get(j, F.zero) - c * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[p] = row
    return sorted(pivots.items())


def rank_over_field(M, F: FieldConfig) -> int:
    return len(rref(M, F))


def kernel_over_field(M, F: FieldConfig, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel of ``M``, in reduced echelon form.

    Parameters
    ----------
    M : rows (dense lists or dicts)
    ncols : number of columns; required when ``M`` is given as dict rows or
        has no rows.

    Returns
    -------
    list of dense vectors (lists of scalars)
    """
    if ncols is None:
        if not M or isinstance(M[0], dict):
            raise ValueError("ncols required")
        ncols = len(M[0])
    piv = rref(M, F)
    pcols = {p for p, _ in piv}
    basis = []
    for f in range(ncols):
        if f in pcols:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for p, row in piv:
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    if not basis:
        return []
    # canonical: echelon form of the basis itself
    red = rref(basis, F)
    out = []
    for _, row in red:
        v = [F.zero] * ncols
        for j, c in row.items():
            v[j] = c
        out.append(v)
    return out
