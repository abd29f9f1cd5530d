"""Exact integer linear algebra: Smith normal form, kernels, subquotients.

Matrices are lists of rows of Python ints.  A finitely generated abelian
group is presented by a list of *moduli*, one per coordinate, where ``0``
marks a free coordinate and ``d >= 2`` a coordinate read modulo ``d``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Sequence

from . import _snf_py

try:
    if os.environ.get("TORUSCLASS_PURE_PYTHON"):
        raise ImportError("pure-python backend requested")
    from . import _snf_ext
except ImportError:
    _snf_ext = None

BACKEND = "cython" if _snf_ext is not None else "python"

# entries above this bound skip the 64-bit kernel outright
_WORD_BOUND = 1 << 40

Matrix = list[list[int]]


class InfiniteQuotientError(ValueError):
    pass


class NotContainedError(ValueError):
    pass


@dataclass(frozen=True)
class SNFResult:
    """``U * A * V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.V)))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [() for _ in range(cols)]
    if inner == 0:
        return zeros(len(A), cols)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def hstack(*blocks: Matrix, nrows: int) -> Matrix:
    out = [[] for _ in range(nrows)]
    for B in blocks:
        for i in range(nrows):
            out[i].extend(B[i] if B else [])
    return out


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


def determinant(A: Matrix) -> int:
    """Exact determinant via Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A: Matrix, ncols: int | None = None, backend: str | None = None) -> SNFResult:
    """Smith normal form with transforms.

    Pivot rule: smallest nonzero absolute value, ties to the lowest row then
    column.  ``ncols`` is needed only when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    backend = backend or BACKEND
    if m == 0 or n == 0:
        return SNFResult(zeros(m, n), identity(m), identity(n))
    if backend == "cython" and _snf_ext is not None:
        if all(-_WORD_BOUND < x < _WORD_BOUND for row in A for x in row):
            try:
                D, U, V = _snf_ext.snf(A, m, n)
                return SNFResult(D, U, V)
            except OverflowError:
                pass
    D = [list(r) for r in A]
    U = identity(m)
    V = identity(n)
    _snf_py.snf_inplace(D, U, V, m, n)
    return SNFResult(D, U, V)


def invariant_factors(A: Matrix, ncols: int | None = None) -> list[int]:
    """Diagonal of the Smith form, zeros included, length ``min(m, n)``."""
    return smith_normal_form(A, ncols).diagonal


def inverse_unimodular(U: Matrix) -> Matrix:
    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


def relation_columns(moduli: Sequence[int]) -> list[list[int]]:
    n = len(moduli)
    cols = []
    for i, d in enumerate(moduli):
        if d:
            v = [0] * n
            v[i] = d
            cols.append(v)
    return cols


def reduce_vector(v: Sequence[int], moduli: Sequence[int]) -> tuple[int, ...]:
    return tuple(x % d if d else x for x, d in zip(v, moduli))


def integer_kernel(A: Matrix, ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^ncols : A x = 0}``."""
    res = smith_normal_form(A, ncols)
    r = res.rank
    return [[res.V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def kernel_mod(A: Matrix, source_moduli: Sequence[int], target_moduli: Sequence[int]) -> list[list[int]]:
    """Generators (in Z^n) of the kernel of ``A`` viewed as a map of presented groups.

    Returns lattice vectors ``x`` with ``A x`` zero in the target; the source
    relations are included so the span is the full preimage lattice.
    """
    n = len(source_moduli)
    m = len(target_moduli)
    rel = relation_columns(target_moduli)
    if m == 0:
        return [list(r) for r in identity(n)]
    B = hstack(A if A else zeros(m, n), columns_to_matrix(rel, m) if rel else zeros(m, 0), nrows=m)
    gens = [v[:n] for v in integer_kernel(B, n + len(rel))]
    gens = [g for g in gens if any(g)]
    return gens + relation_columns(source_moduli)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group as invariant factors ``d1 | d2 | ...`` (all ``>= 2``)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(d < 2 for d in f):
            raise ValueError(f"invariant factors must be >= 2: {f}")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"divisibility chain violated: {f}")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FiniteAbelianGroup":
        """Normalize an arbitrary list of cyclic orders (1s dropped, zeros rejected)."""
        if any(d == 0 for d in orders):
            raise InfiniteQuotientError("group has a free part")
        orders = [abs(d) for d in orders if abs(d) > 1]
        if not orders:
            return cls(())
        return cls(tuple(d for d in invariant_factors([[d if i == j else 0 for j in range(len(orders))]
                                                        for i, d in enumerate(orders)]) if d > 1))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)


def structure_from_element_orders(orders: Sequence[int]) -> FiniteAbelianGroup:
    """Invariant factors of a finite abelian group from the multiset of its element orders.

    For each prime p the number of elements killed by p^k is p^{s_k}; exactly
    s_k - s_{k-1} cyclic p-factors have exponent >= k.
    """
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(len(orders)):
        sylow = _ppart(len(orders), p)
        tiers, prev, k = [], 0, 0
        while True:
            k += 1
            c = sum(1 for o in orders if (p**k) % o == 0)
            s = _exact_log(c, p)
            tiers.append(s - prev)
            prev = s
            if c == sylow:
                break
            if p**k > sylow:
                raise ValueError("element orders do not come from an abelian group")
        per_prime[p] = sorted(sum(1 for t in tiers if t > i) for i in range(tiers[0]))
    rank = max((len(v) for v in per_prime.values()), default=0)
    factors = [1] * rank
    for p, exps in per_prime.items():
        exps = [0] * (rank - len(exps)) + exps
        for i, e in enumerate(exps):
            factors[i] *= p**e
    return FiniteAbelianGroup(tuple(factors))


def _ppart(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def _exact_log(c: int, p: int) -> int:
    s = 0
    while c > 1:
        if c % p:
            raise ValueError("element orders do not come from an abelian group")
        c //= p
        s += 1
    return s


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class Subquotient:
    """The finite group ``(span(num) + R) / (span(den) + R)`` inside a presented group.

    ``R`` is the relation lattice of ``moduli``.  Exposes the invariant-factor
    structure, lifts of generators, and a coordinate map for elements of the
    numerator lattice.
    """

    def __init__(self, moduli: Sequence[int], numerator: Sequence[Sequence[int]],
                 denominator: Sequence[Sequence[int]]):
        self.moduli = tuple(moduli)
        n = self.n = len(self.moduli)
        rel = relation_columns(self.moduli)
        num = [list(v) for v in numerator] + rel
        if num:
            N = columns_to_matrix(num, n)
            res = smith_normal_form(N)
            self._U = res.U
            self._diag = [d for d in res.diagonal if d]
            r = len(self._diag)
            NV = matmul(N, res.V)
            self.basis = [[NV[i][j] for i in range(n)] for j in range(r)]
        else:
            self._U, self._diag, self.basis = identity(n), [], []
        r = len(self.basis)
        den = [list(v) for v in denominator] + rel
        coords = []
        for v in den:
            c = self.lattice_coordinates(v)
            if c is None:
                raise NotContainedError("denominator not contained in numerator")
            coords.append(c)
        if r == 0:
            self._Uq, self._qdiag = [], []
        else:
            C = columns_to_matrix(coords, r) if coords else zeros(r, 0)
            res = smith_normal_form(C, len(coords))
            diag = res.diagonal + [0] * (r - len(res.diagonal))
            if any(d == 0 for d in diag):
                raise InfiniteQuotientError("infinite quotient")
            self._Uq = res.U
            self._qdiag = diag
        self._keep = [i for i, d in enumerate(self._qdiag) if d > 1]
        self.structure = FiniteAbelianGroup(tuple(self._qdiag[i] for i in self._keep))
        self._gens = None

    def lattice_coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Coordinates of ``v`` in the numerator-lattice basis, or ``None`` if outside."""
        Uv = matvec(self._U, v)
        r = len(self._diag)
        if any(Uv[i] for i in range(r, self.n)):
            return None
        out = []
        for i in range(r):
            if Uv[i] % self._diag[i]:
                return None
            out.append(Uv[i] // self._diag[i])
        return out

    def contains(self, v: Sequence[int]) -> bool:
        return self.lattice_coordinates(v) is not None

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Image of a numerator element in ``Z/d1 + Z/d2 + ...``."""
        c = self.lattice_coordinates(v)
        if c is None:
            raise NotContainedError("vector is not in the numerator lattice")
        z = matvec(self._Uq, c)
        return tuple(z[i] % self._qdiag[i] for i in self._keep)

    @property
    def generators(self) -> list[list[int]]:
        """Ambient lifts of the invariant-factor generators."""
        if self._gens is None:
            if not self._keep:
                self._gens = []
            else:
                Uinv = inverse_unimodular(self._Uq)
                r = len(self.basis)
                gens = []
                for i in self._keep:
                    col = [Uinv[k][i] for k in range(r)]
                    g = [sum(col[k] * self.basis[k][j] for k in range(r)) for j in range(self.n)]
                    gens.append(list(reduce_vector(g, self.moduli)))
                self._gens = gens
        return self._gens


def subquotient_structure(moduli: Sequence[int], numerator: Sequence[Sequence[int]],
                          denominator: Sequence[Sequence[int]]) -> FiniteAbelianGroup:
    """Invariant factors of numerator/denominator inside ``Z^r + sum Z/d_i``."""
    return Subquotient(moduli, numerator, denominator).structure


def cokernel_structure(A: Matrix, source_moduli: Sequence[int], target_moduli: Sequence[int]) -> FiniteAbelianGroup:
    m = len(target_moduli)
    n = len(source_moduli)
    cols = [[A[i][j] for i in range(m)] for j in range(n)] if m else []
    return Subquotient(target_moduli, [list(r) for r in identity(m)], cols).structure


def kernel_structure(A: Matrix, source_moduli: Sequence[int], target_moduli: Sequence[int]) -> FiniteAbelianGroup:
    gens = kernel_mod(A, source_moduli, target_moduli)
    return Subquotient(source_moduli, gens, []).structure


def torsion_of_cokernel(A: Matrix, nrows: int, ncols: int) -> tuple[FiniteAbelianGroup, list[list[int]]]:
    """Torsion subgroup of ``Z^nrows / A Z^ncols`` with lifts of its generators."""
    if nrows == 0:
        return FiniteAbelianGroup(()), []
    res = smith_normal_form(A if A else zeros(nrows, ncols), ncols)
    diag = [d for d in res.diagonal if d > 1]
    if not diag:
        return FiniteAbelianGroup(()), []
    Uinv = inverse_unimodular(res.U)
    gens = [[Uinv[k][i] for k in range(nrows)] for i, d in enumerate(res.diagonal) if d > 1]
    return FiniteAbelianGroup(tuple(diag)), gens


def solve_integer(A: Matrix, b: Sequence[int], ncols: int | None = None) -> list[int] | None:
    """One integer solution of ``A x = b`` or ``None``."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    res = smith_normal_form(A, n)
    Ub = matvec(res.U, b)
    y = [0] * n
    for i in range(m):
        d = res.D[i][i] if i < n else 0
        if d == 0:
            if Ub[i]:
                return None
        else:
            if Ub[i] % d:
                return None
            y[i] = Ub[i] // d
    return matvec(res.V, y)


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def hermite_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Rows are upper triangular with positive pivots; entries above a pivot lie
    in ``[0, pivot)``.  Zero rows are dropped.
    """
    work = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(ncols):
        live = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        work = [r for r in rest if any(r)]
        if not live:
            continue
        p = live[0]
        if p[col] < 0:
            p = [-a for a in p]
        for r in out:
            q = r[col] // p[col]
            if q:
                r[:] = [a - q * b for a, b in zip(r, p)]
        out.append(p)
    return out
