"""Tate cohomology of finite groups in degrees -1..2.

Degrees 0 and -1 come straight from the norm map.  Degrees 1 and 2 use the
full (unnormalized) inhomogeneous bar complex.  Cocycles live in
``M^{|G|^n}`` with coordinate ``(g_1, ..., g_n, i)`` at
``((g_1 |G| + g_2) ...) * dim + i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groups import FiniteGroup, Subgroup, quotient_group
from .linalg import (
    FiniteAbelianGroup,
    Matrix,
    Subquotient,
    kernel_mod,
    torsion_of_cokernel,
    zeros,
)
from .modules import GModule, norm_torus_module, restrict_module, tensor_with_lattice

DEGREES = (-1, 0, 1, 2)


class CohomologyError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyResult:
    degree: int
    group: FiniteAbelianGroup
    representative_basis: tuple[tuple[int, ...], ...] = ()
    method: str = "bar"

    @property
    def order(self) -> int:
        return self.group.order


def _check(G: FiniteGroup, M: GModule, n: int):
    if M.group != G:
        raise CohomologyError("module is over a different group")
    if n not in DEGREES:
        raise CohomologyError(f"degree {n} outside supported band {DEGREES}")


def norm_matrix(M: GModule) -> Matrix:
    n = M.dim
    return [[sum(A[i][j] for A in M.action) for j in range(n)] for i in range(n)]


def _columns(A: Matrix, n: int) -> list[list[int]]:
    return [[row[j] for row in A] for j in range(n)]


def _stack_minus_identity(M: GModule, elements: Sequence[int]) -> Matrix:
    n = M.dim
    rows = []
    for g in elements:
        A = M.action[g]
        for i in range(n):
            rows.append([A[i][j] - (1 if i == j else 0) for j in range(n)])
    return rows


def _h0(M: GModule, elements: Sequence[int]) -> Subquotient:
    mod = M.moduli
    fixed = kernel_mod(_stack_minus_identity(M, elements), mod, mod * len(elements))
    return Subquotient(mod, fixed, _columns(norm_matrix(M), M.dim))


def _hminus1(M: GModule, elements: Sequence[int]) -> Subquotient:
    mod = M.moduli
    kern = kernel_mod(norm_matrix(M), mod, mod)
    aug = []
    for g in elements:
        A = M.action[g]
        aug.extend(_columns([[A[i][j] - (i == j) for j in range(M.dim)] for i in range(M.dim)], M.dim))
    return Subquotient(mod, kern, aug)


def bar_d0(G: FiniteGroup, M: GModule) -> Matrix:
    """``M -> C^1``: ``(dm)(g) = g m - m``."""
    n = M.dim
    D = zeros(G.order * n, n)
    for g in range(G.order):
        A = M.action[g]
        for i in range(n):
            for j in range(n):
                D[g * n + i][j] = A[i][j] - (i == j)
    return D


def bar_d1(G: FiniteGroup, M: GModule) -> Matrix:
    """``C^1 -> C^2``: ``(df)(g, h) = g f(h) - f(gh) + f(g)``."""
    n, k = M.dim, G.order
    D = zeros(k * k * n, k * n)
    for g in range(k):
        A = M.action[g]
        for h in range(k):
            base = (g * k + h) * n
            gh = G.table[g][h]
            for i in range(n):
                row = D[base + i]
                for j in range(n):
                    row[h * n + j] += A[i][j]
                row[gh * n + i] -= 1
                row[g * n + i] += 1
    return D


def bar_d2(G: FiniteGroup, M: GModule) -> Matrix:
    """``C^2 -> C^3``: ``g f(h,k) - f(gh,k) + f(g,hk) - f(g,h)``."""
    n, q = M.dim, G.order
    T = G.table
    D = zeros(q ** 3 * n, q * q * n)
    for g in range(q):
        A = M.action[g]
        for h in range(q):
            for k in range(q):
                base = ((g * q + h) * q + k) * n
                for i in range(n):
                    row = D[base + i]
                    for j in range(n):
                        row[(h * q + k) * n + j] += A[i][j]
                    row[(T[g][h] * q + k) * n + i] -= 1
                    row[(g * q + T[h][k]) * n + i] += 1
                    row[(g * q + h) * n + i] -= 1
    return D


def h1_subquotient(G: FiniteGroup, M: GModule) -> Subquotient:
    """``Z^1 / B^1`` inside ``C^1`` (kernel computed honestly, works with torsion)."""
    n, k = M.dim, G.order
    mod1 = M.moduli * k
    cocycles = kernel_mod(bar_d1(G, M), mod1, M.moduli * (k * k))
    return Subquotient(mod1, cocycles, _columns(bar_d0(G, M), n))


def _torsion_free_bar(G: FiniteGroup, M: GModule, n: int) -> CohomologyResult:
    # C^{n+1} is torsion-free so Z^n is saturated; H^n finite => H^n = tors(C^n / B^n)
    D = bar_d0(G, M) if n == 1 else bar_d1(G, M)
    rows = len(D)
    A, gens = torsion_of_cokernel(D, rows, len(D[0]) if D else M.dim)
    return CohomologyResult(n, A, tuple(tuple(g) for g in gens), "bar")


def tate_cohomology(G: FiniteGroup, M: GModule, n: int, method: str = "auto") -> CohomologyResult:
    """Tate cohomology ``H^n_T(G, M)`` for ``n`` in -1..2.

    ``method``: ``auto`` (default), ``bar`` (force the kernel/image bar
    computation for n = 1), ``cyclic`` (periodicity fast path).
    """
    _check(G, M, n)
    if method == "cyclic":
        return cyclic_tate_cohomology(G, M, n)
    elements = range(1, G.order)
    if n == 0:
        return CohomologyResult(0, _h0(M, elements).structure, (), "norm")
    if n == -1:
        return CohomologyResult(-1, _hminus1(M, elements).structure, (), "norm")
    if n == 1:
        if M.is_torsion_free() and method == "auto":
            return _torsion_free_bar(G, M, 1)
        sq = h1_subquotient(G, M)
        return CohomologyResult(1, sq.structure, tuple(tuple(g) for g in sq.generators), "bar")
    if M.is_torsion_free():
        return _torsion_free_bar(G, M, 2)
    # H^2(G, M) = H^1(G, X (x) M), X = Z[G]/ZN, since Z[G] (x) M is induced
    shifted = tensor_with_lattice(norm_torus_module(G), M)
    r = tate_cohomology(G, shifted, 1)
    return CohomologyResult(2, r.group, r.representative_basis, "dimension-shift")


def cyclic_tate_cohomology(G: FiniteGroup, M: GModule, n: int) -> CohomologyResult:
    """Periodic computation for cyclic ``G`` with generator ``s``.

    Even degrees: ker(s - 1) / im N.  Odd degrees: ker N / im(s - 1).
    """
    _check(G, M, n)
    s = G.cyclic_generator()
    if s is None:
        raise CohomologyError("group is not cyclic")
    if n % 2 == 0:
        sq = _h0(M, [s])
    else:
        sq = _hminus1(M, [s])
    return CohomologyResult(n, sq.structure, (), "cyclic")


def herbrand_quotient(G: FiniteGroup, M: GModule) -> Fraction:
    """``[H^0_T] / [H^1]`` for cyclic ``G``."""
    if not G.is_cyclic():
        raise CohomologyError("Herbrand quotient needs a cyclic group")
    h0 = tate_cohomology(G, M, 0).order
    h1 = cyclic_tate_cohomology(G, M, 1).order
    return Fraction(h0, h1)


@dataclass(frozen=True)
class FiniteModuleWithAction:
    """Finite abelian group ``structure`` with ``actors`` acting by matrices mod the factors."""

    structure: FiniteAbelianGroup
    actors: FiniteGroup
    action: tuple[tuple[tuple[int, ...], ...], ...] = field(default=())

    def __post_init__(self):
        f = self.structure.invariant_factors
        k = len(f)
        if len(self.action) != self.actors.order:
            raise CohomologyError("one matrix per actor required")
        act = tuple(tuple(tuple(M[i][j] % f[i] for j in range(k)) for i in range(k)) for M in self.action)
        object.__setattr__(self, "action", act)
        # Z/f_j -> Z/f_i is well defined iff f_i | f_j * a_ij
        for M in act:
            for i in range(k):
                for j in range(k):
                    if (f[j] * M[i][j]) % f[i]:
                        raise CohomologyError("matrix is not a map of the finite group")
        ident = tuple(tuple(int(i == j) % f[i] for j in range(k)) for i in range(k))
        if act and act[0] != ident:
            raise CohomologyError("identity actor must act trivially")
        A = self.actors
        for a in range(A.order):
            for b in range(A.order):
                prod_ = tuple(tuple(sum(act[a][i][l] * act[b][l][j] for l in range(k)) % f[i]
                                    for j in range(k)) for i in range(k))
                if prod_ != act[A.table[a][b]]:
                    raise CohomologyError("action is not a homomorphism")


def _cocycle_act(D: FiniteGroup, I_elems: Sequence[int], M: GModule, d: int, c: Sequence[int]) -> list[int]:
    """``(d.c)(x) = d c(d^-1 x d)`` for a 1-cochain on ``I``."""
    n = M.dim
    pos = {x: i for i, x in enumerate(I_elems)}
    dinv = D.inverse[d]
    out = []
    A = M.action[d]
    for x in I_elems:
        y = D.table[D.table[dinv][x]][d]
        blk = c[pos[y] * n:(pos[y] + 1) * n]
        out.extend(sum(A[i][j] * blk[j] for j in range(n)) for i in range(n))
    return [v % m if m else v for v, m in zip(out, M.moduli * len(I_elems))]


def h1_with_residual_action(D: FiniteGroup, I: Subgroup, M: GModule) -> FiniteModuleWithAction:
    """``H^1(I, M)`` with the conjugation action of ``D/I``.

    Checks that the action preserves cocycles and coboundaries and that ``I``
    itself acts trivially on classes.
    """
    if I.parent != D or M.group != D:
        raise CohomologyError("subgroup/module must belong to D")
    if not I.is_normal():
        raise CohomologyError("inertia subgroup is not normal")
    Q, proj = quotient_group(D, I)
    MI = restrict_module(M, I)
    sq = h1_subquotient(I.as_group(), MI)
    f = sq.structure.invariant_factors
    gens = sq.generators
    k = len(f)
    # coboundaries must map to zero and cocycles to cocycles
    boundary_gens = _columns(bar_d0(I.as_group(), MI), MI.dim)
    mats = {}
    for d in range(D.order):
        cols = []
        for g in gens:
            img = _cocycle_act(D, I.elements, M, d, g)
            if not sq.contains(img):
                raise CohomologyError("action does not preserve cocycles")
            cols.append(sq.coordinates(img))
        for b in boundary_gens:
            img = _cocycle_act(D, I.elements, M, d, b)
            if any(sq.coordinates(img)):
                raise CohomologyError("action does not preserve coboundaries")
        mats[d] = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    ident = tuple(tuple(int(i == j) % f[i] for j in range(k)) for i in range(k))
    for x in I.elements:
        if mats[x] != ident:
            raise CohomologyError("inertia subgroup acts nontrivially on its own cohomology")
    reps = {}
    for d in range(D.order):
        reps.setdefault(proj[d], d)
    action = tuple(mats[reps[q]] for q in range(Q.order))
    return FiniteModuleWithAction(sq.structure, Q, action)


def fixed_points(F: FiniteModuleWithAction) -> FiniteAbelianGroup:
    """Subgroup killed by ``a - 1`` for every actor ``a``."""
    f = F.structure.invariant_factors
    k = len(f)
    if k == 0:
        return FiniteAbelianGroup(())
    rows = []
    for M in F.action[1:]:
        for i in range(k):
            rows.append([M[i][j] - (i == j) for j in range(k)])
    if not rows:
        return F.structure
    kern = kernel_mod(rows, f, f * (F.actors.order - 1))
    return Subquotient(f, kern, []).structure
