"""Finitely generated abelian groups with a finite group action.

A ``GModule`` lives on ``Z^rank + Z/t_1 + ... + Z/t_k``; group elements act by
integer matrices on column coordinates (free coordinates first), torsion rows
read modulo their order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup, GroupError, Subgroup, cosets
from .linalg import Matrix, identity


class ModuleError(ValueError):
    pass


def _normalize(M: Sequence[Sequence[int]], moduli: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(x % d if d else int(x) for x in row) for row, d in zip(M, moduli))


def _mul_mod(A, B, moduli):
    n = len(moduli)
    out = []
    for i in range(n):
        row = [sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
        out.append(row)
    return _normalize(out, moduli)


@dataclass(frozen=True, eq=False)
class GModule:
    group: FiniteGroup
    rank: int
    torsion: tuple[int, ...]
    action: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        torsion = tuple(int(t) for t in self.torsion)
        object.__setattr__(self, "torsion", torsion)
        if self.rank < 0:
            raise ModuleError("rank must be nonnegative")
        if any(t < 2 for t in torsion):
            raise ModuleError("torsion orders must be >= 2")
        moduli = self.moduli
        n = len(moduli)
        G = self.group
        if len(self.action) != G.order:
            raise ModuleError(f"need one matrix per group element ({G.order}), got {len(self.action)}")
        act = []
        for g, M in enumerate(self.action):
            if len(M) != n or any(len(r) != n for r in M):
                raise ModuleError(f"action matrix of element {g} is not {n}x{n}")
            act.append(_normalize(M, moduli))
        object.__setattr__(self, "action", tuple(act))
        r = self.rank
        for g, M in enumerate(act):
            if any(M[i][j] for i in range(r) for j in range(r, n)):
                raise ModuleError(f"element {g} maps torsion into the free part")
            for j in range(r, n):
                d = moduli[j]
                if any((d * M[i][j]) % moduli[i] for i in range(r, n)):
                    raise ModuleError(f"element {g} is not well defined on torsion coordinate {j}")
        if act[0] != _normalize(identity(n), moduli):
            raise ModuleError("identity element does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if _mul_mod(act[g], act[h], moduli) != act[G.table[g][h]]:
                    raise ModuleError(f"action is not a homomorphism at ({g}, {h})")

    @property
    def moduli(self) -> tuple[int, ...]:
        return (0,) * self.rank + self.torsion

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def is_finite(self) -> bool:
        return self.rank == 0

    def apply(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        M = self.action[g]
        out = [sum(a * b for a, b in zip(row, v)) for row in M]
        return tuple(x % d if d else x for x, d in zip(out, self.moduli))

    def __eq__(self, other):
        return (isinstance(other, GModule) and self.group == other.group and self.rank == other.rank
                and self.torsion == other.torsion and self.action == other.action)

    def __hash__(self):
        return hash((self.rank, self.torsion, self.action))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion),
                "action": [[list(r) for r in M] for M in self.action]}


def module_from_generators(G: FiniteGroup, rank: int, torsion: Sequence[int],
                           generators: Sequence[int], matrices: Sequence[Matrix]) -> GModule:
    """Extend matrices given on generators of ``G`` to every element, then validate."""
    torsion = tuple(torsion)
    moduli = (0,) * rank + torsion
    n = len(moduli)
    act: dict[int, tuple] = {0: _normalize(identity(n), moduli)}
    frontier = [0]
    gm = [(int(g), _normalize(M, moduli)) for g, M in zip(generators, matrices)]
    while frontier:
        nxt = []
        for x in frontier:
            for g, M in gm:
                y = G.table[x][g]
                A = _mul_mod(act[x], M, moduli)
                if y in act:
                    if act[y] != A:
                        raise ModuleError("generator matrices violate a group relation")
                else:
                    act[y] = A
                    nxt.append(y)
        frontier = nxt
    if len(act) != G.order:
        raise ModuleError("listed generators do not generate the group")
    return GModule(G, rank, torsion, tuple(act[g] for g in range(G.order)))


def trivial_module(G: FiniteGroup) -> GModule:
    return GModule(G, 1, (), tuple(((1,),) for _ in range(G.order)))


def regular_module(G: FiniteGroup) -> GModule:
    """``Z[G]`` with basis ``e_h``; ``g e_h = e_{gh}``."""
    n = G.order
    act = []
    for g in range(n):
        M = [[0] * n for _ in range(n)]
        for h in range(n):
            M[G.table[g][h]][h] = 1
        act.append(M)
    return GModule(G, n, (), tuple(act))


def norm_torus_module(G: FiniteGroup) -> GModule:
    """``Z[G] / Z N`` on the images of the non-identity elements.

    The identity's image is minus the sum of the basis, by the norm relation.
    """
    n = G.order
    act = []
    for g in range(n):
        M = [[0] * (n - 1) for _ in range(n - 1)]
        for h in range(1, n):
            gh = G.table[g][h]
            if gh == 0:
                for i in range(n - 1):
                    M[i][h - 1] = -1
            else:
                M[gh - 1][h - 1] = 1
        act.append(M)
    return GModule(G, n - 1, (), tuple(act))


def dual_torus_module(G: FiniteGroup) -> GModule:
    """Augmentation ideal with basis ``f_h = h - 1`` (h != 1); ``g f_h = f_{gh} - f_g``."""
    n = G.order
    act = []
    for g in range(n):
        M = [[0] * (n - 1) for _ in range(n - 1)]
        for h in range(1, n):
            gh = G.table[g][h]
            if gh:
                M[gh - 1][h - 1] += 1
            if g:
                M[g - 1][h - 1] -= 1
        act.append(M)
    return GModule(G, n - 1, (), tuple(act))


def permutation_module(G: FiniteGroup, H: Subgroup) -> GModule:
    """``Z[G/H]`` on left cosets ordered by smallest element."""
    if H.parent != G:
        raise ModuleError("subgroup belongs to a different group")
    cs = cosets(G, H)
    where = {}
    for i, c in enumerate(cs):
        for x in c:
            where[x] = i
    k = len(cs)
    act = []
    for g in range(G.order):
        M = [[0] * k for _ in range(k)]
        for i, c in enumerate(cs):
            M[where[G.table[g][c[0]]]][i] = 1
        act.append(M)
    return GModule(G, k, (), tuple(act))


def standard_module(G: FiniteGroup, kind: str, H: Subgroup | None = None) -> GModule:
    """``kind`` in trivial | regular | norm_torus | dual_torus | permutation."""
    if kind == "trivial":
        return trivial_module(G)
    if kind == "regular":
        return regular_module(G)
    if kind in ("norm_torus", "norm"):
        return norm_torus_module(G)
    if kind in ("dual_torus", "dual"):
        return dual_torus_module(G)
    if kind == "permutation":
        if H is None:
            raise ModuleError("permutation module needs a subgroup")
        return permutation_module(G, H)
    raise ModuleError(f"unknown module kind {kind!r}")


def restrict_module(M: GModule, H: Subgroup) -> GModule:
    """``M`` as a module over ``H.as_group()``."""
    if H.parent != M.group:
        raise ModuleError("subgroup parent does not match the module's group")
    return GModule(H.as_group(), M.rank, M.torsion, tuple(M.action[h] for h in H.elements))


def finite_module(G: FiniteGroup, torsion: Sequence[int], action: Sequence[Matrix]) -> GModule:
    return GModule(G, 0, tuple(torsion), tuple(tuple(tuple(r) for r in M) for M in action))


def direct_sum(*mods: GModule) -> GModule:
    """Direct sum, free coordinates of all summands first."""
    G = mods[0].group
    if any(m.group != G for m in mods):
        raise ModuleError("summands over different groups")
    offset_free = 0
    offset_tor = sum(m.rank for m in mods)
    layout = []
    for m in mods:
        idx = list(range(offset_free, offset_free + m.rank)) + \
            list(range(offset_tor, offset_tor + len(m.torsion)))
        layout.append(idx)
        offset_free += m.rank
        offset_tor += len(m.torsion)
    n = offset_tor
    rank = sum(m.rank for m in mods)
    torsion = tuple(t for m in mods for t in m.torsion)
    act = []
    for g in range(G.order):
        A = [[0] * n for _ in range(n)]
        for m, idx in zip(mods, layout):
            for a, i in enumerate(idx):
                for b, j in enumerate(idx):
                    A[i][j] = m.action[g][a][b]
        act.append(A)
    return GModule(G, rank, torsion, tuple(act))


def tensor_with_lattice(L: GModule, M: GModule) -> GModule:
    """``L (x) M`` with diagonal action; ``L`` must be torsion-free.

    Coordinates are ``(i, j)`` for ``L``-basis ``i`` and ``M``-coordinate ``j``,
    reordered so all free coordinates come first.
    """
    if L.torsion:
        raise ModuleError("left factor must be torsion-free")
    if L.group != M.group:
        raise ModuleError("factors over different groups")
    a, n = L.rank, M.dim
    pairs = [(i, j) for i in range(a) for j in range(M.rank)] + \
            [(i, j) for i in range(a) for j in range(M.rank, n)]
    pos = {p: k for k, p in enumerate(pairs)}
    torsion = tuple(M.moduli[j] for _, j in pairs[a * M.rank:])
    act = []
    for g in range(L.group.order):
        A, B = L.action[g], M.action[g]
        K = [[0] * len(pairs) for _ in pairs]
        for (i, j), r in pos.items():
            for (k, l), c in pos.items():
                K[r][c] = A[i][k] * B[j][l]
        act.append(K)
    return GModule(L.group, a * M.rank, torsion, tuple(act))


def reduce_mod(M: GModule, n: int) -> GModule:
    """``M / nM`` for torsion-free ``M``."""
    if M.torsion:
        raise ModuleError("reduce_mod expects a lattice")
    return GModule(M.group, 0, (n,) * M.rank, M.action)


def change_basis(M: GModule, P: Matrix, Pinv: Matrix) -> GModule:
    """Conjugate a lattice's action by a unimodular ``P`` (new coords = ``P`` old)."""
    if M.torsion:
        raise ModuleError("change_basis expects a lattice")
    from .linalg import matmul

    act = tuple(matmul(matmul(P, A), Pinv) for A in M.action)
    return GModule(M.group, M.rank, (), act)


__all__ = [
    "GModule", "ModuleError", "GroupError", "standard_module", "restrict_module", "trivial_module",
    "regular_module", "norm_torus_module", "dual_torus_module", "permutation_module", "finite_module",
    "direct_sum", "tensor_with_lattice", "module_from_generators", "reduce_mod", "change_basis",
]
