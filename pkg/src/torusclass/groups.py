"""Finite groups as multiplication tables, subgroups, quotients, abelianization."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .linalg import FiniteAbelianGroup, smith_normal_form, columns_to_matrix


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group on ``0..order-1``; element 0 is the identity.

    ``table[a][b]`` is the index of ``a*b``.  ``labels`` optionally keeps the
    permutation each element came from.
    """

    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...] = ()
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n < 1:
            raise GroupError("group order must be >= 1")
        if any(len(row) != n or any(not 0 <= x < n for x in row) for row in table):
            raise GroupError("table must be order x order with entries in range")
        if any(table[0][x] != x or table[x][0] != x for x in range(n)):
            raise GroupError("element 0 is not a two-sided identity")
        inv = tuple(self.inverse) if self.inverse else tuple(row.index(0) if 0 in row else -1 for row in table)
        if len(inv) != n or any(i < 0 or table[x][i] != 0 or table[i][x] != 0 for x, i in enumerate(inv)):
            raise GroupError("inverses are not two-sided")
        object.__setattr__(self, "inverse", inv)
        for x, y, z in product(range(n), repeat=3):
            if table[table[x][y]][z] != table[x][table[y][z]]:
                raise GroupError(f"table is not associative at ({x}, {y}, {z})")

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        r = 0
        while k:
            if k & 1:
                r = self.table[r][a]
            a = self.table[a][a]
            k >>= 1
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def cyclic_generator(self) -> int | None:
        """Smallest-index element of full order, or ``None`` if not cyclic."""
        for a in range(self.order):
            if self.element_order(a) == self.order:
                return a
        return None

    def is_cyclic(self) -> bool:
        return self.cyclic_generator() is not None

    def to_dict(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteGroup":
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise GroupError("declared order does not match table size")
        return cls(tuple(tuple(r) for r in table))


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def group_from_permutations(generators: Sequence[Sequence[int]], degree: int | None = None) -> FiniteGroup:
    """Closure of permutations of ``{0..m-1}`` (given as image lists).

    Elements are numbered breadth-first from the identity, multiplying on
    the right by the generators in input order.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        if not gens:
            raise GroupError("degree required when no generators are given")
        degree = len(gens[0])
    if degree < 1:
        raise GroupError("empty domain")
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a bijection of {{0..{degree - 1}}}: {list(g)}")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in index:
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = tuple(tuple(index[_compose(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, labels=tuple(elements))


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_permutations([], degree=1)
    return group_from_permutations([[(i + 1) % n for i in range(n)]])


def klein_four() -> FiniteGroup:
    return group_from_permutations([[1, 0, 2, 3], [0, 1, 3, 2]])


def symmetric_group_s3() -> FiniteGroup:
    return group_from_permutations([[1, 0, 2], [0, 2, 1]])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with element ``(g, h)`` at index ``g * |H| + h``."""
    m = H.order
    n = G.order * m
    table = tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n)) for a in range(n)
    )
    return FiniteGroup(table)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        G = self.parent
        if not els or els[0] != 0:
            raise GroupError("subgroup must contain the identity")
        s = set(els)
        if any(not 0 <= x < G.order for x in els):
            raise GroupError("subgroup element out of range")
        if any(G.table[a][b] not in s for a in els for b in els) or any(G.inverse[a] not in s for a in els):
            raise GroupError("elements are not closed under the group operation")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    def is_normal(self) -> bool:
        s = set(self.elements)
        return all(self.parent.conj(g, x) in s for g in range(self.parent.order) for x in self.elements)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent == other.parent and set(self.elements) <= set(other.elements)

    def as_group(self) -> FiniteGroup:
        """Standalone group; new index ``i`` is parent element ``elements[i]``."""
        pos = {x: i for i, x in enumerate(self.elements)}
        T = self.parent.table
        return FiniteGroup(tuple(tuple(pos[T[a][b]] for b in self.elements) for a in self.elements))

    def index_of(self, x: int) -> int:
        return self.elements.index(x)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = [int(g) for g in gens]
    for g in gens:
        if not 0 <= g < G.order:
            raise GroupError(f"element index {g} out of range for group of order {G.order}")
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = G.table[x][g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return Subgroup(G, tuple(seen))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, sorted by order then element list."""
    found = {subgroup_generated(G, [g]).elements for g in range(G.order)}
    frontier = set(found)
    while frontier:
        new = set()
        for els in frontier:
            for g in range(G.order):
                if g not in els:
                    s = subgroup_generated(G, list(els) + [g]).elements
                    if s not in found:
                        new.add(s)
        found |= new
        frontier = new
    return [Subgroup(G, e) for e in sorted(found, key=lambda e: (len(e), e))]


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    T, inv = G.table, G.inverse
    comms = {T[T[x][y]][T[inv[x]][inv[y]]] for x in range(G.order) for y in range(G.order)}
    return subgroup_generated(G, sorted(comms))


def cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``gH`` ordered by their smallest element."""
    seen = set()
    out = []
    for g in range(G.order):
        if g in seen:
            continue
        c = tuple(sorted(G.table[g][h] for h in H.elements))
        seen.update(c)
        out.append(c)
    return out


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """``G/N`` and the projection (element index -> coset index)."""
    if not N.is_normal():
        raise GroupError("subgroup is not normal")
    cs = cosets(G, N)
    proj = [0] * G.order
    for i, c in enumerate(cs):
        for x in c:
            proj[x] = i
    table = tuple(tuple(proj[G.table[a[0]][b[0]]] for b in cs) for a in cs)
    return FiniteGroup(table), proj


def abelianization(G: FiniteGroup) -> tuple[FiniteAbelianGroup, list[tuple[int, ...]]]:
    """``G/[G,G]`` in invariant-factor form with the quotient map into its coordinates."""
    Q, proj = quotient_group(G, commutator_subgroup(G))
    k = Q.order
    # Z^k / <e_0, e_a + e_b - e_ab>
    rels = []
    e0 = [0] * k
    e0[0] = 1
    rels.append(e0)
    for a in range(1, k):
        for b in range(1, k):
            v = [0] * k
            v[a] += 1
            v[b] += 1
            v[Q.table[a][b]] -= 1
            rels.append(v)
    res = smith_normal_form(columns_to_matrix(rels, k))
    diag = res.diagonal
    keep = [i for i, d in enumerate(diag) if d > 1]
    coords = []
    for c in range(k):
        coords.append(tuple(res.U[i][c] % diag[i] for i in keep))
    A = FiniteAbelianGroup(tuple(diag[i] for i in keep))
    return A, [coords[proj[g]] for g in range(G.order)]


def image_in_abelianization(G: FiniteGroup, H: Subgroup) -> int:
    """``|H [G,G] / [G,G]|``."""
    _, q = abelianization(G)
    return len({q[h] for h in H.elements})
