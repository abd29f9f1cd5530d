"""Places of Q and the local data (e, f, g, decomposition, inertia) above them."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import Subgroup

INF = "inf"


class PlaceError(ValueError):
    pass


def parse_place(v) -> object:
    """``INF`` or a rational prime, from an int or a string like ``"inf"``/``"7"``."""
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            v = int(s)
        except ValueError:
            raise PlaceError(f"{v!r} is not a place") from None
    if isinstance(v, bool) or not isinstance(v, int):
        raise PlaceError(f"{v!r} is not a place")
    if v < 2 or any(v % q == 0 for q in range(2, int(v ** 0.5) + 1)):
        raise PlaceError(f"{v} is not prime")
    return v


def place_key(v) -> tuple:
    # infinity sorts first
    return (0, 0) if v == INF else (1, v)


@dataclass(frozen=True)
class PlaceDatum:
    """Local data at a place ``v`` of Q for a chosen place ``w`` above it."""

    place: object
    e: int
    f: int
    g: int
    decomposition: Subgroup
    inertia: Subgroup

    def __post_init__(self):
        G = self.decomposition.parent
        where = f"place {self.place}"
        if min(self.e, self.f, self.g) < 1:
            raise PlaceError(f"{where}: e, f, g must be positive")
        if self.e * self.f * self.g != G.order:
            raise PlaceError(f"{where}: e*f*g = {self.e * self.f * self.g} != |G| = {G.order}")
        if not self.inertia.is_subgroup_of(self.decomposition):
            raise PlaceError(f"{where}: inertia not contained in decomposition")
        if self.inertia.order != self.e:
            raise PlaceError(f"{where}: |inertia| = {self.inertia.order} != e = {self.e}")
        if self.decomposition.order != self.e * self.f:
            raise PlaceError(f"{where}: |decomposition| = {self.decomposition.order} != e*f")
        D = self.decomposition
        if any(D.parent.conj(d, x) not in self.inertia for d in D.elements for x in self.inertia.elements):
            raise PlaceError(f"{where}: inertia not normal in decomposition")

    @property
    def local_degree(self) -> int:
        return self.e * self.f

    @property
    def is_infinite(self) -> bool:
        return self.place == INF

    @property
    def is_ramified(self) -> bool:
        return self.e > 1

    @property
    def kind(self) -> str:
        if self.e > 1:
            return "ramified"
        if self.f > 1:
            return "inert"
        return "split"

    def to_dict(self) -> dict:
        return {"place": self.place, "e": self.e, "f": self.f, "g": self.g,
                "decomposition": list(self.decomposition.elements), "inertia": list(self.inertia.elements)}
