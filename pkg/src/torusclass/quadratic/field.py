"""Quadratic fields Q(sqrt d): elements, fundamental units, splitting, class groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import NamedTuple

from ..groups import FiniteGroup, Subgroup, cyclic_group
from ..places import INF, PlaceDatum
from ..linalg import FiniteAbelianGroup, structure_from_element_orders
from . import forms as bqf
from .forms import Form

DEFAULT_DISC_BOUND = 10**6
_GALOIS = cyclic_group(2)


class QuadraticError(ValueError):
    pass


class DiscriminantBoundError(QuadraticError):
    pass


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol ``(D | p)`` for a prime ``p``."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


@dataclass(frozen=True)
class QuadraticField:
    """``Q(sqrt d)``; integers ``Z[w]`` with ``w = sqrt d`` or ``(1 + sqrt d)/2``."""

    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise QuadraticError(f"d = {self.d} must be a squarefree integer other than 0, 1")

    @property
    def discriminant(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def signature(self) -> str:
        return "real" if self.d > 0 else "imaginary"

    @property
    def is_real(self) -> bool:
        return self.d > 0

    @property
    def trace_w(self) -> int:
        # w^2 = t w + m
        return 1 if self.d % 4 == 1 else 0

    @property
    def norm_w(self) -> int:
        return (self.d - 1) // 4 if self.d % 4 == 1 else self.d

    @cached_property
    def galois_group(self) -> FiniteGroup:
        return _GALOIS

    def element(self, x, y=0) -> "QElement":
        return QElement(self, Fraction(x), Fraction(y))

    def from_half(self, X: int, Y: int) -> "QElement":
        """``(X + Y sqrt D)/2``."""
        if self.d % 4 == 1:
            # sqrt D = sqrt d = 2w - 1
            return self.element(Fraction(X - Y, 2), Y)
        # sqrt D = 2 sqrt d = 2w
        return self.element(Fraction(X, 2), Y)

    def check_bound(self, bound: int = DEFAULT_DISC_BOUND):
        if abs(self.discriminant) > bound:
            raise DiscriminantBoundError(f"|disc| = {abs(self.discriminant)} exceeds bound {bound}")

    def torsion_units(self) -> list["QElement"]:
        """Roots of unity, listed as powers of a generator."""
        if self.d == -1:
            z = self.element(0, 1)
        elif self.d == -3:
            z = self.element(0, 1)  # (1 + sqrt -3)/2, order 6
        else:
            z = self.element(-1)
        out = [self.element(1)]
        x = z
        while x != out[0]:
            out.append(x)
            x = x * z
        return out

    @property
    def unit_torsion_order(self) -> int:
        return {-1: 4, -3: 6}.get(self.d, 2)


class QElement(NamedTuple):
    """``x + y w`` with rational ``x, y``."""

    field: QuadraticField
    x: Fraction
    y: Fraction

    def __add__(self, o):
        return QElement(self.field, self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        return QElement(self.field, self.x - o.x, self.y - o.y)

    def __neg__(self):
        return QElement(self.field, -self.x, -self.y)

    def __mul__(self, o):
        if not isinstance(o, QElement):
            o = self.field.element(o)
        t, m = self.field.trace_w, self.field.norm_w
        a, b, c, e = self.x, self.y, o.x, o.y
        return QElement(self.field, a * c + b * e * m, a * e + b * c + b * e * t)

    def conj(self):
        t = self.field.trace_w
        return QElement(self.field, self.x + self.y * t, -self.y)

    def norm(self) -> Fraction:
        t, m = self.field.trace_w, self.field.norm_w
        return self.x * self.x + self.x * self.y * t - m * self.y * self.y

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element")
        c = self.conj()
        return QElement(self.field, c.x / n, c.y / n)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.element(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        return isinstance(o, QElement) and self.field.d == o.field.d and self.x == o.x and self.y == o.y

    def __ne__(self, o):
        return not self == o

    def __hash__(self):
        return hash((self.field.d, self.x, self.y))

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def as_half(self) -> tuple[Fraction, Fraction]:
        """``(X, Y)`` with ``self = (X + Y sqrt D)/2``."""
        if self.field.d % 4 == 1:
            return 2 * self.x + self.y, self.y
        return 2 * self.x, self.y

    def as_sqrt_d(self) -> tuple[Fraction, Fraction]:
        """``(a, b)`` with ``self = (a + b sqrt d)/2``."""
        if self.field.d % 4 == 1:
            return 2 * self.x + self.y, self.y
        return 2 * self.x, 2 * self.y

    def __float__(self):
        import math

        d = self.field.d
        if d < 0:
            raise TypeError("imaginary element has no real value")
        w = (1 + math.sqrt(d)) / 2 if d % 4 == 1 else math.sqrt(d)
        return float(self.x) + float(self.y) * w

    def __str__(self):
        a, b = self.as_sqrt_d()
        half = a.denominator == 1 and b.denominator == 1 and (a % 2 or b % 2)
        if not half:
            a, b = a / 2, b / 2
        root = "i" if self.field.d == -1 else f"sqrt({self.field.d})"
        if b == 0:
            body = f"{a}"
        else:
            coeff = "" if abs(b) == 1 else f"{abs(b)}*"
            sign = "-" if b < 0 else "+"
            body = f"{coeff}{root}" if a == 0 and b > 0 else f"{a}{sign}{coeff}{root}" if a else f"-{coeff}{root}"
        return f"({body})/2" if half else body

    def __repr__(self):
        X, Y = self.as_half()
        return f"({X} + {Y}*sqrt({self.field.discriminant}))/2"


class FundamentalUnit(NamedTuple):
    """``eps = (a + b sqrt d)/2 > 1``."""

    a: int
    b: int
    norm: int
    element: QElement


def fundamental_unit(F: QuadraticField, max_terms: int = 10**7) -> FundamentalUnit:
    """Smallest unit ``> 1`` from the continued fraction of ``w``.

    Each unit ``x - y w`` with ``x, y > 0`` comes from a convergent ``x/y``
    of ``w``; the first convergent of unit norm gives ``eps = x - y w'``.
    """
    if not F.is_real:
        raise QuadraticError("fundamental unit requested for an imaginary field")
    d = F.d
    s = isqrt(d)
    t = F.trace_w
    # w = (P + sqrt d)/Q
    P, Q = (1, 2) if d % 4 == 1 else (0, 1)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(max_terms):
        a = _floor_surd(P, Q, d, s)
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        # convergent p/q; x - y w with x = p, y = q
        eps = F.element(p - q * t, q)  # x - y w' = x - y (t - w)
        n = eps.norm()
        if n in (1, -1):
            a, b = eps.as_sqrt_d()
            return FundamentalUnit(int(a), int(b), int(n), eps)
        P = a * Q - P
        Q = (d - P * P) // Q
    raise QuadraticError("continued fraction did not reach a unit")


def _floor_surd(P: int, Q: int, d: int, s: int) -> int:
    if Q > 0:
        return (P + s) // Q
    # (P + sqrt d)/Q with Q < 0: floor(-(P + sqrt d)/|Q|) = -ceil(...) = -((P + s)//|Q|) - 1
    return -((P + s) // (-Q)) - 1


# -- splitting ----------------------------------------------------------------

def splitting(F: QuadraticField, v) -> PlaceDatum:
    G = F.galois_group
    whole = Subgroup(G, (0, 1))
    triv = Subgroup(G, (0,))
    if v == INF:
        if F.is_real:
            return PlaceDatum(INF, 1, 1, 2, triv, triv)
        # complex place over R counted as ramified at infinity
        return PlaceDatum(INF, 2, 1, 1, whole, whole)
    p = int(v)
    if not is_prime(p):
        raise QuadraticError(f"{p} is not prime")
    k = kronecker(F.discriminant, p)
    if k == 0:
        return PlaceDatum(p, 2, 1, 1, whole, whole)
    if k == 1:
        return PlaceDatum(p, 1, 1, 2, triv, triv)
    return PlaceDatum(p, 1, 2, 1, whole, triv)


def ramified_primes(F: QuadraticField) -> list[int]:
    return sorted(factorize(F.discriminant))


# -- class groups -------------------------------------------------------------

class FormClassGroup:
    """Class group of primitive forms of discriminant ``D``.

    Imaginary: classes are reduced forms.  Real: classes are ``rho``-cycles
    (narrow group); the wide group is the quotient by the class of the
    negated principal form.
    """

    def __init__(self, D: int):
        self.D = D
        if D < 0:
            self.reps = bqf.reduced_forms_definite(D)
            self._index = {f: i for i, f in enumerate(self.reps)}
        else:
            cycles = bqf.indefinite_cycles(D)
            self.reps = [c[0] for c in cycles]
            self._index = {f: i for i, c in enumerate(cycles) for f in c}
        self.identity = self.class_of(bqf.principal_form(D))

    def __len__(self):
        return len(self.reps)

    def class_of(self, f: Form) -> int:
        if self.D < 0:
            return self._index[bqf.reduce_definite(f)]
        return self._index[bqf.reduce_indefinite(f)]

    def mul(self, i: int, j: int) -> int:
        return self.class_of(bqf.compose(self.reps[i], self.reps[j]))

    def inv(self, i: int) -> int:
        return self.class_of(self.reps[i].inverse())

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        r = self.identity
        b = i
        while k:
            if k & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            k >>= 1
        return r

    def order_of(self, i: int) -> int:
        h = len(self)
        o = h
        for p in factorize(h):
            while o % p == 0 and self.power(i, o // p) == self.identity:
                o //= p
        return o

    def subgroup(self, gens) -> set[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def structure(self) -> FiniteAbelianGroup:
        return structure_from_element_orders([self.order_of(i) for i in range(len(self))])

    @cached_property
    def negated_principal(self) -> int:
        """Class of ``(-1, b0, -c0)``; trivial iff the fundamental unit has norm -1."""
        f = bqf.principal_form(self.D)
        return self.class_of(Form(-f.a, f.b, -f.c))

    @cached_property
    def _wide_kernel(self) -> frozenset[int]:
        if self.D < 0:
            return frozenset({self.identity})
        return frozenset(self.subgroup([self.negated_principal]))

    def wide_class(self, i: int) -> int:
        """Canonical representative of ``i`` in the wide class group."""
        return min(self.mul(i, j) for j in self._wide_kernel)

    def wide_structure(self) -> FiniteAbelianGroup:
        """Narrow group modulo the negated principal class (equals narrow group if D < 0)."""
        if self.D < 0:
            return self.structure()
        J = self._wide_kernel
        cosets = {}
        for i in range(len(self)):
            key = min(self.mul(i, j) for j in J)
            cosets.setdefault(key, i)
        reps = list(cosets)
        orders = []
        for r in reps:
            k, x = 1, r
            while x not in J:
                x = self.mul(x, r)
                k += 1
            orders.append(k)
        return structure_from_element_orders(orders)


def class_group(F: QuadraticField) -> FormClassGroup:
    return _class_group_cached(F.discriminant)


_CG_CACHE: dict[int, FormClassGroup] = {}


def _class_group_cached(D: int) -> FormClassGroup:
    if D not in _CG_CACHE:
        _CG_CACHE[D] = FormClassGroup(D)
    return _CG_CACHE[D]


def narrow_class_number(F: QuadraticField, bound: int = DEFAULT_DISC_BOUND) -> int:
    F.check_bound(bound)
    return len(class_group(F))


def class_number(F: QuadraticField, bound: int = DEFAULT_DISC_BOUND) -> tuple[int, FiniteAbelianGroup]:
    """``(h, Cl)``; real fields use ``h = h+`` or ``h+/2`` per the norm of ``eps``."""
    F.check_bound(bound)
    cg = class_group(F)
    if not F.is_real:
        return len(cg), cg.structure()
    hplus = len(cg)
    eps = fundamental_unit(F)
    h = hplus if eps.norm == -1 else hplus // 2
    structure = cg.wide_structure()
    if structure.order != h:
        raise ArithmeticError(f"wide class group order {structure.order} != h = {h} for d = {F.d}")
    return h, structure


def place_roots(F: QuadraticField, p: int) -> list[int]:
    """Roots mod ``p`` of the minimal polynomial of ``w`` (one per place above a non-inert ``p``)."""
    t, m = F.trace_w, F.norm_w
    return [r for r in range(p) if (r * r - t * r - m) % p == 0]


def prime_ideal_form(F: QuadraticField, p: int, r: int) -> Form:
    """Form attached to the prime ``(p, w - r)`` via ``[a, (-b + sqrt D)/2] -> (a, b, c)``."""
    b = 2 * r - 1 if F.d % 4 == 1 else 2 * r
    return bqf.prime_form(F.discriminant, p, b)


def ideal_class_order(F: QuadraticField, p: int, bound: int = DEFAULT_DISC_BOUND) -> int:
    """Order in Cl(F) of a prime above ``p`` (imaginary fields)."""
    if F.is_real:
        raise QuadraticError("ideal_class_order is implemented for imaginary fields")
    F.check_bound(bound)
    if not is_prime(p):
        raise QuadraticError(f"{p} is not prime")
    roots = place_roots(F, p)
    if kronecker(F.discriminant, p) == -1 or not roots:
        raise QuadraticError(f"{p} is inert in Q(sqrt {F.d}): no ideal of norm {p}")
    cg = class_group(F)
    return cg.order_of(cg.class_of(prime_ideal_form(F, p, roots[0])))


__all__ = [
    "QuadraticField", "QElement", "QuadraticError", "DiscriminantBoundError", "PlaceDatum", "INF",
    "FundamentalUnit", "fundamental_unit", "class_number", "narrow_class_number", "splitting",
    "ideal_class_order", "class_group", "kronecker", "is_squarefree", "factorize", "is_prime",
    "ramified_primes", "place_roots", "prime_ideal_form", "DEFAULT_DISC_BOUND",
]
