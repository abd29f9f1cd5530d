"""S-unit groups of quadratic fields as Z/2-modules, and S-class numbers.

The S-units are built from the lattice of exponent vectors (one coordinate per
place above a finite prime of S) whose ideal is principal.  A nonnegative
Hermite basis of that lattice gives integral generators, read off from the
multipliers collected while reducing the ideal's form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from ..linalg import hermite_basis, solve_integer
from ..modules import GModule, module_from_generators
from . import forms as bqf
from .forms import Form
from ..places import INF, parse_place
from .field import (
    DEFAULT_DISC_BOUND,
    QElement,
    QuadraticError,
    QuadraticField,
    class_group,
    class_number,
    fundamental_unit,
    kronecker,
    place_roots,
    prime_ideal_form,
)

class GeneratorNotFoundError(QuadraticError):
    pass


class FinitePlace(NamedTuple):
    """Place above ``p``; ``root`` is the residue of ``w`` (split primes only)."""

    p: int
    kind: str
    root: int | None

    @property
    def label(self) -> str:
        return f"p{self.p}" if self.root is None else f"p{self.p},{self.root}"


@dataclass(frozen=True)
class UnitModuleDescription:
    module: GModule
    generator_labels: tuple[str, ...]
    norm_of_fundamental_unit: int | None
    generators: tuple[QElement, ...] = ()
    places: tuple[FinitePlace, ...] = ()


def normalize_places(S: Iterable) -> tuple[bool, list[int]]:
    """``(has_infinity, sorted finite primes)``; validates every entry."""
    parsed = {parse_place(v) for v in S}
    return INF in parsed, sorted(v for v in parsed if v != INF)


def places_above(F: QuadraticField, p: int) -> list[FinitePlace]:
    k = kronecker(F.discriminant, p)
    if k == 1:
        return [FinitePlace(p, "split", r) for r in place_roots(F, p)]
    return [FinitePlace(p, "ramified" if k == 0 else "inert", None)]


def _hensel_root(F: QuadraticField, p: int, r: int, k: int) -> int:
    # lift a simple root of x^2 - t x - m from mod p to mod p^k
    t, m = F.trace_w, F.norm_w
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        f = r * r - t * r - m
        df = 2 * r - t
        r = (r - f * pow(df, -1, mod)) % mod
    return r


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation(alpha: QElement, w: FinitePlace) -> int:
    """Valuation of an integral ``alpha != 0`` at the place ``w``."""
    F = alpha.field
    N = int(alpha.norm())
    vN = _vp(N, w.p)
    if w.kind == "ramified":
        return vN
    if w.kind == "inert":
        return vN // 2
    lift = _hensel_root(F, w.p, w.root, vN + 1)
    x, y = int(alpha.x), int(alpha.y)
    # alpha = x + y w = x + y lift modulo a high power of the place
    r = (x + y * lift) % w.p ** (vN + 1)
    return vN + 1 if r == 0 else _vp(r, w.p)


def galois_permutation(F: QuadraticField, places: list[FinitePlace]) -> list[int]:
    """Index of ``sigma(w_i)`` among ``places``."""
    t = F.trace_w
    where = {(w.p, w.root): i for i, w in enumerate(places)}
    out = []
    for w in places:
        if w.root is None:
            out.append(where[(w.p, None)])
        else:
            out.append(where[(w.p, (t - w.root) % w.p)])
    return out


def _wide_class_of_place(F: QuadraticField, w: FinitePlace) -> int:
    cg = class_group(F)
    if w.root is None:
        roots = place_roots(F, w.p)
        form = prime_ideal_form(F, w.p, roots[0]) if roots else None
        if form is None:
            # inert: the place is (p), principal
            return cg.identity
    else:
        form = prime_ideal_form(F, w.p, w.root)
    return cg.wide_class(cg.class_of(form))


def principal_lattice(F: QuadraticField, places: list[FinitePlace]) -> list[list[int]]:
    """Hermite basis of exponent vectors ``x`` with ``prod w_i^{x_i}`` principal."""
    k = len(places)
    if k == 0:
        return []
    cg = class_group(F)
    gens = [_wide_class_of_place(F, w) for w in places]
    # spanning tree of the Cayley graph on <gens>; each non-tree edge is a relation
    one = cg.wide_class(cg.identity)
    vec = {one: [0] * k}
    frontier = [one]
    relations = []
    while frontier:
        nxt = []
        for x in frontier:
            for j, g in enumerate(gens):
                y = cg.wide_class(cg.mul(x, g))
                step = list(vec[x])
                step[j] += 1
                if y in vec:
                    rel = [a - b for a, b in zip(step, vec[y])]
                    if any(rel):
                        relations.append(rel)
                else:
                    vec[y] = step
                    nxt.append(y)
        frontier = nxt
    basis = hermite_basis(relations, k)
    if len(basis) != k:
        raise ArithmeticError("principal lattice is not of full rank")
    return basis


def _ideal_basis(F: QuadraticField, w: FinitePlace) -> list[QElement]:
    if w.kind == "inert":
        return [F.element(w.p), F.element(0, w.p)]
    r = w.root if w.root is not None else place_roots(F, w.p)[0]
    return [F.element(w.p), F.element(-r, 1)]


def _ideal_hnf(F: QuadraticField, gens: list[QElement]) -> tuple[int, int, int]:
    """``(a, b, c)`` with ideal ``= Z a + Z (b + c w)``, ``0 <= b < a``."""
    rows = [[int(g.y), int(g.x)] for g in gens]
    H = hermite_basis(rows, 2)
    (c, b), (_, a) = H
    return a, b % a, c


def _ideal_product(F: QuadraticField, I: list[QElement], J: list[QElement]) -> list[QElement]:
    a, b, c = _ideal_hnf(F, [x * y for x in I for y in J])
    return [F.element(a), F.element(b, c)]


def find_generator(F: QuadraticField, places: list[FinitePlace], exponents: list[int]) -> QElement:
    """Exact generator of ``prod w_i^{e_i}`` (``e_i >= 0``).

    The primitive part ``[A, B + w]`` of the ideal is walked through form
    reduction; each step multiplies the ideal by a known element, and the walk
    ends at a form with ``|a| = 1`` (the unit ideal).
    """
    ideal = [F.element(1), F.element(0, 1)]
    for w, e in zip(places, exponents):
        for _ in range(e):
            ideal = _ideal_product(F, ideal, _ideal_basis(F, w))
    a, b, c = _ideal_hnf(F, ideal)
    D = F.discriminant
    A, B = a // c, b // c
    bf = -2 * B - F.trace_w
    f = Form(A, bf, (bf * bf - D) // (4 * A))
    mult = F.element(1)
    sqrt_D = F.from_half(0, 2)
    limit = 64 + 8 * D.bit_length() ** 2 + 4 * len(class_group(F).reps) * (abs(D) if D > 0 else 1)
    steps = 0
    while True:
        if D < 0:
            # moving b by multiples of 2a leaves the ideal unchanged
            r = (f.a - f.b) // (2 * f.a)
            f = Form(f.a, f.b + 2 * r * f.a, f.a * r * r + f.b * r + f.c)
        if abs(f.a) == 1:
            break
        if steps > limit or (D < 0 and f.a < f.c and bqf.is_reduced_definite(f)):
            wanted = "*".join(f"{w.label}^{e}" for w, e in zip(places, exponents) if e)
            raise GeneratorNotFoundError(f"non-principal S-prime power generator not found within bound ({wanted})")
        # [a, beta] times conj(beta)/a is [c, conj(beta)]
        beta_bar = (F.element(-f.b) - sqrt_D) * Fraction(1, 2)
        mult = mult * beta_bar * Fraction(1, f.a)
        f = bqf.rho(f) if D > 0 else Form(f.c, -f.b, f.a)
        steps += 1
    alpha = mult.inverse() * c
    if not alpha.is_integral():
        raise ArithmeticError("principal generator is not integral")
    if [valuation(alpha, w) for w in places] != list(exponents):
        raise ArithmeticError("principal generator has the wrong valuations")
    return alpha


def _discrete_log_torsion(F: QuadraticField, u: QElement) -> int | None:
    for k, z in enumerate(F.torsion_units()):
        if z == u:
            return k
    return None


def _split_unit(F: QuadraticField, u: QElement, eps: QElement | None) -> tuple[int, int]:
    """``(a, t)`` with ``u = zeta^a eps^t``; ``zeta`` the torsion generator."""
    if u.norm() not in (1, -1) or not u.is_integral():
        raise ArithmeticError(f"{u} is not a unit")
    a = _discrete_log_torsion(F, u)
    if a is not None:
        return a, 0
    if eps is None:
        raise ArithmeticError(f"{u} is not a root of unity in an imaginary field")
    guess = round(_log_abs(u) / _log_abs(eps))
    for t in (guess, guess - 1, guess + 1):
        rest = u * eps ** (-t)
        a = _discrete_log_torsion(F, rest)
        if a is not None:
            return a, t
    raise ArithmeticError(f"could not write {u} as a signed power of the fundamental unit")


def _log_abs(x: QElement) -> float:
    d = x.field.d
    sd = Fraction(math.sqrt(d))
    w = (1 + sd) / 2 if d % 4 == 1 else sd
    val = x.x + x.y * w
    return math.log(abs(float(val)))


def _product(F: QuadraticField, elems: list[QElement], exps: list[int]) -> QElement:
    out = F.element(1)
    for e, k in zip(elems, exps):
        if k:
            out = out * e ** k
    return out


def unit_module(F: QuadraticField, S: Iterable, bound: int = DEFAULT_DISC_BOUND) -> UnitModuleDescription:
    """S'-units of ``F`` (S' = places above S) as a module over Gal = Z/2.

    Free coordinates: the fundamental unit (real fields) then one generator per
    Hermite basis vector of the principal lattice; one torsion coordinate for
    the roots of unity.
    """
    F.check_bound(bound)
    has_inf, primes = normalize_places(S)
    if not has_inf:
        raise QuadraticError("S must contain the infinite place")
    places = [w for p in primes for w in places_above(F, p)]
    perm = galois_permutation(F, places)
    basis = principal_lattice(F, places)
    alphas = [find_generator(F, places, b) for b in basis]
    real = F.is_real
    fu = fundamental_unit(F) if real else None
    eps = fu.element if fu else None
    k = len(places)
    tor = F.unit_torsion_order
    rank = k + (1 if real else 0)
    n = rank + 1
    M = [[0] * n for _ in range(n)]
    off = 1 if real else 0
    if real:
        M[0][0] = -1
        M[rank][0] = 1 if fu.norm == -1 else 0
    # sigma(zeta) = zeta^-1
    M[rank][rank] = tor - 1
    # columns of the basis matrix are the Hermite vectors
    B = [[basis[j][i] for j in range(k)] for i in range(k)]
    for j, (b, alpha) in enumerate(zip(basis, alphas)):
        moved = [0] * k
        for i in range(k):
            moved[perm[i]] = b[i]
        c = solve_integer(B, moved, k)
        if c is None:
            raise ArithmeticError("Galois image of a principal vector left the lattice")
        u = alpha.conj() / _product(F, alphas, c)
        a, t = _split_unit(F, u, eps)
        if real:
            M[0][off + j] = t
        for i in range(k):
            M[off + i][off + j] = c[i]
        M[rank][off + j] = a % tor
    G = F.galois_group
    module = module_from_generators(G, rank, (tor,), [1], [M])
    zeta = F.torsion_units()[1]
    labels = ([f"eps={eps}"] if real else []) + \
        [f"gen[{'*'.join(f'{w.label}^{e}' for w, e in zip(places, b) if e)}]={a}" for b, a in zip(basis, alphas)] + \
        [f"zeta{tor}={zeta}"]
    return UnitModuleDescription(module, tuple(labels), fu.norm if fu else None,
                                 tuple(([eps] if real else []) + alphas + [zeta]), tuple(places))


def s_class_number(F: QuadraticField, S: Iterable, bound: int = DEFAULT_DISC_BOUND) -> int:
    """``h / |subgroup of Cl generated by the places above S|``."""
    F.check_bound(bound)
    h, _ = class_number(F, bound)
    _, primes = normalize_places(S)
    places = [w for p in primes for w in places_above(F, p)]
    if not places:
        return h
    cg = class_group(F)
    gens = [_wide_class_of_place(F, w) for w in places]
    one = cg.wide_class(cg.identity)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = cg.wide_class(cg.mul(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return h // len(seen)


__all__ = [
    "UnitModuleDescription", "FinitePlace", "GeneratorNotFoundError", "unit_module", "s_class_number",
    "places_above", "valuation", "principal_lattice", "find_generator", "normalize_places",
]
