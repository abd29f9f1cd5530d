"""Class numbers of norm-one and dual tori over Q, term by term.

Every closed-form term that has a cohomological meaning is paired with the
brute-force cohomology order, and both are kept in the report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable, Mapping

from .cohomology import (
    cyclic_tate_cohomology,
    fixed_points,
    h1_with_residual_action,
    herbrand_quotient,
    tate_cohomology,
)
from .groups import FiniteGroup, Subgroup, abelianization, image_in_abelianization
from .linalg import InfiniteQuotientError, cokernel_structure, kernel_structure
from .modules import GModule, restrict_module, standard_module
from .places import INF, PlaceDatum, place_key
from .quadratic.field import DEFAULT_DISC_BOUND, QuadraticField, ramified_primes, splitting
from .quadratic.units import s_class_number, unit_module

NORM = "norm"
DUAL = "dual"


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class TorusInputs:
    """Everything the formulas need for ``L/Q`` and a place set ``S`` (with infinity).

    ``places`` must cover every place in ``S`` and every ramified place.
    ``h_L`` is the S'-class number of ``L``; ``h_K`` that of the base.
    """

    label: str
    group: FiniteGroup
    units: GModule
    places: Mapping[object, PlaceDatum]
    S: tuple
    h_L: int
    h_K: int = 1
    knot: int | None = None
    unit_labels: tuple[str, ...] = ()

    def __post_init__(self):
        S = tuple(sorted(set(self.S), key=place_key))
        object.__setattr__(self, "S", S)
        if INF not in S:
            raise FormulaError("S must contain the infinite place")
        if self.units.group != self.group:
            raise FormulaError("unit module is over a different group")
        for v in S:
            if v not in self.places:
                raise FormulaError(f"no local data for place {v} in S")
        for v, P in self.places.items():
            if P.decomposition.parent != self.group:
                raise FormulaError(f"subgroups at place {v} belong to a different group")
        if self.h_L < 1 or self.h_K < 1:
            raise FormulaError("class numbers must be positive")
        if self.knot is not None and self.knot < 1:
            raise FormulaError("knot number must be positive")

    @property
    def ramified_outside_S(self) -> list[PlaceDatum]:
        return [self.places[v] for v in sorted(self.places, key=place_key)
                if v not in self.S and self.places[v].is_ramified]


@dataclass(frozen=True)
class Crosscheck:
    term: str
    closed_form: int
    brute_force: int
    asserted: bool = True

    @property
    def agree(self) -> bool:
        return self.closed_form == self.brute_force


@dataclass(frozen=True)
class ClassNumberReport:
    torus_kind: str
    extension_label: str
    S: tuple
    terms: dict
    h_result: Fraction
    tamagawa: Fraction
    crosschecks: tuple[Crosscheck, ...] = field(default=())

    @property
    def is_integral(self) -> bool:
        return self.h_result.denominator == 1 and self.h_result > 0

    @property
    def failed_crosschecks(self) -> list[Crosscheck]:
        return [c for c in self.crosschecks if c.asserted and not c.agree]

    @property
    def ok(self) -> bool:
        return self.is_integral and not self.failed_crosschecks


@lru_cache(maxsize=256)
def global_h1_term(G: FiniteGroup, kind: str) -> tuple[int, int]:
    """``(closed form, bar-complex order)`` of ``H^1`` of the character lattice."""
    if kind == NORM:
        closed = abelianization(G)[0].order
    elif kind == DUAL:
        closed = G.order
    else:
        raise FormulaError(f"unknown torus kind {kind!r}")
    brute = tate_cohomology(G, standard_module(G, kind), 1).order
    return closed, brute




def local_fixed_h1(G: FiniteGroup, P: PlaceDatum, kind: str) -> int:
    """Order of the ``D_w/I_w``-invariants of ``H^1(I_w, lattice)``."""
    return _local_fixed_h1(G, P.decomposition.elements, P.inertia.elements, kind)


@lru_cache(maxsize=1024)
def _local_fixed_h1(G: FiniteGroup, decomposition: tuple, inertia: tuple, kind: str) -> int:
    Dw = Subgroup(G, decomposition)
    D = Dw.as_group()
    I = Subgroup(D, [Dw.index_of(x) for x in inertia])
    M = restrict_module(standard_module(G, kind), Dw)
    return fixed_points(h1_with_residual_action(D, I, M)).order


def local_terms(inputs: TorusInputs, kind: str) -> tuple[int, int, list[Crosscheck]]:
    """``(product over S, product over ramified v outside S, per-place checks)``."""
    G = inputs.group
    abelian = G.is_abelian()
    if kind == NORM:
        product_S = prod(image_in_abelianization(G, inputs.places[v].decomposition) for v in inputs.S)
    else:
        product_S = 1
    product_notS = 1
    checks = []
    for P in inputs.ramified_outside_S:
        if kind == NORM:
            closed = image_in_abelianization(G, P.inertia)
        else:
            closed = P.inertia.order
        product_notS *= closed
        checks.append(Crosscheck(f"e_{P.place}", closed, local_fixed_h1(G, P, kind), asserted=abelian))
    return product_S, product_notS, checks


def _unit_term(inputs: TorusInputs, degree: int) -> tuple[int, list[Crosscheck]]:
    G, U = inputs.group, inputs.units
    order = tate_cohomology(G, U, degree).order
    checks = []
    if G.is_cyclic():
        fast = cyclic_tate_cohomology(G, U, degree).order
        checks.append(Crosscheck(f"H{degree}_units", order, fast))
    return order, checks


def _knot(inputs: TorusInputs) -> int:
    if inputs.group.is_cyclic():
        if inputs.knot not in (None, 1):
            raise FormulaError("knot number of a cyclic extension must be 1")
        return 1
    if inputs.knot is None:
        raise FormulaError("knot number required for non-cyclic group")
    return inputs.knot


def norm_torus_class_number(inputs: TorusInputs) -> ClassNumberReport:
    G = inputs.group
    knot = _knot(inputs)
    gab, gab_brute = global_h1_term(G, NORM)
    h0, unit_checks = _unit_term(inputs, 0)
    product_S, product_notS, local_checks = local_terms(inputs, NORM)
    terms = {
        "h_L_S": inputs.h_L,
        "h_K_S": inputs.h_K,
        "global_H1": gab,
        "unit_cohomology": h0,
        "knot": knot,
    }
    for v in inputs.S:
        terms[f"local_degree[{v}]"] = image_in_abelianization(G, inputs.places[v].decomposition)
    terms["local_product_S"] = product_S
    terms["ramification_product"] = product_notS
    h = Fraction(inputs.h_L * gab * h0, inputs.h_K * knot * product_S * product_notS)
    tau = Fraction(gab, knot)
    terms["tamagawa"] = tau
    checks = [Crosscheck("global_H1", gab, gab_brute)] + unit_checks + local_checks
    return ClassNumberReport(NORM, inputs.label, inputs.S, terms, h, tau, tuple(checks))


def dual_torus_class_number(inputs: TorusInputs) -> ClassNumberReport:
    G = inputs.group
    order, order_brute = global_h1_term(G, DUAL)
    h1, unit_checks = _unit_term(inputs, 1)
    _, product_notS, local_checks = local_terms(inputs, DUAL)
    terms = {
        "h_L_S": inputs.h_L,
        "h_K_S": inputs.h_K,
        "global_H1": order,
        "unit_cohomology": h1,
        "ramification_product": product_notS,
    }
    h = Fraction(inputs.h_L * h1, inputs.h_K * product_notS)
    tau = Fraction(order)
    terms["tamagawa"] = tau
    checks = [Crosscheck("global_H1", order, order_brute)] + unit_checks + local_checks
    return ClassNumberReport(DUAL, inputs.label, inputs.S, terms, h, tau, tuple(checks))


def class_number_report(inputs: TorusInputs, kind: str) -> ClassNumberReport:
    if kind == NORM:
        return norm_torus_class_number(inputs)
    if kind == DUAL:
        return dual_torus_class_number(inputs)
    raise FormulaError(f"unknown torus kind {kind!r}")


def herbrand_identity_check(inputs: TorusInputs) -> tuple[Fraction, Fraction, bool]:
    """Herbrand quotient of the S-units against ``prod_{v in S} |D_w| / |G|``."""
    G = inputs.group
    if not G.is_cyclic():
        raise FormulaError("Herbrand identity needs a cyclic group")
    lhs = herbrand_quotient(G, inputs.units)
    rhs = Fraction(prod(inputs.places[v].decomposition.order for v in inputs.S), G.order)
    return lhs, rhs, lhs == rhs


def q_quotient(A, source_moduli: Iterable[int], target_moduli: Iterable[int]) -> Fraction:
    """``[coker] / [ker]`` of the map given by ``A`` (columns = images of source generators)."""
    src, tgt = tuple(source_moduli), tuple(target_moduli)
    if len(A) != len(tgt) or any(len(row) != len(src) for row in A):
        raise FormulaError("matrix shape does not match the presentations")
    try:
        cok = cokernel_structure(A, src, tgt).order
        ker = kernel_structure(A, src, tgt).order
    except InfiniteQuotientError:
        raise FormulaError("infinite kernel or cokernel") from None
    return Fraction(cok, ker)


def quadratic_inputs(d: int, S: Iterable = (), bound: int | None = None) -> TorusInputs:
    """Inputs for ``Q(sqrt d)/Q``; infinity is always added to ``S``."""
    bound = DEFAULT_DISC_BOUND if bound is None else bound
    F = QuadraticField(d)
    S = tuple(S) + (INF,)
    U = unit_module(F, S, bound)
    Sset = {INF} | {p.p for p in U.places}
    places = {v: splitting(F, v) for v in Sset | set(ramified_primes(F))}
    label = f"Q(sqrt({d}))/Q"
    return TorusInputs(label, F.galois_group, U.module, places, tuple(Sset),
                       s_class_number(F, S, bound), 1, 1, U.generator_labels)


__all__ = [
    "NORM", "DUAL", "FormulaError", "TorusInputs", "Crosscheck", "ClassNumberReport", "global_h1_term",
    "local_terms", "local_fixed_h1", "norm_torus_class_number", "dual_torus_class_number",
    "class_number_report", "herbrand_identity_check", "q_quotient", "quadratic_inputs",
]
