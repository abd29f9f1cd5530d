"""Verification corpus: identity classes checked over many fields and groups."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .dataset import datum_to_inputs
from .formulas import (
    DUAL,
    NORM,
    dual_torus_class_number,
    global_h1_term,
    herbrand_identity_check,
    local_fixed_h1,
    norm_torus_class_number,
    quadratic_inputs,
)
from .groups import (
    Subgroup,
    all_subgroups,
    cyclic_group,
    direct_product,
    image_in_abelianization,
    klein_four,
    symmetric_group_s3,
)
from .places import PlaceDatum
from .quadratic.field import DEFAULT_DISC_BOUND, is_squarefree

GLOBAL_GROUPS = {
    "Z/2": lambda: cyclic_group(2),
    "Z/3": lambda: cyclic_group(3),
    "Z/4": lambda: cyclic_group(4),
    "Z/2xZ/2": klein_four,
    "S3": symmetric_group_s3,
    "Z/6": lambda: direct_product(cyclic_group(2), cyclic_group(3)),
}
LOCAL_GROUPS = {
    "Z/2": lambda: cyclic_group(2),
    "Z/4": lambda: cyclic_group(4),
    "Z/2xZ/2": klein_four,
}


@dataclass
class CheckClass:
    name: str
    passed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, what: str):
        if ok:
            self.passed += 1
        else:
            self.failures.append(what)

    def summary(self, counted: bool = True) -> str:
        if counted:
            return f"{self.name}: {self.passed}/{self.total} pass"
        return f"{self.name}: {'pass' if self.ok else 'FAIL'}"


def quadratic_corpus(disc_max: int = 500) -> list[int]:
    """Squarefree ``d`` with ``|disc Q(sqrt d)| <= disc_max``, ordered by ``d``."""
    out = []
    for d in range(-disc_max, disc_max + 1):
        if d in (0, 1) or not is_squarefree(d):
            continue
        disc = d if d % 4 == 1 else 4 * d
        if abs(disc) <= disc_max:
            out.append(d)
    return out


def small_primes(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


def _quadratic_case(args) -> tuple:
    """Herbrand and cyclic-consistency verdicts for one ``(d, S)``; runs in workers."""
    d, S, bound = args
    try:
        inputs = quadratic_inputs(d, S, bound)
        lhs, rhs, agree = herbrand_identity_check(inputs)
        n = norm_torus_class_number(inputs)
        u = dual_torus_class_number(inputs)
        consistent = n.ok and u.ok and n.h_result == u.h_result
        detail = f"norm {n.h_result}, dual {u.h_result}"
        return d, S, agree, f"{lhs} vs {rhs}", consistent, detail
    except ValueError as exc:
        return d, S, False, str(exc), False, str(exc)


def run_quadratic(ds, max_prime: int = 0, bound: int = DEFAULT_DISC_BOUND, jobs: int = 1):
    herbrand = CheckClass("herbrand-identity")
    cyclic = CheckClass("cyclic-consistency")
    cases = []
    for d in ds:
        cases.append((d, (), bound))
        cases.extend((d, (p,), bound) for p in small_primes(max_prime))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_quadratic_case, cases, chunksize=16))
    else:
        results = [_quadratic_case(c) for c in cases]
    for d, S, h_ok, h_detail, c_ok, c_detail in results:
        where = f"d={d} S={{inf{''.join(f',{p}' for p in S)}}}"
        herbrand.record(h_ok, f"{where}: {h_detail}")
        cyclic.record(c_ok, f"{where}: {c_detail}")
    return herbrand, cyclic


def run_global_h1() -> CheckClass:
    check = CheckClass("global-H1")
    for name, make in GLOBAL_GROUPS.items():
        G = make()
        for kind in (NORM, DUAL):
            closed, brute = global_h1_term(G, kind)
            check.record(closed == brute, f"{name} {kind}: closed {closed}, bar {brute}")
    return check


def local_pairs(G):
    subs = all_subgroups(G)
    for D in subs:
        for I in subs:
            if I.is_subgroup_of(D):
                yield D, I


def local_place(D: Subgroup, I: Subgroup) -> PlaceDatum:
    G = D.parent
    return PlaceDatum("local", I.order, D.order // I.order, G.order // D.order, D, I)


def run_local_terms() -> CheckClass:
    check = CheckClass("local-term")
    for name, make in LOCAL_GROUPS.items():
        G = make()
        for D, I in local_pairs(G):
            P = local_place(D, I)
            for kind in (NORM, DUAL):
                closed = image_in_abelianization(G, I) if kind == NORM else I.order
                brute = local_fixed_h1(G, P, kind)
                check.record(closed == brute, f"{name} D={D.elements} I={I.elements} {kind}: {closed} vs {brute}")
    return check


def run_dataset(result) -> CheckClass:
    """Every entry and S variant must give integral reports with agreeing crosschecks."""
    check = CheckClass("dataset")
    for err in result.errors:
        check.record(False, err)
    for E in result.entries:
        variants = [()] + [tuple(k.split(",")) for k in sorted(E.overrides)]
        for S in variants:
            where = f"{E.label} S={{{','.join(('inf',) + tuple(v for v in S if v != 'inf'))}}}"
            try:
                inputs = datum_to_inputs(E, S)
                n = norm_torus_class_number(inputs)
                u = dual_torus_class_number(inputs)
                ok = n.ok and u.ok
                if E.group.is_cyclic():
                    ok = ok and herbrand_identity_check(inputs)[2] and n.h_result == u.h_result
                check.record(ok, f"{where}: norm {n.h_result}, dual {u.h_result}")
            except ValueError as exc:
                check.record(False, f"{where}: {exc}")
    return check
