"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 a crosscheck disagreed or a class
number came out non-integral.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cohomology import DEGREES, tate_cohomology
from .dataset import (
    DatasetError,
    bundled_dataset_path,
    datum_to_inputs,
    dump_document,
    load_dataset,
    load_document,
)
from .formulas import DUAL, NORM, class_number_report, quadratic_inputs
from .groups import cyclic_group, group_from_permutations, klein_four, symmetric_group_s3
from .modules import standard_module
from .places import parse_place
from .quadratic.field import DEFAULT_DISC_BOUND
from .report import render_text, report_to_json
from .verify import quadratic_corpus, run_dataset, run_global_h1, run_local_terms, run_quadratic

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(ValueError):
    pass


def parse_primes(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        v = parse_place(item)
        if not isinstance(v, int):
            raise InputError("--S takes finite primes only; infinity is always included")
        if v in out:
            raise InputError(f"prime {v} listed twice in --S")
        out.append(v)
    return tuple(out)


def parse_group(spec: str):
    s = spec.strip().lower()
    if s.startswith("cyclic:"):
        try:
            n = int(s.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad cyclic group spec {spec!r}") from None
        if n < 1:
            raise InputError("cyclic group order must be positive")
        return cyclic_group(n)
    if s in ("klein4", "v4", "z2xz2"):
        return klein_four()
    if s == "s3":
        return symmetric_group_s3()
    if s.startswith("perm:"):
        # perm:1,0,2;0,2,1
        try:
            gens = [[int(x) for x in g.split(",")] for g in s[5:].split(";") if g.strip()]
        except ValueError:
            raise InputError(f"bad permutation spec {spec!r}") from None
        return group_from_permutations(gens)
    raise InputError(f"unknown group spec {spec!r} (use cyclic:n, klein4, s3 or perm:...)")


def _dataset_path(args):
    if getattr(args, "no_dataset", False):
        return None
    return args.dataset or bundled_dataset_path()


def _inputs(args):
    if (args.quadratic is None) == (args.label is None):
        raise InputError("give exactly one of --quadratic D or --label L")
    S = parse_primes(args.S)
    if args.quadratic is not None:
        return quadratic_inputs(args.quadratic, S, args.disc_bound)
    path = _dataset_path(args)
    if path is None:
        raise InputError("label requires --dataset")
    result = load_dataset(path)
    try:
        E = result.by_label(args.label)
    except DatasetError:
        bad = [e for e in result.errors if repr(args.label) in e]
        if bad:
            raise InputError(bad[0]) from None
        raise
    return datum_to_inputs(E, S, args.knot)


def cmd_torus(args, kind: str) -> int:
    report = class_number_report(_inputs(args), kind)
    if args.json:
        print(json.dumps(report_to_json(report), indent=2))
    else:
        print(render_text(report))
    return EXIT_OK if report.ok else EXIT_CHECK


def cmd_cohomology(args) -> int:
    if args.degree not in DEGREES:
        raise InputError(f"degree {args.degree} unsupported (supported: {', '.join(map(str, DEGREES))})")
    G = parse_group(args.group)
    M = standard_module(G, args.module)
    r = tate_cohomology(G, M, args.degree)
    if args.json:
        print(json.dumps({"invariant_factors": list(r.group.invariant_factors), "order": r.order,
                          "method": r.method}))
    else:
        print(f"{r.group} (order {r.order})")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.d:
        try:
            ds = [int(x) for x in args.d.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"bad --d list {args.d!r}") from None
    else:
        ds = quadratic_corpus(args.disc_max)
    herbrand, cyclic = run_quadratic(ds, args.max_prime, args.disc_bound, args.jobs)
    classes = [(herbrand, True), (cyclic, True), (run_global_h1(), False), (run_local_terms(), False)]
    path = _dataset_path(args)
    if path is not None:
        try:
            data = load_dataset(path)
        except DatasetError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CHECK
        classes.append((run_dataset(data), True))
    print("; ".join(c.summary(counted) for c, counted in classes))
    for c, _ in classes:
        for f in c.failures:
            print(f"FAIL {c.name}: {f}")
    return EXIT_OK if all(c.ok for c, _ in classes) else EXIT_CHECK


def cmd_dataset_check(args) -> int:
    path = args.dataset or bundled_dataset_path()
    result = load_dataset(path)
    for E in result.entries:
        print(f"ok    {E.label}")
    for err in result.errors:
        print(f"error {err}")
    # the normalized form must survive a reload unchanged
    doc = dump_document(result.entries)
    again = dump_document(load_document(json.loads(json.dumps(doc))).entries)
    if again != doc:
        print("error round-trip changed the normalized document")
        return EXIT_INPUT
    checks = run_dataset(result)
    print(checks.summary())
    for f in checks.failures:
        print(f"FAIL {f}")
    if result.errors:
        return EXIT_INPUT
    return EXIT_OK if checks.ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torusclass", description="Class numbers of algebraic tori over Q.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def field_args(q):
        q.add_argument("--quadratic", type=int, metavar="D", help="use Q(sqrt D)/Q")
        q.add_argument("--label", metavar="L", help="dataset entry label")
        q.add_argument("--S", metavar="P1,P2", help="finite primes added to S (infinity is implicit)")
        q.add_argument("--knot", type=int, help="knot number for a non-cyclic dataset entry")
        q.add_argument("--json", action="store_true", help="emit the JSON report")

    def data_args(q):
        q.add_argument("--dataset", metavar="PATH", help="dataset JSON (default: bundled)")
        q.add_argument("--no-dataset", action="store_true", help="do not load any dataset")
        q.add_argument("--disc-bound", type=int, default=DEFAULT_DISC_BOUND, metavar="N",
                       help="largest |discriminant| the quadratic oracle accepts")

    for name, helptext in ((NORM, "norm-one torus class number"), (DUAL, "dual torus class number")):
        q = sub.add_parser(name, help=helptext)
        field_args(q)
        data_args(q)

    q = sub.add_parser("cohomology", help="Tate cohomology of a standard lattice")
    q.add_argument("--group", required=True, help="cyclic:n | klein4 | s3 | perm:1,0,2;0,2,1")
    q.add_argument("--module", default="norm", choices=["trivial", "regular", "norm", "dual"])
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--json", action="store_true")

    q = sub.add_parser("verify", help="run the verification corpus")
    data_args(q)
    q.add_argument("--disc-max", type=int, default=500, metavar="N", help="corpus: |disc| <= N")
    q.add_argument("--d", metavar="D1,D2", help="explicit list of d instead of the corpus")
    q.add_argument("--max-prime", type=int, default=0, metavar="P",
                   help="also check S = {inf, p} for every prime p <= P")
    q.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")

    q = sub.add_parser("dataset-check", help="validate a dataset file")
    q.add_argument("--dataset", metavar="PATH", help="dataset JSON (default: bundled)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in (NORM, DUAL):
            return cmd_torus(args, args.command)
        if args.command == "cohomology":
            return cmd_cohomology(args)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_dataset_check(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
