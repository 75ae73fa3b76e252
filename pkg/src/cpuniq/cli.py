"""Command-line interface: check, tpairs, oracle, selftest.

Exit codes: 0 success, 1 invalid input or exhausted budget, 2 a theorem-level check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import sweeps
from .analysis import check_instance, oracle_rows, require_kind
from .corr import FinCorr, t_pairs
from .errors import BudgetExceeded, InternalInconsistency, InvalidInput
from .fintop import to_points
from .instances import load_instance, parse_instance

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


def cmd_check(args) -> int:
    doc = load_instance(args.file)
    report = check_instance(doc)
    print(report.to_json() if args.json else report.render())
    return EXIT_OK


def cmd_tpairs(args) -> int:
    doc = load_instance(args.file)
    require_kind(doc, "correspondence")
    c, j = doc.correspondence()
    pairs = t_pairs(c, j)
    print(f"J = {to_points(j)}")
    for p in pairs:
        print(f"  ({to_points(p.i)}, {to_points(p.i_prime)})")
    print(f"count: {len(pairs)}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = load_instance(args.file)
    rows = oracle_rows(doc, args.max_n, args.max_steps)
    width = max(len(r.condition) for r in rows)
    print(f"{'condition':{width}s}  fast   oracle agree")
    for r in rows:
        note = ""
        if r.bound and r.n_max < r.bound:
            note = f"  (n_max below stabilization bound {r.bound})"
        print(f"{r.condition:{width}s}  {str(r.fast).lower():6s} {str(r.reference).lower():6s} "
              f"{'yes' if r.agree else 'NO'}{note}")
    if all(r.agree for r in rows):
        print("all agree")
        return EXIT_OK
    print("disagreement found")
    return EXIT_VIOLATION


# ---------------------------------------------------------------- selftest


def _run_sharded(fn, kwargs: dict, workers: int) -> sweeps.Tally:
    if workers <= 1:
        return fn(**kwargs)
    total = sweeps.Tally()
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futs = [ex.submit(fn, **kwargs, shard=(i, workers)) for i in range(workers)]
        for f in futs:  # merged in shard order, so output does not depend on timing
            total.merge(f.result())
    return total


def _still_fails(name: str, doc: dict) -> bool:
    try:
        inst = parse_instance(doc)
    except InvalidInput:
        return False
    if inst.kind == "correspondence":
        return not sweeps.correspondence_checks(inst.obj).get(name, True)
    if inst.kind == "graph":
        return not sweeps.lattice_checks(inst.obj, inst.u).get(name, True)
    return True


def minimize(name: str, doc: dict) -> dict:
    """Greedy shrink: drop edges or lower multiplicities while the same check keeps failing."""
    doc = json.loads(json.dumps(doc))
    changed = True
    while changed:
        changed = False
        if doc["kind"] == "graph":
            for i in range(len(doc["edges"])):
                trial = dict(doc, edges=doc["edges"][:i] + doc["edges"][i + 1:])
                if _still_fails(name, trial):
                    doc, changed = trial, True
                    break
        elif doc["kind"] == "correspondence":
            for r, row in enumerate(doc["mult"]):
                for c, x in enumerate(row):
                    if x:
                        mult = [list(rr) for rr in doc["mult"]]
                        mult[r][c] -= 1
                        trial = dict(doc, mult=mult)
                        if _still_fails(name, trial):
                            doc, changed = trial, True
                            break
                if changed:
                    break
    return doc


def cmd_selftest(args) -> int:
    if args.size < 1 or args.max_mult < 1:
        raise InvalidInput("size and max-mult must be at least 1")
    workers = sweeps.worker_count()
    lattice_points = min(args.size, 3)
    suites = [
        (f"correspondences k<={args.size} entries<={args.max_mult}", sweeps.correspondence_sweep,
         {"size": args.size, "max_mult": args.max_mult}),
        (f"graphs on <={lattice_points} points x all topologies x all opens", sweeps.graph_lattice_sweep,
         {"n_points": lattice_points, "max_mult": args.max_mult}),
    ]
    results = []
    for label, fn, kw in suites:
        results.append((label, _run_sharded(fn, kw, workers)))
    results.append((f"random 5-point graphs (seed {args.seed})",
                    sweeps.random_lattice_sweep(args.random_count, args.seed)))
    results.append((f"dimension invariance (seed {args.seed})",
                    sweeps.dimension_invariance_sweep(args.dims_count, args.seed)))
    results.append(("quivers <=3 vertices <=4 edges", sweeps.quiver_sweep(min(args.size, 3), 4)))
    results.append(("endomorphisms <=3 points", sweeps.endomorphism_sweep(min(args.size, 3), args.max_mult)))

    bad = {}
    literal = {}
    for label, t in results:
        real = t.violations()
        print(f"{label}: {t.instances} instances, {sum(real.values())} violations")
        for name in sorted(t.checked):
            mark = ""
            if t.failed[name]:
                mark = "  <- contradicted as literally stated" if name in sweeps.LITERAL_FORMS else "  <- VIOLATED"
            print(f"  {name}: {t.checked[name]} checked, {t.failed[name]} failed{mark}")
        for name in real:
            bad.setdefault(name, t.examples[name])
        for name in t.failed:
            if name in sweeps.LITERAL_FORMS:
                literal.setdefault(name, t.examples[name])
    report = bad | literal if args.strict else bad
    if report:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, doc in sorted(report.items()):
            path = out / f"counterexample_{name}.json"
            path.write_text(json.dumps(minimize(name, doc), sort_keys=True, indent=2) + "\n", encoding="utf-8")
            print(f"counterexample for {name} written to {path}")
    if literal and not args.strict:
        print(f"{len(literal)} statement(s) fail in their literal form only; their corrected variants pass")
    if bad or (args.strict and literal):
        print("FAIL")
        return EXIT_VIOLATION
    print("PASS")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cpuniq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="analyse one instance file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true", help="emit a canonical JSON report")
    c.set_defaults(func=cmd_check)
    t = sub.add_parser("tpairs", help="list the T-pairs of a correspondence")
    t.add_argument("file")
    t.set_defaults(func=cmd_tpairs)
    o = sub.add_parser("oracle", help="compare fast checkers with literal-definition oracles")
    o.add_argument("file")
    o.add_argument("--max-n", type=int, required=True)
    o.add_argument("--max-steps", type=int, default=10**7)
    o.set_defaults(func=cmd_oracle)
    s = sub.add_parser("selftest", help="run the exhaustive and randomized verification sweeps")
    s.add_argument("--size", type=int, default=3)
    s.add_argument("--max-mult", type=int, default=2)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--random-count", type=int, default=1000)
    s.add_argument("--dims-count", type=int, default=200)
    s.add_argument("--out", default=".", help="directory for counterexample files")
    s.add_argument("--strict", action="store_true",
                   help="also fail on statements that only fail in their literal form")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
