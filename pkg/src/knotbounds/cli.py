"""Command-line interface.

Exit codes: 0 success, 1 assertion violations, 2 parse/validation
errors, 3 resource limit exceeded, 4 operation requires a knot,
5 degenerate projection.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import pipeline, skein
from .corpus import corpus_entry, corpus_load, default_corpus_dir
from .diagrams import parse_pd
from .errors import (
    DegenerateProjection,
    KnotboundsError,
    NotAKnot,
    ResourceLimit,
)
from .lattice import (
    insert_kink,
    lattice_text,
    linking_number_by_projection,
    parse_lattice,
    project,
    pushoff_diagonal,
    scale2,
    select_special_edge,
    validate,
)
from .moves import simplify
from .satellite import reverse_parallel

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_NOT_KNOT = 4
EXIT_DEGENERATE = 5


def _read(path):
    with open(path) as fh:
        return fh.read()


def _engine(args):
    return skein.SkeinEngine(max_nodes=args.node_budget)


def cmd_poly(args):
    d = parse_pd(_read(args.diagram))
    engine = _engine(args)
    if args.simplify:
        d = simplify(d)
    p = engine.homfly(d) if args.kind == "homfly" else engine.kauffman(d)
    print(p.to_text())
    return EXIT_OK


def cmd_satellite(args):
    d = parse_pd(_read(args.diagram))
    L = reverse_parallel(d, args.framing)
    achieved = L.linking_number(0, 1)
    print(L.pd_text())
    print(f"# linking number {achieved}", file=sys.stderr)
    if achieved != args.framing:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_lattice(args):
    obj = parse_lattice(_read(args.file))
    if args.op == "validate":
        if hasattr(obj, "components"):
            for comp in obj.components:
                validate(comp)
            print(f"ok, {len(obj.components)} components, "
                  f"total length {obj.total_length()}")
        else:
            validate(obj)
            print(f"ok, length {obj.length()}")
        return EXIT_OK
    if args.op == "scale2":
        print(lattice_text(scale2(obj)), end="")
        return EXIT_OK
    if args.op == "pushoff":
        print(lattice_text(pushoff_diagonal(obj)), end="")
        return EXIT_OK
    if args.op == "kink":
        link = pushoff_diagonal(obj)
        edge = select_special_edge(obj)
        before = linking_number_by_projection(link, rng_seed=args.seed)
        kinked = insert_kink(link, edge, args.sign, rng_seed=args.seed)
        after = linking_number_by_projection(kinked, rng_seed=args.seed)
        print(lattice_text(kinked), end="")
        print(
            f"# dlength={kinked.total_length() - link.total_length():+d} "
            f"dlk={after - before:+d}",
            file=sys.stderr,
        )
        return EXIT_OK
    if args.op == "project":
        d = project(obj, retries=args.retries, rng_seed=args.seed)
        print(d.pd_text())
        return EXIT_OK
    raise AssertionError(args.op)


def _write_report(args, name, report_dict, csv_rows, csv_header):
    out_dir = args.out
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, f"{name}.json")
    with open(json_path, "w") as fh:
        json.dump(report_dict, fh, sort_keys=True, indent=2)
        fh.write("\n")
    csv_path = os.path.join(out_dir, f"{name}.csv")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header)
    for row in csv_rows:
        writer.writerow(row)
    with open(csv_path, "w") as fh:
        fh.write(buf.getvalue())
    print(f"wrote {json_path} and {csv_path}")


_FRAMING_CSV = [
    "knot", "framing", "linkingNumber", "satelliteCrossings", "skipped",
    "breadthV", "mfwBound", "exceptional", "boundSatisfied",
]


def _framing_rows(knot_id, records):
    return [
        [
            knot_id, r.f, r.lk, r.crossings, r.skipped, r.breadth, r.mfw,
            r.exceptional, r.bound_ok,
        ]
        for r in records
    ]


def cmd_verify(args):
    engine = _engine(args)
    entry = corpus_entry(args.knot, args.corpus)
    K = entry.diagram
    config = pipeline.RunConfig(
        crossing_budget=args.crossing_budget,
        node_budget=args.node_budget,
        projection_retries=args.retries,
        seed=args.seed,
        improved_constants=args.improved_constants,
    )
    conventions = pipeline.pin_conventions(engine)

    if args.check == "cromwell":
        breadth, ok = pipeline.cromwell_check(K, engine)
        payload = {
            "knot": entry.knot_id,
            "crossingNumber": entry.crossing_number,
            "kauffmanMod2BreadthV": breadth,
            "holds": ok,
        }
        _write_report(
            args, f"cromwell_{entry.knot_id}", payload,
            [[entry.knot_id, breadth, entry.crossing_number, ok]],
            ["knot", "breadthV", "crossingNumber", "holds"],
        )
        print(f"cromwell {entry.knot_id}: breadth {breadth} >= "
              f"{entry.crossing_number}: {ok}")
        return EXIT_OK if ok else EXIT_VIOLATION

    if args.check == "congruence":
        exc = pipeline.exceptional_framings(K, conventions, engine)
        framings = _congruence_framings(args, K, exc, config, conventions)
        rows = []
        all_ok = True
        for f in framings:
            ok = pipeline.rudolph_check(K, f, conventions, engine)
            all_ok &= ok
            rows.append([entry.knot_id, f, conventions.lk_of(f), ok])
            print(f"congruence {entry.knot_id} f={f}: {ok}")
        payload = {
            "knot": entry.knot_id,
            "framings": framings,
            "verdicts": {str(f): bool(r[3]) for f, r in zip(framings, rows)},
            "kauffmanConventionUsed": conventions.describe(),
            "holds": all_ok,
        }
        _write_report(
            args, f"congruence_{entry.knot_id}", payload, rows,
            ["knot", "framing", "linkingNumber", "holds"],
        )
        return EXIT_OK if all_ok else EXIT_VIOLATION

    if args.check == "lemma1":
        window = args.window
        exc, records = pipeline.lemma1_check(
            K, window=window, config=config, conventions=conventions,
            engine=engine,
        )
        violations = [
            r for r in records if r.bound_ok is False and not r.skipped
        ]
        payload = {
            "knot": entry.knot_id,
            "crossingNumber": entry.crossing_number,
            "alpha": exc.alpha,
            "beta": exc.beta,
            "threshold": 2 * entry.crossing_number + 2,
            "framings": [r.as_dict() for r in records],
            "kauffmanConventionUsed": conventions.describe(),
            "violations": len(violations),
        }
        _write_report(
            args, f"lemma1_{entry.knot_id}", payload,
            _framing_rows(entry.knot_id, records), _FRAMING_CSV,
        )
        for r in records:
            state = (
                "skipped" if r.skipped
                else "exceptional" if r.exceptional
                else ("ok" if r.bound_ok else "VIOLATION")
            )
            print(f"lemma1 {entry.knot_id} f={r.f}: breadth={r.breadth} {state}")
        return EXIT_OK if not violations else EXIT_VIOLATION

    if args.check == "theorem":
        lattice_file = args.lattice or entry.lattice_path
        if not lattice_file:
            print(f"{entry.knot_id}: no lattice embedding available",
                  file=sys.stderr)
            return EXIT_PARSE
        embedding = parse_lattice(_read(lattice_file))
        report = pipeline.theorem_chain(
            K, embedding, entry.knot_id, config, conventions, engine
        )
        holds = pipeline.chain_holds(report)
        payload = report.as_dict()
        payload["holds"] = holds
        rows = [
            [
                entry.knot_id, name, row["lk"], row["length"],
                row["breadth"], row["mfw"],
            ]
            for name, row in report.chain["satellites"].items()
        ]
        _write_report(
            args, f"theorem_{entry.knot_id}", payload, rows,
            ["knot", "link", "lk", "length", "breadthV", "mfwBound"],
        )
        for label, value in report.bounds.items():
            print(f"theorem {entry.knot_id}: {label} = {value['fraction']}"
                  f" = {value['value']:.6g}")
        print(f"theorem {entry.knot_id}: chain holds: {holds}")
        return EXIT_OK if holds else EXIT_VIOLATION

    raise AssertionError(args.check)


def _congruence_framings(args, K, exc, config, conventions):
    if args.framings:
        lo, hi = args.framings
        return list(range(lo, hi + 1))
    # default: the five cheapest framings around the blackboard value
    from .satellite import blackboard_framing

    lk0 = blackboard_framing(K)
    lks = sorted(range(lk0 - 4, lk0 + 5), key=lambda lk: (abs(lk - lk0), lk))
    out = []
    for lk in lks:
        size = 4 * K.crossing_count() + 2 * abs(lk - lk0)
        if size <= config.crossing_budget:
            out.append(conventions.f_of(lk))
        if len(out) == 5:
            break
    return sorted(out)


def cmd_corpus(args):
    entries = corpus_load(args.corpus)
    if not entries:
        print("warning: empty corpus", file=sys.stderr)
        return EXIT_OK
    for e in entries:
        lat = os.path.basename(e.lattice_path) if e.lattice_path else "-"
        print(f"{e.knot_id}: Cr={e.crossing_number} writhe={e.chirality or '?'} "
              f"lattice={lat}")
    return EXIT_OK


def _span(text):
    lo, hi = text.split(":")
    return int(lo), int(hi)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="knotbounds",
        description="Knot polynomial engines, satellite and lattice "
        "constructions, and braid-index bound reports.",
    )
    ap.add_argument("--node-budget", type=int,
                    default=skein.DEFAULT_NODE_BUDGET,
                    help="skein recursion node budget")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for projection retry directions")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="compute a link polynomial")
    p.add_argument("kind", choices=["homfly", "kauffman"])
    p.add_argument("diagram", help="PD-code file")
    p.add_argument("--simplify", action="store_true",
                   help="reduce the diagram before the skein recursion")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("satellite", help="reverse parallel of a knot diagram")
    p.add_argument("diagram", help="PD-code file (one component)")
    p.add_argument("--framing", type=int, required=True,
                   help="target linking number")
    p.set_defaults(func=cmd_satellite)

    p = sub.add_parser("lattice", help="cubic-lattice operations")
    p.add_argument("op", choices=["validate", "scale2", "pushoff", "kink",
                                  "project"])
    p.add_argument("file", help="lattice file")
    p.add_argument("--sign", type=int, default=1, choices=[1, -1],
                   help="kink handedness")
    p.add_argument("--retries", type=int, default=20,
                   help="projection retry budget")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", help="run a verification check")
    p.add_argument("check", choices=["congruence", "lemma1", "theorem",
                                     "cromwell"])
    p.add_argument("--knot", required=True, help="corpus knot id")
    p.add_argument("--corpus", default=None,
                   help="corpus directory (default: packaged data or "
                   "$KNOTBOUNDS_CORPUS)")
    p.add_argument("--lattice", default=None, help="lattice file override")
    p.add_argument("--framings", type=_span, default=None,
                   metavar="LO:HI", help="framing range for congruence")
    p.add_argument("--window", type=_span, default=None,
                   metavar="LO:HI", help="framing window for lemma1")
    p.add_argument("--crossing-budget", type=int, default=20,
                   help="satellite crossing budget")
    p.add_argument("--retries", type=int, default=20)
    p.add_argument("--improved-constants", action="store_true",
                   help="also emit the 1/12 and 1/51 variants")
    p.add_argument("--out", default="reports", help="report directory")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="list and validate the corpus")
    p.add_argument("--corpus", default=None)
    p.set_defaults(func=cmd_corpus)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except NotAKnot as exc:
        print(f"not a knot: {exc}", file=sys.stderr)
        return EXIT_NOT_KNOT
    except DegenerateProjection as exc:
        print(f"degenerate projection: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (KnotboundsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
