"""Command-line front end: compute, hypercube, complex, verify.

Exit status: 0 when every reported check passed, 1 when a check failed,
2 on parse or validation errors (reported as a JSON object on stderr).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from .complexes import ComplexError, build_differentials, check_nilpotent, complex_dump
from .diagram import DiagramError, KnotDiagram, label_key, parse_braid_word, parse_pd_code
from .gradedalg import LaurentPoly1, LaurentPoly2, _is_prime
from .homology import homology_dims, superpolynomial
from .hypercube import (DEFAULT_MAX_CROSSINGS, ResourceCapError, build_hypercube,
                        hypercube_dump, reduced_jones, state_sum_jones)

BUNDLED_TABLE = "knots.jsonl"


class CliError(Exception):
    """Input problem that should terminate with status 2."""


@dataclass
class KnotTableEntry:
    name: str
    pd: str
    expected_jones: LaurentPoly1 | None = None


@dataclass
class RunReport:
    """Per-diagram results plus pass/fail flags; JSON-serializable."""
    entries: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(all(e.get("checks", {}).values()) for e in self.entries)

    def summary(self) -> dict:
        failed = [e["name"] for e in self.entries
                  if not all(e.get("checks", {}).values())]
        return {"total": len(self.entries),
                "passed": len(self.entries) - len(failed),
                "failed": failed}

    def to_json(self) -> str:
        payload = {"entries": self.entries, "summary": self.summary()}
        return json.dumps(payload, sort_keys=True, indent=2)


def _fmt(poly, fmt: str):
    if fmt == "latex":
        return poly.to_latex()
    if fmt == "json":
        return poly.to_text()
    return poly.to_text()


def _parse_field(text: str) -> int | None:
    if text == "q":
        return None
    try:
        p = int(text)
    except ValueError:
        raise CliError(f"--field must be 'q' or a prime, got {text!r}")
    if p < 2 or not _is_prime(p):
        raise CliError(f"--field modulus {p} is not prime")
    return p


def _load_diagram(args) -> KnotDiagram:
    if args.pd is not None:
        try:
            text = open(args.pd).read() if args.pd != "-" else sys.stdin.read()
        except OSError as exc:
            raise CliError(f"cannot read PD file: {exc}")
        diagram = parse_pd_code(text, marked_edge=args.marked)
    elif args.braid is not None:
        if args.strands is None:
            raise CliError("--braid requires --strands")
        diagram = parse_braid_word(args.braid, args.strands,
                                   marked_edge=args.marked)
    else:
        raise CliError("need --braid WORD --strands N or --pd FILE")
    problems = diagram.violations()
    if problems:
        raise CliError("invalid diagram: " + "; ".join(problems))
    return diagram


def _max_crossings(args) -> int:
    if args.max_crossings is not None:
        return args.max_crossings
    env = os.environ.get("KHOVA_MAX_CROSSINGS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"KHOVA_MAX_CROSSINGS must be an integer, got {env!r}")
    return DEFAULT_MAX_CROSSINGS


# --- compute ------------------------------------------------------------------

def _compute_one(diagram: KnotDiagram, reduced: bool, modulus: int | None,
                 max_crossings: int) -> dict:
    hc = build_hypercube(diagram, max_crossings=max_crossings)
    jones = state_sum_jones(hc)
    cx = build_differentials(hc, reduced=reduced,
                             marked=diagram.default_marked_edge() if reduced else None)
    table = homology_dims(cx, modulus)
    p = superpolynomial(table, diagram.n_black, diagram.n_white, reduced)
    target = reduced_jones(jones) if reduced else jones
    checks = {
        "d_squared_zero": not check_nilpotent(cx),
        # Euler specialization is field-independent (rank-nullity).
        "euler_matches_state_sum": p.value.evaluate_T(-1) == target,
    }
    return {
        "reduced": reduced,
        "jones": target,
        "superpolynomial": p.value,
        "homology": table,
        "checks": checks,
    }


def cmd_compute(args) -> int:
    diagram = _load_diagram(args)
    modulus = _parse_field(args.field)
    cap = _max_crossings(args)
    which = []
    if args.mode in ("unreduced", "both"):
        which.append(False)
    if args.mode in ("reduced", "both"):
        which.append(True)

    start = time.monotonic()
    results = [_compute_one(diagram, r, modulus, cap) for r in which]
    elapsed = time.monotonic() - start

    report = RunReport()
    entry = {
        "name": args.braid if args.braid is not None else args.pd,
        "crossings": len(diagram.crossings),
        "field": args.field,
        "elapsed_s": round(elapsed, 3),
        "results": [
            {"reduced": r["reduced"],
             "jones": r["jones"].to_text(),
             "superpolynomial": r["superpolynomial"].to_text(),
             "homology": [[i, p.to_text()] for i, p in enumerate(r["homology"])]}
            for r in results
        ],
        "checks": {f"{'reduced' if r['reduced'] else 'unreduced'}.{k}": v
                   for r in results for k, v in r["checks"].items()},
    }
    report.entries.append(entry)

    if args.format == "json":
        print(report.to_json())
    else:
        for r in results:
            label = "reduced" if r["reduced"] else "unreduced"
            print(f"[{label}]")
            print(f"  jones          = {_fmt(r['jones'], args.format)}")
            print(f"  superpolynomial = {_fmt(r['superpolynomial'], args.format)}")
            for i, p in enumerate(r["homology"]):
                if p:
                    print(f"  dim_q H_{i}     = {_fmt(p, args.format)}")
            for k, v in r["checks"].items():
                print(f"  check {k}: {'pass' if v else 'FAIL'}")
    return 0 if report.ok else 1


# --- structure dumps ----------------------------------------------------------

def cmd_hypercube(args) -> int:
    diagram = _load_diagram(args)
    hc = build_hypercube(diagram, max_crossings=_max_crossings(args))
    dump = hypercube_dump(hc)
    if args.format == "json":
        print(json.dumps(dump, sort_keys=True, indent=2))
    else:
        print(f"crossings: {dump['crossings']}  r_c: {dump['r_c']}")
        for v in dump["vertices"]:
            cyc = " ".join("(" + "".join(c) + ")" for c in v["cycles"])
            print(f"  {v['label']} d={v['distance']} {cyc}")
        for e in dump["edges"]:
            print(f"  {e['star_label']}: {e['source']} -> {e['target']} "
                  f"{e['kind']} sign {e['sign']:+d}")
    return 0


def cmd_complex(args) -> int:
    diagram = _load_diagram(args)
    hc = build_hypercube(diagram, max_crossings=_max_crossings(args))
    cx = build_differentials(
        hc, reduced=args.mode == "reduced",
        marked=diagram.default_marked_edge() if args.mode == "reduced" else None)
    dump = complex_dump(cx)
    if args.format == "json":
        print(json.dumps(dump, sort_keys=True, indent=2))
    else:
        print(f"reduced: {dump['reduced']}  marked: {dump['marked_edge']}")
        for i, q in enumerate(dump["qdims"]):
            print(f"  qdim C_{i} = {q}")
        for b in dump["blocks"]:
            print(f"  d_{b['degree']}^({b['qdeg']}): "
                  f"{b['rows']}x{b['cols']}, {b['nonzeros']} nonzero")
    return 0


# --- verify -------------------------------------------------------------------

def load_knot_table(path) -> list[KnotTableEntry]:
    """Parse an NDJSON knot table: records {name, pd, jones}."""
    entries = []
    seen = set()
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CliError(f"{path}:{lineno}: bad JSON ({exc.msg})")
            if not isinstance(rec, dict) or "name" not in rec or "pd" not in rec:
                raise CliError(f"{path}:{lineno}: record needs 'name' and 'pd'")
            name = rec["name"]
            if name in seen:
                raise CliError(f"{path}:{lineno}: duplicate name {name!r}")
            seen.add(name)
            try:
                diagram = parse_pd_code(rec["pd"])
                problems = diagram.violations()
            except DiagramError as exc:
                raise CliError(f"{path}:{lineno}: record {name!r}: {exc}")
            if problems:
                raise CliError(f"{path}:{lineno}: record {name!r}: "
                               + "; ".join(problems))
            expected = None
            if rec.get("jones"):
                try:
                    expected = LaurentPoly1.from_text(rec["jones"])
                except ValueError as exc:
                    raise CliError(f"{path}:{lineno}: record {name!r}: {exc}")
            entries.append(KnotTableEntry(name, rec["pd"], expected))
    return entries


def _verify_entry(payload) -> dict:
    """Worker for batch verification; plain-data in, plain-data out."""
    name, pd_text, expected_text, max_crossings = payload
    start = time.monotonic()
    checks = {}
    try:
        diagram = parse_pd_code(pd_text)
        hc = build_hypercube(diagram, max_crossings=max_crossings)
        jones = state_sum_jones(hc)
        if expected_text is not None:
            expected = LaurentPoly1.from_text(expected_text)
            checks["jones_matches_expected"] = jones == expected

        cx = build_differentials(hc)
        checks["unreduced.d_squared_zero"] = not check_nilpotent(cx)
        p = superpolynomial(homology_dims(cx),
                            diagram.n_black, diagram.n_white, False)
        checks["unreduced.euler_matches_state_sum"] = \
            p.value.evaluate_T(-1) == jones

        jr = reduced_jones(jones)
        marks = sorted(diagram.edges, key=label_key)[:2]
        values = []
        for mark in marks:
            cxr = build_differentials(hc, reduced=True, marked=mark)
            checks[f"reduced.d_squared_zero[{mark}]"] = not check_nilpotent(cxr)
            pr = superpolynomial(homology_dims(cxr),
                                 diagram.n_black, diagram.n_white, True)
            values.append(pr.value)
        checks["reduced.euler_matches_state_sum"] = \
            values[0].evaluate_T(-1) == jr
        checks["reduced.marked_edge_invariance"] = \
            all(v == values[0] for v in values)
        result = {"jones": jones.to_text(),
                  "reduced_superpolynomial": values[0].to_text()}
    except (DiagramError, ComplexError, ResourceCapError, ValueError) as exc:
        checks["computation"] = False
        result = {"error": str(exc)}
    return {"name": name,
            "checks": checks,
            "elapsed_s": round(time.monotonic() - start, 3),
            **result}


def batch_verify(entries: list[KnotTableEntry], max_crossings: int,
                 jobs: int = 1) -> RunReport:
    """Run the per-entry check suite; results merged in input order."""
    payloads = [(e.name, e.pd,
                 None if e.expected_jones is None else e.expected_jones.to_text(),
                 max_crossings)
                for e in entries]
    report = RunReport()
    if jobs > 1 and len(payloads) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            report.entries = list(pool.map(_verify_entry, payloads))
    else:
        report.entries = [_verify_entry(p) for p in payloads]
    return report


def _bundled_table_path():
    return resources.files("khova").joinpath("data", BUNDLED_TABLE)


def cmd_verify(args) -> int:
    if args.table is not None:
        entries = load_knot_table(args.table)
    else:
        with resources.as_file(_bundled_table_path()) as path:
            entries = load_knot_table(path)
    report = batch_verify(entries, _max_crossings(args), jobs=args.jobs)
    if args.format == "json":
        print(report.to_json())
    else:
        for e in report.entries:
            bad = [k for k, v in e["checks"].items() if not v]
            status = "pass" if not bad else "FAIL " + ", ".join(bad)
            print(f"{e['name']}: {status} ({e['elapsed_s']}s)")
        s = report.summary()
        print(f"{s['passed']}/{s['total']} entries passed")
    return 0 if report.ok else 1


# --- argument wiring ----------------------------------------------------------

def _add_diagram_args(sub, with_marked=True):
    sub.add_argument("--braid", help="comma/space separated signed letters")
    sub.add_argument("--strands", type=int, help="braid strand count")
    sub.add_argument("--pd", help="path to a PD code file ('-' for stdin)")
    if with_marked:
        sub.add_argument("--marked", help="marked edge label")
    sub.add_argument("--max-crossings", type=int, default=None,
                     help=f"hypercube cap (default {DEFAULT_MAX_CROSSINGS}, "
                          "env KHOVA_MAX_CROSSINGS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khova",
        description="Exact Khovanov homology and Jones superpolynomials.")
    subs = parser.add_subparsers(dest="command", required=True)

    compute = subs.add_parser("compute", help="invariants of one diagram")
    _add_diagram_args(compute)
    mode = compute.add_mutually_exclusive_group()
    mode.add_argument("--reduced", dest="mode", action="store_const",
                      const="reduced")
    mode.add_argument("--unreduced", dest="mode", action="store_const",
                      const="unreduced")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    compute.set_defaults(mode="both")
    compute.add_argument("--field", default="q",
                         help="coefficients: q (rationals) or a prime")
    compute.add_argument("--format", choices=("text", "json", "latex"),
                         default="text")
    compute.set_defaults(run=cmd_compute)

    hyper = subs.add_parser("hypercube", help="dump the resolution hypercube")
    _add_diagram_args(hyper)
    hyper.add_argument("--format", choices=("text", "json"), default="json")
    hyper.set_defaults(run=cmd_hypercube)

    cplx = subs.add_parser("complex", help="dump chain complex shapes")
    _add_diagram_args(cplx)
    cmode = cplx.add_mutually_exclusive_group()
    cmode.add_argument("--reduced", dest="mode", action="store_const",
                       const="reduced")
    cmode.add_argument("--unreduced", dest="mode", action="store_const",
                       const="unreduced")
    cplx.set_defaults(mode="unreduced")
    cplx.add_argument("--format", choices=("text", "json"), default="json")
    cplx.set_defaults(run=cmd_complex)

    verify = subs.add_parser("verify", help="batch-verify a knot table")
    verify.add_argument("--table", help="NDJSON table (default: bundled)")
    verify.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    verify.add_argument("--max-crossings", type=int, default=None)
    verify.add_argument("--format", choices=("text", "json"), default="text")
    verify.set_defaults(run=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (CliError, DiagramError, ComplexError, ResourceCapError) as exc:
        print(json.dumps({"error": str(exc),
                          "kind": type(exc).__name__}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
