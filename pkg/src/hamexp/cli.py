"""Command-line interface.

Exit codes: 0 success / affirmative, 1 negative finding, 2 usage or input error.
Primary output goes to stdout (or ``--output``), progress to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from hamexp.certification import CertificationError, certificate_problems, certify
from hamexp.constructions import build_minimum, exp_h, template_witness
from hamexp.formats import graph_to_json, loads_graph, to_dot
from hamexp.graph import Graph, GraphError, NonEdge
from hamexp.oracle import (
    DEFAULT_DP_LIMIT,
    expandability_report,
    ham_cycle_containing,
    ham_path,
    is_expandable,
    validate_witness,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return loads_graph(text)


def _family_for(g: Graph):
    if g.n < 7:
        return None
    fg, fam = build_minimum(g.n)
    return fam if fg == g else None


def cmd_construct(args: argparse.Namespace) -> int:
    if args.n < 3:
        raise UsageError(f"--n must be >= 3, got {args.n}")
    g, fam = build_minimum(args.n)
    if args.format == "dot":
        _emit(args, to_dot(g, fam))
    else:
        _emit(args, json.dumps(graph_to_json(g)))
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    if args.format == "dot":
        _emit(args, to_dot(g, _family_for(g)))
    else:
        _emit(args, json.dumps(graph_to_json(g)))
    return EXIT_OK


def cmd_witness(args: argparse.Namespace) -> int:
    if args.input:
        g = _read_graph(args.input)
        fam = _family_for(g)
    elif args.n is not None:
        if args.n < 3:
            raise UsageError(f"--n must be >= 3, got {args.n}")
        g, fam = build_minimum(args.n)
    else:
        raise UsageError("give --input FILE or --n N")
    u, v = args.u, args.v
    if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
        raise UsageError(f"({u}, {v}) is not a pair of distinct vertices of the graph")
    if g.has_edge(u, v):
        raise UsageError(f"({u}, {v}) is an edge, not a non-edge")
    if args.mode == "template":
        if fam is None or fam.kind not in ("even", "odd"):
            raise UsageError("template mode needs a family graph (n >= 7 construction)")
        w = template_witness(fam, g, (u, v))
        assert validate_witness(g, w)
    else:
        w = ham_cycle_containing(g, (u, v), dp_limit=args.dp_limit)
        if w is None:
            print(f"no Hamiltonian cycle through ({u}, {v})", file=sys.stderr)
            return EXIT_NEGATIVE
    _emit(args, json.dumps(w.to_json()))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    report = expandability_report(g, dp_limit=args.dp_limit)
    _emit(args, json.dumps(report.to_json()))
    return EXIT_OK if report.expandable else EXIT_NEGATIVE


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _read_graph(args.input)
    path = ham_path(g, args.s, args.t, dp_limit=args.dp_limit)
    _emit(args, json.dumps({"from": args.s, "to": args.t, "path": path}))
    return EXIT_OK if path is not None else EXIT_NEGATIVE


def cmd_certify(args: argparse.Namespace) -> int:
    try:
        cert = certify(args.n, jobs=args.jobs, dedup=args.dedup, engine=args.engine,
                       long_run=args.long_run, seed=args.seed, checkpoint=args.checkpoint)
    except CertificationError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, json.dumps(cert.to_json(), indent=1))
    lower = cert.lower
    print(f"n={cert.n} claimed_m={cert.claimed_m} searched m={lower.m}: total={lower.total} "
          f"filtered={sum(lower.filtered.values())} oracle_rejected={lower.oracle_rejected} "
          f"survivors={lower.survivors} ({cert.runtime_seconds:.1f}s)", file=sys.stderr)
    return EXIT_OK if cert.valid else EXIT_NEGATIVE


def cmd_check_cert(args: argparse.Namespace) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        print(f"REJECTED: not valid JSON ({exc})", file=sys.stderr)
        return EXIT_NEGATIVE
    problems = certificate_problems(data)
    if problems:
        for p in problems:
            print(f"REJECTED: {p}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"OK: Exp_h({data['n']}) = {data['claimed_m']}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    lo, hi = args.from_, args.to
    if lo < 3 or hi < lo:
        raise UsageError("need 3 <= --from <= --to")
    if args.verify and hi > 16:
        raise UsageError("--verify is limited to n <= 16")
    lines = ["n\texp_h" + ("\texpandable" if args.verify else "")]
    ok = True
    for n in range(lo, hi + 1):
        row = f"{n}\t{exp_h(n)}"
        if args.verify:
            g, _ = build_minimum(n)
            good = g.m == exp_h(n) and is_expandable(g, dp_limit=args.dp_limit)
            ok &= good
            row += "\t" + ("yes" if good else "NO")
        lines.append(row)
    _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the primary output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for certify")
    common.add_argument("--dp-limit", type=int, default=DEFAULT_DP_LIMIT,
                        help=f"largest n solved by subset DP (default {DEFAULT_DP_LIMIT})")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hamexp", description="Minimum hamiltonian-expandable graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="print the minimum graph for n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("export", parents=[common], help="convert a graph JSON file")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["json", "dot"], default="dot")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("witness", parents=[common], help="Hamiltonian cycle through a non-edge")
    p.add_argument("--input")
    p.add_argument("--n", type=int)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--mode", choices=["template", "oracle"], default="oracle")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="expandability report for a graph")
    p.add_argument("--input", required=True, help="graph JSON file, or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="Hamiltonian path between two vertices")
    p.add_argument("--input", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("certify", parents=[common], help="certify Exp_h(n) exhaustively")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dedup", choices=["labeled", "canonical"], default="labeled")
    p.add_argument("--engine", choices=["kernel", "python"], default="kernel")
    p.add_argument("--long-run", action="store_true", help="allow n = 9, 10")
    p.add_argument("--checkpoint", help="resumable progress file for the sweep")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check-cert", parents=[common], help="re-validate a certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_check_cert)

    p = sub.add_parser("table", parents=[common], help="exp_h(n) over a range")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="confirm constructions with the oracle")
    p.set_defaults(func=cmd_table)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(asctime)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
