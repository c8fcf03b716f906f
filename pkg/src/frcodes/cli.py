"""Command-line interface.

Verbs: ``construct``, ``enumerate``, ``graph``, ``equiv``, ``simulate``,
``export``.  Results go to stdout (or ``--out``), diagnostics to stderr.

Exit codes: 0 success, 2 invalid arguments or input, 3 construction
infeasible, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import (
    adjacency_as_incidence,
    adjacency_fill_symmetric,
    adjacency_fill_transpose,
    build_graph,
    fill_incidence,
    graph_to_fr,
)
from .core import (
    FRCode,
    FRParams,
    IncidenceMatrix,
    code_from_json,
    code_to_json,
    code_to_matrix,
    matrix_to_code,
)
from .dss import mds_check, simulate_failure, supported_file_size
from .enumeration import (
    FilterPolicy,
    catalog_to_jsonl,
    count_table,
    count_table_csv,
    dedupe_catalog,
    generate_catalog,
)
from .equivalence import (
    are_equivalent,
    brute_force_equivalent,
    canonical_digest,
    invariant_fingerprint,
)
from .errors import BudgetError, ConstructionError, FRError, NoReplica

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 2, 3, 4

FILTERS = ("rho-lt-theta", "none", "theta-gt-half-n", "rho-lt-theta+theta-gt-half-n")


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


# -- formatting -------------------------------------------------------------

def code_csv(code: FRCode) -> str:
    lines = ["node,packets"]
    lines += [f"{i},{' '.join(map(str, u))}" for i, u in enumerate(code.nodes, 1)]
    return "\n".join(lines) + "\n"


def code_dot(code: FRCode) -> str:
    """Packets of a ``rho = 2`` code drawn as edges between their two holders."""
    if code.rho != 2:
        raise UsageError(f"dot output needs rho = 2, code has rho = {code.rho}")
    edges = sorted(tuple(code.holders(p)) for p in range(1, code.theta + 1))
    lines = ["graph G {"]
    lines += [f"  v{v};" for v in range(1, code.n + 1)]
    lines += [f"  v{a} -- v{b};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_code(code: FRCode, fmt: str) -> str:
    if fmt == "json":
        return _dumps(code_to_json(code))
    if fmt == "matrix":
        return code_to_matrix(code).to_text()
    if fmt == "csv":
        return code_csv(code)
    if fmt == "dot":
        return code_dot(code)
    raise UsageError(f"unsupported format {fmt!r}")


def read_code(source: str | None) -> FRCode:
    """Load a code from a JSON object or matrix text; ``None`` or ``-`` reads stdin."""
    text = sys.stdin.read() if source in (None, "-") else Path(source).read_text()
    text = text.strip()
    if not text:
        raise UsageError("empty code input")
    if text.startswith("{"):
        try:
            return code_from_json(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad code JSON: {exc}") from exc
    return matrix_to_code(IncidenceMatrix.from_text(text), provenance="matrix")


# -- verbs ------------------------------------------------------------------

def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.verb} requires {', '.join(missing)}")


def cmd_construct(args) -> str:
    method = args.method or "alg1"
    if method == "alg1":
        _need(args, "n", "d", "rho")
        if (args.n * args.d) % args.rho:
            raise UsageError(f"n*d = {args.n * args.d} is not divisible by rho = {args.rho}")
        theta = args.n * args.d // args.rho
        if args.theta is not None and args.theta != theta:
            raise UsageError(f"--theta {args.theta} contradicts n*d/rho = {theta}")
        params = FRParams(n=args.n, theta=theta, d=args.d, rho=args.rho)
        if not params.consistent:
            raise UsageError(f"infeasible parameters {params}")
        code = matrix_to_code(fill_incidence(params), params, "algorithm1")
    else:
        _need(args, "n", "d")
        if method == "adj3":
            code = adjacency_as_incidence(adjacency_fill_transpose(args.n, args.d), provenance="adj3")
        elif method == "adj4":
            code = adjacency_as_incidence(adjacency_fill_symmetric(args.n, args.d), provenance="adj4")
        else:
            code = graph_to_fr(build_graph(method, args.n, args.d), provenance=method)
    return format_code(code, args.format or "json")


def cmd_enumerate(args) -> str:
    _need(args, "n")
    n_to = args.n_to if args.n_to is not None else args.n
    policy = FilterPolicy.from_name(args.filter)
    fmt = args.format or "csv"
    if fmt == "csv":
        return count_table_csv(count_table(args.n, n_to, policy, dedupe=args.dedupe))
    if fmt == "json":
        out = []
        for n in range(args.n, n_to + 1):
            catalog = generate_catalog(n, policy, digests=True)
            out.append(catalog_to_jsonl(catalog))
            if args.dedupe:
                for cls in dedupe_catalog([e for e in catalog if e.valid]):
                    print(f"n={n} class {cls.digest[:12]} size {cls.size}", file=sys.stderr)
        return "".join(out)
    raise UsageError(f"enumerate supports csv or json, not {fmt!r}")


def cmd_graph(args) -> str:
    _need(args, "n", "d")
    method = args.method or "split-cycle"
    if method == "alg1":
        raise UsageError("alg1 builds incidence matrices, not graphs")
    graph = build_graph(method, args.n, args.d)
    fmt = args.format or "dot"
    if fmt == "dot":
        return graph.to_dot()
    if fmt == "json":
        return _dumps({"n": graph.n, "d": graph.degree(), "edges": [list(e) for e in graph.sorted_edges()]})
    if fmt == "matrix":
        return "".join("".join(map(str, r)) + "\n" for r in graph.adjacency())
    if fmt == "csv":
        return "a,b\n" + "".join(f"{a},{b}\n" for a, b in graph.sorted_edges())
    raise UsageError(f"unsupported format {fmt!r}")


def cmd_equiv(args) -> str:
    c1, c2 = read_code(args.codes[0]), read_code(args.codes[1])
    result = {
        "equivalent": are_equivalent(c1, c2),
        "same_params": c1.params == c2.params,
        "fingerprints_equal": invariant_fingerprint(c1) == invariant_fingerprint(c2),
    }
    if result["same_params"]:
        result["digests"] = [canonical_digest(c1), canonical_digest(c2)]
    if args.oracle:
        result["brute_force"] = brute_force_equivalent(c1, c2)
    return _dumps(result)


def cmd_simulate(args) -> str:
    code = read_code(args.input)
    failures = [args.fail] if args.fail is not None else range(1, code.n + 1)
    extra = {}
    if args.k is not None:
        extra["k"] = args.k
        extra["supported_file_size"] = supported_file_size(code, args.k)
        if args.B is not None:
            extra["B"] = args.B
            extra["mds_ok"] = mds_check(code, args.k, args.B)
    elif args.B is not None:
        raise UsageError("--B needs --k")
    lines = []
    for node in failures:
        if not 1 <= node <= code.n:
            raise UsageError(f"--fail {node} outside 1..{code.n}")
        report = simulate_failure(code, node, args.beta).to_json()
        report.update(extra)
        lines.append(_dumps(report))
    return "".join(lines)


def cmd_export(args) -> str:
    return format_code(read_code(args.input), args.format or "json")


VERBS = {
    "construct": cmd_construct,
    "enumerate": cmd_enumerate,
    "graph": cmd_graph,
    "equiv": cmd_equiv,
    "simulate": cmd_simulate,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--rho", type=int)
    common.add_argument("--theta", type=int)
    common.add_argument("--format", choices=["json", "matrix", "csv", "dot"])
    common.add_argument("--method", choices=["alg1", "split-cycle", "adj3", "adj4", "circulant"])
    common.add_argument("--filter", choices=FILTERS, default="rho-lt-theta")
    common.add_argument("--dedupe", action="store_true")
    common.add_argument("--fail", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--B", type=int)
    common.add_argument("--beta", type=int, default=1)
    common.add_argument("--out", type=Path)

    parser = argparse.ArgumentParser(prog="frcodes", description="Fractional repetition code toolkit")
    sub = parser.add_subparsers(dest="verb", required=True)
    sub.add_parser("construct", parents=[common], help="build one code")
    p = sub.add_parser("enumerate", parents=[common], help="catalog all codes for n")
    p.add_argument("--n-to", type=int, help="last n of a range starting at --n")
    sub.add_parser("graph", parents=[common], help="build a d-regular graph")
    p = sub.add_parser("equiv", parents=[common], help="decide equivalence of two codes")
    p.add_argument("codes", nargs=2, metavar="CODE")
    p.add_argument("--oracle", action="store_true", help="also run the exhaustive check")
    p = sub.add_parser("simulate", parents=[common], help="single-failure repair report")
    p.add_argument("input", nargs="?", default="-")
    p = sub.add_parser("export", parents=[common], help="convert a code between formats")
    p.add_argument("input", nargs="?", default="-")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        output = VERBS[args.verb](args)
    except (UsageError, ValueError, OSError) as exc:
        # InvalidCode and DimensionMismatch are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionError, NoReplica) as exc:
        print(f"infeasible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out is not None:
        args.out.write_text(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
