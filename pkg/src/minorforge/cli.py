"""Umbrella command-line interface.

Subcommands: gen, check, extract, build, certify, bench. Exit codes:
0 ok, 1 invalid input, 2 capability error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, MinorForgeError


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; 2 means capability here
        raise InputError(message)


def _read_graph(path: str):
    from .edgelist import load_edgelist, read_edgelist

    if path == "-":
        return read_edgelist(sys.stdin)
    try:
        return load_edgelist(path)
    except OSError as exc:
        raise InputError(f"cannot read graph file {path!r}: {exc}") from None


def _emit(payload: dict, out: str | None) -> None:
    line = json.dumps(payload, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(line + "\n")
    else:
        print(line)


def _cmd_gen(args) -> int:
    from .edgelist import format_edgelist
    from .generators import generate

    params: dict = {"name": args.kind}
    for key in ("n", "d", "p", "rows", "cols", "dim"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    if args.kind in ("gnp", "random_regular"):
        params["seed"] = args.seed
    g = generate(params)
    text = format_edgelist(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check(args) -> int:
    from .expansion import (
        RhoParams,
        SearchBudget,
        check_locally_sparse,
        check_robust_expander,
        check_t_alpha_expanding,
        check_vertex_expansion,
    )

    g = _read_graph(args.graph)
    budget = SearchBudget(
        exact_n=args.exact_n, exact_n_robust=args.exact_n_robust, seed=args.seed
    )
    if args.kind == "vexp":
        if args.eps is None:
            raise InputError("--eps is required for vexp")
        verdict = check_vertex_expansion(g, args.eps, budget)
    elif args.kind == "talpha":
        if args.t is None or args.alpha is None:
            raise InputError("--t and --alpha are required for talpha")
        verdict = check_t_alpha_expanding(g, args.t, args.alpha, budget)
    elif args.kind == "sparse":
        if args.eps is None:
            raise InputError("--eps is required for sparse")
        verdict = check_locally_sparse(g, args.eps, budget)
    else:
        if args.eps1 is None:
            raise InputError("--eps1 is required for robust")
        if args.t is None:
            raise InputError("--t is required for robust")
        verdict = check_robust_expander(
            g, RhoParams(args.eps1, args.t, args.log_base), budget
        )
    _emit(verdict.to_json_dict(), args.out)
    return 0


def _cmd_extract(args) -> int:
    from .edgelist import save_edgelist
    from .expansion import RhoParams, SearchBudget
    from .extraction import calibrate_eps1, extract_expander

    g = _read_graph(args.graph)
    budget = SearchBudget(seed=args.seed)
    if args.calibrate:
        value = calibrate_eps1(g, args.t, budget)
        _emit({"calibrated_eps1": value, "t": args.t}, args.out)
        return 0
    report = extract_expander(g, RhoParams(args.eps1, args.t, args.log_base), budget)
    if args.subgraph_out:
        save_edgelist(report.subgraph, args.subgraph_out)
    _emit(report.to_json_dict(), args.out)
    return 0


def _cmd_build(args) -> int:
    from .builder import BuilderConfig, build_minor
    from .certify import write_certificate

    g = _read_graph(args.graph)
    cfg = BuilderConfig(
        eps=args.eps,
        eps1=args.eps1,
        t=args.t,
        polylog_exp=args.polylog_exp,
        target_k=args.k,
        seed=args.seed,
        max_retries=args.retries,
        log_base=args.log_base,
    )
    cert = build_minor(g, cfg)
    if args.cert:
        write_certificate(cert, g, args.cert)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as f:
            for event in cert.provenance["stages"]:
                f.write(json.dumps(event, sort_keys=True) + "\n")
    _emit(
        {
            "k": cert.k,
            "branch_set_sizes": [len(b) for b in cert.branch_sets],
            "cert": args.cert,
            "log": args.log,
        },
        args.out,
    )
    return 0


def _cmd_certify(args) -> int:
    from .certify import read_certificate, verify_certificate

    g = _read_graph(args.graph)
    cert = read_certificate(args.cert, g)
    report = verify_certificate(g, cert)
    _emit(report.to_json_dict(), args.out)
    return 0


def _cmd_bench(args) -> int:
    from .bench import determinism_hash, run_sweep, summarize

    with open(args.spec, "r", encoding="utf-8") as f:
        sweep = json.load(f)
    rows = run_sweep(
        sweep,
        out_path=args.out if args.format == "jsonl" else None,
        csv_path=args.csv,
        svg_path=args.svg,
        max_workers=args.threads,
    )
    if args.format == "json" and args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(rows, f, sort_keys=True)
            f.write("\n")
    elif args.format == "csv" and args.out:
        from .bench import write_summary_csv

        write_summary_csv(summarize(rows), args.out)
    errors = [r for r in rows if "error" in r]
    print(
        json.dumps(
            {
                "rows": len(rows),
                "errors": len(errors),
                "determinism_hash": determinism_hash(rows),
                "summary": summarize(rows),
            },
            sort_keys=True,
        )
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minorforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument(
        "--format", choices=("json", "jsonl", "csv"), default="jsonl", help="bench output format"
    )

    p = sub.add_parser("gen", parents=[common], help="generate a graph edge list")
    p.add_argument("--kind", required=True, choices=("complete", "gnp", "grid", "hypercube", "random_regular"))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--dim", type=int)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check", parents=[common], help="run an expansion check")
    p.add_argument("graph", nargs="?", default="-", help="edge-list file or - for stdin")
    p.add_argument("--kind", required=True, choices=("vexp", "talpha", "sparse", "robust"))
    p.add_argument("--eps", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--eps1", type=float)
    p.add_argument("--log-base", type=float, default=2.0)
    p.add_argument("--exact-n", type=int, default=16)
    p.add_argument("--exact-n-robust", type=int, default=10)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("extract", parents=[common], help="extract an expanding subgraph")
    p.add_argument("graph", nargs="?", default="-")
    p.add_argument("--eps1", type=float, default=0.1)
    p.add_argument("--t", type=float, default=4.0)
    p.add_argument("--log-base", type=float, default=2.0)
    p.add_argument("--calibrate", action="store_true", help="search the largest passing eps1")
    p.add_argument("--subgraph-out", default=None, help="write extracted subgraph edge list here")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("build", parents=[common], help="build a clique-minor certificate")
    p.add_argument("graph", nargs="?", default="-")
    p.add_argument("--eps", type=float, default=0.3)
    p.add_argument("--eps1", type=float, default=0.1)
    p.add_argument("--t", type=float, default=4.0)
    p.add_argument("--k", type=int, default=None, help="target clique-minor size")
    p.add_argument("--polylog-exp", type=int, default=10)
    p.add_argument("--retries", type=int, default=6)
    p.add_argument("--log-base", type=float, default=2.0)
    p.add_argument("--cert", default=None, help="certificate output file")
    p.add_argument("--log", default=None, help="stage log JSONL output file")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("certify", parents=[common], help="verify a certificate file")
    p.add_argument("--graph", required=True)
    p.add_argument("--cert", required=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("bench", parents=[common], help="run an experiment sweep")
    p.add_argument("--spec", required=True, help="sweep description JSON file")
    p.add_argument("--csv", default=None, help="summary CSV output")
    p.add_argument("--svg", default=None, help="scatter SVG output")
    p.add_argument("--threads", type=int, default=None, help="worker count (default $MINORFORGE_THREADS)")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except MinorForgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # unexpected bug: internal invariant exit code
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
