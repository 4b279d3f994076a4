"""Command-line interface: ``sgraph info|graph|hypothesis|formation|appendix``.

Exit codes: 0 success (or connected / member), 1 negative verdict,
2 usage or input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import appendix
from .constructors import realize
from .errors import CapExceeded, GroupExprError, QuotientCapExceeded, SpecError
from .formations import (Covering, LocalDefinition, lattice_formation_membership, lf_membership,
                         load_spec, local_definition_from_covering, n_closure_test,
                         validate_symmetric)
from .group import DEFAULT_CAP, DEFAULT_QUOTIENT_CAP, limits
from .sylow_graph import export_graph, factor_string, gamma_graph, hypothesis_check

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return _positive(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{name}: {exc}")


def _bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_info(args, out) -> int:
    G = realize(args.expr)
    graph = gamma_graph(G)
    lines = [f"group: {G.name}", f"degree: {G.degree}",
             f"order: {G.order()} = {factor_string(G.order())}",
             f"pi: {','.join(map(str, graph.vertices))}"]
    if graph.vertices:
        header = ("p", "|P|", "|N(P)|", "|C(P)|", "|Z(P)|", "|N:C|", "|A_p|")
        rows = [header] + [
            tuple(str(v) for v in (p, d.sylow_order, d.normalizer_order, d.centralizer_order,
                                   d.center_of_sylow_order, d.nc_index, d.automiser_order))
            for p, d in sorted(graph.data.items())
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_graph(args, out) -> int:
    graph = gamma_graph(realize(args.expr))
    out.write(export_graph(graph, args.format, args.variant))
    return EXIT_OK if graph.is_connected(args.variant) else EXIT_NEGATIVE


def cmd_hypothesis(args, out) -> int:
    report = hypothesis_check(realize(args.expr), gap_literal=args.gap_literal)
    lines = [f"hypothesis: {_bool(report.result)}"]
    if report.pi:
        lines.append(f"pi: {','.join(map(str, report.pi))}")
        skip = report.pi[0] == 2
        for i, (p, q, ok) in enumerate(zip(report.pi, report.indices, report.passed)):
            note = " (skipped)" if skip and i == 0 else ""
            row = f"  p={p}  |N:C|={q}  R={_bool(ok)}{note}"
            if args.verbose:
                row += f"  factors: {factor_string(q)}"
            lines.append(row)
    if report.failing_primes:
        lines.append(f"failing primes: {','.join(map(str, report.failing_primes))}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if report.result else EXIT_NEGATIVE


def _local_definition(spec) -> LocalDefinition:
    if isinstance(spec, Covering):
        report = validate_symmetric(spec)
        if not report:
            raise SpecError(f"covering is not symmetric: {report.violations}")
        return local_definition_from_covering(spec)
    return spec


def cmd_formation(args, out) -> int:
    spec = load_spec(args.spec)
    G = realize(args.expr)
    err = sys.stderr
    if args.mode == "lattice":
        if not isinstance(spec, Covering):
            raise SpecError("lattice membership needs a covering file")
        result = lattice_formation_membership(spec, G)
        trace = [str(t) for t in result.trace]
    elif args.mode == "check":
        result = lf_membership(_local_definition(spec), G)
        trace = [f"factor {t.position} (order {t.factor_order}) q={t.q} |G:C|={t.quotient_order} "
                 f"f(q)={t.spec} -> {_bool(t.verdict)}" for t in result.trace]
    else:
        f = _local_definition(spec)
        result = n_closure_test(lambda N: lf_membership(f, N).member, G)
        trace = [f"p={t.p} |N(G_p)|={t.normalizer_order} -> {_bool(t.verdict)}"
                 for t in result.trace]
    if args.verbose:
        err.write("\n".join(trace) + ("\n" if trace else ""))
    out.write(f"{args.mode}: {_bool(result.member)}\n")
    return EXIT_OK if result.member else EXIT_NEGATIVE


def cmd_appendix(args, out) -> int:
    try:
        item = appendix.lookup(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    lines = appendix.reference_table(item)
    if args.reference or not item.computable:
        mode = "reference" if args.reference else "reference (not computable at desk scale)"
        out.write(f"mode: {mode}\n" + "\n".join(lines) + "\n")
        return EXIT_OK
    checks = appendix.verify(item)
    lines = [f"mode: computed", lines[0]]
    for c in checks:
        status = "match" if c.ok else "MISMATCH"
        lines.append(f"  {status:8}  {c.text}: expected {c.expected}, computed {c.computed}")
    bad = sum(not c.ok for c in checks)
    lines.append(f"{len(checks) - bad}/{len(checks)} assertions match")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if bad == 0 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--cap", type=_positive, default=argparse.SUPPRESS,
                      help=f"exhaustive enumeration cap (default {DEFAULT_CAP}, env SGRAPH_CAP)")
    caps.add_argument("--quotient-cap", type=_positive, default=argparse.SUPPRESS,
                      help=f"quotient order cap (default {DEFAULT_QUOTIENT_CAP}, env SGRAPH_QCAP)")

    parser = argparse.ArgumentParser(prog="sgraph", parents=[caps],
                                     description="Sylow graphs and formation membership "
                                                 "for finite permutation groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[caps], help="order, pi(G) and Sylow data")
    p.add_argument("expr")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("graph", parents=[caps], help="emit Gamma(G) or Delta(G)")
    p.add_argument("expr")
    p.add_argument("--variant", choices=("gamma", "delta"), default="gamma")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("hypothesis", parents=[caps], help="run the ROSN1 test")
    p.add_argument("expr")
    p.add_argument("--verbose", "-v", action="store_true")
    p.add_argument("--gap-literal", action="store_true",
                   help="treat the factor list of 1 as [1], as GAP's FactorsInt does")
    p.set_defaults(func=cmd_hypothesis)

    p = sub.add_parser("formation", parents=[caps], help="formation membership queries")
    p.add_argument("mode", choices=("check", "nclosed", "lattice"))
    p.add_argument("expr")
    p.add_argument("--spec", required=True, help="covering or local definition (JSON)")
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(func=cmd_formation)

    p = sub.add_parser("appendix", parents=[caps], help="sporadic group divisibility data")
    p.add_argument("name")
    p.add_argument("--reference", action="store_true", help="print stored data only")
    p.set_defaults(func=cmd_appendix)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cap = getattr(args, "cap", None) or _env_cap("SGRAPH_CAP", DEFAULT_CAP)
        qcap = getattr(args, "quotient_cap", None) or _env_cap("SGRAPH_QCAP", DEFAULT_QUOTIENT_CAP)
        with limits(cap, qcap):
            return args.func(args, out)
    except (UsageError, GroupExprError, SpecError) as exc:
        print(f"sgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, QuotientCapExceeded) as exc:
        print(f"sgraph: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
