"""Command line surface for bound reports, graphs, evaluation, verification.

Exit codes: 0 success, 1 soundness violation during verification, 2 for
parse and input errors, 3 when a size cap is exceeded.  Errors print one
diagnostic line to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bounds import classify, criteria_report
from .cuts import (
    Partition,
    enumerate_bipartitions,
    orbit_representatives,
    parse_partition,
    symmetry_group,
)
from .errors import CapExceeded, ParseError
from .graphs import build_graph, export_dot, max_clique
from .oracle import OracleConfig, verify_bound
from .pauli import OperatorSet, cp_expand, parse_pauli
from .states import common_eigenstate, evaluate_q, load_state, state_to_json_obj

_NAMED_STATES = ("ghz", "w", "smolin", "basis")


def _load_sigma(path: str) -> OperatorSet:
    try:
        return OperatorSet.from_file(path)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from exc
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _resolve_state(spec: str, width: int):
    name, _, detail = spec.partition(":")
    if name.lower() in _NAMED_STATES:
        from .states import named_state

        return named_state(name, width, detail or None)
    try:
        return load_state(spec)
    except OSError as exc:
        raise ParseError(f"{spec}: {exc.strerror or exc}") from exc


def _format_table(rows: list[tuple[str, ...]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]


def _verification_partitions(sigma: OperatorSet) -> list[Partition]:
    """Finest partition plus one representative per bipartition orbit."""
    parts = [Partition.finest(sigma.width)]
    if sigma.width >= 2:
        try:
            group = symmetry_group(sigma)
        except CapExceeded:
            group = [tuple(range(sigma.width))]
        for rep in orbit_representatives(
            enumerate_bipartitions(sigma.width), group
        ):
            if rep not in parts:
                parts.append(rep)
    return parts


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(
        restarts=args.restarts,
        max_iterations=args.max_iterations,
        seed=args.seed,
    )


def _verification_rows(records) -> list[str]:
    rows = [("partition", "graph_bound", "oracle_value", "gap", "saturated")]
    for rec in records:
        status = "yes" if rec.saturated else "no"
        if rec.violation:
            status = "VIOLATION"
        rows.append(
            (
                str(rec.partition),
                str(rec.graph_bound),
                f"{rec.oracle_value:.9f}",
                f"{rec.gap:.9f}",
                status,
            )
        )
    return _format_table(rows)


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_bounds(args) -> int:
    sigma = _load_sigma(args.sigma)
    report = criteria_report(
        sigma,
        quantum_upper=args.quantum_upper,
        clique_cap=args.clique_cap,
        color_cap=args.color_cap,
    )
    records = None
    if args.verify:
        config = _oracle_config(args)
        records = [
            verify_bound(sigma, part, config)
            for part in _verification_partitions(sigma)
        ]
    if args.json:
        obj = report.to_json_obj()
        if records is not None:
            obj["verification"] = [rec.to_json_obj() for rec in records]
        print(json.dumps(obj, indent=2))
    else:
        lines = [f"sigma: {len(report.sigma)} operators, width {report.width}", ""]
        rows = [("partition", "orbit", "bound", "witness")]
        for part, row in report.per_partition.items():
            rows.append(
                (str(part), str(row.orbit), str(row.bound), " ".join(row.witness))
            )
        lines.extend(_format_table(rows))
        lines.append("")
        for name, value in report.class_bounds.items():
            lines.append(f"{name}: {value}")
        witness = " ".join(report.quantum_witness)
        lines.append(f"quantum_lower: {report.quantum_lower} (witness: {witness})")
        upper = "not computed" if report.quantum_upper is None else report.quantum_upper
        lines.append(f"quantum_upper: {upper}")
        for note in report.notes:
            lines.append(f"note: {note}")
        if records is not None:
            lines.append("")
            lines.extend(_verification_rows(records))
        print("\n".join(lines))
    if records is not None and any(rec.violation for rec in records):
        print("error: oracle exceeded a graph bound; see verification rows",
              file=sys.stderr)
        return 1
    return 0


def cmd_graph(args) -> int:
    sigma = _load_sigma(args.sigma)
    part = (
        parse_partition(args.cut, sigma.width)
        if args.cut
        else Partition.single_block(sigma.width)
    )
    graph = build_graph(sigma, part, args.relation)
    if args.json:
        _write_output(json.dumps(graph.to_json_obj(), indent=2) + "\n", args.output)
    else:
        _write_output(export_dot(graph), args.output)
    return 0


def cmd_eval(args) -> int:
    sigma = _load_sigma(args.sigma)
    state = _resolve_state(args.state, sigma.width)
    qvalue = evaluate_q(state, sigma)
    report = criteria_report(sigma, clique_cap=args.clique_cap)
    verdict = classify(qvalue.value, report)
    if args.json:
        obj = {"q": qvalue.to_json_obj(), "verdict": verdict.to_json_obj()}
        print(json.dumps(obj, indent=2))
    else:
        lines = [f"Q = {qvalue.value:.10f}"]
        rows = [("operator", "contribution")]
        for text, term in qvalue.contributions.items():
            rows.append((text, f"{term:.10f}"))
        lines.extend(_format_table(rows))
        if verdict.claims:
            for claim in verdict.claims:
                lines.append(f"claim: {claim.claim} (bound {claim.threshold:g})")
        else:
            lines.append("claim: none (no bound exceeded)")
        for warning in verdict.warnings:
            lines.append(f"warning: {warning}")
        print("\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    sigma = _load_sigma(args.sigma)
    config = _oracle_config(args)
    records = [
        verify_bound(sigma, part, config)
        for part in _verification_partitions(sigma)
    ]
    if args.json:
        print(json.dumps([rec.to_json_obj() for rec in records], indent=2))
    else:
        print("\n".join(_verification_rows(records)))
    if any(rec.violation for rec in records):
        print("error: oracle exceeded a graph bound; see verification rows",
              file=sys.stderr)
        return 1
    return 0


def cmd_generate(args) -> int:
    if args.cp is not None:
        members = []
        for token in args.cp.split(","):
            token = token.strip()
            if not token:
                continue
            members.extend(cp_expand(parse_pauli(token)).members)
        if not members:
            raise ParseError("no patterns given to --cp")
        try:
            sigma = OperatorSet(members)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
        _write_output("\n".join(sigma.texts()) + "\n", args.output)
        return 0
    sigma = _load_sigma(args.clique_state)
    graph = build_graph(sigma, Partition.single_block(sigma.width), "commute")
    clique = max_clique(graph)
    ops = [sigma.members[i] for i in clique.witness]
    state = common_eigenstate(ops)
    _write_output(
        json.dumps(state_to_json_obj(state), indent=2) + "\n", args.output
    )
    return 0


def _add_oracle_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="oracle RNG seed")
    sub.add_argument("--restarts", type=int, default=64,
                     help="oracle restart count")
    sub.add_argument("--max-iterations", type=int, default=2000,
                     help="ascent sweep budget per restart")


def _add_cap_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--clique-cap", type=int, default=128,
                     help="vertex cap for exact clique search")
    sub.add_argument("--color-cap", type=int, default=64,
                     help="vertex cap for exact colouring search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paulicrit",
        description=(
            "Entanglement criteria from cut-commutativity graphs of "
            "Pauli operator sets"
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_bounds = subs.add_parser(
        "bounds", help="separability bounds and quantum values for an operator set"
    )
    p_bounds.add_argument("sigma", help="operator set file, one Pauli string per line")
    p_bounds.add_argument("--json", action="store_true", help="machine output")
    p_bounds.add_argument("--verify", action="store_true",
                          help="run the numerical oracle against every orbit")
    p_bounds.add_argument("--quantum-upper", action="store_true",
                          help="also run the exact colouring upper bound")
    _add_cap_flags(p_bounds)
    _add_oracle_flags(p_bounds)
    p_bounds.set_defaults(func=cmd_bounds)

    p_graph = subs.add_parser("graph", help="export a cut relation graph")
    p_graph.add_argument("sigma", help="operator set file")
    p_graph.add_argument("--cut", default=None,
                         help="partition text such as A|BC or 0,2|1,3 (default: no cut)")
    p_graph.add_argument("--relation", choices=("commute", "anticommute"),
                         default="commute", help="edge relation (default commute)")
    p_graph.add_argument("--json", action="store_true",
                         help="JSON {labels, edges} instead of DOT")
    p_graph.add_argument("-o", "--output", default=None, help="output path")
    p_graph.set_defaults(func=cmd_graph)

    p_eval = subs.add_parser(
        "eval", help="criterion value of a state plus its verdict"
    )
    p_eval.add_argument("sigma", help="operator set file")
    p_eval.add_argument("--state", required=True,
                        help="ghz | w | smolin | basis:BITS | path to a state file")
    p_eval.add_argument("--json", action="store_true", help="machine output")
    p_eval.add_argument("--clique-cap", type=int, default=128,
                        help="vertex cap for exact clique search")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = subs.add_parser(
        "verify", help="oracle check of every partition orbit bound"
    )
    p_verify.add_argument("sigma", help="operator set file")
    p_verify.add_argument("--json", action="store_true", help="machine output")
    _add_oracle_flags(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_gen = subs.add_parser(
        "generate", help="write an operator set or a clique eigenstate"
    )
    source = p_gen.add_mutually_exclusive_group(required=True)
    source.add_argument("--cp", default=None,
                        help="comma-separated patterns to close under cyclic rotation")
    source.add_argument("--clique-state", default=None,
                        help="operator set file; writes the max-clique common eigenstate")
    p_gen.add_argument("-o", "--output", default=None, help="output path")
    p_gen.set_defaults(func=cmd_generate)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
