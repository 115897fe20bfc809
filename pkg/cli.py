"""
Command-line front end.

    group info | group save    inspect or write a group
    catalog list               the default catalog up to an order
    prob                       exact satisfaction probability of a word
    check-property             decide the w_{m,n}-property, printing a witness on failure
    verify                     theorem sweep over the catalog, optional report file
    graph export               Graphviz DOT of the word graph
    gustafson                  commuting probability of non-abelian groups against 5/8
    serve                      run the HTTP service

Exit codes: 0 success, 1 a check failed (violation or property failure),
2 usage or input error. Standard output is line-oriented "key: value"
records; logging goes to stderr.
"""

from typing import Optional, Sequence
import argparse
import logging
import sys

import config
from catalog import builtin, default_catalog, resolve
from group_core import Group, center, is_abelian
from report_manager import write_report
from scripts.import_export import atomic_write_text, load_group, save_group
from tools.bounds import GapConstant, format_number
from tools.property_check import OverlapPolicy, PropertyQuery, has_wmn_property
from tools.theorem_sweep import empirical_gap, gustafson_check, run_sweep
from tools.wordgraph import build, export_dot, satisfaction_probability
from word_engine import Word, named_word, parse

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


# ----------------------------------------------------------------------
# Shared arguments
# ----------------------------------------------------------------------
def _add_group_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--family", help="Built-in family, e.g. symmetric")
    source.add_argument("--group", help="Catalog name, e.g. 'quaternion8 x cyclic(2)'")
    source.add_argument("--file", help="Cayley table or permutation generator file")
    parser.add_argument("--param", type=int, action="append", default=[], help="Family parameter (repeatable)")


def _add_word_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    word = parser.add_mutually_exclusive_group(required=required)
    word.add_argument("--word", help="Word text, e.g. '[x,y]' or 'x^2 y X'")
    word.add_argument("--named", help="Built-in word: commutator, engelK, powerK")


def _group_from_args(args: argparse.Namespace) -> Group:
    if args.file:
        return load_group(args.file)
    if args.group:
        return resolve(args.group).build()
    return builtin(args.family, *args.param)


def _word_from_args(args: argparse.Namespace) -> Word:
    if args.named:
        return named_word(args.named)
    return parse(args.word)


def _emit(key: str, value) -> None:
    print(f"{key}: {value}")


def _flag(value: bool) -> str:
    return "true" if value else "false"


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------
def cmd_group_info(args: argparse.Namespace) -> int:
    g = _group_from_args(args)
    _emit("group", g.name)
    _emit("order", g.order)
    _emit("abelian", _flag(is_abelian(g)))
    _emit("center", len(center(g)))
    return EXIT_OK


def cmd_group_save(args: argparse.Namespace) -> int:
    g = _group_from_args(args)
    save_group(g, args.out)
    _emit("saved", args.out)
    _emit("order", g.order)
    return EXIT_OK


def cmd_catalog_list(args: argparse.Namespace) -> int:
    entries = default_catalog(args.max_order)
    for entry in entries:
        info = entry.to_dict()
        print(f"{info['order']}\t{info['name']}\t{'abelian' if info['abelian'] else 'non-abelian'}")
    _emit("entries", len(entries))
    return EXIT_OK


def cmd_prob(args: argparse.Namespace) -> int:
    g = _group_from_args(args)
    w = _word_from_args(args)
    graph = build(g, w)
    _emit("group", g.name)
    _emit("word", str(w))
    _emit("identity", _flag(graph.arc_count == 0))
    _emit("probability", format_number(satisfaction_probability(graph)))
    return EXIT_OK


def cmd_check_property(args: argparse.Namespace) -> int:
    g = _group_from_args(args)
    w = _word_from_args(args)
    q = PropertyQuery(args.m, args.n, OverlapPolicy(args.policy))
    result = has_wmn_property(build(g, w), q)
    _emit("group", g.name)
    _emit("word", str(w))
    _emit("query", f"m={q.m} n={q.n} {q.overlap_policy.value}")
    _emit("property", "holds" if result.has_property else "fails")
    _emit("subsets_examined", result.subsets_examined)
    if not result.has_property:
        _emit("witness_M", " ".join(str(a) for a in result.witness_M))
        _emit("witness_N", " ".join(str(b) for b in result.witness_N))
        return EXIT_FAILED
    return EXIT_OK


def _gamma_from_args(args: argparse.Namespace, w: Word) -> GapConstant:
    text = args.gamma.strip().lower()
    if text == "empirical":
        return empirical_gap(w, args.gamma_max_order or args.max_order, workers=args.workers)
    if text == "gustafson":
        return GapConstant.gustafson()
    return GapConstant.parse(text)


def cmd_verify(args: argparse.Namespace) -> int:
    w = _word_from_args(args)
    gamma = _gamma_from_args(args, w)
    policies = [OverlapPolicy(p) for p in args.policy] if args.policy else list(OverlapPolicy)
    report = run_sweep(w, gamma, args.max_order, args.m_max, args.n_max, policies, workers=args.workers)
    if args.report:
        write_report(report, args.report, args.format)

    summary = report.summary()
    _emit("word", w.label)
    _emit("gamma", format_number(gamma.gamma))
    _emit("gamma_source", gamma.source.value)
    _emit("base", format_number(gamma.base))
    for key in ("groups", "rows", "bound_rows", "violations"):
        _emit(key, summary[key])
    for check in report.violations:
        row = check.to_row()
        _emit("violation", f"{row['group']} m={row['m']} n={row['n']} {row['policy']} {row['bound_lhs']} > {row['bound_rhs']}")
    if args.report:
        _emit("report", args.report)
    return EXIT_FAILED if report.violations else EXIT_OK


def cmd_graph_export(args: argparse.Namespace) -> int:
    g = _group_from_args(args)
    w = _word_from_args(args)
    graph = build(g, w)
    atomic_write_text(args.dot, export_dot(graph))
    _emit("dot", args.dot)
    _emit("vertices", graph.vertex_count)
    _emit("arcs", graph.arc_count)
    return EXIT_OK


def cmd_gustafson(args: argparse.Namespace) -> int:
    result = gustafson_check(args.max_order, workers=args.workers)
    _emit("non_abelian", result["non_abelian"])
    _emit("maximum", result["maximum"])
    _emit("attaining", ", ".join(result["attaining"]) or "none")
    for name in result["exceeding"]:
        _emit("exceeding", name)
    _emit("holds", _flag(result["holds"]))
    return EXIT_OK if result["holds"] else EXIT_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("api.index:app", host=args.host, port=args.port, log_level=config.LOG_LEVEL.lower())
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wordprop", description="Word satisfaction statistics on finite groups")
    commands = parser.add_subparsers(dest="command", required=True)

    group = commands.add_parser("group", help="Inspect or save a group")
    group_commands = group.add_subparsers(dest="group_command", required=True)
    info = group_commands.add_parser("info", help="Order, abelian flag and center size")
    _add_group_arguments(info)
    info.set_defaults(handler=cmd_group_info)
    save = group_commands.add_parser("save", help="Write the group as a Cayley table file")
    _add_group_arguments(save)
    save.add_argument("--out", required=True, help="Destination file")
    save.set_defaults(handler=cmd_group_save)

    catalog = commands.add_parser("catalog", help="Default catalog")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    listing = catalog_commands.add_parser("list", help="List entries up to an order")
    listing.add_argument("--max-order", type=int, default=32)
    listing.set_defaults(handler=cmd_catalog_list)

    prob = commands.add_parser("prob", help="Exact satisfaction probability")
    _add_group_arguments(prob)
    _add_word_arguments(prob)
    prob.set_defaults(handler=cmd_prob)

    check = commands.add_parser("check-property", help="Decide the w_{m,n}-property")
    _add_group_arguments(check)
    _add_word_arguments(check)
    check.add_argument("-m", type=int, required=True)
    check.add_argument("-n", type=int, required=True)
    check.add_argument("--policy", choices=[p.value for p in OverlapPolicy], default=OverlapPolicy.ALLOW_OVERLAP.value)
    check.set_defaults(handler=cmd_check_property)

    verify = commands.add_parser("verify", help="Theorem sweep over the default catalog")
    _add_word_arguments(verify)
    verify.add_argument("--gamma", default="empirical", help="p/q, 'gustafson' or 'empirical'")
    verify.add_argument("--gamma-max-order", type=int, default=None, help="Catalog order for the empirical gamma")
    verify.add_argument("--max-order", type=int, default=64)
    verify.add_argument("--m-max", type=int, default=3)
    verify.add_argument("--n-max", type=int, default=16)
    verify.add_argument("--policy", action="append", choices=[p.value for p in OverlapPolicy], help="Repeatable; both by default")
    verify.add_argument("--report", help="Report file")
    verify.add_argument("--format", choices=["csv", "json"], default="csv")
    verify.add_argument("--workers", type=int, default=None)
    verify.set_defaults(handler=cmd_verify)

    graph = commands.add_parser("graph", help="Word graph tools")
    graph_commands = graph.add_subparsers(dest="graph_command", required=True)
    export = graph_commands.add_parser("export", help="Write the word graph as DOT")
    _add_group_arguments(export)
    _add_word_arguments(export)
    export.add_argument("--dot", required=True, help="Destination DOT file")
    export.set_defaults(handler=cmd_graph_export)

    gustafson = commands.add_parser("gustafson", help="Commuting probability against 5/8")
    gustafson.add_argument("--max-order", type=int, default=64)
    gustafson.add_argument("--workers", type=int, default=None)
    gustafson.set_defaults(handler=cmd_gustafson)

    serve = commands.add_parser("serve", help="Run the HTTP service")
    serve.add_argument("--host", default=config.API_HOST)
    serve.add_argument("--port", type=int, default=config.API_PORT)
    serve.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=config.LOG_LEVEL, stream=sys.stderr)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
