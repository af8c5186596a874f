"""``nimramsey`` command line.

Exit status: 0 success, 1 verification failure, 2 bad input, 3 budget exhausted.
``--machine`` switches to stable ``key=value`` lines.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .colouring import (
    is_feasible,
    read_colouring,
    read_template,
    write_colouring,
    write_template,
)
from .errors import BudgetExceeded, ConstructionError, ParameterError
from .graph import build, edit_distance, format_graph, parse_graph_list, turan_number, write_graph
from .hom import format_embedding
from .nim import (
    blowup_lower_bound,
    nim_max_exact,
    nim_set,
    overlay_placements,
    peel_min_degree,
)
from .ramsey import gf16_witness, is_nice, r_hom, r_star
from .turan import ex_exact_family

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Output:
    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    def value(self, key: str, val) -> None:
        """Printed in both modes; machine mode uses ``key=value``."""
        if isinstance(val, bool):
            val = "true" if val else "false"
        text = f"{key}={val}" if self.machine else f"{key:<12} {val}"
        print(text, file=self.stream)

    def human(self, text: str) -> None:
        if not self.machine:
            print(text, file=self.stream)


def _graphs(args, count: Optional[int] = None):
    if not args.graphs:
        raise ParameterError("--graphs is required")
    gs = parse_graph_list(args.graphs)
    if count is not None and len(gs) != count:
        raise ParameterError(f"expected {count} graph(s) in --graphs, got {len(gs)}")
    return gs


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise ParameterError(f"--{name.replace('_', '-')} is required")
    return val


def _budget_exit(exhausted: bool) -> int:
    return EXIT_OK if exhausted else EXIT_BUDGET


# ---------------------------------------------------------------------------
# Subcommands


def cmd_nim_eval(args, out: Output) -> int:
    phi = read_colouring(_need(args, "colouring"))
    gs = _graphs(args, phi.k)
    report = nim_set(phi, gs)
    out.value("nim", report.count)
    out.value("per_colour", ",".join(str(g.num_edges) for g in report.per_colour_nim))
    if not out.machine:
        out.human("NIM-edges: " + (" ".join(f"{u}-{v}" for u, v in report.nim_edges) or "none"))
        for (u, v), img in sorted(report.witnesses.items()):
            out.human(f"  {u}-{v} colour {phi.colour(u, v)}: {format_embedding(img)}")
    if args.out:
        write_graph(report.nim_graph(phi.n), args.out)
    return EXIT_OK


def cmd_nim_max(args, out: Output) -> int:
    gs = _graphs(args)
    res = nim_max_exact(_need(args, "n"), gs, budget=args.budget_nodes, workers=args.workers)
    out.value("nim", res.value)
    out.value("optimal", res.optimal)
    out.value("nodes", res.nodes)
    if res.witness is not None:
        out.human("colours (lex pair order): " + "".join(map(str, res.witness.colours)))
        if args.out:
            write_colouring(res.witness, args.out)
    return _budget_exit(res.optimal)


def _ramsey_report(out: Output, key: str, res) -> None:
    out.value(key, res.value)
    out.value("exhausted", res.exhausted_above)
    out.value("nodes", res.nodes)


def cmd_rstar(args, out: Output) -> int:
    res = r_star(_graphs(args), budget=args.budget_nodes)
    _ramsey_report(out, "rstar", res)
    out.human("points " + "".join(map(str, res.witness.vcolour)) + "  pairs " + "".join(map(str, res.witness.pcolour)))
    if args.out:
        write_template(res.witness, args.out)
    return _budget_exit(res.exhausted_above)


def cmd_rhom(args, out: Output) -> int:
    res = r_hom(_graphs(args), budget=args.budget_nodes)
    _ramsey_report(out, "rhom", res)
    out.human("pairs " + "".join(map(str, res.witness.colours)))
    if args.out:
        write_colouring(res.witness, args.out)
    return _budget_exit(res.exhausted_above)


def cmd_nice(args, out: Output) -> int:
    gs = _graphs(args)
    value = args.r
    if value is None:
        res = r_star(gs, budget=args.budget_nodes)
        if not res.exhausted_above:
            raise BudgetExceeded("could not certify r* within the budget")
        value = res.value
    nice, cex = is_nice(gs, value, budget=args.budget_nodes)
    out.value("rstar", value)
    out.value("nice", nice)
    if cex is not None:
        out.human("counterexample points " + "".join(map(str, cex.vcolour)) + "  pairs " + "".join(map(str, cex.pcolour)))
        if args.out:
            write_template(cex, args.out)
    return EXIT_OK


def cmd_ex(args, out: Output) -> int:
    res = ex_exact_family(_need(args, "n"), _graphs(args), budget=args.budget_nodes)
    out.value("ex", res.value)
    out.value("optimal", res.optimal)
    out.value("nodes", res.nodes)
    out.human(format_graph(res.witness).rstrip())
    if args.out:
        write_graph(res.witness, args.out)
    return _budget_exit(res.optimal)


def cmd_blowup(args, out: Output) -> int:
    xi = read_template(_need(args, "template"))
    gs = _graphs(args, xi.k)
    n = _need(args, "n")
    phi, count = blowup_lower_bound(gs, xi, n)
    out.value("nim", count)
    out.value("turan", turan_number(n, xi.r))
    if args.out:
        write_colouring(phi, args.out)
    return EXIT_OK


def cmd_overlay(args, out: Output) -> int:
    tree = _graphs(args, 1)[0]
    k, n = _need(args, "k"), _need(args, "n")
    res = overlay_placements(tree, k, n, seed=args.seed)
    report = nim_set(res.colouring, [tree] * k)
    out.value("nim", report.count)
    out.value("switches", res.switches)
    out.value("seed", args.seed)
    if args.out:
        write_colouring(res.colouring, args.out)
    return EXIT_OK


def cmd_peel(args, out: Output) -> int:
    phi = read_colouring(_need(args, "colouring"))
    gs = _graphs(args, phi.k)
    trace = peel_min_degree(phi, gs, _need(args, "r"))
    for step in trace:
        removed = "-" if step.removed is None else step.removed
        if out.machine:
            print(f"order={step.order} nim={step.nim} removed={removed}", file=out.stream)
        else:
            out.human(f"order {step.order:>3}  nim {step.nim:>5}  removes {removed}")
    out.value("final_order", trace[-1].order)
    return EXIT_OK


def cmd_editdist(args, out: Output) -> int:
    g, h = _graphs(args, 2)
    out.value("editdist", edit_distance(g, h))
    return EXIT_OK


def cmd_gf16(args, out: Output) -> int:
    xi = gf16_witness(check=False)
    verdict = is_feasible(xi, [build("complete:3")] * 4)
    out.value("points", xi.r)
    out.value("feasible", bool(verdict))
    if args.out:
        write_template(xi, args.out)
    return EXIT_OK if verdict else EXIT_FAILED


def cmd_verify_paper(args, out: Output) -> int:
    from .verify import run_all

    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(fail_fast=not args.keep_going, only=only, echo=lambda s: print(s, file=out.stream))
    return EXIT_OK if results and all(c.ok for c in results) else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graphs", help="comma-separated families, e.g. complete:3,cycle:5")
    common.add_argument("--colouring", help="edge colouring file")
    common.add_argument("--template", help="template colouring file")
    common.add_argument("--n", type=int, help="host order")
    common.add_argument("--k", type=int, help="number of colours")
    common.add_argument("--r", type=int, help="r* value (nice) or Turán parameter (peel)")
    common.add_argument("--budget-nodes", type=_positive, default=None, help="search node budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--machine", action="store_true", help="key=value output")
    common.add_argument("--out", help="write the witness here")

    p = argparse.ArgumentParser(prog="nimramsey", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    nim = sub.add_parser("nim", help="NIM-edges of a colouring, or the exact maximum")
    nim_sub = nim.add_subparsers(dest="nim_command", required=True)
    nim_sub.add_parser("eval", parents=[common], help="NIM-edges of --colouring").set_defaults(func=cmd_nim_eval)
    nim_sub.add_parser("max", parents=[common], help="exact nim(n; H...)").set_defaults(func=cmd_nim_max)

    for name, func, text in [
        ("rstar", cmd_rstar, "r* with a witness template"),
        ("rhom", cmd_rhom, "homomorphic Ramsey number"),
        ("nice", cmd_nice, "is the list nice"),
        ("ex", cmd_ex, "exact Turán number of --graphs (a family) at --n"),
        ("blowup", cmd_blowup, "balanced blow-up of --template on --n vertices"),
        ("overlay", cmd_overlay, "tree-overlay packing colouring"),
        ("peel", cmd_peel, "minimum-degree peeling trace"),
        ("editdist", cmd_editdist, "edit distance between two graphs"),
        ("gf16", cmd_gf16, "the 16-point template for four triangles"),
    ]:
        sub.add_parser(name, parents=[common], help=text).set_defaults(func=func)

    vp = sub.add_parser("verify-paper", parents=[common], help="run the acceptance checks")
    vp.add_argument("--only", help="comma-separated criterion numbers")
    vp.add_argument("--keep-going", action="store_true", help="do not stop at the first failure")
    vp.set_defaults(func=cmd_verify_paper)
    return p


def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def main(argv: Optional[list[str]] = None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.machine, stream)
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, ConstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
