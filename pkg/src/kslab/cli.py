"""Batch driver: every verification and enumeration as a subcommand.

Exit codes: 0 when all assertions pass, 1 when a falsifier was found
(the report carries a minimal counterexample object), 2 for input or
budget errors.  Results go to ``--out`` or standard output; progress
notes go to standard error.  ``KRL_BUDGET`` overrides the default
simplex budget; ``--budget`` overrides both.  ``--jobs`` is accepted
for interface stability but execution is serial.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import combinatorics, flags, graph_rings, mvss, springer, topology
from .graphs import BiGraph, enumerate_tree_foldings, graph_from_json, \
    hedgehog_analyze, make_standard


def graph_parse(source: str) -> BiGraph:
    """A graph from a JSON file path or a standard name (B, C3, L2, theta).

    The JSON format is {"vertices": [{"id": ..., "parity": 0|1}, ...],
    "edges": [[u, v], ...]}; parity, connectivity and loop checks are
    enforced by the graph constructor.
    """
    if source == "B":
        return make_standard("B")
    if source == "theta":
        parity = {v: v % 2 for v in range(6)}
        edges = frozenset(frozenset(e) for e in
                          [(0, 1), (1, 2), (2, 3), (3, 0),
                           (1, 4), (4, 5), (5, 0)])
        return BiGraph(tuple(range(6)), parity, edges)
    if len(source) >= 2 and source[0] in "CL" and source[1:].isdigit():
        return make_standard(source[0], int(source[1:]))
    with open(source) as fh:
        data = json.load(fh)
    return graph_from_json(data)


def _parse_pinch(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(sorted(int(x) for x in text.split(",")))


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, value))


def _jsonable(value):
    """Stringify non-JSON dict keys (tuples) recursively."""
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, (str, int, float, bool,
                                             type(None))) else k:
                _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report, args) -> None:
    if args.format == "csv":
        rows: list = []
        _flatten("", _jsonable(report), rows)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(_jsonable(report), indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("KRL_BUDGET")
    if env is not None:
        return int(env)
    return topology.SIMPLEX_BUDGET


# ---------------------------------------------------------------------------
# subcommands: each returns (report dict, ok flag)
# ---------------------------------------------------------------------------

def cmd_sparse(args):
    two_n = 2 * args.n
    counts = {p: len(combinatorics.enumerate_sparse(two_n, p))
              for p in range(args.n + 1)}
    gf = combinatorics.gf_coefficients(args.n)
    report = {
        "two_n": two_n,
        "counts": counts,
        "catalan_size_n": counts[args.n],
        "generating_function_row": gf[args.n],
        "subsets": [list(J) for J in combinatorics.enumerate_sparse(two_n)],
    }
    ok = all(counts[p] == combinatorics.sparse_count(args.n, p)
             for p in counts) and gf[args.n][: args.n + 1] == \
        [counts[p] for p in range(args.n + 1)]
    return report, ok


def cmd_ncm(args):
    matchings = combinatorics.enumerate_matchings(args.n)
    two_n = 2 * args.n
    bad = []
    for tau in matchings:
        J = combinatorics.lambda_of(tau)
        if combinatorics.mu_of(J, two_n) != tau:
            bad.append({"matching": combinatorics.matching_pairs(tau),
                        "lambda": list(J)})
    report = {
        "n": args.n,
        "count": len(matchings),
        "catalan": combinatorics.sparse_count(args.n, args.n),
        "matchings": [combinatorics.matching_pairs(t) for t in matchings],
        "roundtrip_failures": bad,
    }
    return report, len(matchings) == report["catalan"] and not bad


def cmd_ring(args):
    ranks = springer.hilbert_ranks(args.n)
    if args.ranks:
        # bare ranks output, machine-readable
        report = ranks
        return report, True
    lead = springer.leading_check(args.n, do_snf=args.n <= 3)
    report = {"n": args.n, "ranks": ranks, "leading_check": lead}
    ok = not lead["leading_failures"] and \
        lead.get("snf_divisors_all_one", True)
    return report, ok


def cmd_fold(args):
    if args.graph:
        G = graph_parse(args.graph)
        folds = enumerate_tree_foldings(G, "any")
        report = {"graph_vertices": list(G.vertices),
                  "tree_foldings": [[list(c) for c in p] for p in folds],
                  "count": len(folds)}
        return report, True
    A = _parse_pinch(args.pinch)
    h = hedgehog_analyze(args.n, A)
    report = {"n": args.n, "pinch": list(A),
              "spine_indices": list(h.spine_indices),
              "body_indices": list(h.body_indices),
              "ring": graph_rings.hedgehog_ring(args.n, A)}
    return report, report["ring"]["match"]


def cmd_sgring(args):
    G = graph_parse(args.graph)
    structure = graph_rings.graded_structure(G)
    report = {
        "ranks": graph_rings.structure_ranks(structure),
        "structure": [[r, t] for r, t in structure],
        "torsion": graph_rings.has_torsion(structure),
    }
    return report, True


def cmd_mvss(args):
    result = mvss.exactness_check(args.n)
    ok = result["all_exact"] and result["d1_squared_zero"] \
        and not result["triangular_failures"]
    return result, ok


def cmd_flags(args):
    op = args.op
    if op == "enumerate":
        flat = [[list(map(list, W)) for W in F[1:-1]]
                for F in flags.enumerate_flags(args.n, args.q)]
        report = {"n": args.n, "q": args.q, "count": len(flat),
                  "flags": flat,
                  "point_count": flags.point_count_report(args.n, args.q)}
        return report, True
    if op == "cover":
        report = flags.cover_scan(args.n, args.q)
        return report, report["covered"]
    if op == "lemmas":
        report = flags.chain_lemma_scan(args.n, args.q)
        return report, report["all_clear"]
    if op == "tree":
        results = []
        ok = True
        for F in flags.enumerate_flags(args.n, args.q):
            _, rep = flags.tree_from_flag(F, args.n, args.q)
            ok = ok and rep["is_tree"] and rep["path_metric_matches"]
            results.append(rep)
        report = {"n": args.n, "q": args.q, "flags": len(results),
                  "edge_counts": sorted(r["edge_count"] for r in results),
                  "all_trees": ok}
        return report, ok
    raise ValueError(f"unknown flags operation {op!r}")


def cmd_cohomology(args):
    G = graph_parse(args.graph)
    model = "small" if args.large else "octahedron"
    if args.large:
        print("large run: union-of-sphere-products over the 4-vertex "
              "sphere model; expect minutes of exact SNF", file=sys.stderr)
    rep = topology.compare_with_S(G, budget=_budget(args), model=model)
    if args.export:
        complex_ = topology.y_complex(G, _budget(args))
        with open(args.export, "w") as fh:
            for level in complex_:
                for simplex in level:
                    fh.write(" ".join(
                        "(" + ",".join(str(x) for x in v) + ")"
                        for v in simplex) + "\n")
    return rep, rep["match"]


def cmd_conjecture(args):
    rep = combinatorics.conjecture_scan(args.n)
    return rep, not rep["counterexamples"]


# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--pinch", default="", help="comma-separated pinch set")
    p.add_argument("--graph", default="",
                   help="graph JSON file or standard name (B, C2, L1, theta)")
    p.add_argument("--out", default="", help="write the report here")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--budget", type=int, default=None,
                   help="simplex budget (overrides KRL_BUDGET)")
    p.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; execution is serial")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--large", action="store_true",
                   help="enable the large topology runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kslab", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    handlers = {
        "sparse": cmd_sparse, "ncm": cmd_ncm, "ring": cmd_ring,
        "fold": cmd_fold, "sgring": cmd_sgring, "mvss": cmd_mvss,
        "flags": cmd_flags, "cohomology": cmd_cohomology,
        "conjecture": cmd_conjecture,
    }
    for name, fn in handlers.items():
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(handler=fn)
        if name == "ring":
            p.add_argument("--ranks", action="store_true",
                           help="print the graded ranks only")
        if name == "flags":
            p.add_argument("--op", default="cover",
                           choices=("enumerate", "cover", "lemmas", "tree"))
        if name == "cohomology":
            p.add_argument("--export", default="",
                           help="write the simplicial complex, one simplex "
                                "per line")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, ok = args.handler(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
