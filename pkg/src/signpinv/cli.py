"""Command-line front end.

Every command reads an edge-list file (``-`` for stdin) and prints either a
plain-text report or, with ``--json``, an output document::

    {"command": ..., "input_digest": ..., "result": ..., "verification": ...}

Rationals are always strings ``"p/q"``; edge indices in listings are
1-based, matching row numbers of the incidence pseudoinverse.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage, input or precondition errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from fractions import Fraction

from . import enumeration as en
from . import fixtures
from . import generate as gen
from . import mpinv
from . import verify as vf
from .ratmat import RatMatrix, det, format_rational, pinv_oracle, rank
from .sgraph import (
    GraphError,
    SignedGraph,
    digest,
    from_edge_list,
    incidence,
    laplacian,
    unbalanced_cycle,
)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

RESISTANCE_BANNER = (
    "signed resistance r_ij = l+_ii + l+_jj - 2 sgn(P_ij) l+_ij; its agreement with "
    "graph distance is a conjecture checked empirically, not a theorem"
)


class CommandFailed(Exception):
    """A requested check did not pass; carries the document to print."""

    def __init__(self, doc: dict):
        self.doc = doc
        super().__init__("check failed")


def _mat(m: RatMatrix) -> list[list[str]]:
    return m.to_strings()


def _read_graph(path: str) -> SignedGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return from_edge_list(text)


def _doc(command: str, input_digest: str, result, verification=None) -> dict:
    return {
        "command": command,
        "input_digest": input_digest,
        "result": result,
        "verification": verification or {},
    }


# --- commands --------------------------------------------------------------

def cmd_info(args) -> dict:
    g = _read_graph(args.graph)
    connected = g.is_connected()
    res = {"n": g.n, "m": g.m, "connected": connected, "rank_N": rank(incidence(g))}
    if connected:
        cyc = unbalanced_cycle(g)
        res["balanced"] = cyc is None
        res["unbalanced_cycle"] = None if cyc is None else [k + 1 for k in cyc]
        res["expected_rank"] = g.n - 1 if cyc is None else g.n
    ver = {}
    if connected:
        ver["rank_matches_balance"] = res["rank_N"] == res["expected_rank"]
    return _doc("info", digest(g), res, ver)


def cmd_incidence(args) -> dict:
    g = _read_graph(args.graph)
    return _doc("incidence", digest(g), {"N": _mat(incidence(g))})


def cmd_laplacian(args) -> dict:
    g = _read_graph(args.graph)
    L = laplacian(g)
    N = incidence(g)
    return _doc("laplacian", digest(g), {"L": _mat(L)}, {"L_equals_NNT": L == N @ N.T})


def cmd_pinv(args) -> dict:
    g = _read_graph(args.graph)
    rep = mpinv.pinv(g, args.method, args.cap)
    ver = {"method": rep.method, "penrose": list(rep.penrose_ok)}
    if args.check:
        ver["oracle_equal"] = rep.matrix == pinv_oracle(incidence(g))
    doc = _doc("pinv", digest(g), {"shape": list(rep.matrix.shape), "N_pinv": _mat(rep.matrix)}, ver)
    if not rep.ok or ver.get("oracle_equal") is False:
        raise CommandFailed(doc)
    return doc


def cmd_lpinv(args) -> dict:
    g = _read_graph(args.graph)
    rep = mpinv.laplacian_pinv(g, args.cap)
    doc = _doc("lpinv", digest(g), {"L_pinv": _mat(rep.matrix)},
               {"method": rep.method, "penrose": list(rep.penrose_ok)})
    if not rep.ok:
        raise CommandFailed(doc)
    return doc


def cmd_resistance(args) -> dict:
    g = _read_graph(args.graph)
    R = mpinv.signed_resistance(g, args.cap)
    ver = {
        "conjecture": RESISTANCE_BANNER,
        "symmetric": R.is_symmetric(),
        "zero_diagonal": all(R[i, i] == 0 for i in range(g.n)),
    }
    if g.is_tree():
        ver["equals_tree_distance"] = R == vf.distance_matrix(g)
    return _doc("resistance", digest(g), {"R": _mat(R)}, ver)


def _listing_tree(t: en.SpanningTree) -> dict:
    return {"edges": [k + 1 for k in t.edge_indices]}


def _listing_tu(h: en.TUSubgraph) -> dict:
    return {
        "edges": [k + 1 for k in h.edge_indices],
        "c": h.c,
        "components": [
            {"vertices": sorted(c.vertices), "edges": [k + 1 for k in c.edge_indices]}
            for c in h.components
        ],
    }


def cmd_enumerate(args) -> dict:
    g = _read_graph(args.graph)
    g.require_connected()
    cyc = unbalanced_cycle(g)
    kind = args.kind or ("trees" if cyc is None else "tu")
    dL = det(laplacian(g))
    vol = en.vol_squared(g, args.cap)
    res: dict = {"kind": kind}
    ver: dict = {"det_L": format_rational(dL), "vol2": format_rational(vol)}
    if kind == "trees":
        items = en.spanning_trees(g, args.cap)
        res["count"] = len(items)
        if not args.count_only:
            res["items"] = [_listing_tree(t) for t in items]
        ver["tau_matrix_tree"] = en.matrix_tree_count(g)
        ver["tau_matches_matrix_tree"] = len(items) == ver["tau_matrix_tree"]
    else:
        items = en.tu_subgraphs(g, args.cap)
        res["count"] = len(items)
        res["by_c"] = {str(c): sum(1 for h in items if h.c == c)
                       for c in sorted({h.c for h in items})}
        if not args.count_only:
            res["items"] = [_listing_tu(h) for h in items]
    res["vol2"] = format_rational(vol)
    if cyc is None:
        ver["det_L_zero"] = dL == 0
        ver["vol2_equals_n_tau"] = vol == g.n * en.tree_count(g, args.cap)
    else:
        ver["det_L_equals_vol2"] = dL == vol
    doc = _doc("enumerate", digest(g), res, ver)
    if any(v is False for v in ver.values()):
        raise CommandFailed(doc)
    return doc


def cmd_vol(args) -> dict:
    g = _read_graph(args.graph)
    vol = en.vol_squared(g, args.cap)
    ver = {"cauchy_binet": format_rational(vf.vol_squared_from_laplacian(g))}
    ver["equal"] = vol == vf.vol_squared_from_laplacian(g)
    doc = _doc("vol", digest(g), {"vol2": format_rational(vol)}, ver)
    if not ver["equal"]:
        raise CommandFailed(doc)
    return doc


def _fixture_goldens() -> dict[str, bool]:
    out = {}
    g = fixtures.load("tree7")
    out["tree7_pinv"] = mpinv.tree_pinv(g).matrix == fixtures.tree7_pinv()
    g = fixtures.load("unicyclic9")
    out["unicyclic9_inverse"] = mpinv.unbalanced_unicyclic_inverse(g).matrix == \
        fixtures.unicyclic9_inverse()
    for name, count, vol, entry in (("bicyclic10a", 3, 12, Fraction(-2, 3)),
                                    ("bicyclic10b", 8, 44, Fraction(-6, 11))):
        g = fixtures.load(name)
        out[f"{name}_tu_count"] = len(en.tu_subgraphs(g)) == count
        out[f"{name}_vol2"] = en.vol_squared(g) == vol
        out[f"{name}_entry_5_3"] = mpinv.general_pinv(g).matrix[4, 2] == entry
    return out


def cmd_verify(args) -> dict:
    graphs: list[SignedGraph] = []
    desc = []
    for p in args.graphs:
        graphs.append(_read_graph(p))
        desc.append(digest(graphs[-1]))
    if args.random:
        if len(args.random) not in (2, 3):
            raise GraphError("--random takes N M [SEED]")
        n, m = args.random[0], args.random[1]
        seed = args.random[2] if len(args.random) == 3 else args.seed
        rng = random.Random(seed)
        graphs.extend(gen.random_connected_graph(rng, n, m) for _ in range(args.count))
        desc.append(f"random:{n}:{m}:{seed}:{args.count}")
    exhaustive_n = args.exhaustive
    goldens = {}
    if args.fixtures:
        for name in fixtures.NAMES:
            graphs.append(fixtures.load(name))
        goldens = _fixture_goldens()
        desc.append("fixtures")
    if exhaustive_n is not None:
        desc.append(f"exhaustive:{exhaustive_n}")
    if not graphs and exhaustive_n is None:
        raise GraphError("nothing to verify: give files, --random, --exhaustive or --fixtures")
    for g in graphs:
        g.require_connected()
    summary = vf.sweep(graphs, args.cap)
    if exhaustive_n is not None:
        for g in gen.exhaustive(exhaustive_n):
            summary.add(vf.check_graph(g, args.cap))
    result = summary.as_dict()
    if goldens:
        result["fixture_goldens"] = goldens
    ok = summary.ok and all(goldens.values())
    d = hashlib.sha256("\n".join(desc).encode()).hexdigest()
    doc = _doc("verify", d, result, {"ok": ok})
    if not ok:
        raise CommandFailed(doc)
    return doc


# --- rendering ---------------------------------------------------------------

def _render_matrix(rows: list[list[str]]) -> str:
    if not rows or not rows[0]:
        return "  (empty)"
    width = max(len(x) for r in rows for x in r)
    return "\n".join("  " + " ".join(x.rjust(width) for x in r) for r in rows)


def render_text(doc: dict) -> str:
    lines = [f"# {doc['command']}  input {doc['input_digest'][:16]}"]
    for key, val in doc["result"].items():
        if isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{key}:")
            lines.append(_render_matrix(val))
        elif key == "items":
            lines.append("items:")
            for it in val:
                extra = f"  c={it['c']}" if "c" in it else ""
                lines.append(f"  edges {it['edges']}{extra}")
        elif key == "failures":
            lines.append(f"failures: {len(val)}")
            for f in val:
                lines.append(f"  failed {f['failed']} on:")
                lines.extend("    " + ln for ln in f["graph"].splitlines())
        else:
            lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
    for key, val in doc["verification"].items():
        lines.append(f"check {key}: {json.dumps(val, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(render_text(doc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON output document")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized verification (default 0)")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help=f"max edges for enumeration (default {en.DEFAULT_CAP})")

    p = argparse.ArgumentParser(prog="signpinv", parents=[common],
                                description="Exact Moore-Penrose inverses for signed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, graph=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if graph:
            sp.add_argument("graph", help="edge-list file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    add("info", cmd_info, "size, connectivity, balance and incidence rank")
    add("incidence", cmd_incidence, "incidence matrix N")
    add("laplacian", cmd_laplacian, "signed Laplacian L = D - A")
    sp = add("pinv", cmd_pinv, "Moore-Penrose inverse of N")
    sp.add_argument("--method", choices=["auto", "tree", "unicyclic", "general", "oracle"],
                    default="auto")
    sp.add_argument("--check", action="store_true", help="compare against the exact oracle")
    add("lpinv", cmd_lpinv, "Moore-Penrose inverse of L")
    add("resistance", cmd_resistance, "signed resistance matrix (balanced graphs)")
    sp = add("enumerate", cmd_enumerate, "spanning trees or TU-subgraphs")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--trees", dest="kind", action="store_const", const="trees")
    grp.add_argument("--tu", dest="kind", action="store_const", const="tu")
    sp.add_argument("--count-only", action="store_true")
    add("vol", cmd_vol, "squared volume of N")
    sp = add("verify", cmd_verify, "run the invariant suite", graph=False)
    sp.add_argument("graphs", nargs="*", help="edge-list files")
    sp.add_argument("--random", nargs="+", type=int, metavar="N M [SEED]",
                    help="random connected graphs with N vertices and M edges")
    sp.add_argument("--count", type=int, default=100, help="number of random graphs")
    sp.add_argument("--exhaustive", type=int, metavar="NMAX",
                    help="all connected signed graphs on at most NMAX vertices")
    sp.add_argument("--fixtures", action="store_true",
                    help="the packaged worked examples and their reference values")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("seed", 0), ("cap", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        doc = args.func(args)
    except CommandFailed as exc:
        _emit(exc.doc, args.json)
        return EXIT_FAIL
    except (GraphError, OSError, ValueError) as exc:
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        if args.json:
            sys.stdout.write(json.dumps(err, sort_keys=True, indent=2) + "\n")
        print(f"signpinv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(doc, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
