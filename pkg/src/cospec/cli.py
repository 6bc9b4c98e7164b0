"""``cospec`` command line.

Exit codes: 0 affirmative, 1 well-formed negative (check failed, not
cospectral, not isomorphic, nothing found), 2 usage or data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .corpus import builtin_example, example_names
from .exact import char_poly
from .hypergraph import Hypergraph, HypergraphError, are_isomorphic, parse_hypergraph, serialize_hypergraph
from .search import (
    FamilySpec,
    Kind,
    SearchConfig,
    find_cospectral_pairs,
    find_egm_switchings,
    find_ewqh_partitions,
    find_mwqh_partitions,
)
from .switching import (
    SwitchingError,
    SwitchingPartition,
    adjacency_matrix,
    apply_egm,
    apply_ewqh,
    apply_mgm_simplified,
    apply_mwqh,
    check_egm,
    check_ewqh,
    check_mgm_simplified,
    check_mwqh,
    verify_matrix_similarity,
    verify_tensor_similarity,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def _read_graph(path: str) -> Hypergraph:
    try:
        return parse_hypergraph(Path(path).read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None


def _read_partition(path: str, G: Hypergraph) -> SwitchingPartition:
    try:
        return SwitchingPartition.from_json(Path(path).read_text(), G)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _read_switching_set(path: str) -> tuple[int, ...]:
    """C from ``{"C": [...]}``, a bare list, or the union of ``{"cells": [...]}``."""
    data = _read_json(path)
    try:
        if isinstance(data, list):
            members = data
        elif "C" in data:
            members = data["C"]
        else:
            members = [v for cell in data["cells"] for v in cell]
        return tuple(sorted(int(v) for v in members))
    except (KeyError, TypeError, ValueError):
        raise UsageError(f"{path}: expected a vertex list, {{\"C\": [...]}} or {{\"cells\": [...]}}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _report_for(args, G: Hypergraph):
    if args.kind in ("ewqh", "mwqh"):
        P = _read_partition(args.partition, G)
        return (check_ewqh if args.kind == "ewqh" else check_mwqh)(G, P)
    C = _read_switching_set(args.partition)
    return (check_egm if args.kind == "egm" else check_mgm_simplified)(G, C)


def cmd_check(args) -> int:
    G = _read_graph(args.graph)
    report = _report_for(args, G)
    _emit(args, report.to_dict(), str(report))
    return OK if report.ok else NEGATIVE


def cmd_apply(args) -> int:
    G = _read_graph(args.graph)
    try:
        if args.kind in ("ewqh", "mwqh"):
            P = _read_partition(args.partition, G)
            H = (apply_ewqh if args.kind == "ewqh" else apply_mwqh)(G, P)
        else:
            C = _read_switching_set(args.partition)
            H = (apply_egm if args.kind == "egm" else apply_mgm_simplified)(G, C)
    except SwitchingError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return NEGATIVE
    data = serialize_hypergraph(H)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
    return OK


def cmd_verify(args) -> int:
    files = list(args.files)
    g_path = args.graph or (files.pop(0) if files else None)
    h_path = args.other or (files.pop(0) if files else None)
    if g_path is None or h_path is None or files:
        raise UsageError("verify needs exactly two hypergraphs (-g FILE -h FILE, or two positional files)")
    G, H = _read_graph(g_path), _read_graph(h_path)
    if (G.n, G.k) != (H.n, H.k):
        raise UsageError(f"hypergraphs differ: n,k = {G.n},{G.k} vs {H.n},{H.k}")
    if args.mode == "tensor":
        if not args.partition:
            raise UsageError("tensor mode needs -p PARTITION")
        P = _read_partition(args.partition, G)
        equal = verify_tensor_similarity(G, H, P)
        _emit(args, {"mode": "tensor", "similar": equal},
              "Q A_G Q^T = A_H" if equal else "Q A_G Q^T != A_H")
        return OK if equal else NEGATIVE
    scaled = not args.unscaled
    pg = char_poly(adjacency_matrix(G, scaled))
    ph = char_poly(adjacency_matrix(H, scaled))
    payload = {"mode": "matrix", "scaled": scaled, "cospectral": pg == ph,
               "char_poly_G": json.loads(pg.to_json()), "char_poly_H": json.loads(ph.to_json())}
    lines = [f"cospectral: {pg == ph}", f"phi_G = {pg}"]
    if pg != ph:
        lines.append(f"phi_H = {ph}")
    ok = pg == ph
    if args.partition:
        similar = verify_matrix_similarity(G, H, _read_partition(args.partition, G), scaled=scaled)
        payload["similar"] = similar
        lines.append(f"Q A_G Q^T = A_H: {similar}")
        ok = ok and similar
    _emit(args, payload, "\n".join(lines))
    return OK if ok else NEGATIVE


def cmd_iso(args) -> int:
    G, H = _read_graph(args.first), _read_graph(args.second)
    mapping = are_isomorphic(G, H)
    if mapping is None:
        _emit(args, {"isomorphic": False}, "not isomorphic")
        return NEGATIVE
    _emit(args, {"isomorphic": True, "mapping": {str(v): mapping[v] for v in sorted(mapping)}},
          " ".join(f"{v}->{mapping[v]}" for v in sorted(mapping)))
    return OK


def _int_range(text: str) -> range:
    """``3`` or ``1-3`` (inclusive)."""
    lo, sep, hi = text.partition("-")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def cmd_search(args) -> int:
    cfg = SearchConfig(
        kind=args.kind,
        t_range=args.t,
        m_range=args.m,
        max_candidates=args.max_candidates,
        time_budget=args.time,
        seed=args.seed,
        require_nonisomorphic=args.nonisomorphic,
    )
    if args.graph:
        G = _read_graph(args.graph)
        finder = {
            Kind.EWQH: find_ewqh_partitions,
            Kind.EGM: find_egm_switchings,
            Kind.MWQH: find_mwqh_partitions,
            Kind.MGM: find_mwqh_partitions,
        }[cfg.kind]
        results = finder(G, cfg)
        partial = results.partial
        lines = [r.to_json() for r in results]
    else:
        if cfg.kind not in (Kind.EWQH, Kind.MWQH):
            raise UsageError("random families need --kind ewqh or mwqh (or pass -g FILE)")
        family = FamilySpec(k=args.k, t=args.t[0], m=args.m[0], d=args.d, count=args.count)
        pairs = find_cospectral_pairs(family, cfg)
        partial = False
        lines = []
        for G, _, res in pairs:
            row = res.to_dict()
            row["G"] = serialize_hypergraph(G).decode()
            lines.append(json.dumps(row, sort_keys=True))
    if args.limit is not None:
        lines = lines[: args.limit]
    for line in lines:
        print(line)
    if partial:
        print("budget exhausted: results are partial", file=sys.stderr)
    return OK if lines else NEGATIVE


def cmd_example(args) -> int:
    try:
        ex = builtin_example(args.name)
    except KeyError:
        raise UsageError(f"unknown example {args.name!r}; known: {', '.join(example_names())}") from None
    wanted = [w.strip() for w in args.emit.split(",") if w.strip()]
    unknown = set(wanted) - {"g", "h", "partition"}
    if unknown:
        raise UsageError(f"--emit takes g, h, partition; got {', '.join(sorted(unknown))}")
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for what in wanted:
        if what == "partition":
            path = out / f"{ex.name}-partition.json"
            path.write_text(ex.partition.to_json() + "\n")
        else:
            path = out / f"{ex.name}-{what}.hgf"
            path.write_bytes(serialize_hypergraph(ex.G if what == "g" else ex.H))
        written[what] = str(path)
    _emit(args, {"name": ex.name, "kind": ex.kind, "files": written},
          "\n".join(written[w] for w in wanted))
    return OK


def cmd_spectrum(args) -> int:
    G = _read_graph(args.file)
    scaled = not args.unscaled
    p = char_poly(adjacency_matrix(G, scaled))
    _emit(args, {"mode": args.mode, "scaled": scaled, "char_poly": json.loads(p.to_json())}, str(p))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cospec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument("--json", action="store_true", help="machine-readable output")

    kinds = ["ewqh", "egm", "mwqh", "mgm"]
    for name, func, helptext in (
        ("check", cmd_check, "test the switching conditions"),
        ("apply", cmd_apply, "perform the switching and write H"),
    ):
        p = sub.add_parser(name, parents=[json_flag], help=helptext)
        p.add_argument("--kind", choices=kinds, required=True)
        p.add_argument("-g", "--graph", required=True, metavar="FILE")
        p.add_argument("-p", "--partition", required=True, metavar="FILE",
                       help="partition JSON; for egm/mgm the union of its cells (or a C list) is the switching set")
        if name == "apply":
            p.add_argument("-o", "--output", metavar="FILE")
        p.set_defaults(func=func)

    # -h is the second hypergraph here, so help moves to --help only
    p = sub.add_parser("verify", parents=[json_flag], add_help=False, help="check similarity or cospectrality")
    p.add_argument("--help", action="help", help="show this help message and exit")
    p.add_argument("--mode", choices=["tensor", "matrix"], required=True)
    p.add_argument("--unscaled", action="store_true", help="use raw pair counts instead of dividing by k-1")
    p.add_argument("-g", dest="graph", metavar="FILE")
    p.add_argument("-h", dest="other", metavar="FILE")
    p.add_argument("-p", "--partition", metavar="FILE")
    p.add_argument("files", nargs="*", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("iso", parents=[json_flag], help="find an isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("search", parents=[json_flag], help="enumerate switchings (JSON lines)")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("-g", "--graph", metavar="FILE", help="search this hypergraph; omit to sample a random family")
    p.add_argument("--t", type=_int_range, default=range(1, 4), metavar="N|A-B")
    p.add_argument("--m", type=_int_range, default=range(1, 3), metavar="N|A-B")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, metavar="N", help="emit at most N results")
    p.add_argument("--max-candidates", type=int, metavar="N")
    p.add_argument("--time", type=float, metavar="SECONDS", help="wall-clock budget")
    p.add_argument("--nonisomorphic", action="store_true", help="drop results isomorphic to G")
    p.add_argument("--k", type=int, default=3, help="family uniformity")
    p.add_argument("--d", type=int, default=3, help="family |D| (ewqh)")
    p.add_argument("--count", type=int, default=100, help="family size")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("example", parents=[json_flag], help="write a built-in example")
    p.add_argument("--name", required=True)
    p.add_argument("--emit", default="g,h,partition")
    p.add_argument("--dir", default=".")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("spectrum", parents=[json_flag], help="exact characteristic polynomial")
    p.add_argument("--mode", choices=["matrix"], default="matrix")
    p.add_argument("--unscaled", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_spectrum)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cospec: error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, HypergraphError) as exc:
        print(f"cospec: error: {exc}", file=sys.stderr)
        return USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
