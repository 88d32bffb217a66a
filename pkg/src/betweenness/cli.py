"""``bwl`` command-line interface.

Every subcommand reads its input from a file argument or stdin (``-``) and
writes one of the text formats (``.wg``, ``.bws``, ``.th``, ``.metric``) or a
report.  ``--format ledger`` switches reports to ``key=value`` lines.
Exit status: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from ._guard import GuardError
from .core import (
    FormatError,
    check_frp,
    cosize,
    dumps_bws,
    find_cyclic_lines,
    is_linear,
    is_orderable,
    is_ordered,
    is_regular,
    loads_bws,
)
from .enumerate import enumerate_structures, probe_gamma_sigma, tau
from .families import FamilyRangeError, FamilySpec, build, parse_spec
from .graphs import apsp, dumps_metric, dumps_wg, induce, loads_metric, loads_wg
from .hyper import (
    dumps_th,
    is_delta_star,
    is_tight_k_star,
    is_tight_star,
    link_graph,
    loads_th,
    triangle_hypergraph,
)
from .iso import canonical_form, is_isomorphic
from .metrize import metrize_hypergraph, metrize_structure
from .verify import REGISTRY, ClaimReport, VerifyConfig, verify

LEDGER_VERSION = 1


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(args, pairs: dict, text: str | None = None) -> None:
    """Print a report either as prose lines or as one ledger line."""
    if args.format == "ledger":
        print(" ".join(f"{k}={_ledger_value(v)}" for k, v in pairs.items()))
    else:
        print(text if text is not None else "\n".join(f"{k}: {v}" for k, v in pairs.items()))


def _ledger_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"), default=str)
    s = str(v)
    return s.replace(" ", "_") if s else "-"


# ------------------------------------------------------------ subcommands

def cmd_family(args) -> int:
    if args.n is None:
        spec = parse_spec(args.kind + (f"^{args.c}" if args.c is not None and "^" not in args.kind else ""))
    else:
        kind = args.kind
        if kind == "K" and args.a is not None:
            kind = "Kab"
        spec = FamilySpec(kind, args.n, args.i, args.c, args.a, args.b)
        if kind == "Kab":
            spec = FamilySpec(kind, args.a + args.b, None, None, args.a, args.b)
    sys.stdout.write(dumps_wg(build(spec)))
    return 0


def cmd_induce(args) -> int:
    text = _read(args.input)
    is_graph = any(ln.split()[:1] == ["e"] for ln in text.splitlines())
    metric = apsp(loads_wg(text)) if is_graph or args.graph else loads_metric(text)
    sys.stdout.write(dumps_bws(induce(metric)))
    return 0


def cmd_check(args) -> int:
    b = loads_bws(_read(args.input))
    order = is_ordered(b)
    orderable = is_orderable(b) if b.n <= 10 else None
    pairs = {
        "n": b.n,
        "frp": check_frp(b),
        "cosize": cosize(b),
        "linear": is_linear(b),
        "ordered": order is not None,
        "regular": is_regular(b),
        "cyclic_lines": len(find_cyclic_lines(b)),
        "orderable": orderable is not None,
    }
    if order is not None:
        pairs["order"] = list(order)
    elif orderable is not None:
        pairs["ordering"] = list(orderable)
    _emit(args, pairs)
    return 0


def cmd_iso(args) -> int:
    b1 = loads_bws(_read(args.first))
    if args.second is None:
        _emit(args, {"n": b1.n, "canonical_form": canonical_form(b1).hex()})
        return 0
    b2 = loads_bws(Path(args.second).read_text())
    if b1.n != b2.n:
        _emit(args, {"isomorphic": False, "reason": "different orders"})
        return 0
    _emit(args, {"isomorphic": is_isomorphic(b1, b2)})
    return 0


def cmd_hyper(args) -> int:
    text = _read(args.input)
    if args.from_th:
        h = loads_th(text)
    else:
        h = triangle_hypergraph(loads_bws(text))
    if not (args.info or args.k_star is not None or args.link is not None):
        sys.stdout.write(dumps_th(h))
        return 0
    pairs = {"n": h.n, "edges": len(h)}
    if args.info and len(h):
        d = is_delta_star(h)
        t = is_tight_star(h)
        pairs["delta_star"] = sorted(d) if d is not None else False
        pairs["tight_star"] = list(t) if t is not None else False
    if args.k_star is not None:
        pairs[f"tight_{args.k_star}_star"] = is_tight_k_star(h, args.k_star)
    if args.link is not None:
        g = link_graph(h, args.link)
        pairs["link_edges"] = sorted(list(e) for e in g.edges)
    _emit(args, pairs)
    return 0


def cmd_metrize(args) -> int:
    out = Path(args.out) if args.out else None
    if args.structure:
        b = loads_bws(_read(args.structure))
        m = metrize_structure(b)
        pairs = {"verdict": "Metrizable" if m else "NotMetrizable", "n": b.n}
        if m is not None:
            pairs["metric"] = _write_metric(out, "certificate", dumps_metric(m)) if out else None
        _emit(args, {k: v for k, v in pairs.items() if v is not None})
        if m is not None and out is None and args.format == "text":
            sys.stdout.write(dumps_metric(m))
        return 0
    if not args.hypergraph:
        raise UsageError("metrize needs --hypergraph FILE or --structure FILE")
    h = loads_th(_read(args.hypergraph))
    v = metrize_hypergraph(h, collect_all=args.all)
    pairs = {"verdict": v.label(), "n": h.n, "edges": len(h), "assignments": v.assignments_searched}
    if v.realizations is not None:
        pairs["classes"] = len(v.realizations)
        pairs["metrizable_classes"] = sum(r.metrizable for r in v.realizations)
    if out is not None:
        files = []
        if v.metric is not None:
            files.append(_write_metric(out, "certificate", dumps_metric(v.metric)))
            files.append(_write_text(out, "certificate.bws", dumps_bws(v.structure)))
        for i, r in enumerate(v.realizations or [], 1):
            files.append(_write_text(out, f"class{i}.bws", dumps_bws(r.structure)))
            if r.metric is not None:
                files.append(_write_metric(out, f"class{i}", dumps_metric(r.metric)))
        pairs["files"] = files
    _emit(args, pairs)
    if v.metric is not None and out is None and args.format == "text":
        sys.stdout.write(dumps_metric(v.metric))
    return 0


def _write_text(out: Path, name: str, text: str) -> str:
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)
    return str(out / name)


def _write_metric(out: Path, stem: str, text: str) -> str:
    return _write_text(out, f"{stem}.metric", text)


def _cosize_arg(s: str):
    try:
        if ".." in s:
            lo, hi = s.split("..", 1)
            return int(lo or 0), int(hi)
        return int(s)
    except ValueError:
        raise UsageError(f"--cosize must be M, LO..HI or ..HI, got {s!r}") from None


def cmd_enumerate(args) -> int:
    res = enumerate_structures(
        args.n, _cosize_arg(args.cosize), args.filter,
        long_run=args.long_run, workers=args.workers,
        checkpoint=Path(args.checkpoint) if args.checkpoint else None,
    )
    paths = []
    if args.out:
        out = Path(args.out)
        for k, c in enumerate(res.classes, 1):
            paths.append(_write_text(out, f"class{k:03d}.bws", dumps_bws(c.representative)))
    if args.format == "ledger":
        _emit(args, {"n": res.n, "cosize": args.cosize, "filter": res.filter.value,
                     "classes": len(res), "labeled": [c.labeled_count for c in res.classes],
                     "wall_time": f"{res.wall_time:.3f}"})
    else:
        print(f"n={res.n} cosize={args.cosize} filter={res.filter.value}: {len(res)} classes "
              f"({res.wall_time:.2f}s)")
        for k, c in enumerate(res.classes, 1):
            line = f"  class {k}: {c.labeled_count} labeled, form {c.form.hex()}"
            if paths:
                line += f" -> {paths[k - 1]}"
            print(line)
    return 0


def cmd_tau(args) -> int:
    t = tau(args.n, args.k, args.filter, long_run=args.long_run)
    _emit(args, {"n": args.n, "k": args.k, "filter": args.filter, "tau": t})
    return 0


def cmd_probe(args) -> int:
    rows = probe_gamma_sigma(args.k, args.c, range(args.n_from, args.n_to + 1), long_run=args.long_run)
    for r in rows:
        pairs = {"k": args.k, "c": args.c, "n": r.n, "cosize": r.cosize, "nonempty": r.nonempty}
        _emit(args, pairs, f"n={r.n} cosize={r.cosize} {'nonempty' if r.nonempty else 'empty'}")
    return 0


def _report_pairs(rep: ClaimReport, paths) -> dict:
    return {
        "claim_id": rep.claim_id,
        "verdict": rep.verdict,
        "params": rep.params,
        "runtime": f"{rep.runtime:.3f}",
        "witnesses": [str(p) for p in paths],
        "out_of_scope": rep.out_of_scope,
    }


def _print_report(args, rep: ClaimReport, paths) -> None:
    if args.format == "ledger":
        _emit(args, _report_pairs(rep, paths))
        return
    print(f"{rep.claim_id}: {rep.verdict} ({rep.runtime:.2f}s) {REGISTRY[rep.claim_id].title}")
    for k, v in rep.params.items():
        print(f"  {k} = {v}")
    for d in rep.details:
        print(f"  {d}")
    for p in paths:
        print(f"  witness: {p}")
    for s in rep.out_of_scope:
        print(f"  out of scope: {s}")


def _run_claim(job):
    cid, max_n, long_run, out = job
    rep = verify(cid, max_n, long_run)
    if not rep.ok and not out:
        out = "bwl-witnesses"  # a failure always leaves its counterexamples on disk
    paths = rep.write_witnesses(Path(out) / cid) if out and rep.witnesses else []
    return rep, paths


def cmd_verify(args) -> int:
    if args.claim not in REGISTRY:
        raise UsageError(f"unknown claim {args.claim!r}; known: {', '.join(REGISTRY)}")
    if args.format == "ledger":
        print(f"# bwl-ledger version={LEDGER_VERSION}")
    rep, paths = _run_claim((args.claim, args.max_n, args.long_run, args.out))
    _print_report(args, rep, paths)
    return 0 if rep.ok else 1


def cmd_verify_all(args) -> int:
    cfg = VerifyConfig(args.max_n, args.long_run, args.workers, Path(args.out) if args.out else None)
    jobs = [(cid, cfg.max_n, cfg.long_run, cfg.out) for cid in cfg.claim_ids()]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_claim, jobs))
    else:
        results = [_run_claim(j) for j in jobs]
    lines = [f"# bwl-ledger version={LEDGER_VERSION} max_n={args.max_n}"]
    if args.format == "ledger":
        print(lines[0])
    for rep, paths in results:
        _print_report(args, rep, paths)
        lines.append(" ".join(f"{k}={_ledger_value(v)}" for k, v in _report_pairs(rep, paths).items()))
    failed = [rep.claim_id for rep, _ in results if not rep.ok]
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "ledger.txt").write_text("\n".join(lines) + "\n")
    if args.format == "text":
        print(f"{len(results) - len(failed)}/{len(results)} claims PASS" + (f"; FAIL: {', '.join(failed)}" if failed else ""))
    return 1 if failed else 0


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "ledger"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="bwl", description="Finite betweenness structures toolkit.")
    p.add_argument("--version", action="version", version=f"bwl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("family", parents=[common], help="emit a family graph as .wg")
    s.add_argument("kind", help="P, C, K, Kab, Q, R, S, T or a full label such as R6,1^4")
    s.add_argument("--n", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--c", type=int)
    s.add_argument("--a", type=int)
    s.add_argument("--b", type=int)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("induce", parents=[common], help=".wg or .metric to .bws")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--graph", action="store_true", help="treat input as .wg even without edges")
    s.set_defaults(func=cmd_induce)

    s = sub.add_parser("check", parents=[common], help="axioms and shape predicates of a .bws")
    s.add_argument("input", nargs="?", default="-")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("iso", parents=[common], help="canonical form or isomorphism test")
    s.add_argument("first", nargs="?", default="-")
    s.add_argument("second", nargs="?")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("hyper", parents=[common], help="triangle hypergraph (.th) and predicates")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--from-th", action="store_true", help="input is already a .th hypergraph")
    s.add_argument("--info", action="store_true", help="report delta-star and tight-star kernels")
    s.add_argument("--k-star", type=int, help="test for a tight k-star")
    s.add_argument("--link", type=int, help="print the link graph of a point")
    s.set_defaults(func=cmd_hyper)

    s = sub.add_parser("metrize", parents=[common], help="metrize a structure or a hypergraph")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--hypergraph")
    g.add_argument("--structure")
    s.add_argument("--all", action="store_true", help="collect every realizing class")
    s.add_argument("--out", help="directory for certificate files")
    s.set_defaults(func=cmd_metrize)

    s = sub.add_parser("enumerate", parents=[common], help="classes of almost-metrizable structures")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--cosize", required=True, help="exact value, LO..HI or ..HI")
    s.add_argument("--filter", choices=("trivial", "regular", "orderable"), default="trivial")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--long-run", action="store_true", help="allow n = 8")
    s.add_argument("--checkpoint")
    s.add_argument("--out", help="directory for class representatives")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("tau", parents=[common], help="smallest nonempty co-size above k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--filter", choices=("trivial", "regular", "orderable"), default="trivial")
    s.add_argument("--long-run", action="store_true")
    s.set_defaults(func=cmd_tau)

    s = sub.add_parser("probe", parents=[common], help="emptiness of B(n, kn - c)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.add_argument("--long-run", action="store_true")
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("verify", parents=[common], help="run one registered claim")
    s.add_argument("claim")
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--long-run", action="store_true")
    s.add_argument("--out", help="directory for witness files")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-all", parents=[common], help="run every registered claim")
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--long-run", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="directory for the ledger and witness files")
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        code = args.func(args)
    except (UsageError, FamilyRangeError, GuardError, FormatError, FileNotFoundError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"bwl {args.command}: error: {msg}", file=sys.stderr)
        return 2
    logging.getLogger(__name__).debug("%s finished in %.2fs", args.command, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
