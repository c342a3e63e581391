"""Command-line front end.

Every subcommand prints one report (JSON by default) carrying the tool version,
the full parameter map and the seed. Exit status: 0 success, 1 input error,
2 refusal because a cap or search budget was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .certificate import (
    ALL_BIPARTITE,
    GOOD_LOWER_BOUND,
    CertificateError,
    build_family,
    closure_speed,
    count_degenerate,
    degenerate_count_bound,
    ledger,
    ledger_sweep,
    parse_family,
    search_counterexample_exhaustive,
    serialize_family,
)
from .core import parse_bipartite, parse_many, read_any_graph, sample_bipartite, serialize, serialize_bipartite
from .degeneracy import (
    DEFAULT_BUDGET,
    BadSubgraphQuery,
    Outcome,
    find_bad_subgraph,
    is_good,
    monte_carlo_lemma21,
    peel_ordering,
)
from .errors import CapExceeded, GraphError, SchemeError
from .labeling import degenerate_scheme, label, parse_labeling, serialize_labeling, verify_labeling
from .universal import count_representable, find_induced_embedding, min_universal_size, universal_from_scheme

TOOL = "implicit-graphs"
POOL_MODES = {"all": ALL_BIPARTITE, "good": GOOD_LOWER_BOUND}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Refusal(Exception):
    """Carries a completed report whose outcome is a budget refusal."""

    def __init__(self, result):
        self.result = result


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _read(path: str) -> str:
    return Path(path).read_text()


def _read_graphs(paths) -> list:
    graphs = []
    for p in paths:
        text = _read(p)
        if text.lstrip().startswith("FAMILY"):
            _, _, blocks = parse_family(text)
            graphs += [g for n in sorted(blocks) for g in blocks[n]]
        elif text.lstrip().startswith("B"):
            graphs.append(parse_bipartite(text).to_graph())
        else:
            graphs += parse_many(text)
    return graphs


def _scheme_arg(args) -> str:
    if args.scheme == "degenerate":
        if args.k is None:
            raise UsageError("--scheme degenerate requires --k")
        return degenerate_scheme(args.k)
    return args.scheme


# ---------------------------------------------------------------------------
# Subcommands: each returns (result dict, text rendering or None)
# ---------------------------------------------------------------------------


def cmd_sample_bipartite(args):
    b = sample_bipartite(args.n, args.m, args.seed)
    text = serialize_bipartite(b)
    return {"half": b.half, "m": b.m, "graph": text}, text


def cmd_degeneracy(args):
    g = read_any_graph(_read(args.input))
    cert = peel_ordering(g)
    return {"n": g.n, "edges": g.num_edges, "degeneracy": cert.degeneracy,
            "order": list(cert.order), "forward_degree": list(cert.forward_degree)}, None


def _bad_result(res):
    out = {"outcome": res.outcome.value, "expansions": res.expansions,
           "witness": list(res.witness) if res.witness else None}
    if res.outcome is Outcome.BUDGET_EXCEEDED:
        raise _Refusal(out)
    return out


def cmd_find_bad(args):
    g = read_any_graph(_read(args.input))
    res = find_bad_subgraph(g, BadSubgraphQuery(args.c, args.cap, args.budget))
    return _bad_result(res), None


def cmd_is_good(args):
    b = parse_bipartite(_read(args.input))
    res = is_good(b, args.eps, args.eps_prime, args.budget)
    out = {"verdict": res.verdict, "c": res.c, "size_cap": res.size_cap,
           "size_cap_counts": "total vertices (both parts)",
           "witness": list(res.witness) if res.witness else None}
    if res.outcome is Outcome.BUDGET_EXCEEDED:
        raise _Refusal(out)
    return out, res.verdict + "\n"


def cmd_lemma21(args):
    rep = monte_carlo_lemma21(args.n, args.m, args.c, args.cap, args.trials, args.seed,
                              budget=args.budget, workers=args.workers)
    return rep.to_json(), None


def cmd_label(args):
    g = read_any_graph(_read(args.input))
    lab = label(g, _scheme_arg(args))
    text = serialize_labeling(lab)
    return {"scheme": lab.scheme, "n": lab.n, "width": lab.width, "labeling": text}, text


def cmd_verify_label(args):
    g = read_any_graph(_read(args.input))
    lab = parse_labeling(_read(args.labels))
    ok = verify_labeling(g, lab)
    return {"scheme": lab.scheme, "width": lab.width, "valid": ok}, f"{str(ok).lower()}\n"


def cmd_build_universal(args):
    univ = universal_from_scheme(_scheme_arg(args), args.n, cap=args.cap)
    text = serialize(univ.carrier)
    return {"provenance": univ.provenance, "vertices": univ.size,
            "edges": univ.carrier.num_edges, "carrier": text}, text


def cmd_embed(args):
    f = read_any_graph(_read(args.f))
    u = read_any_graph(_read(args.u))
    emb = find_induced_embedding(f, u)
    if emb is None:
        return {"embedding": None}, "none\n"
    text = "".join(f"{v} -> {x}\n" for v, x in emb.pairs())
    return {"embedding": [f"{v} -> {x}" for v, x in emb.pairs()]}, text


def cmd_min_universal(args):
    family = _read_graphs(args.input)
    size = min_universal_size(family, args.u_max)
    return {"family_size": len(family), "min_universal_size": size}, f"{size}\n"


def cmd_count_representable(args):
    u = read_any_graph(_read(args.input))
    count = count_representable(u, args.n, budget=args.budget)
    return {"u": u.n, "n": args.n, "count": count, "u_pow_n": str(u.n ** args.n)}, None


def cmd_count_degenerate(args):
    count = count_degenerate(args.n, args.c)
    return {"n": args.n, "c": args.c, "count": count,
            "bound": str(degenerate_count_bound(args.n, args.c))}, None


def cmd_closure_speed(args):
    members = _read_graphs(args.input)
    rep = closure_speed(members, args.n_max, c=args.c)
    return rep.to_json(), None


def cmd_ledger(args):
    led = ledger(args.n, args.u, args.k, args.eps, args.eps_prime, POOL_MODES[args.pool], args.prec)
    return led.to_json(), None


def cmd_ledger_sweep(args):
    rows = [led.to_json() for led in ledger_sweep(args.n_max, args.eps, args.delta,
                                                   POOL_MODES[args.pool], args.prec, args.n_min)]
    witnesses = [r for r in rows if r["verdict"]]
    return {"count": len(rows), "verdict_true": len(witnesses), "rows": rows}, None


def cmd_search_counterexample(args):
    res = search_counterexample_exhaustive(args.n, args.u, args.k, args.seed, args.attempts)
    return res.to_json(), None


def cmd_build_family(args):
    fam = build_family(args.n_list, args.delta, args.seed, args.cap, args.budget)
    text = serialize_family(fam)
    out = fam.to_json()
    out["family"] = text
    return out, text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=TOOL, description="Implicit graph representations: experiments and certificates.")
    p.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, stochastic=False):
        sp = sub.add_parser(name)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=["json", "csv", "text"], default="json")
        sp.add_argument("--out", help="write the report here instead of stdout")
        if stochastic:
            sp.add_argument("--seed", type=_seed, required=True)
        return sp

    sp = add("sample-bipartite", cmd_sample_bipartite, stochastic=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("degeneracy", cmd_degeneracy)
    sp.add_argument("--in", dest="input", required=True)

    sp = add("find-bad", cmd_find_bad)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("is-good", cmd_is_good)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--eps-prime", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("lemma21", cmd_lemma21, stochastic=True)
    for name in ("--n", "--m", "--c", "--cap", "--trials"):
        sp.add_argument(name, type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)

    sp = add("label", cmd_label)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--scheme", choices=["forest", "row", "degenerate"], required=True)
    sp.add_argument("--k", type=int)

    sp = add("verify-label", cmd_verify_label)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--labels", required=True)

    sp = add("build-universal", cmd_build_universal)
    sp.add_argument("--scheme", choices=["forest", "row", "degenerate"], required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--cap", type=int, default=1 << 20)

    sp = add("embed", cmd_embed)
    sp.add_argument("--f", required=True, help="graph to embed")
    sp.add_argument("--u", required=True, help="host graph")

    sp = add("min-universal", cmd_min_universal)
    sp.add_argument("--in", dest="input", nargs="+", required=True)
    sp.add_argument("--u-max", type=int, required=True)

    sp = add("count-representable", cmd_count_representable)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10**7)

    sp = add("count-degenerate", cmd_count_degenerate)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)

    sp = add("closure-speed", cmd_closure_speed)
    sp.add_argument("--in", dest="input", nargs="+", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--c", type=int)

    sp = add("ledger", cmd_ledger)
    for name in ("--n", "--u", "--k"):
        sp.add_argument(name, type=int, required=True)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--eps-prime", default="1/2")
    sp.add_argument("--pool", choices=sorted(POOL_MODES), default="all")
    sp.add_argument("--prec", type=int, default=64)

    sp = add("ledger-sweep", cmd_ledger_sweep)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--eps", required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--pool", choices=sorted(POOL_MODES), default="all")
    sp.add_argument("--prec", type=int, default=64)

    sp = add("search-counterexample", cmd_search_counterexample, stochastic=True)
    for name in ("--n", "--u", "--k", "--attempts"):
        sp.add_argument(name, type=int, required=True)

    sp = add("build-family", cmd_build_family, stochastic=True)
    sp.add_argument("--n-list", type=lambda s: [int(x) for x in s.split(",")], required=True)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return p


def _params(args) -> dict:
    skip = {"func", "format", "out", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def _render(report: dict, fmt: str, text: str | None) -> str:
    if fmt == "text" and text is not None:
        return text
    if fmt == "csv":
        result = report.get("result") or {}
        rows = result.get("rows")
        if rows is None:
            rows = [{k: v for k, v in result.items() if not isinstance(v, (list, dict))}]
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        lines = [f"{k}: {v}" for k, v in (report.get("result") or {}).items()
                 if not isinstance(v, (list, dict))]
        return "\n".join(lines) + "\n"
    return json.dumps(report, indent=2) + "\n"


def run(argv) -> tuple[int, str, str]:
    """Execute one command; returns (exit status, report text, diagnostic text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return 1, "", f"{TOOL}: {e}\n"
    report = {"tool": TOOL, "version": __version__, "command": args.command,
              "params": _params(args), "seed": getattr(args, "seed", None)}
    status, text, diag = 0, None, ""
    try:
        result, text = args.func(args)
        report["result"] = result
    except _Refusal as r:
        report["result"] = r.result
        report["refusal"] = {"cap": "budget", "limit": getattr(args, "budget", None), "required": None}
        status, text, diag = 2, None, f"{TOOL}: search budget exhausted\n"
    except CapExceeded as e:
        report["refusal"] = {"cap": e.cap, "limit": e.limit, "required": e.required}
        status, text, diag = 2, None, f"{TOOL}: refused: {e}\n"
    except (GraphError, SchemeError, CertificateError, UsageError, ValueError, OSError) as e:
        report["error"] = str(e)
        status, text, diag = 1, None, f"{TOOL}: error: {e}\n"
    out = _render(report, args.format if status == 0 else "json", text)
    if args.out:
        Path(args.out).write_text(out)
        out = ""
    return status, out, diag


def main(argv=None) -> int:
    status, out, diag = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if diag:
        sys.stderr.write(diag)
    return status


if __name__ == "__main__":
    sys.exit(main())
