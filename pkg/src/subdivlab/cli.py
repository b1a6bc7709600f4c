"""Command-line front end: ``subdivlab subdivide | analyze | lattice | verify``.

Reports go to stdout as JSON (``--format json``, the default) or as an
aligned text table. JSON floats are written with 17 significant digits and
exact rationals as ``"p/q"`` strings, so identical runs give identical bytes.

Exit codes: 0 success, 1 verification failure or numerical error,
2 usage, input or I/O error.
"""
from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .corpus import default_corpus
from .errors import (
    EdgeListParseError,
    GraphError,
    MethodUnavailableError,
    SizeLimitError,
    SubdivLabError,
)
from .graph import DEFAULT_MAX_NODES, Graph, bipartition, iterate_subdivide_with_map
from .io import format_edge_list, read_edge_list, read_entry
from .lattice import LatticeSpec, format_fraction, iterated_counts, lattice_closed_forms
from .resistance import (
    additive_dk_transfer,
    kirchhoff_transfer,
    multiplicative_dk_transfer,
    resistance_matrix_transfer,
    resistance_metrics,
)
from .spectral import graph_spectrum
from .verify import (
    CELL_CHECKS,
    DEFAULT_CHECKS,
    DEFAULT_TOLERANCES,
    GLOBAL_CHECKS,
    SCHEMA,
    STATISTICAL_CHECKS,
    reports_table,
    run_suite,
    suite_passed,
)
from .walks import hitting_matrix_transfer, kemeny_transfer, walk_metrics

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SCALAR_METRICS = ("kemeny", "kirchhoff", "additive-dk", "multiplicative-dk")
MATRIX_METRICS = ("hitting", "resistance")
ALL_METRICS = SCALAR_METRICS + MATRIX_METRICS


class UsageError(SubdivLabError):
    """Bad flags or config that argparse itself cannot catch."""


# ---------------------------------------------------------------------------
# JSON rendering
# ---------------------------------------------------------------------------

def _encode(obj: Any, indent: int | None, level: int) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return json.dumps(repr(x))
        text = "%.17g" % x
        return text if any(c in text for c in ".e") else text + ".0"
    if isinstance(obj, Fraction):
        return json.dumps(format_fraction(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        parts = [f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        flat = False
    elif isinstance(obj, (list, tuple)):
        parts = [_encode(v, indent, level + 1) for v in obj]
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    opening, closing = ("{", "}") if isinstance(obj, dict) else ("[", "]")
    if not parts:
        return opening + closing
    if indent is None or flat:
        return opening + ", ".join(parts) + closing
    pad = " " * (indent * (level + 1))
    return opening + "\n" + ",\n".join(pad + x for x in parts) + "\n" + " " * (indent * level) + closing


def dumps(obj: Any, indent: int | None = 2) -> str:
    """Deterministic JSON: insertion-ordered keys, ``%.17g`` floats, ``p/q`` rationals.

    ``indent=None`` gives a single line.
    """
    return _encode(obj, indent, 0) + "\n"


def _table(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, float):
        return "%.12g" % x
    return str(x)


# ---------------------------------------------------------------------------
# Config
# ---------------------------------------------------------------------------

@dataclass
class Config:
    """Size caps and tolerances; every science parameter is a CLI flag instead."""

    max_nodes: int = DEFAULT_MAX_NODES
    tolerances: dict[str, float] = field(default_factory=dict)

    def echo(self) -> dict:
        out: dict[str, Any] = {"max_nodes": self.max_nodes}
        for k in sorted(self.tolerances):
            out[f"tolerance.{k}"] = self.tolerances[k]
        return out


def load_config(path: str | None) -> Config:
    """Read ``key = value`` lines; ``#`` comments and blank lines are skipped.

    Recognised keys are ``max_nodes`` and ``tolerance.<check>``.
    """
    cfg = Config()
    if path is None:
        return cfg
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        parser.read_string("[config]\n" + Path(path).read_text())
    except configparser.Error as exc:
        raise UsageError(f"{path}: {exc}") from None
    for key, raw in parser["config"].items():
        try:
            if key == "max_nodes":
                cfg.max_nodes = int(raw)
                if cfg.max_nodes < 2:
                    raise ValueError
            elif key.startswith("tolerance."):
                check = key.split(".", 1)[1]
                if check not in DEFAULT_TOLERANCES:
                    raise UsageError(f"{path}: unknown check in {key!r}")
                cfg.tolerances[check] = float(raw)
                if not cfg.tolerances[check] >= 0:
                    raise ValueError
            else:
                raise UsageError(f"{path}: unknown key {key!r} (allowed: max_nodes, tolerance.<check>)")
        except ValueError:
            raise UsageError(f"{path}: bad value {raw!r} for {key}") from None
    return cfg


def _document(command: str, cfg: Config, flags: dict) -> dict:
    return {
        "schema": SCHEMA,
        "tool": {"name": "subdivlab", "version": __version__},
        "command": command,
        "config": dict(cfg.echo(), **flags),
    }


def _graph_summary(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "bipartite": bipartition(g).is_bipartite}


def _emit(doc: dict, fmt: str, table: str, out=None) -> None:
    out = sys.stdout if out is None else out
    out.write(dumps(doc) if fmt == "json" else table)


# ---------------------------------------------------------------------------
# subdivide
# ---------------------------------------------------------------------------

def _check_qk(q: int | None, k: int = 0) -> None:
    if q is not None and q < 1:
        raise UsageError(f"--q must be a positive integer, got {q}")
    if k < 0:
        raise UsageError(f"--k must be non-negative, got {k}")


def cmd_subdivide(args, cfg: Config) -> int:
    _check_qk(args.q, args.k)
    g = read_edge_list(args.input)
    h, smap = iterate_subdivide_with_map(g, args.q, args.k, max_nodes=cfg.max_nodes)
    out = Path(args.output)
    out.write_text(format_edge_list(h))
    doc = _document("subdivide", cfg, {"input": str(args.input), "q": args.q, "k": args.k})
    doc["input_graph"] = _graph_summary(g)
    doc["output_graph"] = _graph_summary(h)
    doc["output"] = str(out)
    if smap is not None:
        sidecar = out.with_name(out.name + ".map.json")
        sidecar.write_text(dumps(dict(schema=SCHEMA, **smap.to_dict())))
        doc["map"] = str(sidecar)
    table = _table([
        ("graph", "n", "m", "bipartite"),
        ("input", str(g.n), str(g.m), str(doc["input_graph"]["bipartite"]).lower()),
        ("output", str(h.n), str(h.m), str(doc["output_graph"]["bipartite"]).lower()),
    ])
    _emit(doc, args.format, table)
    return EXIT_OK


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _parse_metrics(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in ALL_METRICS]
    if bad or not names:
        raise UsageError(f"unknown metrics {bad}; choose from {','.join(ALL_METRICS)}")
    return list(dict.fromkeys(names))


def _spectral_values(h: Graph, metrics: Sequence[str]) -> dict[str, Any]:
    spec = graph_spectrum(h)
    out: dict[str, Any] = {}
    if {"kemeny", "hitting"} & set(metrics):
        wm = walk_metrics(h, spec)
        out["kemeny"] = wm.kemeny
        out["hitting"] = wm.hitting
    if {"kirchhoff", "additive-dk", "multiplicative-dk", "resistance"} & set(metrics):
        rm = resistance_metrics(h, spec)
        out["kirchhoff"] = rm.kirchhoff
        out["additive-dk"] = rm.additive_dk
        out["multiplicative-dk"] = rm.multiplicative_dk
        out["resistance"] = rm.resistance
    return out


def _transfer_values(g: Graph, q: int, smap, metrics: Sequence[str]) -> dict[str, Any]:
    spec = graph_spectrum(g)
    n, m = g.n, g.m
    out: dict[str, Any] = {}
    if {"kemeny", "hitting"} & set(metrics):
        wm = walk_metrics(g, spec)
        out["kemeny"] = float(kemeny_transfer(wm.kemeny, m, n, q))
        if "hitting" in metrics:
            out["hitting"] = hitting_matrix_transfer(wm, smap, g, q)
    if {"kirchhoff", "additive-dk", "multiplicative-dk", "resistance"} & set(metrics):
        rm = resistance_metrics(g, spec)
        K, Ka, Kt = rm.kirchhoff, rm.additive_dk, rm.multiplicative_dk
        out["kirchhoff"] = float(kirchhoff_transfer(K, Ka, Kt, m, n, q))
        out["additive-dk"] = float(additive_dk_transfer(Ka, Kt, m, n, q))
        out["multiplicative-dk"] = float(multiplicative_dk_transfer(Kt, m, n, q))
        if "resistance" in metrics:
            out["resistance"] = resistance_matrix_transfer(rm, smap, q)
    return out


def _matrix_entry(M: np.ndarray, provenance: str, full: bool) -> dict:
    off = M[~np.eye(M.shape[0], dtype=bool)]
    entry = {"provenance": provenance, "max": float(off.max()), "mean": float(off.mean())}
    if full:
        entry["matrix"] = M
    return entry


def cmd_analyze(args, cfg: Config) -> int:
    metrics = _parse_metrics(args.metrics)
    _check_qk(args.q)
    method = args.method or ("both" if args.q is not None else "spectral")
    if method in ("transfer", "both") and args.q is None:
        raise MethodUnavailableError("the transfer method predicts S_q(G) from G and needs --q")
    g = read_edge_list(args.input)
    if args.q is not None:
        h, smap = iterate_subdivide_with_map(g, args.q, 1, max_nodes=cfg.max_nodes)
    else:
        h, smap = g, None
        if g.n > cfg.max_nodes:
            raise SizeLimitError(f"graph has {g.n} nodes, above the cap of {cfg.max_nodes}")

    flags = {"input": str(args.input), "q": args.q, "method": method,
             "metrics": metrics, "full_matrices": bool(args.full_matrices)}
    doc = _document("analyze", cfg, flags)
    doc["graph"] = _graph_summary(g)
    if smap is not None:
        doc["subdivided"] = dict(q=args.q, **_graph_summary(h))

    results: dict[str, dict[str, Any]] = {}
    if method in ("transfer", "both"):
        results["transfer"] = _transfer_values(g, args.q, smap, metrics)
    if method in ("spectral", "both"):
        results["spectral"] = _spectral_values(h, metrics)

    rows = [("metric", "provenance", "value", "residual")]
    doc["metrics"] = {}
    for name in metrics:
        entry: dict[str, Any] = {}
        for prov, vals in results.items():
            v = vals[name]
            if name in MATRIX_METRICS:
                entry[prov] = _matrix_entry(v, prov, args.full_matrices)
                rows.append((name, prov, f"max {_fmt(entry[prov]['max'])}", ""))
            else:
                entry[prov] = {"provenance": prov, "value": float(v)}
                rows.append((name, prov, _fmt(float(v)), ""))
        if len(results) == 2:
            a, b = results["transfer"][name], results["spectral"][name]
            resid = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
            entry["residual"] = resid
            rows.append((name, "|transfer-spectral|", "", "%.3e" % resid))
        doc["metrics"][name] = entry
    _emit(doc, args.format, _table(rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

def _lattice_row(q: int, k: int) -> dict:
    spec = LatticeSpec.hierarchical(q, k)
    vals = lattice_closed_forms(q, k)
    n, m = iterated_counts(spec)
    row: dict[str, Any] = {"k": k, "n": n, "m": m}
    for name, v in zip(("kemeny", "multiplicative_dk", "additive_dk", "kirchhoff"), vals):
        row[name] = {"provenance": "closed-form", "exact": v, "float": float(v)}
    return row


def cmd_lattice(args, cfg: Config) -> int:
    if args.q < 2:
        raise UsageError(f"hierarchical lattices need --q >= 2, got {args.q}")
    if args.table is not None:
        ks = range(args.table + 1)
    elif args.k is not None:
        ks = [args.k]
    else:
        raise UsageError("lattice needs --k or --table")
    if min(ks, default=0) < 0:
        raise UsageError("k must be non-negative")
    rows = [_lattice_row(args.q, k) for k in ks]
    doc = _document("lattice", cfg, {"q": args.q, "k": args.k, "table": args.table})
    doc["rows"] = rows
    names = ("kemeny", "multiplicative_dk", "additive_dk", "kirchhoff")
    text = [("k", "n", "m") + names]
    for r in rows:
        text.append((str(r["k"]), str(r["n"]), str(r["m"])) + tuple(format_fraction(r[c]["exact"]) for c in names))
    _emit(doc, args.format, _table(text))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _load_corpus(spec: str):
    if spec == "default":
        return default_corpus()
    p = Path(spec)
    if p.is_dir():
        files = sorted(f for f in p.iterdir() if f.is_file() and not f.name.startswith("."))
        if not files:
            raise UsageError(f"corpus directory {p} holds no files")
        return [read_entry(f) for f in files]
    if p.is_file():
        return [read_entry(p)]
    raise UsageError(f"corpus {spec!r} is neither 'default' nor an existing file or directory")


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--q-list expects comma-separated integers, got {text!r}") from None
    if not vals or min(vals) < 1:
        raise UsageError(f"--q-list needs positive integers, got {text!r}")
    return vals


def cmd_verify(args, cfg: Config) -> int:
    corpus = _load_corpus(args.corpus)
    q_values = _int_list(args.q_list)
    checks = list(DEFAULT_CHECKS)
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
        known = CELL_CHECKS + GLOBAL_CHECKS + STATISTICAL_CHECKS
        bad = [c for c in checks if c not in known]
        if bad:
            raise UsageError(f"unknown checks {bad}; choose from {','.join(known)}")
    if args.lattice_numeric and "lattice_numeric" not in checks:
        checks.append("lattice_numeric")
    if args.monte_carlo and "mc_hitting" not in checks:
        checks.append("mc_hitting")
    reports = run_suite(corpus, q_values, checks, cfg.tolerances, workers=args.workers)
    ok = suite_passed(reports)
    if args.json:
        Path(args.json).write_text("".join(dumps(r.to_dict(), indent=None) for r in reports))
    doc = _document("verify", cfg, {"corpus": args.corpus, "q_list": q_values, "checks": checks})
    doc["passed"] = ok
    doc["reports"] = [r.to_dict() for r in reports]
    failed = sum(not r.passed and not r.statistical for r in reports)
    table = reports_table(reports) + f"\n{len(reports)} checks, {failed} failed: {'PASS' if ok else 'FAIL'}\n"
    _emit(doc, args.format, table)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json", help="report format (default json)")
    common.add_argument("--config", metavar="FILE", help="key=value file setting max_nodes and tolerance.<check>")

    ap = argparse.ArgumentParser(prog="subdivlab", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"subdivlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("subdivide", parents=[common], help="write the k-fold q-subdivision of an edge list")
    p.add_argument("input", help="edge-list file")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1, help="number of iterations (default 1)")
    p.add_argument("-o", "--output", required=True, help="output edge-list file; the map goes to OUTPUT.map.json")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("analyze", parents=[common], help="walk and resistance metrics of G or S_q(G)")
    p.add_argument("input", help="edge-list file")
    p.add_argument("--q", type=int, help="analyze S_q(G) instead of G")
    p.add_argument("--metrics", default=",".join(SCALAR_METRICS), help=f"comma list from {','.join(ALL_METRICS)}")
    p.add_argument("--method", choices=("transfer", "spectral", "both"),
                   help="default: both with --q, spectral without")
    p.add_argument("--full-matrices", action="store_true", help="include full hitting/resistance matrices")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("lattice", parents=[common], help="closed-form values for hierarchical lattices")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--table", type=int, metavar="KMAX", help="rows k = 0..KMAX")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", parents=[common], help="cross-check transfer formulas against oracles")
    p.add_argument("--corpus", default="default", help="'default', an edge-list file, or a directory of them")
    p.add_argument("--q-list", default="1,2,3")
    p.add_argument("--checks", help="comma list of checks (default: all exact per-cell checks and lattice closed forms)")
    p.add_argument("--lattice-numeric", action="store_true", help="also compare closed forms with numerics on H_{q,k}")
    p.add_argument("--monte-carlo", action="store_true", help="also run the statistical random-walk check")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", metavar="OUT", help="write reports as JSON lines")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except (EdgeListParseError, GraphError, SizeLimitError, MethodUnavailableError, UsageError, OSError) as exc:
        print(f"subdivlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SubdivLabError as exc:
        print(f"subdivlab {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
