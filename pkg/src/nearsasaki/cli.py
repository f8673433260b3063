"""Command-line front end: list, check, spectrum, gates."""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import spectral
from .geometry import GeometryError
from .identities import (IdentityError, catalog, run_suite, theorem_t01_gate, theorem_th45_gate,
                         verify_hypotheses, sample_model_points, resolve_identities)
from .models import get_model, model_names, resolve_models
from .structure import PointContext

FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ("model", "identity", "hypothesis", "hypothesis_ok", "n", "max_residual",
               "mean_residual", "pass", "status", "note")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    models: list[str]
    identities: list[str]
    points: int = 100
    tuples: int = 8
    seed: int = 42
    tol: float = 1e-8
    out: str | None = None
    format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.points < 1:
            raise ConfigError("--points must be at least 1")
        if self.tuples < 1:
            raise ConfigError("--tuples must be at least 1")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ConfigError("--tol must be a positive number")
        if self.format not in FORMATS:
            raise ConfigError(f"--format must be one of {', '.join(FORMATS)}")
        if self.threads < 0:
            raise ConfigError("--threads must be >= 0")


# -- canonical JSON -------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    return s if ("e" in s or "." in s) else s + ".0"


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and floats at 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_string(str(k))}: {dumps(obj[k], indent, _level + 1)}' for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    return _string(str(obj))


def _string(s: str) -> str:
    import json
    return json.dumps(s, ensure_ascii=False)


# -- rendering ------------------------------------------------------------------

def render_report(payload: dict, fmt: str) -> str:
    rows = payload["rows"]
    if fmt == "json":
        return dumps(payload) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([_fmt_float(r[c]) if isinstance(r[c], float) else r[c] for c in CSV_COLUMNS])
        return buf.getvalue()
    lines = [f"{'model':14s} {'identity':9s} {'hyp':4s} {'max':>10s} {'mean':>10s} status"]
    for r in rows:
        lines.append(f"{r['model']:14s} {r['identity']:9s} {r['hypothesis']:4s} "
                     f"{r['max_residual']:10.2e} {r['mean_residual']:10.2e} {r['status']}"
                     + (f"  [{r['note']}]" if r["note"] else ""))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -------------------------------------------------------------------

def registry(filter_: str | None = None) -> dict:
    models = []
    for name in model_names():
        e = get_model(name)
        models.append({"name": name, "dim": e.dim, "hypothesis": e.hypothesis,
                       "profile": e.profile.as_dict(), "description": e.description})
    ids = [r.describe() for r in catalog()]
    if filter_:
        f = filter_.lower()
        models = [m for m in models if f in m["name"].lower()]
        ids = [r for r in ids if f in r["id"].lower() or f in r["anchor"].lower()
               or any(f in a.lower() for a in r["aliases"])]
    return {"models": models, "identities": ids}


def cmd_list(args) -> int:
    reg = registry(args.filter)
    if args.format == "json":
        _emit(dumps(reg) + "\n", args.out)
        return 0
    lines = ["MODELS"]
    for m in reg["models"]:
        prof = ", ".join(k for k, v in m["profile"].items() if v) or "none"
        kind = "Sasakian" if m["profile"]["sasakian"] else "non-Sasakian"
        lines.append(f"  {m['name']:14s} dim {m['dim']}  {m['hypothesis']:4s} {kind:13s} [{prof}]  {m['description']}")
    lines.append("IDENTITIES")
    for r in reg["identities"]:
        extra = f"  aliases: {', '.join(r['aliases'])}" if r["aliases"] else ""
        lines.append(f"  {r['id']:9s} {r['hypothesis']:4s} arity {r['arity']}  {r['anchor']}{extra}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_check(args) -> int:
    cfg = RunConfig(resolve_models(args.models), resolve_identities(args.identities), args.points,
                    args.tuples, args.seed, args.tol, args.out, args.format, args.threads)
    threads = cfg.threads or (os.cpu_count() or 1)
    report = run_suite(cfg.models, cfg.identities, cfg.points, cfg.seed, cfg.tol, cfg.tuples, threads)
    payload = report.as_dict()
    payload["run"]["models"] = cfg.models
    payload["run"]["identities"] = cfg.identities
    _emit(render_report(payload, cfg.format), cfg.out)
    if cfg.out:
        fails = report.failures()
        sys.stderr.write(f"{len(report.rows)} rows, {len(fails)} failing\n")
    return report.exit_code


def spectrum_summary(model: str, points: int = 30, seed: int = 42) -> dict:
    entry = get_model(model)
    pts = sample_model_points(entry, points, seed)
    ctx = PointContext(entry.structure, pts[0])
    spec = spectral.h2_spectrum(ctx)
    const = spectral.spectrum_constancy(entry.structure, pts)
    hyp = verify_hypotheses(entry, min(points, 10), seed)
    inv = spectral.invariant_residuals(ctx, spec)
    rng = np.random.default_rng(seed)
    geo = {}
    selectors = ["xi+D0", "xi+Dall"] + [f"xi+D{i + 1}" for i in range(len(spec.lambdas))]
    for sel in selectors:
        try:
            worst = {"geodesic": 0.0, "integrability": 0.0}
            for p in pts[: min(points, 10)]:
                r = spectral.totally_geodesic_residual(PointContext(entry.structure, p), sel, rng)
                worst = {k: max(worst[k], r[k]) for k in worst}
            geo[sel] = worst
        except spectral.SpectralError as exc:
            geo[sel] = {"error": str(exc)}
    note = "" if hyp["H1"] else "not nearly Sasakian: spectral theorems inapplicable"
    return {
        "model": model,
        "clusters": [{"eigenvalue": c.value, "multiplicity": c.multiplicity} for c in spec.clusters],
        "lambdas": [float(x) for x in spec.lambdas],
        "zero_multiplicity": spec.zero_multiplicity,
        "constancy_deviation": const["deviation"],
        "multiplicities_constant": const["multiplicities_constant"],
        "invariants": inv,
        "totally_geodesic": geo,
        "points": points,
        "seed": seed,
        "note": note,
    }


def cmd_spectrum(args) -> int:
    if args.points < 1:
        raise ConfigError("--points must be at least 1")
    summary = spectrum_summary(args.model, args.points, args.seed)
    if args.format == "json":
        _emit(dumps(summary) + "\n", args.out)
        return 0
    lines = [f"model {summary['model']}  points {summary['points']}  seed {summary['seed']}"]
    for c in summary["clusters"]:
        lines.append(f"  eigenvalue {c['eigenvalue']: .12f}  multiplicity {c['multiplicity']}")
    lines.append(f"  lambdas {', '.join(f'{x:.12f}' for x in summary['lambdas']) or 'none'}")
    lines.append(f"  constancy deviation {summary['constancy_deviation']:.3e}")
    for sel, r in summary["totally_geodesic"].items():
        if "error" in r:
            lines.append(f"  {sel:8s} {r['error']}")
        else:
            lines.append(f"  {sel:8s} geodesic {r['geodesic']:.3e}  integrability {r['integrability']:.3e}")
    if summary["note"]:
        lines.append(f"  note: {summary['note']}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_gates(args) -> int:
    out = []
    for name in resolve_models(args.models):
        for gate in (theorem_t01_gate, theorem_th45_gate):
            out.append(gate(name, points=args.points, seed=args.seed).as_dict())
    if args.format == "json":
        _emit(dumps({"gates": out}) + "\n", args.out)
    else:
        _emit("".join(f"{g['gate']:5s} {g['model']:14s} {g['verdict']:12s} {g['reason']}\n" for g in out),
              args.out)
    return 1 if any(g["verdict"] == "fail" for g in out) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nearsasaki", description="Numerical checks for weak nearly Sasakian identities.")
    sub = p.add_subparsers(dest="command", required=True)

    ls = sub.add_parser("list", help="models and identities")
    ls.add_argument("--filter", default=None)
    ls.add_argument("--format", choices=("text", "json"), default="text")
    ls.add_argument("--out", default=None)
    ls.set_defaults(func=cmd_list)

    ck = sub.add_parser("check", help="run the identity suite")
    ck.add_argument("--models", default="all")
    ck.add_argument("--identities", default="all")
    ck.add_argument("--points", type=int, default=100)
    ck.add_argument("--tuples", type=int, default=8)
    ck.add_argument("--seed", type=int, default=42)
    ck.add_argument("--tol", type=float, default=1e-8)
    ck.add_argument("--format", default="json")
    ck.add_argument("--out", default=None)
    ck.add_argument("--threads", type=int, default=1)
    ck.set_defaults(func=cmd_check)

    sp = sub.add_parser("spectrum", help="spectrum of h^2 and foliation residuals")
    sp.add_argument("model")
    sp.add_argument("--points", type=int, default=30)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_spectrum)

    gt = sub.add_parser("gates", help="theorem conclusion gates")
    gt.add_argument("--models", default="all")
    gt.add_argument("--points", type=int, default=20)
    gt.add_argument("--seed", type=int, default=0)
    gt.add_argument("--format", choices=("text", "json"), default="text")
    gt.add_argument("--out", default=None)
    gt.set_defaults(func=cmd_gates)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        return args.func(args)
    except (ConfigError, IdentityError, KeyError, GeometryError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
