"""Command-line front end: ``artifact {eval,gram,fourier,report}``.

Exit codes: 0 success, 1 verification mismatch, 2 configuration or
constraint error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import acceptance
from . import fourier as fr
from .errors import ArtifactError, ConstraintError
from .sympoly import FamilyAParams, FamilyBParams, family_a, family_b
from .verify import gram_fn, gram_weight_direct, transform_compare

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    tol: float | None = None
    grid: list[float] = field(default_factory=list)
    output: str | None = None
    fmt: str = "json"
    override: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tol}")
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (stop included), a single value, or a comma list of either."""
    out: list[float] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        pieces = part.split(":")
        try:
            nums = [float(p) for p in pieces]
        except ValueError:
            raise ConfigError(f"bad grid spec {spec!r}") from None
        if len(nums) == 1:
            out.append(nums[0])
        elif len(nums) == 3:
            start, stop, step = nums
            if not all(math.isfinite(v) for v in nums):
                raise ConfigError(f"grid {part!r} must be finite")
            if not step > 0 or stop < start:
                raise ConfigError(f"grid {part!r} needs step > 0 and stop >= start")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            out.extend(start + k * step for k in range(count))
        else:
            raise ConfigError(f"bad grid spec {part!r}; expected start:stop:step or a value")
    if not out:
        raise ConfigError("empty grid")
    if not all(math.isfinite(v) for v in out) or any(b <= a for a, b in zip(out, out[1:])):
        raise ConfigError(f"grid {spec!r} must be finite and strictly increasing")
    return out


def _fmt(v) -> str:
    return f"{v:.15g}"


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _document(command: str, params: dict, checks: list[dict], findings: list[str], **extra) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "params": params,
           "checks": checks, "findings": findings}
    doc.update(extra)
    return doc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("artifact").joinpath("report.schema.json").read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# commands


def cmd_eval(cfg: RunConfig) -> int:
    p = cfg.params
    xs = cfg.grid
    if p.get("family"):
        if p["family"] == "A":
            params = FamilyAParams(p["a"], p["b"])
            poly = family_a(params, p["n"], override=cfg.override)
        else:
            poly = family_b(FamilyBParams(p["a"]), p["n"], override=cfg.override)
        values = [float(poly(x)) for x in xs]
    elif p["fn"] == "A":
        spec = fr.FnASpec(p["n"], p["p1"], p["p2"], p["p3"], p["p4"])
        values = [fr.fn_a(spec, x) for x in xs]
    else:
        spec = fr.FnBSpec(p["n"], p["q1"], p["q2"], p["source"])
        values = [fr.fn_b(spec, x) for x in xs]
    if cfg.fmt == "json":
        checks = [{"id": f"x={_fmt(x)}", "status": "pass", "value": v, "expected": None, "tol": None,
                   "runtime_ms": 0.0} for x, v in zip(xs, values)]
        _write(_dump(_document("eval", p, checks, [])), cfg.output)
    elif len(xs) == 1:
        _write(_fmt(values[0]) + "\n", cfg.output)
    else:
        _write("".join(f"{_fmt(x)} {_fmt(v)}\n" for x, v in zip(xs, values)), cfg.output)
    return EXIT_OK


def cmd_gram(cfg: RunConfig) -> int:
    p = cfg.params
    rel, mode, N = p["relation"], p["mode"], p["N"]
    tol = cfg.tol if cfg.tol is not None else (1e-8 if rel in ("eq9", "eq17") else 1e-6)
    if rel == "eq9":
        rep = gram_weight_direct("eq9", FamilyAParams(p["a"], p["b"]), N, tol, override=cfg.override, jobs=cfg.jobs)
    elif rel == "eq17":
        rep = gram_weight_direct("eq17", FamilyBParams(p["a"]), N, tol, override=cfg.override, jobs=cfg.jobs)
    elif rel == "thm1":
        params = {k: p[k] for k in ("alpha", "beta", "p", "q")}
        rep = gram_fn("thm1", params, N, mode, tol, S=p["S"], override=cfg.override, jobs=cfg.jobs)
    else:
        params = {"a": p["a"], "b": p["b"], "source": p["source"]}
        rep = gram_fn("thm2", params, N, mode, tol, S=p["S"], override=cfg.override, jobs=cfg.jobs)
    size = N + 1
    checks = []
    for n in range(size):
        for m in range(size):
            val = rep.numeric[n][m]
            checks.append({"id": f"{rel}[{n},{m}]",
                           "status": rep.status[n][m],
                           "value": val if math.isfinite(val) else None,
                           "expected": rep.theoretical[n][m] if math.isfinite(rep.theoretical[n][m]) else None,
                           "tol": tol, "runtime_ms": 0.0})
    if checks:
        checks[0]["runtime_ms"] = round(rep.runtime_s * 1e3, 3)
    doc = _document("gram", {**p, "tol": tol}, checks, list(rep.notes), report=rep.to_dict())
    _write(_dump(doc), cfg.output)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_fourier(cfg: RunConfig) -> int:
    p = cfg.params
    tol = cfg.tol if cfg.tol is not None else 1e-8
    if p["kind"] == "A":
        params = {"alpha": p["alpha"], "beta": p["beta"], "c": p["c"], "d": p["d"]}
    else:
        params = {"a": p["a"], "b": p["b"], "source": p["source"]}
    tc = transform_compare(p["kind"], p["n"], params, cfg.grid, tol)
    if all(c is None and v is None for c, v in zip(tc.closed, tc.numeric)):
        sys.stderr.write("evaluation failed at every grid point:\n" + "\n".join(e or "" for e in tc.errors) + "\n")
        return EXIT_NUMERIC
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["s", "closed_re", "closed_im", "numeric_re", "numeric_im", "abs_dev"])
        nan = float("nan")
        for s, c, v, d in tc.rows():
            c = complex(nan, nan) if c is None else c
            v = complex(nan, nan) if v is None else v
            d = nan if d is None else d
            w.writerow([f"{x:.17g}" for x in (s, c.real, c.imag + 0.0, v.real, v.imag + 0.0, d)])
        _write(buf.getvalue(), cfg.output)
    else:
        checks = []
        for s, c, v, d, r, e in zip(tc.s_grid, tc.closed, tc.numeric, tc.abs_dev, tc.rel_dev, tc.errors):
            checks.append({"id": f"s={_fmt(s)}",
                           "status": "pass" if r is not None and r <= tol else "fail",
                           "value": None if v is None else [v.real, v.imag],
                           "expected": None if c is None else [c.real, c.imag],
                           "tol": tol, "runtime_ms": 0.0, **({"error": e} if e else {})})
        doc = _document("fourier", {**p, "tol": tol}, checks, [acceptance.finding_text(tc)],
                        transform_check=tc.to_dict())
        _write(_dump(doc), cfg.output)
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    only = set(cfg.params["only"]) if cfg.params.get("only") else None
    results = acceptance.run_all(cfg.tol, cfg.jobs, only)
    findings = [r["finding"] for r in results if r.get("finding")]
    if cfg.params.get("findings", True):
        try:
            findings.extend(acceptance.extra_findings())
        except ArtifactError as exc:
            findings.append(f"extra findings unavailable: {exc}")
    checks = []
    for r in results:
        checks.append({k: r[k] for k in ("id", "status", "value", "expected", "tol", "runtime_ms")}
                      | {"title": r["title"], "detail": r["detail"]})
    params = {"tol": cfg.tol, "jobs": cfg.jobs, "only": sorted(only) if only else None}
    _write(_dump(_document("report", params, _sanitize(checks), findings)), cfg.output)
    for r in results:
        sys.stderr.write(f"{r['id']:>5} {r['status'].upper():4} {r['runtime_ms'] / 1e3:8.2f}s  {r['title']}\n")
    return EXIT_OK if all(r["status"] == "pass" for r in results) else EXIT_MISMATCH


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, tol=True):
        if tol:
            sp.add_argument("--tol", type=float, default=None, help="tolerance (command-specific default)")
        sp.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
        sp.add_argument("--override", action="store_true", help="skip parameter-constraint validation")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for independent entries")

    ev = sub.add_parser("eval", help="evaluate a polynomial or a transformed function")
    which = ev.add_mutually_exclusive_group(required=True)
    which.add_argument("--family", choices=("A", "B"), help="monic polynomial family")
    which.add_argument("--fn", choices=("A", "B"), help="transformed function A_n(x; p1..p4) or B_n(x; q1, q2)")
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--a", type=float)
    ev.add_argument("--b", type=float)
    for name in ("p1", "p2", "p3", "p4", "q1", "q2"):
        ev.add_argument(f"--{name}", type=float)
    ev.add_argument("--source", choices=("printed", "derived"), default="printed")
    ev.add_argument("--x", required=True, help="point or grid start:stop:step")
    ev.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common(ev, tol=False)

    gr = sub.add_parser("gram", help="Gram-matrix verification")
    gr.add_argument("--relation", choices=("eq9", "eq17", "thm1", "thm2"), required=True)
    gr.add_argument("--mode", default="numeric-transform",
                    choices=("numeric-transform", "numeric", "closed-form", "closed", "weight-direct"))
    gr.add_argument("--N", type=int, required=True)
    for name in ("a", "b", "alpha", "beta", "p", "q"):
        gr.add_argument(f"--{name}", type=float)
    gr.add_argument("--S", type=float, default=10.0, help="truncation for closed-form mode")
    gr.add_argument("--source", choices=("printed", "derived"), default="printed")
    common(gr)

    fo = sub.add_parser("fourier", help="closed-form vs numeric transform")
    fo.add_argument("--kind", choices=("A", "B"), required=True)
    fo.add_argument("--n", type=int, required=True)
    for name in ("alpha", "beta", "c", "d", "a", "b"):
        fo.add_argument(f"--{name}", type=float)
    fo.add_argument("--source", choices=("printed", "derived"), default="printed")
    fo.add_argument("--s", default="0:3:0.25", help="grid start:stop:step, or a single value")
    fo.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common(fo)

    rp = sub.add_parser("report", help="run the acceptance suite and emit one JSON document")
    rp.add_argument("--only", type=int, nargs="*", help="subset of check numbers 1..10")
    rp.add_argument("--no-findings", dest="findings", action="store_false",
                    help="skip the extra closed-vs-numeric findings")
    common(rp)
    return ap


def _need(ns, *names):
    missing = [n for n in names if getattr(ns, n, None) is None]
    if missing:
        raise ConfigError(f"{ns.command}: missing " + ", ".join(f"--{m}" for m in missing))


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    c = ns.command
    if c == "eval":
        if ns.family == "A":
            _need(ns, "a", "b")
            params = {"family": "A", "a": ns.a, "b": ns.b, "n": ns.n}
        elif ns.family == "B":
            _need(ns, "a")
            params = {"family": "B", "a": ns.a, "n": ns.n}
        elif ns.fn == "A":
            _need(ns, "p1", "p2", "p3", "p4")
            params = {"fn": "A", "n": ns.n, "p1": ns.p1, "p2": ns.p2, "p3": ns.p3, "p4": ns.p4}
        else:
            _need(ns, "q1", "q2")
            params = {"fn": "B", "n": ns.n, "q1": ns.q1, "q2": ns.q2, "source": ns.source}
        return RunConfig(c, params, None, parse_grid(ns.x), ns.output, ns.fmt, ns.override, ns.jobs)
    if c == "gram":
        mode = {"numeric": "numeric-transform", "closed": "closed-form"}.get(ns.mode, ns.mode)
        if ns.relation in ("eq9", "eq17"):
            mode = "weight-direct"
        elif mode == "weight-direct":
            raise ConfigError("weight-direct mode applies to eq9/eq17 only")
        params = {"relation": ns.relation, "mode": mode, "N": ns.N}
        if ns.relation == "eq9":
            _need(ns, "a", "b")
            params |= {"a": ns.a, "b": ns.b}
        elif ns.relation == "eq17":
            _need(ns, "a")
            params |= {"a": ns.a}
        elif ns.relation == "thm1":
            _need(ns, "alpha", "beta", "p", "q")
            params |= {"alpha": ns.alpha, "beta": ns.beta, "p": ns.p, "q": ns.q, "S": ns.S}
        else:
            _need(ns, "a", "b")
            params |= {"a": ns.a, "b": ns.b, "S": ns.S, "source": ns.source}
        return RunConfig(c, params, ns.tol, [], ns.output, "json", ns.override, ns.jobs)
    if c == "fourier":
        if ns.kind == "A":
            _need(ns, "alpha", "beta")
            params = {"kind": "A", "n": ns.n, "alpha": ns.alpha, "beta": ns.beta,
                      "c": ns.alpha if ns.c is None else ns.c, "d": ns.beta if ns.d is None else ns.d}
        else:
            _need(ns, "a", "b")
            params = {"kind": "B", "n": ns.n, "a": ns.a, "b": ns.b, "source": ns.source}
        return RunConfig(c, params, ns.tol, parse_grid(ns.s), ns.output, ns.fmt, ns.override, ns.jobs)
    return RunConfig(c, {"only": ns.only, "findings": ns.findings}, ns.tol, [], ns.output, "json",
                     ns.override, ns.jobs)


COMMANDS = {"eval": cmd_eval, "gram": cmd_gram, "fourier": cmd_fourier, "report": cmd_report}


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, ConstraintError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG
    except (ArtifactError, ArithmeticError, OverflowError) as exc:
        sys.stderr.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
