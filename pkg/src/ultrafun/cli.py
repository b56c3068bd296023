"""Command line front end: ``ultrafun project|pair|fourier|verify``.

Exit codes: 0 on success, 1 when a verification check fails, 2 for usage,
parse or evaluation errors (with a JSON error object on stderr).
Reports carry ``"schema": 1`` and print floats with 17 significant digits,
so equal inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import (DivisionByZero, EvaluationFailure, ExprSyntaxError, GridVariantError,
                     UltrafunError, UnknownFunction)
from .grid import GridParams
from .levels import HyperScalar, LevelLadder, shadow
from .projection import (CATALOG, DistributionSpec, QuadratureConfig, SlowFunction,
                         distributional_fourier, pair, project_function)
from .verify import SUITES, run_suite
from .vspace import GridSamples, evaluate, from_samples

SCHEMA = 1


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------- formatting

def fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".17g")


def to_json(obj) -> str:
    """JSON with every float printed at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return fmt(v) if math.isfinite(v) else "null"
    if isinstance(obj, (complex, np.complexfloating)):
        return to_json([obj.real, obj.imag])
    return json.dumps(str(obj))


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


# --------------------------------------------------------------------------- argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _levels(text: str) -> LevelLadder:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("--levels is empty")
    try:
        return LevelLadder(tuple(int(p) for p in parts))
    except ValueError as exc:
        raise UsageError(f"bad --levels {text!r}: {exc}") from None


def _range(text: str) -> np.ndarray:
    try:
        a, b, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must look like a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise UsageError("--range needs a <= b and a positive step")
    count = int(round((b - a) / step)) + 1
    return np.linspace(a, a + (count - 1) * step, count)


def _floats(text: str) -> list:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated numbers, got {text!r}") from None


def _distribution(arg: str) -> DistributionSpec:
    if arg in CATALOG:
        return CATALOG[arg]
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            try:
                return DistributionSpec.from_dict(json.load(fh))
            except json.JSONDecodeError as exc:
                raise UsageError(f"{arg}: invalid JSON ({exc})") from None
    raise UsageError(f"--dist {arg!r} is neither a catalog name {sorted(CATALOG)} nor a file")


_VALUE_FLAGS = ("--range", "--at")


def _glue_negative_values(argv: list) -> list:
    # argparse treats "-3:3:0.01" as an option; glue it to its flag instead
    out = []
    for tok in argv:
        if out and out[-1] in _VALUE_FLAGS and tok.startswith("-"):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--levels", default="4,8,16,32", help="comma separated ladder, e.g. 4,8,16")
    common.add_argument("--grid", choices=("paper", "symmetric"), default="paper")
    common.add_argument("--oversampling", type=int, default=8)
    common.add_argument("--refine-tol", type=float, default=1e-10)
    common.add_argument("--max-doublings", type=int, default=6)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")

    p = _Parser(prog="ultrafun", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    pr = sub.add_parser("project", parents=[common], help="project a function onto each level")
    pr.add_argument("--fn", required=True)
    pr.add_argument("--order", type=int, default=0, help="declared polynomial growth order")
    pr.add_argument("--emit", choices=("samples", "coeffs"), default="samples")
    pr.add_argument("--range", default="-3:3:0.01")

    pa = sub.add_parser("pair", parents=[common], help="pair a distribution with a test function")
    pa.add_argument("--dist", required=True, help="catalog name or JSON file")
    pa.add_argument("--test", required=True)
    pa.add_argument("--shadow-tol", type=float, default=1e-8)

    fo = sub.add_parser("fourier", parents=[common], help="transform a function or distribution")
    src = fo.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn")
    src.add_argument("--dist")
    fo.add_argument("--at", help="comma separated frequencies")

    ve = sub.add_parser("verify", parents=[common], help="run the self-check suites")
    ve.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return p


# --------------------------------------------------------------------------- commands

def _threads(n_jobs: int) -> int:
    raw = os.environ.get("UF_THREADS")
    if raw is None:
        cap = os.cpu_count() or 1
    else:
        try:
            cap = int(raw)
        except ValueError:
            raise UsageError(f"UF_THREADS must be an integer, got {raw!r}") from None
        if cap < 1:
            raise UsageError("UF_THREADS must be >= 1")
    return max(1, min(cap, n_jobs))


def _per_level(fn, ladder):
    levels = list(ladder)
    with ThreadPoolExecutor(max_workers=_threads(len(levels))) as pool:
        return dict(zip(levels, pool.map(fn, levels)))


def _cfg(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(args.oversampling, args.refine_tol, args.max_doublings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_project(args, ladder, cfg):
    f = SlowFunction(args.fn, args.order)
    xs = _range(args.range)
    sym = args.grid == "symmetric"
    elems = _per_level(lambda n: project_function(f, n, cfg, sym), ladder)
    samples = {n: evaluate(u, xs) for n, u in elems.items()}
    convergence = []
    levels = list(ladder)
    for a, b in zip(levels, levels[1:]):
        half = GridParams(a, sym).beta
        mask = np.abs(xs) <= half
        diff = float(np.max(np.abs(samples[b][mask] - samples[a][mask]))) if mask.any() else 0.0
        convergence.append({"from": a, "to": b, "max_diff": diff})

    if args.format == "json":
        per = []
        for n, u in elems.items():
            entry = {"n": n}
            if args.emit == "samples":
                entry["samples"] = [[x, v.real, v.imag] for x, v in zip(xs, samples[n])]
            else:
                entry["coeffs"] = [[int(l), k, a.real, a.imag]
                                   for l, k, a in zip(u.indices, u.frequencies, u.coeffs)]
            per.append(entry)
        return {"command": "project", "fn": f.source, "emit": args.emit, "levels": per,
                "convergence": convergence}
    rows = []
    if args.emit == "samples":
        for n in elems:
            rows += [(n, x, v.real, v.imag) for x, v in zip(xs, samples[n])]
        text = _csv(rows, ["n", "x", "re", "im"])
    else:
        for n, u in elems.items():
            rows += [(n, int(l), k, a.real, a.imag) for l, k, a in zip(u.indices, u.frequencies, u.coeffs)]
        text = _csv(rows, ["n", "l", "k", "re", "im"])
    for c in convergence:
        text += f"# convergence {c['from']}->{c['to']} max_diff={fmt(c['max_diff'])}\n"
    return text


def _shadow_entry(values: dict, ladder, tol):
    h = HyperScalar(lambda n: values[n])
    s = shadow(h, ladder, tol)
    value = s.value if s.finite else s.value.value
    return {"value": value, "residual": s.residual, "finite": s.finite}


def cmd_pair(args, ladder, cfg):
    T = _distribution(args.dist)
    phi = SlowFunction(args.test)
    sym = args.grid == "symmetric"
    values = _per_level(lambda n: pair(T, phi, n, cfg, sym), ladder)
    sh = _shadow_entry(values, ladder, args.shadow_tol)
    if args.format == "json":
        return {"command": "pair", "dist": T.to_dict(), "test": phi.source,
                "levels": [{"n": n, "value": v} for n, v in values.items()], "shadow": sh}
    text = _csv([(n, v.real, v.imag) for n, v in values.items()], ["n", "re", "im"])
    val = sh["value"]
    shown = f"{fmt(val.real)},{fmt(val.imag)}" if isinstance(val, complex) else (
        fmt(val) if isinstance(val, float) else val)
    text += f"# shadow value={shown} residual={fmt(sh['residual'])}\n"
    return text


def cmd_fourier(args, ladder, cfg):
    if args.grid == "symmetric":
        raise GridVariantError("the Fourier transform needs --grid paper")
    T = _distribution(args.dist) if args.dist else DistributionSpec(0, SlowFunction(args.fn))
    spectra = _per_level(lambda n: distributional_fourier(T, n, cfg), ladder)
    ks = _floats(args.at) if args.at else None

    def probe(s: GridSamples):
        # the spectrum is itself an element of V_n in k, so off-lattice k are interpolated
        elem = from_samples(s)
        out = []
        for k in ks:
            l = int(round(k / s.params.eta))
            l = min(max(l, s.params.l_min), s.params.l_max)
            out.append({"k": k, "value": evaluate(elem, k), "nearest_k": l * s.params.eta,
                        "offset": k - l * s.params.eta, "value_at_nearest": s.values[l - s.params.l_min]})
        return out

    if args.format == "json":
        per = []
        for n, s in spectra.items():
            if ks is None:
                per.append({"n": n, "samples": [[k, v.real, v.imag] for k, v in zip(s.points, s.values)]})
            else:
                per.append({"n": n, "at": probe(s)})
        return {"command": "fourier", "source": T.to_dict(), "levels": per}
    rows = []
    if ks is None:
        for n, s in spectra.items():
            rows += [(n, k, v.real, v.imag) for k, v in zip(s.points, s.values)]
        return _csv(rows, ["n", "k", "re", "im"])
    for n, s in spectra.items():
        for r in probe(s):
            rows.append((n, r["k"], r["value"].real, r["value"].imag, r["nearest_k"], r["offset"],
                         r["value_at_nearest"].real, r["value_at_nearest"].imag))
    return _csv(rows, ["n", "k", "re", "im", "nearest_k", "offset", "nearest_re", "nearest_im"])


def cmd_verify(args, ladder, cfg):
    if args.grid == "symmetric":
        raise UsageError("verify runs on the default grid only")
    checks = run_suite(args.suite, list(ladder), cfg)
    ok = all(c.passed for c in checks)
    if args.format == "json":
        report = {"command": "verify", "suite": args.suite, "passed": ok,
                  "checks": [c.to_dict() for c in checks]}
    else:
        report = _csv([(c.suite, c.name, c.level, float(c.residual), float(c.tolerance),
                        "pass" if c.passed else "FAIL") for c in checks],
                      ["suite", "check", "n", "residual", "tolerance", "status"])
    return report, ok


COMMANDS = {"project": cmd_project, "pair": cmd_pair, "fourier": cmd_fourier}


def _error(kind: str, exc: Exception, **extra) -> dict:
    d = {"schema": SCHEMA, "error": kind, "message": str(exc)}
    d.update(extra)
    return d


def run(argv=None) -> tuple[int, str, str]:
    """Execute a command line; returns ``(exit_code, stdout_text, stderr_text)``."""
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_glue_negative_values(argv))
        ladder = _levels(args.levels)
        cfg = _cfg(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ok = True
            if args.command == "verify":
                report, ok = cmd_verify(args, ladder, cfg)
            else:
                report = COMMANDS[args.command](args, ladder, cfg)
        notes = sorted({f"{w.category.__name__}: {w.message}" for w in caught})
        if isinstance(report, dict):
            report = {"schema": SCHEMA, **report, "grid": args.grid,
                      "ladder": list(ladder), "warnings": notes}
            text = to_json(report) + "\n"
        else:
            text = f"# schema {SCHEMA}\n" + report + "".join(f"# warning {w}\n" for w in notes)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            text = ""
        return (0 if ok else 1), text, ""
    except ExprSyntaxError as exc:
        err = _error("SyntaxError", exc, offset=exc.offset, expected=list(exc.expected))
    except UnknownFunction as exc:
        err = _error("UnknownFunction", exc, name=exc.name, offset=exc.offset)
    except DivisionByZero as exc:
        err = _error("DivisionByZero", exc, x=float(exc.x))
    except EvaluationFailure as exc:
        err = _error("EvaluationFailure", exc)
    except UsageError as exc:
        err = _error("UsageError", exc)
    except (UltrafunError, ValueError, KeyError, OSError) as exc:
        err = _error(type(exc).__name__, exc)
    return 2, "", to_json(err) + "\n"


def main(argv=None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
