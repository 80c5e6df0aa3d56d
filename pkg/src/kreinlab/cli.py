"""Batch harness: JSON run configs in, CSV/JSON artifacts out.

One process runs one command against one config.  Commands cover the
pipeline at desk scale: weight classification tables, recurrence and
Gauss-rule data, error curves over degree sweeps, outer-function
diagnostics, end-to-end certificates, and a self-contained demo (the
plateau-versus-decay error comparison plus one certificate).

Everything here is deterministic -- fixed grids, fixed summation orders,
no randomness -- so identical configs produce byte-identical artifacts.
Files are written to temporary names and renamed into place, never left
half-written.  Exit status: 0 on success, 1 for invalid input, 2 when a
computation cannot meet its accuracy contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from .approx import best_l2, error_curve
from .errors import InputError, KreinLabError
from .hardy import (boundary_l2_norm, boundary_modulus_check, boundary_rows,
                    causality_defect, modulus_from_weight, time_domain_signal)
from .kernels import certificate, certificate_json_dict, certificate_rows
from .krein import classify_weight
from .orthopoly import gauss_rule, recurrence, table_rows
from .weights import (WeightSpec, catalog, from_json_dict, pure_exp,
                      stretched_exp)

__all__ = ["RunConfig", "parse_config", "run", "emit_csv", "main"]

COMMANDS = ("classify", "moments", "errors", "outer", "certify", "demo")
NORMS = ("l1", "l2", "both")

_DEFAULTS = {
    "command": None,
    "weight": None,        # JSON object; None = command-specific default
    "T": 1.0,
    "degrees": None,       # None = command-specific default
    "norm": "l2",
    "tolerance": 1e-6,
    "grid_n": None,        # frequency grid override for outer/certify
    "window": None,        # frequency window override for outer/certify
    "stride": 64,          # row thinning for large curve CSVs
    "output_dir": ".",
}


@dataclass(frozen=True)
class RunConfig:
    """A validated run request; field meanings follow _DEFAULTS."""

    command: str
    weight: Optional[dict]
    T: float
    degrees: Optional[Tuple[int, ...]]
    norm: str
    tolerance: float
    grid_n: Optional[int]
    window: Optional[float]
    stride: int
    output_dir: str


def parse_config(data: Mapping) -> RunConfig:
    """Validate a raw config mapping; unknown keys are errors."""
    if not isinstance(data, Mapping):
        raise InputError("config must be a JSON object")
    unknown = set(data) - set(_DEFAULTS)
    if unknown:
        raise InputError("unknown config keys: %s" % ", ".join(sorted(unknown)))
    merged = dict(_DEFAULTS)
    merged.update(data)

    command = merged["command"]
    if command not in COMMANDS:
        raise InputError("command must be one of %s, got %r"
                         % ("/".join(COMMANDS), command))
    weight = merged["weight"]
    if weight is not None and not isinstance(weight, Mapping):
        raise InputError("weight must be a JSON object")
    try:
        T = float(merged["T"])
    except (TypeError, ValueError):
        raise InputError("T must be a number")
    if not T > 0:
        raise InputError("T must be positive")
    degrees = merged["degrees"]
    if degrees is not None:
        if (not isinstance(degrees, Sequence) or isinstance(degrees, str)
                or not degrees):
            raise InputError("degrees must be a non-empty list of integers")
        try:
            degrees = tuple(int(d) for d in degrees)
        except (TypeError, ValueError):
            raise InputError("degrees must be integers")
        if any(d < 0 for d in degrees):
            raise InputError("degrees must be >= 0")
        if list(degrees) != sorted(set(degrees)):
            raise InputError("degrees must be strictly increasing")
    norm = merged["norm"]
    if norm not in NORMS:
        raise InputError("norm must be one of %s" % "/".join(NORMS))
    try:
        tolerance = float(merged["tolerance"])
    except (TypeError, ValueError):
        raise InputError("tolerance must be a number")
    if not tolerance > 0:
        raise InputError("all tolerances must be positive")
    grid_n = merged["grid_n"]
    if grid_n is not None:
        try:
            grid_n = int(grid_n)
        except (TypeError, ValueError):
            raise InputError("grid_n must be an integer")
        if grid_n < 1 << 8:
            raise InputError("grid_n is too small to resolve anything")
    window = merged["window"]
    if window is not None:
        try:
            window = float(window)
        except (TypeError, ValueError):
            raise InputError("window must be a number")
        if not window > 0:
            raise InputError("window must be positive")
    try:
        stride = int(merged["stride"])
    except (TypeError, ValueError):
        raise InputError("stride must be an integer")
    if stride < 1:
        raise InputError("stride must be >= 1")
    output_dir = merged["output_dir"]
    if not isinstance(output_dir, str) or not output_dir:
        raise InputError("output_dir must be a non-empty path")
    return RunConfig(command=command, weight=dict(weight) if weight else None,
                     T=T, degrees=degrees, norm=norm, tolerance=tolerance,
                     grid_n=grid_n, window=window, stride=stride,
                     output_dir=output_dir)


# ---------------------------------------------------------------------------
# artifact writing
# ---------------------------------------------------------------------------

def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _write_atomic(path: str, payload: bytes) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-artifact-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def emit_csv(rows: Iterable[Sequence], schema: Sequence[str],
             path: str) -> str:
    """Write rows under a header; 17 significant digits, atomic rename."""
    lines = [",".join(schema)]
    for row in rows:
        row = tuple(row)
        if len(row) != len(schema):
            raise InputError("row of %d cells does not match %d columns"
                             % (len(row), len(schema)))
        lines.append(",".join(_csv_cell(v) for v in row))
    _write_atomic(path, ("\n".join(lines) + "\n").encode("utf-8"))
    return path


def _emit_json(obj, path: str) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)
    _write_atomic(path, (text + "\n").encode("utf-8"))
    return path


# ---------------------------------------------------------------------------
# command bodies
# ---------------------------------------------------------------------------

def _weight_label(spec: WeightSpec) -> str:
    bits = [spec.family.value]
    for name in ("r", "q", "p"):
        val = getattr(spec, name)
        if val is not None:
            bits.append("%s%g" % (name, val))
    return "_".join(bits)


def _selected_weights(cfg: RunConfig) -> List[Tuple[str, WeightSpec]]:
    if cfg.weight is None:
        return catalog()
    spec = from_json_dict(cfg.weight)
    return [(_weight_label(spec), spec)]


def _single_weight(cfg: RunConfig, fallback: WeightSpec) -> WeightSpec:
    if cfg.weight is None:
        return fallback
    return from_json_dict(cfg.weight)


def _status(improper) -> str:
    return "Convergent" if improper.convergent else "Divergent"


def _run_classify(cfg: RunConfig, out: str) -> List[str]:
    rows = []
    for name, spec in _selected_weights(cfg):
        rep = classify_weight(spec)
        rows.append((
            name,
            _status(rep.k0), rep.k0.value,
            _status(rep.k1), rep.k1.value,
            _status(rep.k2), rep.k2.value,
            rep.moments_finite, rep.in_R_plus,
            "; ".join(rep.erratum_flags),
        ))
    schema = ("name", "k0", "k0_value", "k1", "k1_value", "k2", "k2_value",
              "moments_finite", "in_R_plus", "erratum_flags")
    return [emit_csv(rows, schema, os.path.join(out, "classification.csv"))]


def _run_moments(cfg: RunConfig, out: str) -> List[str]:
    spec = _single_weight(cfg, pure_exp(1.0))
    degrees = cfg.degrees or tuple(range(20))
    n = max(degrees) + 1
    table = recurrence(spec, n)
    files = [emit_csv(table_rows(table), ("k", "alpha", "beta"),
                      os.path.join(out, "recurrence.csv"))]
    rule = gauss_rule(table, n)
    files.append(emit_csv(
        [(j, x, w) for j, (x, w) in enumerate(zip(rule.nodes, rule.weights))],
        ("j", "node", "weight"), os.path.join(out, "gauss_rule.csv")))
    return files


def _error_rows(spec: WeightSpec, T: float, degrees: Sequence[int],
                norm: str) -> List[Tuple[int, Optional[float], Optional[float]]]:
    l2 = dict(error_curve(spec, T, degrees, "l2")) if norm in ("l2", "both") \
        else {}
    l1 = dict(error_curve(spec, T, degrees, "l1")) if norm in ("l1", "both") \
        else {}
    return [(d, l1.get(d), l2.get(d)) for d in degrees]


def _run_errors(cfg: RunConfig, out: str) -> List[str]:
    spec = _single_weight(cfg, pure_exp(1.0))
    degrees = cfg.degrees or tuple(range(9))
    rows = _error_rows(spec, cfg.T, degrees, cfg.norm)
    return [emit_csv(rows, ("d", "eps_l1", "eps_l2"),
                     os.path.join(out, "error_curve.csv"))]


def _run_outer(cfg: RunConfig, out: str) -> List[str]:
    import numpy as np

    files: List[str] = []
    summary = {}
    kw = {}
    if cfg.grid_n is not None:
        kw["n"] = cfg.grid_n
    if cfg.window is not None:
        kw["window"] = cfg.window
    grid = np.linspace(0.1, 10.0, 12)
    for name, spec in _selected_weights(cfg):
        outer = modulus_from_weight(spec)
        sig = time_domain_signal(outer, **kw)
        deviation, ladder = boundary_modulus_check(outer, grid)
        summary[name] = {
            "causality_defect": causality_defect(sig),
            "modulus_deviation": deviation,
            "modulus_ladder": [[d, v] for d, v in ladder],
            "boundary_l2_norm": boundary_l2_norm(outer),
        }
        files.append(emit_csv(
            boundary_rows(outer, stride=cfg.stride, **kw),
            ("omega", "re_x", "im_x", "abs_x", "mu"),
            os.path.join(out, "outer_%s.csv" % name)))
    files.append(_emit_json(summary, os.path.join(out, "outer_checks.json")))
    return files


def _certify_one(spec: WeightSpec, T: float, d: int, cfg: RunConfig,
                 out: str, prefix: str, with_rows: bool) -> List[str]:
    psi = best_l2(spec, T, d)
    params = {"tolerance": cfg.tolerance}
    if cfg.grid_n is not None:
        params["grid_n"] = cfg.grid_n
    if cfg.window is not None:
        params["window"] = cfg.window
    report = certificate(spec, psi, T, params)
    files: List[str] = []
    refs = {}
    if with_rows:
        for kind in ("y", "yhat", "outer"):
            path = os.path.join(out, "%s_d%d_%s.csv" % (prefix, d, kind))
            label = "omega" if kind == "outer" else "t"
            emit_csv(certificate_rows(report, kind, stride=cfg.stride),
                     (label, "re", "im", "abs"), path)
            refs[kind] = os.path.basename(path)
            files.append(path)
    path = os.path.join(out, "%s_d%d.json" % (prefix, d))
    files.append(_emit_json(certificate_json_dict(report, refs), path))
    return files


def _run_certify(cfg: RunConfig, out: str) -> List[str]:
    spec = _single_weight(cfg, stretched_exp(1.0, 0.5))
    degrees = cfg.degrees or (4,)
    files: List[str] = []
    for d in degrees:
        files.extend(_certify_one(spec, cfg.T, d, cfg, out, "certificate",
                                  with_rows=True))
    return files


def _run_demo(cfg: RunConfig, out: str) -> List[str]:
    degrees = cfg.degrees or tuple(range(2, 17, 2))
    files = []
    for name, spec in (("pure_exp", pure_exp(1.0)),
                       ("stretched_0.5", stretched_exp(1.0, 0.5))):
        rows = _error_rows(spec, cfg.T, degrees, "l2")
        files.append(emit_csv(rows, ("d", "eps_l1", "eps_l2"),
                              os.path.join(out, "demo_error_%s.csv" % name)))
    files.extend(_certify_one(stretched_exp(1.0, 0.5), cfg.T, 4, cfg, out,
                              "demo_certificate", with_rows=False))
    return files


_RUNNERS = {
    "classify": _run_classify,
    "moments": _run_moments,
    "errors": _run_errors,
    "outer": _run_outer,
    "certify": _run_certify,
    "demo": _run_demo,
}


def run(cfg: RunConfig) -> List[str]:
    """Execute one validated config; returns the artifact paths written."""
    return _RUNNERS[cfg.command](cfg, cfg.output_dir)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _parse_override(text: str):
    if "=" not in text:
        raise InputError("--set expects key=value, got %r" % text)
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except ValueError:
        value = raw                      # bare strings need no quoting
    return key, value


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="kreinlab",
        description="Weighted-approximation laboratory batch runner.")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON run config (defaults to an empty config).")
    parser.add_argument("--set", metavar="KEY=VALUE", action="append",
                        default=[], dest="overrides",
                        help="Override a config key; value parsed as JSON "
                             "when possible, else taken as a string.")
    parser.add_argument("--out", metavar="DIR",
                        help="Output directory (overrides output_dir).")
    args = parser.parse_args(argv)

    try:
        data = {}
        if args.config is not None:
            try:
                with open(args.config, "r", encoding="utf-8") as fh:
                    data = json.load(fh)
            except OSError as exc:
                raise InputError("cannot read config: %s" % exc)
            except ValueError as exc:
                raise InputError("config is not valid JSON: %s" % exc)
        for item in args.overrides:
            key, value = _parse_override(item)
            data[key] = value
        if args.out is not None:
            data["output_dir"] = args.out
        cfg = parse_config(data)
        files = run(cfg)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except KreinLabError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    for path in files:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
