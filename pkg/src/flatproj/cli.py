"""Command-line front end: scenario configs in, CSV/JSON tables out.

Every command validates its parameters before computing, builds the whole
output in memory and writes it in one shot, so invalid input never leaves a
partial file behind.  Identical configs produce byte-identical files: the
only header line is an echo of the effective config, floats are printed with
17 significant digits, CSV uses '.' decimals, ',' separators and LF endings.

Exit codes: 0 success, 2 validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .boundary import (
    InterfaceScenario,
    Polarization,
    fresnel_coefficients,
    graded_interface_reflection,
    kz_components,
    layer_depths,
)
from .dispersion import (
    KKIntegrand,
    ModelKind,
    SusceptibilityModel,
    f_hilbert,
    kk_imag_from_real,
    kk_real_from_imag,
    model_grid,
    susceptibility_eval,
)
from .errors import AccuracyError, ConvergenceError, DomainError, TransientZoneError
from .evolution import (
    WindowAxis,
    WindowSpec,
    commutator_first_order,
    duhamel_spectrum,
    shannon_reconstruct,
    shifted_window_vs_series,
)
from .numerics import Grid, SampledFunction
from .projectors import (
    DeltaFamily,
    FlatteningParams,
    ZETA_FLOOR,
    kappa,
    theta_flat,
    zeta_flat,
)


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"


class CLIValidationError(ValueError):
    """Bad or missing command parameters."""


@dataclass
class RunConfig:
    """One resolved CLI invocation."""

    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    format: OutputFormat = OutputFormat.CSV


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _parse_range(text: str) -> Grid:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise CLIValidationError(f"range must be start:end:step, got {text!r}")
    try:
        start, end, step = (float(p) for p in parts)
    except ValueError as exc:
        raise CLIValidationError(f"bad range {text!r}: {exc}") from None
    if step <= 0 or end <= start:
        raise CLIValidationError(f"range {text!r} needs end > start and step > 0")
    return Grid.from_range(start, end, step)


def _get_float(params: dict, key: str, default=None, minimum=None,
               strict_min=False) -> float:
    raw = params.get(key, default)
    if raw is None:
        raise CLIValidationError(f"missing required parameter '{key}'")
    try:
        v = float(raw)
    except (TypeError, ValueError):
        raise CLIValidationError(f"parameter '{key}' must be a number, got {raw!r}") from None
    if not math.isfinite(v):
        raise CLIValidationError(f"parameter '{key}' must be finite")
    if minimum is not None and (v < minimum or (strict_min and v == minimum)):
        op = ">" if strict_min else ">="
        raise CLIValidationError(f"parameter '{key}' must be {op} {minimum}")
    return v


def _get_int(params: dict, key: str, default=None, minimum=None) -> int:
    raw = params.get(key, default)
    if raw is None:
        raise CLIValidationError(f"missing required parameter '{key}'")
    try:
        v = int(raw)
    except (TypeError, ValueError):
        raise CLIValidationError(f"parameter '{key}' must be an integer, got {raw!r}") from None
    if minimum is not None and v < minimum:
        raise CLIValidationError(f"parameter '{key}' must be >= {minimum}")
    return v


def _get_choice(params: dict, key: str, choices: dict, default=None):
    raw = params.get(key, default)
    if raw is None:
        raise CLIValidationError(f"missing required parameter '{key}'")
    token = str(raw).strip().lower()
    if token not in choices:
        raise CLIValidationError(
            f"parameter '{key}' must be one of {sorted(choices)}, got {raw!r}")
    return choices[token]


_FAMILIES = {"lorentz": DeltaFamily.LORENTZ, "gauss": DeltaFamily.GAUSS}


# ---------------------------------------------------------------------------
# command implementations: each returns (header_columns, rows) or a JSON dict

def _run_projector(params: dict):
    family = _get_choice(params, "family", _FAMILIES, "lorentz")
    a = _get_float(params, "a", minimum=0.0, strict_min=True)
    b = _get_float(params, "b", default=a, minimum=0.0, strict_min=True)
    grid = _parse_range(params.get("range", "-5:5:0.01"))
    p = FlatteningParams(a, b, family)
    p_down = FlatteningParams(b, b, family)
    x = grid.points
    up = theta_flat(x, p)
    bump = zeta_flat(x, p)
    down = theta_flat(-x, p_down)
    residual = up + bump + down - 1.0
    logd = np.full_like(x, np.nan)
    inside = bump > ZETA_FLOOR
    if np.any(inside):
        logd[inside] = kappa(x[inside], p)
    header = ["x", "theta", "zeta", "kappa", "partition_residual"]
    rows = np.column_stack([x, up, bump, logd, residual])
    return header, rows


def _build_model(params: dict) -> SusceptibilityModel:
    kind = _get_choice(params, "model",
                       {"lorentz-osc": ModelKind.LORENTZ_OSCILLATOR,
                        "drude": ModelKind.DRUDE}, "lorentz-osc")
    wp = _get_float(params, "wp", minimum=0.0)
    gamma = _get_float(params, "gamma", minimum=0.0, strict_min=True)
    w0 = _get_float(params, "w0", default=0.0 if kind is ModelKind.DRUDE else None,
                    minimum=0.0)
    try:
        return SusceptibilityModel(wp, w0, gamma, kind)
    except DomainError as exc:
        raise CLIValidationError(str(exc)) from None


def _run_kk(params: dict):
    model = _build_model(params)
    a = _get_float(params, "a", default=0.0, minimum=0.0)
    mode = _get_choice(params, "mode",
                       {"standard": KKIntegrand.STANDARD,
                        "as-printed": KKIntegrand.AS_PRINTED}, "standard")
    direction = _get_choice(params, "direction",
                            {"real": "real", "imag": "imag"}, "real")
    omegas = _parse_range(params.get("omega_range", "0.1:5:0.1")).points
    grid = model_grid(model)
    eps = susceptibility_eval(model, grid.points)
    if np.any(omegas <= grid.start) or np.any(omegas >= grid.stop):
        raise CLIValidationError("omega_range must lie strictly inside the model grid")

    if direction == "real":
        sampled = SampledFunction(grid, eps.imag)
        recon = np.array([1.0 + kk_real_from_imag(sampled, a, w) for w in omegas])
        exact = susceptibility_eval(model, omegas).real
        header = ["omega", "eps1_recon", "eps1_exact", "abs_err", "rel_err"]
    else:
        sampled = SampledFunction(grid, eps.real)
        recon = np.array([kk_imag_from_real(sampled, a, w, mode) for w in omegas])
        exact = susceptibility_eval(model, omegas).imag
        header = ["omega", "eps2_recon", "eps2_exact", "abs_err", "rel_err"]
    abs_err = np.abs(recon - exact)
    rel_err = abs_err / np.maximum(np.abs(exact), 1e-300)
    return header, np.column_stack([omegas, recon, exact, abs_err, rel_err])


def _run_hilbert(params: dict):
    a = _get_float(params, "a", default=0.0, minimum=0.0)
    func = _get_choice(params, "func",
                       {"lorentz-pair": "lorentz-pair", "model-eps2": "model-eps2"},
                       "lorentz-pair")
    ks = _parse_range(params.get("k_range", "1:3:0.5")).points
    if func == "lorentz-pair":
        grid = _parse_range(params.get("q_range", "-50:50:0.01"))
        sampled = SampledFunction(grid, 1.0 / (1.0 + grid.points ** 2))
    else:
        model = _build_model(params)
        grid = model_grid(model)
        sampled = SampledFunction(grid, susceptibility_eval(model, grid.points).imag)
    if np.any(ks <= grid.start + 0.5 * grid.step) or np.any(ks >= grid.stop - 0.5 * grid.step):
        raise CLIValidationError("k_range must lie strictly inside the q grid")
    vals = np.array([f_hilbert(sampled, a, k) for k in ks])
    header = ["k", "re", "im", "abs"]
    return header, np.column_stack([ks, vals.real, vals.imag, np.abs(vals)])


def _parse_eps2(raw) -> complex:
    try:
        v = complex(str(raw).replace(" ", ""))
    except ValueError:
        raise CLIValidationError(f"eps2 must be a (complex) number, got {raw!r}") from None
    return v


def _run_boundary(params: dict):
    pol = _get_choice(params, "pol", {"te": Polarization.TE, "tm": Polarization.TM})
    alpha = _get_float(params, "alpha", default=0.0)
    eps1 = _get_float(params, "eps1", default=1.0, minimum=0.0, strict_min=True)
    eps2 = _parse_eps2(params.get("eps2"))
    omega = _get_float(params, "omega", default=2.0 * math.pi, minimum=0.0,
                       strict_min=True)
    c = _get_float(params, "c", default=1.0, minimum=0.0, strict_min=True)
    slices = _get_int(params, "slices", default=512, minimum=16)
    try:
        scenario = InterfaceScenario(omega, alpha, pol, eps1, eps2, c)
    except DomainError as exc:
        raise CLIValidationError(str(exc)) from None
    lam = scenario.vacuum_wavelength
    if "a" in params or "b" in params:
        a = _get_float(params, "a", minimum=0.0, strict_min=True)
        b = _get_float(params, "b", default=a, minimum=0.0, strict_min=True)
    else:
        ratio = _get_float(params, "flatten", default=1e-4, minimum=0.0,
                           strict_min=True)
        a = b = ratio * lam
    flattening = FlatteningParams(a, b)

    r_sharp, t_sharp = fresnel_coefficients(scenario)
    graded = graded_interface_reflection(scenario, flattening, slices)
    kz1, kz2 = kz_components(scenario)
    energy = abs(graded.r) ** 2
    if kz1.real != 0.0:
        energy += (kz2.real / kz1.real) * abs(graded.t) ** 2
    depths = layer_depths(scenario)
    payload = {
        "r_graded": {"re": graded.r.real, "im": graded.r.imag, "abs": abs(graded.r)},
        "t_graded": {"re": graded.t.real, "im": graded.t.imag, "abs": abs(graded.t)},
        "r_fresnel": {"re": r_sharp.real, "im": r_sharp.imag, "abs": abs(r_sharp)},
        "t_fresnel": {"re": t_sharp.real, "im": t_sharp.imag, "abs": abs(t_sharp)},
        "abs_r_diff": abs(graded.r - r_sharp),
        "energy_sum": energy,
        "layer_depth_a": depths[0],
        "layer_depth_b": depths[1],
        "flatten_a": a,
        "flatten_b": b,
        "wavelength": lam,
        "evanescent": kz2.real == 0.0,
    }
    return payload


def _run_window(params: dict):
    axis = _get_choice(params, "axis",
                       {"time": WindowAxis.TIME, "space": WindowAxis.SPACE,
                        "frequency": WindowAxis.FREQUENCY}, "time")
    half = _get_float(params, "half_width", minimum=0.0, strict_min=True)
    shift = _get_float(params, "shift")
    a = _get_float(params, "smooth_a", minimum=0.0, strict_min=True)
    family = _get_choice(params, "family", _FAMILIES, "gauss")
    per_depth = _get_int(params, "samples_per_depth", default=24, minimum=4)
    spec = WindowSpec(half, axis, shift)
    profile = commutator_first_order(spec, FlatteningParams(a, a, family), per_depth)
    header = ["u", "density"]
    return header, np.column_stack([profile.grid.points, profile.values])


def _run_evolve(params: dict):
    mode = _get_choice(params, "mode",
                       {"series": "series", "duhamel": "duhamel",
                        "shannon": "shannon"}, "series")
    if mode == "series":
        half = _get_float(params, "half_width", default=1.0, minimum=0.0,
                          strict_min=True)
        order = _get_int(params, "order", default=1, minimum=1)
        if order not in (1, 2):
            raise CLIValidationError("order must be 1 or 2")
        a = _get_float(params, "smooth_a", default=0.25, minimum=0.0, strict_min=True)
        family = _get_choice(params, "family", _FAMILIES, "gauss")
        raw = str(params.get("shifts", "0.02,0.04,0.08"))
        try:
            taus = [float(tok) for tok in raw.split(",") if tok.strip()]
        except ValueError:
            raise CLIValidationError(f"bad shifts list {raw!r}") from None
        if not taus or any(abs(t) >= half / 2 for t in taus):
            raise CLIValidationError("shifts must be non-empty and below half_width/2")
        rows = []
        for tau in taus:
            err = shifted_window_vs_series(WindowSpec(half, shift=tau), order,
                                           FlatteningParams(a, a, family))
            rows.append([tau, err])
        return ["tau", "l1_error"], np.asarray(rows)

    if mode == "duhamel":
        half = _get_float(params, "half_width", default=20.0, minimum=0.0,
                          strict_min=True)
        freq = _get_float(params, "freq", default=3.0, minimum=0.0, strict_min=True)
        omegas = _parse_range(params.get("omega_range", "2:4:0.01")).points
        span = max(2.0 * freq, omegas[-1] + 1.0)
        grid = Grid.from_range(-span, span, 0.01)
        spike = np.zeros(grid.count)
        for w0 in (freq, -freq):
            j = int(round((w0 - grid.start) / grid.step))
            spike[j] += math.pi / grid.step
        sampled = SampledFunction(grid, spike)
        vals = np.array([duhamel_spectrum(sampled, half, w) for w in omegas])
        analytic = (half * np.sinc((omegas - freq) * half / math.pi)
                    + half * np.sinc((omegas + freq) * half / math.pi))
        header = ["omega", "re", "im", "analytic", "abs_err"]
        return header, np.column_stack([omegas, vals.real, vals.imag, analytic,
                                        np.abs(vals - analytic)])

    band = _get_float(params, "band", default=math.pi, minimum=0.0, strict_min=True)
    count = _get_int(params, "count", default=201, minimum=3)
    freq = _get_float(params, "freq", default=0.5 * band, minimum=0.0)
    if freq >= band:
        raise CLIValidationError("signal freq must stay below the band limit")
    ts = _parse_range(params.get("t_range", "-10:10:0.01")).points
    n = np.arange(count) - (count - 1) // 2
    samples = np.cos(freq * n * math.pi / band)
    recon = shannon_reconstruct(samples, band, ts)
    exact = np.cos(freq * ts)
    header = ["t", "exact", "recon", "abs_err"]
    return header, np.column_stack([ts, exact, recon, np.abs(recon - exact)])


_COMMANDS: dict[str, Callable[[dict], object]] = {
    "projector": _run_projector,
    "kk": _run_kk,
    "hilbert": _run_hilbert,
    "boundary": _run_boundary,
    "window": _run_window,
    "evolve": _run_evolve,
}


# ---------------------------------------------------------------------------
# config resolution and output writing

def _read_config_file(path: str) -> dict:
    if not os.path.exists(path):
        raise CLIValidationError(f"config file not found: {path}")
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CLIValidationError(f"{path}:{lineno}: expected key = value")
            key, _, value = line.partition("=")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _config_echo(config: RunConfig) -> str:
    parts = [f"command={config.command}"]
    for key in sorted(config.params):
        parts.append(f"{key}={config.params[key]}")
    parts.append(f"format={config.format.value}")
    return " ".join(parts)


def _render_csv(config: RunConfig, header: list[str], rows: np.ndarray) -> str:
    lines = [f"# config: {_config_echo(config)}", ",".join(header)]
    for row in np.atleast_2d(rows):
        lines.append(",".join("nan" if np.isnan(v) else _fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _jsonify(value):
    if isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonify(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def _render_json(config: RunConfig, payload) -> str:
    doc = {"config": {"command": config.command,
                      **{k: str(v) for k, v in sorted(config.params.items())}},
           "result": _jsonify(payload)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _table_to_payload(header: list[str], rows: np.ndarray):
    rows = np.atleast_2d(rows)
    return {"columns": header,
            "rows": [[None if np.isnan(v) else float(v) for v in row]
                     for row in rows]}


def _resolve_output_path(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("FLATPROJ_OUTDIR")
    if outdir and not os.path.isabs(path):
        return os.path.join(outdir, path)
    return path


def run(config: RunConfig) -> int:
    """Execute one resolved config; returns the process exit code."""
    try:
        if config.command not in _COMMANDS:
            raise CLIValidationError(f"unknown command {config.command!r}")
        result = _COMMANDS[config.command](config.params)
    except CLIValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, ConvergenceError, TransientZoneError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3

    if isinstance(result, dict):
        if config.format is OutputFormat.JSON:
            text = _render_json(config, result)
        else:
            header, row = _flatten_scalars(result)
            text = _render_csv(config, header, np.asarray([row]))
    else:
        header, rows = result
        if config.format is OutputFormat.JSON:
            text = _render_json(config, _table_to_payload(header, rows))
        else:
            text = _render_csv(config, header, rows)

    path = _resolve_output_path(config.output_path)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {config.command} output to {path}", file=sys.stderr)
    return 0


def _flatten_scalars(payload: dict) -> tuple[list[str], list[float]]:
    header, row = [], []
    for key, value in payload.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                header.append(f"{key}_{sub}")
                row.append(float(v))
        elif isinstance(value, bool):
            header.append(key)
            row.append(float(value))
        else:
            header.append(key)
            row.append(float(value))
    return header, row


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flatproj",
        description="Flattened-projector numerics: tables for projector, "
                    "dispersion, boundary and window operators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key = value parameter file")
        p.add_argument("--output", help="output file path (stdout if omitted)")
        p.add_argument("--format", choices=["csv", "json"], default=None)

    specs = {
        "projector": ["family", "a", "b", "range"],
        "kk": ["model", "wp", "w0", "gamma", "a", "mode", "direction",
               "omega-range"],
        "hilbert": ["a", "func", "k-range", "q-range", "model", "wp", "w0",
                    "gamma"],
        "boundary": ["pol", "alpha", "eps1", "eps2", "omega", "c", "flatten",
                     "a", "b", "slices"],
        "window": ["axis", "half-width", "shift", "smooth-a", "family",
                   "samples-per-depth"],
        "evolve": ["mode", "half-width", "order", "smooth-a", "family",
                   "shifts", "freq", "omega-range", "band", "count", "t-range"],
    }
    for name, keys in specs.items():
        p = sub.add_parser(name)
        add_common(p)
        for key in keys:
            p.add_argument(f"--{key}")
    return parser


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Fold '--flag -5:5:0.01' into '--flag=-5:5:0.01' so argparse keeps it."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if (tok.startswith("--") and "=" not in tok and nxt is not None
                and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == ".")):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = _build_parser().parse_args(_merge_negative_values(list(argv)))
    try:
        params = _read_config_file(args.config) if args.config else {}
    except CLIValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    skip = {"command", "config", "output", "format"}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        params[key] = value

    fmt_token = args.format or params.pop("format", None)
    if fmt_token is None:
        fmt = OutputFormat.JSON if args.command == "boundary" else OutputFormat.CSV
    else:
        try:
            fmt = OutputFormat(str(fmt_token).lower())
        except ValueError:
            print(f"error: unknown format {fmt_token!r}", file=sys.stderr)
            return 2

    output = args.output or params.pop("output", None)
    config = RunConfig(args.command, params, output, fmt)
    return run(config)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
