"""Command-line interface.

Subcommands:

    run <config.json>   evolve a scenario and write the requested outputs
    fig2 <dir>          emit the two stock purity-decay curves
    validate            run the cross-route check battery

Exit codes: 0 success, 1 check failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .checks import run_validation
from .dynamics import damping_params, evolve_coherent, purity, purity_curve
from .errors import ValidationError
from .tomography import gaussian_tomogram_eval

CSV_HEADER = "t,C,D,E,lambda,delta,purity"
CURVE_FIELDS = ("t", "C", "D", "E", "lambda", "delta", "purity")


@dataclass(frozen=True)
class SliceSpec:
    """Tomogram slice request: fixed (mu, nu) and a uniform X range."""

    mu: float
    nu: float
    x_min: float
    x_max: float
    n_points: int
    t: float

    def __post_init__(self) -> None:
        if self.mu == 0.0 and self.nu == 0.0:
            raise ValidationError("slice requires (mu, nu) != (0, 0)")
        if not self.x_max > self.x_min:
            raise ValidationError("slice requires x_max > x_min")
        if self.n_points < 2:
            raise ValidationError("slice requires n_points >= 2")
        if self.t < 0:
            raise ValidationError("slice time must be nonnegative")


@dataclass(frozen=True)
class OutputSpec:
    kind: str
    path: str
    format: str
    slice_spec: SliceSpec | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    u: complex
    v: complex
    alpha: complex
    t_start: float
    t_end: float
    n_steps: int
    outputs: tuple[OutputSpec, ...] = field(default_factory=tuple)


def _as_complex(raw, name: str) -> complex:
    if (
        not isinstance(raw, (list, tuple))
        or len(raw) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw)
    ):
        raise ValidationError(f"'{name}' must be a [re, im] pair of numbers")
    return complex(raw[0], raw[1])


def _as_real(raw, name: str) -> float:
    if not isinstance(raw, (int, float)) or isinstance(raw, bool):
        raise ValidationError(f"'{name}' must be a number")
    return float(raw)


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a scenario configuration document."""
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValidationError("config must be a JSON object")
    for key in ("u", "v", "alpha", "t_start", "t_end", "n_steps"):
        if key not in doc:
            raise ValidationError(f"config is missing required field '{key}'")

    u = _as_complex(doc["u"], "u")
    v = _as_complex(doc["v"], "v")
    alpha = _as_complex(doc["alpha"], "alpha")
    t_start = _as_real(doc["t_start"], "t_start")
    t_end = _as_real(doc["t_end"], "t_end")
    if t_start < 0:
        raise ValidationError("'t_start' must be nonnegative")
    if not t_end > t_start:
        raise ValidationError("'t_end' must exceed 't_start'")
    n_steps = doc["n_steps"]
    if not isinstance(n_steps, int) or isinstance(n_steps, bool) or n_steps < 2:
        raise ValidationError("'n_steps' must be an integer >= 2")

    outputs = []
    raw_outputs = doc.get("outputs", [])
    if not isinstance(raw_outputs, list):
        raise ValidationError("'outputs' must be a list")
    for i, out in enumerate(raw_outputs):
        if not isinstance(out, dict):
            raise ValidationError(f"outputs[{i}] must be an object")
        kind = out.get("kind")
        if kind not in ("purity_curve", "tomogram_slice", "coefficients"):
            raise ValidationError(
                f"outputs[{i}].kind must be purity_curve, tomogram_slice, "
                f"or coefficients, got {kind!r}"
            )
        fmt = out.get("format")
        if fmt not in ("csv", "json"):
            raise ValidationError(f"outputs[{i}].format must be csv or json, got {fmt!r}")
        path = out.get("path")
        if not isinstance(path, str) or not path:
            raise ValidationError(f"outputs[{i}].path must be a nonempty string")
        slice_spec = None
        if kind == "tomogram_slice":
            slice_spec = SliceSpec(
                mu=_as_real(out.get("mu", 1.0), f"outputs[{i}].mu"),
                nu=_as_real(out.get("nu", 0.0), f"outputs[{i}].nu"),
                x_min=_as_real(out.get("x_min", -8.0), f"outputs[{i}].x_min"),
                x_max=_as_real(out.get("x_max", 8.0), f"outputs[{i}].x_max"),
                n_points=out.get("n_points", 256),
                t=_as_real(out.get("t", t_end), f"outputs[{i}].t"),
            )
        outputs.append(OutputSpec(kind=kind, path=path, format=fmt, slice_spec=slice_spec))
    return ScenarioConfig(
        u=u, v=v, alpha=alpha, t_start=t_start, t_end=t_end,
        n_steps=n_steps, outputs=tuple(outputs),
    )


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_curve_csv(path: str, rows: list[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def write_curve_json(path: str, rows: list[tuple]) -> None:
    records = [dict(zip(CURVE_FIELDS, row)) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(records, fh, indent=2)
        fh.write("\n")


def write_slice(path: str, fmt: str, xs: np.ndarray, ws: list[float]) -> None:
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("X,w\n")
            for x, w in zip(xs, ws):
                fh.write(f"{_fmt(float(x))},{_fmt(w)}\n")
    else:
        records = [{"X": float(x), "w": w} for x, w in zip(xs, ws)]
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(records, fh, indent=2)
            fh.write("\n")


def run_scenario(config: ScenarioConfig) -> None:
    p = damping_params(config.u, config.v)
    times = np.linspace(config.t_start, config.t_end, config.n_steps)
    rows = purity_curve(config.alpha, p, [float(t) for t in times])
    for out in config.outputs:
        if out.kind in ("purity_curve", "coefficients"):
            if out.format == "csv":
                write_curve_csv(out.path, rows)
            else:
                write_curve_json(out.path, rows)
        else:
            spec = out.slice_spec
            g = evolve_coherent(config.alpha, p, spec.t)
            xs = np.linspace(spec.x_min, spec.x_max, spec.n_points)
            ws = [gaussian_tomogram_eval(g, float(x), spec.mu, spec.nu) for x in xs]
            write_slice(out.path, out.format, xs, ws)


def cmd_run(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text)
    except json.JSONDecodeError as exc:
        print(
            f"error: {args.config}:{exc.lineno}:{exc.colno}: {exc.msg}",
            file=sys.stderr,
        )
        return 2
    except ValidationError as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return 2
    try:
        run_scenario(config)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


FIG2_CASES = (
    ("fig2a.csv", 1.0 + 0j, 10j),
    ("fig2b.csv", 1.0 + 0j, 1.0 + 2j),
)


def cmd_fig2(args: argparse.Namespace) -> int:
    import os

    times = [5.0 * i / 500 for i in range(501)]
    try:
        os.makedirs(args.output_dir, exist_ok=True)
        for name, u, v in FIG2_CASES:
            p = damping_params(u, v)
            rows = purity_curve(0j, p, times)
            write_curve_csv(os.path.join(args.output_dir, name), rows)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    results, all_pass = run_validation(
        verbose=False, tolerance_scale=args.tolerance_scale
    )
    for res in results:
        if args.verbose or not res.passed:
            print(res.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} checks passed")
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomodyn",
        description="Damped oscillator dynamics in the tomographic "
        "probability representation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="evolve a scenario from a JSON config")
    p_run.add_argument("config", help="path to a scenario config (JSON)")
    p_run.set_defaults(func=cmd_run)

    p_fig = sub.add_parser("fig2", help="emit the stock purity-decay curves")
    p_fig.add_argument("output_dir", help="directory for fig2a.csv and fig2b.csv")
    p_fig.set_defaults(func=cmd_fig2)

    p_val = sub.add_parser("validate", help="run the cross-route check battery")
    p_val.add_argument("--verbose", action="store_true", help="print every check line")
    p_val.add_argument(
        "--tolerance-scale",
        type=float,
        default=1.0,
        help="multiply every check tolerance (fault injection uses 0)",
    )
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
