"""Command line entry point: ``noisy-channels <command> [options]``.

Exit codes: 0 success, 1 failed check, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from . import catalog
from .channels import BlochVector, channel_metrics, extend_with_identity, oracle_check, validate_cptp
from .errors import ChannelError
from .sweep import (
    DEFAULT_EPS,
    DEFAULT_MIN_WIDTH,
    DEFAULT_STEPS,
    FIGURE_PANELS,
    SweepRecord,
    SweepSpec,
    detect_resonance,
    run_sweep,
)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("validate", "eval", "sweep", "resonance", "figures", "oracle-check")
CSV_HEADER = "p,metric,noise,output_entropy"


@dataclass
class RunConfig:
    command: str
    scenario: str = "ad"
    p: float = 0.0
    q: float = 0.0
    bloch: tuple[float, float, float] = (0.0, 0.0, 0.0)
    p_range: tuple[float, float] = (0.0, 1.0)
    steps: int = DEFAULT_STEPS
    eps: float = DEFAULT_EPS
    min_width: float = DEFAULT_MIN_WIDTH
    which: list[str] = field(default_factory=lambda: list(FIGURE_PANELS))
    out: str | None = None
    format: str = "csv"
    seed: int = 42
    trials: int = 200
    tol: float = 1e-10
    w12_variant: str = "derived"
    xi_variant: str = "derived"

    def sweep_spec(self) -> SweepSpec:
        return SweepSpec(
            scenario=self.scenario, q=self.q, bloch=self.bloch, p_min=self.p_range[0],
            p_max=self.p_range[1], steps=self.steps, w12_variant=self.w12_variant,
            xi_variant=self.xi_variant,
        )


def _probability(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{v} outside [0, 1]")
    return v


def _floats(text: str, n: int) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
    try:
        vals = tuple(float(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not numbers: {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return vals


def _bloch(text: str) -> tuple[float, float, float]:
    vals = _floats(text, 3)
    if math.sqrt(sum(v * v for v in vals)) > 1.0 + 1e-10:
        raise argparse.ArgumentTypeError(f"Bloch vector {text} lies outside the unit ball")
    return vals


def _p_range(text: str) -> tuple[float, float]:
    lo, hi = _floats(text, 2)
    if not 0.0 <= lo < hi <= 1.0:
        raise argparse.ArgumentTypeError(f"need 0 <= lo < hi <= 1, got {text}")
    return lo, hi


def _positive_int(minimum: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v
    return parse


def _nonneg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0.0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return v


def _panels(text: str) -> list[str]:
    if text == "all":
        return list(FIGURE_PANELS)
    panels = text.split(",")
    bad = [x for x in panels if x not in FIGURE_PANELS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown panel(s) {bad}; choose from {sorted(FIGURE_PANELS)} or 'all'")
    return panels


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (directory for `figures`); stdout if omitted")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--seed", type=int, default=42)

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--family", "--scenario", dest="scenario", choices=("ad", "bf", "dc"), default="ad")
    model.add_argument("--q", type=_probability, default=0.0)
    model.add_argument("--bloch", type=_bloch, default=(0.0, 0.0, 0.0), metavar="A1,A2,A3")
    model.add_argument("--w12-variant", choices=catalog.VARIANTS, default="derived")
    model.add_argument("--xi-variant", choices=catalog.VARIANTS, default="derived")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--p-range", type=_p_range, default=(0.0, 1.0), metavar="LO,HI")
    grid.add_argument("--steps", type=_positive_int(10), default=DEFAULT_STEPS)

    parser = argparse.ArgumentParser(prog="noisy-channels", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common, model], help="check completeness of a channel")
    p.add_argument("--p", type=_probability, default=0.0)
    p.add_argument("--tol", type=_nonneg, default=1e-10)

    p = sub.add_parser("eval", parents=[common, model], help="rates at a single point, as JSON")
    p.add_argument("--p", type=_probability, required=True)

    sub.add_parser("sweep", parents=[common, model, grid], help="rate and noise over a p grid")

    p = sub.add_parser("resonance", parents=[common, model, grid], help="windows where rate and noise rise together")
    p.add_argument("--eps", type=_nonneg, default=DEFAULT_EPS)
    p.add_argument("--min-width", type=_nonneg, default=DEFAULT_MIN_WIDTH)

    p = sub.add_parser("figures", parents=[common], help="curve data for the figure panels")
    p.add_argument("--which", type=_panels, default=list(FIGURE_PANELS), metavar="PANEL[,PANEL]|all")
    p.add_argument("--steps", type=_positive_int(10), default=DEFAULT_STEPS)
    p.add_argument("--w12-variant", choices=catalog.VARIANTS, default="derived")
    p.add_argument("--xi-variant", choices=catalog.VARIANTS, default="derived")

    p = sub.add_parser("oracle-check", parents=[common], help="entropy exchange vs Stinespring environment")
    p.add_argument("--trials", type=_positive_int(1), default=200)
    return parser


def parse_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    if values["format"] is None:
        values["format"] = "csv" if ns.command in ("sweep", "figures") else "json"
    return RunConfig(**values)


def _fmt(x: float) -> str:
    return repr(float(x))


def records_to_csv(records: Sequence[SweepRecord], spec: SweepSpec) -> str:
    a = ":".join(_fmt(x) for x in spec.bloch) if spec.scenario != "dc" else "none"
    lines = [
        f"# scenario={spec.scenario},q={_fmt(spec.q)},a={a},w12_variant={spec.w12_variant},"
        f"xi_variant={spec.xi_variant},metric={spec.metric},noise=S(W) in bits without display offset",
        CSV_HEADER,
    ]
    lines += [",".join(_fmt(v) for v in (r.p, r.metric, r.noise, r.output_entropy)) for r in records]
    return "\n".join(lines) + "\n"


def records_to_json(records: Sequence[SweepRecord], spec: SweepSpec) -> str:
    payload = {"spec": _spec_dict(spec), "records": [asdict(r) for r in records]}
    return json.dumps(payload, indent=2) + "\n"


def _spec_dict(spec: SweepSpec) -> dict:
    d = asdict(spec)
    d["bloch"] = list(spec.bloch)
    return d


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _cmd_validate(cfg: RunConfig) -> int:
    if cfg.scenario == "dc":
        ch = extend_with_identity(catalog.make_amplitude_damping(cfg.p), 2)
    else:
        ch = catalog.make_family(cfg.scenario, cfg.p, cfg.q)
    report = validate_cptp(ch, cfg.tol)
    _emit(json.dumps(asdict(report), indent=2) + "\n", cfg.out)
    return EXIT_OK if report.passed else EXIT_CHECK


def _cmd_eval(cfg: RunConfig) -> int:
    if cfg.scenario == "dc":
        ev = catalog.dense_coding_eval(cfg.p, cfg.q, cfg.xi_variant)
        payload = {
            "scenario": "dc", "p": cfg.p, "q": cfg.q, "xi_variant": cfg.xi_variant,
            "chi": ev.chi, "output_entropy": ev.output_entropy, "entropy_exchange": ev.entropy_exchange,
            "xi": [float(x) for x in ev.xi],
            "chi_generic": catalog.dense_coding_rate_generic(cfg.p, cfg.q),
            "chi_direct_ensemble": catalog.dense_coding_chi_direct(cfg.p, cfg.q),
        }
    else:
        a = BlochVector(*cfg.bloch)
        metrics = channel_metrics(catalog.make_family(cfg.scenario, cfg.p, cfg.q), a.to_density())
        closed = catalog.closed_form_qubit_eval(cfg.scenario, a, cfg.p, cfg.q, cfg.w12_variant)
        payload = {
            "scenario": cfg.scenario, "p": cfg.p, "q": cfg.q, "bloch": list(cfg.bloch),
            **asdict(metrics),
            "closed_form": {
                "w12_variant": cfg.w12_variant,
                "b": list(closed.b),
                "entropy_exchange": closed.entropy_exchange,
                "output_entropy": closed.output_entropy,
                "coherent_information": closed.coherent_information,
            },
        }
    _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    return EXIT_OK


def _cmd_sweep(cfg: RunConfig) -> int:
    spec = cfg.sweep_spec()
    records = run_sweep(spec)
    text = records_to_json(records, spec) if cfg.format == "json" else records_to_csv(records, spec)
    _emit(text, cfg.out)
    return EXIT_OK


def _cmd_resonance(cfg: RunConfig) -> int:
    spec = cfg.sweep_spec()
    windows = detect_resonance(run_sweep(spec), eps=cfg.eps, min_width=cfg.min_width)
    if cfg.format == "csv":
        text = "p_lo,p_hi,max_metric_gain\n" + "".join(
            f"{_fmt(w.p_lo)},{_fmt(w.p_hi)},{_fmt(w.max_metric_gain)}\n" for w in windows)
    else:
        payload = {"spec": _spec_dict(spec), "eps": cfg.eps, "min_width": cfg.min_width,
                   "windows": [asdict(w) for w in windows]}
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


def _cmd_figures(cfg: RunConfig) -> int:
    outdir = Path(cfg.out) if cfg.out else None
    for panel in cfg.which:
        spec = SweepSpec.for_panel(panel, steps=cfg.steps, w12_variant=cfg.w12_variant, xi_variant=cfg.xi_variant)
        records = run_sweep(spec)
        text = records_to_json(records, spec) if cfg.format == "json" else records_to_csv(records, spec)
        if outdir is None:
            sys.stdout.write(f"# panel={panel}\n" + text)
        else:
            _emit(text, str(outdir / f"fig{panel}.{cfg.format}"))
    return EXIT_OK


def _cmd_oracle(cfg: RunConfig) -> int:
    report = oracle_check(trials=cfg.trials, seed=cfg.seed)
    _emit(json.dumps(asdict(report), indent=2) + "\n", cfg.out)
    return EXIT_OK if report.passed else EXIT_CHECK


HANDLERS = {
    "validate": _cmd_validate,
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "resonance": _cmd_resonance,
    "figures": _cmd_figures,
    "oracle-check": _cmd_oracle,
}


def execute(cfg: RunConfig) -> int:
    try:
        return HANDLERS[cfg.command](cfg)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ChannelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
