"""Command-line entry point, experiment config files, CSV traces and SVG plots.

Subcommands::

    blindbf run --config fig2a.json [--out DIR] [--seed N] [--trials K] [--workers W]
    blindbf scenario list
    blindbf tune-mu --scenario fig2a --algorithm cmv-sg [--grid 1e-4,3e-4,1e-3]
    blindbf plot --csv fig2a.csv [--config fig2a.json] [--out fig2a.svg]

Exit status is 0 on success, 1 on a configuration or validation error and 2
on an I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .array_model import NoiseSpec, SourceSpec, UlaGeometry
from .beamformers import CONSTRAINT_MODES, RlsParams, SgParams
from .errors import ConfigurationError
from .harness import (
    ALGORITHMS,
    BUILTIN_SCENARIOS,
    AlgoSpec,
    MismatchSpec,
    ScenarioSegment,
    ScenarioTimeline,
    SinrTrace,
    builtin_scenario,
    grid_search_mu,
    run_montecarlo,
)

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 100
DEFAULT_GRID = (1e-4, 3e-4, 1e-3, 3e-3, 1e-2)
CSV_HEADER = ("snapshot", "algorithm", "sinr_linear", "sinr_db")


class ConfigParseError(ConfigurationError):
    """Malformed JSON; carries the 1-based line and column."""

    def __init__(self, msg: str, line: int, column: int):
        super().__init__(f"{msg} at line {line}, column {column}")
        self.line = line
        self.column = column


class ConfigValidationError(ConfigurationError):
    """Well-formed JSON that violates the config schema; names the field."""

    def __init__(self, field: str, msg: str):
        super().__init__(f"{field} {msg}")
        self.field = field


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: str
    timeline: ScenarioTimeline
    algorithms: tuple[AlgoSpec, ...]
    trials: int = DEFAULT_TRIALS
    base_seed: int = 0
    output_dir: str = "."


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def _object(value, path, allowed, required=()):
    if not isinstance(value, dict):
        raise ConfigValidationError(path, "must be an object")
    for key in value:
        if key not in allowed:
            raise ConfigValidationError(f"{path}.{key}" if path else key, "is not a recognized field")
    for key in required:
        if key not in value:
            raise ConfigValidationError(f"{path}.{key}" if path else key, "is required")
    return value


def _number(obj, key, path, default=None, integer=False):
    field = f"{path}.{key}" if path else key
    if key not in obj:
        if default is None:
            raise ConfigValidationError(field, "is required")
        return default
    value = obj[key]
    ok = isinstance(value, int) if integer else isinstance(value, (int, float))
    if isinstance(value, bool) or not ok or (not integer and not math.isfinite(value)):
        kind = "an integer" if integer else "a finite number"
        raise ConfigValidationError(field, f"must be {kind}, got {value!r}")
    return value if integer else float(value)


def _require(cond, field, msg):
    if not cond:
        raise ConfigValidationError(field, msg)


def _parse_source(obj, path) -> SourceSpec:
    _object(obj, path, ("doa_deg", "power", "is_soi"), ("doa_deg", "power"))
    doa = _number(obj, "doa_deg", path)
    power = _number(obj, "power", path)
    is_soi = obj.get("is_soi", False)
    _require(0 < doa < 180, f"{path}.doa_deg", f"must lie in (0, 180) degrees, got {doa!r}")
    _require(power >= 0, f"{path}.power", f"must be nonnegative, got {power!r}")
    _require(isinstance(is_soi, bool), f"{path}.is_soi", "must be a boolean")
    return SourceSpec(doa, power, is_soi)


def _parse_timeline(obj, path="timeline") -> ScenarioTimeline:
    _object(
        obj, path,
        ("geometry", "noise", "segments", "total_snapshots", "assumed_doa_deg", "mismatch"),
        ("segments",),
    )
    g = _object(obj.get("geometry", {}), f"{path}.geometry", ("num_sensors", "spacing_ratio"))
    m = _number(g, "num_sensors", f"{path}.geometry", 16, integer=True)
    ratio = _number(g, "spacing_ratio", f"{path}.geometry", 0.5)
    _require(m >= 1, f"{path}.geometry.num_sensors", f"must be >= 1, got {m}")
    _require(ratio > 0, f"{path}.geometry.spacing_ratio", f"must be positive, got {ratio!r}")

    n = _object(obj.get("noise", {}), f"{path}.noise", ("variance",))
    variance = _number(n, "variance", f"{path}.noise", 0.01)
    _require(variance >= 0, f"{path}.noise.variance", f"must be nonnegative, got {variance!r}")

    raw_segments = obj["segments"]
    _require(isinstance(raw_segments, list) and raw_segments, f"{path}.segments", "must be a nonempty list")
    segments = []
    expected = 1
    for k, seg in enumerate(raw_segments):
        sp = f"{path}.segments[{k}]"
        _object(seg, sp, ("start", "end", "sources"), ("start", "end", "sources"))
        start = _number(seg, "start", sp, integer=True)
        end = _number(seg, "end", sp, integer=True)
        _require(start == expected, f"{sp}.start", f"must be {expected} (segments are contiguous and non-overlapping), got {start}")
        _require(end >= start, f"{sp}.end", f"must be >= start ({start}), got {end}")
        srcs = seg["sources"]
        _require(isinstance(srcs, list) and srcs, f"{sp}.sources", "must be a nonempty list")
        sources = tuple(_parse_source(s, f"{sp}.sources[{j}]") for j, s in enumerate(srcs))
        _require(sum(s.is_soi for s in sources) == 1, f"{sp}.sources", "must contain exactly one source with is_soi true")
        segments.append(ScenarioSegment(start, end, sources))
        expected = end + 1

    total = _number(obj, "total_snapshots", path, expected - 1, integer=True)
    _require(total == expected - 1, f"{path}.total_snapshots", f"must equal the last segment end ({expected - 1}), got {total}")

    assumed = obj.get("assumed_doa_deg")
    if assumed is not None:
        assumed = _number(obj, "assumed_doa_deg", path)
        _require(0 < assumed < 180, f"{path}.assumed_doa_deg", f"must lie in (0, 180) degrees, got {assumed!r}")

    mismatch = obj.get("mismatch")
    if mismatch is not None:
        mp = f"{path}.mismatch"
        _object(mismatch, mp, ("half_width_deg", "per_snapshot"), ("half_width_deg",))
        width = _number(mismatch, "half_width_deg", mp)
        _require(width >= 0, f"{mp}.half_width_deg", f"must be nonnegative, got {width!r}")
        per_snapshot = mismatch.get("per_snapshot", False)
        _require(isinstance(per_snapshot, bool), f"{mp}.per_snapshot", "must be a boolean")
        mismatch = MismatchSpec(width, per_snapshot)

    return ScenarioTimeline(
        UlaGeometry(m, ratio), NoiseSpec(variance), tuple(segments), total, assumed, mismatch
    )


def _parse_algorithm(obj, path) -> AlgoSpec:
    if not isinstance(obj, dict):
        raise ConfigValidationError(path, "must be an object")
    name = obj.get("name")
    _require(name in ALGORITHMS, f"{path}.name", f"must be one of {', '.join(ALGORITHMS)}, got {name!r}")
    if name.endswith("rls"):
        _object(obj, path, ("name", "forgetting", "regularization", "error_floor"))
        alpha = _number(obj, "forgetting", path, 0.998)
        delta = _number(obj, "regularization", path, 0.01)
        floor = _number(obj, "error_floor", path, 1e-8)
        _require(0 < alpha <= 1, f"{path}.forgetting", f"must lie in (0, 1], got {alpha!r}")
        _require(delta > 0, f"{path}.regularization", f"must be positive, got {delta!r}")
        _require(floor > 0, f"{path}.error_floor", f"must be positive, got {floor!r}")
        return AlgoSpec(name, RlsParams(alpha, delta, floor))
    _object(obj, path, ("name", "step_size", "constraint_mode"), ("step_size",))
    mu = _number(obj, "step_size", path)
    mode = obj.get("constraint_mode", "projection")
    _require(mu > 0, f"{path}.step_size", f"must be positive, got {mu!r}")
    _require(mode in CONSTRAINT_MODES, f"{path}.constraint_mode", f"must be one of {', '.join(CONSTRAINT_MODES)}, got {mode!r}")
    return AlgoSpec(name, SgParams(mu, mode))


def parse_config(text: bytes | str) -> ExperimentConfig:
    """Parse and validate a JSON experiment config, applying defaults."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigParseError(f"invalid UTF-8 ({exc.reason})", 1, exc.start + 1) from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(exc.msg, exc.lineno, exc.colno) from None

    _object(raw, "", ("scenario", "timeline", "algorithms", "trials", "base_seed", "output_dir"), ("scenario",))
    scenario = raw["scenario"]
    _require(isinstance(scenario, str) and scenario, "scenario", "must be a nonempty string")
    if raw.get("timeline") is not None:
        timeline = _parse_timeline(raw["timeline"])
    elif scenario in BUILTIN_SCENARIOS:
        timeline = builtin_scenario(scenario)
    else:
        raise ConfigValidationError(
            "scenario", f"must be one of {', '.join(BUILTIN_SCENARIOS)} when no timeline is given, got {scenario!r}"
        )

    algos = raw.get("algorithms")
    _require(isinstance(algos, list), "algorithms", "must be a list")
    _require(len(algos) > 0, "algorithms", "must be nonempty")
    specs = tuple(_parse_algorithm(a, f"algorithms[{k}]") for k, a in enumerate(algos))
    names = [s.name for s in specs]
    _require(len(set(names)) == len(names), "algorithms", f"must not repeat an algorithm name, got {names}")

    trials = _number(raw, "trials", "", DEFAULT_TRIALS, integer=True)
    _require(trials >= 1, "trials", f"must be >= 1, got {trials}")
    seed = _number(raw, "base_seed", "", 0, integer=True)
    _require(0 <= seed < 2**64, "base_seed", f"must be an unsigned 64-bit integer, got {seed}")
    out = raw.get("output_dir", ".")
    _require(isinstance(out, str) and out, "output_dir", "must be a nonempty string")
    return ExperimentConfig(scenario, timeline, specs, trials, seed, out)


def _timeline_to_dict(tl: ScenarioTimeline) -> dict[str, Any]:
    return {
        "geometry": {"num_sensors": tl.geometry.num_sensors, "spacing_ratio": tl.geometry.spacing_ratio},
        "noise": {"variance": tl.noise.variance},
        "segments": [
            {
                "start": seg.start_snapshot,
                "end": seg.end_snapshot,
                "sources": [{"doa_deg": s.doa_deg, "power": s.power, "is_soi": s.is_soi} for s in seg.sources],
            }
            for seg in tl.segments
        ],
        "total_snapshots": tl.total_snapshots,
        "assumed_doa_deg": tl.assumed_doa_deg,
        "mismatch": None
        if tl.mismatch is None
        else {"half_width_deg": tl.mismatch.half_width_deg, "per_snapshot": tl.mismatch.per_snapshot},
    }


def _algo_to_dict(spec: AlgoSpec) -> dict[str, Any]:
    p = spec.params
    if isinstance(p, RlsParams):
        return {"name": spec.name, "forgetting": p.forgetting, "regularization": p.regularization, "error_floor": p.error_floor}
    return {"name": spec.name, "step_size": p.step_size, "constraint_mode": p.constraint_mode}


def serialize_config(cfg: ExperimentConfig) -> bytes:
    """Explicit JSON form of a config; ``parse_config`` inverts it exactly."""
    doc = {
        "scenario": cfg.scenario,
        "timeline": _timeline_to_dict(cfg.timeline),
        "algorithms": [_algo_to_dict(a) for a in cfg.algorithms],
        "trials": cfg.trials,
        "base_seed": cfg.base_seed,
        "output_dir": cfg.output_dir,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------


def _format_db(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if value <= 0:
        return "-inf"
    if math.isinf(value):
        return "inf"
    return f"{10.0 * math.log10(value):.6f}"


def format_trace_csv(traces: Sequence[SinrTrace]) -> str:
    if not traces:
        raise ValueError("traces must be nonempty")
    n = len(traces[0].per_snapshot_sinr)
    if any(len(t.per_snapshot_sinr) != n for t in traces):
        raise ValueError("all traces must have the same length")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i in range(n):
        for t in traces:
            v = float(t.per_snapshot_sinr[i])
            writer.writerow((i + 1, t.algorithm, repr(v), _format_db(v)))
    return buf.getvalue()


def write_trace_csv(traces: Sequence[SinrTrace], path) -> None:
    """Write ``snapshot,algorithm,sinr_linear,sinr_db`` rows in snapshot-major order."""
    text = format_trace_csv(traces)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_trace_csv(path) -> list[SinrTrace]:
    """Rebuild traces from a CSV written by :func:`write_trace_csv`."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ConfigurationError(f"csv header must be {','.join(CSV_HEADER)}, got {header}")
        values: dict[str, list[float]] = {}
        for row in reader:
            if len(row) != 4:
                raise ConfigurationError(f"csv row has {len(row)} fields, expected 4")
            values.setdefault(row[1], []).append(float(row[2]))
    if not values:
        raise ConfigurationError("csv contains no data rows")
    return [SinrTrace(name, np.asarray(v)) for name, v in values.items()]


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_W, _H = 800, 480
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 170, 30, 60


@dataclass(frozen=True)
class PlotAnnotations:
    """Segment boundary snapshots and ``(start, end, optimal_db)`` reference lines."""

    boundaries: tuple[int, ...] = ()
    optimal_levels: tuple[tuple[int, int, float], ...] = ()

    @classmethod
    def from_timeline(cls, timeline: ScenarioTimeline) -> "PlotAnnotations":
        bounds = tuple(seg.end_snapshot for seg in timeline.segments[:-1])
        levels = tuple(
            (seg.start_snapshot, seg.end_snapshot, 10.0 * math.log10(opt))
            for seg, opt in zip(timeline.segments, timeline.optimal_sinrs())
        )
        return cls(bounds, levels)


def _nice_ticks(lo, hi, count=6):
    span = hi - lo
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 5, 10) if s * mag >= raw), default=mag * 10)
    first = math.ceil(lo / step) * step
    return [first + k * step for k in range(int((hi - first) / step + 1e-9) + 1)]


def render_plot_svg(traces: Sequence[SinrTrace], path, annotations: PlotAnnotations | None = None, title: str = "Output SINR versus snapshots") -> None:
    """Standalone SVG 1.1 line chart of SINR (dB) against snapshot index."""
    if not traces:
        raise ValueError("traces must be nonempty")
    ann = annotations or PlotAnnotations()
    n = max(len(t.per_snapshot_sinr) for t in traces)

    db = []
    for t in traces:
        v = np.asarray(t.per_snapshot_sinr, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            db.append(np.where(v > 0, 10.0 * np.log10(np.where(v > 0, v, 1.0)), np.nan))
    finite = np.concatenate([d[np.isfinite(d)] for d in db] + [np.array([lvl for _, _, lvl in ann.optimal_levels])])
    lo, hi = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if hi - lo < 1e-9:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad

    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM
    x_hi = max(n, 2)

    def sx(i):
        return _LEFT + (i - 1) / (x_hi - 1) * pw

    def sy(v):
        return _TOP + (hi - v) / (hi - lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_LEFT + pw / 2:.1f}" y="18" text-anchor="middle" font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<rect class="axes" x="{_LEFT}" y="{_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for tick in _nice_ticks(lo, hi):
        y = sy(tick)
        out.append(f'<line class="grid" x1="{_LEFT}" y1="{y:.2f}" x2="{_LEFT + pw}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{_LEFT - 6}" y="{y + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{tick:g}</text>')
    for tick in _nice_ticks(1, x_hi):
        x = sx(tick)
        out.append(f'<text x="{x:.2f}" y="{_TOP + ph + 16}" text-anchor="middle" font-family="sans-serif" font-size="11">{tick:g}</text>')
    out.append(f'<text x="{_LEFT + pw / 2:.1f}" y="{_H - 20}" text-anchor="middle" font-family="sans-serif" font-size="12">Number of snapshots</text>')
    out.append(
        f'<text x="18" y="{_TOP + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_TOP + ph / 2:.1f})">SINR (dB)</text>'
    )

    for b in ann.boundaries:
        x = sx(b)
        out.append(f'<line class="boundary" data-snapshot="{b}" x1="{x:.2f}" y1="{_TOP}" x2="{x:.2f}" y2="{_TOP + ph}" stroke="gray"/>')
    for start, end, level in ann.optimal_levels:
        y = sy(level)
        out.append(
            f'<line class="optimal" data-sinr-db="{level:.6f}" x1="{sx(start):.2f}" y1="{y:.2f}" x2="{sx(end):.2f}" y2="{y:.2f}" '
            'stroke="black" stroke-dasharray="6,4"/>'
        )

    for k, (t, d) in enumerate(zip(traces, db)):
        color = _COLORS[k % len(_COLORS)]
        pts = " ".join(f"{sx(i + 1):.2f},{sy(v):.2f}" for i, v in enumerate(d) if np.isfinite(v))
        out.append(
            f'<polyline class="trace" data-algorithm="{escape(t.algorithm)}" fill="none" stroke="{color}" '
            f'stroke-width="1.2" points="{pts}"/>'
        )
        ly = _TOP + 16 + 18 * k
        lx = _LEFT + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text class="legend" x="{lx + 30}" y="{ly + 4}" font-family="sans-serif" font-size="12">{escape(t.algorithm)}</text>')
    out.append("</svg>")

    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(out) + "\n")


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blindbf", description="Blind adaptive beamforming SINR experiments")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run a Monte Carlo experiment from a JSON config")
    run.add_argument("--config", required=True)
    run.add_argument("--out", help="output directory (default: config output_dir)")
    run.add_argument("--seed", type=int, help="override base_seed")
    run.add_argument("--trials", type=int, help="override trials")
    run.add_argument("--workers", type=int, default=1, help="threads evaluating trial chunks")

    scen = sub.add_parser("scenario", help="inspect built-in scenarios")
    scen_sub = scen.add_subparsers(dest="scenario_command", required=True, parser_class=_Parser)
    scen_sub.add_parser("list", help="list built-in scenario names")

    tune = sub.add_parser("tune-mu", help="grid-search an SG step size")
    src = tune.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", choices=BUILTIN_SCENARIOS)
    src.add_argument("--config")
    tune.add_argument("--algorithm", required=True, choices=("cmv-sg", "ccm-sg"))
    tune.add_argument("--grid", default=",".join(f"{g:g}" for g in DEFAULT_GRID))
    tune.add_argument("--trials", type=int, default=20)
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--constraint-mode", choices=CONSTRAINT_MODES, default="projection")

    plot = sub.add_parser("plot", help="render an SVG from an existing trace CSV")
    plot.add_argument("--csv", required=True)
    plot.add_argument("--config", help="config whose timeline supplies boundary and optimal-SINR annotations")
    plot.add_argument("--out", help="SVG path (default: CSV path with .svg suffix)")
    return parser


def _load_config(path) -> ExperimentConfig:
    return parse_config(Path(path).read_bytes())


_SCENARIO_NOTES = {
    "fig2a": "interferers at 40 and 60 deg, exact steering, N=1000",
    "fig2b": "as fig2a with uniform +/-1 deg look-direction mismatch",
    "fig3": "interferers enter at 1001 (30, 50 deg) and 2001 (25, 35 deg; 50 leaves), N=3000",
}


def _cmd_run(args) -> int:
    cfg = _load_config(args.config)
    trials = cfg.trials if args.trials is None else args.trials
    seed = cfg.base_seed if args.seed is None else args.seed
    if trials < 1:
        raise ConfigValidationError("trials", f"must be >= 1, got {trials}")
    if not 0 <= seed < 2**64:
        raise ConfigValidationError("base_seed", f"must be an unsigned 64-bit integer, got {seed}")
    if args.workers < 1:
        raise ConfigValidationError("workers", f"must be >= 1, got {args.workers}")
    out_dir = Path(args.out if args.out else cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    traces = run_montecarlo(cfg.timeline, cfg.algorithms, trials, seed, workers=args.workers)
    stem = Path(args.config).stem
    csv_path, svg_path = out_dir / f"{stem}.csv", out_dir / f"{stem}.svg"
    write_trace_csv(traces, csv_path)
    render_plot_svg(traces, svg_path, PlotAnnotations.from_timeline(cfg.timeline), title=f"{cfg.scenario}: output SINR versus snapshots")
    for t in traces:
        print(f"{t.algorithm}: final SINR {_format_db(float(t.per_snapshot_sinr[-1]))} dB")
    print(f"wrote {csv_path} and {svg_path}")
    return 0


def _cmd_tune(args) -> int:
    timeline = builtin_scenario(args.scenario) if args.scenario else _load_config(args.config).timeline
    try:
        grid = [float(g) for g in args.grid.split(",") if g.strip()]
    except ValueError:
        raise ConfigValidationError("grid", f"must be a comma-separated list of numbers, got {args.grid!r}") from None
    if any(not g > 0 for g in grid):
        raise ConfigValidationError("grid", "values must be positive")
    best = grid_search_mu(timeline, args.algorithm, grid, args.constraint_mode, args.trials, args.seed)
    print(f"{best:g}")
    return 0


def _cmd_plot(args) -> int:
    traces = read_trace_csv(args.csv)
    ann = PlotAnnotations.from_timeline(_load_config(args.config).timeline) if args.config else None
    out = Path(args.out) if args.out else Path(args.csv).with_suffix(".svg")
    render_plot_svg(traces, out, ann)
    print(f"wrote {out}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "scenario":
            for name in BUILTIN_SCENARIOS:
                print(f"{name}\t{_SCENARIO_NOTES[name]}")
            return 0
        if args.command == "tune-mu":
            return _cmd_tune(args)
        return _cmd_plot(args)
    except OSError as exc:
        print(f"blindbf: I/O error: {exc}", file=sys.stderr)
        return 2
    except (ConfigurationError, ValueError) as exc:
        print(f"blindbf: error: {exc}", file=sys.stderr)
        return 1
