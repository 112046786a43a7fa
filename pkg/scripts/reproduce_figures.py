"""Run the three shipped experiments and summarize them against the MVDR bound.

    python scripts/reproduce_figures.py [--trials 100] [--out results]

Writes <name>.csv and <name>.svg per experiment and prints SINR at a few
checkpoints next to each segment's optimal SINR.
"""

import argparse
from pathlib import Path

import numpy as np

from blindbf import run_montecarlo
from blindbf.cli import PlotAnnotations, parse_config, render_plot_svg, write_trace_csv

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    for name in ("fig2a", "fig2b", "fig3"):
        cfg = parse_config((CONFIGS / f"{name}.json").read_bytes())
        traces = run_montecarlo(cfg.timeline, cfg.algorithms, args.trials, args.seed)
        write_trace_csv(traces, out / f"{name}.csv")
        render_plot_svg(traces, out / f"{name}.svg", PlotAnnotations.from_timeline(cfg.timeline), title=name)

        opts = ", ".join(f"{10 * np.log10(o):.2f}" for o in cfg.timeline.optimal_sinrs())
        checkpoints = [c for c in (10, 100, 150, 500, 1000, 1001, 1200, 2000, 2001, 2200, 3000) if c <= cfg.timeline.total_snapshots]
        print(f"\n{name}: optimal SINR per segment {opts} dB, K={args.trials}")
        print("  snapshot " + "".join(f"{c:>8d}" for c in checkpoints))
        for t in traces:
            row = 10 * np.log10(t.per_snapshot_sinr[np.array(checkpoints) - 1])
            print(f"  {t.algorithm:<8s} " + "".join(f"{v:8.2f}" for v in row))


if __name__ == "__main__":
    main()
