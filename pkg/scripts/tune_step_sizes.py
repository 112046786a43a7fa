"""Grid-search the SG step sizes on fig2a (20 trials, seeds 0..19).

The selected values are frozen in blindbf.harness.TUNED_STEP_SIZES and in
configs/*.json; rerun this after changing either SG update.
"""

import logging

from blindbf import builtin_scenario, grid_search_mu
from blindbf.harness import TUNED_STEP_SIZES

GRID = [1e-4, 3e-4, 1e-3, 3e-3, 1e-2]

if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s")
    timeline = builtin_scenario("fig2a")
    for algo in ("cmv-sg", "ccm-sg"):
        best = grid_search_mu(timeline, algo, GRID)
        flag = "" if best == TUNED_STEP_SIZES[algo] else f"  (shipped value is {TUNED_STEP_SIZES[algo]:g})"
        print(f"{algo}: mu = {best:g}{flag}")
