"""Shared fixtures: a session-wide memo of replicated benchmark cells.

The acceptance criteria and the hierarchy test reuse several expensive
50-run cells; running each once per session keeps the suite fast without
weakening any check.
"""

import pytest

from compactga import ExperimentConfig, Variant, run_cell


class CellRunner:
    def __init__(self):
        self._memo = {}
        self.max_iterations = 0

    def cell(self, variant: Variant, problem, bits, pop, capacity, policy, runs, base_seed=1):
        """Aggregate of one replicated cell, plus the largest per-run iteration count."""
        key = (variant, problem, bits, pop, capacity, str(policy), runs, base_seed)
        if key not in self._memo:
            config = ExperimentConfig(
                variant=variant,
                problem=problem,
                bits=bits,
                n_values=(pop,),
                capacities=(capacity,),
                policy=policy,
                runs=runs,
                base_seed=base_seed,
            )
            per_run = []
            cell = run_cell(config, pop, capacity, per_run)
            iteration_max = max(row["iterations"] for row in per_run)
            self.max_iterations = max(self.max_iterations, iteration_max)
            self._memo[key] = (cell, iteration_max)
        return self._memo[key]


@pytest.fixture(scope="session")
def cell_runner():
    return CellRunner()
