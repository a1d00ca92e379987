"""The compact-GA family, parameterized over a fitness evaluator.

Cached and uncached runs share one code path: the evaluator decides whether
a lookup hits a cache or reaches the fitness function, and nothing else in a
run depends on it. Cache operations consume no random draws, so for a fixed
seed the trajectory (every sampled chromosome, every update, the iteration
count) is identical whatever the cache capacity or policy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cache import CachedEvaluator
from .chromosome import Chromosome, Rng
from .pv import ProbabilityVector, compete

DEFAULT_ITERATION_CAP = 10_000_000

VARIANT_KINDS = ("cga", "cga-t", "cga-rr", "pe-cga", "ne-cga")


class IterationLimitError(RuntimeError):
    """A run failed to converge within its iteration cap."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


@dataclass
class RunStats:
    """Outcome of one run.

    ``evaluations`` counts true fitness-function invocations; with a cache
    attached it equals ``misses``, and ``hits + misses`` is the number of
    lookups, which does not depend on the cache. ``updates`` holds the
    (winner, loser) pair of every probability-vector update when the run
    was traced, and is None otherwise.
    """

    evaluations: int
    hits: int
    misses: int
    iterations: int
    solution: Chromosome
    solution_fitness: int | float
    final_pv: tuple[int, ...]
    elite: Optional[Chromosome] = None
    elite_fitness: Optional[int | float] = None
    updates: Optional[list[tuple[Chromosome, Chromosome]]] = None


def default_inheritance_length(population_size: int) -> int:
    """Elite survival limit used when none is configured: ceil(n / 10)."""
    return max(1, math.ceil(population_size / 10))


class _Counters:
    """Snapshot of evaluator counters so stats report per-run deltas."""

    def __init__(self, evaluator: CachedEvaluator):
        self.evaluator = evaluator
        self.hits0, self.misses0 = evaluator.cache.counters()
        self.evals0 = evaluator.eval_count

    def finish(self, pv, iterations, updates, elite=None, elite_fitness=None) -> RunStats:
        solution = pv.decode()
        hits, misses = self.evaluator.cache.counters()
        return RunStats(
            evaluations=self.evaluator.eval_count - self.evals0,
            hits=hits - self.hits0,
            misses=misses - self.misses0,
            iterations=iterations,
            solution=solution,
            solution_fitness=self.evaluator.fitness_fn(solution),
            final_pv=pv.numerators,
            elite=elite,
            elite_fitness=elite_fitness,
            updates=updates,
        )


def _check_run_args(length: int, population_size: int) -> None:
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    if population_size < 2:
        raise ValueError(f"population size must be at least 2, got {population_size}")


def _cap_check(iterations: int, max_iterations: int, what: str) -> None:
    if iterations >= max_iterations:
        raise IterationLimitError(
            f"{what} not converged after {iterations} iterations", iterations
        )


def run_cga(
    length: int,
    population_size: int,
    evaluator: CachedEvaluator,
    rng: Rng,
    *,
    max_iterations: int = DEFAULT_ITERATION_CAP,
    trace: bool = False,
) -> RunStats:
    """Baseline loop: sample two chromosomes, move the vector toward the winner."""
    _check_run_args(length, population_size)
    pv = ProbabilityVector(length, population_size)
    counters = _Counters(evaluator)
    updates = [] if trace else None
    iterations = 0
    while not pv.is_converged():
        _cap_check(iterations, max_iterations, f"cga(l={length}, n={population_size})")
        iterations += 1
        a = pv.sample(rng)
        b = pv.sample(rng)
        fa = evaluator(a)
        fb = evaluator(b)
        winner, loser = compete(a, fa, b, fb)
        pv.update(winner, loser)
        if updates is not None:
            updates.append((winner, loser))
    return counters.finish(pv, iterations, updates)


def run_cga_tournament(
    length: int,
    population_size: int,
    s: int,
    evaluator: CachedEvaluator,
    rng: Rng,
    *,
    max_iterations: int = DEFAULT_ITERATION_CAP,
    trace: bool = False,
) -> RunStats:
    """Tournament of size s: the best of s samples beats each of the others.

    The best is the earliest-sampled maximum, and the s-1 updates run in
    sampling order, so the trajectory is deterministic.
    """
    _check_run_args(length, population_size)
    if s < 2:
        raise ValueError(f"tournament size must be at least 2, got {s}")
    pv = ProbabilityVector(length, population_size)
    counters = _Counters(evaluator)
    updates = [] if trace else None
    iterations = 0
    while not pv.is_converged():
        _cap_check(iterations, max_iterations, f"cga-t(s={s}, l={length}, n={population_size})")
        iterations += 1
        candidates = [pv.sample(rng) for _ in range(s)]
        fitnesses = [evaluator(c) for c in candidates]
        best = max(range(s), key=fitnesses.__getitem__)
        winner = candidates[best]
        for j in range(s):
            if j == best:
                continue
            pv.update(winner, candidates[j])
            if updates is not None:
                updates.append((winner, candidates[j]))
    return counters.finish(pv, iterations, updates)


def run_cga_round_robin(
    length: int,
    population_size: int,
    m: int,
    evaluator: CachedEvaluator,
    rng: Rng,
    *,
    max_iterations: int = DEFAULT_ITERATION_CAP,
    trace: bool = False,
) -> RunStats:
    """Round-robin tournament: every pair of the m samples competes, m(m-1)/2 updates."""
    _check_run_args(length, population_size)
    if m < 2:
        raise ValueError(f"round-robin size must be at least 2, got {m}")
    pv = ProbabilityVector(length, population_size)
    counters = _Counters(evaluator)
    updates = [] if trace else None
    iterations = 0
    while not pv.is_converged():
        _cap_check(iterations, max_iterations, f"cga-rr(m={m}, l={length}, n={population_size})")
        iterations += 1
        candidates = [pv.sample(rng) for _ in range(m)]
        fitnesses = [evaluator(c) for c in candidates]
        for i in range(m - 1):
            for j in range(i + 1, m):
                winner, loser = compete(candidates[i], fitnesses[i], candidates[j], fitnesses[j])
                pv.update(winner, loser)
                if updates is not None:
                    updates.append((winner, loser))
    return counters.finish(pv, iterations, updates)


def run_pe_cga(
    length: int,
    population_size: int,
    evaluator: CachedEvaluator,
    rng: Rng,
    *,
    max_iterations: int = DEFAULT_ITERATION_CAP,
    trace: bool = False,
) -> RunStats:
    """Persistent elitism: the reigning winner survives until strictly beaten.

    The first iteration samples two chromosomes and crowns the winner; every
    later iteration samples one challenger, so the elite's fitness is kept
    and never looked up again. A tie keeps the elite.
    """
    _check_run_args(length, population_size)
    pv = ProbabilityVector(length, population_size)
    counters = _Counters(evaluator)
    updates = [] if trace else None
    iterations = 0
    elite = None
    elite_fitness = None
    while not pv.is_converged():
        _cap_check(iterations, max_iterations, f"pe-cga(l={length}, n={population_size})")
        iterations += 1
        if elite is None:
            a = pv.sample(rng)
            b = pv.sample(rng)
            fa = evaluator(a)
            fb = evaluator(b)
            elite, loser = compete(a, fa, b, fb)
            elite_fitness = fa if elite is a else fb
            pv.update(elite, loser)
            if updates is not None:
                updates.append((elite, loser))
            continue
        challenger = pv.sample(rng)
        challenger_fitness = evaluator(challenger)
        winner, loser = compete(elite, elite_fitness, challenger, challenger_fitness)
        pv.update(winner, loser)
        if updates is not None:
            updates.append((winner, loser))
        if winner is not elite:
            elite, elite_fitness = challenger, challenger_fitness
    return counters.finish(pv, iterations, updates, elite, elite_fitness)


def run_ne_cga(
    length: int,
    population_size: int,
    eta: int,
    evaluator: CachedEvaluator,
    rng: Rng,
    *,
    max_iterations: int = DEFAULT_ITERATION_CAP,
    trace: bool = False,
) -> RunStats:
    """Nonpersistent elitism: an elite that survives eta defenses is forced out.

    Once the survival counter reaches eta, the next iteration still runs the
    normal competition and vector update, then installs that iteration's
    challenger as elite regardless of fitness and resets the counter. Losing
    by fitness resets the counter as well.
    """
    _check_run_args(length, population_size)
    if eta < 1:
        raise ValueError(f"inheritance length must be at least 1, got {eta}")
    pv = ProbabilityVector(length, population_size)
    counters = _Counters(evaluator)
    updates = [] if trace else None
    iterations = 0
    elite = None
    elite_fitness = None
    survivals = 0
    while not pv.is_converged():
        _cap_check(iterations, max_iterations, f"ne-cga(eta={eta}, l={length}, n={population_size})")
        iterations += 1
        if elite is None:
            a = pv.sample(rng)
            b = pv.sample(rng)
            fa = evaluator(a)
            fb = evaluator(b)
            elite, loser = compete(a, fa, b, fb)
            elite_fitness = fa if elite is a else fb
            pv.update(elite, loser)
            if updates is not None:
                updates.append((elite, loser))
            continue
        force_replace = survivals >= eta
        challenger = pv.sample(rng)
        challenger_fitness = evaluator(challenger)
        winner, loser = compete(elite, elite_fitness, challenger, challenger_fitness)
        pv.update(winner, loser)
        if updates is not None:
            updates.append((winner, loser))
        if winner is elite and not force_replace:
            survivals += 1
        else:
            elite, elite_fitness = challenger, challenger_fitness
            survivals = 0
    return counters.finish(pv, iterations, updates, elite, elite_fitness)


@dataclass(frozen=True)
class Variant:
    """An algorithm choice with its selection-pressure parameters."""

    kind: str
    s: Optional[int] = None
    m: Optional[int] = None
    eta: Optional[int] = None

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise ValueError(f"unknown algorithm {self.kind!r} (known: {', '.join(VARIANT_KINDS)})")
        if self.kind == "cga-t":
            if self.s is None or self.s < 2:
                raise ValueError(f"cga-t needs a tournament size >= 2, got {self.s}")
        if self.kind == "cga-rr":
            if self.m is None or self.m < 2:
                raise ValueError(f"cga-rr needs a round-robin size >= 2, got {self.m}")
        if self.kind == "ne-cga" and self.eta is not None and self.eta < 1:
            raise ValueError(f"ne-cga needs an inheritance length >= 1, got {self.eta}")

    @property
    def label(self) -> str:
        """Stable human-readable name, used in CSV output."""
        if self.kind == "cga-t":
            return f"cga-t(s={self.s})"
        if self.kind == "cga-rr":
            return f"cga-rr(m={self.m})"
        if self.kind == "ne-cga":
            return f"ne-cga(eta={self.eta if self.eta is not None else 'auto'})"
        return self.kind

    def run(
        self,
        length: int,
        population_size: int,
        evaluator: CachedEvaluator,
        rng: Rng,
        *,
        max_iterations: int = DEFAULT_ITERATION_CAP,
        trace: bool = False,
    ) -> RunStats:
        """Execute one run of this variant."""
        kw = dict(max_iterations=max_iterations, trace=trace)
        if self.kind == "cga":
            return run_cga(length, population_size, evaluator, rng, **kw)
        if self.kind == "cga-t":
            return run_cga_tournament(length, population_size, self.s, evaluator, rng, **kw)
        if self.kind == "cga-rr":
            return run_cga_round_robin(length, population_size, self.m, evaluator, rng, **kw)
        if self.kind == "pe-cga":
            return run_pe_cga(length, population_size, evaluator, rng, **kw)
        eta = self.eta if self.eta is not None else default_inheritance_length(population_size)
        return run_ne_cga(length, population_size, eta, evaluator, rng, **kw)
