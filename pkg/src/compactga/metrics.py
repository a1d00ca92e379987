"""Cache-effectiveness metrics derived from exact integer counters."""

from __future__ import annotations


def hitratio(hits: int, misses: int) -> float:
    """Fraction of lookups answered from the cache: h / (h + m).

    Raises ZeroDivisionError when no lookup has happened.
    """
    return hits / (hits + misses)


def speedup(neval: int, neval_cache: int) -> float:
    """Ratio of uncached to cached evaluation counts; >= 1 for consistent counters."""
    if neval < neval_cache:
        raise ValueError(
            f"uncached count {neval} is below cached count {neval_cache}"
        )
    return neval / neval_cache


def reduction_pct(hits: int, misses: int) -> float:
    """Percentage of fitness evaluations avoided; equals 100 * hitratio exactly."""
    return 100.0 * hitratio(hits, misses)
