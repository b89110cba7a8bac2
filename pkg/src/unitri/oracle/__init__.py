"""Brute-force ground truth for character degrees of small pattern groups."""

from __future__ import annotations

from pathlib import Path

from ..census import DegreeCensus, mu
from ..pattern import ClosedPattern, pattern_U
from . import cache
from .clifford import UnsupportedGroup, clifford_first_row_census
from .dixon import DegreeHistogram, SplitError, character_degrees, select_modulus
from .groups import (
    DEFAULT_BOUND,
    ConjugacyClassData,
    GroupTable,
    ResourceError,
    conjugacy_classes,
    enumerate_group,
    subgroup,
)

__all__ = [
    "DEFAULT_BOUND", "ConjugacyClassData", "DegreeHistogram", "GroupTable",
    "ResourceError", "SplitError", "UnsupportedGroup", "character_degrees",
    "check_histogram", "clifford_first_row_census", "conjugacy_classes",
    "degree_census_oracle", "enumerate_group", "pattern_degrees",
    "select_modulus", "subgroup",
]


def pattern_degrees(pattern: ClosedPattern, p: int, cache_dir: Path | None = None,
                    bound: int = DEFAULT_BOUND) -> tuple[DegreeHistogram, int]:
    """Degree histogram and class count of a pattern group, via the disk cache."""
    if cache_dir is None:
        cache_dir = cache.default_cache_dir()
    if cache_dir is not None:
        hit = cache.load(cache_dir, pattern, p)
        if hit is not None:
            class_of, hist = hit
            return hist, int(class_of.max()) + 1
    group = enumerate_group(pattern, p, bound=bound)
    classes = conjugacy_classes(group)
    hist = character_degrees(group, classes)
    if cache_dir is not None:
        cache.save(cache_dir, pattern, p, classes.class_of, hist)
    return hist, classes.count


def check_histogram(hist: DegreeHistogram, order: int, num_classes: int, p: int,
                    n_full: int | None = None) -> dict[str, bool]:
    """Structural checks on one histogram; ``n_full`` adds the U_n degree-set check."""
    checks = {
        "sum of squares = |G|": hist.sum_of_squares == order,
        "count = #classes": hist.num_characters == num_classes,
    }
    try:
        exps = hist.exponents(p)
        checks["degrees are powers of p"] = True
    except ValueError:
        exps = None
        checks["degrees are powers of p"] = False
    if n_full is not None:
        checks["degree exponents = 0..mu(n)"] = exps is not None and sorted(exps) == list(range(mu(n_full) + 1))
    return checks


def degree_census_oracle(n: int, p: int, e_max: int | None = None, cache_dir: Path | None = None,
                         bound: int = DEFAULT_BOUND) -> DegreeCensus:
    """N_{p^e}(U_n(p)) for e <= e_max (all exponents when e_max is None)."""
    pattern = pattern_U(n)
    hist, k = pattern_degrees(pattern, p, cache_dir=cache_dir, bound=bound)
    checks = check_histogram(hist, p ** len(pattern.pairs), k, p, n_full=n)
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise AssertionError(f"U_{n}({p}) histogram {hist} fails: {', '.join(failed)}")
    exps = hist.exponents(p)
    top = max(exps) if e_max is None else e_max
    return DegreeCensus(n, p, {e: exps.get(e, 0) for e in range(top + 1)})
