"""Parameter search for hypersurfaces admitting a nef extraction.

The driver enumerates sorted weight tuples and amplitudes inside a
box, runs the construction on each candidate, and yields the models
that complete.  Failures are tallied by stage so a range summary shows
where candidates die.  Enumeration order is canonical (amplitude, then
degree, then weights), which makes output deterministic regardless of
any execution strategy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .construct import ConstructionError, MinimalModelReport, run_construction
from .weights import WeightedHypersurface

DEFAULT_ALPHA_MIN = 1
DEFAULT_ALPHA_MAX = 10
DEFAULT_DEGREE_MIN = 10
DEFAULT_DEGREE_MAX = 100
DEFAULT_WEIGHT_MAX = 60


@dataclass(frozen=True)
class SearchRange:
    """Inclusive parameter box for the candidate enumeration."""

    alpha_min: int = DEFAULT_ALPHA_MIN
    alpha_max: int = DEFAULT_ALPHA_MAX
    degree_min: int = DEFAULT_DEGREE_MIN
    degree_max: int = DEFAULT_DEGREE_MAX
    weight_max: int = DEFAULT_WEIGHT_MAX

    def __post_init__(self):
        if not (0 < self.alpha_min <= self.alpha_max):
            raise ValueError("need 0 < alpha_min <= alpha_max")
        if not (0 < self.degree_min <= self.degree_max):
            raise ValueError("need 0 < degree_min <= degree_max")
        if self.weight_max < 1:
            raise ValueError("weight_max must be positive")

    @classmethod
    def from_mapping(cls, overrides: dict) -> "SearchRange":
        allowed = {
            "alpha_min",
            "alpha_max",
            "degree_min",
            "degree_max",
            "weight_max",
        }
        unknown = set(overrides) - allowed
        if unknown:
            raise ValueError(f"unknown range keys: {sorted(unknown)}")
        return cls(**overrides)


@dataclass
class SearchSummary:
    """Tally of candidate outcomes for one search run."""

    candidates: int = 0
    successes: int = 0
    stage_failures: dict[int, int] = field(default_factory=dict)

    def record_failure(self, stage: int) -> None:
        self.stage_failures[stage] = self.stage_failures.get(stage, 0) + 1

    def describe(self) -> str:
        stages = ", ".join(
            f"stage {s}: {n}" for s, n in sorted(self.stage_failures.items())
        )
        parts = [
            f"{self.candidates} candidates",
            f"{self.successes} models",
            stages or "no stage failures",
        ]
        return "; ".join(parts)


def _sorted_tuples(total: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing 5-tuples of positive integers with the given sum."""
    for a in range(1, min(cap, total - 3) + 1):
        rest_a = total - a
        for b in range(a, min(cap, rest_a - 2) + 1):
            rest_b = rest_a - b
            for c in range(b, min(cap, rest_b - 1) + 1):
                rest_c = rest_b - c
                # last two entries are d <= e with d + e = rest_c
                for d in range(c, min(cap, rest_c // 2) + 1):
                    e = rest_c - d
                    if e <= cap:
                        yield (a, b, c, d, e)


def iter_candidates(box: SearchRange) -> Iterator[WeightedHypersurface]:
    """Enumerate candidates in canonical order.

    Weight tuples are emitted sorted, so every hypersurface appears
    exactly once per (weights, degree) class.
    """
    for alpha in range(box.alpha_min, box.alpha_max + 1):
        for degree in range(box.degree_min, box.degree_max + 1):
            total = degree - alpha
            if total < 5:
                continue
            for weights in _sorted_tuples(total, box.weight_max):
                yield WeightedHypersurface(weights, degree)


def run_search(
    box: SearchRange | None = None,
    summary: SearchSummary | None = None,
) -> Iterator[MinimalModelReport]:
    """Yield a report for every candidate that completes the
    construction.  Pass a summary object to collect outcome counts."""
    if box is None:
        box = SearchRange()
    for h in iter_candidates(box):
        if summary is not None:
            summary.candidates += 1
        try:
            report = run_construction(h)
        except ConstructionError as ex:
            if summary is not None:
                summary.record_failure(ex.stage)
            continue
        if summary is not None:
            summary.successes += 1
        yield report
