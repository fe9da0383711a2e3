"""Pattern-set statistics and area-driven subset selection.

Deterministic test patterns are usually very unevenly specified: a few
dense patterns dominate the care bits.  Profiling quantifies that, and
subset selection trades retained care bits (a coverage proxy, not fault
coverage) against the synthesized machine size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetUnsatisfiable
from .permutation import PermutationSpec
from .pipeline import synthesize
from .sequence import PatternSet, TernarySequence, flatten

STRATEGIES = ("drop-most-specified-prefix", "greedy-by-specified-bits")


@dataclass(frozen=True)
class PatternProfile:
    """Per-pattern specified-bit counts plus an entropy estimate.

    ``entropy_bits`` is first-order empirical entropy: the binary entropy
    of the specified-bit value distribution times the number of specified
    bits (X positions contribute nothing).
    """

    per_pattern: tuple[tuple[int, int, float], ...]
    total_fraction: float
    entropy_bits: float
    positions: int

    @property
    def entropy_per_position(self) -> float:
        return self.entropy_bits / self.positions


@dataclass(frozen=True)
class SubsetPlan:
    kept: tuple[int, ...]
    dropped: tuple[int, ...]
    predicted_gate_count: int
    coverage_proxy: float


def profile(ps: PatternSet) -> PatternProfile:
    per_pattern = []
    ones = 0
    specified = 0
    for i, pat in enumerate(ps.patterns):
        cnt = pat.specified_count
        per_pattern.append((i, cnt, cnt / pat.n))
        specified += cnt
        ones += sum(1 for b in pat.bits if b == 1)
    positions = ps.count * ps.width
    if specified == 0:
        entropy = 0.0
    else:
        q1 = ones / specified
        h = 0.0
        for q in (q1, 1.0 - q1):
            if q > 0.0:
                h -= q * math.log2(q)
        entropy = specified * h
    return PatternProfile(
        per_pattern=tuple(per_pattern),
        total_fraction=specified / positions,
        entropy_bits=entropy,
        positions=positions,
    )


def _pilot_gate_count(ps: PatternSet, indices: list[int], pilot_p: int,
                      perm: Optional[PermutationSpec]) -> int:
    subset = PatternSet(tuple(ps.patterns[i] for i in indices))
    result = synthesize(flatten(subset), pilot_p, algorithm="presented", perm=perm)
    return result.gate_count


def select_subset(ps: PatternSet, strategy: str, fraction: Optional[float] = None,
                  budget: Optional[int] = None, pilot_p: int = 1,
                  perm: Optional[PermutationSpec] = None) -> SubsetPlan:
    """Choose which patterns to keep.

    drop-most-specified-prefix removes the ceil(fraction*count) densest
    patterns (ties to the lower index).  greedy-by-specified-bits adds
    patterns sparsest-first while a pilot synthesis stays within the gate
    budget.
    """
    prof = profile(ps)
    total_specified = sum(cnt for _, cnt, _ in prof.per_pattern)

    if strategy == "drop-most-specified-prefix":
        if fraction is None or not (0.0 <= fraction < 1.0):
            raise ValueError("drop fraction must lie in [0, 1)")
        n_drop = math.ceil(fraction * ps.count)
        ranked = sorted(prof.per_pattern, key=lambda row: (-row[1], row[0]))
        dropped = sorted(idx for idx, _, _ in ranked[:n_drop])
        kept = [i for i in range(ps.count) if i not in set(dropped)]
    elif strategy == "greedy-by-specified-bits":
        if budget is None or budget < 1:
            raise ValueError("greedy selection needs a gate budget >= 1")
        order = sorted(prof.per_pattern, key=lambda row: (row[1], row[0]))
        kept = []
        for idx, _, _ in order:
            trial = sorted(kept + [idx])
            if _pilot_gate_count(ps, trial, pilot_p, perm) > budget:
                if not kept:
                    raise BudgetUnsatisfiable(
                        budget, _pilot_gate_count(ps, trial, pilot_p, perm)
                    )
                break
            kept.append(idx)
        kept = sorted(kept)
        dropped = [i for i in range(ps.count) if i not in set(kept)]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    if kept:
        gates = _pilot_gate_count(ps, kept, pilot_p, perm)
        kept_specified = sum(ps.patterns[i].specified_count for i in kept)
        proxy = kept_specified / total_specified if total_specified else 1.0
    else:
        gates = 0
        proxy = 0.0
    return SubsetPlan(
        kept=tuple(kept), dropped=tuple(dropped),
        predicted_gate_count=gates, coverage_proxy=proxy,
    )
