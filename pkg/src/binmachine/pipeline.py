"""End-to-end synthesis: assign states, minimize logic, build, verify."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .assignment import StateAssignment, assign_states, assign_states_minimal
from .machine import BinaryMachine, build, verify_against
from .minimize import minimize
from .netlist import Netlist
from .permutation import PermutationSpec
from .sequence import TernarySequence, parallelization_bound

ALGORITHMS = ("presented", "baseline")


@dataclass(frozen=True)
class SynthesisResult:
    algorithm: str
    p: int
    assignment: StateAssignment
    netlist: Netlist
    machine: BinaryMachine
    verified: bool
    mismatch: Optional[int]

    @property
    def stages(self) -> int:
        return self.machine.k

    @property
    def gate_count(self) -> int:
        return self.machine.feedback.gate_count

    def summary(self) -> str:
        verdict = "pass" if self.verified else f"FAIL@{self.mismatch}"
        return (
            f"algorithm={self.algorithm} p={self.p} stages={self.stages}"
            f" gates={self.gate_count} verify={verdict}"
        )


def synthesize(a: TernarySequence, p: int, algorithm: str = "presented",
               perm: Optional[PermutationSpec] = None, fill: str = "balance",
               fill_seed: Optional[int] = None) -> SynthesisResult:
    """Full pipeline for one sequence at one degree of parallelization."""
    if algorithm == "presented":
        sa = assign_states(a, p, perm)
    elif algorithm == "baseline":
        sa = assign_states_minimal(a, p, fill=fill, seed=fill_seed)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    netlist = minimize(sa.functions())
    machine = build(sa, netlist)
    ok, mismatch = verify_against(machine, a, p)
    return SynthesisResult(
        algorithm=algorithm, p=p, assignment=sa, netlist=netlist,
        machine=machine, verified=ok, mismatch=mismatch,
    )


@dataclass(frozen=True)
class SweepRow:
    p: int
    stages: Optional[int]
    gate_count: Optional[int]
    seconds: float
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]

    def best(self) -> Optional[SweepRow]:
        ok = [row for row in self.rows if row.error is None]
        return ok[0] if ok else None


def sweep_parallelization(a: TernarySequence, p_range: Optional[tuple[int, int]] = None,
                          perm: Optional[PermutationSpec] = None,
                          algorithm: str = "presented",
                          fill: str = "balance") -> SweepReport:
    """Synthesize at every candidate p and rank rows by gate count.

    The default range is [1, ceil(log2 n)]; row failures are recorded
    without aborting the sweep.
    """
    lo, hi = p_range if p_range is not None else (1, parallelization_bound(a.n))
    if lo < 1 or hi < lo:
        raise ValueError(f"bad sweep range [{lo}, {hi}]")
    rows = []
    for p in range(lo, hi + 1):
        started = time.perf_counter()
        try:
            result = synthesize(a, p, algorithm=algorithm, perm=perm, fill=fill)
            elapsed = time.perf_counter() - started
            error = None if result.verified else f"verification mismatch at {result.mismatch}"
            rows.append(SweepRow(p, result.stages, result.gate_count, elapsed, error))
        except Exception as exc:  # per-row isolation is the contract
            elapsed = time.perf_counter() - started
            rows.append(SweepRow(p, None, None, elapsed, f"{type(exc).__name__}: {exc}"))
    rows.sort(key=lambda row: (row.error is not None,
                               row.gate_count if row.gate_count is not None else 0,
                               row.p))
    return SweepReport(tuple(rows))
