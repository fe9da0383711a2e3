"""Binary machines: assembly, simulation, verification, and export.

A binary machine is a k-stage synchronous register where every stage has
its own feedback function of the current state; shift registers (LFSR,
NLFSR) are the special case where only the top stage computes anything.
Each clock cycle the machine emits stages p-1 .. 0 (the current digit,
most significant bit first) and then updates all stages at once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .assignment import StateAssignment
from .errors import VerificationFailed
from .netlist import FORMAT_VERSION, Netlist, NetlistBuilder, care_equivalent
from .sequence import TernarySequence


def state_string(state: int, k: int) -> str:
    """Render a packed state most-significant stage first."""
    return format(state, f"0{k}b")


@dataclass(frozen=True)
class BinaryMachine:
    k: int
    p: int
    feedback: Netlist
    initial_state: int

    def __post_init__(self):
        if not (1 <= self.p <= self.k):
            raise ValueError(f"output taps p={self.p} outside [1, {self.k}]")
        if sorted(self.feedback.outputs) != list(range(self.k)):
            raise ValueError("feedback must drive every stage exactly once")
        if not all(0 <= s < self.k for s in self.feedback.inputs):
            raise ValueError("feedback reads a stage outside the register")
        if not (0 <= self.initial_state < (1 << self.k)):
            raise ValueError("initial state out of range")

    def step(self, state: int) -> int:
        values = [(state >> s) & 1 for s in self.feedback.inputs]
        outs = self.feedback.evaluate_columns(values, 1)
        nxt = 0
        for stage, bit in outs.items():
            nxt |= bit << stage
        return nxt


@dataclass(frozen=True)
class Trace:
    k: int
    p: int
    states: tuple[int, ...]
    emitted: TernarySequence = field(repr=False)

    def state_strings(self) -> list[str]:
        return [state_string(s, self.k) for s in self.states]


def simulate(machine: BinaryMachine, cycles: int) -> Trace:
    """Run ``cycles`` synchronous updates, emitting p bits before each."""
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    feedback = machine.feedback
    positions = feedback.inputs
    evaluator = feedback._compiled()
    order = sorted(feedback.outputs)
    state = machine.initial_state
    states = [state]
    emitted: list[int] = []
    for _ in range(cycles):
        for j in range(machine.p - 1, -1, -1):
            emitted.append((state >> j) & 1)
        outs = evaluator([(state >> s) & 1 for s in positions], 1)
        state = 0
        for stage, bit in zip(order, outs):
            state |= bit << stage
        states.append(state)
    return Trace(machine.k, machine.p, tuple(states), TernarySequence(tuple(emitted)))


def build(sa: StateAssignment, netlist: Netlist) -> BinaryMachine:
    """Assemble a machine after checking the netlist against the mapping."""
    if not set(netlist.inputs) <= set(sa.support):
        raise VerificationFailed(("inputs", tuple(netlist.inputs)))
    ok, counterexample = care_equivalent(netlist, sa.functions())
    if not ok:
        raise VerificationFailed(counterexample)
    return BinaryMachine(
        k=sa.k, p=sa.p, feedback=netlist, initial_state=sa.states[0].to_int()
    )


def verify_against(machine: BinaryMachine, a: TernarySequence,
                   p: int) -> tuple[bool, Optional[int]]:
    """Simulate and compare with ``a`` on its specified positions.

    Returns (True, None), or (False, first mismatching bit position).
    """
    if machine.p != p:
        raise ValueError(f"machine emits {machine.p} bits per cycle, expected {p}")
    cycles = -(-a.n // p)
    trace = simulate(machine, cycles)
    for t, want in enumerate(a.bits):
        if want is not None and trace.emitted.bits[t] != want:
            return False, t
    return True, None


# -- construction helpers -----------------------------------------------


def machine_from_anf(k: int, anf_by_stage: dict[int, Iterable[Sequence[int]]],
                     initial_state: int, p: int = 1) -> BinaryMachine:
    """Build from per-stage XOR-of-products term lists.

    Each term is a tuple of stage indices to AND together.  Stages absent
    from the mapping track their own value (identity wiring).
    """
    builder = NetlistBuilder(tuple(range(k)))
    outputs = {}
    for stage in range(k):
        terms = list(anf_by_stage.get(stage, [(stage,)]))
        refs = [builder.and_chain(builder.input(v) for v in term) for term in terms]
        outputs[stage] = builder.xor_chain(refs)
    return BinaryMachine(k=k, p=p, feedback=builder.finalize(outputs),
                         initial_state=initial_state)


def shift_machine(k: int, feedback_terms: Iterable[Sequence[int]],
                  initial_state: int, p: int = 1) -> BinaryMachine:
    """Feedback shift register: stage i tracks stage i+1, the top stage
    computes the XOR-of-products feedback (linear terms give an LFSR)."""
    anf = {i: [(i + 1,)] for i in range(k - 1)}
    anf[k - 1] = list(feedback_terms)
    return machine_from_anf(k, anf, initial_state, p)


# -- export / import ------------------------------------------------------


def machine_to_json(machine: BinaryMachine) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "k": machine.k,
        "p": machine.p,
        "initial_state": state_string(machine.initial_state, machine.k),
        "inputs": list(machine.feedback.inputs),
        "nodes": [list(n) for n in machine.feedback.nodes],
        "outputs": {str(s): ref for s, ref in sorted(machine.feedback.outputs.items())},
    }
    return json.dumps(doc, sort_keys=True, indent=1)


def machine_from_json(text: str) -> BinaryMachine:
    doc = json.loads(text)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported machine format {doc.get('format_version')!r}")
    netlist = Netlist(
        inputs=doc["inputs"],
        nodes=[tuple(n) for n in doc["nodes"]],
        outputs={int(s): ref for s, ref in doc["outputs"].items()},
    )
    return BinaryMachine(
        k=doc["k"], p=doc["p"], feedback=netlist,
        initial_state=int(doc["initial_state"], 2),
    )


def machine_to_text(machine: BinaryMachine) -> str:
    header = (
        f"# binary machine: stages={machine.k} taps={machine.p}"
        f" init={state_string(machine.initial_state, machine.k)}\n"
    )
    return header + machine.feedback.to_text(prefix="f")


def export_machine(machine: BinaryMachine, fmt: str = "json") -> str:
    if fmt == "json":
        return machine_to_json(machine)
    if fmt == "text":
        return machine_to_text(machine)
    raise ValueError(f"unknown export format {fmt!r}")
