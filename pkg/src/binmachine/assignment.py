"""State assignment for binary machines.

Two strategies are provided.  The tag-permutation assignment appends m
extra bits from a low-cost permutation to each p-bit output digit, so
the next-state logic depends on the m tag stages only.  The minimal-stage
assignment numbers each digit occurrence c and stores c*2^p + value,
reaching the floor of ceil(log2 N_max) + p stages but leaving the logic
over the full state.

Stage conventions: stage k holds bit k of the packed value (tag integers
and digit values alike), so the earlier sequence bit of a digit sits in
the higher output stage and state strings print most-significant stage
first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .boolfunc import IncompleteFunction
from .errors import DegenerateSequence
from .permutation import PermutationSpec, default_permutation, expand_permutation
from .sequence import DigitStream, TernarySequence, Trit, digit_value, encode

FILL_STRATEGIES = ("balance", "zeros", "random")


@dataclass(frozen=True)
class MachineState:
    """One (p+m)-bit register state; bits[j] is the value of stage j."""

    bits: tuple[int, ...]

    def to_int(self) -> int:
        value = 0
        for j, b in enumerate(self.bits):
            value |= b << j
        return value

    def __str__(self) -> str:
        return "".join(str(b) for b in reversed(self.bits))


@dataclass(frozen=True)
class StateAssignment:
    """An ordered run of machine states plus the current-to-next mapping.

    ``transition_table`` maps a care key (packed over ``support``, bit i =
    value of stage support[i]) to a full next-state row; row entries are
    0/1 or None where the target sequence leaves the bit free.
    """

    p: int
    m: int
    r: int
    states: tuple[MachineState, ...]
    transition_table: dict[int, tuple[Optional[int], ...]]
    support: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.p + self.m

    def functions(self) -> list[IncompleteFunction]:
        """One incomplete function per stage, over the shared support."""
        fs = []
        for stage in range(self.k):
            rows = {
                key: row[stage]
                for key, row in self.transition_table.items()
                if row[stage] is not None
            }
            fs.append(IncompleteFunction(self.support, rows, name=stage))
        return fs

    def render_table(self) -> list[tuple[str, str]]:
        """(input, next-state) rows in state order, msb-first, '-' for free."""
        rows = []
        for state in self.states[:-1]:
            key = 0
            for i, stage in enumerate(self.support):
                key |= state.bits[stage] << i
            row = self.transition_table[key]
            inp = "".join(str(state.bits[stage]) for stage in reversed(self.support))
            out = "".join("-" if b is None else str(b) for b in reversed(row))
            rows.append((inp, out))
        return rows


def _ceil_log2(x: int) -> int:
    return (x - 1).bit_length()


def min_stages(ds: DigitStream) -> int:
    """Stage floor for a digit stream: ceil(log2 N_max) + p."""
    if ds.n_max < 1:
        raise ValueError("no fully specified digit; fill don't cares first")
    return _ceil_log2(ds.n_max) + ds.p


def _digit_row_bits(digit: tuple[Trit, ...], p: int) -> list[Optional[int]]:
    # stage j gets value bit j, i.e. digit position p-1-j
    return [digit[p - 1 - j] for j in range(p)]


def assign_states(a: TernarySequence, p: int,
                  perm: Optional[PermutationSpec] = None) -> StateAssignment:
    """Tag-permutation assignment: p output stages plus m = ceil(log2 r)
    tag stages; the next-state logic depends on the tags only."""
    ds = encode(a, p)
    r = ds.r
    if r < 2:
        raise DegenerateSequence(r)
    m = max(1, _ceil_log2(r))
    perm = (perm or default_permutation()).bind(m)
    tags = expand_permutation(perm, r)

    states = []
    for i in range(r):
        bits = [0 if b is None else b for b in _digit_row_bits(ds.digits[i], p)]
        bits += [(tags[i] >> k) & 1 for k in range(m)]
        states.append(MachineState(tuple(bits)))

    table: dict[int, tuple[Optional[int], ...]] = {}
    for i in range(r - 1):
        row = _digit_row_bits(ds.digits[i + 1], p)
        row += [(tags[i + 1] >> k) & 1 for k in range(m)]
        table[tags[i]] = tuple(row)

    return StateAssignment(
        p=p, m=m, r=r,
        states=tuple(states),
        transition_table=table,
        support=tuple(range(p, p + m)),
    )


def _fill_digits(digits, p: int, fill: str, seed: Optional[int]):
    """Resolve X bits digit-wise; 'balance' spreads occurrences to keep
    the worst digit count (and with it the stage count) low."""
    if fill not in FILL_STRATEGIES:
        raise ValueError(f"unknown fill strategy {fill!r}")
    rng = random.Random(seed) if fill == "random" else None
    counts: dict[int, int] = {}
    for d in digits:
        v = digit_value(d)
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    values = []
    for d in digits:
        v = digit_value(d)
        if v is None:
            free = [j for j, b in enumerate(d) if b is None]
            base = 0
            for b in d:
                base = (base << 1) | (0 if b is None else b)
            candidates = []
            for combo in range(1 << len(free)):
                v2 = base
                for idx, j in enumerate(free):
                    if (combo >> idx) & 1:
                        v2 |= 1 << (p - 1 - j)
                candidates.append(v2)
            candidates = sorted(set(candidates))
            if fill == "zeros":
                v = candidates[0]  # all X low
            elif fill == "random":
                v = rng.choice(candidates)
            else:
                v = min(candidates, key=lambda c: (counts.get(c, 0), c))
            counts[v] = counts.get(v, 0) + 1
        values.append(v)
    return values


def assign_states_minimal(a: TernarySequence, p: int, fill: str = "balance",
                          seed: Optional[int] = None) -> StateAssignment:
    """Minimal-stage assignment: occurrence index c and digit value v give
    state integer c*2^p + v; don't cares are filled first."""
    ds = encode(a, p)
    r = ds.r
    if r < 2:
        raise DegenerateSequence(r)
    values = _fill_digits(ds.digits, p, fill, seed)
    occurrences: dict[int, int] = {}
    state_ints = []
    for v in values:
        c = occurrences.get(v, 0)
        occurrences[v] = c + 1
        state_ints.append((c << p) | v)
    n_max = max(occurrences.values())
    k = _ceil_log2(n_max) + p

    states = tuple(
        MachineState(tuple((s >> j) & 1 for j in range(k))) for s in state_ints
    )
    table = {
        state_ints[i]: tuple((state_ints[i + 1] >> j) & 1 for j in range(k))
        for i in range(r - 1)
    }
    return StateAssignment(
        p=p, m=k - p, r=r,
        states=states,
        transition_table=table,
        support=tuple(range(k)),
    )
