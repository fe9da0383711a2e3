"""Low-cost tag permutations: counters, LFSR state cycles, explicit lists.

The tag appended to each output digit must run through distinct m-bit
values.  LFSR cycles are the cheapest to realize in hardware, so they are
the default; the built-in polynomial table covers m up to 32.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import PermutationTooShort

# One primitive polynomial per degree, bit e = coefficient of x^e (the x^m
# term included).  Each entry is checked for primitivity in the test suite.
PRIMITIVE_POLYS: dict[int, int] = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
    17: 0x20009,
    18: 0x40081,
    19: 0x80027,
    20: 0x100009,
    21: 0x200005,
    22: 0x400003,
    23: 0x800021,
    24: 0x1000087,
    25: 0x2000009,
    26: 0x4000047,
    27: 0x8000027,
    28: 0x10000009,
    29: 0x20000005,
    30: 0x40800007,
    31: 0x80000009,
    32: 0x100400007,
}

KINDS = ("counter", "lfsr", "random", "explicit")


@dataclass(frozen=True)
class PermutationSpec:
    """How to produce a run of distinct m-bit tag values.

    ``m`` may be left unset; it is bound when the state assignment knows
    how many states it needs.
    """

    kind: str
    m: Optional[int] = None
    poly: Optional[int] = None
    seed: Optional[int] = None
    values: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown permutation kind {self.kind!r}")
        if self.kind == "explicit" and not self.values:
            raise ValueError("explicit permutation needs a value list")

    @classmethod
    def counter(cls, m: Optional[int] = None) -> "PermutationSpec":
        return cls(kind="counter", m=m)

    @classmethod
    def lfsr(cls, poly: Optional[int] = None, seed: int = 1,
             m: Optional[int] = None) -> "PermutationSpec":
        if poly is not None and m is None:
            m = poly.bit_length() - 1
        return cls(kind="lfsr", m=m, poly=poly, seed=seed)

    @classmethod
    def random(cls, seed: int, m: Optional[int] = None) -> "PermutationSpec":
        return cls(kind="random", m=m, seed=seed)

    @classmethod
    def explicit(cls, values) -> "PermutationSpec":
        values = tuple(values)
        m = max(1, max(values).bit_length()) if values else 1
        return cls(kind="explicit", m=m, values=values)

    def bind(self, m: int) -> "PermutationSpec":
        """Fix the tag width, filling in the default polynomial if needed."""
        if self.m is not None and self.m != m:
            raise ValueError(f"permutation is {self.m}-bit but the assignment needs m={m}")
        poly = self.poly
        if self.kind == "lfsr" and poly is None:
            if m not in PRIMITIVE_POLYS:
                # out of table range; a counter always works
                return PermutationSpec(kind="counter", m=m)
            poly = PRIMITIVE_POLYS[m]
        seed = self.seed
        if self.kind == "lfsr" and seed is None:
            seed = 1
        return PermutationSpec(kind=self.kind, m=m, poly=poly, seed=seed, values=self.values)


def default_permutation(m: Optional[int] = None) -> PermutationSpec:
    return PermutationSpec.lfsr(m=m)


def _lfsr_run(poly: int, seed: int, m: int, limit: int) -> list[int]:
    """First ``limit`` LFSR states from ``seed``; the all-zero tag is
    appended after the nonzero cycle closes."""
    if seed <= 0 or seed >= (1 << m):
        raise ValueError(f"LFSR seed {seed} outside (0, 2^{m})")
    taps = [e for e in range(m) if (poly >> e) & 1]
    out = [seed]
    t = seed
    while len(out) < limit:
        fb = 0
        for e in taps:
            fb ^= (t >> e) & 1
        t = (t >> 1) | (fb << (m - 1))
        if t == seed:
            out.append(0)  # cycle closed; only the zero tag remains
            break
        out.append(t)
    return out[:limit]


def expand_permutation(perm: PermutationSpec, r: int) -> tuple[int, ...]:
    """First r distinct tag values of the permutation.

    Raises PermutationTooShort when the spec cannot produce r distinct
    values (r > 2^m, explicit list too short, or a short LFSR cycle).
    """
    m = perm.m
    if m is None:
        raise ValueError("permutation has no tag width; call bind(m) first")
    if r > (1 << m):
        raise PermutationTooShort(1 << m, r)
    if perm.kind == "counter":
        return tuple(range(r))
    if perm.kind == "explicit":
        values = perm.values[:r]
        if len(values) < r or len(set(values)) < len(values) or any(
            v < 0 or v >= (1 << m) for v in values
        ):
            raise PermutationTooShort(len(set(perm.values)), r)
        return tuple(values)
    if perm.kind == "random":
        rng = random.Random(perm.seed)
        return tuple(rng.sample(range(1 << m), r))
    # lfsr
    run = _lfsr_run(perm.poly, perm.seed if perm.seed is not None else 1, m, r)
    if len(run) < r:
        raise PermutationTooShort(len(run), r)
    return tuple(run)


def parse_perm_spec(text: str) -> PermutationSpec:
    """Parse the command-line permutation syntax.

    Accepted forms: ``counter``, ``lfsr``, ``lfsr:<poly-hex>:<seed>``,
    ``random:<seed>``, ``explicit:@<file>``.
    """
    parts = text.split(":")
    kind = parts[0]
    if kind == "counter" and len(parts) == 1:
        return PermutationSpec.counter()
    if kind == "lfsr":
        if len(parts) == 1:
            return PermutationSpec.lfsr()
        if len(parts) == 3:
            return PermutationSpec.lfsr(poly=int(parts[1], 16), seed=int(parts[2]))
        raise ValueError(f"bad lfsr spec {text!r}; use lfsr or lfsr:<poly-hex>:<seed>")
    if kind == "random" and len(parts) == 2:
        return PermutationSpec.random(seed=int(parts[1]))
    if kind == "explicit" and len(parts) == 2 and parts[1].startswith("@"):
        body = Path(parts[1][1:]).read_text(encoding="utf-8")
        return PermutationSpec.explicit(int(tok) for tok in body.split())
    raise ValueError(f"cannot parse permutation spec {text!r}")
