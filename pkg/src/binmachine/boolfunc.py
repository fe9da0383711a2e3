"""Incompletely specified Boolean functions and their analytic attributes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import IncompleteInput, InconsistentSpec


@dataclass(frozen=True)
class IncompleteFunction:
    """A Boolean function given by a care table over a declared support.

    ``support`` lists the input stage indices; a care key packs the
    support values with bit i = value of support[i].  Input points absent
    from ``care_rows`` are don't care.  ``name`` is the stage this
    function drives.
    """

    support: tuple[int, ...]
    care_rows: Mapping[int, int]
    name: int = 0

    @property
    def v(self) -> int:
        return len(self.support)

    @property
    def is_complete(self) -> bool:
        return len(self.care_rows) == (1 << self.v)

    @classmethod
    def from_rows(cls, support: Iterable[int], rows: Iterable[tuple[int, int]],
                  name: int = 0) -> "IncompleteFunction":
        """Build from (point, value) pairs, rejecting conflicting duplicates."""
        table: dict[int, int] = {}
        for point, value in rows:
            if point in table and table[point] != value:
                raise InconsistentSpec(name, point)
            table[point] = value
        return cls(tuple(support), table, name)


@dataclass(frozen=True)
class AnfExpression:
    """XOR-of-monomials form over GF(2); the empty monomial is constant 1."""

    monomials: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        out = 0
        for mono in self.monomials:
            term = 1
            for var in mono:
                term &= assignment[var]
            out ^= term
        return out

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        keys = sorted(self.monomials, key=lambda m: (len(m), sorted(m)))
        parts = ["1" if not m else "*".join(f"x{i}" for i in sorted(m)) for m in keys]
        return " ^ ".join(parts)


def dependence_set(f: IncompleteFunction, completion: str = "all") -> set[int]:
    """Input variables the function depends on.

    ``completion="all"`` returns variables forced by the care rows alone:
    some pair of care points differing in just that variable has differing
    outputs, so every completion depends on it.  ``completion="any"`` also
    counts variables that at least one completion could depend on.  The
    two coincide for fully specified functions.
    """
    if completion not in ("all", "any"):
        raise ValueError(f"completion must be 'all' or 'any', not {completion!r}")
    care = f.care_rows
    forced: set[int] = set()
    for pos in range(f.v):
        bit = 1 << pos
        for point, value in care.items():
            partner = care.get(point ^ bit)
            if partner is not None and partner != value:
                forced.add(f.support[pos])
                break
    if completion == "all":
        return forced
    if f.is_complete:
        return forced
    # Any don't-care point leaves every direction free: a completion can
    # always set the pair across it to differ.
    return set(f.support)


def to_anf(f: IncompleteFunction) -> AnfExpression:
    """Algebraic normal form of a fully specified function (Moebius transform)."""
    v = f.v
    size = 1 << v
    if len(f.care_rows) != size:
        raise IncompleteInput(size - len(f.care_rows))
    table = [f.care_rows[point] for point in range(size)]
    for pos in range(v):
        bit = 1 << pos
        for point in range(size):
            if point & bit:
                table[point] ^= table[point ^ bit]
    monomials = [
        frozenset(f.support[pos] for pos in range(v) if (point >> pos) & 1)
        for point in range(size)
        if table[point]
    ]
    return AnfExpression(frozenset(monomials))
