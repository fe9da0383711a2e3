"""Ternary sequences, scan-pattern sets, and digit-stream encoding.

A sequence bit is 0, 1, or don't-care (X).  Don't cares are represented by
``None`` so that accidental arithmetic on an unspecified bit fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import EmptySequence, IllegalCharacter, InvalidParallelization, WidthMismatch

Trit = Optional[int]  # 0, 1, or None (don't care)

_CHAR_TO_TRIT = {"0": 0, "1": 1, "x": None, "X": None, "-": None}


@dataclass(frozen=True)
class TernarySequence:
    """An immutable sequence over {0, 1, X}."""

    bits: tuple[Trit, ...]

    def __post_init__(self):
        if not self.bits:
            raise EmptySequence()

    @property
    def n(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    @property
    def specified_count(self) -> int:
        return sum(1 for b in self.bits if b is not None)

    @property
    def dontcare_count(self) -> int:
        return sum(1 for b in self.bits if b is None)

    def render(self) -> str:
        return "".join("X" if b is None else str(b) for b in self.bits)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class PatternSet:
    """A list of equal-width ternary scan patterns."""

    patterns: tuple[TernarySequence, ...]

    def __post_init__(self):
        if not self.patterns:
            raise EmptySequence()
        w = self.patterns[0].n
        for pat in self.patterns:
            if pat.n != w:
                raise WidthMismatch(pat.n, w)

    @property
    def width(self) -> int:
        return self.patterns[0].n

    @property
    def count(self) -> int:
        return len(self.patterns)


@dataclass(frozen=True)
class DigitStream:
    """A sequence split into p-bit digits, with occurrence counts.

    ``digits[i]`` holds source bits ``a[i*p] .. a[i*p+p-1]`` in sequence
    order; the final digit is padded with don't cares when p does not
    divide n.  ``counts`` tallies only fully specified digits, keyed by
    digit value (first sequence bit of the digit is the most significant
    value bit).
    """

    p: int
    digits: tuple[tuple[Trit, ...], ...]
    counts: dict[int, int]
    n: int

    @property
    def r(self) -> int:
        return len(self.digits)

    @property
    def n_max(self) -> int:
        return max(self.counts.values(), default=0)


def parse_sequence(text: str) -> TernarySequence:
    """Parse a string of {0, 1, X, x, -}; whitespace is ignored."""
    bits: list[Trit] = []
    for pos, ch in enumerate(text):
        if ch.isspace():
            continue
        if ch not in _CHAR_TO_TRIT:
            raise IllegalCharacter(ch, pos)
        bits.append(_CHAR_TO_TRIT[ch])
    if not bits:
        raise EmptySequence()
    return TernarySequence(tuple(bits))


def flatten(ps: PatternSet, chain_order: str = "pattern-major") -> TernarySequence:
    """Concatenate a pattern set into one sequence, pattern i at [i*w, (i+1)*w)."""
    if chain_order != "pattern-major":
        raise ValueError(f"unknown chain order {chain_order!r}")
    bits: list[Trit] = []
    for pat in ps.patterns:
        bits.extend(pat.bits)
    return TernarySequence(tuple(bits))


def digit_value(digit: tuple[Trit, ...]) -> Optional[int]:
    """Value of a fully specified digit (first bit most significant), else None."""
    value = 0
    for b in digit:
        if b is None:
            return None
        value = (value << 1) | b
    return value


def encode(a: TernarySequence, p: int) -> DigitStream:
    """Split ``a`` into p-bit digits and count fully specified digit values."""
    n = a.n
    if p < 1 or p > n:
        raise InvalidParallelization(p, n)
    digits = []
    for i in range(0, n, p):
        chunk = list(a.bits[i : i + p])
        while len(chunk) < p:
            chunk.append(None)  # padding must not constrain the machine
        digits.append(tuple(chunk))
    counts: dict[int, int] = {}
    for d in digits:
        v = digit_value(d)
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    return DigitStream(p=p, digits=tuple(digits), counts=counts, n=n)


def specified_stats(a: TernarySequence) -> tuple[int, int, float]:
    """Return (specified_count, dontcare_count, specified_fraction)."""
    spec = a.specified_count
    return spec, a.n - spec, spec / a.n


def _content_lines(text: str) -> Iterable[str]:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield stripped


def load_sequence(path: str | Path) -> TernarySequence:
    """Load a sequence file: bits in {0,1,X,-}, '#' lines are comments."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_sequence("".join(_content_lines(text)))


def load_patterns(path: str | Path) -> PatternSet:
    """Load a pattern file: one fixed-width ternary pattern per line."""
    text = Path(path).read_text(encoding="utf-8")
    patterns = [parse_sequence(line) for line in _content_lines(text)]
    if not patterns:
        raise EmptySequence()
    return PatternSet(tuple(patterns))


def parallelization_bound(n: int) -> int:
    """Upper end of the default sweep range for a length-n sequence."""
    return max(1, (n - 1).bit_length())
