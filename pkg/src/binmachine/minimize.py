"""Don't-care-aware logic minimization into multi-level netlists.

Per output the pipeline is: constant / short-parity detection, a
two-level cover (exact prime generation up to ``QM_EXACT_LIMIT`` inputs,
iterative cube expansion above), then XNOR/XOR pairing of complementary
cube pairs.  Cross-output sharing falls out of the hash-consing builder
because cubes are chained in canonical operand order.

Cubes are (mask, value) integer pairs over the support positions: a set
mask bit fixes that input to the corresponding value bit.  Coverage sets
are kept as arbitrary-precision bitmasks, one lane per care row.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .boolfunc import IncompleteFunction
from .netlist import Netlist, NetlistBuilder

QM_EXACT_LIMIT = 10       # inputs; above this, heuristic expansion
PARITY_MAX_LITERALS = 3
_BB_MAX_CANDS = 32        # residual covering problems larger than this go greedy
_BB_MAX_LANES = 48
_BB_NODE_CAP = 20000
_DOMINANCE_LIMIT = 400


def minimize(fs: Sequence[IncompleteFunction]) -> Netlist:
    """Minimize a group of functions over one shared support.

    The result drives every function's stage and agrees with every care
    row; don't cares are realized however the cover landed.  Fully
    deterministic for identical inputs.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one function")
    support = fs[0].support
    seen_names = set()
    for f in fs:
        if f.support != support:
            raise ValueError("all functions must share one support")
        if f.name in seen_names:
            raise ValueError(f"duplicate target stage {f.name}")
        seen_names.add(f.name)
        for value in f.care_rows.values():
            if value not in (0, 1):
                raise ValueError(f"care value {value!r} is not a bit")
    builder = NetlistBuilder(support)
    outputs = {f.name: _synthesize_one(builder, f) for f in fs}
    return builder.finalize(outputs)


def naive_minterm_gate_count(fs: Sequence[IncompleteFunction]) -> int:
    """Cost of the unoptimized one-AND-per-care-minterm construction."""
    total = 0
    for f in fs:
        on = sum(1 for value in f.care_rows.values() if value)
        if on:
            total += on * max(f.v - 1, 0) + (on - 1)
    return total


def _synthesize_one(builder: NetlistBuilder, f: IncompleteFunction) -> int:
    v = f.v
    points = sorted(f.care_rows)
    on = [pt for pt in points if f.care_rows[pt]]
    off = [pt for pt in points if not f.care_rows[pt]]
    if not on:
        return builder.const(0)
    if not off:
        return builder.const(1)

    parity = _parity_cover(v, points, [f.care_rows[pt] for pt in points])
    if parity is not None:
        positions, complement = parity
        ref = builder.xor_chain(builder.literal(j, 1) for j in positions)
        return builder.not_(ref) if complement else ref

    if v <= QM_EXACT_LIMIT:
        cands = _qm_primes(v, on, [pt for pt in range(1 << v) if pt not in f.care_rows])
    else:
        cands = _expand_cubes(v, on, off)
    cover = _select_cover(cands, on)
    terms = _pair_xors(cover)
    refs = sorted(_build_term(builder, term) for term in terms)
    return builder.or_chain(refs)


def _columns(points: Sequence[int], v: int) -> list[int]:
    cols = [0] * v
    for t, pt in enumerate(points):
        for j in range(v):
            if (pt >> j) & 1:
                cols[j] |= 1 << t
    return cols


def _parity_cover(v: int, points, values) -> Optional[tuple[tuple[int, ...], int]]:
    """Try to match the care rows as a parity of few literals (or a constant).

    Returns (positions, complement) or None.  Positions are support
    positions; complement 1 means the XOR is inverted.
    """
    lanes = len(points)
    full = (1 << lanes) - 1
    out = 0
    for t, value in enumerate(values):
        if value:
            out |= 1 << t
    cols = _columns(points, v)
    for size in range(1, PARITY_MAX_LITERALS + 1):
        if size > v:
            break
        for combo in combinations(range(v), size):
            acc = 0
            for j in combo:
                acc ^= cols[j]
            if acc == out:
                return combo, 0
            if acc == full ^ out:
                return combo, 1
    return None


def _qm_primes(v: int, on: Sequence[int], dc: Sequence[int]) -> list[tuple[int, int]]:
    """All prime implicants of on-set plus don't cares (classic merging)."""
    full = (1 << v) - 1
    level: dict[int, set[int]] = {}
    for pt in on:
        level.setdefault(full, set()).add(pt)
    for pt in dc:
        level.setdefault(full, set()).add(pt)
    primes: set[tuple[int, int]] = set()
    while level:
        nxt: dict[int, set[int]] = {}
        used: set[tuple[int, int]] = set()
        for mask, vals in level.items():
            mm = mask
            while mm:
                bit = mm & -mm
                mm &= mm - 1
                for val in vals:
                    if val & bit:
                        continue
                    if (val | bit) in vals:
                        used.add((mask, val))
                        used.add((mask, val | bit))
                        nxt.setdefault(mask & ~bit, set()).add(val)
        for mask, vals in level.items():
            for val in vals:
                if (mask, val) not in used:
                    primes.add((mask, val))
        level = nxt
    return sorted(primes, key=_cube_key)


def _expand_cubes(v: int, on: Sequence[int], off: Sequence[int]) -> list[tuple[int, int]]:
    """Greedy single-pass expansion of each on-minterm against the off-set."""
    full = (1 << v) - 1
    off_full = (1 << len(off)) - 1
    offcols = _columns(off, v)

    def off_coverage(mask: int, val: int) -> int:
        cov = off_full
        mm = mask
        while mm and cov:
            bit = mm & -mm
            mm &= mm - 1
            j = bit.bit_length() - 1
            cov &= offcols[j] if (val >> j) & 1 else (off_full ^ offcols[j])
        return cov

    cubes: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for pt in on:
        mask, val = full, pt
        for j in range(v):
            bit = 1 << j
            if not (mask & bit):
                continue
            if off_coverage(mask & ~bit, val & ~bit) == 0:
                mask &= ~bit
                val &= mask
        cube = (mask, val)
        if cube not in seen:
            seen.add(cube)
            cubes.append(cube)
    return sorted(cubes, key=_cube_key)


def _cube_key(cube: tuple[int, int]) -> tuple[int, int, int]:
    mask, val = cube
    return (mask.bit_count(), mask, val)


def _select_cover(cands: list[tuple[int, int]], on: Sequence[int]) -> list[tuple[int, int]]:
    """Pick a low-literal-count subset of candidate cubes covering the on-set.

    Essential cubes and dominance reductions come first; small residual
    cores are solved exactly by branch and bound, larger ones greedily.
    Ties always break toward the lexicographically smallest cube set.
    """
    lanes = len(on)
    remaining = (1 << lanes) - 1
    v = max((m for m, _ in cands), default=0).bit_length()
    oncols = _columns(on, v)

    def coverage(mask: int, val: int) -> int:
        cov = (1 << lanes) - 1
        mm = mask
        while mm and cov:
            bit = mm & -mm
            mm &= mm - 1
            j = bit.bit_length() - 1
            cov &= oncols[j] if (val >> j) & 1 else (((1 << lanes) - 1) ^ oncols[j])
        return cov

    cov = [coverage(m, val) for m, val in cands]
    lits = [m.bit_count() for m, _ in cands]
    alive = [i for i in range(len(cands)) if cov[i]]
    chosen: list[int] = []

    while remaining:
        alive = [i for i in alive if cov[i] & remaining]
        # lanes covered by exactly one live candidate force that candidate
        seen_once = seen_twice = 0
        for i in alive:
            c = cov[i] & remaining
            seen_twice |= seen_once & c
            seen_once |= c
        unique = remaining & seen_once & ~seen_twice
        if unique:
            for i in alive:
                if cov[i] & unique:
                    chosen.append(i)
                    remaining &= ~cov[i]
            continue
        if len(alive) <= _DOMINANCE_LIMIT:
            dropped = _dominance_drop(alive, cov, lits, remaining)
            if dropped:
                alive = [i for i in alive if i not in dropped]
                continue
        break

    if remaining:
        if len(alive) <= _BB_MAX_CANDS and remaining.bit_count() <= _BB_MAX_LANES:
            extra = _branch_and_bound(alive, cov, lits, remaining, cands)
        else:
            extra = _greedy_cover(alive, cov, remaining)
        chosen.extend(extra)

    return sorted({cands[i] for i in chosen}, key=_cube_key)


def _dominance_drop(alive, cov, lits, remaining) -> set[int]:
    dropped: set[int] = set()
    for i in alive:
        if i in dropped:
            continue
        ci = cov[i] & remaining
        for j in alive:
            if j == i or j in dropped:
                continue
            cj = cov[j] & remaining
            if ci & ~cj:
                continue  # j does not cover everything i does
            if lits[j] < lits[i] or (lits[j] == lits[i] and (cj != ci or j < i)):
                dropped.add(i)
                break
    return dropped


def _greedy_cover(alive, cov, remaining) -> list[int]:
    chosen = []
    while remaining:
        best = None
        best_gain = -1
        for i in alive:
            gain = (cov[i] & remaining).bit_count()
            if gain > best_gain:
                best, best_gain = i, gain
        if best is None or best_gain <= 0:
            raise AssertionError("uncoverable on-set lane")
        chosen.append(best)
        remaining &= ~cov[best]
    return chosen


def _branch_and_bound(alive, cov, lits, remaining, cands) -> list[int]:
    best: list[Optional[tuple]] = [None]
    nodes = [0]

    def solution_key(idxs):
        total = sum(lits[i] for i in idxs)
        return (total, len(idxs), tuple(sorted(_cube_key(cands[i]) for i in idxs)))

    def rec(rem: int, picked: tuple[int, ...], picked_lits: int):
        nodes[0] += 1
        if nodes[0] > _BB_NODE_CAP:
            return
        if not rem:
            key = solution_key(picked)
            if best[0] is None or key < best[0]:
                best[0] = key
                best_sets[0] = picked
            return
        # every further cube adds at least one literal
        if best[0] is not None and picked_lits + 1 > best[0][0]:
            return
        lane = (rem & -rem).bit_length() - 1
        for i in alive:
            if (cov[i] >> lane) & 1:
                rec(rem & ~cov[i], picked + (i,), picked_lits + lits[i])

    best_sets: list[tuple[int, ...]] = [()]
    rec(remaining, (), 0)
    if best[0] is None:
        return _greedy_cover(alive, cov, remaining)
    return list(best_sets[0])


def _pair_xors(cubes: list[tuple[int, int]]):
    """Fuse complementary cube pairs into parity terms.

    Two cubes with the same mask whose values differ in exactly two
    positions OR to (common literals) AND (XOR or XNOR of the pair),
    saving a gate and exposing shared parity nodes.
    """
    terms = []
    used = [False] * len(cubes)
    for i, (mi, vi) in enumerate(cubes):
        if used[i]:
            continue
        used[i] = True
        partner = None
        for j in range(i + 1, len(cubes)):
            if used[j]:
                continue
            mj, vj = cubes[j]
            if mj == mi and (vi ^ vj).bit_count() == 2:
                partner = j
                break
        if partner is None:
            terms.append(("cube", mi, vi))
            continue
        used[partner] = True
        diff = vi ^ cubes[partner][1]
        ja = (diff & -diff).bit_length() - 1
        jb = diff.bit_length() - 1
        xnor = ((vi >> ja) & 1) == ((vi >> jb) & 1)
        common_mask = mi & ~diff
        terms.append(("pair", common_mask, vi & common_mask, (ja, jb), xnor))
    return terms


def _build_term(builder: NetlistBuilder, term) -> int:
    if term[0] == "cube":
        _, mask, val = term
        return builder.and_chain(
            builder.literal(j, (val >> j) & 1)
            for j in range(mask.bit_length())
            if (mask >> j) & 1
        )
    _, mask, val, (ja, jb), xnor = term
    parity = builder.xor_(builder.literal(ja, 1), builder.literal(jb, 1))
    if xnor:
        parity = builder.not_(parity)
    common = [
        builder.literal(j, (val >> j) & 1)
        for j in range(mask.bit_length())
        if (mask >> j) & 1
    ]
    if not common:
        return parity
    return builder.and_(builder.and_chain(common), parity)
