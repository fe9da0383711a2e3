import itertools
import random

import pytest

from binmachine import (
    AnfExpression,
    IncompleteFunction,
    IncompleteInput,
    InconsistentSpec,
    dependence_set,
    to_anf,
)


def table_function(support, fn):
    v = len(support)
    rows = {pt: fn(*[(pt >> i) & 1 for i in range(v)]) for pt in range(1 << v)}
    return IncompleteFunction(tuple(support), rows)


def brute_force_dependence(f):
    """Enumerate every completion; return (intersection, union) of
    per-completion dependence sets."""
    v = f.v
    missing = [pt for pt in range(1 << v) if pt not in f.care_rows]
    inter = None
    union = set()
    for fill in range(1 << len(missing)):
        table = dict(f.care_rows)
        for i, pt in enumerate(missing):
            table[pt] = (fill >> i) & 1
        dep = set()
        for pos in range(v):
            bit = 1 << pos
            if any(table[pt] != table[pt ^ bit] for pt in range(1 << v)):
                dep.add(f.support[pos])
        union |= dep
        inter = dep if inter is None else (inter & dep)
    return inter or set(), union


def test_dependence_xor_depends_on_both():
    f = table_function((0, 1), lambda a, b: a ^ b)
    assert dependence_set(f, "all") == {0, 1}
    assert dependence_set(f, "any") == {0, 1}


def test_dependence_constant_is_empty():
    f = table_function((0, 1, 2), lambda a, b, c: 0)
    assert dependence_set(f, "all") == set()
    assert dependence_set(f, "any") == set()


def test_dependence_incomplete_pair():
    f = IncompleteFunction((0, 1), {0b00: 0, 0b11: 1})
    assert dependence_set(f, "all") == set()
    assert dependence_set(f, "any") == {0, 1}
    inter, union = brute_force_dependence(f)
    assert inter == set() and union == {0, 1}


@pytest.mark.parametrize("v", [1, 2, 3])
def test_dependence_matches_brute_force_exhaustively(v):
    support = tuple(range(v))
    for assignment in itertools.product((0, 1, None), repeat=1 << v):
        rows = {pt: val for pt, val in enumerate(assignment) if val is not None}
        f = IncompleteFunction(support, rows)
        inter, union = brute_force_dependence(f)
        assert dependence_set(f, "all") == inter
        assert dependence_set(f, "any") == union


def test_dependence_matches_brute_force_sampled_v4():
    rng = random.Random(23)
    support = (0, 1, 2, 3)
    for _ in range(300)        :
        rows = {}
        for pt in range(16):
            val = rng.choice((0, 1, None))
            if val is not None:
                rows[pt] = val
        f = IncompleteFunction(support, rows)
        inter, union = brute_force_dependence(f)
        assert dependence_set(f, "all") == inter
        assert dependence_set(f, "any") == union


def test_dependence_rejects_bad_mode():
    f = table_function((0,), lambda a: a)
    with pytest.raises(ValueError):
        dependence_set(f, "some")


def test_anf_xor_pair():
    f = table_function((0, 3), lambda a, b: a ^ b)
    assert to_anf(f).monomials == frozenset({frozenset({0}), frozenset({3})})


def test_anf_mixed_term():
    f = table_function((1, 2, 3), lambda x1, x2, x3: x3 ^ (x1 & x2))
    assert to_anf(f).monomials == frozenset({frozenset({3}), frozenset({1, 2})})


def test_anf_constant_one():
    f = table_function((0, 1), lambda a, b: 1)
    assert to_anf(f).monomials == frozenset({frozenset()})


def test_anf_requires_complete_table():
    f = IncompleteFunction((0, 1), {0: 0})
    with pytest.raises(IncompleteInput):
        to_anf(f)


def test_anf_round_trip_exhaustive_small():
    for v in (1, 2, 3):
        support = tuple(range(v))
        for bits in range(1 << (1 << v)):
            rows = {pt: (bits >> pt) & 1 for pt in range(1 << v)}
            f = IncompleteFunction(support, rows)
            anf = to_anf(f)
            for pt in range(1 << v):
                assignment = {i: (pt >> i) & 1 for i in range(v)}
                assert anf.evaluate(assignment) == rows[pt]


def test_anf_round_trip_random_wide():
    rng = random.Random(5)
    for _ in range(30):
        v = rng.randint(4, 10)
        support = tuple(sorted(rng.sample(range(16), v)))
        rows = {pt: rng.randint(0, 1) for pt in range(1 << v)}
        f = IncompleteFunction(support, rows)
        anf = to_anf(f)
        for _ in range(25):
            pt = rng.randrange(1 << v)
            assignment = {support[i]: (pt >> i) & 1 for i in range(v)}
            assert anf.evaluate(assignment) == rows[pt]


def test_anf_str_is_sorted():
    expr = AnfExpression(frozenset({frozenset({2, 1}), frozenset({0}), frozenset()}))
    assert str(expr) == "1 ^ x0 ^ x1*x2"


def test_from_rows_rejects_conflicts():
    with pytest.raises(InconsistentSpec):
        IncompleteFunction.from_rows((0, 1), [(2, 1), (2, 0)], name=4)
    f = IncompleteFunction.from_rows((0, 1), [(2, 1), (2, 1), (0, 0)])
    assert f.care_rows == {2: 1, 0: 0}
