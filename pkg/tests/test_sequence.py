import random

import pytest

from binmachine import (
    EmptySequence,
    IllegalCharacter,
    InvalidParallelization,
    PatternSet,
    TernarySequence,
    WidthMismatch,
    encode,
    flatten,
    parse_sequence,
    specified_stats,
)
from binmachine.sequence import digit_value


def test_parse_specified():
    a = parse_sequence("00101101")
    assert a.bits == (0, 0, 1, 0, 1, 1, 0, 1)
    assert a.n == 8


def test_parse_dontcare_aliases():
    assert parse_sequence("0X1").bits == (0, None, 1)
    assert parse_sequence("0x1").bits == (0, None, 1)
    assert parse_sequence("0-1").bits == (0, None, 1)


def test_parse_ignores_whitespace():
    assert parse_sequence(" 01\n1X ").bits == (0, 1, 1, None)


def test_parse_empty():
    with pytest.raises(EmptySequence):
        parse_sequence("")
    with pytest.raises(EmptySequence):
        parse_sequence("  \n ")


def test_parse_illegal_character():
    with pytest.raises(IllegalCharacter) as info:
        parse_sequence("012")
    assert info.value.position == 2
    assert info.value.char == "2"


def test_render_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 64)
        text = "".join(rng.choice("01Xx-") for _ in range(n))
        a = parse_sequence(text)
        assert parse_sequence(a.render()) == a
        assert a.render() == text.upper().replace("-", "X")


def test_flatten_patterns():
    ps = PatternSet((parse_sequence("01"), parse_sequence("10")))
    assert flatten(ps).render() == "0110"
    single = PatternSet((parse_sequence("0X1"),))
    assert flatten(single).render() == "0X1"
    three = PatternSet(tuple(parse_sequence(t) for t in ("00", "11", "0X")))
    assert flatten(three).render() == "00110X"


def test_pattern_width_mismatch():
    with pytest.raises(WidthMismatch):
        PatternSet((parse_sequence("01"), parse_sequence("011")))


def test_encode_quaternary():
    ds = encode(parse_sequence("00101101"), 2)
    assert [digit_value(d) for d in ds.digits] == [0, 2, 3, 1]
    assert ds.n_max == 1


def test_encode_p1_counts():
    ds = encode(parse_sequence("00101101"), 1)
    assert ds.counts == {0: 4, 1: 4}
    assert ds.n_max == 4


def test_encode_skips_digits_with_dontcare():
    ds = encode(parse_sequence("0X11"), 2)
    assert digit_value(ds.digits[0]) is None
    assert ds.counts == {3: 1}
    assert ds.n_max == 1


def test_encode_pads_final_digit():
    ds = encode(parse_sequence("01101"), 2)
    assert ds.r == 3
    assert ds.digits[2] == (1, None)


def test_encode_bad_p():
    a = parse_sequence("0110")
    with pytest.raises(InvalidParallelization):
        encode(a, 0)
    with pytest.raises(InvalidParallelization):
        encode(a, 5)


def test_encode_round_trip_and_padding_bound():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 40)
        bits = tuple(rng.choice((0, 1, None)) for _ in range(n))
        a = TernarySequence(bits)
        for p in range(1, n + 1):
            ds = encode(a, p)
            total = sum(len(d) for d in ds.digits)
            assert n <= total < n + p
            rebuilt = tuple(b for d in ds.digits for b in d)[:n]
            assert rebuilt == bits


def test_nmax_monotone_under_filling():
    rng = random.Random(13)
    for _ in range(40)        :
        n = rng.randint(2, 32)
        bits = [rng.choice((0, 1, None)) for _ in range(n)]
        a = TernarySequence(tuple(bits))
        p = rng.randint(1, n)
        before = encode(a, p).n_max
        xs = [i for i, b in enumerate(bits) if b is None]
        if not xs:
            continue
        bits[rng.choice(xs)] = rng.randint(0, 1)
        after = encode(TernarySequence(tuple(bits)), p).n_max
        assert after >= before


def test_specified_stats():
    assert specified_stats(parse_sequence("0X1X")) == (2, 2, 0.5)
    assert specified_stats(parse_sequence("1111")) == (4, 0, 1.0)
    assert specified_stats(parse_sequence("XXXX")) == (0, 4, 0.0)


def test_load_files(tmp_path):
    seq_file = tmp_path / "a.seq"
    seq_file.write_text("# header\n0110\nX01\n", encoding="utf-8")
    from binmachine import load_sequence

    assert load_sequence(seq_file).render() == "0110X01"

    pat_file = tmp_path / "a.pat"
    pat_file.write_text("# two patterns\n0X1\n110\n", encoding="utf-8")
    from binmachine import load_patterns

    ps = load_patterns(pat_file)
    assert ps.count == 2 and ps.width == 3
