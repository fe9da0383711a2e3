import pytest
import sympy

from binmachine import (
    PRIMITIVE_POLYS,
    PermutationSpec,
    PermutationTooShort,
    expand_permutation,
    parse_perm_spec,
)
from tests.conftest import GOLDEN20_PERM


def test_lfsr_reproduces_reference_permutation():
    perm = PermutationSpec.lfsr(poly=0x13, seed=1)
    assert expand_permutation(perm, 16) == GOLDEN20_PERM


def test_lfsr_prefix():
    perm = PermutationSpec.lfsr(poly=0x13, seed=1)
    assert expand_permutation(perm, 5) == GOLDEN20_PERM[:5]


def test_counter():
    perm = PermutationSpec.counter(m=3)
    assert expand_permutation(perm, 4) == (0, 1, 2, 3)


def test_explicit_pass_through():
    perm = PermutationSpec.explicit((2, 0, 1))
    assert expand_permutation(perm, 3) == (2, 0, 1)


def test_explicit_too_short():
    perm = PermutationSpec.explicit((2, 0, 1)).bind(2)
    with pytest.raises(PermutationTooShort):
        expand_permutation(perm, 4)


def test_random_is_distinct_and_seeded():
    perm = PermutationSpec.random(seed=5, m=6)
    vals = expand_permutation(perm, 40)
    assert len(set(vals)) == 40
    assert expand_permutation(perm, 40) == vals
    assert all(0 <= v < 64 for v in vals)


def test_r_exceeding_tag_space():
    perm = PermutationSpec.counter(m=3)
    with pytest.raises(PermutationTooShort):
        expand_permutation(perm, 9)


def test_nonprimitive_poly_short_cycle():
    # x^4 + x^2 + 1 is reducible; the cycle from seed 1 has length 6
    perm = PermutationSpec.lfsr(poly=0x15, seed=1)
    assert expand_permutation(perm, 7) == (1, 8, 4, 10, 5, 2, 0)
    with pytest.raises(PermutationTooShort):
        expand_permutation(perm, 8)


def test_bind_rejects_width_mismatch():
    perm = PermutationSpec.lfsr(poly=0x13, seed=1)
    with pytest.raises(ValueError):
        perm.bind(5)


def test_default_binds_table_poly():
    perm = PermutationSpec.lfsr().bind(4)
    assert perm.poly == PRIMITIVE_POLYS[4]
    assert perm.seed == 1


def test_parse_spec_strings(tmp_path):
    assert parse_perm_spec("counter").kind == "counter"
    lfsr = parse_perm_spec("lfsr:13:1")
    assert lfsr.poly == 0x13 and lfsr.seed == 1 and lfsr.m == 4
    assert parse_perm_spec("random:9").seed == 9
    listing = tmp_path / "perm.txt"
    listing.write_text("2 0 1\n3\n", encoding="utf-8")
    explicit = parse_perm_spec(f"explicit:@{listing}")
    assert explicit.values == (2, 0, 1, 3)
    with pytest.raises(ValueError):
        parse_perm_spec("bogus")


def _gf2_mulmod(a, b, poly, m):
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= poly
    return res


def _gf2_powmod(a, e, poly, m):
    res = 1
    while e:
        if e & 1:
            res = _gf2_mulmod(res, a, poly, m)
        a = _gf2_mulmod(a, a, poly, m)
        e >>= 1
    return res


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLYS))
def test_table_polynomials_are_primitive(m):
    poly = PRIMITIVE_POLYS[m]
    assert poly >> m == 1, "polynomial must have degree m"
    if m == 1:
        assert poly == 0b11
        return
    order = (1 << m) - 1
    assert _gf2_powmod(2, order, poly, m) == 1
    for q in sympy.factorint(order):
        assert _gf2_powmod(2, order // q, poly, m) != 1


@pytest.mark.parametrize("m", range(1, 13))
def test_lfsr_walks_full_period(m):
    perm = PermutationSpec.lfsr().bind(m)
    vals = expand_permutation(perm, 1 << m)
    assert len(set(vals)) == 1 << m
    assert vals[-1] == 0
