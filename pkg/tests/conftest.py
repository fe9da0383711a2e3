import pytest

from binmachine import PermutationSpec, parse_sequence

# 20-bit reference sequence with its known-good tag assignment: permutation
# from the 4-bit LFSR (poly 1+x+x^4, seed 1), p=2.
GOLDEN20 = "00110111001011101100"
GOLDEN20_PERM = (1, 8, 4, 2, 9, 12, 6, 11, 5, 10, 13, 14, 15, 7, 3, 0)
GOLDEN20_STATES = [
    "000100", "100011", "010001", "001011", "100100",
    "110010", "011011", "101110", "010111", "101000",
]
GOLDEN20_TABLE = [
    ("0001", "100011"),
    ("1000", "010001"),
    ("0100", "001011"),
    ("0010", "100100"),
    ("1001", "110010"),
    ("1100", "011011"),
    ("0110", "101110"),
    ("1011", "010111"),
    ("0101", "101000"),
]

# 4-stage shift register with nonlinear feedback x0+x3+x1x2+x2x3 and the
# equivalent per-stage machine; both replay this 15-bit cycle from 0001.
SR15 = (1, 0, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0)
SR15_FEEDBACK = [(0,), (3,), (1, 2), (2, 3)]
SR15_MACHINE = {3: [(0,), (3,)], 2: [(3,), (1, 2)], 1: [(2,)], 0: [(1,)]}


@pytest.fixture
def golden20():
    return parse_sequence(GOLDEN20)


@pytest.fixture
def golden20_perm():
    return PermutationSpec.lfsr(poly=0x13, seed=1)
