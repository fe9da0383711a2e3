import random

import pytest

from binmachine import (
    IncompleteFunction,
    Netlist,
    NetlistBuilder,
    WidthMismatch,
    care_equivalent,
    evaluate,
    gate_count,
)


def xor_netlist():
    b = NetlistBuilder((0, 1))
    return b.finalize({0: b.xor_(b.input(0), b.input(1))})


def test_evaluate_xor():
    net = xor_netlist()
    assert evaluate(net, (1, 0)) == {0: 1}
    assert evaluate(net, (1, 1)) == {0: 0}


def test_evaluate_constant():
    b = NetlistBuilder((0,))
    net = b.finalize({0: b.const(1)})
    for bit in (0, 1):
        assert evaluate(net, (bit,)) == {0: 1}


def test_evaluate_width_mismatch():
    with pytest.raises(WidthMismatch):
        evaluate(xor_netlist(), (1,))


def test_gate_count_examples():
    # per-stage machine: f3=x0^x3, f2=x3^x1x2, f1=x2, f0=x1
    b = NetlistBuilder((0, 1, 2, 3))
    outs = {
        3: b.xor_(b.input(0), b.input(3)),
        2: b.xor_(b.input(3), b.and_(b.input(1), b.input(2))),
        1: b.input(2),
        0: b.input(1),
    }
    assert gate_count(b.finalize(outs)) == 3

    # single feedback x0^x3^x1x2^x2x3
    b = NetlistBuilder((0, 1, 2, 3))
    f = b.xor_chain([
        b.input(0), b.input(3),
        b.and_(b.input(1), b.input(2)),
        b.and_(b.input(2), b.input(3)),
    ])
    assert gate_count(b.finalize({3: f})) == 5


def test_gate_count_all_wires():
    b = NetlistBuilder((0, 1))
    net = b.finalize({0: b.input(1), 1: b.input(0)})
    assert gate_count(net) == 0
    assert net.node_count == 0


def test_inverters_are_free():
    b = NetlistBuilder((0, 1))
    net = b.finalize({0: b.not_(b.and_(b.input(0), b.not_(b.input(1))))})
    assert gate_count(net) == 1
    assert net.node_count == 3


def test_builder_folding_rules():
    b = NetlistBuilder((0, 1))
    x, y = b.input(0), b.input(1)
    assert b.and_(x, x) == x
    assert b.or_(x, x) == x
    assert b.nodes[b.xor_(x, x)][0] == "C0"
    assert b.not_(b.not_(x)) == x
    assert b.nodes[b.and_(x, b.not_(x))][0] == "C0"
    assert b.nodes[b.or_(x, b.not_(x))][0] == "C1"
    assert b.nodes[b.xor_(x, b.not_(x))][0] == "C1"
    assert b.and_(x, b.const(1)) == x
    assert b.nodes[b.and_(x, b.const(0))][0] == "C0"
    assert b.xor_(x, b.const(0)) == x
    # inverters bubble out of XOR so the parity node is shared
    inner = b.xor_(x, y)
    assert b.xor_(b.not_(x), y) == b.not_(inner)
    assert b.xor_(b.not_(x), b.not_(y)) == inner


def test_builder_shares_structure():
    b = NetlistBuilder((0, 1, 2))
    c1 = b.and_(b.and_(b.input(0), b.input(1)), b.input(2))
    c2 = b.and_(b.and_(b.input(0), b.input(1)), b.input(2))
    assert c1 == c2
    net = b.finalize({0: c1, 1: c2})
    assert net.gate_count == 2


def test_finalize_sweeps_dead_nodes():
    b = NetlistBuilder((0, 1))
    b.and_(b.input(0), b.input(1))  # never used
    keep = b.or_(b.input(0), b.input(1))
    net = b.finalize({0: keep})
    assert net.gate_count == 1
    ops = [op for op, _, _ in net.nodes]
    assert "AND" not in ops


def test_json_round_trip():
    net = xor_netlist()
    again = Netlist.from_json(net.to_json())
    assert again == net
    assert evaluate(again, (0, 1)) == {0: 1}


def test_text_export():
    b = NetlistBuilder((2, 3, 4, 5))
    outs = {
        5: b.xor_(b.input(2), b.input(3)),
        4: b.input(5),
    }
    text = b.finalize(outs).to_text()
    assert text.splitlines() == ["f5 = x2 ^ x3", "f4 = x5"]


def test_text_export_inlines_shared_nodes():
    b = NetlistBuilder((0, 1))
    parity = b.xor_(b.input(0), b.input(1))
    outs = {0: parity, 1: b.not_(parity)}
    text = b.finalize(outs).to_text()
    assert text.splitlines() == ["f1 = ~(x0 ^ x1)", "f0 = x0 ^ x1"]


def test_columns_match_scalar_evaluation():
    rng = random.Random(3)
    b = NetlistBuilder(tuple(range(4)))
    refs = [b.input(i) for i in range(4)]
    for _ in range(12):
        op = rng.choice((b.and_, b.or_, b.xor_))
        refs.append(op(rng.choice(refs), rng.choice(refs)))
        if rng.random() < 0.3:
            refs.append(b.not_(refs[-1]))
    net = b.finalize({0: refs[-1], 1: refs[-2]})
    points = [rng.randrange(16) for _ in range(10)]
    cols = [0] * 4
    for t, pt in enumerate(points):
        for i in range(4):
            cols[i] |= ((pt >> i) & 1) << t
    sliced = net.evaluate_columns(cols, (1 << len(points)) - 1)
    for t, pt in enumerate(points):
        single = evaluate(net, tuple((pt >> i) & 1 for i in range(4)))
        for stage in single:
            assert ((sliced[stage] >> t) & 1) == single[stage]


def test_care_equivalent_reports_first_counterexample():
    b = NetlistBuilder((0,))
    net = b.finalize({0: b.input(0)})  # f = x0
    spec = IncompleteFunction((0,), {0: 1}, name=0)  # wants f(0) = 1
    ok, cex = care_equivalent(net, [spec])
    assert not ok and cex == (0, 0)


def test_care_equivalent_vacuous_and_pass():
    b = NetlistBuilder((0, 1))
    net = b.finalize({0: b.xor_(b.input(0), b.input(1))})
    assert care_equivalent(net, [IncompleteFunction((0, 1), {}, name=0)]) == (True, None)
    full = IncompleteFunction((0, 1), {0: 0, 1: 1, 2: 1, 3: 0}, name=0)
    assert care_equivalent(net, [full]) == (True, None)


def test_depth_reports_two_input_levels():
    b = NetlistBuilder((0, 1, 2))
    net = b.finalize({0: b.xor_(b.and_(b.input(0), b.input(1)), b.input(2))})
    assert net.depth() == 2
