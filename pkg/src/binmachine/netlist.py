"""Technology-independent gate netlists.

Gates are 2-input AND/OR/XOR plus free NOT/BUF and constants; the cost
metric counts only the 2-input gates.  Evaluation compiles the node list
once into a flat Python function whose values may be single bits or
bit-sliced integer columns (one lane per test vector), which keeps
exhaustive care checks cheap.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional, Sequence

from .errors import WidthMismatch

# node ops
IN = "IN"
C0 = "C0"
C1 = "C1"
NOT = "NOT"
BUF = "BUF"
AND = "AND"
OR = "OR"
XOR = "XOR"

_COUNTED = (AND, OR, XOR)

FORMAT_VERSION = 1


class Netlist:
    """Immutable gate network over named input stages.

    ``nodes[i]`` is ``(op, a, b)`` with operand refs pointing at earlier
    nodes; IN nodes carry the position into ``inputs`` in their ``a``
    field.  ``outputs`` maps a stage index to the node ref driving it.
    """

    __slots__ = ("inputs", "nodes", "outputs", "_eval")

    def __init__(self, inputs: Sequence[int], nodes: Sequence[tuple],
                 outputs: dict[int, int]):
        self.inputs = tuple(inputs)
        self.nodes = tuple(tuple(n) for n in nodes)
        self.outputs = dict(outputs)
        self._eval = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Netlist)
            and self.inputs == other.inputs
            and self.nodes == other.nodes
            and self.outputs == other.outputs
        )

    def __hash__(self):
        return hash((self.inputs, self.nodes, tuple(sorted(self.outputs.items()))))

    @property
    def gate_count(self) -> int:
        return gate_count(self)

    @property
    def node_count(self) -> int:
        """All logic nodes including inverters (transparency metric)."""
        return sum(1 for op, _, _ in self.nodes if op not in (IN, C0, C1, BUF))

    def depth(self) -> int:
        level = [0] * len(self.nodes)
        for i, (op, a, b) in enumerate(self.nodes):
            if op in (IN, C0, C1):
                continue
            la = level[a]
            lb = level[b] if op in _COUNTED else 0
            level[i] = max(la, lb) + (1 if op in _COUNTED else 0)
        return max((level[ref] for ref in self.outputs.values()), default=0)

    # -- evaluation ----------------------------------------------------

    def _compiled(self):
        if self._eval is None:
            self._eval = _compile(self)
        return self._eval

    def evaluate_columns(self, columns: Sequence[int], mask: int) -> dict[int, int]:
        """Evaluate with one integer column per input; bit t of a column is
        the value of that input in lane t.  ``mask`` has one bit per lane."""
        if len(columns) != len(self.inputs):
            raise WidthMismatch(len(columns), len(self.inputs))
        outs = self._compiled()(columns, mask)
        return {stage: outs[i] for i, stage in enumerate(sorted(self.outputs))}

    def to_json(self) -> str:
        doc = {
            "format_version": FORMAT_VERSION,
            "inputs": list(self.inputs),
            "nodes": [list(n) for n in self.nodes],
            "outputs": {str(k): v for k, v in sorted(self.outputs.items())},
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Netlist":
        doc = json.loads(text)
        return cls(
            inputs=doc["inputs"],
            nodes=[tuple(n) for n in doc["nodes"]],
            outputs={int(k): v for k, v in doc["outputs"].items()},
        )

    def to_text(self, prefix: str = "f") -> str:
        """One assignment per line, outputs in descending stage order.

        Shared nodes are inlined so each line is a closed-form expression
        over the input variables; ordering is stable for golden files.
        """
        exprs = _render_exprs(self)
        lines = [
            f"{prefix}{stage} = {exprs[ref]}"
            for stage, ref in sorted(self.outputs.items(), reverse=True)
        ]
        return "\n".join(lines) + "\n"


def evaluate(netlist: Netlist, input_point: Sequence[int]) -> dict[int, int]:
    """Combinational evaluation; input bits follow ``netlist.inputs`` order."""
    if len(input_point) != len(netlist.inputs):
        raise WidthMismatch(len(input_point), len(netlist.inputs))
    return netlist.evaluate_columns(list(input_point), 1)


def gate_count(netlist: Netlist) -> int:
    """2-input gates reachable from the outputs (inverters are free)."""
    seen = set()
    stack = list(netlist.outputs.values())
    count = 0
    while stack:
        ref = stack.pop()
        if ref in seen:
            continue
        seen.add(ref)
        op, a, b = netlist.nodes[ref]
        if op in _COUNTED:
            count += 1
            stack.append(a)
            stack.append(b)
        elif op in (NOT, BUF):
            stack.append(a)
    return count


def care_equivalent(netlist: Netlist, fs, sample: Optional[int] = None):
    """Check the netlist against every care row of every function.

    Returns (True, None) or (False, (function name, input point)) for the
    first violation, scanning functions in list order and points in
    ascending order.  ``sample`` caps the number of rows checked per
    function (deterministic prefix) for very large tables.
    """
    stage_to_pos = {stage: i for i, stage in enumerate(netlist.inputs)}
    for f in fs:
        if f.name not in netlist.outputs:
            return False, (f.name, -1)
        positions = []
        for stage in f.support:
            if stage not in stage_to_pos:
                if f.care_rows:
                    return False, (f.name, min(f.care_rows))
                positions = None
                break
            positions.append(stage_to_pos[stage])
        if not f.care_rows or positions is None:
            continue
        points = sorted(f.care_rows)
        if sample is not None:
            points = points[:sample]
        lanes = len(points)
        mask = (1 << lanes) - 1
        columns = [0] * len(netlist.inputs)
        expected = 0
        for t, point in enumerate(points):
            for i, pos in enumerate(positions):
                if (point >> i) & 1:
                    columns[pos] |= 1 << t
            if f.care_rows[point]:
                expected |= 1 << t
        got = netlist.evaluate_columns(columns, mask)[f.name]
        bad = (got ^ expected) & mask
        if bad:
            lane = (bad & -bad).bit_length() - 1
            return False, (f.name, points[lane])
    return True, None


class NetlistBuilder:
    """Construct netlists with hash-consing and local simplification.

    Identical subterms share one node, so common cubes and pairs built in
    canonical operand order are extracted automatically across outputs.
    """

    def __init__(self, inputs: Sequence[int]):
        self.inputs = tuple(inputs)
        self.nodes: list[tuple] = [(IN, i, -1) for i in range(len(self.inputs))]
        self._cache: dict[tuple, int] = {}
        self._const: dict[int, int] = {}

    def _emit(self, op: str, a: int, b: int) -> int:
        key = (op, a, b)
        ref = self._cache.get(key)
        if ref is None:
            ref = len(self.nodes)
            self.nodes.append(key)
            self._cache[key] = ref
        return ref

    def _op(self, ref: int) -> str:
        return self.nodes[ref][0]

    def input(self, stage: int) -> int:
        return self.inputs.index(stage)

    def const(self, value: int) -> int:
        if value not in self._const:
            self._const[value] = self._emit(C1 if value else C0, -1, -1)
        return self._const[value]

    def not_(self, a: int) -> int:
        op, operand, _ = self.nodes[a]
        if op == NOT:
            return operand
        if op == C0:
            return self.const(1)
        if op == C1:
            return self.const(0)
        return self._emit(NOT, a, -1)

    def _complementary(self, a: int, b: int) -> bool:
        return self.nodes[a] == (NOT, b, -1) or self.nodes[b] == (NOT, a, -1)

    def and_(self, a: int, b: int) -> int:
        if self._op(a) == C0 or self._op(b) == C0:
            return self.const(0)
        if self._op(a) == C1:
            return b
        if self._op(b) == C1:
            return a
        if a == b:
            return a
        if self._complementary(a, b):
            return self.const(0)
        if a > b:
            a, b = b, a
        return self._emit(AND, a, b)

    def or_(self, a: int, b: int) -> int:
        if self._op(a) == C1 or self._op(b) == C1:
            return self.const(1)
        if self._op(a) == C0:
            return b
        if self._op(b) == C0:
            return a
        if a == b:
            return a
        if self._complementary(a, b):
            return self.const(1)
        if a > b:
            a, b = b, a
        return self._emit(OR, a, b)

    def xor_(self, a: int, b: int) -> int:
        if self._op(a) == C0:
            return b
        if self._op(b) == C0:
            return a
        if self._op(a) == C1:
            return self.not_(b)
        if self._op(b) == C1:
            return self.not_(a)
        if a == b:
            return self.const(0)
        if self._complementary(a, b):
            return self.const(1)
        # pull inverters out: ~a ^ b == ~(a ^ b), ~a ^ ~b == a ^ b
        invert = False
        if self._op(a) == NOT:
            a = self.nodes[a][1]
            invert = not invert
        if self._op(b) == NOT:
            b = self.nodes[b][1]
            invert = not invert
        if a == b:
            ref = self.const(0)
        else:
            if a > b:
                a, b = b, a
            ref = self._emit(XOR, a, b)
        return self.not_(ref) if invert else ref

    def and_chain(self, refs: Iterable[int]) -> int:
        refs = list(refs)
        if not refs:
            return self.const(1)
        acc = refs[0]
        for ref in refs[1:]:
            acc = self.and_(acc, ref)
        return acc

    def or_chain(self, refs: Iterable[int]) -> int:
        refs = list(refs)
        if not refs:
            return self.const(0)
        acc = refs[0]
        for ref in refs[1:]:
            acc = self.or_(acc, ref)
        return acc

    def xor_chain(self, refs: Iterable[int]) -> int:
        refs = list(refs)
        if not refs:
            return self.const(0)
        acc = refs[0]
        for ref in refs[1:]:
            acc = self.xor_(acc, ref)
        return acc

    def literal(self, position: int, polarity: int) -> int:
        ref = position  # IN nodes occupy the first len(inputs) slots
        return ref if polarity else self.not_(ref)

    def finalize(self, outputs: dict[int, int]) -> Netlist:
        """Sweep dead nodes and freeze the network."""
        keep = [False] * len(self.nodes)
        for i in range(len(self.inputs)):
            keep[i] = True  # inputs always present
        stack = list(outputs.values())
        while stack:
            ref = stack.pop()
            if keep[ref]:
                continue
            keep[ref] = True
            op, a, b = self.nodes[ref]
            if op in (NOT, BUF):
                stack.append(a)
            elif op in _COUNTED:
                stack.append(a)
                stack.append(b)
        remap: dict[int, int] = {}
        nodes: list[tuple] = []
        for ref, node in enumerate(self.nodes):
            if not keep[ref]:
                continue
            op, a, b = node
            if op in (NOT, BUF):
                node = (op, remap[a], -1)
            elif op in _COUNTED:
                node = (op, remap[a], remap[b])
            remap[ref] = len(nodes)
            nodes.append(node)
        return Netlist(self.inputs, nodes, {k: remap[v] for k, v in outputs.items()})


def _compile(netlist: Netlist):
    """Build a flat evaluator: (columns, mask) -> tuple of output columns."""
    lines = ["def _f(_v, _m):"]
    for i, (op, a, b) in enumerate(netlist.nodes):
        if op == IN:
            lines.append(f" n{i} = _v[{a}]")
        elif op == C0:
            lines.append(f" n{i} = 0")
        elif op == C1:
            lines.append(f" n{i} = _m")
        elif op == BUF:
            lines.append(f" n{i} = n{a}")
        elif op == NOT:
            lines.append(f" n{i} = _m ^ n{a}")
        elif op == AND:
            lines.append(f" n{i} = n{a} & n{b}")
        elif op == OR:
            lines.append(f" n{i} = n{a} | n{b}")
        elif op == XOR:
            lines.append(f" n{i} = n{a} ^ n{b}")
        else:
            raise ValueError(f"unknown op {op!r}")
    refs = [netlist.outputs[stage] for stage in sorted(netlist.outputs)]
    lines.append(" return (" + ",".join(f"n{r}" for r in refs) + ("," if refs else "") + ")")
    namespace: dict = {}
    exec(compile("\n".join(lines), "<netlist>", "exec"), namespace)
    return namespace["_f"]


def _render_exprs(netlist: Netlist) -> list[str]:
    atoms = (IN, C0, C1)
    exprs: list[str] = []
    for op, a, b in netlist.nodes:
        if op == IN:
            exprs.append(f"x{netlist.inputs[a]}")
        elif op == C0:
            exprs.append("0")
        elif op == C1:
            exprs.append("1")
        else:
            wrap_a = exprs[a] if netlist.nodes[a][0] in atoms else f"({exprs[a]})"
            if op == BUF:
                exprs.append(exprs[a])
            elif op == NOT:
                exprs.append(f"~{wrap_a}")
            else:
                sym = {AND: "&", OR: "|", XOR: "^"}[op]
                wrap_b = exprs[b] if netlist.nodes[b][0] in atoms else f"({exprs[b]})"
                exprs.append(f"{wrap_a} {sym} {wrap_b}")
    return exprs
