"""Reversible arithmetic and logic subcircuits.

Conditional increment / decrement / one's and two's complement, the or-gate
and the or-gate tree.  Standard layout of the public builders: data wires
0..n-1, control wire n, scratch ancillas above the control.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .simcore import Circuit, CircuitBuilder


@dataclass(frozen=True)
class GadgetLayout:
    """Wire assignment used by a gadget circuit."""

    data_qubits: tuple[int, ...]
    control_qubit: int | None = None
    carry_ancillas: tuple[int, ...] = ()
    tree_ancillas: tuple[int, ...] = ()
    root_index: int | None = None

    def __post_init__(self):
        groups = [list(self.data_qubits), list(self.carry_ancillas), list(self.tree_ancillas)]
        if self.control_qubit is not None:
            groups.append([self.control_qubit])
        flat = [q for grp in groups for q in grp]
        if len(set(flat)) != len(flat):
            raise ValueError("gadget wire groups must be disjoint")


# ---------------------------------------------------------------------------
# emitters: append gates for a gadget onto an existing builder
# ---------------------------------------------------------------------------


def emit_cond_increment(cb: CircuitBuilder, control: int, data, carries):
    """x -> (x+1) mod 2^n when control=1.

    Carry qubits hold ANDs of the low data bits; the forward pass is
    unconditional and the flips are conditioned, which is what brings the
    fused two's complement down to 4n-4 gates.  Needs n-2 carries.
    """
    data = list(data)
    carries = list(carries)
    n = len(data)
    if n == 0:
        raise ValueError("empty data register")
    if len(carries) < max(n - 2, 0):
        raise ValueError(f"need {max(n - 2, 0)} carry ancillas, got {len(carries)}")
    # forward pass: a_1 = b_0 & b_1, then a_i = a_{i-1} & b_i
    if n >= 3:
        cb.toffoli(data[0], data[1], carries[0])
        for i in range(1, n - 2):
            cb.toffoli(carries[i - 1], data[i + 1], carries[i])
    # backward pass: flip from the most significant bit down, uncomputing
    # each carry right after the flip it controls
    for i in range(n - 2, 0, -1):
        cb.toffoli(control, carries[i - 1], data[i + 1])
        if i >= 2:
            cb.toffoli(carries[i - 2], data[i], carries[i - 1])
        else:
            cb.toffoli(data[0], data[1], carries[0])
    if n >= 2:
        cb.toffoli(control, data[0], data[1])
    cb.cnot(control, data[0])


def emit_cond_ones_complement(cb: CircuitBuilder, control: int, data):
    """Bitwise NOT of the register when control=1: one CNOT per data qubit."""
    for q in data:
        cb.cnot(control, q)


def emit_cond_twos_complement(cb: CircuitBuilder, control: int, data, carries):
    """x -> (2^n - x) mod 2^n when control=1: negate all bits, then add one.

    Width 1 is the identity map and emits nothing.
    """
    data = list(data)
    if len(data) <= 1:
        return
    emit_cond_ones_complement(cb, control, data)
    emit_cond_increment(cb, control, data, carries)


def emit_or_gate(cb: CircuitBuilder, a: int, b: int, result: int):
    """result ^= (a OR b): two CNOTs and a Toffoli."""
    cb.cnot(a, result)
    cb.cnot(b, result)
    cb.toffoli(a, b, result)


def emit_or_tree(cb: CircuitBuilder, data, ancillas) -> int:
    """Binary-tree OR reduction of ``data`` into fresh ancillas.

    Adjacent pairs are merged left to right, an odd leftover propagates
    unchanged to the next layer.  Returns the root wire (= OR of all data
    bits); consumes len(data)-1 ancillas and emits 3(len(data)-1) gates.
    """
    layer = list(data)
    if len(layer) < 2:
        raise ValueError("or-tree needs at least two inputs")
    pool = list(ancillas)
    if len(pool) < len(layer) - 1:
        raise ValueError(f"need {len(layer) - 1} tree ancillas, got {len(pool)}")
    free = iter(pool)
    while len(layer) > 1:
        nxt = []
        for i in range(0, len(layer), 2):
            if i + 1 < len(layer):
                tgt = next(free)
                emit_or_gate(cb, layer[i], layer[i + 1], tgt)
                nxt.append(tgt)
            else:
                nxt.append(layer[i])
        layer = nxt
    return layer[0]


def or_tree_gates(data, ancillas):
    """The compute pass of the or-tree as a (gates, root) pair, so callers can
    emit the same pass forwards and (inverted) backwards around a payload."""
    cb = CircuitBuilder(max([*data, *ancillas]) + 1)
    root = emit_or_tree(cb, data, ancillas)
    return cb.gates(), root


# ---------------------------------------------------------------------------
# public builders with the standard layout
# ---------------------------------------------------------------------------


def increment_layout(n: int) -> GadgetLayout:
    return GadgetLayout(
        data_qubits=tuple(range(n)),
        control_qubit=n,
        carry_ancillas=tuple(range(n + 1, n + 1 + max(n - 2, 0))),
    )


def build_cond_increment(n: int) -> Circuit:
    """Conditional modular increment on n data wires, control on wire n."""
    if n < 1:
        raise ValueError("increment needs at least one data qubit")
    lay = increment_layout(n)
    cb = CircuitBuilder(n + 1 + len(lay.carry_ancillas), label=f"inc_{n}",
                        ancillas=lay.carry_ancillas)
    emit_cond_increment(cb, lay.control_qubit, lay.data_qubits, lay.carry_ancillas)
    return cb.build()


def build_cond_decrement(n: int) -> Circuit:
    """Conditional modular decrement: the adjoint of the increment."""
    if n < 1:
        raise ValueError("decrement needs at least one data qubit")
    circ = build_cond_increment(n).adjoint()
    return Circuit(circ.width, circ.gates, circ.ancillas, None, f"dec_{n}")


def build_cond_ones_complement(n: int) -> Circuit:
    """Conditional bitwise NOT: |c=1>|x> -> |c=1>|2^n - x - 1>."""
    if n < 1:
        raise ValueError("one's complement needs at least one data qubit")
    cb = CircuitBuilder(n + 1, label=f"p1c_{n}")
    emit_cond_ones_complement(cb, n, range(n))
    return cb.build()


def build_cond_twos_complement(n: int) -> Circuit:
    """Conditional modular negation: |c=1>|x> -> |c=1>|(2^n - x) mod 2^n>.

    4n-4 elementary gates on n-2 carry ancillas (n >= 2; width 1 would be
    the identity and is rejected here).
    """
    if n < 2:
        raise ValueError("two's complement needs at least two data qubits")
    lay = increment_layout(n)
    cb = CircuitBuilder(n + 1 + len(lay.carry_ancillas), label=f"p2c_{n}",
                        ancillas=lay.carry_ancillas)
    emit_cond_twos_complement(cb, lay.control_qubit, lay.data_qubits, lay.carry_ancillas)
    return cb.build()


def build_or_gate() -> Circuit:
    """Single or-gate on wires (0, 1) with the result on wire 2."""
    cb = CircuitBuilder(3, label="or")
    emit_or_gate(cb, 0, 1, 2)
    return cb.build()


def or_tree_layout(n: int) -> GadgetLayout:
    anc = tuple(range(n, n + n - 1))
    return GadgetLayout(data_qubits=tuple(range(n)), tree_ancillas=anc,
                        root_index=anc[-1])


def build_or_tree(n: int, uncompute_internal: bool = False,
                  reset_root: bool = False) -> Circuit:
    """Or-tree over n data wires into n-1 ancillas (root on the last one).

    Gate totals land on the three standard cost tiers exactly: 3(n-1) for
    the bare compute, 6(n-1) with the uncompute pass, 12(n-1) with the
    additional evaluation that resets the root.  The uncompute passes restore
    every ancilla; payloads conditioned on the root belong between the
    compute and uncompute passes (see the transform builders).
    """
    if n < 2:
        raise ValueError("or-tree needs at least two data qubits")
    lay = or_tree_layout(n)
    cb = CircuitBuilder(2 * n - 1, label=f"or_tree_{n}", ancillas=lay.tree_ancillas)
    gates, _ = or_tree_gates(lay.data_qubits, lay.tree_ancillas)
    cb.extend(gates)
    if uncompute_internal or reset_root:
        cb.extend(g.inverse() for g in reversed(gates))
    if reset_root:
        cb.extend(gates)
        cb.extend(g.inverse() for g in reversed(gates))
    if not (uncompute_internal or reset_root):
        # only the bare compute leaves the internals dirty
        cb.ancillas = set()
    return cb.build()
