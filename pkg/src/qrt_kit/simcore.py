"""Elementary gate set, circuit IR, statevector simulation and unitary extraction.

Conventions used throughout the package:

* qubit 0 is the least significant bit of a register value, so the basis
  label of a classical assignment is ``sum(bit[w] << w)``;
* control and ancilla qubits sit on higher wire indices than the data
  register they serve;
* a ``Circuit`` may carry a final ``relabeling`` -- a gate-free renaming of
  wires applied after the last gate.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

SQRT2_INV = 1.0 / math.sqrt(2.0)

# kind -> (n_controls, n_targets, parameterized); MCX is variadic and handled apart
_GATE_SIGNATURES = {
    "X": (0, 1, False),
    "Y": (0, 1, False),
    "Z": (0, 1, False),
    "H": (0, 1, False),
    "S": (0, 1, False),
    "Sdg": (0, 1, False),
    "Phase": (0, 1, True),
    "Rz": (0, 1, True),
    "CPhase": (1, 1, True),
    "CNOT": (1, 1, False),
    "CH": (1, 1, False),
    "CS": (1, 1, False),
    "CSdg": (1, 1, False),
    "Toffoli": (2, 1, False),
    "SWAP": (0, 2, False),
    "GlobalPhase": (0, 0, True),
    "MCX": (-1, 1, False),
}

_SELF_INVERSE = {"X", "Y", "Z", "H", "CNOT", "CH", "Toffoli", "SWAP", "MCX"}
_INVERSE_PAIRS = {"S": "Sdg", "Sdg": "S", "CS": "CSdg", "CSdg": "CS"}


@dataclass(frozen=True)
class Gate:
    """One elementary gate instance: kind, control wires, target wires, angle."""

    kind: str
    controls: tuple[int, ...] = ()
    targets: tuple[int, ...] = ()
    angle: float | None = None

    def __post_init__(self):
        sig = _GATE_SIGNATURES.get(self.kind)
        if sig is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        n_ctrl, n_tgt, parameterized = sig
        if self.kind == "MCX":
            if len(self.controls) < 1:
                raise ValueError("MCX requires at least one control")
        elif len(self.controls) != n_ctrl:
            raise ValueError(f"{self.kind} takes {n_ctrl} controls, got {len(self.controls)}")
        if len(self.targets) != n_tgt:
            raise ValueError(f"{self.kind} takes {n_tgt} targets, got {len(self.targets)}")
        if parameterized:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} requires a finite angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        ops = self.controls + self.targets
        if len(set(ops)) != len(ops):
            raise ValueError(f"gate operands must be distinct, got {ops}")
        if any(q < 0 for q in ops):
            raise ValueError("negative wire index")

    @property
    def operands(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def inverse(self) -> "Gate":
        if self.kind in _SELF_INVERSE:
            return self
        if self.kind in _INVERSE_PAIRS:
            return Gate(_INVERSE_PAIRS[self.kind], self.controls, self.targets)
        return Gate(self.kind, self.controls, self.targets, -self.angle)

    def remapped(self, wire_map) -> "Gate":
        return Gate(
            self.kind,
            tuple(wire_map[q] for q in self.controls),
            tuple(wire_map[q] for q in self.targets),
            self.angle,
        )


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed-width register.

    ``ancillas`` documents wires that enter and leave in |0>; ``relabeling``
    maps each wire to its final name (``relabeling[w]`` is where the content
    of wire ``w`` ends up).
    """

    width: int
    gates: tuple[Gate, ...] = ()
    ancillas: frozenset[int] = frozenset()
    relabeling: tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("negative width")
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "ancillas", frozenset(self.ancillas))
        for g in self.gates:
            for q in g.operands:
                if q >= self.width:
                    raise ValueError(f"gate operand {q} outside width {self.width}")
        if any(a >= self.width or a < 0 for a in self.ancillas):
            raise ValueError("ancilla index outside register")
        if self.relabeling is not None:
            object.__setattr__(self, "relabeling", tuple(self.relabeling))
            if sorted(self.relabeling) != list(range(self.width)):
                raise ValueError("relabeling must be a permutation of the wires")

    @property
    def data_wires(self) -> tuple[int, ...]:
        return tuple(w for w in range(self.width) if w not in self.ancillas)

    def adjoint(self) -> "Circuit":
        return adjoint(self)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over 2**width basis labels."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        n = amps.shape[0]
        if amps.ndim != 1 or n == 0 or n & (n - 1):
            raise ValueError("amplitude vector length must be a power of two")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-12:
            raise ValueError("state vector is not normalized")

    @property
    def width(self) -> int:
        return self.amplitudes.shape[0].bit_length() - 1

    @classmethod
    def basis(cls, width: int, value: int) -> "StateVector":
        if not 0 <= value < (1 << width):
            raise ValueError(f"basis value {value} outside {width}-qubit register")
        amps = np.zeros(1 << width, dtype=complex)
        amps[value] = 1.0
        return cls(amps)


@dataclass(frozen=True)
class DenseUnitary:
    """Square complex matrix with a unitarity check on construction."""

    entries: np.ndarray
    tolerance: float = 1e-10

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("expected a square matrix")
        dim = mat.shape[0]
        defect = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
        if defect >= self.tolerance:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class GateCountReport:
    """Per-kind and total elementary gate counts for one circuit."""

    counts: dict
    total: int
    width: int
    ancilla_count: int
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.total != sum(self.counts.values()):
            raise ValueError("total does not match per-kind counts")


# ---------------------------------------------------------------------------
# gate matrices
# ---------------------------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) * SQRT2_INV
_FIXED_1Q = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1, -1]).astype(complex),
    "H": _H,
    "S": np.diag([1, 1j]).astype(complex),
    "Sdg": np.diag([1, -1j]).astype(complex),
}


def _target_matrix(gate: Gate) -> np.ndarray:
    """Unitary acting on the target wires alone (controls handled separately)."""
    kind = gate.kind
    if kind in _FIXED_1Q:
        return _FIXED_1Q[kind]
    if kind == "Phase":
        return np.diag([1, np.exp(1j * gate.angle)])
    if kind == "Rz":
        return np.diag([np.exp(-0.5j * gate.angle), np.exp(0.5j * gate.angle)])
    if kind == "CPhase":
        return np.diag([1, np.exp(1j * gate.angle)])
    if kind in ("CNOT", "Toffoli", "MCX"):
        return _FIXED_1Q["X"]
    if kind == "CH":
        return _H
    if kind == "CS":
        return np.diag([1, 1j]).astype(complex)
    if kind == "CSdg":
        return np.diag([1, -1j]).astype(complex)
    if kind == "SWAP":
        m = np.eye(4, dtype=complex)
        m[[1, 2]] = m[[2, 1]]
        return m
    raise ValueError(f"no matrix for kind {kind!r}")


def operand_matrix(gate: Gate) -> np.ndarray:
    """Full matrix over the gate's operand wires, first operand = most
    significant bit of the matrix index (textbook layout)."""
    tgt = _target_matrix(gate)
    k = len(gate.controls)
    if k == 0:
        return tgt
    dim = (1 << k) * tgt.shape[0]
    full = np.eye(dim, dtype=complex)
    full[dim - tgt.shape[0]:, dim - tgt.shape[0]:] = tgt
    return full


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------


def _apply_operand(tensor: np.ndarray, mat: np.ndarray, wires, width: int) -> np.ndarray:
    """Apply ``mat`` over ``wires`` of a state tensor shaped (2,)*width [+ batch]."""
    k = len(wires)
    axes = [width - 1 - w for w in wires]
    mat_t = mat.reshape((2,) * (2 * k))
    out = np.tensordot(mat_t, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


_DIAGONAL_KINDS = {"Z", "S", "Sdg", "Phase", "Rz", "CPhase", "CS", "CSdg"}
_FLIP_KINDS = {"X", "CNOT", "Toffoli", "MCX"}


def _slice(tensor, assignments):
    # length-1 slices keep the result an assignable view even when every
    # axis is pinned (integer indexing would collapse to a scalar)
    idx = [slice(None)] * tensor.ndim
    for axis, bit in assignments:
        idx[axis] = slice(bit, bit + 1)
    return tensor[tuple(idx)]


def _apply_gate_tensor(tensor: np.ndarray, gate: Gate, width: int) -> np.ndarray:
    """Apply one gate in place on a (2,)*width [+ batch] tensor.

    Diagonal gates scale basis slices, X-family gates swap them, and the
    Hadamard family is a two-slice butterfly; nothing ever transposes or
    copies the full tensor.
    """
    kind = gate.kind
    if kind == "GlobalPhase":
        tensor *= np.exp(1j * gate.angle)
        return tensor
    ctrl = [(width - 1 - w, 1) for w in gate.controls]
    taxes = [width - 1 - w for w in gate.targets]
    if kind in _FLIP_KINDS:
        a = _slice(tensor, ctrl + [(taxes[0], 0)])
        b = _slice(tensor, ctrl + [(taxes[0], 1)])
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
        return tensor
    if kind == "SWAP":
        a = _slice(tensor, [(taxes[0], 0), (taxes[1], 1)])
        b = _slice(tensor, [(taxes[0], 1), (taxes[1], 0)])
        tmp = a.copy()
        a[...] = b
        b[...] = tmp
        return tensor
    if kind in _DIAGONAL_KINDS:
        diag = np.diagonal(_target_matrix(gate))
        for bit in (0, 1):
            if diag[bit] != 1:
                view = _slice(tensor, ctrl + [(taxes[0], bit)])
                view *= diag[bit]
        return tensor
    if kind in ("H", "CH"):
        a = _slice(tensor, ctrl + [(taxes[0], 0)])
        b = _slice(tensor, ctrl + [(taxes[0], 1)])
        tmp = (a + b) * SQRT2_INV
        b[...] = (a - b) * SQRT2_INV
        a[...] = tmp
        return tensor
    if kind == "Y":
        a = _slice(tensor, [(taxes[0], 0)])
        b = _slice(tensor, [(taxes[0], 1)])
        tmp = -1j * b
        b[...] = 1j * a
        a[...] = tmp
        return tensor
    out = _apply_operand(tensor, operand_matrix(gate), gate.operands, width)
    tensor[...] = out
    return tensor


def _relabel_rows(flat: np.ndarray, relabeling, width: int) -> np.ndarray:
    idx = np.arange(1 << width)
    out_idx = np.zeros_like(idx)
    for w, dest in enumerate(relabeling):
        out_idx |= ((idx >> w) & 1) << dest
    out = np.empty_like(flat)
    out[out_idx] = flat[idx]
    return out


def _run_flat(flat: np.ndarray, circuit: Circuit) -> np.ndarray:
    """Run a circuit on a flat (dim,) or batched (dim, B) amplitude array.

    The input buffer is consumed (gates apply in place); callers pass arrays
    they own.
    """
    width = circuit.width
    batch = flat.shape[1:] if flat.ndim > 1 else ()
    tensor = flat.reshape((2,) * width + batch)
    for gate in circuit.gates:
        tensor = _apply_gate_tensor(tensor, gate, width)
    flat = tensor.reshape((1 << width,) + batch)
    if circuit.relabeling is not None:
        flat = _relabel_rows(flat, circuit.relabeling, width)
    return flat


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate to a state, returning the new state."""
    width = state.width
    for q in gate.operands:
        if q >= width:
            raise ValueError(f"gate operand {q} outside {width}-qubit state")
    tensor = state.amplitudes.copy().reshape((2,) * width)
    return StateVector(_apply_gate_tensor(tensor, gate, width).reshape(-1))


STATEVECTOR_WIDTH_CAP = 20


def run_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply the circuit's gates in order, then its relabeling."""
    if state.width != circuit.width:
        raise ValueError(
            f"state width {state.width} does not match circuit width {circuit.width}"
        )
    if circuit.width > STATEVECTOR_WIDTH_CAP:
        raise ValueError(f"statevector runs are capped at {STATEVECTOR_WIDTH_CAP} qubits")
    return StateVector(_run_flat(state.amplitudes.copy(), circuit))


def circuit_unitary(circuit: Circuit, cap: int = 12) -> DenseUnitary:
    """Dense unitary of the circuit; column j is the image of basis state |j>."""
    if circuit.width > cap:
        raise ValueError(f"width {circuit.width} above unitary-extraction cap {cap}")
    dim = 1 << circuit.width
    return DenseUnitary(_run_flat(np.eye(dim, dtype=complex), circuit))


def data_register_action(circuit: Circuit, data_wires=None, batch: int = 128):
    """Action of the circuit on a data sub-register with all other wires |0>.

    Returns ``(matrix, residual)`` where ``matrix[r, c]`` is the amplitude of
    data basis state r given input c, and ``residual`` is the largest output
    amplitude found outside the all-ancillas-zero subspace.  A residual at
    rounding level certifies that the ancillas are returned clean and that
    ``matrix`` is the whole story.
    """
    if data_wires is None:
        data_wires = circuit.data_wires
    data_wires = list(data_wires)
    d = len(data_wires)
    dim = 1 << circuit.width
    in_labels = np.zeros(1 << d, dtype=np.int64)
    for pos, w in enumerate(data_wires):
        in_labels |= ((np.arange(1 << d) >> pos) & 1) << w
    rows = np.zeros(dim, dtype=np.int64)
    for pos, w in enumerate(data_wires):
        rows |= ((np.arange(dim) >> w) & 1) << pos
    on_subspace = np.ones(dim, dtype=bool)
    for w in range(circuit.width):
        if w not in data_wires:
            on_subspace &= ((np.arange(dim) >> w) & 1) == 0
    matrix = np.zeros((1 << d, 1 << d), dtype=complex)
    residual = 0.0
    for start in range(0, 1 << d, batch):
        cols = in_labels[start:start + batch]
        block = np.zeros((dim, len(cols)), dtype=complex)
        block[cols, np.arange(len(cols))] = 1.0
        out = _run_flat(block, circuit)
        off = out[~on_subspace, :]
        if off.size:
            residual = max(residual, float(np.max(np.abs(off))))
        matrix[rows[on_subspace], start:start + len(cols)] = out[on_subspace, :]
    return matrix, residual


# ---------------------------------------------------------------------------
# circuit-level operations
# ---------------------------------------------------------------------------


def adjoint(circuit: Circuit) -> Circuit:
    """Inverse circuit: reversed inverted gates; a relabeling is inverted and
    pushed through the gates so it can stay in final position."""
    relab = circuit.relabeling
    if relab is None:
        gates = tuple(g.inverse() for g in reversed(circuit.gates))
        inv_relab = None
    else:
        gates = tuple(g.inverse().remapped(relab) for g in reversed(circuit.gates))
        inv_relab = [0] * circuit.width
        for w, dest in enumerate(relab):
            inv_relab[dest] = w
        inv_relab = tuple(inv_relab)
    label = circuit.label + "^dag" if circuit.label else ""
    return Circuit(circuit.width, gates, circuit.ancillas, inv_relab, label)


def count_gates(circuit: Circuit) -> GateCountReport:
    """Count elementary gates: every instance counts one, except MCX(k>=3)
    which is charged 2k-3 (ancilla-free decomposition estimate).  Per-kind
    counts carry the same weighting so they always sum to the total; the raw
    MCX instance count goes into the notes."""
    counts = Counter()
    swaps = 0
    mcx_instances = 0
    for g in circuit.gates:
        if g.kind == "MCX":
            mcx_instances += 1
            counts["MCX"] += max(2 * len(g.controls) - 3, 1)
        else:
            counts[g.kind] += 1
        if g.kind == "SWAP":
            swaps += 1
    total = sum(counts.values())
    notes = {"swap_gates": swaps, "total_without_swaps": total - swaps}
    if mcx_instances:
        notes["mcx_instances"] = mcx_instances
    return GateCountReport(
        counts=dict(counts),
        total=total,
        width=circuit.width,
        ancilla_count=len(circuit.ancillas),
        notes=notes,
    )


# ---------------------------------------------------------------------------
# builder
# ---------------------------------------------------------------------------


class CircuitBuilder:
    """Mutable gate-list accumulator; ``build()`` freezes it into a Circuit."""

    def __init__(self, width: int, label: str = "", ancillas=()):
        self.width = width
        self.label = label
        self.ancillas = set(ancillas)
        self._gates: list[Gate] = []

    def gate(self, g: Gate):
        self._gates.append(g)
        return self

    def extend(self, gates):
        if isinstance(gates, Circuit):
            if gates.relabeling is not None:
                raise ValueError("cannot splice a circuit that carries a relabeling")
            gates = gates.gates
        self._gates.extend(gates)
        return self

    def x(self, q): return self.gate(Gate("X", targets=(q,)))
    def y(self, q): return self.gate(Gate("Y", targets=(q,)))
    def z(self, q): return self.gate(Gate("Z", targets=(q,)))
    def h(self, q): return self.gate(Gate("H", targets=(q,)))
    def s(self, q): return self.gate(Gate("S", targets=(q,)))
    def sdg(self, q): return self.gate(Gate("Sdg", targets=(q,)))
    def phase(self, theta, q): return self.gate(Gate("Phase", targets=(q,), angle=theta))
    def rz(self, theta, q): return self.gate(Gate("Rz", targets=(q,), angle=theta))
    def cphase(self, theta, c, t): return self.gate(Gate("CPhase", (c,), (t,), theta))
    def cnot(self, c, t): return self.gate(Gate("CNOT", (c,), (t,)))
    def ch(self, c, t): return self.gate(Gate("CH", (c,), (t,)))
    def cs(self, c, t): return self.gate(Gate("CS", (c,), (t,)))
    def csdg(self, c, t): return self.gate(Gate("CSdg", (c,), (t,)))
    def toffoli(self, c1, c2, t): return self.gate(Gate("Toffoli", (c1, c2), (t,)))
    def swap(self, a, b): return self.gate(Gate("SWAP", targets=(a, b)))
    def mcx(self, controls, t): return self.gate(Gate("MCX", tuple(controls), (t,)))
    def global_phase(self, theta): return self.gate(Gate("GlobalPhase", angle=theta))

    def gates(self) -> list[Gate]:
        return list(self._gates)

    def build(self, relabeling=None) -> Circuit:
        return Circuit(self.width, tuple(self._gates), frozenset(self.ancillas),
                       relabeling, self.label)


# ---------------------------------------------------------------------------
# textual export / import
# ---------------------------------------------------------------------------

_EXPORT_NAMES = {k: k.lower() for k in _GATE_SIGNATURES}
_IMPORT_NAMES = {v: k for k, v in _EXPORT_NAMES.items()}


def export_circuit(circuit: Circuit) -> str:
    """One gate per line: lowercase kind, angle in radians to 17 significant
    digits, operands as q[i] with controls before targets."""
    lines = []
    for g in circuit.gates:
        name = _EXPORT_NAMES[g.kind]
        head = f"{name}({g.angle:.17g})" if g.angle is not None else name
        ops = ",".join(f"q[{q}]" for q in g.operands)
        lines.append(f"{head} {ops}".rstrip())
    if circuit.relabeling is not None:
        moves = ",".join(f"{w}->{d}" for w, d in enumerate(circuit.relabeling))
        lines.append(f"# relabel: {moves}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_circuit(text: str, width: int | None = None, label: str = "") -> Circuit:
    """Parse the export format back into a Circuit.

    Width defaults to one past the highest wire mentioned; pass it explicitly
    for circuits whose top wires are untouched.
    """
    gates = []
    relabeling = None
    max_wire = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("relabel:"):
                moves = {}
                for item in body[len("relabel:"):].split(","):
                    src, dest = item.strip().split("->")
                    moves[int(src)] = int(dest)
                relabeling = moves
                max_wire = max([max_wire, *moves, *moves.values()])
            continue
        head, _, ops = line.partition(" ")
        if "(" in head:
            name, arg = head[:-1].split("(", 1)
            angle = float(arg)
        else:
            name, angle = head, None
        kind = _IMPORT_NAMES.get(name)
        if kind is None:
            raise ValueError(f"unknown gate name {name!r}")
        wires = []
        if ops.strip():
            for item in ops.split(","):
                item = item.strip()
                if not (item.startswith("q[") and item.endswith("]")):
                    raise ValueError(f"bad operand {item!r}")
                wires.append(int(item[2:-1]))
        n_ctrl = _GATE_SIGNATURES[kind][0]
        if kind == "MCX":
            n_ctrl = len(wires) - 1
        gates.append(Gate(kind, tuple(wires[:n_ctrl]), tuple(wires[n_ctrl:]), angle))
        if wires:
            max_wire = max(max_wire, max(wires))
    if width is None:
        width = max_wire + 1
    relab_tuple = None
    if relabeling is not None:
        relab_tuple = tuple(relabeling.get(w, w) for w in range(width))
    return Circuit(width, tuple(gates), frozenset(), relab_tuple, label)
