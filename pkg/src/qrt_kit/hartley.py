"""Quantum Hartley transform circuits: the recursive construction and the
LCU-based one, with the oblivious-amplitude-amplification helpers.

The LCU route implements V = (e^{-i pi/4} I + e^{i pi/4} T)/sqrt(2), where T
is the modular-negation permutation, then finishes with a QFT; one
amplification round with the widened select register makes the |00> branch
exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .gadgets import emit_cond_twos_complement, or_tree_gates
from .qft import emit_qft_with_swaps
from .simcore import Circuit, CircuitBuilder, Gate, _run_flat


@dataclass(frozen=True)
class LcuParams:
    """Angles and coefficients of the Hartley LCU: sin(theta) = 1/a with
    a = sqrt(2), widened to theta_prime so one round lands exactly on pi/2."""

    theta: float = math.pi / 4
    theta_prime: float = math.pi / 6
    rounds: int = 1
    coefficients: tuple[float, float] = (1 / math.sqrt(2), 1 / math.sqrt(2))

    def __post_init__(self):
        if abs((2 * self.rounds + 1) * self.theta_prime - math.pi / 2) > 1e-12:
            raise ValueError("(2k+1) * theta_prime must equal pi/2")
        ratio = math.sin(self.theta_prime) / math.sin(self.theta)
        if abs(ratio - 1 / math.sqrt(2)) > 1e-12:
            raise ValueError("sin(theta')/sin(theta) must be 1/sqrt(2), forcing P = H")


@dataclass(frozen=True)
class RotationR:
    """The real rotation applied to the recursion ancilla: angle 2*pi*b*y/N
    for register value y and low-bit b, so b=0 collapses to the identity."""

    y: int
    b: int
    N: int

    @property
    def angle(self) -> float:
        return 2.0 * math.pi * self.b * self.y / self.N

    def matrix(self) -> np.ndarray:
        th = self.angle
        return np.array([[math.cos(th), math.sin(th)],
                         [-math.sin(th), math.cos(th)]])


def rotation_r(y: int, b: int, N: int) -> np.ndarray:
    return RotationR(y, b, N).matrix()


def lcu_target_v(N: int) -> np.ndarray:
    """Dense V = (e^{-i pi/4} I + e^{i pi/4} T)/sqrt(2) for verification."""
    T = oracle.twos_complement_permutation(N)
    return (np.exp(-1j * math.pi / 4) * np.eye(N) + np.exp(1j * math.pi / 4) * T) / math.sqrt(2)


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------


def emit_ccry(cb: CircuitBuilder, c1: int, c2: int, target: int, beta: float):
    """Doubly controlled Ry(beta) from the fixed gate set.

    Rz is conjugated to Ry by S H ... H Sdg on the target; the conjugation is
    harmless when the controls are off, so it needs no controls itself.
    """
    cb.sdg(target)
    cb.h(target)
    cb.cphase(beta / 2, c2, target)
    cb.cnot(c1, c2)
    cb.cphase(-beta / 2, c2, target)
    cb.cnot(c1, c2)
    cb.cphase(beta / 2, c1, target)
    cb.cphase(-beta / 2, c1, c2)
    cb.h(target)
    cb.s(target)


def emit_ur(cb: CircuitBuilder, c: int, y_wires, b: int, N: int):
    """Rotation of wire c by 2*pi*b*y/N, one doubly controlled Ry per y bit."""
    for j, yw in enumerate(y_wires):
        emit_ccry(cb, yw, b, c, -4.0 * math.pi * (1 << j) / N)


def emit_flip_if_zero(cb: CircuitBuilder, control: int, y_wires, target: int,
                      tree_ancillas=(), naive: bool = False):
    """Flip ``target`` iff control=1 and the y register is all-zero."""
    y_wires = list(y_wires)
    if naive:
        for q in y_wires:
            cb.x(q)
        cb.mcx([control] + y_wires, target)
        for q in y_wires:
            cb.x(q)
        return
    if len(y_wires) == 1:
        cb.x(y_wires[0])
        cb.toffoli(control, y_wires[0], target)
        cb.x(y_wires[0])
        return
    gates, root = or_tree_gates(y_wires, tree_ancillas)
    cb.extend(gates)
    cb.x(root)
    cb.toffoli(control, root, target)
    cb.x(root)
    cb.extend(g.inverse() for g in reversed(gates))


# ---------------------------------------------------------------------------
# standalone gadget circuits (wire order b, y, c from the bottom)
# ---------------------------------------------------------------------------


def build_unitary_ur(n: int) -> Circuit:
    """U_R on wires (b=0, y=1..n, c=n+1) with rotation angle 2*pi*b*y/2^(n+1)."""
    if n < 1:
        raise ValueError("U_R needs at least one y qubit")
    cb = CircuitBuilder(n + 2, label=f"ur_{n}")
    emit_ur(cb, c=n + 1, y_wires=range(1, n + 1), b=0, N=1 << (n + 1))
    return cb.build()


def build_cx_zero_detect(n: int, naive: bool = False) -> Circuit:
    """Flip b iff c=1 and the n-qubit y register is zero.

    Wires: b=0, y=1..n, c=n+1; the or-tree variant puts its ancillas above c.
    """
    if n < 1:
        raise ValueError("zero detect needs at least one y qubit")
    n_anc = 0 if (naive or n == 1) else n - 1
    cb = CircuitBuilder(n + 2 + n_anc, label=f"cx_zero_{n}",
                        ancillas=range(n + 2, n + 2 + n_anc))
    emit_flip_if_zero(cb, control=n + 1, y_wires=range(1, n + 1), target=0,
                      tree_ancillas=range(n + 2, n + 2 + n_anc), naive=naive)
    return cb.build()


# ---------------------------------------------------------------------------
# LCU construction
# ---------------------------------------------------------------------------


def _w_gates(n: int, sel: int, carries) -> list[Gate]:
    carries = tuple(carries)
    cb = CircuitBuilder((max(carries) if carries else sel) + 1)
    cb.h(sel)
    emit_cond_twos_complement(cb, sel, range(n), carries)
    cb.rz(math.pi / 2, sel)
    cb.h(sel)
    return cb.gates()


def build_unitary_w(n: int) -> Circuit:
    """The LCU block unitary W on (data 0..n-1, select n, carries above).

    Projecting onto select=0 gives exactly V/sqrt(2); the Rz(pi/2) supplies
    the e^{-i pi/4}, e^{i pi/4} pair without any extra global phase.
    """
    if n < 2:
        raise ValueError("W needs at least two data qubits")
    carries = tuple(range(n + 1, 2 * n - 1))
    cb = CircuitBuilder(2 * n - 1, label=f"w_{n}", ancillas=carries)
    cb.extend(_w_gates(n, n, carries))
    return cb.build()


def build_qht_lcu(n: int) -> Circuit:
    """Hartley transform via LCU: S' W' on |00>|psi> followed by QFT_N.

    Wires: data 0..n-1, select n, widening ancilla n+1, carries above.  The
    two select wires come back to |00> exactly, so the data action equals
    the Hartley matrix.
    """
    if n < 2:
        raise ValueError("LCU Hartley transform needs at least two data qubits")
    sel, p = n, n + 1
    carries = tuple(range(n + 2, 2 * n))
    cb = CircuitBuilder(2 * n, label=f"qht_lcu_{n}",
                        ancillas=(sel, p) + carries)
    w_prime = [Gate("H", targets=(p,))] + _w_gates(n, sel, carries)
    reflect = [Gate("Z", targets=(p,)), Gate("Z", targets=(sel,)),
               Gate("CPhase", (p,), (sel,), math.pi)]
    cb.extend(w_prime)
    cb.extend(reflect)
    cb.extend(g.inverse() for g in reversed(w_prime))
    cb.extend(reflect)
    cb.global_phase(math.pi)
    cb.extend(w_prime)
    emit_qft_with_swaps(cb, range(n))
    return cb.build()


# ---------------------------------------------------------------------------
# recursive construction
# ---------------------------------------------------------------------------


def build_qht_recursive(n: int, naive_zero_detect: bool = False) -> Circuit:
    """Recursive Hartley transform on n data qubits.

    One fresh recursion ancilla per level (n-1 in total, wires n..2n-2) plus
    a shared scratch pool (wires 2n-1..3n-4) for carry and or-tree qubits.
    Each level's closing wire swap is tracked and emitted as a single final
    relabeling, so it costs no gates.
    """
    if n < 1:
        raise ValueError("Hartley transform needs at least one qubit")
    if n == 1:
        cb = CircuitBuilder(1, label="qht_rec_1")
        cb.h(0)
        return cb.build()
    level_anc = list(range(n, 2 * n - 1))
    pool = list(range(2 * n - 1, 3 * n - 3))
    cb = CircuitBuilder(3 * n - 3, label=f"qht_rec_{n}",
                        ancillas=level_anc + pool)
    phys = list(range(n))  # phys[j] = wire currently holding data bit j
    cb.h(phys[n - 1])  # level-1 base case on the innermost register
    for k in range(2, n + 1):
        c = level_anc[k - 2]
        b = phys[n - k]
        y = [phys[j] for j in range(n - k + 1, n)]
        N_k = 1 << k
        cb.h(c)
        emit_cond_twos_complement(cb, c, y, pool)
        emit_ur(cb, c, y, b, N_k)
        emit_cond_twos_complement(cb, c, y, pool)
        # zero-phase fix: (-1)^(c & b & [y = 0]), as an H(b)-conjugated flip
        cb.h(b)
        emit_flip_if_zero(cb, c, y, b, tree_ancillas=pool, naive=naive_zero_detect)
        cb.h(b)
        cb.h(c)
        cb.cnot(b, c)
        cb.h(b)
        # wire renaming |0>|y>|b> -> |0>|b>|y>, folded into the final relabeling
        phys[n - k:n] = [phys[j] for j in range(n - k + 1, n)] + [b]
    relabeling = list(range(cb.width))
    for j, wire in enumerate(phys):
        relabeling[wire] = j
    return cb.build(relabeling=tuple(relabeling))


# ---------------------------------------------------------------------------
# oblivious amplitude amplification check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AmplificationReport:
    """Measured overlap of S'^k W' |00>|psi> with |00> V|psi>."""

    n: int
    rounds: int
    overlap: complex
    expected: float

    @property
    def error(self) -> float:
        return abs(self.overlap - self.expected)


def check_oblivious_amplification(n: int, rounds: int, seed: int = 20240901) -> AmplificationReport:
    """Run k amplification rounds on a random state and measure the overlap
    with the ideal branch; the amplification law predicts sin((2k+1) pi/6)."""
    if n < 2:
        raise ValueError("amplification check needs at least two data qubits")
    if rounds < 0:
        raise ValueError("negative round count")
    sel, p = n, n + 1
    carries = tuple(range(n + 2, 2 * n))
    cb = CircuitBuilder(2 * n)
    w_prime = [Gate("H", targets=(p,))] + _w_gates(n, sel, carries)
    reflect = [Gate("Z", targets=(p,)), Gate("Z", targets=(sel,)),
               Gate("CPhase", (p,), (sel,), math.pi)]
    cb.extend(w_prime)
    for _ in range(rounds):
        cb.extend(reflect)
        cb.extend(g.inverse() for g in reversed(w_prime))
        cb.extend(reflect)
        cb.global_phase(math.pi)
        cb.extend(w_prime)
    circuit = cb.build()

    N = 1 << n
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=N) + 1j * rng.normal(size=N)
    psi /= np.linalg.norm(psi)
    state = np.zeros(1 << circuit.width, dtype=complex)
    state[:N] = psi  # ancillas above the data register start (and stay) at 0
    out = _run_flat(state, circuit)
    target = np.zeros_like(state)
    target[:N] = lcu_target_v(N) @ psi
    overlap = complex(np.vdot(target, out))
    expected = math.sin((2 * rounds + 1) * math.pi / 6)
    return AmplificationReport(n=n, rounds=rounds, overlap=overlap, expected=expected)
