"""Cosine and sine transform circuits of Types I, II, III and IV.

Every builder works on a transform register of n data wires (0..n-1) plus
one control wire (n); scratch ancillas sit above the control and are listed
in ``Circuit.ancillas``.  The control selects the cosine (|0>) or sine (|1>)
branch of the doubled-size Fourier identity realized by the circuit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .gadgets import (
    emit_cond_increment,
    emit_cond_ones_complement,
    emit_cond_twos_complement,
    or_tree_gates,
)
from .qft import emit_qft_with_swaps
from .simcore import Circuit, CircuitBuilder, Gate, data_register_action


class AmbiguousEmbeddingError(ValueError):
    """Two reference columns coincide within tolerance, so no unique index
    embedding exists (degenerate transform size)."""


def _inverses(gates):
    return [g.inverse() for g in reversed(gates)]


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------


def _conditioned_rotation(data, pool, payload) -> list[Gate]:
    """Or-tree compute, ``payload(root)`` gates, or-tree uncompute.

    This is the 6(n-1)-gate pattern: the tree is evaluated once and reversed
    once, and the payload acts while the root holds [register != 0].
    """
    data = list(data)
    if len(data) == 1:
        # degenerate tree: the single data wire is its own root
        return payload(data[0])
    tree, root = or_tree_gates(data, pool)
    return tree + payload(root) + _inverses(tree)


def _d_gates(n: int, c: int, pool) -> list[Gate]:
    """D: apply S then H to the control, conditioned on the data being nonzero."""
    def payload(root):
        return [Gate("CS", (root,), (c,)), Gate("CH", (root,), (c,))]
    return _conditioned_rotation(range(n), pool, payload)


def _t_gates(n: int, c: int, pool) -> list[Gate]:
    """T = P_2C . D with the transform control driving the negation."""
    cb = CircuitBuilder(c + 1 + len(pool))
    cb.extend(_d_gates(n, c, pool))
    emit_cond_twos_complement(cb, c, range(n), pool)
    return cb.gates()


def _p2c_gates(n: int, c: int, pool) -> list[Gate]:
    cb = CircuitBuilder(c + 1 + len(pool))
    emit_cond_twos_complement(cb, c, range(n), pool)
    return cb.gates()


def _qft_gates(wires) -> list[Gate]:
    cb = CircuitBuilder(max(wires) + 1)
    emit_qft_with_swaps(cb, wires)
    return cb.gates()


def _scratch_pool(n: int) -> tuple[int, ...]:
    # shared by the or-tree (n-1 wires) and the carry register (n-2 wires)
    return tuple(range(n + 1, 2 * n))


def build_t_gate(n: int) -> Circuit:
    """The doubling unitary T: |0,0> and |1,0> fixed, |0,x> spread into
    (|0,x> + |1,N-x>)/sqrt(2) and |1,x> into i(|0,x> - |1,N-x>)/sqrt(2)."""
    if n < 2:
        raise ValueError("T needs at least two data qubits")
    pool = _scratch_pool(n)
    cb = CircuitBuilder(2 * n, label=f"t_gate_{n}", ancillas=pool)
    cb.extend(_t_gates(n, n, pool))
    return cb.build()


# ---------------------------------------------------------------------------
# Type I
# ---------------------------------------------------------------------------


def build_type1_core(n: int) -> Circuit:
    """The bare doubled-Fourier sandwich T^dag QFT_2N T, whose blocks are the
    Type-I cosine matrix and i times the Type-I sine matrix."""
    if n < 2:
        raise ValueError("Type-I transform needs at least two data qubits")
    pool = _scratch_pool(n)
    t = _t_gates(n, n, pool)
    cb = CircuitBuilder(2 * n, label=f"qcst1_core_{n}", ancillas=pool)
    cb.extend(t)
    cb.extend(_qft_gates(range(n + 1)))
    cb.extend(_inverses(t))
    return cb.build()


def build_qcst_type1(n: int) -> Circuit:
    """Simultaneous Type-I transforms: cosine branch on control 0, sine on 1.

    The closing S^dag that clears the sine block's phase i is conditioned on
    the data register being nonzero (sharing the adjacent or-tree pass), so
    the |1,0> state -- which belongs to the cosine block -- is untouched and
    both blocks come out exactly real.
    """
    if n < 2:
        raise ValueError("Type-I transform needs at least two data qubits")
    c = n
    pool = _scratch_pool(n)
    t = _t_gates(n, c, pool)
    cb = CircuitBuilder(2 * n, label=f"qcst1_{n}", ancillas=pool)
    cb.extend(t)
    cb.extend(_qft_gates(range(n + 1)))
    cb.extend(_inverses(_p2c_gates(n, c, pool)))

    def payload(root):  # D^dag followed by the phase-clearing S^dag
        return [Gate("CH", (root,), (c,)), Gate("CSdg", (root,), (c,)),
                Gate("CSdg", (root,), (c,))]

    cb.extend(_conditioned_rotation(range(n), pool, payload))
    return cb.build()


def build_qst1_optimized(n: int) -> Circuit:
    """Sine-only Type-I transform with no zero-detection anywhere.

    Valid on inputs 1..N-1 (the sine transform's domain); the ancilla wire n
    returns to |0> there.  Contains no gate with more than two controls.
    """
    if n < 2:
        raise ValueError("optimized sine transform needs at least two data qubits")
    a = n
    carries = tuple(range(n + 1, 2 * n - 1))
    cb = CircuitBuilder(2 * n - 1, label=f"qst1_opt_{n}", ancillas=carries)
    cb.x(a)
    cb.h(a)
    emit_cond_twos_complement(cb, a, range(n), carries)
    emit_qft_with_swaps(cb, range(n + 1))
    emit_cond_twos_complement(cb, a, range(n), carries)
    cb.h(a)
    cb.sdg(a)
    cb.x(a)
    return cb.build()


# ---------------------------------------------------------------------------
# diagonal families (Type II / IV)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalFamily:
    """The 2x2 diagonal factors of the Type-II/IV phase ladders for N = 2^n:
    L_j = diag(1, w_4N^{2^(j-1)}), K_j = diag(w_4N^{-2^(j-1)}, 1) = X L_j* X,
    C = diag(1, w_4N^{-1}), with j running 1..n."""

    n: int

    @property
    def omega(self) -> complex:
        return np.exp(2j * np.pi / (4 << self.n))

    def l_mat(self, j: int) -> np.ndarray:
        self._check(j)
        return np.diag([1.0, self.omega ** (1 << (j - 1))])

    def k_mat(self, j: int) -> np.ndarray:
        self._check(j)
        return np.diag([self.omega ** -(1 << (j - 1)), 1.0])

    def c_mat(self) -> np.ndarray:
        return np.diag([1.0, self.omega ** -1])

    def delta1(self) -> np.ndarray:
        out = np.ones(1, dtype=complex)
        for j in range(1, self.n + 1):  # L_n (x) ... (x) L_1
            out = np.kron(np.diagonal(self.l_mat(j)), out)
        return out

    def _check(self, j: int):
        if not 1 <= j <= self.n:
            raise ValueError(f"ladder index {j} outside 1..{self.n}")


def _l_ladder(n: int, c: int, control_zero: bool, conjugate: bool) -> list[Gate]:
    """Per-bit phase ladder diag(1, w_4N^{2^j}) on each data wire, applied on
    the chosen control branch; ``conjugate`` negates the angles."""
    N = 1 << n
    sign = -1.0 if conjugate else 1.0
    gates = []
    for j in range(n):
        theta = sign * 2.0 * math.pi * (1 << j) / (4 * N)
        if control_zero:
            gates += [Gate("X", targets=(c,)),
                      Gate("CPhase", (c,), (j,), theta),
                      Gate("X", targets=(c,))]
        else:
            gates.append(Gate("CPhase", (c,), (j,), theta))
    return gates


def _k_ladder(n: int, c: int) -> list[Gate]:
    """K_j = X L_j^* X on each data wire, applied on the control-1 branch."""
    N = 1 << n
    gates = []
    for j in range(n):
        theta = -2.0 * math.pi * (1 << j) / (4 * N)
        gates += [Gate("X", targets=(j,)),
                  Gate("CPhase", (c,), (j,), theta),
                  Gate("X", targets=(j,))]
    return gates


def _d1_gates(n: int, c: int) -> list[Gate]:
    N = 1 << n
    gates = _l_ladder(n, c, control_zero=True, conjugate=False)
    gates += _k_ladder(n, c)
    gates.append(Gate("Phase", targets=(c,), angle=-2.0 * math.pi / (4 * N)))
    return gates


def _d2_gates(n: int, c: int, corrected: bool) -> list[Gate]:
    if not corrected:
        return _d1_gates(n, c)
    N = 1 << n
    gates = _l_ladder(n, c, control_zero=True, conjugate=False)
    gates += _l_ladder(n, c, control_zero=False, conjugate=True)
    gates.append(Gate("Phase", targets=(c,), angle=-2.0 * math.pi / (4 * N)))
    return gates


def build_d1(n: int) -> Circuit:
    """The Type-II diagonal: w_4N^x on control 0 and w_4N^{x-N} on control 1."""
    if n < 1:
        raise ValueError("D1 needs at least one data qubit")
    cb = CircuitBuilder(n + 1, label=f"d1_{n}")
    cb.extend(_d1_gates(n, n))
    return cb.build()


def build_d2(n: int, corrected: bool = True) -> Circuit:
    """The Type-IV diagonal; ``corrected=False`` reproduces the defective
    variant with the wrong control-1 block, kept for the regression test."""
    if n < 1:
        raise ValueError("D2 needs at least one data qubit")
    label = f"d2_{n}" if corrected else f"d2_incorrect_{n}"
    cb = CircuitBuilder(n + 1, label=label)
    cb.extend(_d2_gates(n, n, corrected))
    return cb.build()


# ---------------------------------------------------------------------------
# Type II / III
# ---------------------------------------------------------------------------


def _g_gates(n: int, c: int, pool) -> list[Gate]:
    """G: H then S on the control, undone (as S^dag H S^dag) when the data
    register is zero.  One or-tree evaluation serves compute and recovery."""
    def payload(root):
        return [Gate("X", targets=(root,)),
                Gate("CSdg", (root,), (c,)),
                Gate("CH", (root,), (c,)),
                Gate("CSdg", (root,), (c,)),
                Gate("X", targets=(root,))]
    return [Gate("H", targets=(c,)), Gate("S", targets=(c,))] + \
        _conditioned_rotation(range(n), pool, payload)


def build_g_gate(n: int) -> Circuit:
    """The Type-II entangling unitary G as a standalone circuit."""
    if n < 2:
        raise ValueError("G needs at least two data qubits")
    pool = _scratch_pool(n)
    cb = CircuitBuilder(2 * n, label=f"g_gate_{n}", ancillas=pool)
    cb.extend(_g_gates(n, n, pool))
    return cb.build()


def build_qcst_type2(n: int) -> Circuit:
    """Type-II transforms: H, P_1C, QFT_2N, D1, P_2C, G, dec, Z.

    Control-0 block equals the Type-II cosine matrix, control-1 block the
    Type-II sine matrix (the final Z clears the identity's minus sign).
    """
    if n < 2:
        raise ValueError("Type-II transform needs at least two data qubits")
    c = n
    pool = _scratch_pool(n)
    cb = CircuitBuilder(2 * n, label=f"qcst2_{n}", ancillas=pool)
    cb.h(c)
    emit_cond_ones_complement(cb, c, range(n))
    emit_qft_with_swaps(cb, range(n + 1))
    cb.extend(_d1_gates(n, c))
    emit_cond_twos_complement(cb, c, range(n), pool)
    cb.extend(_g_gates(n, c, pool))
    # controlled decrement = adjoint of the controlled increment
    inc = CircuitBuilder(cb.width)
    emit_cond_increment(inc, c, range(n), pool)
    cb.extend(_inverses(inc.gates()))
    cb.z(c)
    return cb.build()


def build_qcst_type3(n: int) -> Circuit:
    """Type-III transforms as the adjoint of the Type-II circuit; the blocks
    are the transposes of the Type-II blocks."""
    if n < 2:
        raise ValueError("Type-III transform needs at least two data qubits")
    circ = build_qcst_type2(n).adjoint()
    return Circuit(circ.width, circ.gates, circ.ancillas, circ.relabeling,
                   f"qcst3_{n}")


# ---------------------------------------------------------------------------
# Type IV
# ---------------------------------------------------------------------------


def build_qcst_type4(n: int, corrected: bool = True) -> Circuit:
    """Type-IV transforms; no or-tree and no carry ancillas are needed.

    The closing global phase is pi/(4N); pi/(2N) leaves a residual phase
    that breaks the block identity.
    """
    if n < 1:
        raise ValueError("Type-IV transform needs at least one data qubit")
    N = 1 << n
    c = n
    label = f"qcst4_{n}" if corrected else f"qcst4_incorrect_{n}"
    cb = CircuitBuilder(n + 1, label=label)
    cb.sdg(c)
    cb.h(c)
    cb.extend(_d2_gates(n, c, corrected))
    emit_cond_ones_complement(cb, c, range(n))
    emit_qft_with_swaps(cb, range(n + 1))
    emit_cond_ones_complement(cb, c, range(n))
    cb.extend(_d2_gates(n, c, corrected))
    cb.h(c)
    cb.sdg(c)
    cb.global_phase(math.pi / (4 * N))
    cb.s(c)
    return cb.build()


# ---------------------------------------------------------------------------
# block-identity verification
# ---------------------------------------------------------------------------

_PHASES = {1: 1 + 0j, 1j: 1j, -1: -1 + 0j, -1j: -1j}


@dataclass(frozen=True)
class BlockIdentityReport:
    """Result of matching a doubled-register unitary against a cosine block
    and a phase-scaled sine block under a discovered index embedding."""

    max_error_cos_block: float
    max_error_sin_block: float
    embedding: dict
    phase: complex
    ancilla_residual: float

    def max_error(self) -> float:
        return max(self.max_error_cos_block, self.max_error_sin_block)

    def passed(self, tolerance: float = 1e-10) -> bool:
        return self.max_error() < tolerance and self.ancilla_residual < tolerance


def _column_profiles(mat: np.ndarray, dim: int) -> np.ndarray:
    """Sorted absolute column entries, zero-padded to ``dim`` rows."""
    padded = np.zeros((dim, mat.shape[1]))
    padded[:mat.shape[0], :] = np.abs(mat)
    return np.sort(padded, axis=0)


def _discover_embedding(U: np.ndarray, cos_mat: np.ndarray, sin_mat: np.ndarray,
                        phase: complex, tolerance: float):
    """Choose the block assignment of the register labels.

    Candidate splits are scored by the residual they leave against the
    reference blocks, which is the only arbiter that survives transforms
    whose cosine and sine columns have identical magnitude profiles.  The
    canonical split (cosine block on the low labels) is always a candidate;
    a profile-matching pass proposes an alternative when the magnitudes are
    informative.  A wrong circuit therefore still yields an error report,
    never an exception.
    """
    dim = U.shape[0]
    d_c = cos_mat.shape[0]
    for mat in (cos_mat, sin_mat):
        for j in range(mat.shape[1]):
            diffs = np.max(np.abs(mat[:, j + 1:] - mat[:, j:j + 1]), axis=0)
            if diffs.size and np.min(diffs) < tolerance:
                raise AmbiguousEmbeddingError(
                    "two reference columns coincide within tolerance; "
                    "the index embedding is not unique at this size")
    splits = [(list(range(d_c)), list(range(d_c, dim)))]
    u_prof = np.sort(np.abs(U), axis=0)
    cos_prof = _column_profiles(cos_mat, dim)
    sin_prof = _column_profiles(sin_mat, dim)
    cos_labels, sin_labels = [], []
    for b in range(dim):
        d_cos = float(np.min(np.max(np.abs(cos_prof - u_prof[:, b:b + 1]), axis=0)))
        d_sin = float(np.min(np.max(np.abs(sin_prof - u_prof[:, b:b + 1]), axis=0)))
        hit_cos, hit_sin = d_cos < tolerance, d_sin < tolerance
        if hit_cos == hit_sin:  # unmatched or profile-degenerate label
            cos_labels = None
            break
        (cos_labels if hit_cos else sin_labels).append(b)
    if cos_labels is not None and len(cos_labels) == d_c:
        splits.append((cos_labels, sin_labels))

    def residual(split):
        cs, ss = split
        return max(_block_error(U, cos_mat, cs, 1.0),
                   _block_error(U, sin_mat, ss, phase))

    return min(splits, key=residual)


def _block_error(U: np.ndarray, block: np.ndarray, labels, phase: complex) -> float:
    """Max deviation over the full columns of a block: embedded rows must
    carry phase*block and every other row must vanish."""
    target = np.zeros((U.shape[0], len(labels)), dtype=complex)
    target[labels, :] = phase * block
    return float(np.max(np.abs(U[:, labels] - target)))


def verify_block_identity(circuit: Circuit, cos_spec: oracle.TransformSpec,
                          sin_spec: oracle.TransformSpec, phase: complex = 1,
                          tolerance: float = 1e-10) -> BlockIdentityReport:
    """Extract the circuit's action on its transform register, discover the
    index embedding, and report per-block max errors against the oracles."""
    if phase not in _PHASES:
        raise ValueError("sine-block phase must be a fourth root of unity")
    phase = _PHASES[phase]
    register = circuit.data_wires
    n = len(register) - 1
    U, residual = data_register_action(circuit, register)
    dim = 2 << n
    cos_mat = oracle.reference_matrix(cos_spec)
    sin_mat = oracle.reference_matrix(sin_spec)
    if cos_spec.dim + sin_spec.dim != dim:
        raise ValueError("block dimensions do not tile the doubled register")
    cos_labels, sin_labels = _discover_embedding(U, cos_mat, sin_mat, phase, tolerance)
    embedding = {
        "cos_block": tuple((lab >> n, lab & ((1 << n) - 1)) for lab in cos_labels),
        "sin_block": tuple((lab >> n, lab & ((1 << n) - 1)) for lab in sin_labels),
    }
    return BlockIdentityReport(
        max_error_cos_block=_block_error(U, cos_mat, cos_labels, 1.0),
        max_error_sin_block=_block_error(U, sin_mat, sin_labels, phase),
        embedding=embedding,
        phase=phase,
        ancilla_residual=residual,
    )


_PHASE_NAMES = {1 + 0j: "1", 1j: "i", -1 + 0j: "-1", -1j: "-i"}


def embedding_as_json_dict(report: BlockIdentityReport, transform: str, n: int) -> dict:
    """Golden-file form of a discovered embedding."""
    return {
        "transform": transform,
        "n": n,
        "cos_block": [list(pair) for pair in report.embedding["cos_block"]],
        "sin_block": [list(pair) for pair in report.embedding["sin_block"]],
        "phase": _PHASE_NAMES[report.phase],
    }
