"""Shared test utilities: an independent brute-force unitary builder and an
exhaustive classical-map checker for permutation gadgets."""
import numpy as np

from qrt_kit.simcore import operand_matrix, data_register_action


def brute_unitary(circuit):
    """Full circuit unitary built by explicit basis-permutation embedding.

    Independent of the simulator's slice arithmetic: each gate's operand
    matrix is scattered entry by entry over the full 2^width space.
    """
    width = circuit.width
    dim = 1 << width
    total = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        if gate.kind == "GlobalPhase":
            total = np.exp(1j * gate.angle) * total
            continue
        ops = gate.operands
        mat = operand_matrix(gate)
        k = len(ops)
        full = np.zeros((dim, dim), dtype=complex)
        rest = [w for w in range(width) if w not in ops]
        for sub_out in range(1 << k):
            for sub_in in range(1 << k):
                if mat[sub_out, sub_in] == 0:
                    continue
                # operand bit i of the matrix index is wire ops[k-1-i]
                base_out = sum(((sub_out >> (k - 1 - i)) & 1) << ops[i] for i in range(k))
                base_in = sum(((sub_in >> (k - 1 - i)) & 1) << ops[i] for i in range(k))
                for fill in range(1 << len(rest)):
                    extra = sum(((fill >> j) & 1) << rest[j] for j in range(len(rest)))
                    full[base_out | extra, base_in | extra] = mat[sub_out, sub_in]
        total = full @ total
    if circuit.relabeling is not None:
        perm = np.zeros((dim, dim))
        for lab in range(dim):
            out = sum(((lab >> w) & 1) << circuit.relabeling[w] for w in range(width))
            perm[out, lab] = 1.0
        total = perm @ total
    return total


def classical_map_error(circuit, n, fn):
    """Worst deviation of a conditional gadget from the classical map
    (c, x) -> (c, fn(c, x)) over all basis inputs, ancillas clean."""
    matrix, residual = data_register_action(circuit, list(range(n + 1)))
    dim = 1 << n
    worst = residual
    for c in (0, 1):
        for x in range(dim):
            col = matrix[:, c * dim + x].copy()
            want = c * dim + fn(c, x)
            worst = max(worst, abs(col[want] - 1.0))
            col[want] = 0.0
            worst = max(worst, float(np.max(np.abs(col))))
    return worst
