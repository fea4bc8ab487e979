"""Exhaustive classical-equivalence and gate-count checks for the
reversible-arithmetic gadgets."""
import numpy as np
import pytest

from qrt_kit.gadgets import (
    GadgetLayout,
    build_cond_decrement,
    build_cond_increment,
    build_cond_ones_complement,
    build_cond_twos_complement,
    build_or_gate,
    build_or_tree,
)
from qrt_kit.simcore import Circuit, circuit_unitary, count_gates, data_register_action

from helpers import classical_map_error


def test_layout_disjointness():
    with pytest.raises(ValueError):
        GadgetLayout(data_qubits=(0, 1), control_qubit=1)
    lay = GadgetLayout(data_qubits=(0, 1), control_qubit=2, carry_ancillas=(3,))
    assert lay.carry_ancillas == (3,)


# ---------------------------------------------------------------------------
# increment / decrement / complements
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 7))
def test_increment_exhaustive(n):
    err = classical_map_error(build_cond_increment(n), n,
                              lambda c, x: (x + c) % (1 << n))
    assert err < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_decrement_exhaustive(n):
    err = classical_map_error(build_cond_decrement(n), n,
                              lambda c, x: (x - c) % (1 << n))
    assert err < 1e-12


def test_increment_wraparound_case():
    # n=3, c=1, x=7 -> 0
    err = classical_map_error(build_cond_increment(3), 3,
                              lambda c, x: (x + c) % 8)
    assert err < 1e-12


def test_decrement_then_increment_is_identity():
    for n in range(1, 6):
        inc = build_cond_increment(n)
        dec = build_cond_decrement(n)
        both = Circuit(inc.width, inc.gates + dec.gates, inc.ancillas)
        err = classical_map_error(both, n, lambda c, x: x)
        assert err < 1e-12


@pytest.mark.parametrize("n", range(1, 7))
def test_ones_complement_exhaustive(n):
    err = classical_map_error(build_cond_ones_complement(n), n,
                              lambda c, x: ((1 << n) - 1 - x) if c else x)
    assert err < 1e-12


def test_ones_complement_involution():
    for n in range(1, 6):
        circ = build_cond_ones_complement(n)
        both = Circuit(circ.width, circ.gates + circ.gates)
        assert classical_map_error(both, n, lambda c, x: x) < 1e-12


@pytest.mark.parametrize("n", range(2, 7))
def test_twos_complement_exhaustive(n):
    err = classical_map_error(build_cond_twos_complement(n), n,
                              lambda c, x: ((1 << n) - x) % (1 << n) if c else x)
    assert err < 1e-12


def test_twos_complement_fixed_point_and_negation():
    # n=3: c=1 maps 3 -> 5 and 0 -> 0
    circ = build_cond_twos_complement(3)
    matrix, _ = data_register_action(circ, [0, 1, 2, 3])
    assert abs(matrix[8 + 5, 8 + 3] - 1) < 1e-12
    assert abs(matrix[8 + 0, 8 + 0] - 1) < 1e-12


@pytest.mark.parametrize("n", range(2, 11))
def test_twos_complement_gate_count(n):
    assert count_gates(build_cond_twos_complement(n)).total == 4 * n - 4


def test_gadget_size_errors():
    with pytest.raises(ValueError):
        build_cond_increment(0)
    with pytest.raises(ValueError):
        build_cond_decrement(0)
    with pytest.raises(ValueError):
        build_cond_ones_complement(0)
    with pytest.raises(ValueError):
        build_cond_twos_complement(1)


def test_gadget_unitaries_are_permutations():
    for circ in (build_cond_increment(3), build_cond_twos_complement(3),
                 build_or_tree(3)):
        U = circuit_unitary(circ).entries
        mags = np.abs(U)
        assert np.all((mags < 1e-12) | (np.abs(mags - 1) < 1e-12))
        np.testing.assert_allclose(np.abs(U.imag).max(), 0, atol=1e-12)


# ---------------------------------------------------------------------------
# or gate / or tree
# ---------------------------------------------------------------------------


def test_or_gate_truth_table():
    U = circuit_unitary(build_or_gate()).entries
    for q0 in (0, 1):
        for q1 in (0, 1):
            for r in (0, 1):
                lab_in = q0 | (q1 << 1) | (r << 2)
                lab_out = q0 | (q1 << 1) | ((r ^ (q0 | q1)) << 2)
                assert abs(U[lab_out, lab_in] - 1) < 1e-12


def test_or_gate_count():
    report = count_gates(build_or_gate())
    assert report.total == 3
    assert report.counts == {"CNOT": 2, "Toffoli": 1}


def test_or_tree_root_exhaustive_n4():
    circ = build_or_tree(4)
    root = circ.width - 1
    matrix, residual = data_register_action(circ, list(range(circ.width)))
    assert residual == 0
    for x in range(16):
        column = matrix[:, x]
        lab = int(np.argmax(np.abs(column)))
        assert abs(column[lab] - 1) < 1e-12
        assert (lab >> root) & 1 == (1 if x else 0)
        assert lab & 15 == x  # data wires untouched


@pytest.mark.parametrize("n", range(2, 11))
def test_or_tree_gate_tiers(n):
    assert count_gates(build_or_tree(n)).total == 3 * (n - 1)
    assert count_gates(build_or_tree(n, uncompute_internal=True)).total == 6 * (n - 1)
    assert count_gates(build_or_tree(n, reset_root=True)).total == 12 * (n - 1)


def test_or_tree_uncompute_restores_all_ancillas():
    for n in (2, 3, 5):
        circ = build_or_tree(n, uncompute_internal=True)
        err = classical_map_error(circ, n - 1, lambda c, x: x)  # identity map
        assert err < 1e-12


def test_or_tree_degenerate_two_inputs():
    assert build_or_tree(2).gates == build_or_gate().gates


def test_or_tree_size_error():
    with pytest.raises(ValueError):
        build_or_tree(1)


def test_bare_or_tree_documents_dirty_ancillas():
    assert build_or_tree(5).ancillas == frozenset()
    assert len(build_or_tree(5, uncompute_internal=True).ancillas) == 4
