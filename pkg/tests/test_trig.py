"""Type I-IV cosine/sine transform circuits against the classical oracles."""
import json
import math
import pathlib

import numpy as np
import pytest

from qrt_kit import oracle
from qrt_kit.simcore import (
    Circuit,
    circuit_unitary,
    count_gates,
    data_register_action,
)
from qrt_kit.qft import build_qft
from qrt_kit.trig import (
    AmbiguousEmbeddingError,
    DiagonalFamily,
    _discover_embedding,
    build_d1,
    build_d2,
    build_g_gate,
    build_qcst_type1,
    build_qcst_type2,
    build_qcst_type3,
    build_qcst_type4,
    build_qst1_optimized,
    build_t_gate,
    build_type1_core,
    embedding_as_json_dict,
    verify_block_identity,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"


def spec(kind, N):
    return oracle.TransformSpec(kind, N)


def case_matrix_t(N):
    """T_N assembled directly from its four-case definition."""
    T = np.zeros((2 * N, 2 * N), dtype=complex)
    T[0, 0] = 1
    T[N, N] = 1
    s = 1 / math.sqrt(2)
    for x in range(1, N):
        T[x, x] = s
        T[N + (N - x), x] = s
        T[x, N + x] = 1j * s
        T[N + (N - x), N + x] = -1j * s
    return T


def case_matrix_g(N):
    """G assembled from its four-case definition."""
    G = np.zeros((2 * N, 2 * N), dtype=complex)
    G[0, 0] = 1
    G[N, N] = -1j
    s = 1 / math.sqrt(2)
    for x in range(1, N):
        G[x, x] = s
        G[N + x, x] = 1j * s
        G[x, N + x] = s
        G[N + x, N + x] = -1j * s
    return G


# ---------------------------------------------------------------------------
# T gate
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_t_gate_matches_case_matrix(n):
    N = 1 << n
    matrix, residual = data_register_action(build_t_gate(n), list(range(n + 1)))
    assert residual < 1e-12
    np.testing.assert_allclose(matrix, case_matrix_t(N), atol=1e-12)


def test_t_gate_zero_value_cases():
    matrix, _ = data_register_action(build_t_gate(2), [0, 1, 2])
    assert abs(matrix[0, 0] - 1) < 1e-12      # |00> fixed
    assert abs(matrix[4, 4] - 1) < 1e-12      # |1,0> fixed
    # |0,x> -> (|0,x> + |1,N-x>)/sqrt(2)
    assert abs(matrix[1, 1] - 1 / math.sqrt(2)) < 1e-12
    assert abs(matrix[4 + 3, 1] - 1 / math.sqrt(2)) < 1e-12


def test_t_gate_size_error():
    with pytest.raises(ValueError):
        build_t_gate(1)


# ---------------------------------------------------------------------------
# Type I
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type1_core_block_identity(n):
    report = verify_block_identity(build_type1_core(n), spec("DCT1", 1 << n),
                                   spec("DST1", 1 << n), phase=1j)
    assert report.passed()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type1_full_block_identity(n):
    report = verify_block_identity(build_qcst_type1(n), spec("DCT1", 1 << n),
                                   spec("DST1", 1 << n), phase=1)
    assert report.passed()


def test_type1_cosine_zero_column():
    # input |0>|0>: amplitudes proportional to the boundary weights k_y
    n = 2
    N = 1 << n
    matrix, _ = data_register_action(build_qcst_type1(n), list(range(n + 1)))
    col = matrix[:, 0]
    k = np.array([1 / math.sqrt(2), 1, 1, 1, 1 / math.sqrt(2)])
    np.testing.assert_allclose(col[:N + 1], k / math.sqrt(N), atol=1e-12)
    np.testing.assert_allclose(col[N + 1:], 0, atol=1e-12)


def test_type1_sine_columns_match_oracle():
    n = 3
    N = 1 << n
    matrix, _ = data_register_action(build_qcst_type1(n), list(range(n + 1)))
    S1 = oracle.reference_matrix(spec("DST1", N))
    for a in range(1, N):
        col = matrix[:, N + a]
        np.testing.assert_allclose(col[N + 1:], S1[:, a - 1], atol=1e-10)


def test_type1_embedding_puts_extra_cosine_index_on_control_one():
    report = verify_block_identity(build_type1_core(3), spec("DCT1", 8),
                                   spec("DST1", 8), phase=1j)
    assert report.embedding["cos_block"][-1] == (1, 0)
    assert report.embedding["sin_block"][0] == (1, 1)


# ---------------------------------------------------------------------------
# optimized Type-I sine
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qst1_optimized_on_sine_domain(n):
    N = 1 << n
    matrix, _ = data_register_action(build_qst1_optimized(n), list(range(n + 1)))
    S1 = oracle.reference_matrix(spec("DST1", N))
    np.testing.assert_allclose(matrix[1:N, 1:N], S1, atol=1e-10)
    # ancilla stays clean over the domain
    np.testing.assert_allclose(matrix[N:, 1:N], 0, atol=1e-10)


def test_qst1_optimized_half_point_column():
    # a = N/2: output sqrt(2/N) sin(pi y / 2), odd y only, alternating signs
    n = 3
    N = 1 << n
    matrix, _ = data_register_action(build_qst1_optimized(n), list(range(n + 1)))
    want = np.array([math.sqrt(2 / N) * math.sin(math.pi * y / 2) for y in range(1, N)])
    np.testing.assert_allclose(matrix[1:N, N // 2], want, atol=1e-12)


def test_qst1_optimized_involution():
    n = 3
    N = 1 << n
    matrix, _ = data_register_action(build_qst1_optimized(n), list(range(n + 1)))
    block = matrix[1:N, 1:N]
    np.testing.assert_allclose(block @ block, np.eye(N - 1), atol=1e-10)


def test_qst1_optimized_has_no_multi_controlled_gates():
    for n in (2, 3, 4, 5):
        circ = build_qst1_optimized(n)
        assert all(g.kind != "MCX" for g in circ.gates)
        assert max(len(g.controls) for g in circ.gates) <= 2


def test_qst1_optimized_gate_total():
    # QFT on n+1 wires, two negation gadgets, five single-qubit gates
    for n in (2, 3, 4, 6):
        total = count_gates(build_qst1_optimized(n)).total
        qft_total = count_gates(build_qft(n + 1)).total
        assert total == qft_total + 2 * (4 * n - 4) + 5


def test_qst1_optimized_intermediate_state():
    """After the QFT the state is (i/sqrt(N)) sum_y sin(pi a y / N)|y>."""
    n = 3
    N = 1 << n
    full = build_qst1_optimized(n)
    cut = next(i for i, g in enumerate(full.gates) if g.kind == "SWAP")
    # keep gates through the full QFT block (ends after the swap layer)
    qft_gate_count = count_gates(build_qft(n + 1)).total
    start = 2 + (4 * n - 4)  # X, H, then the first negation gadget
    prefix = Circuit(full.width, full.gates[:start + qft_gate_count])
    matrix, _ = data_register_action(prefix, list(range(n + 1)))
    for a in range(1, N):
        want = np.array([1j / math.sqrt(N) * math.sin(math.pi * a * y / N)
                         for y in range(2 * N)])
        np.testing.assert_allclose(matrix[:, a], want, atol=1e-12)


# ---------------------------------------------------------------------------
# diagonal families
# ---------------------------------------------------------------------------


def test_diagonal_family_relations():
    fam = DiagonalFamily(3)
    X = np.array([[0, 1], [1, 0]])
    for j in (1, 2, 3):
        np.testing.assert_allclose(fam.k_mat(j), X @ fam.l_mat(j).conj() @ X,
                                   atol=1e-15)
    with pytest.raises(ValueError):
        fam.l_mat(4)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_delta1_tensor_factorization(n):
    fam = DiagonalFamily(n)
    N = 1 << n
    want = np.exp(2j * np.pi * np.arange(N) / (4 * N))
    np.testing.assert_allclose(fam.delta1(), want, atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_d1_diagonal(n):
    N = 1 << n
    U = circuit_unitary(build_d1(n)).entries
    w = np.exp(2j * np.pi / (4 * N))
    want = np.diag([w ** x for x in range(N)] + [w ** (x - N) for x in range(N)])
    np.testing.assert_allclose(U, want, atol=1e-12)
    assert np.max(np.abs(U - np.diag(np.diagonal(U)))) < 1e-15


def test_d1_phase_cases():
    # control=0: w^x; control=1, x=N-1: w^{-1}
    n = 2
    N = 1 << n
    U = circuit_unitary(build_d1(n)).entries
    w = np.exp(2j * np.pi / (4 * N))
    assert abs(U[3, 3] - w ** 3) < 1e-12
    assert abs(U[N + N - 1, N + N - 1] - w ** -1) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_d2_corrected_and_incorrect_diagonals(n):
    N = 1 << n
    w = np.exp(2j * np.pi / (4 * N))
    U = circuit_unitary(build_d2(n, corrected=True)).entries
    want = np.diag([w ** x for x in range(N)] + [w ** (-1 - x) for x in range(N)])
    np.testing.assert_allclose(U, want, atol=1e-12)
    U_bad = circuit_unitary(build_d2(n, corrected=False)).entries
    # defective variant: control-1 entry at x=0 is w^{-1} w^{-N+1} = w^{-N}
    assert abs(U_bad[N, N] - w ** -N) < 1e-12
    np.testing.assert_allclose(np.abs(np.diagonal(U_bad)), 1, atol=1e-12)


# ---------------------------------------------------------------------------
# Type II / III
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_g_gate_matches_case_matrix(n):
    matrix, residual = data_register_action(build_g_gate(n), list(range(n + 1)))
    assert residual < 1e-12
    np.testing.assert_allclose(matrix, case_matrix_g(1 << n), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type2_block_identity(n):
    report = verify_block_identity(build_qcst_type2(n), spec("DCT2", 1 << n),
                                   spec("DST2", 1 << n), phase=1)
    assert report.passed()
    assert report.max_error_cos_block < 1e-10
    assert report.max_error_sin_block < 1e-10


def test_type2_eq5_phase_without_final_z():
    """Dropping the closing Z exposes the identity's minus sign on the sine
    block."""
    n = 2
    circ = build_qcst_type2(n)
    assert circ.gates[-1].kind == "Z"
    core = Circuit(circ.width, circ.gates[:-1], circ.ancillas)
    report = verify_block_identity(core, spec("DCT2", 4), spec("DST2", 4), phase=-1)
    assert report.passed()


def test_type2_constant_column():
    n = 2
    N = 1 << n
    matrix, _ = data_register_action(build_qcst_type2(n), list(range(n + 1)))
    C2 = oracle.reference_matrix(spec("DCT2", N))
    np.testing.assert_allclose(matrix[:N, 0], C2[:, 0], atol=1e-10)
    assert abs(C2[0, 0] - 1 / math.sqrt(N) / math.sqrt(2) * math.sqrt(2)) < 1e-12


def test_type2_sine_row_weight_at_top_frequency():
    # the m=N sine row lands on register value N-1 with weight k_N = 1/sqrt(2)
    n = 2
    N = 1 << n
    matrix, _ = data_register_action(build_qcst_type2(n), list(range(n + 1)))
    S2 = oracle.reference_matrix(spec("DST2", N))
    np.testing.assert_allclose(matrix[N + N - 1, N:], S2[N - 1, :], atol=1e-10)
    assert abs(abs(S2[N - 1, 0]) - math.sqrt(2 / N) / math.sqrt(2)) < 1e-12


def test_type2_unitarity():
    U = circuit_unitary(build_qcst_type2(2), cap=12).entries
    dim = U.shape[0]
    np.testing.assert_allclose(U.conj().T @ U, np.eye(dim), atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type3_block_identity(n):
    report = verify_block_identity(build_qcst_type3(n), spec("DCT3", 1 << n),
                                   spec("DST3", 1 << n), phase=1)
    assert report.passed()


def test_type3_composes_with_type2_to_identity():
    n = 2
    m2, _ = data_register_action(build_qcst_type2(n), list(range(n + 1)))
    m3, _ = data_register_action(build_qcst_type3(n), list(range(n + 1)))
    np.testing.assert_allclose(m3 @ m2, np.eye(2 << n), atol=1e-10)


# ---------------------------------------------------------------------------
# Type IV
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type4_corrected_block_identity(n):
    report = verify_block_identity(build_qcst_type4(n), spec("DCT4", 1 << n),
                                   spec("DST4", 1 << n), phase=1)
    assert report.passed()


def test_type4_n1_blocks_match_formula():
    matrix, _ = data_register_action(build_qcst_type4(1), [0, 1])
    want_cos = np.array([[math.cos((m + .5) * (a + .5) * math.pi / 2)
                          for a in range(2)] for m in range(2)])
    want_sin = np.array([[math.sin((m + .5) * (a + .5) * math.pi / 2)
                          for a in range(2)] for m in range(2)])
    np.testing.assert_allclose(matrix[:2, :2], want_cos, atol=1e-12)
    np.testing.assert_allclose(matrix[2:, 2:], want_sin, atol=1e-12)


def test_dct4_symmetric_involution():
    for N in (2, 4, 8, 16):
        C4 = oracle.reference_matrix(spec("DCT4", N))
        np.testing.assert_array_equal(C4, C4.T)
        np.testing.assert_allclose(C4 @ C4, np.eye(N), atol=1e-12)


@pytest.mark.parametrize("n", [2, 3])
def test_type4_incorrect_diagonal_regression(n):
    report = verify_block_identity(build_qcst_type4(n, corrected=False),
                                   spec("DCT4", 1 << n), spec("DST4", 1 << n),
                                   phase=1)
    assert report.max_error() > 0.1


def test_type4_needs_no_scratch():
    circ = build_qcst_type4(3)
    assert circ.width == 4
    assert circ.ancillas == frozenset()


# ---------------------------------------------------------------------------
# verification machinery
# ---------------------------------------------------------------------------


def test_ancilla_cleanliness_all_builders():
    for n in (2, 3):
        for build in (build_qcst_type1, build_qcst_type2, build_qcst_type3,
                      build_qcst_type4, build_t_gate, build_g_gate):
            circ = build(n)
            _, residual = data_register_action(circ, circ.data_wires)
            assert residual < 1e-10, build.__name__


def test_verify_negative_control_reports_without_raising():
    report = verify_block_identity(Circuit(3), spec("DCT1", 4), spec("DST1", 4),
                                   phase=1j)
    assert report.max_error() > 0.5
    assert not report.passed()


def test_verify_rejects_bad_phase():
    with pytest.raises(ValueError):
        verify_block_identity(Circuit(3), spec("DCT1", 4), spec("DST1", 4),
                              phase=0.5)


def test_verify_rejects_mismatched_blocks():
    with pytest.raises(ValueError):
        verify_block_identity(Circuit(3), spec("DCT1", 4), spec("DST1", 8))


def test_discovery_raises_on_degenerate_columns():
    U = np.eye(4, dtype=complex)
    dup = np.ones((2, 2)) / math.sqrt(2)  # two identical reference columns
    with pytest.raises(AmbiguousEmbeddingError):
        _discover_embedding(U, dup, np.eye(2), 1.0, 1e-10)


def test_discovery_prefers_split_with_smaller_residual():
    # a shifted identity: cosine block lives on the high labels
    n = 1
    C = np.eye(2)
    S = np.full((2, 2), math.sqrt(0.5))
    S[1, 1] *= -1
    U = np.zeros((4, 4), dtype=complex)
    U[2:, 2:] = C
    U[:2, :2] = S
    cos_labels, sin_labels = _discover_embedding(U, C, S, 1.0, 1e-10)
    assert cos_labels == [2, 3]
    assert sin_labels == [0, 1]


# ---------------------------------------------------------------------------
# golden embeddings
# ---------------------------------------------------------------------------

_GOLDEN_BUILDS = {
    "qct1-core": (build_type1_core, "DCT1", "DST1", 1j),
    "qct1": (build_qcst_type1, "DCT1", "DST1", 1),
    "qct2": (build_qcst_type2, "DCT2", "DST2", 1),
    "qct3": (build_qcst_type3, "DCT3", "DST3", 1),
    "qct4": (build_qcst_type4, "DCT4", "DST4", 1),
}


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.json")),
                         ids=lambda p: p.stem)
def test_golden_embeddings(path):
    frozen = json.loads(path.read_text())
    build, cos_kind, sin_kind, phase = _GOLDEN_BUILDS[frozen["transform"]]
    n = frozen["n"]
    report = verify_block_identity(build(n), spec(cos_kind, 1 << n),
                                   spec(sin_kind, 1 << n), phase=phase)
    assert report.passed()
    assert embedding_as_json_dict(report, frozen["transform"], n) == frozen
