"""Classical reference transform matrices, built entry by entry.

These are the ground truth for every circuit verification, so they stay
deliberately naive: O(N^2) direct evaluation of the defining formulas, no
FFT-style shortcuts shared with the circuits under test.

Boundary weights: k_j = 1/sqrt(2) when j is 0 or N (whichever occurs in the
transform's index range), else 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .simcore import DenseUnitary

KINDS = ("DFT", "DHT", "DCT1", "DCT2", "DCT3", "DCT4", "DST1", "DST2", "DST3", "DST4")


def cas(x):
    """cos(x) + sin(x), the Hartley kernel."""
    return np.cos(x) + np.sin(x)


@dataclass(frozen=True)
class TransformSpec:
    """A classical reference transform: kind plus the size parameter N=2^n."""

    kind: str
    N: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown transform kind {self.kind!r}")
        if self.N < 2 or self.N & (self.N - 1):
            raise ValueError(f"N must be a power of two >= 2, got {self.N}")

    @property
    def dim(self) -> int:
        if self.kind == "DCT1":
            return self.N + 1
        if self.kind == "DST1":
            return self.N - 1
        return self.N


def _boundary_weight(j: int, N: int) -> float:
    return 1.0 / math.sqrt(2.0) if j in (0, N) else 1.0


def _dft(N):
    a = np.arange(N)
    return np.exp(2j * np.pi * np.outer(a, a) / N) / np.sqrt(N)


def _dht(N):
    a = np.arange(N)
    return cas(2.0 * np.pi * np.outer(a, a) / N) / np.sqrt(N)


def _dct1(N):
    m = np.arange(N + 1)
    k = np.array([_boundary_weight(j, N) for j in m])
    return np.sqrt(2.0 / N) * np.outer(k, k) * np.cos(np.pi * np.outer(m, m) / N)


def _dst1(N):
    m = np.arange(1, N)
    return np.sqrt(2.0 / N) * np.sin(np.pi * np.outer(m, m) / N)


def _dct2(N):
    m = np.arange(N)
    k = np.array([_boundary_weight(j, N) for j in m])
    return np.sqrt(2.0 / N) * k[:, None] * np.cos(np.pi * np.outer(m, m + 0.5) / N)


def _dst2(N):
    m = np.arange(1, N + 1)
    n = np.arange(N)
    k = np.array([_boundary_weight(j, N) for j in m])
    return np.sqrt(2.0 / N) * k[:, None] * np.sin(np.pi * np.outer(m, n + 0.5) / N)


def _dct4(N):
    m = np.arange(N) + 0.5
    return np.sqrt(2.0 / N) * np.cos(np.pi * np.outer(m, m) / N)


def _dst4(N):
    m = np.arange(N) + 0.5
    return np.sqrt(2.0 / N) * np.sin(np.pi * np.outer(m, m) / N)


_BUILDERS = {
    "DFT": _dft,
    "DHT": _dht,
    "DCT1": _dct1,
    "DST1": _dst1,
    "DCT2": _dct2,
    "DST2": _dst2,
    "DCT3": lambda N: _dct2(N).T,
    "DST3": lambda N: _dst2(N).T,
    "DCT4": _dct4,
    "DST4": _dst4,
}


def reference_matrix(spec: TransformSpec) -> np.ndarray:
    return _BUILDERS[spec.kind](spec.N)


def build_reference_matrix(spec: TransformSpec) -> DenseUnitary:
    """Oracle matrix for the given transform, validated unitary at 1e-12."""
    return DenseUnitary(reference_matrix(spec), tolerance=1e-12)


def build_dht_from_dft(N: int) -> DenseUnitary:
    """The Hartley matrix assembled from the Fourier matrix and its conjugate:
    H = (1-i)/2 F + (1+i)/2 F*."""
    F = _dft(N)
    return DenseUnitary((1 - 1j) / 2 * F + (1 + 1j) / 2 * F.conj(), tolerance=1e-12)


def twos_complement_permutation(N: int) -> np.ndarray:
    """Permutation matrix of x -> (N - x) mod N."""
    T = np.zeros((N, N))
    T[(N - np.arange(N)) % N, np.arange(N)] = 1.0
    return T


def compare_unitaries(a, b) -> float:
    """Max-entry absolute difference; no phase forgiveness."""
    am = a.entries if isinstance(a, DenseUnitary) else np.asarray(a)
    bm = b.entries if isinstance(b, DenseUnitary) else np.asarray(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return float(np.max(np.abs(am - bm)))


def dump_csv(matrix, stream) -> None:
    """Write a matrix as comma-separated "re,im" pairs, one row per line."""
    mat = matrix.entries if isinstance(matrix, DenseUnitary) else np.asarray(matrix)
    for row in np.atleast_2d(mat):
        stream.write(",".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) + "\n")
