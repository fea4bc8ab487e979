"""Quantum Fourier transform circuit builder.

Phase convention is fixed: QFT_N |a> = N^{-1/2} sum_y omega_N^{a y} |y> with
omega_N = exp(2 pi i / N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .simcore import Circuit, CircuitBuilder


@dataclass(frozen=True)
class QftOptions:
    """include_final_swaps=False replaces the swap layer by a gate-free
    relabeling, so the unitary is unchanged but the swaps cost nothing."""

    include_final_swaps: bool = True


def emit_qft(cb: CircuitBuilder, wires) -> None:
    """Controlled-phase ladder on ``wires`` (wires[0] = least significant),
    without the final wire reversal."""
    wires = list(wires)
    n = len(wires)
    for i in range(n - 1, -1, -1):
        cb.h(wires[i])
        for j in range(i - 1, -1, -1):
            cb.cphase(2.0 * math.pi / (1 << (i - j + 1)), wires[j], wires[i])


def emit_qft_with_swaps(cb: CircuitBuilder, wires) -> None:
    wires = list(wires)
    emit_qft(cb, wires)
    for i in range(len(wires) // 2):
        cb.swap(wires[i], wires[len(wires) - 1 - i])


def build_qft(n: int, opts: QftOptions = QftOptions()) -> Circuit:
    """QFT on n wires: n(n+1)/2 gates plus floor(n/2) swaps."""
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    cb = CircuitBuilder(n, label=f"qft_{n}")
    if opts.include_final_swaps:
        emit_qft_with_swaps(cb, range(n))
        return cb.build()
    emit_qft(cb, range(n))
    return cb.build(relabeling=tuple(range(n - 1, -1, -1)))


def build_qft_inverse(n: int, opts: QftOptions = QftOptions()) -> Circuit:
    if n < 1:
        raise ValueError("QFT needs at least one qubit")
    circ = build_qft(n, opts).adjoint()
    return Circuit(circ.width, circ.gates, circ.ancillas, circ.relabeling,
                   f"qft_inv_{n}")
