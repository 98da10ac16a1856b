"""Shot-parallel sampling.

Which rows get multiplied together during gates and measurements depends only
on the x/z bits, never on the signs. A batch therefore runs one sign-free
template tableau and carries a ``(shots, 2n)`` array of sign bits next to it:
row ``k`` of shot ``j`` is ``(-1)**bits[j, k]`` times template row ``k``.
Columns ``0..n-1`` hold stabilizer signs, ``n..2n-1`` destabilizer signs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stabcom.circuit_io import Circuit, Gate
from stabcom.com import BRANCH_ANTICOMMUTING, BRANCH_COMMUTING, ComState
from stabcom.pauli import PauliElement

ENGINES = ("com", "sstr")


def _xor_columns(bits: np.ndarray, cols: list[int]) -> np.ndarray:
    if not cols:
        return np.zeros(bits.shape[0], dtype=np.uint8)
    return np.bitwise_xor.reduce(bits[:, cols], axis=1)


@dataclass
class BatchRun:
    outcomes: np.ndarray
    template: ComState
    sign_bits: np.ndarray

    def state(self, j: int) -> ComState:
        """Final tableau of shot ``j`` (signs applied to the template rows)."""
        n = self.template.n
        bits = self.sign_bits[j]

        def apply(row: PauliElement, b) -> PauliElement:
            return -row if b else row

        return ComState(
            [apply(r, bits[k]) for k, r in enumerate(self.template.stabilizers)],
            [apply(r, bits[n + k]) for k, r in enumerate(self.template.destabilizers)],
        )


def sample_batch(circuit: Circuit, shots: int, rng=None, engine: str = "com",
                 init_bits=None, coin_bits=None) -> np.ndarray:
    """Outcomes of ``shots`` independent runs, shape ``(shots, measurements)``.

    See :func:`run_batch` for the arguments.
    """
    return run_batch(circuit, shots, rng, engine, init_bits, coin_bits).outcomes


def run_batch(
    circuit: Circuit,
    shots: int,
    rng: np.random.Generator | int | None = None,
    engine: str = "com",
    init_bits: np.ndarray | None = None,
    coin_bits: np.ndarray | None = None,
) -> BatchRun:
    """Run ``shots`` independent shots; outcomes plus every final tableau.

    Random bits (1 means sign -1) are drawn from ``rng`` unless supplied:
    ``init_bits`` ``(shots, n)`` for the COM initial destabilizer signs and
    ``coin_bits`` ``(shots, measurements)`` for the per-measurement coin
    (COM pivot phase or SSTR outcome); unused coin columns are ignored.
    """
    if engine not in ENGINES:
        raise ValueError(f"unknown batch engine {engine!r}")
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = np.random.default_rng(rng)
    n = circuit.n
    template = ComState.from_signs([1] * n)
    bits = np.zeros((shots, 2 * n), dtype=np.uint8)
    if engine == "com":
        if init_bits is None:
            init_bits = rng.integers(2, size=(shots, n), dtype=np.uint8)
        bits[:, n:] = init_bits

    def coin(j: int) -> np.ndarray:
        if coin_bits is not None:
            return np.asarray(coin_bits[:, j], dtype=np.uint8)
        return rng.integers(2, size=shots, dtype=np.uint8)

    outcomes = []
    j = 0
    for ins in circuit.instructions:
        if isinstance(ins, Gate):
            template.apply_gate(ins.name, *ins.qubits)
            continue
        M = ins.pauli
        plan = template.plan(M)
        e = plan.expansion
        p = plan.pivot
        v_bits = (
            _xor_columns(bits, [k for k in range(n) if e.m[k]])
            ^ _xor_columns(bits, [n + k for k in range(n) if e.c[k]])
            ^ np.uint8(e.v == -1)
        )
        if plan.branch == BRANCH_ANTICOMMUTING:
            if engine == "sstr":
                v_bits = coin(j)
            pivot = bits[:, p].copy()
            for k in range(n):
                if k == p:
                    continue
                if e.c[k]:
                    bits[:, k] ^= pivot
                if e.m[k]:
                    bits[:, n + k] ^= pivot
            bits[:, n + p] = pivot
            bits[:, p] = v_bits
            if engine == "com":
                bits[:, n + p] ^= coin(j)
            template.apply_plan(M, plan, 1, 1)
        elif plan.branch == BRANCH_COMMUTING and engine == "com":
            pivot = bits[:, n + p].copy()
            for k in range(n):
                if k != p and e.m[k]:
                    bits[:, n + k] ^= pivot
            bits[:, p] = v_bits
            bits[:, n + p] ^= coin(j)
            template.apply_plan(M, plan, 1, 1)
        outcomes.append(1 - 2 * v_bits.astype(np.int8))
        j += 1
    if outcomes:
        stacked = np.stack(outcomes, axis=1)
    else:
        stacked = np.zeros((shots, 0), dtype=np.int8)
    return BatchRun(stacked, template, bits)


def joint_counts(outcomes: np.ndarray) -> dict[tuple[int, ...], int]:
    """Histogram of outcome rows, keyed like :func:`oracle.run_circuit_distribution`."""
    rows, counts = np.unique(outcomes, axis=0, return_counts=True)
    return {tuple(int(v) for v in row): int(c) for row, c in zip(rows, counts)}
