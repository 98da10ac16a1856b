"""Stabilizer state tableau simulator (randomized measurement collapse)."""
from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from stabcom.pauli import PauliElement, format_pauli
from stabcom.tableau import StabilizerTableau

if TYPE_CHECKING:
    from stabcom.circuit_io import ShotRecord


def signed(M: PauliElement, v: int) -> PauliElement:
    return M if v == 1 else -M


def collapse(state: StabilizerTableau, M: PauliElement, pivot: int,
             c_bits: Sequence[int], m_bits: Sequence[int], v: int) -> None:
    """Row update for an observable that anticommutes with stabilizer ``pivot``.

    Every other row that anticommutes with ``M`` is multiplied by the pivot
    stabilizer, the pivot stabilizer becomes the pivot destabilizer and
    ``v*M`` takes its place. The pivot row keeps its index.
    """
    stabs = state.stabilizers
    destabs = state.destabilizers
    pivot_row = stabs[pivot]
    for k in range(state.n):
        if k == pivot:
            continue
        if c_bits[k]:
            stabs[k] = pivot_row * stabs[k]
        if m_bits[k]:
            destabs[k] = pivot_row * destabs[k]
    destabs[pivot] = pivot_row
    stabs[pivot] = signed(M, v)


class SstrState(StabilizerTableau):
    """Tableau simulator of stabilizer QM.

    Destabilizer signs are carried along but never read.
    """

    @classmethod
    def init(cls, n: int, rng: np.random.Generator | int | None = None) -> SstrState:
        """The all-zero state: stabilizers ``+Z_k``, destabilizers ``+X_k``."""
        stabs, destabs = cls._basis(n)
        return cls(stabs, destabs, rng)

    def extract_value(self, M: PauliElement) -> int | None:
        """Outcome ``v(M)`` if ``M`` commutes with every stabilizer, else ``None``."""
        self._check_observable(M)
        if any(self.stabilizer_bits(M)):
            return None
        return self._stabilizer_sign(M, self.destabilizer_bits(M))

    def _stabilizer_sign(self, M: PauliElement, m_bits: Sequence[int]) -> int:
        prod = self.stabilizer_product(m_bits)
        if (prod.x, prod.z) != (M.x, M.z):
            raise AssertionError(f"{format_pauli(M)} not in the stabilizer group up to sign")
        return 1 if (M.s - prod.s) % 4 == 0 else -1

    def measure(self, M: PauliElement) -> int:
        """Measure ``M``; returns +1/-1 and updates the state in place.

        A random outcome consumes one draw from ``self.rng``. The pivot is the
        lowest-index stabilizer anticommuting with ``M``.
        """
        self._check_observable(M)
        c_bits = self.stabilizer_bits(M)
        m_bits = self.destabilizer_bits(M)
        if not any(c_bits):
            return self._stabilizer_sign(M, m_bits)
        v = self._coin()
        collapse(self, M, c_bits.index(1), c_bits, m_bits, v)
        return v


def sample_shot(circuit, seed) -> "ShotRecord":
    """Run ``circuit`` once on a fresh :class:`SstrState` seeded with ``seed``."""
    from stabcom.circuit_io import run_on

    state = SstrState.init(circuit.n, np.random.default_rng(seed))
    return run_on(state, circuit, seed, "sstr")
