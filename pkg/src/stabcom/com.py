"""Contextual ontological model: the tableau as a complete ontic state.

Every row sign is significant. The outcome of any Hermitian Pauli observable
is fixed by the state (see :meth:`ComState.predict`); measuring updates the
state contextually and re-randomizes the sign of the pivot destabilizer.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from stabcom.pauli import PauliElement, format_pauli, symplectic_product
from stabcom.sstr import signed, collapse
from stabcom.tableau import StabilizerTableau

if TYPE_CHECKING:
    from stabcom.circuit_io import ShotRecord

BRANCH_ANTICOMMUTING = "A"
BRANCH_COMMUTING = "B"
BRANCH_TRIVIAL = "C"


@dataclass(frozen=True)
class Expansion:
    """``M = v * i**w * prod_k M_k**m_k * prod_k C_k**c_k``.

    Both partial products run in ascending ``k``; the stabilizer product
    stands to the left of the destabilizer product.
    """

    v: int
    w: int
    m: tuple[int, ...]
    c: tuple[int, ...]


@dataclass(frozen=True)
class MeasurementPlan:
    """Sign-independent part of a measurement update.

    ``branch`` is A (some stabilizer anticommutes), B (only destabilizers
    anticommute) or C (nothing anticommutes; never reached for a non-identity
    observable). ``pivot`` is ``None`` for branch C.
    """

    expansion: Expansion
    branch: str
    pivot: int | None


class ComState(StabilizerTableau):
    """Symplectic basis ``{M_1..M_n; C_1..C_n}`` with all 2n signs meaningful."""

    @classmethod
    def init_random(cls, n: int, rng: np.random.Generator | int | None = None) -> ComState:
        """``|0...0>`` stabilizers with independent uniform destabilizer signs.

        Consumes one array draw of ``n`` bits from ``rng``, qubit 0 first.
        """
        rng = np.random.default_rng(rng)
        if n < 1:
            raise ValueError(f"qubit count must be positive, got {n}")
        signs = [1 - 2 * int(b) for b in rng.integers(2, size=n)]
        return cls.from_signs(signs, rng)

    @classmethod
    def from_signs(cls, signs: Sequence[int], rng=None) -> ComState:
        """Initial state with prescribed destabilizer signs ``signs[k]``."""
        stabs, destabs = cls._basis(len(signs), signs)
        return cls(stabs, destabs, rng)

    def expand(self, M: PauliElement) -> Expansion:
        self._check_observable(M)
        m = self.destabilizer_bits(M)
        c = self.stabilizer_bits(M)
        stab_part = self.stabilizer_product(m)
        destab_part = self.destabilizer_product(c)
        w = symplectic_product(stab_part, destab_part)
        prod = stab_part * destab_part
        if (prod.x, prod.z) != (M.x, M.z):
            raise AssertionError(f"expansion of {format_pauli(M)} lost letters; basis broken")
        ratio = (M.s - w - prod.s) % 4
        if ratio % 2:
            raise AssertionError(f"non-real outcome phase i**{ratio} for {format_pauli(M)}")
        return Expansion(1 - ratio, w, tuple(m), tuple(c))

    def predict(self, M: PauliElement) -> int:
        """Outcome of measuring ``M`` now; pure, no randomness."""
        return self.expand(M).v

    def plan(self, M: PauliElement) -> MeasurementPlan:
        e = self.expand(M)
        if any(e.c):
            return MeasurementPlan(e, BRANCH_ANTICOMMUTING, e.c.index(1))
        if any(e.m):
            return MeasurementPlan(e, BRANCH_COMMUTING, e.m.index(1))
        return MeasurementPlan(e, BRANCH_TRIVIAL, None)

    def apply_plan(self, M: PauliElement, plan: MeasurementPlan, v: int, coin: int) -> None:
        """Row updates for ``plan`` with outcome ``v`` and pivot phase ``coin``."""
        p = plan.pivot
        e = plan.expansion
        if plan.branch == BRANCH_ANTICOMMUTING:
            collapse(self, M, p, e.c, e.m, v)
        elif plan.branch == BRANCH_COMMUTING:
            destabs = self.destabilizers
            pivot_row = destabs[p]
            for k in range(self.n):
                if k != p and e.m[k]:
                    destabs[k] = pivot_row * destabs[k]
            self.stabilizers[p] = signed(M, v)
        else:
            return
        if coin == -1:
            self.destabilizers[p] = -self.destabilizers[p]

    def measure(self, M: PauliElement, phase: int | None = None) -> int:
        """Measure ``M`` and return its predetermined outcome.

        In branches A and B the pivot destabilizer sign is multiplied by a
        fresh uniform coin drawn from ``self.rng``; pass ``phase`` to supply
        that coin instead (no draw is made then).
        """
        plan = self.plan(M)
        v = plan.expansion.v
        if plan.branch == BRANCH_TRIVIAL:
            return v
        coin = self._coin() if phase is None else phase
        self.apply_plan(M, plan, v, coin)
        return v


def sample_shot(circuit, seed) -> "ShotRecord":
    """Run ``circuit`` on :meth:`ComState.init_random` seeded with ``seed``."""
    from stabcom.circuit_io import run_on

    rng = np.random.default_rng(seed)
    state = ComState.init_random(circuit.n, rng)
    return run_on(state, circuit, seed, "com")
