"""Stabilizer/destabilizer tableau shared by the SSTR and COM engines."""
from __future__ import annotations

import copy as _copy
from typing import Iterable, Sequence

import numpy as np

from stabcom.pauli import (
    PauliElement,
    conjugate_cnot,
    conjugate_h,
    conjugate_s,
    format_pauli,
    parse_pauli,
    single,
    symplectic_product,
)

GATES = ("h", "s", "cnot")


class TableauError(AssertionError):
    """A tableau invariant was violated (an implementation bug, not bad input)."""


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of integers read as bit vectors."""
    basis: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                rank += 1
                break
            v ^= basis[top]
    return rank


class StabilizerTableau:
    """``n`` stabilizer generators ``M_k`` paired with destabilizers ``C_k``.

    Rows are kept in pairs: ``destabilizers[k]`` anticommutes with
    ``stabilizers[k]`` and commutes with every other stabilizer.
    """

    def __init__(
        self,
        stabilizers: Sequence[PauliElement],
        destabilizers: Sequence[PauliElement],
        rng: np.random.Generator | int | None = None,
    ):
        if len(stabilizers) != len(destabilizers) or not stabilizers:
            raise ValueError("need n >= 1 stabilizers and as many destabilizers")
        self.n = stabilizers[0].n
        self.stabilizers = list(stabilizers)
        self.destabilizers = list(destabilizers)
        self.rng = np.random.default_rng(rng)

    @classmethod
    def from_text(cls, stabilizers: Iterable[str], destabilizers: Iterable[str], rng=None):
        return cls(
            [parse_pauli(t) for t in stabilizers],
            [parse_pauli(t) for t in destabilizers],
            rng,
        )

    @staticmethod
    def _basis(n: int, signs: Sequence[int] | None = None):
        if n < 1:
            raise ValueError(f"qubit count must be positive, got {n}")
        signs = signs if signs is not None else [1] * n
        stabs = [single(n, k, "Z") for k in range(n)]
        destabs = [single(n, k, "X", signs[k]) for k in range(n)]
        return stabs, destabs

    def _coin(self) -> int:
        return 1 - 2 * int(self.rng.integers(2))

    # Clifford gates

    def h(self, q: int) -> None:
        self.stabilizers = [conjugate_h(p, q) for p in self.stabilizers]
        self.destabilizers = [conjugate_h(p, q) for p in self.destabilizers]

    def s(self, q: int) -> None:
        self.stabilizers = [conjugate_s(p, q) for p in self.stabilizers]
        self.destabilizers = [conjugate_s(p, q) for p in self.destabilizers]

    def cnot(self, control: int, target: int) -> None:
        self.stabilizers = [conjugate_cnot(p, control, target) for p in self.stabilizers]
        self.destabilizers = [conjugate_cnot(p, control, target) for p in self.destabilizers]

    def apply_gate(self, gate: str, *qubits: int) -> None:
        name = gate.lower()
        if name not in GATES:
            raise ValueError(f"unknown gate {gate!r}")
        arity = 2 if name == "cnot" else 1
        if len(qubits) != arity:
            raise ValueError(f"{name} takes {arity} qubit(s), got {len(qubits)}")
        getattr(self, name)(*qubits)

    # Commutation bookkeeping

    def _check_observable(self, M: PauliElement) -> None:
        if M.n != self.n:
            raise ValueError(f"dimension mismatch: observable on {M.n} qubits, state has {self.n}")
        if not M.is_hermitian:
            raise ValueError(f"observable {format_pauli(M)} is not Hermitian")
        if M.is_identity:
            raise ValueError("measuring a multiple of the identity is not supported")

    def stabilizer_bits(self, M: PauliElement) -> list[int]:
        """``c_k = M . M_k``: which stabilizers anticommute with ``M``."""
        return [symplectic_product(M, g) for g in self.stabilizers]

    def destabilizer_bits(self, M: PauliElement) -> list[int]:
        """``m_k = M . C_k``: the stabilizer exponents of ``M``."""
        return [symplectic_product(M, g) for g in self.destabilizers]

    def stabilizer_product(self, bits: Sequence[int]) -> PauliElement:
        out = PauliElement(self.n, 0, 0, 0)
        for g, b in zip(self.stabilizers, bits):
            if b:
                out = out * g
        return out

    def destabilizer_product(self, bits: Sequence[int]) -> PauliElement:
        out = PauliElement(self.n, 0, 0, 0)
        for g, b in zip(self.destabilizers, bits):
            if b:
                out = out * g
        return out

    # Structure

    def check_invariants(self) -> None:
        """Raise :class:`TableauError` unless the rows form a symplectic basis."""
        rows = self.stabilizers + self.destabilizers
        n = self.n
        for p in rows:
            if p.n != n:
                raise TableauError(f"row {format_pauli(p)} has width {p.n}, expected {n}")
            if not p.is_hermitian:
                raise TableauError(f"row {format_pauli(p)} is not Hermitian")
        for i in range(n):
            for j in range(n):
                if symplectic_product(self.stabilizers[i], self.stabilizers[j]):
                    raise TableauError(f"stabilizers {i} and {j} anticommute")
                if symplectic_product(self.destabilizers[i], self.destabilizers[j]):
                    raise TableauError(f"destabilizers {i} and {j} anticommute")
                want = int(i == j)
                if symplectic_product(self.stabilizers[i], self.destabilizers[j]) != want:
                    raise TableauError(f"stabilizer {i} / destabilizer {j} pairing broken")
        if gf2_rank((p.x << n) | p.z for p in rows) != 2 * n:
            raise TableauError("rows are not independent")

    def copy(self):
        """Independent copy; rows are immutable so only the lists are copied."""
        return type(self)(list(self.stabilizers), list(self.destabilizers), _copy.deepcopy(self.rng))

    def rows(self) -> list[PauliElement]:
        return self.stabilizers + self.destabilizers

    def dump(self) -> str:
        """One row per line: stabilizers first, then destabilizers."""
        return "\n".join(format_pauli(p) for p in self.rows()) + "\n"

    def same_rows(self, other: StabilizerTableau) -> bool:
        return self.stabilizers == other.stabilizers and self.destabilizers == other.destabilizers

    def __repr__(self) -> str:
        stabs = ", ".join(format_pauli(p) for p in self.stabilizers)
        destabs = ", ".join(format_pauli(p) for p in self.destabilizers)
        return f"{type(self).__name__}({{{stabs}; {destabs}}})"
