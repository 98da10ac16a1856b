"""Dense statevector reference for small registers.

Basis index convention: qubit 0 (the leftmost Pauli letter) is the most
significant bit, so ``pauli_matrix`` is the plain Kronecker product in
letter order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from stabcom.pauli import PauliElement

DEFAULT_CAP = 12
NORM_TOL = 1e-12
PROB_TOL = 1e-9

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


class OracleCapError(ValueError):
    """Register too large for the dense oracle."""


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleCapError(f"{n} qubits exceeds the oracle cap of {cap}")


def pauli_matrix(p: PauliElement, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``i**s * kron_k i**(x_k z_k) X**x_k Z**z_k`` as a dense matrix."""
    _check_cap(p.n, cap)
    out = np.array([[1j ** p.s]], dtype=complex)
    for q in range(p.n):
        bx = (p.x >> q) & 1
        bz = (p.z >> q) & 1
        f = (1j ** (bx & bz)) * np.linalg.matrix_power(_X, bx) @ np.linalg.matrix_power(_Z, bz)
        out = np.kron(out, f)
    return out


def gate_matrix(name: str, qubits: tuple[int, ...], n: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Dense unitary of a Clifford gate acting on an ``n``-qubit register."""
    _check_cap(n, cap)
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[col] = 1
        out[:, col] = _apply_gate_vec(e, name, qubits, n)
    return out


def _apply_1q(psi: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
    t = psi.reshape([2] * n)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def _apply_gate_vec(psi: np.ndarray, name: str, qubits: tuple[int, ...], n: int) -> np.ndarray:
    name = name.lower()
    if name == "h":
        return _apply_1q(psi, _H, qubits[0], n)
    if name == "s":
        return _apply_1q(psi, _S, qubits[0], n)
    if name == "cnot":
        c, t = qubits
        if c == t:
            raise ValueError("CNOT control and target must differ")
        tens = psi.reshape([2] * n).copy()
        sel = [slice(None)] * n
        sel[c] = 1
        axis = t if t < c else t - 1
        tens[tuple(sel)] = np.flip(tens[tuple(sel)], axis=axis)
        return tens.reshape(-1)
    raise ValueError(f"unknown gate {name!r}")


def _index_mask(bits: int, n: int) -> int:
    """Map Pauli bit ``k`` (qubit k) to basis-index bit ``n-1-k``."""
    out = 0
    for k in range(n):
        if (bits >> k) & 1:
            out |= 1 << (n - 1 - k)
    return out


def apply_pauli(psi: np.ndarray, p: PauliElement) -> np.ndarray:
    """``p |psi>`` without forming the dense matrix."""
    n = p.n
    idx = np.arange(2 ** n, dtype=np.uint64)
    xm = np.uint64(_index_mask(p.x, n))
    zm = np.uint64(_index_mask(p.z, n))
    signs = 1 - 2 * (np.bitwise_count(idx & zm) & 1).astype(np.int64)
    phase = 1j ** ((p.s + (p.x & p.z).bit_count()) % 4)
    out = np.empty_like(psi)
    out[(idx ^ xm).astype(np.intp)] = phase * signs * psi
    return out


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n: int, cap: int = DEFAULT_CAP) -> StateVector:
        _check_cap(n, cap)
        amps = np.zeros(2 ** n, dtype=complex)
        amps[0] = 1
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def apply_gate(self, name: str, *qubits: int) -> StateVector:
        for q in qubits:
            if not 0 <= q < self.n:
                raise IndexError(f"qubit {q} out of range for n={self.n}")
        return StateVector(self.n, _apply_gate_vec(self.amplitudes, name, qubits, self.n))

    def expectation(self, M: PauliElement) -> float:
        val = np.vdot(self.amplitudes, apply_pauli(self.amplitudes, M))
        return float(val.real)


@dataclass
class PauliMeasurement:
    p_plus: float
    plus: StateVector | None
    minus: StateVector | None

    def probability(self, outcome: int) -> float:
        return self.p_plus if outcome == 1 else 1.0 - self.p_plus

    def branch(self, outcome: int) -> StateVector | None:
        return self.plus if outcome == 1 else self.minus


def measure_pauli(sv: StateVector, M: PauliElement) -> PauliMeasurement:
    """Projective measurement with projectors ``(I +- M)/2``."""
    if M.n != sv.n:
        raise ValueError(f"dimension mismatch: {M.n} vs {sv.n}")
    if not M.is_hermitian or M.is_identity:
        raise ValueError("observable must be Hermitian and not a multiple of the identity")
    if abs(sv.norm() - 1) > NORM_TOL:
        raise ValueError(f"state norm {sv.norm()} is not 1")
    psi = sv.amplitudes
    m_psi = apply_pauli(psi, M)
    plus = (psi + m_psi) / 2
    minus = (psi - m_psi) / 2
    p_plus = float(np.vdot(psi, plus).real)
    p_plus = min(1.0, max(0.0, p_plus))

    def renorm(v, p):
        return StateVector(sv.n, v / math.sqrt(p)) if p > PROB_TOL else None

    return PauliMeasurement(p_plus, renorm(plus, p_plus), renorm(minus, 1 - p_plus))


def run_circuit_distribution(circuit, cap: int = DEFAULT_CAP) -> dict[tuple[int, ...], float]:
    """Exact joint law of all measurement outcomes, by branching.

    Keys are outcome tuples in program order, values their probabilities.
    """
    from stabcom.circuit_io import Gate

    _check_cap(circuit.n, cap)
    dist: dict[tuple[int, ...], float] = {}

    def walk(sv: StateVector, pos: int, prefix: tuple[int, ...], prob: float) -> None:
        ins = circuit.instructions
        while pos < len(ins) and isinstance(ins[pos], Gate):
            sv = sv.apply_gate(ins[pos].name, *ins[pos].qubits)
            pos += 1
        if pos == len(ins):
            dist[prefix] = dist.get(prefix, 0.0) + prob
            return
        res = measure_pauli(sv, ins[pos].pauli)
        for outcome in (1, -1):
            p = res.probability(outcome)
            if p > PROB_TOL:
                walk(res.branch(outcome), pos + 1, prefix + (outcome,), prob * p)

    walk(StateVector.zero(circuit.n, cap), 0, (), 1.0)
    return dist
