"""Measurement through an entangled pointer qubit.

A one-qubit pointer is appended in its initial COM state ``{Z; cX}``, a CNOT
copies the measured qubit onto it, and the pointer's Z is measured with the
ordinary COM update. Exchanging two generators then decouples the pointer,
which is dropped. The sign left on the pivot destabilizer of the measured
system is the pointer's initial sign ``c``; the extra coin ``d`` drawn by the
pointer measurement only ever touches the discarded pointer rows.
"""
from __future__ import annotations

from dataclasses import dataclass

from stabcom.com import BRANCH_ANTICOMMUTING, ComState
from stabcom.pauli import (
    PauliElement,
    conjugate_cnot,
    conjugate_h,
    conjugate_s,
    drop_last,
    extend,
    format_pauli,
    single,
    swap_qubits,
    symplectic_product,
)
from stabcom.tableau import TableauError


@dataclass(frozen=True)
class MicroscopeTrace:
    initial_pointer_phase: int
    pointer_outcome: int
    branch_d_phase: int
    final_destabilizer_phase: int
    pivot: int
    branch: str

    def as_dict(self) -> dict:
        return {
            "initial_pointer_phase": self.initial_pointer_phase,
            "pointer_outcome": self.pointer_outcome,
            "branch_d_phase": self.branch_d_phase,
            "final_destabilizer_phase": self.final_destabilizer_phase,
            "pivot": self.pivot,
            "branch": self.branch,
        }


def append_pointer(state: ComState, phase: int | None = None) -> ComState:
    """New state with a pointer qubit appended at index ``n``.

    Existing rows gain a trailing identity; the pointer contributes the pair
    ``+Z`` / ``c X`` with ``c`` drawn from the state's generator unless
    ``phase`` is given. The returned state shares ``state.rng``.
    """
    c = state._coin() if phase is None else phase
    n = state.n + 1
    stabs = [extend(p) for p in state.stabilizers] + [single(n, n - 1, "Z")]
    destabs = [extend(p) for p in state.destabilizers] + [single(n, n - 1, "X", c)]
    return ComState(stabs, destabs, state.rng)


def entangle(state: ComState, system_qubit: int | None = None) -> ComState:
    """CNOT from ``system_qubit`` (default: last system qubit) onto the pointer."""
    pointer = state.n - 1
    if pointer < 1:
        raise ValueError("no pointer qubit present")
    if system_qubit is None:
        system_qubit = pointer - 1
    out = ComState(
        [conjugate_cnot(p, system_qubit, pointer) for p in state.stabilizers],
        [conjugate_cnot(p, system_qubit, pointer) for p in state.destabilizers],
        state.rng,
    )
    return out


def _pointer_letter(p: PauliElement) -> tuple[int, int]:
    q = p.n - 1
    return (p.x >> q) & 1, (p.z >> q) & 1


def _system_part(p: PauliElement) -> PauliElement:
    """Drop a pointer letter that is I or X (neither carries an i**(xz) factor)."""
    bx, bz = _pointer_letter(p)
    if bz:
        raise TableauError(f"row {format_pauli(p)} has Z or Y on the pointer")
    return drop_last(PauliElement(p.n, p.x & ~(bx << (p.n - 1)), p.z, p.s))


def measure_via_microscope(state: ComState) -> tuple[int, ComState, MicroscopeTrace]:
    """Measure the pointer of an entangled state, rebase, and drop the pointer.

    ``state`` must come from :func:`append_pointer` followed by
    :func:`entangle` on its last system qubit. Returns the outcome, the
    reduced ``n``-qubit state and the trace. ``state`` itself is not modified;
    its generator supplies the pointer measurement coin.
    """
    n1 = state.n
    ptr = n1 - 1
    sys_q = ptr - 1
    if state.stabilizers[ptr] != PauliElement(n1, 0, (1 << ptr) | (1 << sys_q)):
        raise ValueError("last stabilizer is not the entangled pointer stabilizer +..ZZ")
    if (state.destabilizers[ptr].x, state.destabilizers[ptr].z) != (1 << ptr, 0):
        raise ValueError("last destabilizer is not the pointer destabilizer +-..X")
    c = state.destabilizers[ptr].sign

    work = ComState(list(state.stabilizers), list(state.destabilizers), state.rng)
    pointer_z = single(n1, ptr, "Z")
    plan = work.plan(pointer_z)
    p = plan.pivot
    if p is None or p == ptr:
        raise TableauError("pointer measurement pivot must be a system row")
    # the row that becomes the retained destabilizer, before the update touches it
    source = state.stabilizers[p] if plan.branch == BRANCH_ANTICOMMUTING else state.destabilizers[p]
    retained_destab = _system_part(source)

    outcome = work.measure(pointer_z)

    # generator exchange: keeps both groups, moves all pointer content to row p
    sys_stab = work.stabilizers[p] * work.stabilizers[ptr]
    ptr_destab = work.destabilizers[p] * work.destabilizers[ptr]
    if symplectic_product(sys_stab, ptr_destab):
        raise TableauError("exchanged generators anticommute")
    work.stabilizers[ptr] = sys_stab
    work.destabilizers[p] = ptr_destab
    if (ptr_destab.x, ptr_destab.z) != (1 << ptr, 0):
        raise TableauError(f"rebased pointer destabilizer is {format_pauli(ptr_destab)}")
    cd = ptr_destab.sign
    d = cd * c

    sys_mask = (1 << ptr) - 1
    for k in range(n1):
        for row in (work.stabilizers[k], work.destabilizers[k]):
            if k == p:
                if (row.x | row.z) & sys_mask:
                    raise TableauError(f"pointer row {format_pauli(row)} touches the system")
            elif _pointer_letter(row) != (0, 0):
                raise TableauError(f"system row {format_pauli(row)} touches the pointer")

    stabs, destabs = [], []
    for k in range(ptr):
        src = ptr if k == p else k
        stabs.append(drop_last(work.stabilizers[src]))
        destabs.append(drop_last(work.destabilizers[src]))
    reduced = ComState(stabs, destabs, state.rng)

    if reduced.destabilizers[p] == retained_destab:
        final = 1
    elif reduced.destabilizers[p] == -retained_destab:
        final = -1
    else:
        raise TableauError("retained pivot destabilizer lost its letters")
    trace = MicroscopeTrace(c, outcome, d, final, p, plan.branch)
    return outcome, reduced, trace


def _swap_all(state: ComState, a: int, b: int) -> ComState:
    if a == b:
        return ComState(list(state.stabilizers), list(state.destabilizers), state.rng)
    return ComState(
        [swap_qubits(p, a, b) for p in state.stabilizers],
        [swap_qubits(p, a, b) for p in state.destabilizers],
        state.rng,
    )


def run_full_microscope(state: ComState, system_qubit: int,
                        pointer_phase: int | None = None) -> tuple[int, ComState, MicroscopeTrace]:
    """Measure Z on ``system_qubit`` through a freshly appended pointer.

    The qubit is relabelled to the last position first and back afterwards.
    Randomness comes from ``state.rng``: the pointer sign (unless
    ``pointer_phase`` is given), then the pointer-measurement coin.
    """
    last = state.n - 1
    if not 0 <= system_qubit <= last:
        raise IndexError(f"qubit {system_qubit} out of range for n={state.n}")
    moved = _swap_all(state, system_qubit, last)
    entangled = entangle(append_pointer(moved, pointer_phase), last)
    outcome, reduced, trace = measure_via_microscope(entangled)
    return outcome, _swap_all(reduced, system_qubit, last), trace


def reduction_gates(M: PauliElement) -> tuple[list[tuple[str, tuple[int, ...]]], int, int]:
    """Clifford gates taking ``M`` to ``sign * Z_target``.

    Y letters are turned into X by three S gates, X into Z by H, and the Z
    string is folded onto its last qubit with CNOTs. Returns
    ``(gates, target, sign)``.
    """
    if M.is_identity:
        raise ValueError("identity has no reduction")
    gates: list[tuple[str, tuple[int, ...]]] = []
    support = [q for q in range(M.n) if ((M.x | M.z) >> q) & 1]
    for q in support:
        letter = M.letter(q)
        if letter == "Y":
            gates += [("s", (q,))] * 3
        if letter in "XY":
            gates.append(("h", (q,)))
    target = support[-1]
    gates += [("cnot", (q, target)) for q in support[:-1]]
    P = M
    for name, qs in gates:
        P = _conjugate(P, name, qs)
    expected = single(M.n, target, "Z")
    if (P.x, P.z) != (expected.x, expected.z):
        raise AssertionError(f"reduction of {format_pauli(M)} ended at {format_pauli(P)}")
    return gates, target, P.sign


def _conjugate(p: PauliElement, name: str, qs: tuple[int, ...]) -> PauliElement:
    if name == "h":
        return conjugate_h(p, *qs)
    if name == "s":
        return conjugate_s(p, *qs)
    return conjugate_cnot(p, *qs)


def _inverse(gates):
    out = []
    for name, qs in reversed(gates):
        out += [(name, qs)] * (3 if name == "s" else 1)
    return out


def measure_pauli_via_microscope(state: ComState, M: PauliElement,
                                 pointer_phase: int | None = None) -> tuple[int, ComState, MicroscopeTrace]:
    """Measure an arbitrary Hermitian Pauli ``M`` through the microscope."""
    state._check_observable(M)
    gates, target, sign = reduction_gates(M)
    work = state.copy()
    work.rng = state.rng
    for name, qs in gates:
        work.apply_gate(name, *qs)
    outcome, reduced, trace = run_full_microscope(work, target, pointer_phase)
    for name, qs in _inverse(gates):
        reduced.apply_gate(name, *qs)
    return sign * outcome, reduced, trace


@dataclass(frozen=True)
class PairedResult:
    """Microscope measurement set against the direct COM update."""

    predicted: int
    outcome: int
    direct_outcome: int
    states_match: bool
    trace: MicroscopeTrace

    @property
    def outcome_match(self) -> bool:
        return self.outcome == self.direct_outcome == self.predicted

    @property
    def provenance(self) -> bool:
        return self.trace.final_destabilizer_phase == self.trace.initial_pointer_phase

    @property
    def passed(self) -> bool:
        return self.outcome_match and self.states_match and self.provenance


def paired_run(state: ComState, M: PauliElement) -> tuple[PairedResult, ComState]:
    """Measure ``M`` via the microscope and directly with the coin set to ``c``.

    ``state`` is left untouched apart from its generator, which supplies the
    pointer sign and the pointer-measurement coin. Returns the comparison and
    the microscope's reduced state.
    """
    predicted = state.predict(M)
    outcome, reduced, trace = measure_pauli_via_microscope(state, M)
    direct = state.copy()
    direct_outcome = direct.measure(M, phase=trace.initial_pointer_phase)
    result = PairedResult(predicted, outcome, direct_outcome, direct.same_rows(reduced), trace)
    return result, reduced
