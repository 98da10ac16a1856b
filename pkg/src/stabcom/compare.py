"""Differential checks of the tableau engines against the dense oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from stabcom import oracle
from stabcom.batch import joint_counts, sample_batch
from stabcom.circuit_io import Circuit, Gate, format_outcomes
from stabcom.sstr import SstrState

SIGMA = 5.0


@dataclass
class OutcomeStat:
    outcome: tuple[int, ...]
    p_oracle: float
    count: int
    z: float


@dataclass
class DiffReport:
    engine: str
    shots: int
    stats: list[OutcomeStat]
    support_violations: list[tuple[int, ...]] = field(default_factory=list)
    missing: list[tuple[int, ...]] = field(default_factory=list)
    sigma: float = SIGMA

    @property
    def max_abs_z(self) -> float:
        return max((abs(s.z) for s in self.stats), default=0.0)

    @property
    def passed(self) -> bool:
        return not self.support_violations and not self.missing and self.max_abs_z <= self.sigma

    def lines(self) -> list[str]:
        out = [f"[{self.engine}] shots={self.shots} threshold={self.sigma:g} sigma (binomial)"]
        for s in self.stats:
            out.append(
                f"  {format_outcomes(s.outcome) or '(none)':>10}  p={s.p_oracle:.6f}  "
                f"count={s.count:>7}  z={s.z:+.2f}"
            )
        for o in self.support_violations:
            out.append(f"  SUPPORT VIOLATION: {format_outcomes(o)} has oracle probability 0")
        for o in self.missing:
            out.append(f"  MISSING: {format_outcomes(o)} never observed")
        out.append(f"  verdict: {'PASS' if self.passed else 'FAIL'}")
        return out


def compare(dist: dict[tuple[int, ...], float], counts: dict[tuple[int, ...], int],
            shots: int, engine: str = "", sigma: float = SIGMA) -> DiffReport:
    """Per-outcome binomial z-scores of ``counts`` against exact ``dist``."""
    stats, violations, missing = [], [], []
    for key in sorted(set(dist) | set(counts), reverse=True):
        p = dist.get(key, 0.0)
        if p >= 1 - oracle.PROB_TOL:
            p = 1.0
        cnt = counts.get(key, 0)
        sd = math.sqrt(shots * p * (1 - p))
        if p <= oracle.PROB_TOL:
            violations.append(key)
            z = math.inf
        elif cnt == 0:
            missing.append(key)
            z = (cnt - shots * p) / sd if sd else -math.inf
        elif sd == 0:
            z = 0.0 if cnt == shots else -math.inf
        else:
            z = (cnt - shots * p) / sd
        stats.append(OutcomeStat(key, p, cnt, z))
    return DiffReport(engine, shots, stats, violations, missing, sigma)


def diff_circuit(circuit: Circuit, shots: int, seed: int | None = 0,
                 engines=("com", "sstr"), sigma: float = SIGMA) -> dict[str, DiffReport]:
    dist = oracle.run_circuit_distribution(circuit)
    rng = np.random.default_rng(seed)
    reports = {}
    for engine in engines:
        outcomes = sample_batch(circuit, shots, rng, engine)
        reports[engine] = compare(dist, joint_counts(outcomes), shots, engine, sigma)
    return reports


@dataclass
class LockstepResult:
    determinate_checked: int
    mismatches: list[str]


def lockstep_sstr(circuit: Circuit, rng: np.random.Generator | int | None = None) -> LockstepResult:
    """One SSTR shot run beside the statevector, branch for branch.

    At each measurement the SSTR must be determinate exactly when the oracle
    probability is 0 or 1, agree on the sign when determinate, and the oracle
    is then collapsed onto the SSTR outcome.
    """
    rng = np.random.default_rng(rng)
    state = SstrState.init(circuit.n, rng)
    sv = oracle.StateVector.zero(circuit.n)
    checked = 0
    mismatches = []
    for ins in circuit.instructions:
        if isinstance(ins, Gate):
            state.apply_gate(ins.name, *ins.qubits)
            sv = sv.apply_gate(ins.name, *ins.qubits)
            continue
        det = state.extract_value(ins.pauli)
        res = oracle.measure_pauli(sv, ins.pauli)
        p = res.p_plus
        oracle_det = None
        if abs(p - 1) < oracle.PROB_TOL:
            oracle_det = 1
        elif p < oracle.PROB_TOL:
            oracle_det = -1
        elif abs(p - 0.5) > oracle.PROB_TOL:
            mismatches.append(f"{ins.label}: non-dyadic oracle probability {p}")
        if det != oracle_det:
            mismatches.append(f"{ins.label}: sstr {det} vs oracle {oracle_det} (p+={p:.3f})")
        if det is not None:
            checked += 1
        outcome = state.measure(ins.pauli)
        if det is not None and outcome != det:
            mismatches.append(f"{ins.label}: determinate value {det} but measured {outcome}")
        branch = res.branch(outcome)
        if branch is None:
            mismatches.append(f"{ins.label}: sstr outcome {outcome} has oracle probability 0")
            break
        sv = branch
    return LockstepResult(checked, mismatches)
