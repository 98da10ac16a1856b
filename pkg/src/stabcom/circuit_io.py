"""Plain-text stabilizer circuits (``.stab``), shot records and demo circuits.

Grammar, one instruction per line, ``#`` starts a comment::

    qubits <n>                      # required, first instruction
    h <q> | s <q> | cnot <c> <t>    # 1-based qubit indices
    measure <pauli> [as <label>]    # e.g. "measure -XIZ as parity"

Unlabeled measurements are named ``m1, m2, ...`` by their position among
the measurements. Internally qubits are 0-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from stabcom.pauli import PauliElement, format_pauli, parse_pauli


class CircuitError(ValueError):
    """Malformed circuit text or an invalid instruction."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Measure:
    pauli: PauliElement
    label: str


Instruction = Union[Gate, Measure]


@dataclass
class Circuit:
    n: int
    instructions: list[Instruction] = field(default_factory=list)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n < 1:
            raise CircuitError(f"qubit count must be positive, got {self.n}")
        labels = set()
        for ins in self.instructions:
            if isinstance(ins, Gate):
                _check_gate(ins, self.n)
            else:
                _check_measure(ins, self.n)
                if ins.label in labels:
                    raise CircuitError(f"duplicate measurement label {ins.label!r}")
                labels.add(ins.label)

    @property
    def measurements(self) -> list[Measure]:
        return [ins for ins in self.instructions if isinstance(ins, Measure)]

    @property
    def gates(self) -> list[Gate]:
        return [ins for ins in self.instructions if isinstance(ins, Gate)]


def _check_gate(gate: Gate, n: int) -> None:
    arity = {"h": 1, "s": 1, "cnot": 2}.get(gate.name)
    if arity is None:
        raise CircuitError(f"unknown gate {gate.name!r}")
    if len(gate.qubits) != arity:
        raise CircuitError(f"{gate.name} takes {arity} qubit(s)")
    for q in gate.qubits:
        if not 0 <= q < n:
            raise CircuitError(f"qubit {q + 1} out of range 1..{n}")
    if gate.name == "cnot" and gate.qubits[0] == gate.qubits[1]:
        raise CircuitError("cnot control and target must differ")


def _check_measure(m: Measure, n: int) -> None:
    if m.pauli.n != n:
        raise CircuitError(f"observable {format_pauli(m.pauli)} has width {m.pauli.n}, expected {n}")
    if m.pauli.is_identity:
        raise CircuitError("identity observable cannot be measured")
    if not m.pauli.is_hermitian:
        raise CircuitError(f"observable {format_pauli(m.pauli)} is not Hermitian")


def parse(text: str) -> Circuit:
    n = None
    instructions: list[Instruction] = []
    labels: set[str] = set()
    n_meas = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        word = word.lower()
        if n is None:
            if word != "qubits":
                raise CircuitError("missing 'qubits <n>' header", lineno)
            n = _int_arg(args, 1, lineno)[0]
            if n < 1:
                raise CircuitError("qubit count must be positive", lineno)
            continue
        if word == "qubits":
            raise CircuitError("repeated 'qubits' header", lineno)
        if word in ("h", "s", "cnot"):
            arity = 2 if word == "cnot" else 1
            qubits = tuple(q - 1 for q in _int_arg(args, arity, lineno))
            try:
                _check_gate(Gate(word, qubits), n)
            except CircuitError as exc:
                raise CircuitError(str(exc), lineno) from None
            instructions.append(Gate(word, qubits))
        elif word == "measure":
            n_meas += 1
            if len(args) == 1:
                label = f"m{n_meas}"
            elif len(args) == 3 and args[1].lower() == "as":
                label = args[2]
            else:
                raise CircuitError("expected 'measure <pauli> [as <label>]'", lineno)
            try:
                pauli = parse_pauli(args[0])
                _check_measure(Measure(pauli, label), n)
            except ValueError as exc:
                raise CircuitError(str(exc), lineno) from None
            if label in labels:
                raise CircuitError(f"duplicate measurement label {label!r}", lineno)
            labels.add(label)
            instructions.append(Measure(pauli, label))
        else:
            raise CircuitError(f"unknown keyword {word!r}", lineno)
    if n is None:
        raise CircuitError("missing 'qubits <n>' header")
    return Circuit(n, instructions)


def _int_arg(args: list[str], count: int, lineno: int) -> list[int]:
    if len(args) != count:
        raise CircuitError(f"expected {count} integer argument(s)", lineno)
    try:
        return [int(a) for a in args]
    except ValueError:
        raise CircuitError(f"non-integer argument in {args}", lineno) from None


def serialize(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n}"]
    for ins in circuit.instructions:
        if isinstance(ins, Gate):
            lines.append(" ".join([ins.name, *(str(q + 1) for q in ins.qubits)]))
        else:
            lines.append(f"measure {format_pauli(ins.pauli)} as {ins.label}")
    return "\n".join(lines) + "\n"


@dataclass
class ShotRecord:
    seed: int | None
    outcomes: list[tuple[str, int]]
    engine: str = ""

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.outcomes)

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "engine": self.engine,
                "outcomes": [{"label": k, "value": v} for k, v in self.outcomes],
            }
        )


def run_on(state, circuit: Circuit, seed=None, engine: str = "") -> ShotRecord:
    """Apply ``circuit`` to ``state`` in place and record every outcome."""
    if state.n != circuit.n:
        raise ValueError(f"state has {state.n} qubits, circuit {circuit.n}")
    outcomes = []
    for ins in circuit.instructions:
        if isinstance(ins, Gate):
            state.apply_gate(ins.name, *ins.qubits)
        else:
            outcomes.append((ins.label, state.measure(ins.pauli)))
    return ShotRecord(seed, outcomes, engine)


def format_outcomes(values: Iterable[int]) -> str:
    """``(1, -1, 1)`` -> ``"+-+"``."""
    return "".join("+" if v == 1 else "-" for v in values)


# Demo circuits

PERES_MERMIN_SQUARE = (
    ("XI", "IX", "XX"),
    ("IZ", "ZI", "ZZ"),
    ("XZ", "ZX", "YY"),
)
# product of outcomes within each context, fixed by operator algebra
PERES_MERMIN_PRODUCTS = {
    "row1": 1, "row2": 1, "row3": 1,
    "col1": 1, "col2": 1, "col3": -1,
}
GHZ_EXPECTED = {"xxx": 1, "xyy": -1, "yxy": -1, "yyx": -1}

_BELL = "h 1\ncnot 1 2\n"
_GHZ = "h 1\ncnot 1 2\ncnot 1 3\n"
_PM_INPUT = "h 1\nh 2\ns 2\ncnot 1 2\n"


def _demo_sources() -> dict[str, str]:
    demos = {
        "bell": "qubits 2\n" + _BELL + "measure IZ\nmeasure ZI\n",
        "microscope": "qubits 2\n" + _BELL + "measure IZ\n",
        "ghz": "qubits 3\n" + _GHZ + "".join(f"measure {k.upper()}\n" for k in GHZ_EXPECTED),
    }
    for key in GHZ_EXPECTED:
        demos[f"ghz-{key}"] = "qubits 3\n" + _GHZ + f"measure {key.upper()}\n"
    for i in range(3):
        row = PERES_MERMIN_SQUARE[i]
        col = [PERES_MERMIN_SQUARE[r][i] for r in range(3)]
        for kind, ctx in (("row", row), ("col", col)):
            demos[f"peres-mermin-{kind}{i + 1}"] = (
                "qubits 2\n" + _PM_INPUT + "".join(f"measure {p}\n" for p in ctx)
            )
    return demos


DEMOS = _demo_sources()


def demo(name: str) -> Circuit:
    try:
        return parse(DEMOS[name])
    except KeyError:
        raise KeyError(f"unknown demo {name!r}; choose from {sorted(DEMOS)}") from None


def _random_bits(n: int, rng: np.random.Generator) -> int:
    bits = rng.integers(2, size=n, dtype=np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def random_pauli(n: int, rng: np.random.Generator) -> PauliElement:
    """Uniform non-identity Hermitian element with a uniform sign."""
    while True:
        x, z = (_random_bits(n, rng) for _ in range(2))
        if x or z:
            return PauliElement(n, x, z, 2 * int(rng.integers(2)))


def random_circuit(n: int, depth: int, n_measurements: int,
                   rng: np.random.Generator | int | None = None) -> Circuit:
    """``depth`` random H/S/CNOT gates with measurements at random positions."""
    rng = np.random.default_rng(rng)
    names = ["h", "s", "cnot"] if n > 1 else ["h", "s"]
    slots = sorted(int(i) for i in rng.integers(depth + 1, size=n_measurements))
    instructions: list[Instruction] = []
    k = 0
    for pos in range(depth + 1):
        while k < len(slots) and slots[k] == pos:
            instructions.append(Measure(random_pauli(n, rng), f"m{k + 1}"))
            k += 1
        if pos == depth:
            break
        name = names[int(rng.integers(len(names)))]
        if name == "cnot":
            c, t = (int(q) for q in rng.choice(n, size=2, replace=False))
            instructions.append(Gate(name, (c, t)))
        else:
            instructions.append(Gate(name, (int(rng.integers(n)),)))
    return Circuit(n, instructions)
