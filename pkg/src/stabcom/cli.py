"""Command line front end.

    stabcom run --engine com --seed 7 --shots 3 bell.stab
    stabcom run --engine sstr demo:ghz-xxx --shots 100
    stabcom diff demo:bell --shots 10000
    stabcom diff --random 200 --qubits 4
    stabcom microscope demo:microscope --seeds 100
    stabcom bench --max-n 4096 --reps 20 --csv bench.csv

Records go to stdout, diagnostics to stderr. Exit codes: 0 ok, 1 a check
failed, 2 parse/usage error, 3 oracle cap exceeded, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from stabcom import bench, oracle
from stabcom.circuit_io import (
    DEMOS,
    Circuit,
    CircuitError,
    Gate,
    ShotRecord,
    demo,
    format_outcomes,
    parse,
    random_circuit,
)
from stabcom.com import ComState
from stabcom.com import sample_shot as com_shot
from stabcom.compare import diff_circuit
from stabcom.microscope import paired_run
from stabcom.sstr import sample_shot as sstr_shot

log = logging.getLogger("stabcom")

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_IO = 4


def shot_seed(seed: int, index: int) -> int:
    """Per-shot seed derived from ``(seed, index)``; independent of worker order."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def load_circuit(source: str) -> Circuit:
    if source.startswith("demo:"):
        return demo(source[5:])
    with open(source, encoding="utf-8") as fh:
        return parse(fh.read())


def _emit(record: ShotRecord, fmt: str, index: int) -> None:
    if fmt == "json":
        print(record.to_json())
    else:
        vals = " ".join(f"{k}={v:+d}" for k, v in record.outcomes)
        print(f"shot {index} seed={record.seed}: {vals}")


def cmd_run(args) -> int:
    circuit = load_circuit(args.circuit)
    if args.engine == "oracle":
        dist = oracle.run_circuit_distribution(circuit, cap=args.cap)
        keys = sorted(dist, reverse=True)
        probs = np.array([dist[k] for k in keys])
        labels = [m.label for m in circuit.measurements]
        for i in range(args.shots):
            s = shot_seed(args.seed, i)
            pick = np.random.default_rng(s).choice(len(keys), p=probs / probs.sum())
            _emit(ShotRecord(s, list(zip(labels, keys[pick])), "oracle"), args.format, i)
        return 0
    sampler = com_shot if args.engine == "com" else sstr_shot
    for i in range(args.shots):
        _emit(sampler(circuit, shot_seed(args.seed, i)), args.format, i)
    return 0


def cmd_diff(args) -> int:
    if args.random:
        rng = np.random.default_rng(args.seed)
        failures = 0
        for i in range(args.random):
            c = random_circuit(args.qubits, args.depth, args.measurements, rng)
            reports = diff_circuit(c, args.shots, int(rng.integers(2**63)))
            ok = all(r.passed for r in reports.values())
            failures += not ok
            if not ok:
                print(f"circuit {i}: FAIL")
                for r in reports.values():
                    print("\n".join(r.lines()))
        print(f"{args.random - failures}/{args.random} circuits pass")
        return EXIT_FAIL if failures else 0
    if args.circuit is None:
        raise CircuitError("diff needs a circuit or --random")
    circuit = load_circuit(args.circuit)
    if circuit.n > args.cap:
        raise oracle.OracleCapError(f"{circuit.n} qubits exceeds the oracle cap of {args.cap}")
    reports = diff_circuit(circuit, args.shots, args.seed)
    if args.format == "json":
        print(json.dumps({
            name: {
                "pass": r.passed,
                "support_violations": [format_outcomes(o) for o in r.support_violations],
                "outcomes": [
                    {"outcome": format_outcomes(s.outcome), "p": s.p_oracle, "count": s.count, "z": s.z}
                    for s in r.stats
                ],
            }
            for name, r in reports.items()
        }))
    else:
        for r in reports.values():
            print("\n".join(r.lines()))
    return 0 if all(r.passed for r in reports.values()) else EXIT_FAIL


def microscope_shot(circuit: Circuit, seed: int) -> list:
    """Run ``circuit`` under COM, performing every measurement via the microscope."""
    state = ComState.init_random(circuit.n, np.random.default_rng(seed))
    results = []
    for ins in circuit.instructions:
        if isinstance(ins, Gate):
            state.apply_gate(ins.name, *ins.qubits)
            continue
        result, state = paired_run(state, ins.pauli)
        results.append((ins.label, result))
    return results


def cmd_microscope(args) -> int:
    circuit = load_circuit(args.circuit)
    passed = 0
    for i in range(args.seeds):
        seed = args.seed + i
        results = microscope_shot(circuit, seed)
        ok = all(r.passed for _, r in results)
        passed += ok
        if args.seeds == 1 or not ok or args.verbose:
            for label, r in results:
                if args.format == "json":
                    print(json.dumps({"seed": seed, "label": label, "outcome": r.outcome,
                                      "trace": r.trace.as_dict(),
                                      "outcome_match": r.outcome_match,
                                      "state_match": r.states_match,
                                      "provenance": r.provenance}))
                else:
                    t = r.trace
                    print(f"seed {seed} {label}: outcome {r.outcome:+d} (predicted {r.predicted:+d}, direct {r.direct_outcome:+d})")
                    print(f"  pointer phase c={t.initial_pointer_phase:+d}  pointer outcome={t.pointer_outcome:+d}  "
                          f"d={t.branch_d_phase:+d}  retained destabilizer phase={t.final_destabilizer_phase:+d}  "
                          f"branch={t.branch} pivot={t.pivot + 1}")
                    print(f"  outcome match: {'PASS' if r.outcome_match else 'FAIL'}  "
                          f"reduced-state match: {'PASS' if r.states_match else 'FAIL'}  "
                          f"provenance: {'PASS' if r.provenance else 'FAIL'}")
    print(f"{passed}/{args.seeds} seeds PASS")
    return 0 if passed == args.seeds else EXIT_FAIL


def cmd_bench(args) -> int:
    ns = bench.ladder(args.min_n, args.max_n)
    if len(ns) < 2:
        raise CircuitError("bench needs at least two ladder points")
    points = bench.run_ladder(ns, args.reps, args.seed)
    print(f"{'n':>6} {'measure [s]':>14} {'symplectic [s]':>16}")
    for p in points:
        print(f"{p.n:>6} {p.measure_s:>14.6e} {p.symplectic_s:>16.6e}")
    slope_m = bench.loglog_slope(ns, [p.measure_s for p in points])
    slope_s = bench.loglog_slope(ns, [p.symplectic_s for p in points])
    print(f"log-log slope: measurement update {slope_m:.3f}, symplectic product {slope_s:.3f}")
    if args.csv:
        bench.write_csv(points, args.csv)
    return 0


def cmd_demos(args) -> int:
    for name in sorted(DEMOS):
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabcom", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, shots=1):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--shots", type=int, default=shots)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="oracle qubit cap")

    p = sub.add_parser("run", help="sample shot records")
    p.add_argument("circuit", help="path to a .stab file or demo:<name>")
    p.add_argument("--engine", choices=("sstr", "com", "oracle"), default="com")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("diff", help="compare SSTR and COM against the oracle")
    p.add_argument("circuit", nargs="?")
    common(p, shots=10_000)
    p.add_argument("--random", type=int, default=0, help="fuzz this many random circuits")
    p.add_argument("--qubits", type=int, default=4)
    p.add_argument("--depth", type=int, default=30)
    p.add_argument("--measurements", type=int, default=8)
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("microscope", help="measure through a pointer and compare")
    p.add_argument("circuit")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="number of consecutive seeds")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_microscope)

    p = sub.add_parser("bench", help="time COM measurement scaling")
    p.add_argument("--min-n", type=int, default=64)
    p.add_argument("--max-n", type=int, default=4096)
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("demos", help="list demo circuit names")
    p.set_defaults(func=cmd_demos)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "shots", 1) < 1:
        log.error("--shots must be at least 1")
        return EXIT_PARSE
    try:
        return args.func(args)
    except oracle.OracleCapError as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except (CircuitError, KeyError) as exc:
        log.error("%s", exc)
        return EXIT_PARSE
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
