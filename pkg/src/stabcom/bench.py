"""Scaling benchmarks for the COM measurement update and the symplectic product."""
from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass

import numpy as np

from stabcom.circuit_io import random_pauli
from stabcom.com import ComState
from stabcom.pauli import symplectic_product

DEFAULT_LADDER = (64, 128, 256, 512, 1024, 2048, 4096)


@dataclass
class BenchPoint:
    n: int
    measure_s: float
    symplectic_s: float


def scrambled_state(n: int, rng: np.random.Generator, rounds: int = 4) -> ComState:
    """Random initial state entangled by a few dense measurements."""
    state = ComState.init_random(n, rng)
    for _ in range(rounds):
        state.measure(random_pauli(n, rng))
    return state


def time_measure(n: int, reps: int, rng: np.random.Generator) -> float:
    """Median wall time of one COM measurement update on a prebuilt state."""
    base = scrambled_state(n, rng)
    observables = [random_pauli(n, rng) for _ in range(reps + 1)]
    samples = []
    for i, M in enumerate(observables):
        state = base.copy()
        t0 = time.perf_counter()
        state.measure(M)
        dt = time.perf_counter() - t0
        if i:  # first call is the warm-up
            samples.append(dt)
    return statistics.median(samples)


def time_symplectic(n: int, reps: int, rng: np.random.Generator, inner: int = 2000) -> float:
    """Median time per symplectic product, averaged over ``inner`` calls."""
    a = random_pauli(n, rng)
    b = random_pauli(n, rng)
    samples = []
    for i in range(reps + 1):
        t0 = time.perf_counter()
        for _ in range(inner):
            symplectic_product(a, b)
        dt = (time.perf_counter() - t0) / inner
        if i:
            samples.append(dt)
    return statistics.median(samples)


def loglog_slope(ns, ts) -> float:
    return float(np.polyfit(np.log(ns), np.log(ts), 1)[0])


def run_ladder(ladder=DEFAULT_LADDER, reps: int = 20, seed: int = 0) -> list[BenchPoint]:
    rng = np.random.default_rng(seed)
    return [
        BenchPoint(n, time_measure(n, reps, rng), time_symplectic(n, reps, rng))
        for n in ladder
    ]


def ladder(min_n: int, max_n: int) -> list[int]:
    out = []
    n = min_n
    while n <= max_n:
        out.append(n)
        n *= 2
    return out


def write_csv(points: list[BenchPoint], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "measure_seconds", "symplectic_seconds"])
        for p in points:
            w.writerow([p.n, f"{p.measure_s:.9g}", f"{p.symplectic_s:.9g}"])
