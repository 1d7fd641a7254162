"""Wall-clock scaling harness.

Times one operation over every applicable target of generated graphs of
increasing size and fits ``log(time) = a + b * log(size)``.
"""

from __future__ import annotations

import csv
import statistics
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from mdse.errors import NonMonotoneSizes, TooFewPoints
from mdse.generate import GeneratorConfig, generate_graph
from mdse.graph import NodeKind
from mdse.inference import event_posterior, prob_event

REPETITIONS = 9
BENCH_STAR_GROUPS = 1
BENCH_PRIME_GROUPS = 1


class BenchOp(str, Enum):
    FULL_PROBABILITY = "full-probability-all-events"
    POSTERIOR = "posterior"
    MIXTURE = "mixture"


class SizeAxis(str, Enum):
    EDGES = "edges"
    N_TIMES_M = "n_times_m"


@dataclass(frozen=True)
class BenchPoint:
    n: int
    m: int
    e: int
    wall_time: int  # median, nanoseconds
    ops: str
    repetitions: int = REPETITIONS


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    r_squared: float
    size_axis: SizeAxis


def bench_config(n: int, m: int, density: float, seed: int) -> GeneratorConfig:
    """Relaxed graph with ``n`` events split evenly between star and prime
    and ``m`` hypotheses split between one star and one prime group."""
    m_star = max(1, m // 2)
    return GeneratorConfig(
        seed=seed,
        n_star_events=n // 2,
        n_prime_events=n - n // 2,
        groups_star=BENCH_STAR_GROUPS,
        groups_prime=BENCH_PRIME_GROUPS,
        edge_density=density,
        group_sizes=(m_star, max(1, m - m_star)),
    )


def _workload(graph, op: BenchOp):
    events = [e.id for e in graph.events]
    if op is BenchOp.MIXTURE:
        primes = [e for e in events if graph.kind(e) is NodeKind.PRIME]
        return lambda: [prob_event(graph, e) for e in primes]
    if op is BenchOp.FULL_PROBABILITY:
        return lambda: [prob_event(graph, e) for e in events]
    pairs = []
    for ev in events:
        for group in graph.groups:
            ids = set(group.ids)
            if any(e.src in ids and e.weight > 0 for e in graph.parents(ev)):
                pairs.append((group.group_id, ev))
    return lambda: [event_posterior(graph, gid, ev) for gid, ev in pairs]


def time_median(fn, repetitions: int = REPETITIONS) -> int:
    """Median wall time in ns over ``repetitions`` runs after one discarded warmup."""
    fn()
    samples = []
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - t0)
    return max(1, int(statistics.median(samples)))


def run_scaling_bench(sizes, seed: int, op=BenchOp.MIXTURE, repetitions: int = REPETITIONS) -> list[BenchPoint]:
    """One :class:`BenchPoint` per ``(n, m, density)`` entry, in input order.

    Graph ``idx`` is generated with seed ``seed + idx``.
    """
    op = BenchOp(op)
    points = []
    for idx, (n, m, density) in enumerate(sizes):
        graph = generate_graph(bench_config(n, m, density, seed + idx))
        graph.relaxed_report()  # validation is cached, keep it out of the timing
        wall = time_median(_workload(graph, op), repetitions)
        s = graph.shape
        points.append(BenchPoint(s.n, s.m, s.e, wall, op.value, repetitions))
    return points


def fit_scaling_exponent(points, axis=SizeAxis.EDGES) -> ScalingFit:
    axis = SizeAxis(axis)
    if len(points) < 5:
        raise TooFewPoints(f"need at least 5 points, got {len(points)}")
    size = np.array([p.e if axis is SizeAxis.EDGES else p.n * p.m for p in points], dtype=float)
    if np.any(np.diff(size) <= 0) or np.any(size <= 0):
        raise NonMonotoneSizes("sizes must be positive and strictly increasing")
    x = np.log(size)
    y = np.log(np.array([p.wall_time for p in points], dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(float(slope), min(1.0, max(0.0, r2)), axis)


def parse_sizes(spec: str) -> list[tuple[int, int, float]]:
    """``"60:8:1.0,120:8:1.0"`` -> ``[(60, 8, 1.0), (120, 8, 1.0)]``."""
    out = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        n, m, density = chunk.split(":")
        out.append((int(n), int(m), float(density)))
    return out


def write_csv(points, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "m", "e", "median_ns", "repetitions"])
        for p in points:
            writer.writerow([p.n, p.m, p.e, p.wall_time, p.repetitions])


# n events, m = 8 hypotheses, full density: edges grow from ~1e3 to ~1e5
DEFAULT_SIZES = [(60, 8, 1.0), (96, 8, 1.0), (154, 8, 1.0), (246, 8, 1.0), (394, 8, 1.0), (632, 8, 1.0)]
