"""Seeded random graph generator.

The random stream is numpy's PCG64 bit generator seeded with the config
seed, so a config always yields the same graph, byte for byte, on any
platform numpy supports.  Draw order is fixed: group sizes, priors per
group, covering edges, density masks per block, then edge weights.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from mdse.errors import Infeasible, OutOfRange
from mdse.graph import EventKind, GroupRole, MdseGraph, ValidationMode, validate

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_star_events: int = 1
    n_prime_events: int = 1
    groups_star: int = 1
    groups_prime: int = 1
    max_group_size: int = 3
    edge_density: float = 0.5
    strict: bool = False
    # Exact member count per group (star groups first); overrides the random sizes.
    group_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.seed <= MAX_SEED:
            raise OutOfRange(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        for name in ("n_star_events", "n_prime_events", "groups_star", "groups_prime"):
            if getattr(self, name) < 0:
                raise OutOfRange(f"{name} must be >= 0")
        if self.max_group_size < 1:
            raise OutOfRange("max_group_size must be >= 1")
        if not 0.0 < self.edge_density <= 1.0:
            raise OutOfRange("edge_density must lie in (0, 1]")
        if self.group_sizes is not None:
            sizes = tuple(int(s) for s in self.group_sizes)
            if len(sizes) != self.groups_star + self.groups_prime or min(sizes, default=1) < 1:
                raise OutOfRange("group_sizes needs one positive size per group")
            object.__setattr__(self, "group_sizes", sizes)


def _pick(rng, pool):
    return pool[int(rng.integers(len(pool)))]


def generate_graph(config: GeneratorConfig) -> MdseGraph:
    """Random graph that passes relaxed validation (and strict, if asked).

    Hypotheses in star groups only feed star events and hypotheses in prime
    groups only feed prime events; star events feed prime events.  Degree
    minimums are met first, then every remaining legal pair is added with
    probability ``edge_density``.  In strict mode a hypothesis never gets
    more children than there are hypotheses of its role.
    """
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n_groups = config.groups_star + config.groups_prime
    drawn = rng.integers(1, config.max_group_size + 1, size=n_groups)
    sizes = config.group_sizes if config.group_sizes is not None else [int(s) for s in drawn]

    g = MdseGraph()
    star_hyps, prime_hyps = [], []
    for idx, size in enumerate(sizes):
        raw = 1.0 - rng.random(size)  # (0, 1]
        priors = [float(x) for x in raw / raw.sum()]
        role = GroupRole.STAR if idx < config.groups_star else GroupRole.PRIME
        ids = g.add_hypothesis_group(priors, role)
        (star_hyps if role is GroupRole.STAR else prime_hyps).extend(ids)
    stars = [g.add_event(EventKind.STAR) for _ in range(config.n_star_events)]
    primes = [g.add_event(EventKind.PRIME) for _ in range(config.n_prime_events)]

    strict = config.strict
    cap = {h: len(star_hyps) for h in star_hyps}
    cap.update({h: len(prime_hyps) for h in prime_hyps})
    if not strict:
        cap = {h: len(g) for h in cap}

    edges: set[tuple[int, int]] = set()
    outdeg: dict[int, int] = {}
    indeg: dict[int, int] = {}

    def link(src, dst):
        edges.add((src, dst))
        outdeg[src] = outdeg.get(src, 0) + 1
        indeg[dst] = indeg.get(dst, 0) + 1

    def feed_pool(event_pool, fallback):
        if event_pool:
            return event_pool
        if strict or not fallback:
            raise Infeasible("a hypothesis has no event of its role to feed")
        return fallback

    def least_loaded(pool):
        pool = [h for h in pool if outdeg.get(h, 0) < cap[h]]
        if not pool:
            return pool
        low = min(outdeg.get(h, 0) for h in pool)
        return [h for h in pool if outdeg.get(h, 0) == low]

    # every star event gets a hypothesis parent
    for a in stars:
        pool = least_loaded(star_hyps if (star_hyps or strict) else prime_hyps)
        if not pool:
            raise Infeasible(f"no hypothesis can feed star event {a}")
        link(_pick(rng, pool), a)

    # every hypothesis gets a child
    for h in star_hyps:
        if not outdeg.get(h, 0):
            link(h, _pick(rng, feed_pool(stars, primes)))
    for h in prime_hyps:
        if not outdeg.get(h, 0):
            link(h, _pick(rng, feed_pool(primes, stars)))

    # strict: every star event gets a prime child
    if strict:
        for a in stars:
            if not outdeg.get(a, 0):
                if not primes:
                    raise Infeasible("star events need a prime event to feed")
                link(a, _pick(rng, primes))

    # prime events get their minimum number of parents
    need = 2 if strict else 1
    for a in primes:
        while indeg.get(a, 0) < need:
            pool = least_loaded([h for h in prime_hyps if (h, a) not in edges]) + stars
            if not pool and not strict:
                pool = star_hyps
            pool = [p for p in pool if (p, a) not in edges]
            if not pool:
                raise Infeasible(f"prime event {a} cannot reach indegree {need}")
            link(_pick(rng, pool), a)

    # density fill, block by block in row-major order
    for rows, cols in ((star_hyps, stars), (prime_hyps, primes), (stars, primes)):
        mask = rng.random((len(rows), len(cols))) < config.edge_density
        for r, c in zip(*np.nonzero(mask)):
            src, dst = rows[r], cols[c]
            if (src, dst) in edges or (src in cap and outdeg.get(src, 0) >= cap[src]):
                continue
            link(src, dst)

    ordered = sorted(edges)
    weights = rng.random(len(ordered))
    for (src, dst), w in zip(ordered, weights):
        g.add_edge(src, dst, float(w))
    g.freeze()

    mode = ValidationMode.STRICT if strict else ValidationMode.RELAXED
    report = validate(g, mode)
    if not report.passed:
        raise Infeasible(f"generated graph fails {mode.value} validation: {sorted(report.rule_ids())}")
    return g


def corpus_config(seed: int, max_vertices: int = 12) -> GeneratorConfig:
    """Small varied config for oracle sweeps; at most ``max_vertices`` vertices.

    The shape is drawn from a stream separate from the graph's own, and
    even seeds ask for strict graphs.
    """
    rng = np.random.Generator(np.random.PCG64([seed, 0x6D647365]))
    n_star = int(rng.integers(1, 4))
    n_prime = int(rng.integers(1, 4))
    g_star = int(rng.integers(1, 3))
    g_prime = int(rng.integers(1, 3))
    room = max_vertices - n_star - n_prime
    max_size = max(1, min(3, room // (g_star + g_prime)))
    density = float(rng.uniform(0.2, 1.0))
    return GeneratorConfig(
        seed=seed, n_star_events=n_star, n_prime_events=n_prime,
        groups_star=g_star, groups_prime=g_prime, max_group_size=max_size,
        edge_density=density, strict=seed % 2 == 0,
    )


def corpus_graph(seed: int, max_vertices: int = 12) -> MdseGraph:
    """Graph for :func:`corpus_config`; falls back to relaxed if strict is infeasible."""
    config = corpus_config(seed, max_vertices)
    try:
        return generate_graph(config)
    except Infeasible:
        return generate_graph(replace(config, strict=False))
