"""Brute-force reference computations.

Everything here is recomputed from raw priors and the raw edge list, by
enumeration over *worlds* (one true hypothesis per complete group) or by
literal expansion, and accumulated in reverse order.  Nothing is imported
from :mod:`mdse.inference` except inside :func:`oracle_check`, which is the
place where the two routes are compared.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from mdse.errors import LengthMismatch, NotNormalized, NotValid, OutOfRange, TooLarge, UnknownId, ZeroEvidence
from mdse.graph import MdseGraph, NodeKind

MAX_HYPOTHESES = 20
MAX_VERTICES = 12
AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class World:
    selection: tuple[int, ...]  # one hypothesis id per group
    weight: float


def _inputs(priors, likelihoods):
    priors = [float(p) for p in priors]
    likelihoods = [float(x) for x in likelihoods]
    if not priors or len(priors) != len(likelihoods):
        raise LengthMismatch("priors and likelihoods must have equal non-zero length")
    if len(priors) > MAX_HYPOTHESES:
        raise TooLarge(f"{len(priors)} hypotheses exceeds enumeration bound {MAX_HYPOTHESES}")
    if any(not 0.0 <= x <= 1.0 for x in priors + likelihoods):
        raise OutOfRange("values must lie in [0, 1]")
    if abs(math.fsum(priors) - 1.0) > 1e-9:
        raise NotNormalized("priors do not form a complete group")
    return priors, likelihoods


def enumerate_full_probability(priors, likelihoods) -> float:
    """Sum of world weight times likelihood, one world per hypothesis."""
    priors, likelihoods = _inputs(priors, likelihoods)
    total = 0.0
    for world in reversed(range(len(priors))):
        total += priors[world] * likelihoods[world]
    return total


def enumerate_posterior(priors, likelihoods) -> list[float]:
    """Condition the world measure on the event by direct division."""
    priors, likelihoods = _inputs(priors, likelihoods)
    joint = {}
    for world in reversed(range(len(priors))):
        joint[world] = priors[world] * likelihoods[world]
    evidence = 0.0
    for world in joint:
        evidence += joint[world]
    if evidence <= 0.0:
        raise ZeroEvidence("conditioning event has zero probability")
    return [joint[world] / evidence for world in range(len(priors))]


def enumerate_worlds(groups) -> list[World]:
    """All joint selections over ``groups`` (each a list of ``(id, prior)``)."""
    out = []
    for combo in itertools.product(*[list(reversed(g)) for g in groups]):
        weight = 1.0
        for _, p in combo:
            weight *= p
        out.append(World(tuple(h for h, _ in combo), weight))
    return out


def _check_graph(graph: MdseGraph):
    if len(graph) > MAX_VERTICES:
        raise TooLarge(f"graph has {len(graph)} vertices; oracle bound is {MAX_VERTICES}")
    if not graph.relaxed_report().passed:
        raise NotValid("oracle needs a relaxed-valid graph")


def _raw_adjacency(graph: MdseGraph):
    incoming: dict[int, list] = {}
    for e in reversed(graph.edges):
        incoming.setdefault(e.dst, []).append((e.src, e.weight))
    return incoming


def graph_worlds(graph: MdseGraph) -> list[World]:
    _check_graph(graph)
    return enumerate_worlds([g.members for g in graph.groups])


def world_expectation(graph: MdseGraph, target: int) -> float:
    """Expected additive score of an event over the joint world measure.

    In a world the score of a star event is the sum of the edge weights
    from its *selected* hypothesis parents; a prime event adds, for every
    star parent, that star's score times the star-to-prime weight.  By
    linearity this expectation equals the closed-form value.
    """
    _check_graph(graph)
    kinds = {v: graph.kind(v) for v in range(len(graph))}
    if kinds.get(target, NodeKind.HYPOTHESIS) is NodeKind.HYPOTHESIS:
        raise UnknownId(f"vertex {target} is not an event")
    incoming = _raw_adjacency(graph)

    def score(event, chosen):
        s = 0.0
        for src, w in incoming.get(event, ()):
            if kinds[src] is NodeKind.HYPOTHESIS:
                if src in chosen:
                    s += w
            else:
                s += score(src, chosen) * w
        return s

    total = 0.0
    for world in reversed(graph_worlds(graph)):
        total += world.weight * score(target, set(world.selection))
    return total


def _expanded_mixture(graph: MdseGraph, target: int) -> float:
    prior = {h: p for g in graph.groups for h, p in g.members}
    incoming = _raw_adjacency(graph)
    total = 0.0
    for src, w in incoming.get(target, ()):
        if src in prior:
            total += prior[src] * w
            continue
        for hyp, w_star in incoming.get(src, ()):
            total += prior[hyp] * w_star * w
    return total


def check_mixture_expansion(graph: MdseGraph, target: int):
    """``(lhs, rhs, delta)``: recursive mixture value against a literal
    double-sum expansion computed here."""
    from mdse.inference import prob_event

    _check_graph(graph)
    if graph.kind(target) is not NodeKind.PRIME:
        raise UnknownId(f"vertex {target} is not a prime event")
    lhs = prob_event(graph, target).value
    rhs = _expanded_mixture(graph, target)
    return lhs, rhs, abs(lhs - rhs)


@dataclass
class Check:
    name: str
    where: str
    lhs: float
    rhs: float

    @property
    def delta(self) -> float:
        return abs(self.lhs - self.rhs)


@dataclass
class OracleReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def max_delta(self) -> float:
        return max((c.delta for c in self.checks), default=0.0)

    @property
    def agrees(self) -> bool:
        return self.max_delta <= AGREEMENT_TOL

    def format(self) -> str:
        lines = [f"{c.name}\t{c.where}\t{c.lhs:.17g}\t{c.rhs:.17g}\t{c.delta:.3e}" for c in self.checks]
        lines.append(f"checks\t{len(self.checks)}")
        lines.append(f"max_delta\t{self.max_delta:.3e}")
        lines.append("AGREE" if self.agrees else "DISAGREE")
        return "\n".join(lines)


def oracle_check(graph: MdseGraph, all_checks: bool = False) -> OracleReport:
    """Compare closed-form inference with the oracle on one graph.

    Always checks the mixture expansion of every prime event.  With
    ``all_checks`` also compares, for each (group, event) pair joined by at
    least one edge, total probability and posterior, and every event value
    against the world expectation.
    """
    from mdse.inference import full_probability, group_likelihoods, posterior, prob_event

    _check_graph(graph)
    report = OracleReport()
    events = [e.id for e in graph.events]
    for ev in events:
        if graph.kind(ev) is NodeKind.PRIME:
            lhs, rhs, _ = check_mixture_expansion(graph, ev)
            report.checks.append(Check("mixture", f"event {ev}", lhs, rhs))
    if not all_checks:
        return report

    for ev in events:
        report.checks.append(Check("world", f"event {ev}", prob_event(graph, ev).value, world_expectation(graph, ev)))
        for group in graph.groups:
            lik = group_likelihoods(graph, group.group_id, ev)
            if not any(graph.kind(e.src) is NodeKind.HYPOTHESIS and e.src in group.ids for e in graph.parents(ev)):
                continue
            where = f"group {group.group_id} event {ev}"
            total = full_probability(group.priors, lik)
            report.checks.append(
                Check("full-probability", where, total, enumerate_full_probability(group.priors, lik))
            )
            if total > 0.0:
                mine = posterior(group.priors, lik).values
                ref = enumerate_posterior(group.priors, lik)
                for h, a, b in zip(group.ids, mine, ref):
                    report.checks.append(Check("posterior", f"{where} hypothesis {h}", a, b))
    return report
