"""Prior estimation and sequential updating of hypothesis groups."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from mdse.errors import EmptyInput, OutOfRange, ZeroHypotheses, ZeroTotal
from mdse.graph import MdseGraph, check_priors, check_probability
from mdse.inference import event_posterior


class PriorMethod(str, Enum):
    EXPLICIT = "explicit"
    FREQUENTIST = "frequentist"
    UNIFORM = "uniform"


def priors_from_counts(counts: Sequence[int]) -> list[float]:
    """Relative frequencies ``counts[i] / sum(counts)``."""
    counts = list(counts)
    if not counts:
        raise EmptyInput("no counts given")
    for c in counts:
        if int(c) != c or c < 0:
            raise OutOfRange(f"count {c!r} is not a non-negative integer")
    total = sum(int(c) for c in counts)
    if total == 0:
        raise ZeroTotal("counts sum to zero")
    return [int(c) / total for c in counts]


def priors_uniform(m: int) -> list[float]:
    if m < 1:
        raise ZeroHypotheses(f"need at least one hypothesis, got {m}")
    return [1.0 / m] * m


def priors_explicit(values: Sequence[float]) -> list[float]:
    """Accept a hand-specified prior vector as-is; never renormalizes."""
    for v in values:
        check_probability(v, "prior")
    return list(check_priors(values))


@dataclass(frozen=True)
class PriorSpec:
    method: PriorMethod
    payload: object

    def resolve(self) -> list[float]:
        method = PriorMethod(self.method)
        if method is PriorMethod.EXPLICIT:
            return priors_explicit(self.payload)
        if method is PriorMethod.FREQUENTIST:
            return priors_from_counts(self.payload)
        return priors_uniform(self.payload)


def update_group(graph: MdseGraph, group: int, observed_event: int) -> MdseGraph:
    """Return a new graph whose ``group`` priors are the posterior given
    that ``observed_event`` occurred.

    Group members with no edge to the event get likelihood 0.  The input
    graph is left untouched.
    """
    post = event_posterior(graph, group, observed_event)
    return graph.with_group_priors(group, post.values)
