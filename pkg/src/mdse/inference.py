"""Exact probability queries.

List-based functions (``full_probability``, ``posterior``, ...) work on a
single complete group given as parallel ``priors``/``likelihoods`` lists.
Graph-based functions read priors from hypothesis groups and conditionals
from edge weights.

All sums and products run in ascending index / vertex-id order, so equal
inputs give bitwise-equal outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from mdse.errors import LengthMismatch, NotValid, UnknownId, ValueExceedsOne, ZeroEvidence
from mdse.graph import PROB_TOL, MdseGraph, NodeKind, check_priors, check_probability


class QueryMode(str, Enum):
    OR = "or"  # additive mixture
    AND = "and"  # term-by-term product


class Normalization(str, Enum):
    LITERAL = "literal"
    CHECKED = "checked"


@dataclass(frozen=True)
class ProbQuery:
    target: int
    mode: QueryMode = QueryMode.OR
    normalization: Normalization = Normalization.LITERAL


@dataclass(frozen=True)
class QueryResult:
    value: float
    formula: str
    terms: tuple[tuple[int, float], ...]
    in_range: bool

    def format(self) -> str:
        lines = [
            f"{self.value:.9f}",
            f"formula\t{self.formula}",
            f"in_range\t{str(self.in_range).lower()}",
            "source\tcontribution",
        ]
        lines += [f"{src}\t{c:.9f}" for src, c in self.terms]
        return "\n".join(lines)


@dataclass(frozen=True)
class PosteriorVector:
    group_id: int | None
    entries: tuple[tuple[int, float], ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.entries)

    def format(self) -> str:
        lines = ["hypothesis\tposterior"]
        lines += [f"{h}\t{p:.9f}" for h, p in self.entries]
        return "\n".join(lines)


def _check_pair(priors, likelihoods):
    priors = list(priors)
    likelihoods = list(likelihoods)
    if len(priors) != len(likelihoods) or not priors:
        raise LengthMismatch(
            f"need equal non-zero lengths, got {len(priors)} priors and {len(likelihoods)} likelihoods"
        )
    priors = check_priors(priors)
    likelihoods = tuple(check_probability(x, "likelihood") for x in likelihoods)
    return priors, likelihoods


def full_probability(priors: Sequence[float], likelihoods: Sequence[float]) -> float:
    """Total probability ``sum_i P(A|B_i) P(B_i)`` over a complete group."""
    priors, likelihoods = _check_pair(priors, likelihoods)
    total = 0.0
    for p, lk in zip(priors, likelihoods):
        total += p * lk
    return total


def posterior(priors, likelihoods, group_id=None, ids=None) -> PosteriorVector:
    """Bayes posterior of every hypothesis in the group.

    ``ids`` labels the entries (defaults to ``0..m-1``).  Raises
    :class:`ZeroEvidence` when the observed event has probability zero.
    """
    priors, likelihoods = _check_pair(priors, likelihoods)
    numer = [p * lk for p, lk in zip(priors, likelihoods)]
    evidence = 0.0
    for x in numer:
        evidence += x
    if evidence == 0.0:
        raise ZeroEvidence("evidence has probability zero under every hypothesis")
    ids = range(len(priors)) if ids is None else ids
    return PosteriorVector(group_id, tuple((h, x / evidence) for h, x in zip(ids, numer)))


def map_hypothesis(priors, likelihoods) -> tuple[int, float]:
    """Index and posterior of the most probable hypothesis (lowest index on ties)."""
    post = posterior(priors, likelihoods).values
    best = 0
    for idx, p in enumerate(post):
        if p > post[best]:
            best = idx
    return best, post[best]


def prob_and_case(priors, likelihoods) -> float:
    """Product ``prod_i P(B_i) P(A|B_i)`` taken literally, in index order."""
    priors, likelihoods = _check_pair(priors, likelihoods)
    out = 1.0
    for p, lk in zip(priors, likelihoods):
        out *= p * lk
    return out


def joint_probability(conditionals: Sequence[float], base: float) -> float:
    """``(prod conditionals) * base``, e.g. P(A1|B) P(A2|B) P(B)."""
    out = 1.0
    for c in conditionals:
        out *= check_probability(c, "conditional")
    return out * check_probability(base, "base probability")


# -- graph queries ------------------------------------------------------------


def _require_valid(graph: MdseGraph):
    report = graph.relaxed_report()
    if not report.passed:
        rules = ", ".join(sorted(report.rule_ids()))
        raise NotValid(f"graph fails relaxed validation ({rules})", report=report)


def _event_kind(graph, target) -> NodeKind:
    kind = graph.kind(target)
    if kind is NodeKind.HYPOTHESIS:
        raise UnknownId(f"vertex {target} is a hypothesis, not an event")
    return kind


def _require_prime(graph, target):
    if _event_kind(graph, target) is not NodeKind.PRIME:
        raise UnknownId(f"vertex {target} is not a prime event")


def _star_or(graph, star, memo) -> float:
    if star not in memo:
        total = 0.0
        for e in graph.parents(star):
            total += graph.prior(e.src) * e.weight
        memo[star] = total
    return memo[star]


def _star_and(graph, star, memo) -> float:
    if star not in memo:
        out = 1.0
        for e in graph.parents(star):
            out *= graph.prior(e.src) * e.weight
        memo[star] = out
    return memo[star]


def _finish(value, formula, terms, normalization) -> QueryResult:
    in_range = value <= 1.0 + PROB_TOL
    if normalization is Normalization.CHECKED and not in_range:
        raise ValueExceedsOne(f"{formula} produced {value!r} > 1")
    return QueryResult(value, formula, tuple(terms), in_range)


def prob_event(graph: MdseGraph, query: ProbQuery | int) -> QueryResult:
    """Probability of an event vertex.

    Star events use total probability restricted to their hypothesis
    parents.  Prime events in OR mode add the hypothesis-parent terms to
    ``P(A*) * P(A'|A*)`` for each star parent; the result is not renormalized
    and may exceed one (``in_range`` records this, CHECKED mode raises).
    AND mode delegates to the product form.
    """
    if not isinstance(query, ProbQuery):
        query = ProbQuery(query)
    mode = QueryMode(query.mode)
    normalization = Normalization(query.normalization)
    target = query.target
    kind = _event_kind(graph, target)
    _require_valid(graph)

    if mode is QueryMode.AND:
        if kind is NodeKind.STAR:
            terms = [(e.src, graph.prior(e.src) * e.weight) for e in graph.parents(target)]
            return _finish(_prod(terms), "and-product", terms, normalization)
        return _and_prime(graph, target, normalization)

    memo: dict[int, float] = {}
    if kind is NodeKind.STAR:
        terms = [(e.src, graph.prior(e.src) * e.weight) for e in graph.parents(target)]
        return _finish(_sum(terms), "full-probability", terms, normalization)

    terms = []
    for e in graph.parents(target):
        if graph.kind(e.src) is NodeKind.HYPOTHESIS:
            terms.append((e.src, graph.prior(e.src) * e.weight))
        else:
            terms.append((e.src, _star_or(graph, e.src, memo) * e.weight))
    return _finish(_sum(terms), "or-mixture", terms, normalization)


def _sum(terms) -> float:
    total = 0.0
    for _, t in terms:
        total += t
    return total


def _prod(terms) -> float:
    out = 1.0
    for _, t in terms:
        out *= t
    return out


def prob_event_expanded(graph: MdseGraph, target: int) -> QueryResult:
    """OR-mixture value of a prime event with every star parent expanded inline.

    Each star parent contributes ``sum_B P(B) P(A*|B) P(A'|A*)``; nothing is
    cached between parents.
    """
    _require_prime(graph, target)
    _require_valid(graph)
    terms = []
    for e in graph.parents(target):
        if graph.kind(e.src) is NodeKind.HYPOTHESIS:
            terms.append((e.src, graph.prior(e.src) * e.weight))
            continue
        inner = 0.0
        for h in graph.parents(e.src):
            inner += graph.prior(h.src) * h.weight * e.weight
        terms.append((e.src, inner))
    return _finish(_sum(terms), "or-mixture-expanded", terms, Normalization.LITERAL)


def _and_prime(graph, target, normalization) -> QueryResult:
    memo: dict[int, float] = {}
    terms = []
    for e in graph.parents(target):
        if graph.kind(e.src) is NodeKind.HYPOTHESIS:
            terms.append((e.src, graph.prior(e.src) * e.weight))
        else:
            terms.append((e.src, _star_and(graph, e.src, memo) * e.weight))
    return _finish(_prod(terms), "and-product", terms, normalization)


def prob_event_and(graph: MdseGraph, target: int) -> QueryResult:
    """Product-form counterpart of :func:`prob_event` for a prime event.

    Hypothesis parents contribute ``P(B) P(A'|B)``; star parents contribute
    ``P_and(A*) P(A'|A*)`` where ``P_and(A*)`` is the product of the star's own
    hypothesis terms.
    """
    _require_prime(graph, target)
    _require_valid(graph)
    return _and_prime(graph, target, Normalization.LITERAL)


def group_likelihoods(graph: MdseGraph, group_id: int, event: int) -> tuple[float, ...]:
    """``P(event | h)`` for each member of the group; 0 where no edge exists."""
    _event_kind(graph, event)
    weights = {e.src: e.weight for e in graph.parents(event)}
    return tuple(weights.get(h, 0.0) for h in graph.group(group_id).ids)


def event_posterior(graph: MdseGraph, group_id: int, event: int) -> PosteriorVector:
    """Posterior over one group after observing ``event``."""
    _require_valid(graph)
    group = graph.group(group_id)
    likelihoods = group_likelihoods(graph, group_id, event)
    return posterior(group.priors, likelihoods, group_id=group_id, ids=group.ids)
