"""Hypothesis/event graph: construction, freezing and structural validation.

Vertices are numbered densely in insertion order.  Hypotheses live in
complete groups (priors summing to one); events are either *star* events,
which depend on hypotheses only, or *prime* events, which may depend on
hypotheses and on star events and never have children.  Edges point from a
cause to an event and carry ``P(event | cause)``.

A graph is built by calling the ``add_*`` methods and then :meth:`MdseGraph.freeze`,
after which it is immutable and can be queried, validated and shared freely.
"""

from __future__ import annotations

import graphlib
import math
import operator
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from mdse.errors import (
    BadDirection,
    DuplicateEdge,
    Frozen,
    LoopDetected,
    NotFrozen,
    NotNormalized,
    OutOfRange,
    UnknownId,
)

PROB_TOL = 1e-9


class NodeKind(str, Enum):
    HYPOTHESIS = "hypothesis"
    STAR = "star"
    PRIME = "prime"


class EventKind(str, Enum):
    STAR = "star"
    PRIME = "prime"


class GroupRole(str, Enum):
    """Star groups feed star events, prime groups feed prime events."""

    STAR = "star"
    PRIME = "prime"


class ValidationMode(str, Enum):
    RELAXED = "relaxed"
    STRICT = "strict"


def check_probability(value, what="probability") -> float:
    value = float(value)
    if not (math.isfinite(value) and 0.0 <= value <= 1.0):
        raise OutOfRange(f"{what} {value!r} is outside [0, 1]")
    return value


def check_priors(priors: Iterable[float]) -> tuple[float, ...]:
    """Return ``priors`` as a tuple after checking range and normalization."""
    out = tuple(check_probability(p, "prior") for p in priors)
    total = sum(out)
    if not out or abs(total - 1.0) > PROB_TOL:
        raise NotNormalized(f"priors sum to {total!r}, expected 1 +/- {PROB_TOL}")
    return out


@dataclass(frozen=True)
class HypothesisGroup:
    group_id: int
    members: tuple[tuple[int, float], ...]
    role: GroupRole

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(h for h, _ in self.members)

    @property
    def priors(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.members)


@dataclass(frozen=True)
class EventNode:
    id: int
    kind: EventKind
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: float


@dataclass(frozen=True)
class GraphShape:
    n: int  # events
    m: int  # hypotheses
    i: int  # star events
    k: int  # prime events
    e: int  # edges
    v: int  # n + m
    m_star: int = 0  # hypotheses in star groups
    m_prime: int = 0  # hypotheses in prime groups


@dataclass(frozen=True)
class Violation:
    rule: str
    where: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    mode: ValidationMode
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def rule_ids(self) -> set[str]:
        return {v.rule for v in self.violations}

    def format(self) -> str:
        head = f"{'PASSED' if self.passed else 'FAILED'} ({self.mode.value})"
        lines = [head]
        lines += [f"{v.rule}\t{v.where}\t{v.message}" for v in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class HandshakeReport:
    sum_indegree: int
    sum_outdegree: int
    edge_count: int
    paper_lhs: int  # n + 2m
    paper_rhs: int  # (n+m)(n+m-1)

    @property
    def consistent(self) -> bool:
        return self.sum_indegree == self.sum_outdegree == self.edge_count


class DegreeBounds(NamedTuple):
    indegree: int
    outdegree: int
    min_allowed: int
    max_allowed: int


class MdseGraph:
    """Builder and, once frozen, immutable hypothesis/event graph.

    >>> g = MdseGraph()
    >>> b, = g.add_hypothesis_group([1.0])
    >>> a = g.add_event(EventKind.STAR)
    >>> g.add_edge(b, a, 0.8)
    >>> g.freeze().shape.e
    1
    """

    def __init__(self):
        self._groups: list = []
        self._events: list = []
        self._edges: list = []
        self._kinds: list[NodeKind] = []
        self._edge_keys: set = set()
        self._frozen = False

    # -- building ----------------------------------------------------------

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise Frozen("graph is frozen")
        object.__setattr__(self, name, value)

    def _require_builder(self):
        if self._frozen:
            raise Frozen("graph is frozen; build a new graph instead")

    def add_hypothesis_group(self, priors: Sequence[float], role=GroupRole.STAR) -> list[int]:
        self._require_builder()
        priors = check_priors(priors)
        role = GroupRole(role)
        start = len(self._kinds)
        ids = list(range(start, start + len(priors)))
        self._kinds.extend([NodeKind.HYPOTHESIS] * len(priors))
        group = HypothesisGroup(len(self._groups), tuple(zip(ids, priors)), role)
        self._groups.append(group)
        return ids

    def add_event(self, kind=EventKind.STAR, label: str | None = None) -> int:
        self._require_builder()
        kind = EventKind(kind)
        node = len(self._kinds)
        self._kinds.append(NodeKind(kind.value))
        self._events.append(EventNode(node, kind, label))
        return node

    def _kind_of(self, node: int) -> NodeKind:
        try:
            idx = operator.index(node)
        except TypeError:
            raise UnknownId(f"no vertex with id {node!r}") from None
        if isinstance(node, bool) or not 0 <= idx < len(self._kinds):
            raise UnknownId(f"no vertex with id {node!r}")
        return self._kinds[idx]

    def add_edge(self, src: int, dst: int, weight: float) -> None:
        self._require_builder()
        src_kind = self._kind_of(src)
        dst_kind = self._kind_of(dst)
        weight = check_probability(weight, "edge weight")
        src, dst = operator.index(src), operator.index(dst)
        if src == dst:
            raise LoopDetected(f"loop on vertex {src}")
        if (src, dst) in self._edge_keys:
            raise DuplicateEdge(f"edge {src}->{dst} already exists")
        if dst_kind is NodeKind.HYPOTHESIS:
            raise BadDirection(f"edge {src}->{dst} points into hypothesis {dst}")
        if src_kind is NodeKind.PRIME:
            raise BadDirection(f"edge {src}->{dst} leaves prime event {src}")
        if src_kind is NodeKind.STAR and dst_kind is NodeKind.STAR:
            raise BadDirection(f"edge {src}->{dst} joins two star events")
        self._edge_keys.add((src, dst))
        self._edges.append(Edge(src, dst, weight))

    def _add_edge_unchecked(self, src: int, dst: int, weight: float) -> None:
        # Structural rules are left to validate(); endpoints and range still hold.
        self._kind_of(src)
        self._kind_of(dst)
        weight = check_probability(weight, "edge weight")
        src, dst = operator.index(src), operator.index(dst)
        self._edge_keys.add((src, dst))
        self._edges.append(Edge(src, dst, weight))

    @classmethod
    def assemble(cls, groups, events, edges, checked: bool = True) -> "MdseGraph":
        """Build and freeze a graph from plain ``(role, priors)``,
        ``(kind, label)`` and ``(src, dst, weight)`` sequences.

        With ``checked=False`` loops, duplicates and illegal directions are
        admitted so that :func:`validate` can report them.
        """
        g = cls()
        for role, priors in groups:
            g.add_hypothesis_group(priors, role)
        for kind, label in events:
            g.add_event(kind, label)
        add = g.add_edge if checked else g._add_edge_unchecked
        for src, dst, w in edges:
            add(src, dst, w)
        return g.freeze()

    def freeze(self) -> "MdseGraph":
        if self._frozen:
            return self
        n_vertices = len(self._kinds)
        parents: dict[int, list] = {v: [] for v in range(n_vertices)}
        children: dict[int, list] = {v: [] for v in range(n_vertices)}
        for edge in self._edges:
            parents[edge.dst].append(edge)
            children[edge.src].append(edge)
        key = lambda e: (e.src, e.dst)  # noqa: E731
        self._parents = {v: tuple(sorted(es, key=key)) for v, es in parents.items()}
        self._children = {v: tuple(sorted(es, key=key)) for v, es in children.items()}
        self._prior = {}
        self._group_of = {}
        for group in self._groups:
            for h, p in group.members:
                self._prior[h] = p
                self._group_of[h] = group.group_id
        self._groups = tuple(self._groups)
        self._events = tuple(self._events)
        self._edges = tuple(self._edges)
        self._kinds = tuple(self._kinds)
        self._edge_keys = frozenset(self._edge_keys)
        n_star = sum(1 for e in self._events if e.kind is EventKind.STAR)
        m_star = sum(len(g.members) for g in self._groups if g.role is GroupRole.STAR)
        m = sum(len(g.members) for g in self._groups)
        n = len(self._events)
        self._shape = GraphShape(
            n=n, m=m, i=n_star, k=n - n_star, e=len(self._edges), v=n + m,
            m_star=m_star, m_prime=m - m_star,
        )
        self._relaxed_report = None
        self._frozen = True
        return self

    # -- frozen accessors --------------------------------------------------

    def _require_frozen(self):
        if not self._frozen:
            raise NotFrozen("graph must be frozen first")

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def groups(self) -> tuple[HypothesisGroup, ...]:
        return tuple(self._groups)

    @property
    def events(self) -> tuple[EventNode, ...]:
        return tuple(self._events)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges)

    @property
    def shape(self) -> GraphShape:
        self._require_frozen()
        return self._shape

    def __len__(self):
        return len(self._kinds)

    def kind(self, node: int) -> NodeKind:
        return self._kind_of(node)

    def group(self, group_id: int) -> HypothesisGroup:
        if not isinstance(group_id, int) or not 0 <= group_id < len(self._groups):
            raise UnknownId(f"no hypothesis group {group_id!r}")
        return self._groups[group_id]

    def prior(self, hypothesis: int) -> float:
        self._require_frozen()
        if self._kind_of(hypothesis) is not NodeKind.HYPOTHESIS:
            raise UnknownId(f"vertex {hypothesis} is not a hypothesis")
        return self._prior[hypothesis]

    def group_of(self, hypothesis: int) -> int:
        self._require_frozen()
        if self._kind_of(hypothesis) is not NodeKind.HYPOTHESIS:
            raise UnknownId(f"vertex {hypothesis} is not a hypothesis")
        return self._group_of[hypothesis]

    def parents(self, node: int) -> tuple[Edge, ...]:
        """Incoming edges of ``node`` ordered by source id."""
        self._require_frozen()
        self._kind_of(node)
        return self._parents[node]

    def children(self, node: int) -> tuple[Edge, ...]:
        self._require_frozen()
        self._kind_of(node)
        return self._children[node]

    def indegree(self, node: int) -> int:
        return len(self.parents(node))

    def outdegree(self, node: int) -> int:
        return len(self.children(node))

    def relaxed_report(self) -> ValidationReport:
        """Relaxed validation, computed once per frozen graph."""
        self._require_frozen()
        if self._relaxed_report is None:
            object.__setattr__(self, "_relaxed_report", validate(self, ValidationMode.RELAXED))
        return self._relaxed_report

    def with_group_priors(self, group_id: int, priors: Sequence[float]) -> "MdseGraph":
        """Copy of this graph with one group's priors replaced."""
        self._require_frozen()
        old = self.group(group_id)
        priors = check_priors(priors)
        if len(priors) != len(old.members):
            raise NotNormalized(
                f"group {group_id} has {len(old.members)} members, got {len(priors)} priors"
            )
        g = MdseGraph()
        for group in self._groups:
            g.add_hypothesis_group(priors if group.group_id == group_id else group.priors, group.role)
        g._kinds = list(self._kinds)
        g._events = list(self._events)
        g._edges = list(self._edges)
        g._edge_keys = set(self._edge_keys)
        return g.freeze()

    def __eq__(self, other):
        if not isinstance(other, MdseGraph):
            return NotImplemented
        return (
            self._frozen == other._frozen
            and tuple(self._groups) == tuple(other._groups)
            and tuple(self._events) == tuple(other._events)
            and tuple(self._edges) == tuple(other._edges)
        )

    __hash__ = None

    def __repr__(self):
        if self._frozen:
            s = self._shape
            return f"MdseGraph(n={s.n}, m={s.m}, e={s.e}, frozen)"
        return f"MdseGraph(vertices={len(self._kinds)}, edges={len(self._edges)}, building)"


# -- validation ---------------------------------------------------------------


def _vertex(v):
    return f"vertex {v}"


def _edge(e):
    return f"edge {e.src}->{e.dst}"


def _plain_degrees(graph: MdseGraph):
    """In/out degree per vertex ignoring self-loops (those are reported apart)."""
    indeg = [0] * len(graph)
    outdeg = [0] * len(graph)
    for e in graph.edges:
        if e.src != e.dst:
            outdeg[e.src] += 1
            indeg[e.dst] += 1
    return indeg, outdeg


def _max_bounds(shape: GraphShape, kind: NodeKind, role: GroupRole | None):
    """(max outdegree, max indegree, max degree) for a vertex class."""
    if kind is NodeKind.HYPOTHESIS:
        top = shape.m_star if role is GroupRole.STAR else shape.m_prime
        return top, 0, top
    if kind is NodeKind.STAR:
        return shape.k, shape.m_star, shape.k + shape.m_star
    return 0, shape.i + shape.m_prime, shape.i + shape.m_prime


def validate(graph: MdseGraph, mode=ValidationMode.RELAXED) -> ValidationReport:
    """Check ``graph`` against the structural rules.

    Relaxed rules: ``loop``, ``multi-edge``, ``hypothesis-indegree``,
    ``prime-outdegree``, ``direction`` (star to star), ``isolated-vertex``
    and ``cycle``.  Strict mode adds ``star-indegree-min``,
    ``star-outdegree-min``, ``prime-indegree-min``,
    ``hypothesis-outdegree-min``, ``min-vertices``, ``min-edges`` and
    ``degree-max``.  Self-loops only ever produce the ``loop`` rule.
    """
    if not graph.frozen:
        raise NotFrozen("graph must be frozen before validation")
    mode = ValidationMode(mode)
    shape = graph.shape
    kinds = [graph.kind(v) for v in range(len(graph))]
    out: list[Violation] = []

    for e in graph.edges:
        if e.src == e.dst:
            out.append(Violation("loop", _edge(e), f"vertex {e.src} points to itself"))
    counts = Counter((e.src, e.dst) for e in graph.edges)
    for (src, dst), c in sorted(counts.items()):
        if c > 1:
            out.append(Violation("multi-edge", f"edge {src}->{dst}", f"{c} parallel edges"))

    indeg, outdeg = _plain_degrees(graph)
    for v, kind in enumerate(kinds):
        if kind is NodeKind.HYPOTHESIS and indeg[v]:
            out.append(Violation("hypothesis-indegree", _vertex(v), f"hypothesis has indegree {indeg[v]}"))
    for v, kind in enumerate(kinds):
        if kind is NodeKind.PRIME and outdeg[v]:
            out.append(Violation("prime-outdegree", _vertex(v), f"prime event has outdegree {outdeg[v]}"))
    for e in graph.edges:
        if e.src != e.dst and kinds[e.src] is NodeKind.STAR and kinds[e.dst] is NodeKind.STAR:
            out.append(Violation("direction", _edge(e), "star events cannot feed star events"))
    for v in range(len(graph)):
        if indeg[v] + outdeg[v] == 0:
            out.append(Violation("isolated-vertex", _vertex(v), "vertex has no edges"))

    sorter = graphlib.TopologicalSorter({v: () for v in range(len(graph))})
    for e in graph.edges:
        if e.src != e.dst:
            sorter.add(e.dst, e.src)
    try:
        sorter.prepare()
    except graphlib.CycleError as exc:
        cycle = exc.args[1]
        out.append(Violation("cycle", "->".join(map(str, cycle)), "directed cycle"))

    if mode is ValidationMode.STRICT:
        out.extend(_strict_violations(graph, kinds, indeg, outdeg))
    return ValidationReport(mode, tuple(out))


def _strict_violations(graph, kinds, indeg, outdeg):
    shape = graph.shape
    out = []
    for v, kind in enumerate(kinds):
        if kind is NodeKind.STAR and indeg[v] < 1:
            out.append(Violation("star-indegree-min", _vertex(v), "star event needs >= 1 parent"))
    for v, kind in enumerate(kinds):
        if kind is NodeKind.STAR and outdeg[v] < 1:
            out.append(Violation("star-outdegree-min", _vertex(v), "star event needs >= 1 child"))
    for v, kind in enumerate(kinds):
        if kind is NodeKind.PRIME and indeg[v] < 2:
            out.append(Violation("prime-indegree-min", _vertex(v), f"prime event has indegree {indeg[v]} < 2"))
    for v, kind in enumerate(kinds):
        if kind is NodeKind.HYPOTHESIS and outdeg[v] < 1:
            out.append(Violation("hypothesis-outdegree-min", _vertex(v), "hypothesis needs >= 1 child"))
    if shape.v < 4:
        out.append(Violation("min-vertices", "graph", f"V = {shape.v} < 4"))
    if shape.e < 3:
        out.append(Violation("min-edges", "graph", f"E = {shape.e} < 3"))
    for v, kind in enumerate(kinds):
        role = graph.group(graph.group_of(v)).role if kind is NodeKind.HYPOTHESIS else None
        max_out, max_in, max_deg = _max_bounds(shape, kind, role)
        breaches = []
        if outdeg[v] > max_out:
            breaches.append(f"outdegree {outdeg[v]} > {max_out}")
        if indeg[v] > max_in and kind is not NodeKind.HYPOTHESIS:
            breaches.append(f"indegree {indeg[v]} > {max_in}")
        if indeg[v] + outdeg[v] > max_deg:
            breaches.append(f"degree {indeg[v] + outdeg[v]} > {max_deg}")
        if breaches:
            out.append(Violation("degree-max", _vertex(v), "; ".join(breaches)))
    return out


def degree_bounds(graph: MdseGraph, node: int) -> DegreeBounds:
    """Actual in/out degree of ``node`` and the allowed total-degree interval.

    Hypotheses: ``[1, m_star]`` or ``[1, m_prime]`` by group role; star
    events ``[2, k + m_star]``; prime events ``[2, i + m_prime]``.
    """
    graph._require_frozen()
    kind = graph.kind(node)
    shape = graph.shape
    role = graph.group(graph.group_of(node)).role if kind is NodeKind.HYPOTHESIS else None
    lo = 1 if kind is NodeKind.HYPOTHESIS else 2
    return DegreeBounds(graph.indegree(node), graph.outdegree(node), lo, _max_bounds(shape, kind, role)[2])


def handshake_report(graph: MdseGraph) -> HandshakeReport:
    if not graph.frozen:
        raise NotFrozen("graph must be frozen")
    s = graph.shape
    nodes = range(len(graph))
    return HandshakeReport(
        sum_indegree=sum(graph.indegree(v) for v in nodes),
        sum_outdegree=sum(graph.outdegree(v) for v in nodes),
        edge_count=s.e,
        paper_lhs=s.n + 2 * s.m,
        paper_rhs=s.v * (s.v - 1),
    )


def max_edge_bound(n: int, m: int) -> int:
    """``(n+m)(n+m+1)/2``, the published maximum edge count.

    Reference value only; :func:`validate` never enforces it.
    """
    if n < 0 or m < 0:
        raise OutOfRange("counts must be non-negative")
    return (n + m) * (n + m + 1) // 2
