import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdse.document import canonical_ids, load_graph, parse_graph, serialize_graph
from mdse.errors import DocumentSyntaxError, DuplicateEdge, NotFrozen, NotNormalized, OutOfRange, SchemaError
from mdse.generate import GeneratorConfig, corpus_graph, generate_graph
from mdse.graph import EventKind, GroupRole, MdseGraph, NodeKind
from mdse.inference import prob_event


def _doc(**overrides):
    doc = {
        "version": 1,
        "groups": [{"role": "star", "priors": [1.0]}, {"role": "prime", "priors": [1.0]}],
        "events": [{"kind": "star"}, {"kind": "prime"}],
        "edges": [
            {"src": 0, "dst": 2, "weight": 0.9},
            {"src": 1, "dst": 3, "weight": 0.5},
            {"src": 2, "dst": 3, "weight": 0.2},
        ],
    }
    doc.update(overrides)
    return json.dumps(doc)


def test_parse_minimal(minimal):
    g = parse_graph(_doc())
    assert g == minimal
    assert [g.kind(v) for v in range(4)] == [NodeKind.HYPOTHESIS, NodeKind.HYPOTHESIS, NodeKind.STAR, NodeKind.PRIME]


def test_fixture_file_matches_builder(fixtures, minimal):
    assert load_graph(fixtures / "minimal.mdse") == minimal


def test_duplicate_edge_located():
    edges = json.loads(_doc())["edges"] + [{"src": 0, "dst": 2, "weight": 0.1}]
    with pytest.raises(DuplicateEdge) as info:
        parse_graph(_doc(edges=edges))
    assert info.value.location == "edges[3]"
    assert "edges[3]" in str(info.value)
    # unchecked parsing keeps the defect for validation to report
    assert parse_graph(_doc(edges=edges), checked=False).shape.e == 4


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_graph(json.dumps({"version": 1, "groups": [], "events": []}))
    with pytest.raises(SchemaError):
        parse_graph(_doc(extra=True))
    with pytest.raises(SchemaError) as info:
        parse_graph(_doc(edges=[{"src": 0, "dst": 2, "weight": "high"}]))
    assert info.value.location == "edges[0].weight"
    with pytest.raises(OutOfRange) as info:
        parse_graph(_doc(edges=[{"src": 0, "dst": 2, "weight": 1.5}]))
    assert info.value.location == "edges[0]"
    with pytest.raises(SchemaError):
        parse_graph(_doc(version=2))


def test_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_graph('{"version": 1,\n  "groups": [}')
    assert info.value.location.startswith("line 2")


def test_priors_not_normalized_located():
    with pytest.raises(NotNormalized) as info:
        parse_graph(_doc(groups=[{"role": "star", "priors": [0.3]}, {"role": "prime", "priors": [1.0]}]))
    assert info.value.location == "groups[0]"


def test_serialize_requires_frozen():
    with pytest.raises(NotFrozen):
        serialize_graph(MdseGraph())


def test_empty_graph_round_trip():
    g = MdseGraph().freeze()
    text = serialize_graph(g)
    assert parse_graph(text) == g
    assert serialize_graph(parse_graph(text)) == text


def test_canonical_form_shape(minimal):
    text = serialize_graph(minimal)
    lines = text.splitlines()
    assert lines[0] == "{" and lines[-1] == "}"
    assert text.endswith("\n")
    assert sum(1 for line in lines if '"src"' in line) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_idempotent(seed):
    g = corpus_graph(seed)
    text = serialize_graph(g)
    again = parse_graph(text)
    assert again == g
    assert serialize_graph(again) == text


def test_seed7_fixture_is_byte_identical(fixtures):
    config = GeneratorConfig(seed=7, n_star_events=2, n_prime_events=2)
    assert serialize_graph(generate_graph(config)) == (fixtures / "random-seed7.mdse").read_text()


def test_interleaved_build_renumbers():
    g = MdseGraph()
    (h0,) = g.add_hypothesis_group([1.0], GroupRole.STAR)
    a = g.add_event(EventKind.STAR)
    (h1,) = g.add_hypothesis_group([1.0], GroupRole.PRIME)
    p = g.add_event(EventKind.PRIME)
    g.add_edge(h0, a, 0.9)
    g.add_edge(h1, p, 0.5)
    g.add_edge(a, p, 0.2)
    g.freeze()
    assert canonical_ids(g) == {h0: 0, h1: 1, a: 2, p: 3}
    parsed = parse_graph(serialize_graph(g))
    assert prob_event(parsed, 3).value == prob_event(g, p).value


def test_financial_fixture(fixtures):
    g = load_graph(fixtures / "financial.mdse")
    assert prob_event(g, 3).value == pytest.approx(0.57, abs=1e-12)


def test_labels_survive(fixtures):
    g = MdseGraph()
    (h,) = g.add_hypothesis_group([1.0])
    a = g.add_event(EventKind.STAR, label="default")
    g.add_edge(h, a, 0.25)
    g.freeze()
    assert parse_graph(serialize_graph(g)).events[0].label == "default"
