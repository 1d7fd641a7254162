import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdse.errors import Infeasible, OutOfRange
from mdse.generate import GeneratorConfig, corpus_config, corpus_graph, generate_graph
from mdse.graph import ValidationMode, validate


def test_strict_minimal_config():
    config = GeneratorConfig(seed=3, n_star_events=1, n_prime_events=1, groups_star=1,
                             groups_prime=1, max_group_size=1, strict=True)
    g = generate_graph(config)
    assert g.shape.v == 4
    assert g.shape.e >= 3
    assert validate(g, ValidationMode.STRICT).passed


def test_deterministic():
    config = GeneratorConfig(seed=42, n_star_events=3, n_prime_events=2, max_group_size=3)
    assert generate_graph(config) == generate_graph(config)


def test_seeds_differ():
    a = generate_graph(GeneratorConfig(seed=1, n_star_events=3, n_prime_events=3))
    b = generate_graph(GeneratorConfig(seed=2, n_star_events=3, n_prime_events=3))
    assert a != b


def test_infeasible_prime_without_parents():
    with pytest.raises(Infeasible):
        generate_graph(GeneratorConfig(seed=0, n_star_events=0, n_prime_events=1, groups_star=1,
                                       groups_prime=0, strict=True))
    # relaxed mode lets star-group hypotheses feed the prime event
    g = generate_graph(GeneratorConfig(seed=0, n_star_events=0, n_prime_events=1, groups_star=1, groups_prime=0))
    assert validate(g, ValidationMode.RELAXED).passed


def test_strict_star_without_prime_is_infeasible():
    with pytest.raises(Infeasible):
        generate_graph(GeneratorConfig(seed=0, n_star_events=1, n_prime_events=0,
                                       groups_star=1, groups_prime=0, strict=True))


@pytest.mark.parametrize("kwargs", [
    {"seed": -1},
    {"seed": 2**64},
    {"n_star_events": -1},
    {"max_group_size": 0},
    {"edge_density": 0.0},
    {"edge_density": 1.5},
    {"group_sizes": (1,)},
    {"group_sizes": (0, 2)},
])
def test_config_validation(kwargs):
    with pytest.raises(OutOfRange):
        GeneratorConfig(**kwargs)


def test_group_sizes_honoured():
    g = generate_graph(GeneratorConfig(seed=5, group_sizes=(4, 2)))
    assert [len(grp.members) for grp in g.groups] == [4, 2]


def test_priors_are_complete():
    g = generate_graph(GeneratorConfig(seed=11, groups_star=2, groups_prime=2, max_group_size=5))
    for grp in g.groups:
        assert sum(grp.priors) == pytest.approx(1.0, abs=1e-9)
        assert all(p > 0 for p in grp.priors)


def test_corpus_relaxed_and_strict_validate():
    strict_ok = relaxed_ok = 0
    for seed in range(400):
        g = corpus_graph(seed)
        assert g.shape.v <= 12
        assert validate(g, ValidationMode.RELAXED).passed
        if corpus_config(seed).strict:
            try:
                g = generate_graph(corpus_config(seed))
            except Infeasible:
                continue
            assert validate(g, ValidationMode.STRICT).passed
            strict_ok += 1
        else:
            relaxed_ok += 1
    assert strict_ok >= 100 and relaxed_ok >= 200


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 2**63),
    st.integers(0, 4), st.integers(0, 4), st.integers(1, 3), st.integers(1, 3),
    st.integers(1, 4), st.floats(0.05, 1.0), st.booleans(),
)
def test_generated_graphs_validate(seed, ns, np_, gs, gp, size, density, strict):
    config = GeneratorConfig(seed, ns, np_, gs, gp, size, density, strict)
    try:
        g = generate_graph(config)
    except Infeasible:
        return
    mode = ValidationMode.STRICT if strict else ValidationMode.RELAXED
    assert validate(g, mode).passed
