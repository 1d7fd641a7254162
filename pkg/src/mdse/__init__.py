"""Hypothesis/event graphs with exact Bayesian queries and a brute-force oracle."""

from mdse.document import load_graph, parse_graph, save_graph, serialize_graph
from mdse.errors import MdseError
from mdse.generate import GeneratorConfig, generate_graph
from mdse.graph import (
    EventKind,
    GroupRole,
    MdseGraph,
    ValidationMode,
    degree_bounds,
    handshake_report,
    max_edge_bound,
    validate,
)
from mdse.inference import (
    Normalization,
    ProbQuery,
    QueryMode,
    event_posterior,
    full_probability,
    joint_probability,
    map_hypothesis,
    posterior,
    prob_and_case,
    prob_event,
    prob_event_and,
    prob_event_expanded,
)
from mdse.priors import priors_explicit, priors_from_counts, priors_uniform, update_group

__version__ = "0.1.0"
