"""Minimum hamiltonian-expandable graphs: constructions, witnesses, certificates."""

__version__ = "0.1.0"

from hamexp.constructions import (  # noqa: E402
    FamilyLabeling,
    build_even,
    build_minimum,
    build_odd,
    exp_h,
    template_witness,
)
from hamexp.graph import (  # noqa: E402
    DegreeProfile,
    Graph,
    GraphError,
    NonEdge,
    add_edge,
    degree_profile,
    make_graph,
    non_edges,
)
from hamexp.oracle import (  # noqa: E402
    CycleWitness,
    ExpandabilityReport,
    expandability_report,
    ham_cycle_containing,
    ham_path,
    validate_witness,
)

__all__ = [
    "CycleWitness", "DegreeProfile", "ExpandabilityReport", "FamilyLabeling", "Graph",
    "GraphError", "NonEdge", "add_edge", "build_even", "build_minimum", "build_odd",
    "degree_profile", "exp_h", "expandability_report", "ham_cycle_containing", "ham_path",
    "make_graph", "non_edges", "template_witness", "validate_witness",
]
