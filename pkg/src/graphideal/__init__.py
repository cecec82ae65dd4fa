"""Exact workbench for graded ideals of path algebras.

The package has three layers: combinatorics of directed graphs and their
ideal lattices (``graphs``, ``lattice``), an exact symbolic algebra engine
with normal forms and an independent bounded-quotient oracle (``engine``,
``scalars``, ``linalg``, ``oracle``), and the realization machinery — two
graph constructions, ideal windows, generator families, and the span-gap
analysis that separates them (``construct``, ``ideals``, ``families``,
``fixture``, ``cli``).
"""

from .construct import (
    ConstructedGraph,
    CycleCorrespondence,
    EdgeOrigin,
    PathSet,
    VertexOrigin,
    breaker_paths,
    build_ideal_graph,
    build_legacy_graph,
    cycle_correspondence_check,
    entry_paths,
    legacy_paths,
    path_set,
)
from .engine import (
    Element,
    LeavittAlgebra,
    Monomial,
    format_element,
    monomial_word,
    parse_element,
)
from .families import (
    CASE_NAMES,
    GapReport,
    GapWitness,
    GeneratorFamily,
    InjectivityReport,
    RelationReport,
    SurjectivityReport,
    build_generator_family,
    image_span_gap,
    nonzero_vertex_images,
    phi_apply,
    preimage_word,
    verify_family_relations,
    verify_surjectivity_window,
)
from .fixture import FIXTURE_BREAKERS, FIXTURE_CORE, fixture_text, load_fixture
from .graphs import (
    EdgePool,
    EdgeRef,
    Graph,
    GraphFormatError,
    Path,
    condition_K,
    condition_L,
    emit_graph,
    graph_doc,
    graphs_equal,
    parse_graph,
    vertex_simple_cycles,
)
from .ideals import (
    ClosureReport,
    Descriptor,
    IdealWindow,
    ProbeReport,
    closure_under_generators,
    descriptor_element,
    left_identity_probe,
    spanning_descriptors,
    spanning_elements,
)
from .lattice import (
    AdmissiblePair,
    breaking_vertices,
    enumerate_admissible_pairs,
    saturate,
    saturated_hereditary_sets,
)
from .linalg import RowSpace
from .oracle import BoundedQuotient
from .scalars import QQ, PrimeField, field_from_spec

__all__ = [
    "AdmissiblePair",
    "BoundedQuotient",
    "CASE_NAMES",
    "ClosureReport",
    "ConstructedGraph",
    "CycleCorrespondence",
    "Descriptor",
    "EdgeOrigin",
    "EdgePool",
    "EdgeRef",
    "Element",
    "FIXTURE_BREAKERS",
    "FIXTURE_CORE",
    "GapReport",
    "GapWitness",
    "GeneratorFamily",
    "Graph",
    "GraphFormatError",
    "IdealWindow",
    "InjectivityReport",
    "LeavittAlgebra",
    "Monomial",
    "Path",
    "PathSet",
    "PrimeField",
    "ProbeReport",
    "QQ",
    "RelationReport",
    "RowSpace",
    "SurjectivityReport",
    "VertexOrigin",
    "breaker_paths",
    "breaking_vertices",
    "build_generator_family",
    "build_ideal_graph",
    "build_legacy_graph",
    "closure_under_generators",
    "condition_K",
    "condition_L",
    "cycle_correspondence_check",
    "descriptor_element",
    "emit_graph",
    "entry_paths",
    "enumerate_admissible_pairs",
    "field_from_spec",
    "fixture_text",
    "format_element",
    "graph_doc",
    "graphs_equal",
    "image_span_gap",
    "left_identity_probe",
    "legacy_paths",
    "load_fixture",
    "monomial_word",
    "nonzero_vertex_images",
    "parse_element",
    "parse_graph",
    "path_set",
    "phi_apply",
    "preimage_word",
    "saturate",
    "saturated_hereditary_sets",
    "spanning_descriptors",
    "spanning_elements",
    "verify_family_relations",
    "verify_surjectivity_window",
    "vertex_simple_cycles",
]

__version__ = "0.1.0"
