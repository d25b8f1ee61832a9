"""Crosscap numbers and projectivity of graphs built from finite commutative rings."""

from .classify import (
    CanonicalForm,
    ClassificationVerdict,
    RingUniverse,
    canonicalize,
    compute_class,
    cross_validate,
    size_bound_audit,
    theory_comaximal,
    theory_gamma_class,
    theory_planar_gamma,
    theory_projective_gamma,
    theory_unit_unitary,
)
from .embedding import (
    EmbeddingCertificate,
    Orientability,
    SearchResult,
    SearchStatus,
    SignedScheme,
    search_embedding,
    trace_faces,
    verify_certificate,
)
from .graphs import (
    Graph,
    build_comaximal,
    build_gamma,
    build_gamma_bar,
    build_unit_graph,
    build_unitary_cayley,
    disjoint_copies,
    disjoint_union,
    isomorphic,
    parse_edge_list,
    tensor,
)
from .obstructions import catalog, detect_obstruction, obstruction
from .rings import FiniteRing, compile_ring, inverse_closed_subsets, parse_ring, validate_S
from .subdivision import SubdivisionModel, find_subdivision
from .topology import (
    CrosscapResult,
    crosscap_exact,
    crosscap_lower_bound_edges,
    kmn_crosscap,
    kn_crosscap,
    min_degree_consistency,
    planarity,
    stahl_compose,
)

__version__ = "0.1.0"
