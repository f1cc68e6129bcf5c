"""Graph-algebra toolkit: quantum-space graph families, Pythagorean modules,
exact truncated lifts of their representations, and spectrum classification."""

from .families import (
    FAMILIES,
    NO_REVISIT,
    RANGE_DISTINCT,
    FamilyCheck,
    FamilyReport,
    LensParams,
    lens_edge_provenance,
    lens_graph_coprime,
    projective_graph,
    require_coprime,
    sphere_even_graph,
    sphere_odd_graph,
    validate_quantum_graph,
)
from .graphs import (
    Edge,
    Graph,
    GraphError,
    LoopStructure,
    Path,
    compose_paths,
    enumerate_paths,
    is_isomorphic,
    loop_structure,
    maximal_paths,
    opposite,
    power_graph,
    skew_product,
)
from .io import (
    CodecError,
    format_complex,
    graph_from_dict,
    graph_to_dict,
    graph_to_dot,
    lift_from_dict,
    lift_to_dict,
    module_from_dict,
    module_to_dict,
    parse_complex,
    spectrum_from_dict,
    spectrum_to_dict,
)
from .lifting import (
    CkReport,
    GeneratorMatrices,
    LiftError,
    LiftVector,
    TruncatedLift,
    WordOperator,
    ck_residuals,
    embed_vector,
    generator_matrices,
    lift,
    lift_intertwiner,
    word_operator,
)
from .modules import (
    EQUIVALENT,
    INEQUIVALENT,
    UNDETERMINED,
    Equivalence,
    IntertwinerSpace,
    ModuleError,
    ModuleReport,
    PythagoreanModule,
    are_equivalent,
    direct_sum,
    intertwiner_space,
    is_indecomposable,
    is_irreducible,
    isolated_module,
    one_dim_module,
    path_operator,
    random_module,
    validate_module,
)
from .spectrum import (
    LOOP_GRAPH,
    LOOP_GRAPH_WITH_SOURCES,
    UNSUPPORTED,
    HypothesisReport,
    SpectrumDescription,
    SpectrumError,
    check_hypotheses,
    classify,
    representative_module,
)

__all__ = [
    "Edge",
    "Graph",
    "GraphError",
    "LoopStructure",
    "Path",
    "compose_paths",
    "enumerate_paths",
    "is_isomorphic",
    "loop_structure",
    "maximal_paths",
    "opposite",
    "power_graph",
    "skew_product",
    "FAMILIES",
    "NO_REVISIT",
    "RANGE_DISTINCT",
    "FamilyCheck",
    "FamilyReport",
    "LensParams",
    "lens_edge_provenance",
    "lens_graph_coprime",
    "projective_graph",
    "require_coprime",
    "sphere_even_graph",
    "sphere_odd_graph",
    "validate_quantum_graph",
    "EQUIVALENT",
    "INEQUIVALENT",
    "UNDETERMINED",
    "Equivalence",
    "IntertwinerSpace",
    "ModuleError",
    "ModuleReport",
    "PythagoreanModule",
    "are_equivalent",
    "direct_sum",
    "intertwiner_space",
    "is_indecomposable",
    "is_irreducible",
    "isolated_module",
    "one_dim_module",
    "path_operator",
    "random_module",
    "validate_module",
    "CodecError",
    "format_complex",
    "graph_from_dict",
    "graph_to_dict",
    "graph_to_dot",
    "lift_from_dict",
    "lift_to_dict",
    "module_from_dict",
    "module_to_dict",
    "parse_complex",
    "spectrum_from_dict",
    "spectrum_to_dict",
    "CkReport",
    "GeneratorMatrices",
    "LiftError",
    "LiftVector",
    "TruncatedLift",
    "WordOperator",
    "ck_residuals",
    "embed_vector",
    "generator_matrices",
    "lift",
    "lift_intertwiner",
    "word_operator",
    "LOOP_GRAPH",
    "LOOP_GRAPH_WITH_SOURCES",
    "UNSUPPORTED",
    "HypothesisReport",
    "SpectrumDescription",
    "SpectrumError",
    "check_hypotheses",
    "classify",
    "representative_module",
]

__version__ = "0.1.0"
