"""Point varieties of quantum polynomial algebras, exactly.

Compute the point variety of a skew polynomial algebra from its commutation
matrix, classify the collections of coordinate planes that can be excluded
from one (adequacy, denseness, symmetry orbits), build the degeneration
graph of parameter sub-tori, and constructively realize admissible
collections as concrete algebras.  All arithmetic is exact: parameters live
in a finitely generated abelian group and every question reduces to integer
lattice computations.
"""

__version__ = "0.1.0"

from .adequacy import (
    Collection,
    OrbitCatalog,
    canonical_form,
    enumerate_adequate,
    is_adequate,
    is_dense,
    non_dense_adequate,
)
from .degeneration import (
    DegGraph,
    DegNode,
    SolutionFamily,
    build_graph,
    enumerate_nodes,
    forced_solutions,
    sinks,
    to_dot,
)
from .lattice import (
    SubLattice,
    closure,
    member,
    node_label,
    quartet_saturate,
    span,
    triple_char,
)
from .realize import (
    NotAdequateError,
    RealizationResult,
    RealizeAllSummary,
    generic_point_of_node,
    realize,
    realize_all,
)
from .scalars import (
    GeneratorTable,
    GroupScalar,
    NameSupply,
    QMatrix,
    b_scalar,
    parse_scalar,
    q_entry,
    qmatrix_from_json,
)
from .triples import Triple, TripleSet, all_triples
from .variety import (
    Configuration,
    components,
    good_triples,
    ideal_generators,
    is_rank_one,
    monomial_variety_check,
)

__all__ = [
    "Collection",
    "Configuration",
    "DegGraph",
    "DegNode",
    "GeneratorTable",
    "GroupScalar",
    "NameSupply",
    "NotAdequateError",
    "OrbitCatalog",
    "QMatrix",
    "RealizationResult",
    "RealizeAllSummary",
    "SolutionFamily",
    "SubLattice",
    "Triple",
    "TripleSet",
    "all_triples",
    "b_scalar",
    "build_graph",
    "canonical_form",
    "closure",
    "components",
    "enumerate_adequate",
    "enumerate_nodes",
    "forced_solutions",
    "generic_point_of_node",
    "good_triples",
    "ideal_generators",
    "is_adequate",
    "is_dense",
    "is_rank_one",
    "member",
    "monomial_variety_check",
    "node_label",
    "non_dense_adequate",
    "parse_scalar",
    "q_entry",
    "qmatrix_from_json",
    "quartet_saturate",
    "realize",
    "realize_all",
    "sinks",
    "span",
    "to_dot",
    "triple_char",
]
