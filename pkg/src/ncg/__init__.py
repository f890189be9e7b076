"""Finite groups, their non-commuting graphs, and executable checks of the
statements relating graph isomorphism to group order."""

from .errors import NCGError
from .graph import (
    Fingerprint,
    IsoMap,
    NCGraph,
    are_isomorphic,
    fingerprint,
    max_clique,
    maximum_clique,
    multipartite_parts,
    noncommuting_graph,
    verify_iso,
)
from .group import (
    FiniteGroup,
    Subgroup,
    direct_product,
    from_cayley_table,
    from_permutation_generators,
    matrix_group,
    standard_family,
    subgroup_closure,
)
from .structure import (
    ac_partition,
    center,
    centralizer,
    commutator_with_element,
    conjugacy_classes,
    derived_series,
    frobenius_structure,
    is_solvable,
    nilpotency_class,
    normal_subgroups,
    p_group_profile,
    quotient,
    upper_central_series,
)

__version__ = "0.1.0"

__all__ = [
    "NCGError",
    "Fingerprint",
    "IsoMap",
    "NCGraph",
    "are_isomorphic",
    "fingerprint",
    "max_clique",
    "maximum_clique",
    "multipartite_parts",
    "noncommuting_graph",
    "verify_iso",
    "FiniteGroup",
    "Subgroup",
    "direct_product",
    "from_cayley_table",
    "from_permutation_generators",
    "matrix_group",
    "standard_family",
    "subgroup_closure",
    "ac_partition",
    "center",
    "centralizer",
    "commutator_with_element",
    "conjugacy_classes",
    "derived_series",
    "frobenius_structure",
    "is_solvable",
    "nilpotency_class",
    "normal_subgroups",
    "p_group_profile",
    "quotient",
    "upper_central_series",
]
