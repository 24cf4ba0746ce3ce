"""latmax: greedy sums, maximal partial-sum operators, and counterexample
constructions over finite-dimensional Banach lattices."""

from latmax.spaces import (
    DirectSum,
    Element,
    LpBlock,
    SpaceDescriptor,
    SupBlock,
    direct_sum,
    dyadic_lp,
    element,
    element_from_json,
    element_to_json,
    join,
    lp_block,
    modulus,
    norm,
    space_from_json,
)
from latmax.systems import (
    BiorthogonalSystem,
    ConstantReport,
    absolute_constant,
    basis_constant,
    bibasis_constant,
    coefficients,
    maximal_partial,
    partial_sum,
    reconstruct,
    recompute_constant,
    report_from_json,
)
from latmax.greedy import (
    GreedyOrdering,
    all_greedy_orderings,
    constant_coefficient_checks,
    greedy_maximal,
    greedy_sum,
    kvee_estimate,
    natural_greedy_ordering,
    ordered_projection_maximal,
    quasi_greedy_constant,
    uqg_constant,
)
from latmax.estimation import (
    GrowthFit,
    SearchResult,
    WitnessFamily,
    growth_fit,
    nuclear_norm,
    spectral_norm,
    sup_search,
)

__version__ = "0.1.0"
