"""Exact isoperimetric profiles of rooted trees and the bounds they certify."""

from .tree import (
    GenerationError,
    RootedTree,
    TreeFormatError,
    WeightTable,
    generate_tree,
    parse_tree,
    postorder,
    serialize_tree,
    subtree_weights,
)
from .profile import (
    IsoProfile,
    SizeCapError,
    brute_force_profiles,
    compute_profile,
    edge_boundary_size,
    edge_profile,
    peaks,
    vertex_boundary_size,
    vertex_profile,
    witness_subset,
)
from .bounds import (
    FluxAssignment,
    FluxCheck,
    SandwichCheck,
    analytic_peak_lower_bounds,
    binomial,
    check_flux_conservation,
    count_sizes_with_cut_at_most,
    cut_count_upper_bound,
    edge_peak_lower_bound,
    flux_assignment,
    prefix_upper_bounds,
    sandwich_check,
)
from .report import (
    BoundsReport,
    SuiteResult,
    derived_parameter_bounds,
    emit,
    sweep_rows,
    verify_suite,
)

__all__ = [
    "BoundsReport",
    "FluxAssignment",
    "FluxCheck",
    "GenerationError",
    "IsoProfile",
    "RootedTree",
    "SandwichCheck",
    "SizeCapError",
    "SuiteResult",
    "TreeFormatError",
    "WeightTable",
    "analytic_peak_lower_bounds",
    "binomial",
    "brute_force_profiles",
    "check_flux_conservation",
    "compute_profile",
    "count_sizes_with_cut_at_most",
    "cut_count_upper_bound",
    "derived_parameter_bounds",
    "edge_boundary_size",
    "edge_peak_lower_bound",
    "edge_profile",
    "emit",
    "flux_assignment",
    "generate_tree",
    "parse_tree",
    "peaks",
    "postorder",
    "prefix_upper_bounds",
    "sandwich_check",
    "serialize_tree",
    "subtree_weights",
    "sweep_rows",
    "verify_suite",
    "vertex_boundary_size",
    "vertex_profile",
    "witness_subset",
]
