"""Shift spaces for intercept-slope interval maps: expansions of the
endpoints, the admissible language and its follower graph, word surgery,
a summability criterion series, and pressure/cylinder estimates."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    InadmissibleWordError,
    MainModeError,
    ScanDivergenceError,
)
from .expansion import (
    Boundary,
    Params,
    boundary,
    expansion_of_one,
    expansion_of_zero,
    format_rational,
    itinerary,
    lower_step,
    orbit_points,
    parse_rational,
    partial_sum,
    upper_step,
)
from .language import (
    SuffixDecomposition,
    SuffixTag,
    brute_force_words,
    count_words,
    enumerate_words,
    follower_vertex,
    is_admissible,
    k_values,
    lex_compare,
    suffix_decompose,
)
from .graph import LabeledGraph, accepts, build, export_dot, stats, walk
from .surgery import (
    Configuration,
    MultiplicityProfile,
    class_of,
    g_letter,
    hat,
    hat_prefix,
    multiplicity_profile,
    sharp,
    surgery_report,
    tilde,
)
from .criterion import CriterionSeries, p1, z_of_b_prefix, z_of_word, zbar_series
from .thermo import (
    GibbsReport,
    Potential,
    PressureMethod,
    PressureReport,
    birkhoff_window,
    build_En,
    complete_to_zero,
    cylinder_estimate,
    cylinder_estimate_exact,
    gibbs_bounds,
    gibbs_diagnostic,
    pressure_estimate,
    restricted_pressure_estimate,
    tilde_configuration,
    total_oscillation,
    window_partition_sums,
)

__all__ = [
    "__version__",
    "DomainError",
    "InadmissibleWordError",
    "MainModeError",
    "ScanDivergenceError",
    "Boundary",
    "Params",
    "boundary",
    "expansion_of_one",
    "expansion_of_zero",
    "format_rational",
    "itinerary",
    "lower_step",
    "orbit_points",
    "parse_rational",
    "partial_sum",
    "upper_step",
    "SuffixDecomposition",
    "SuffixTag",
    "brute_force_words",
    "count_words",
    "enumerate_words",
    "follower_vertex",
    "is_admissible",
    "k_values",
    "lex_compare",
    "suffix_decompose",
    "LabeledGraph",
    "accepts",
    "build",
    "export_dot",
    "stats",
    "walk",
    "Configuration",
    "MultiplicityProfile",
    "class_of",
    "g_letter",
    "hat",
    "hat_prefix",
    "multiplicity_profile",
    "sharp",
    "surgery_report",
    "tilde",
    "CriterionSeries",
    "p1",
    "z_of_b_prefix",
    "z_of_word",
    "zbar_series",
    "GibbsReport",
    "Potential",
    "PressureMethod",
    "PressureReport",
    "birkhoff_window",
    "build_En",
    "complete_to_zero",
    "cylinder_estimate",
    "cylinder_estimate_exact",
    "gibbs_bounds",
    "gibbs_diagnostic",
    "pressure_estimate",
    "restricted_pressure_estimate",
    "tilde_configuration",
    "total_oscillation",
    "window_partition_sums",
]
