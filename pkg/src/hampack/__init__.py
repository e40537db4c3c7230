"""Edge-disjoint Hamilton cycle packings of sparse random digraphs.

The package generates a binomial random digraph in two exposure rounds,
extracts as many edge-disjoint one-factors as the two-sided minimum degree
allows, and converts each factor to a Hamilton cycle by online-sprinkled
path rotations.  Verifiers, exhaustive small-instance oracles and
statistical probes make every randomized claim checkable.
"""

from .errors import (DimensionError, Failure, InvalidInputError,
                     ParameterRangeError, SizeError)
from .exposure import (EPSILON_DENSITY, AvailableEdgeSet, ExposureLedger,
                       Params, coupling_audit, derive_parameters, expose,
                       first_exposure, init_available_edges, second_exposure,
                       strict_density_window)
from .graphs import (BipartiteGraph, Cycle, Digraph, OneFactor, Permutation,
                     bipartite_to_digraph, degree_profile, is_heavy,
                     matching_to_one_factor, min_degree_vertices)
from .matching import (MatchingFamily, decompose_regular, find_delta_matchings,
                       find_r_factor, gale_ryser_bruteforce)
from .merge import (DesignationLedger, MergeResult, MergeSettings,
                    choose_designated, convert_all, merge_two_cycles,
                    one_factor_to_hamilton)
from .oracle import brute_force_psi, enumerate_hamilton_cycles
from .pipeline import TrialReport, full_pipeline, phase_one
from .rng import STREAM_LABELS, SeededRng
from .rotation import (QuarterPartition, RotationState, left_rotate,
                       quarter_partition, reconstruct_path, right_rotate,
                       rotate_to_target, sprinkle_rotations)
from .runner import BatchSummary, TrialConfig, emit, run_trials
from .stats import (degree_gap_probe, designation_moment_estimate,
                    exact_power_moment, harmonic_number,
                    permutation_cycle_stats, sigma_variance,
                    single_matching_moment_exhaustive)
from .verify import VerifyResult, delta_pm, verify_packing

__version__ = "0.1.0"

__all__ = [
    "AvailableEdgeSet", "BatchSummary", "BipartiteGraph", "Cycle",
    "DesignationLedger", "Digraph", "DimensionError", "EPSILON_DENSITY",
    "ExposureLedger", "Failure", "InvalidInputError", "MatchingFamily",
    "MergeResult", "MergeSettings", "OneFactor", "ParameterRangeError",
    "Params", "Permutation", "QuarterPartition", "RotationState",
    "STREAM_LABELS", "SeededRng", "SizeError", "TrialConfig", "TrialReport",
    "VerifyResult", "bipartite_to_digraph", "brute_force_psi",
    "choose_designated", "convert_all", "coupling_audit", "decompose_regular",
    "degree_gap_probe", "degree_profile", "delta_pm", "derive_parameters",
    "designation_moment_estimate", "emit", "enumerate_hamilton_cycles",
    "exact_power_moment", "expose", "find_delta_matchings", "find_r_factor",
    "first_exposure", "full_pipeline", "gale_ryser_bruteforce",
    "harmonic_number", "init_available_edges", "is_heavy", "left_rotate",
    "matching_to_one_factor", "merge_two_cycles", "min_degree_vertices",
    "one_factor_to_hamilton", "permutation_cycle_stats", "phase_one",
    "quarter_partition", "reconstruct_path", "right_rotate",
    "rotate_to_target", "run_trials", "second_exposure", "sigma_variance",
    "single_matching_moment_exhaustive", "sprinkle_rotations",
    "strict_density_window", "verify_packing", "__version__",
]
