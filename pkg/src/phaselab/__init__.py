"""phaselab: adaptive vs non-adaptive phase estimation over promised phase sets.

Exact simulation of phase-estimation circuits, explicit adaptive and
non-adaptive strategies for the paired promise sets, state-discrimination
machinery, and an LP/Farkas lower-bound engine that brackets the minimum
non-adaptive budget and produces verifiable infeasibility certificates.
"""

from .errors import (
    CertificateConstructionError,
    DomainError,
    ResourceError,
    SolverError,
)
from .phases import DyadicPhase, PromiseSet, build_promise_set, min_gap, unit_phase
from .pesim import (
    OutcomeDistribution,
    StateVector,
    cat_flatten_equiv,
    pe_distribution,
    pe_simulate,
    qft_matrix,
    tv_distance,
)
from .strategy import (
    AdaptiveStrategy,
    AmplitudeProfile,
    NonadaptiveStrategy,
    adaptive_protocol,
    collapse_to_weight_profile,
    comb_budget,
    comb_delta,
    comb_profile,
    final_state,
    flattened_pe_profile,
    nonadaptive_strategy,
    profile_convolve_squared,
)
from .discrim import (
    DiscriminationResult,
    GramMatrix,
    MeasurementKind,
    fixed_plus_minus_measurement,
    fourier_measurement_success,
    helstrom_two,
    overlap_closed_form,
    pairwise_overlap,
    pgm_success,
    promise_gram,
)
from .farkas import (
    Certificate,
    CertificateReport,
    FarkasSystem,
    LPResult,
    PositivityResult,
    PositivityStatus,
    RegionSignTable,
    ScanResult,
    TrigPoly,
    adaptive_lower_bound,
    build_certificate,
    build_system,
    certify_witness_nonnegative,
    lp_feasible,
    positivity_check,
    region_signs,
    scan_min_applications,
    verify_certificate,
    witness_coeffs,
    witness_factors,
    witness_value,
    witness_zeros,
)
from .geometry import (
    StateTriple,
    angle_triangle_check,
    controlled_phase_min_fidelity,
    gram_det_identity,
    random_state,
)

__version__ = "0.1.0"
