"""maxspec: max-algebra and distinguished spectra of nonnegative matrices.

Computes the complete point spectrum in the max-times semiring and the set of
classical eigenvalues admitting nonnegative eigenvectors, with constructive
eigenvectors, asymptotic limit traces linking the two, a power-series
functional calculus in both semirings, a registry of verified Hadamard-product
inequalities, and brute-force oracles for every headline quantity.
"""

from .asymptotics import (
    DEFAULT_K_MAX,
    DEFAULT_T_GRID,
    LimitTrace,
    bapat_trace,
    classical_power_trace,
    max_power_trace,
    schur_trace,
)
from .calculus import (
    MaxPolynomial,
    PowerSeries,
    check_commuting_family,
    check_spectral_map_dist,
    check_spectral_map_max,
    eval_classical_multipoly,
    eval_matrix_classical,
    eval_matrix_max,
    eval_max_multipoly,
    eval_scalar_classical,
    eval_scalar_max,
    parse_series,
)
from .inequalities import (
    REGISTRY,
    NotApplicable,
    RegistryRow,
    pinned_counterexamples,
    run_check,
    run_suite,
)
from .matcore import (
    as_matrix,
    as_vector,
    classical_mul,
    classical_power,
    hadamard,
    hadamard_power,
    load_matrix,
    max_identity,
    max_mul,
    max_power,
    max_vec_mul,
    norm_max,
    oplus,
    save_matrix,
    transpose,
)
from .oracles import (
    GeneratorSpec,
    generate,
    oracle_local_r_enumerate,
    oracle_local_r_limit,
    oracle_local_rho_limit,
    oracle_mcgm_enumerate,
    oracle_reachability,
    oracle_scc_partition,
)
from .report import CheckReport, digest_inputs, make_report
from .specgraph import (
    Condensation,
    SpectralProfile,
    condense,
    dist_eigenvector,
    local_r,
    local_r_at,
    local_rho,
    local_rho_at,
    max_cycle_mean,
    max_eigenvector,
    perron_root,
    spectrum,
)

__version__ = "0.1.0"
