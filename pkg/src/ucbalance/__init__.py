"""Uncertainty-disturbance balance toolkit.

Exact small-dimension quantum simulation to verify that a sharp measurement
never disturbs a later one by more than its own uncertainty, no-signaling box
models for CHSH evaluation (PR-box, quantum, local deterministic), and the
closed-form plus brute-force computation of the CHSH upper bound as a
function of a theory's balance strength.
"""

from ._version import __version__
from .errors import (
    NoDataError,
    SingularEvaluationError,
    ValidationError,
    VerificationError,
)
from .probability import ProbDist, l1_distance, uncertainty
from .quantum import (
    DensityMatrix,
    ProjectiveMeasurement,
    TransitionMatrix,
    born_probabilities,
    computational_basis,
    dephase,
    pauli_x_basis,
    pauli_z_basis,
    qubit_basis,
    random_basis,
    random_state,
    spawn_rng,
    trace_norm,
    transition_matrix,
)
from .sequential import (
    BalanceReport,
    ChainVerification,
    balance_report,
    disturbance,
    estimate_balance_strength,
    sequential_distribution,
    sequential_distribution_product,
    verify_balance_chain,
)
from .boxes import (
    Box,
    ConditionalState,
    chsh,
    conditional_states,
    local_deterministic_box,
    pr_balance_property,
    pr_box,
    quantum_box,
)
from .bound import (
    BoundParams,
    ScanResult,
    alpha_from_nonlocality,
    diagonal_bound,
    f_value,
    feasible_max_correlator,
    max_bound,
    n_value,
    symmetric_bound,
)

__all__ = [
    "__version__",
    "ValidationError",
    "SingularEvaluationError",
    "NoDataError",
    "VerificationError",
    "ProbDist",
    "uncertainty",
    "l1_distance",
    "DensityMatrix",
    "ProjectiveMeasurement",
    "TransitionMatrix",
    "born_probabilities",
    "dephase",
    "transition_matrix",
    "trace_norm",
    "random_state",
    "random_basis",
    "spawn_rng",
    "computational_basis",
    "qubit_basis",
    "pauli_x_basis",
    "pauli_z_basis",
    "BalanceReport",
    "ChainVerification",
    "sequential_distribution",
    "sequential_distribution_product",
    "disturbance",
    "balance_report",
    "verify_balance_chain",
    "estimate_balance_strength",
    "Box",
    "ConditionalState",
    "pr_box",
    "quantum_box",
    "local_deterministic_box",
    "chsh",
    "conditional_states",
    "pr_balance_property",
    "BoundParams",
    "ScanResult",
    "f_value",
    "n_value",
    "max_bound",
    "diagonal_bound",
    "symmetric_bound",
    "alpha_from_nonlocality",
    "feasible_max_correlator",
]
