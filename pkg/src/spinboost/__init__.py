"""spinboost: two-qubit Bloch states under a phi-parameterized boost map.

The package models two-qubit states in the 15-parameter Bloch-vector /
correlation-tensor representation, applies a boost-angle transformation to
all 15 parameters (the printed component map, a sign-symmetrized variant,
and an exact unitary-conjugation oracle), computes entanglement and entropy
metrics over parameter sweeps, and diagnoses whether the transformed
operators are still physical states (positivity, Choi complete positivity).
"""

from .channel import (
    CP_TOL,
    ChannelDiagnostics,
    ChannelMode,
    apply_to_matrix,
    boost_unitary,
    choi_matrix,
    diagnose,
    transfer_matrix,
    transform_bloch,
    transform_pure_closed,
    transform_unitary,
    transform_xstate_closed,
)
from .errors import (
    BadDimensionError,
    InvalidSpecError,
    NoConvergenceError,
    NonFiniteError,
    NotHermitianError,
    OutOfRangeError,
    SpinboostError,
    UnknownPresetError,
)
from .linalg import (
    PRODUCT_BASIS,
    EigenDecomposition,
    hermitian_eigen,
    kron,
    partial_trace,
    partial_transpose,
    pauli_assemble,
    pauli_coefficients,
)
from .metrics import (
    CLIP_TOL,
    MetricsRecord,
    batch_records,
    compute_record,
    concurrence,
    marginal_entropies,
    negativity,
    purity,
    von_neumann_entropy,
)
from .states import (
    POSITIVITY_TOL,
    BlochState,
    DensityMatrix,
    Explicit,
    GenericPure,
    StateFamily,
    ValidationReport,
    Werner,
    XState,
    from_density,
    make_state,
    to_density,
    validate,
)
from .sweep import (
    CSV_HEADER,
    DEFAULT_PARAM_STEPS,
    DEFAULT_PHI_STEPS,
    MAX_GRID_POINTS,
    PRESET_NAMES,
    ChoiReport,
    ParamGrid,
    PhysicalityReport,
    SweepSpec,
    run_choi,
    run_preset,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "SpinboostError",
    "BadDimensionError",
    "NonFiniteError",
    "NotHermitianError",
    "NoConvergenceError",
    "OutOfRangeError",
    "InvalidSpecError",
    "UnknownPresetError",
    # linear algebra
    "EigenDecomposition",
    "hermitian_eigen",
    "kron",
    "partial_trace",
    "partial_transpose",
    "pauli_coefficients",
    "pauli_assemble",
    "PRODUCT_BASIS",
    # states
    "POSITIVITY_TOL",
    "BlochState",
    "DensityMatrix",
    "StateFamily",
    "Werner",
    "XState",
    "GenericPure",
    "Explicit",
    "ValidationReport",
    "make_state",
    "to_density",
    "from_density",
    "validate",
    # channel
    "CP_TOL",
    "ChannelMode",
    "ChannelDiagnostics",
    "boost_unitary",
    "transform_bloch",
    "transform_unitary",
    "transform_xstate_closed",
    "transform_pure_closed",
    "transfer_matrix",
    "apply_to_matrix",
    "choi_matrix",
    "diagnose",
    # metrics
    "CLIP_TOL",
    "MetricsRecord",
    "concurrence",
    "negativity",
    "von_neumann_entropy",
    "marginal_entropies",
    "purity",
    "compute_record",
    "batch_records",
    # sweeps
    "CSV_HEADER",
    "DEFAULT_PHI_STEPS",
    "DEFAULT_PARAM_STEPS",
    "MAX_GRID_POINTS",
    "PRESET_NAMES",
    "ParamGrid",
    "SweepSpec",
    "PhysicalityReport",
    "ChoiReport",
    "run_sweep",
    "run_preset",
    "run_choi",
]
