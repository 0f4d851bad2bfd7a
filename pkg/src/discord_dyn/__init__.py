"""Quantum correlations of qubit-qutrit states under local qutrit dephasing."""

from ._kernels import BACKEND
from .channels import (
    DephasingParams, KrausChannel, apply, coherence_factor, completeness_residual,
    evolve_closed_form, lift_to_composite, qutrit_dephasing, qutrit_dephasing_at,
)
from .correlations import (
    CorrelationReport, MeasurementSetting, OptimizerConfig, classical_correlation, discord,
    measured_conditional_entropy, mutual_information, negativity, projectors,
)
from .dynamics import (
    PhenomenonSummary, Trajectory, TrajectoryConfig, classify_discord, detect_sudden_death,
    run_trajectory, sweep_p,
)
from .linalg import (
    BipartiteIndex, HermitianSpectrum, hermitian_eigen, partial_trace, partial_transpose,
    tensor_product, von_neumann_entropy,
)
from .states import DensityMatrix, family_state, maximally_mixed, product_state, validate

__version__ = "0.1.0"
