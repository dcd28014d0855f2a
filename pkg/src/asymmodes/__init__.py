"""Modes of asymmetry: harmonic-analysis numerics for symmetric quantum dynamics.

Decomposes states, measurements, and channels into modes under U(1) and
SU(2)/SO(3), computes per-mode asymmetry monotones and feasibility bounds on
covariant transformations, reduces covariant channels to per-rank coefficient
matrices, and simulates quantum-reference-frame degradation.
"""

from .linalg import (
    DEFAULT_TOL,
    DensityMatrix,
    POVM,
    Superoperator,
    apply_superop,
    channel_from_kraus,
    compose_superops,
    conjugation_superop,
    hs_inner,
    hs_norm,
    identity_superop,
    partial_trace,
    random_density_matrix,
    superop_from_map,
    tensor_product,
    trace_norm,
    unvec,
    vec,
)
from .u1 import (
    CoherentState,
    FourierWeights,
    TransitionBound,
    U1ModeSpectrum,
    U1Representation,
    alignment_accessible_state,
    amplifier_envelope,
    coherent_state,
    ensemble_bound,
    joint_mode_component,
    joint_representation,
    mode_monotone,
    mode_project,
    mode_project_dft,
    mode_spectrum,
    modes_of,
    pure_mode_norm,
    transition_bound,
    weighted_twirl,
)
from .su2 import (
    AngularMomentumOps,
    DecomposedRep,
    HalfInteger,
    SU2Representation,
    TensorOperatorBasis,
    angular_momentum,
    axial_twirl,
    clebsch_gordan,
    covariance_residual,
    decompose,
    haar_angles,
    hermitian_conjugate_mode_check,
    orthonormality_residual,
    so3_mode_project,
    so3_mode_project_quadrature,
    tensor_basis_general,
    tensor_basis_spin_j,
    twirl_state,
    wigner_D,
    wigner_d,
)
from .channels import (
    CovariantChannelCoefficients,
    MissingModeReport,
    SuperopModeSpectrum,
    apply_reduced,
    coefficient_bounds_check,
    compose_reduced,
    covariant_joint_unitary,
    measurement_channel,
    missing_mode_family,
    random_covariant_channel,
    reduce_covariant,
    simulate_with_frame,
    superop_covariance_residual,
    superop_mode_project,
    superop_mode_spectrum,
    superop_tensor_basis,
    twirl_superop,
)
from .monotones import (
    EquivalenceVerdict,
    ModeMonotoneTable,
    PsuccResult,
    SimulationParameterReport,
    angular_momentum_monotone,
    axial_symmetrization,
    distinguish_success_probability,
    ensemble_bound_g,
    equal_moment_equivalence_check,
    mode_monotone_table,
    second_moment_monotone,
    simulation_parameter_report,
    spin_j_mode_monotone,
    trace_sqrt_lz_sq,
)
from .rf import (
    DegradationModel,
    Trajectory,
    TrajectoryStep,
    degrade_trajectory,
    degrade_via_channel,
    gaussian_weights,
    misalignment_state,
)

__version__ = "0.1.0"
