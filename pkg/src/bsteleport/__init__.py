"""Teleportation statistics for Fock states entangled at a beam splitter.

The package computes the coefficients of the two-mode resource produced
when two number states meet at a beam splitter of arbitrary
transmissivity, the statistics of the joint photon-number and
phase-difference measurement driving the teleportation protocol, and the
resulting conditional and average fidelities, including the two standard
grid products over the splitter angle and the input imbalance.
"""

from .numerics import (
    LogFactorialTable,
    WignerIndex,
    log_factorial,
    rotation_unitary_column,
    wigner_d_column_stable,
    wigner_d_direct,
)
from .oracle import (
    ResourceCheck,
    SectorHamiltonian,
    SizeLimitError,
    protocol_brute_force,
    sector_unitary,
    sector_unitary_column,
    verify_resource,
)
from .phase import (
    PhaseProfile,
    joint_phase_prob,
    phase_argmax,
    phase_argmax_map,
    phase_profile,
)
from .protocol import (
    DEFINED_MIN,
    FidelityGrid,
    OutcomeDistribution,
    OutputState,
    UndefinedOutcomeError,
    average_fidelity,
    classical_baseline,
    fidelity_given_q,
    fidelity_given_q_double_sum,
    fidelity_sweep,
    number_sum_prob,
    outcome_distribution,
    output_state,
    split_total,
)
from .states import (
    ResourceCoeffs,
    ResourceParams,
    TargetCoeffs,
    TruncationError,
    cat_coeffs,
    coherent_coeffs,
    fock_coeffs,
    resource_coeffs,
    suggest_cutoff,
)

__version__ = "0.1.0"

__all__ = [
    "DEFINED_MIN",
    "FidelityGrid",
    "LogFactorialTable",
    "OutcomeDistribution",
    "OutputState",
    "PhaseProfile",
    "ResourceCheck",
    "ResourceCoeffs",
    "ResourceParams",
    "SectorHamiltonian",
    "SizeLimitError",
    "TargetCoeffs",
    "TruncationError",
    "UndefinedOutcomeError",
    "WignerIndex",
    "average_fidelity",
    "cat_coeffs",
    "classical_baseline",
    "coherent_coeffs",
    "fidelity_given_q",
    "fidelity_given_q_double_sum",
    "fidelity_sweep",
    "fock_coeffs",
    "joint_phase_prob",
    "log_factorial",
    "number_sum_prob",
    "outcome_distribution",
    "output_state",
    "phase_argmax",
    "phase_argmax_map",
    "phase_profile",
    "protocol_brute_force",
    "resource_coeffs",
    "rotation_unitary_column",
    "sector_unitary",
    "sector_unitary_column",
    "split_total",
    "suggest_cutoff",
    "verify_resource",
    "wigner_d_column_stable",
    "wigner_d_direct",
]
