"""Seeded simulations of contextual valuations, measurement and Bell tests."""

from ._binary_qm import (
    Analyzer,
    BqmError,
    Observable,
    QuantumState,
    Rng,
    branch_probabilities,
    check_postulates,
    chsh_contextual,
    chsh_exact,
    commuting,
    correlation_contextual,
    correlation_exact,
    detect,
    evolve_state,
    heisenberg_evolve,
    joint_basis,
    lhv_max_s,
    measurement_average,
    monte_carlo_average,
    negative_measurement,
    nonselective_update,
    quantum_average,
    reduced_state_second,
    singlet_state,
)

__all__ = [
    "Analyzer",
    "BqmError",
    "Observable",
    "QuantumState",
    "Rng",
    "branch_probabilities",
    "check_postulates",
    "chsh_contextual",
    "chsh_exact",
    "commuting",
    "correlation_contextual",
    "correlation_exact",
    "detect",
    "evolve_state",
    "heisenberg_evolve",
    "joint_basis",
    "lhv_max_s",
    "measurement_average",
    "monte_carlo_average",
    "negative_measurement",
    "nonselective_update",
    "quantum_average",
    "reduced_state_second",
    "singlet_state",
]
