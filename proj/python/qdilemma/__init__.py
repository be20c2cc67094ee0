"""Noisy three-player quantum dilemma game: exact simulation and analysis."""

from ._core import (  # noqa: F401
    __version__,
    ancilla_prepare,
    class_table,
    classical_ne_payoff,
    corrupted_input,
    critical_corruption,
    decompose_entangler,
    disentangler,
    dominance,
    entangler,
    estimate_expectations,
    expectations,
    fidelity,
    load_reference_state,
    payoff,
    play,
    quantum_ne_payoff,
    reconstruct,
    sweep,
    theta_for_x,
)
