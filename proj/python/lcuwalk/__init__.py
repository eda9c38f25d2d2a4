"""Dense verifier for quantum-walk LCU Hamiltonian simulation."""

from ._lcuwalk import (
    Hamiltonian,
    abs_sum_estimate,
    bessel_row,
    blown_up_parity,
    choose_k,
    combined_lower_bound,
    exact_evolution,
    lcu_coefficients,
    parity_path,
    plan,
    random_sparse,
    simulate,
    solve_s_l,
    truncation_bound,
    verify,
    walk_spectrum,
)

__all__ = [
    "Hamiltonian",
    "abs_sum_estimate",
    "bessel_row",
    "blown_up_parity",
    "choose_k",
    "combined_lower_bound",
    "exact_evolution",
    "lcu_coefficients",
    "parity_path",
    "plan",
    "random_sparse",
    "simulate",
    "solve_s_l",
    "truncation_bound",
    "verify",
    "walk_spectrum",
]
