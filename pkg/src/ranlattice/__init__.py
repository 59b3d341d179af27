"""Randomized rank-1 lattice rules for quasi-Monte Carlo integration.

The package builds rank-1 lattice rules with a prime number of points,
measures their worst-case integration error in weighted Korobov spaces,
and selects generating vectors either by a min-of-r random search or by
component-by-component construction.  A small benchmark layer reproduces
error histograms and convergence sweeps as CSV files.
"""

from .bench import (
    ExperimentRecord,
    SlopeFit,
    fit_slope,
    read_csv,
    run_convergence,
    run_histogram,
    variance_table,
    write_csv,
)
from .construct import (
    SelectionConfig,
    SelectionOutcome,
    cbc_deterministic,
    cbc_randomized,
    prime_set,
    resolve_r,
    sample_prime,
    sample_shift,
    sample_vector,
    select,
)
from .integrands import TestFunction, exact_integral, mc_estimate, qmc_estimate
from .lattice import LatticeRule, Shift, character_sum, in_dual, points, shifted_points
from .space import KorobovParams, bound_B, bound_B_inf, r_decay, resolve_weights, zeta
from .wce import (
    WceReport,
    bernoulli_poly,
    brute_force_tail_bound,
    k_max_for_tail,
    kernel_coefficient,
    membership_Z,
    wce_brute_force,
    wce_closed_form,
)

__version__ = "0.1.0"

__all__ = [
    "ExperimentRecord",
    "KorobovParams",
    "LatticeRule",
    "SelectionConfig",
    "SelectionOutcome",
    "Shift",
    "SlopeFit",
    "TestFunction",
    "WceReport",
    "bernoulli_poly",
    "bound_B",
    "bound_B_inf",
    "brute_force_tail_bound",
    "cbc_deterministic",
    "cbc_randomized",
    "character_sum",
    "exact_integral",
    "fit_slope",
    "in_dual",
    "k_max_for_tail",
    "kernel_coefficient",
    "mc_estimate",
    "membership_Z",
    "points",
    "prime_set",
    "qmc_estimate",
    "r_decay",
    "read_csv",
    "resolve_r",
    "resolve_weights",
    "run_convergence",
    "run_histogram",
    "sample_prime",
    "sample_shift",
    "sample_vector",
    "select",
    "shifted_points",
    "variance_table",
    "wce_brute_force",
    "wce_closed_form",
    "write_csv",
    "zeta",
]
