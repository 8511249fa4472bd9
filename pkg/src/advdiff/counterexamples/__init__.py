"""Explicit blow-up constructions: truncated backward Gaussian and
self-similar profiles, with their velocity fields and analytic norm laws."""

from .cutoffs import cutoff_phi, smoothstep, smoothstep_c4
from .drift import VelocityFieldSpec, drift_from_json
from .gaussian import (
    GaussianPerturbationSpec,
    choose_beta,
    gaussian_b_decay_exponent,
    gaussian_initial_datum,
    gaussian_source_l1,
    gaussian_velocity,
    select_gamma,
)
from .profiles import (
    Profile1D,
    ProfileRadial,
    build_profile_1d,
    build_profile_radial,
    profile_1d,
    profile_ode_residual,
    profile_radial,
    selfsim_solution,
    selfsim_velocity,
)

__all__ = [
    "cutoff_phi",
    "smoothstep",
    "smoothstep_c4",
    "VelocityFieldSpec",
    "drift_from_json",
    "GaussianPerturbationSpec",
    "choose_beta",
    "gaussian_b_decay_exponent",
    "gaussian_initial_datum",
    "gaussian_source_l1",
    "gaussian_velocity",
    "select_gamma",
    "Profile1D",
    "ProfileRadial",
    "build_profile_1d",
    "build_profile_radial",
    "profile_1d",
    "profile_radial",
    "profile_ode_residual",
    "selfsim_solution",
    "selfsim_velocity",
]
