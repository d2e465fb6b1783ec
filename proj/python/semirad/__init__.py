"""Radiation of a charge uniformly accelerated by a constant electric field."""

from ._semirad import (
    ConfigError,
    DivergenceError,
    Source,
    __version__,
    asymptotic_distribution,
    dw_cl,
    emission_summary,
    energy_density,
    eta_of_t,
    figure,
    n_photon_energy,
    n_photon_probability,
    one_photon_energy,
    one_photon_energy_classical,
    rate,
    rate_density,
    rate_spectral_angular,
    read_grid,
    source_for_scale,
    spectral_angular_energy,
    specfun,
    t_of_eta,
    theta_max,
    total_energy,
    trajectory,
    verify,
    window_from_times,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "Source",
    "__version__",
    "asymptotic_distribution",
    "dw_cl",
    "emission_summary",
    "energy_density",
    "eta_of_t",
    "figure",
    "n_photon_energy",
    "n_photon_probability",
    "one_photon_energy",
    "one_photon_energy_classical",
    "rate",
    "rate_density",
    "rate_spectral_angular",
    "read_grid",
    "source_for_scale",
    "spectral_angular_energy",
    "specfun",
    "t_of_eta",
    "theta_max",
    "total_energy",
    "trajectory",
    "verify",
    "window_from_times",
]
