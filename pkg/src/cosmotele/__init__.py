"""Quantum field modes and continuous-variable teleportation fidelity on
expanding FRW backgrounds.

The package splits into small, pure layers:

    background   scale-factor laws, conformal time, a''/a
    specfun      Bessel/Hankel evaluation and horizon asymptotics
    modes        analytic vacua and adaptive mode-equation integration
    bogoliubov   mode-mixing coefficients and particle spectra
    fidelity     the teleportation-fidelity formula family
    gaussian     covariance blocks, Gaussian fidelity functionals
    sweeps       deterministic CSV/JSON data products
    verify       the numerical verification battery
    cli          command-line driver (fig1, fig2, table, modes, sweep, verify)

Everything is a pure function of its inputs; all containers are frozen
dataclasses, safe to share across threads.
"""

from .background import (
    BackgroundModel,
    ConformalDomain,
    ModelKind,
    conformal_to_cosmic,
    cosmic_to_conformal,
    effective_potential,
    model_nu,
    nu_index,
    scale_factor,
    scale_factor_derivative,
)
from .bogoliubov import (
    BogoliubovPair,
    NotAsymptoticallyFlatError,
    ParticleSpectrum,
    SpectrumSource,
    analytic_beta_sq,
    analytic_spectrum,
    beta_sq_de_sitter,
    beta_sq_matter,
    beta_sq_power_law,
    beta_sq_radiation,
    numerical_bogoliubov,
    thermal_weights,
    z_ratio,
)
from .fidelity import (
    FidelityModel,
    FidelityQuery,
    FidelityResult,
    effective_squeezing,
    evaluate,
    fidelity_concurrence,
    fidelity_de_sitter_ratio,
    fidelity_de_sitter_squeezed,
    fidelity_effective,
    fidelity_matter,
    fidelity_power_law,
    fidelity_thermal,
    fidelity_tmsv,
    squeezing_from_ratio,
)
from .gaussian import (
    CovarianceBlock,
    NonPhysicalCovarianceError,
    Regime,
    RegimeError,
    TwoModeCovariance,
    classify_regime,
    covariance_from_mode,
    covariance_from_values,
    fidelity_symmetric,
    fidelity_two_mode,
    noise_number_from_block,
    subhorizon_covariance,
    superhorizon_scaling,
    tmsv_covariance,
    vacuum_block,
    thermal_block,
)
from .modes import (
    FieldMode,
    IntegrationError,
    ModeSolution,
    ModeSpec,
    Vacuum,
    bunch_davies_mode,
    evolve_mode,
    hankel_mode,
    integrate_mode_equation,
    plane_wave_mode,
    wronskian,
)
from .specfun import (
    HankelKind,
    bessel_jy,
    hankel,
    hankel2_asymptotic_large,
    hankel2_asymptotic_small,
)

__version__ = "0.1.0"
