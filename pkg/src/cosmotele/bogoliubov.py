"""Bogoliubov coefficients and particle spectra.

Closed-form era spectra:

    power law:   |beta_k|^2 = (pi^2 alpha^2 / 4 k^2) sech^2(pi k / 2 alpha)
    de Sitter:   |beta_k|^2 = 1 / (exp(2 pi k / H) - 1)
    matter:      |beta_k|^2 = 1 / (exp(2 pi k / H0) - 1)
    radiation:   beta_k = 0 exactly (conformally flat evolution)

The Planck forms are the Gibbons-Hawking thermal spectrum at temperature
H/(2 pi).  Note the power-law formula at alpha = 1/2 does not vanish even
though the radiation-era treatment gives beta_k = 0 exactly; both code
paths are exposed deliberately (PowerLaw(alpha=1/2) vs RadiationDominated)
and disagree by construction.

Numerical extraction projects an evolved (chi, dchi) pair onto the
plane-wave out-basis, which is only meaningful where the background is
locally flat; the |a''/a|/k^2 gate enforces that instead of silently
returning garbage.  Analytic constructors return real nonnegative
coefficients, since every downstream fidelity depends only on |beta|^2
and |beta/alpha|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .background import BackgroundModel, ModelKind
from .modes import ModeSolution, plane_wave_mode

EXP_UNDERFLOW_ARG = 700.0
NORMALIZATION_TOL = 1e-8
DEFAULT_EPS_POT = 1e-6
INPUT_DRIFT_TOL = 1e-6


class NotAsymptoticallyFlatError(ValueError):
    """The out-region is not flat enough for a plane-wave out-basis.

    Carries the measured |a''/a| / k^2 ratio.
    """

    def __init__(self, potential_ratio: float, eta: float, eps_pot: float):
        super().__init__(
            f"out-region not asymptotically flat at eta = {eta}: "
            f"|a''/a|/k^2 = {potential_ratio:.3e} exceeds {eps_pot:.1e}"
        )
        self.potential_ratio = potential_ratio


class DegeneratePairError(ValueError):
    """alpha = 0, so the ratio |beta/alpha| is undefined."""


@dataclass(frozen=True)
class BogoliubovPair:
    """Mode-mixing coefficients (alpha_k, beta_k) for a single k."""

    alpha: complex
    beta: complex
    k: float

    @property
    def normalization_residual(self) -> float:
        """| |alpha|^2 - |beta|^2 - 1 |, zero for an exact transformation."""
        return abs(abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0)

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2

    @classmethod
    def from_beta_sq(cls, beta_sq: float, k: float) -> "BogoliubovPair":
        """Exactly normalized pair with real nonnegative coefficients."""
        if beta_sq < 0:
            raise ValueError(f"|beta|^2 must be nonnegative, got {beta_sq}")
        return cls(alpha=complex(math.sqrt(1.0 + beta_sq)), beta=complex(math.sqrt(beta_sq)), k=k)


def z_ratio(pair: BogoliubovPair) -> float:
    """z = |beta/alpha|^2 in [0, 1); the thermal-weight ratio of the pair."""
    if pair.alpha == 0:
        raise DegeneratePairError("alpha = 0: z ratio undefined")
    return abs(pair.beta) ** 2 / abs(pair.alpha) ** 2


def thermal_weights(z: float, n_max: int) -> np.ndarray:
    """Geometric occupation weights (1 - z) z^n for n = 0..n_max.

    The omitted tail carries mass z^(n_max + 1).
    """
    if not 0 <= z < 1:
        raise ValueError(f"z must lie in [0, 1), got {z}")
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    n = np.arange(n_max + 1)
    return (1.0 - z) * z**n


# ---------------------------------------------------------------------------
# Closed-form era spectra
# ---------------------------------------------------------------------------

def _sech_sq(y: float) -> float:
    # 4 e^(-2y) / (1 + e^(-2y))^2; underflows gracefully to 0 for large y
    e = math.exp(-2.0 * abs(y))
    return 4.0 * e / (1.0 + e) ** 2


def beta_sq_power_law(k: float, alpha: float) -> float:
    """Created-particle number for a power-law background."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return (math.pi**2 * alpha**2 / (4.0 * k**2)) * _sech_sq(math.pi * k / (2.0 * alpha))


def _planck_occupation(x: float) -> float:
    # 1/(e^x - 1), returning exactly 0 beyond the underflow threshold
    if x > EXP_UNDERFLOW_ARG:
        return 0.0
    return 1.0 / math.expm1(x)


def beta_sq_de_sitter(k: float, H: float) -> float:
    """Thermal de Sitter spectrum at the Gibbons-Hawking temperature H/2pi."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if H <= 0:
        raise ValueError(f"H must be positive, got {H}")
    return _planck_occupation(2.0 * math.pi * k / H)


def beta_sq_matter(k: float, H0: float) -> float:
    """Thermal-like matter-era mean particle number."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if H0 <= 0:
        raise ValueError(f"H0 must be positive, got {H0}")
    return _planck_occupation(2.0 * math.pi * k / H0)


def beta_sq_radiation(k: float) -> float:
    """Exactly zero: conformally flat evolution creates no particles."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    return 0.0


def analytic_beta_sq(model: BackgroundModel, k: float) -> float:
    """Dispatch the closed-form spectrum for a background model."""
    kind = model.kind
    if kind is ModelKind.MINKOWSKI:
        return 0.0
    if kind is ModelKind.RADIATION_DOMINATED:
        return beta_sq_radiation(k)
    if kind is ModelKind.POWER_LAW:
        return beta_sq_power_law(k, model.alpha)
    if kind is ModelKind.MATTER_DOMINATED:
        return beta_sq_matter(k, model.H0)
    return beta_sq_de_sitter(k, model.H)


# ---------------------------------------------------------------------------
# Numerical extraction
# ---------------------------------------------------------------------------

def numerical_bogoliubov(
    solution: ModeSolution,
    eta_out: float,
    k: float | None = None,
    eps_pot: float = DEFAULT_EPS_POT,
) -> BogoliubovPair:
    """Extract (alpha_k, beta_k) by projecting onto the plane-wave out-basis.

    Writing chi = alpha f + beta f* with f = exp(-i k eta)/sqrt(2k), the
    coefficients follow from chi and dchi at eta_out:

        alpha = (i k chi - dchi) / (2 i k f),
        beta  = (i k chi + dchi) / (2 i k f*).

    Requires the out-region to be locally flat, |a''/a|/k^2 <= eps_pot,
    and a well-conditioned input (Wronskian drift below 1e-6).
    """
    if k is None:
        if solution.spec is None:
            raise ValueError("k not given and the solution does not carry a mode spec")
        k = solution.spec.k
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if solution.wronskian_drift > INPUT_DRIFT_TOL:
        raise ValueError(
            f"input Wronskian drift {solution.wronskian_drift:.3e} exceeds "
            f"{INPUT_DRIFT_TOL:.1e}; projection would be ill-conditioned"
        )
    if solution.potential is not None:
        ratio = abs(solution.potential(eta_out)) / k**2
        if ratio > eps_pot:
            raise NotAsymptoticallyFlatError(ratio, eta_out, eps_pot)

    chi, dchi = solution.at(eta_out)
    f, _ = plane_wave_mode(k, eta_out)
    ik = 1j * k
    alpha = (ik * chi - dchi) / (2.0 * ik * f)
    beta = (ik * chi + dchi) / (2.0 * ik * f.conjugate())
    return BogoliubovPair(alpha=alpha, beta=beta, k=k)


# ---------------------------------------------------------------------------
# Particle spectra over k grids
# ---------------------------------------------------------------------------

class SpectrumSource(Enum):
    ANALYTIC = "analytic"
    NUMERICAL = "numerical"


@dataclass(frozen=True)
class ParticleSpectrum:
    """Per-mode particle content (k, |beta_k|^2, z) for one era."""

    k: np.ndarray
    beta_sq: np.ndarray
    z: np.ndarray
    era: ModelKind
    source: SpectrumSource

    def __post_init__(self):
        if np.any(self.beta_sq < 0):
            raise ValueError("beta_sq entries must be nonnegative")
        if np.any((self.z < 0) | (self.z >= 1)):
            raise ValueError("z entries must lie in [0, 1)")


def analytic_spectrum(model: BackgroundModel, k_grid: Sequence[float]) -> ParticleSpectrum:
    """Closed-form spectrum of a background over an ascending k grid."""
    k = np.asarray(sorted(k_grid), dtype=float)
    beta_sq = np.array([analytic_beta_sq(model, kk) for kk in k])
    z = beta_sq / (1.0 + beta_sq)
    return ParticleSpectrum(k=k, beta_sq=beta_sq, z=z, era=model.kind,
                            source=SpectrumSource.ANALYTIC)


def spectrum_from_pairs(pairs: Sequence[BogoliubovPair], era: ModelKind) -> ParticleSpectrum:
    """Spectrum assembled from numerically extracted pairs, sorted by k."""
    ordered = sorted(pairs, key=lambda p: p.k)
    k = np.array([p.k for p in ordered])
    beta_sq = np.array([p.beta_sq for p in ordered])
    z = np.array([z_ratio(p) for p in ordered])
    return ParticleSpectrum(k=k, beta_sq=beta_sq, z=z, era=era,
                            source=SpectrumSource.NUMERICAL)


SPECTRUM_CSV_HEADER = ("k", "beta_sq", "z", "source", "era")


def spectrum_rows(spectrum: ParticleSpectrum):
    """Rows matching SPECTRUM_CSV_HEADER, ordered by ascending k."""
    for k, b, z in zip(spectrum.k, spectrum.beta_sq, spectrum.z):
        yield (float(k), float(b), float(z), spectrum.source.value, spectrum.era.value)
