"""Mode functions of a massless scalar field on FRW backgrounds.

The rescaled amplitude chi_k = a u_k obeys

    chi'' + (k^2 - a''/a) chi = 0,

a harmonic oscillator with the time-dependent potential a''/a supplied by
the background model.  All analytic modes here are normalized to the
Wronskian convention

    W[chi] = chi d(chi*)/d(eta) - chi* d(chi)/d(eta) = i,

which fixes the plane-wave prefactor to 1/sqrt(2k) and pins every other
normalization constant.

Vacuum branches
---------------
With the positive-frequency convention chi ~ exp(-i k eta)/sqrt(2k) toward
the flat region, the Wronskian-normalized Hankel vacuum is

    chi = sqrt(pi/4) exp(-i s pi (2 nu + 1)/4) sqrt(|eta|) H_nu^(b)(k |eta|)

with s = sign(eta), using the first-kind branch b = 1 on eta < 0 and the
second-kind branch b = 2 on eta > 0.  (Only the first-kind branch carries
W = +i on eta < 0; the second-kind one carries W = -i there, and the two
conventions differ by complex conjugation, which no squared moment ever
sees.)  The phase factor makes the mode reduce exactly to the plane wave
at nu = 1/2 and to the Bunch-Davies closed form at nu = 3/2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .background import (
    BackgroundModel,
    ConformalDomain,
    ModelKind,
    effective_potential,
    model_nu,
    scale_factor,
    scale_factor_derivative,
)
from .specfun import HankelKind, hankel, hankel_derivative

DEFAULT_TOL = 1e-10
TOL_RANGE = (1e-13, 1e-6)
WRONSKIAN_TOL = 1e-8
LATE_TIME_KETA_CUTOFF = 1e-3


class Vacuum(Enum):
    """Initial-data choice for mode evolution."""

    PLANE_WAVE_IN = "plane_wave"
    BUNCH_DAVIES = "bunch_davies"
    HANKEL = "hankel"


class IntegrationError(RuntimeError):
    """Adaptive integration failed; carries the conformal time of failure."""

    def __init__(self, message: str, eta: float):
        super().__init__(message)
        self.eta = eta


def wronskian(chi, dchi):
    """W[chi] = chi conj(dchi) - conj(chi) dchi; equals i for vacuum modes."""
    return chi * np.conj(dchi) - np.conj(chi) * dchi


# ---------------------------------------------------------------------------
# Analytic modes
# ---------------------------------------------------------------------------

def plane_wave_mode(k: float, eta: float) -> tuple[complex, complex]:
    """Flat-space positive-frequency mode exp(-i k eta)/sqrt(2k)."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    chi = cmath.exp(-1j * k * eta) / math.sqrt(2.0 * k)
    return chi, -1j * k * chi


def bunch_davies_mode(k: float, eta: float) -> tuple[complex, complex]:
    """Bunch-Davies mode (1 - i/(k eta)) exp(-i k eta) / sqrt(2k).

    On eta < 0 this is the de Sitter vacuum, positive-frequency in the
    asymptotic past.  The same closed form solves the nu = 3/2 equation on
    eta > 0, where it is the matter-era mode that is positive-frequency in
    the asymptotic future; both branches carry W = i exactly.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if eta == 0:
        raise ValueError("Bunch-Davies mode singular at eta = 0")
    phase = cmath.exp(-1j * k * eta)
    norm = 1.0 / math.sqrt(2.0 * k)
    chi = norm * (1.0 - 1j / (k * eta)) * phase
    dchi = norm * phase * (1j / (k * eta**2) - 1j * k - 1.0 / eta)
    return chi, dchi


def hankel_mode(k: float, eta: float, nu: float) -> tuple[complex, complex]:
    """Wronskian-normalized Hankel vacuum of order nu (see module docstring).

    Reduces exactly to plane_wave_mode at nu = 1/2 and to
    bunch_davies_mode at nu = 3/2.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if eta == 0:
        raise ValueError("Hankel mode singular at eta = 0")
    x = k * abs(eta)
    s = 1.0 if eta > 0 else -1.0
    kind = HankelKind.SECOND if eta > 0 else HankelKind.FIRST
    prefactor = math.sqrt(0.25 * math.pi) * cmath.exp(-1j * s * math.pi * (2.0 * nu + 1.0) / 4.0)
    h = hankel(nu, x, kind)
    dh = hankel_derivative(nu, x, kind)
    root = math.sqrt(abs(eta))
    chi = prefactor * root * h
    dchi = s * prefactor * (h / (2.0 * root) + k * root * dh)
    return chi, dchi


# ---------------------------------------------------------------------------
# Mode specification and solutions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModeSpec:
    """A single comoving mode k on a background, with its vacuum choice."""

    k: float
    model: BackgroundModel
    vacuum: Vacuum

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.vacuum is Vacuum.BUNCH_DAVIES and abs(model_nu(self.model) - 1.5) > 1e-12:
            raise ValueError(
                "Bunch-Davies initial data requires a nu = 3/2 background "
                "(de Sitter, matter, or power law with nu = 3/2); "
                f"got nu = {model_nu(self.model)}"
            )

    def initial_data(self, eta: float) -> tuple[complex, complex]:
        if self.vacuum is Vacuum.PLANE_WAVE_IN:
            ratio = abs(effective_potential(self.model, eta)) / self.k**2
            if ratio > 1e-6:
                raise ValueError(
                    "plane-wave initial data needs a locally flat start: "
                    f"|a''/a|/k^2 = {ratio:.3e} at eta = {eta}"
                )
            return plane_wave_mode(self.k, eta)
        if self.vacuum is Vacuum.BUNCH_DAVIES:
            return bunch_davies_mode(self.k, eta)
        return hankel_mode(self.k, eta, model_nu(self.model))


@dataclass(frozen=True)
class ModeSolution:
    """chi_k and its eta-derivative on a grid, with Wronskian bookkeeping."""

    eta_grid: np.ndarray
    chi: np.ndarray
    dchi: np.ndarray
    wronskian_drift: float
    spec: ModeSpec | None = None
    potential: Callable[[float], float] | None = field(default=None, repr=False)

    def wronskian_errors(self) -> np.ndarray:
        """Pointwise |W[chi] - i| over the grid."""
        return np.abs(wronskian(self.chi, self.dchi) - 1j)

    def at(self, eta: float) -> tuple[complex, complex]:
        """Values at a grid point (eta must lie on the stored grid)."""
        idx = _grid_index(self.eta_grid, eta)
        return complex(self.chi[idx]), complex(self.dchi[idx])


def _grid_index(grid: np.ndarray, eta: float) -> int:
    idx = int(np.argmin(np.abs(grid - eta)))
    scale = max(abs(eta), abs(grid[idx]), 1e-300)
    if abs(grid[idx] - eta) > 1e-9 * scale:
        raise ValueError(f"eta = {eta} is not a grid point of this solution")
    return idx


def integrate_mode_equation(
    k: float,
    potential: Callable[[float], float],
    eta_grid: np.ndarray,
    chi0: complex,
    dchi0: complex,
    tol: float = DEFAULT_TOL,
) -> ModeSolution:
    """Integrate chi'' = (V(eta) - k^2) chi over an increasing grid.

    Uses an adaptive 8th-order embedded Runge-Kutta pair with dense output
    at the grid points; the reported wronskian_drift is max |W - i|.
    """
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise ValueError(f"tol must lie in [{TOL_RANGE[0]}, {TOL_RANGE[1]}], got {tol}")
    eta_grid = np.asarray(eta_grid, dtype=float)
    if eta_grid.ndim != 1 or len(eta_grid) < 2 or not np.all(np.diff(eta_grid) > 0):
        raise ValueError("eta_grid must be a strictly increasing 1-d array")

    def rhs(eta, y):
        return [y[1], (potential(eta) - k * k) * y[0]]

    result = solve_ivp(
        rhs,
        (eta_grid[0], eta_grid[-1]),
        np.array([chi0, dchi0], dtype=complex),
        method="DOP853",
        rtol=tol,
        atol=1e-300,
        t_eval=eta_grid,
        dense_output=False,
    )
    if not result.success:
        eta_fail = float(result.t[-1]) if len(result.t) else float(eta_grid[0])
        raise IntegrationError(
            f"mode integration failed near eta = {eta_fail}: {result.message}", eta_fail
        )
    chi = result.y[0]
    dchi = result.y[1]
    drift = float(np.max(np.abs(wronskian(chi, dchi) - 1j)))
    return ModeSolution(eta_grid=eta_grid, chi=chi, dchi=dchi, wronskian_drift=drift,
                        potential=potential)


def evolve_mode(
    spec: ModeSpec,
    domain: ConformalDomain,
    tol: float = DEFAULT_TOL,
    n_points: int = 200,
    eta_grid: np.ndarray | None = None,
    keta_cutoff: float = LATE_TIME_KETA_CUTOFF,
) -> ModeSolution:
    """Evolve a mode from vacuum initial data at domain.eta_min.

    The grid defaults to n_points uniformly spaced conformal times; pass
    eta_grid to choose your own (it must stay inside the domain).  For
    backgrounds with a 1/eta^2 potential the integration refuses to
    approach eta = 0 closer than k|eta| = keta_cutoff, where superhorizon
    growth exhausts double precision.
    """
    domain.validate_for(spec.model)
    if eta_grid is None:
        eta_grid = np.linspace(domain.eta_min, domain.eta_max, n_points)
    else:
        # initial data is defined at domain.eta_min, so a custom grid must
        # span the domain exactly
        eta_grid = np.asarray(eta_grid, dtype=float)
        span_tol = 1e-12 * max(abs(domain.eta_min), abs(domain.eta_max))
        if (abs(eta_grid[0] - domain.eta_min) > span_tol
                or abs(eta_grid[-1] - domain.eta_max) > span_tol):
            raise ValueError("eta_grid must start at eta_min and end at eta_max")

    singular = spec.model.kind in (
        ModelKind.POWER_LAW, ModelKind.MATTER_DOMINATED, ModelKind.DE_SITTER,
    )
    if singular:
        closest = min(abs(domain.eta_min), abs(domain.eta_max))
        if spec.k * closest < keta_cutoff:
            raise ValueError(
                f"domain approaches the eta = 0 singularity beyond k|eta| = {keta_cutoff}; "
                f"got k|eta| = {spec.k * closest:.3e}"
            )

    chi0, dchi0 = spec.initial_data(float(eta_grid[0]))
    potential = lambda eta: effective_potential(spec.model, eta)  # noqa: E731
    solution = integrate_mode_equation(spec.k, potential, eta_grid, chi0, dchi0, tol=tol)
    return ModeSolution(
        eta_grid=solution.eta_grid,
        chi=solution.chi,
        dchi=solution.dchi,
        wronskian_drift=solution.wronskian_drift,
        spec=spec,
        potential=potential,
    )


# ---------------------------------------------------------------------------
# Field modes u_k = chi_k / a
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldMode:
    """The original field amplitude u_k = chi_k/a and its eta-derivative."""

    eta_grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray

    @classmethod
    def from_solution(cls, solution: ModeSolution, model: BackgroundModel) -> "FieldMode":
        a = np.array([scale_factor(model, e) for e in solution.eta_grid])
        da = np.array([scale_factor_derivative(model, e) for e in solution.eta_grid])
        phi = solution.chi / a
        dphi = solution.dchi / a - (da / a**2) * solution.chi
        return cls(eta_grid=solution.eta_grid, phi=phi, dphi=dphi)

    @classmethod
    def from_values(cls, eta: float, chi: complex, dchi: complex,
                    model: BackgroundModel) -> "FieldMode":
        a = scale_factor(model, eta)
        da = scale_factor_derivative(model, eta)
        phi = chi / a
        dphi = dchi / a - (da / a**2) * chi
        return cls(eta_grid=np.array([eta]), phi=np.array([phi]), dphi=np.array([dphi]))

    def at(self, eta: float) -> tuple[complex, complex]:
        idx = _grid_index(self.eta_grid, eta)
        return complex(self.phi[idx]), complex(self.dphi[idx])


# ---------------------------------------------------------------------------
# Serialization (CSV schema of the `modes` subcommand)
# ---------------------------------------------------------------------------

SOLUTION_CSV_HEADER = ("eta", "chi_re", "chi_im", "dchi_re", "dchi_im", "wronskian_abs_err")


def solution_rows(solution: ModeSolution):
    """Rows matching SOLUTION_CSV_HEADER, one per grid point."""
    errs = solution.wronskian_errors()
    for eta, chi, dchi, err in zip(solution.eta_grid, solution.chi, solution.dchi, errs):
        yield (float(eta), float(chi.real), float(chi.imag),
               float(dchi.real), float(dchi.imag), float(err))
