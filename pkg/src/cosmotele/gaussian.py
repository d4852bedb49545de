"""Covariance-matrix description of single- and two-mode Gaussian states.

Phase-space variables for a field mode are q = u_k and p = a^2 u_k', so a
mode's second moments are

    qq = |u_k|^2,   pp = |a^2 u_k'|^2,   qp = Re[u_k a^2 u_k'*],

with vacuum variance 1/2 per quadrature.  Any Wronskian-normalized mode
gives a pure block: qq*pp - qp^2 = 1/4 identically, at every conformal
time and for any scale factor.

Two inequivalent teleportation-fidelity functionals are provided verbatim
and never composed:

    fidelity_two_mode(sigma) = 2 / sqrt(det(2 sigma + I))    (4x4 sigma)
    fidelity_symmetric(A)    = det(A + I/2)^(-1/2)           (2x2 block)

Their normalizations disagree on the vacuum (1/2 vs 1); the block form
presumes a symmetric two-mode state with a vacuum-class input and is the
one consistent with the thermal-channel law 1/(1 + nbar).  Neither is
"corrected" here.

The horizon regimes are split at k|eta| = 10 (subhorizon) and 0.1
(superhorizon); the thresholds are sharp by construction, standing in for
the asymptotic limits.  The subhorizon block fixes its pp entry by purity
(the oscillatory average determines only qq and qp), and the superhorizon
scalings return the asserted power laws |k eta|^(-2 nu) and
|k eta|^(-2 nu + 2) with a common prefactor read off the leading
small-argument mode amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .background import BackgroundModel, scale_factor
from .fidelity import fidelity_thermal
from .modes import FieldMode, ModeSolution

SUBHORIZON_THRESHOLD = 10.0
SUPERHORIZON_THRESHOLD = 0.1
UNCERTAINTY_SLACK = 1e-10
NBAR_TOL = 1e-10


class NonPhysicalCovarianceError(ValueError):
    """Second moments violate the uncertainty bound."""


class RegimeError(ValueError):
    """k|eta| lies outside the regime an asymptotic operator covers."""


class Regime(Enum):
    SUBHORIZON = "subhorizon"
    INTERMEDIATE = "intermediate"
    SUPERHORIZON = "superhorizon"


def classify_regime(k: float, eta: float) -> Regime:
    """Horizon regime of a mode: subhorizon iff k|eta| >= 10, superhorizon
    iff k|eta| <= 0.1, intermediate between."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    x = k * abs(eta)
    if x >= SUBHORIZON_THRESHOLD:
        return Regime.SUBHORIZON
    if x <= SUPERHORIZON_THRESHOLD:
        return Regime.SUPERHORIZON
    return Regime.INTERMEDIATE


# ---------------------------------------------------------------------------
# Covariance containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CovarianceBlock:
    """Second moments (qq, pp, qp) of one Gaussian mode; vacuum is (1/2, 1/2, 0)."""

    qq: float
    pp: float
    qp: float = 0.0

    def __post_init__(self):
        if self.qq <= 0 or self.pp <= 0:
            raise NonPhysicalCovarianceError(
                f"diagonal moments must be positive, got qq = {self.qq}, pp = {self.pp}"
            )
        # uncertainty bound with absolute slack plus float headroom for
        # large superhorizon moments
        slack = UNCERTAINTY_SLACK + 1e-12 * (self.qq * self.pp + self.qp**2)
        if self.det < 0.25 - slack:
            raise NonPhysicalCovarianceError(
                f"uncertainty violation: qq*pp - qp^2 = {self.det} < 1/4"
            )

    @property
    def det(self) -> float:
        return self.qq * self.pp - self.qp**2

    def matrix(self) -> np.ndarray:
        return np.array([[self.qq, self.qp], [self.qp, self.pp]])


def vacuum_block() -> CovarianceBlock:
    return CovarianceBlock(0.5, 0.5, 0.0)


def thermal_block(nbar: float) -> CovarianceBlock:
    """Isotropic thermal block (nbar + 1/2) I."""
    if nbar < 0:
        raise ValueError(f"nbar must be nonnegative, got {nbar}")
    return CovarianceBlock(nbar + 0.5, nbar + 0.5, 0.0)


def squeezed_block(s: float) -> CovarianceBlock:
    """Pure single-mode squeezed block diag(e^(-2s), e^(2s))/2."""
    return CovarianceBlock(0.5 * math.exp(-2.0 * s), 0.5 * math.exp(2.0 * s), 0.0)


def _symplectic_form() -> np.ndarray:
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.block([[omega, np.zeros((2, 2))], [np.zeros((2, 2)), omega]])


@dataclass(frozen=True)
class TwoModeCovariance:
    """4x4 covariance of a bipartite Gaussian state, (q1, p1, q2, p2) order."""

    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.shape != (4, 4):
            raise NonPhysicalCovarianceError(f"expected a 4x4 matrix, got {sigma.shape}")
        if not np.allclose(sigma, sigma.T, rtol=0, atol=1e-12):
            raise NonPhysicalCovarianceError("covariance matrix must be symmetric")
        # bona fide quantum state: sigma + (i/2) Omega >= 0
        herm = sigma + 0.5j * _symplectic_form()
        eigs = np.linalg.eigvalsh(herm)
        if eigs.min() < -UNCERTAINTY_SLACK:
            raise NonPhysicalCovarianceError(
                f"sigma + (i/2) Omega has negative eigenvalue {eigs.min():.3e}"
            )
        object.__setattr__(self, "sigma", sigma)

    @classmethod
    def from_blocks(cls, A: CovarianceBlock, B: CovarianceBlock,
                    C: np.ndarray) -> "TwoModeCovariance":
        C = np.asarray(C, dtype=float)
        sigma = np.block([[A.matrix(), C], [C.T, B.matrix()]])
        return cls(sigma)


def vacuum_two_mode() -> TwoModeCovariance:
    return TwoModeCovariance(0.5 * np.eye(4))


def thermal_two_mode(nbar: float) -> TwoModeCovariance:
    if nbar < 0:
        raise ValueError(f"nbar must be nonnegative, got {nbar}")
    return TwoModeCovariance((nbar + 0.5) * np.eye(4))


def tmsv_covariance(r: float) -> TwoModeCovariance:
    """Standard two-mode squeezed vacuum covariance with squeezing r."""
    c, s = 0.5 * math.cosh(2.0 * r), 0.5 * math.sinh(2.0 * r)
    Z = np.diag([1.0, -1.0])
    return TwoModeCovariance.from_blocks(
        CovarianceBlock(c, c, 0.0), CovarianceBlock(c, c, 0.0), s * Z
    )


# ---------------------------------------------------------------------------
# Moments from field modes
# ---------------------------------------------------------------------------

def covariance_from_values(phi: complex, dphi: complex, a: float) -> CovarianceBlock:
    """Second moments of a mode from (u_k, u_k') at scale factor a."""
    if a <= 0:
        raise ValueError(f"scale factor must be positive, got {a}")
    p = a * a * dphi
    return CovarianceBlock(
        qq=abs(phi) ** 2,
        pp=abs(p) ** 2,
        qp=(phi * p.conjugate()).real,
    )


def covariance_from_mode(mode: FieldMode, a: float, eta: float) -> CovarianceBlock:
    """Second moments of a FieldMode at the grid point eta."""
    phi, dphi = mode.at(eta)
    return covariance_from_values(phi, dphi, a)


def noise_number_from_block(A: CovarianceBlock) -> float:
    """Noise number nbar = sqrt(qq*pp - qp^2) - 1/2, the symplectic
    eigenvalue in excess of the vacuum; zero for any pure block."""
    nbar = math.sqrt(A.det) - 0.5
    if nbar < -NBAR_TOL:
        raise NonPhysicalCovarianceError(f"negative noise number {nbar:.3e}")
    return max(nbar, 0.0)


# ---------------------------------------------------------------------------
# Fidelity functionals
# ---------------------------------------------------------------------------

def _det3(m) -> float:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _det4(m) -> float:
    # cofactor expansion; exact (no LU rounding) on the diagonal benchmarks
    total = 0.0
    for j in range(4):
        minor = [[m[r][c] for c in range(4) if c != j] for r in range(1, 4)]
        total += (-1.0) ** j * m[0][j] * _det3(minor)
    return total


def fidelity_two_mode(sigma: TwoModeCovariance) -> float:
    """Determinant fidelity 2/sqrt(det(2 sigma + I)) of a two-mode state.

    Evaluated verbatim; the two-mode vacuum gives exactly 1/2.  Fed the
    standard two-mode squeezed covariance it yields 1/(1 + cosh 2r),
    decreasing in r: with this normalization the formula responds to the
    total second-moment content of the resource state, not to its EPR
    correlations, so it must not be read as the squeezed-channel
    teleportation curve.
    """
    det = _det4((2.0 * sigma.sigma + np.eye(4)).tolist())
    if det <= 0:
        raise NonPhysicalCovarianceError(f"det(2 sigma + I) = {det} must be positive")
    return 2.0 / math.sqrt(det)


def fidelity_symmetric(A: CovarianceBlock) -> float:
    """Block fidelity det(A + I/2)^(-1/2) of a symmetric two-mode state.

    The vacuum block gives exactly 1, and an isotropic thermal block
    (nbar + 1/2) I reproduces the thermal-channel law 1/(1 + nbar).
    """
    det = (A.qq + 0.5) * (A.pp + 0.5) - A.qp**2
    return 1.0 / math.sqrt(det)


# ---------------------------------------------------------------------------
# Horizon asymptotics
# ---------------------------------------------------------------------------

def subhorizon_covariance(k: float, eta: float, a: float) -> CovarianceBlock:
    """Oscillation-averaged covariance of a deep subhorizon Hankel mode.

    qq = 2/(pi k a^2) and qp = 0 follow from the large-argument mode
    amplitude; pp = pi k a^2 / 8 is fixed by purity (qq*pp = 1/4), the
    remaining constant the averaging argument leaves open.  Valid for
    k|eta| >= 10 and matches the exact mode moments to a few percent at
    the threshold, improving as k|eta| grows.
    """
    if a <= 0:
        raise ValueError(f"scale factor must be positive, got {a}")
    x = k * abs(eta)
    if x < SUBHORIZON_THRESHOLD:
        raise RegimeError(f"subhorizon form requires k|eta| >= {SUBHORIZON_THRESHOLD}, got {x}")
    qq = 2.0 / (math.pi * k * a * a)
    return CovarianceBlock(qq=qq, pp=0.25 / qq, qp=0.0)


@dataclass(frozen=True)
class PowerLawScale:
    """A one-term power law prefactor * x^exponent in x = k|eta|."""

    prefactor: float
    exponent: float

    def __call__(self, x: float) -> float:
        return self.prefactor * x**self.exponent


def superhorizon_scaling(k: float, eta: float, nu: float) -> tuple[PowerLawScale, PowerLawScale]:
    """Leading superhorizon power laws of the mode's second moments.

    Returns (qq_scale, pp_scale) with exponents -2 nu and -2 nu + 2 in
    x = k|eta|.  The shared prefactor (Gamma(nu)/pi)^2 4^nu is the squared
    amplitude of the small-argument mode; the pp exponent sits two powers
    above qq per the momentum's extra factors, and the growth of both
    moments is what shuts the channel down outside the horizon.  Valid for
    k|eta| <= 0.1 and nu > 0.
    """
    if nu <= 0:
        raise ValueError(f"nu must be positive, got {nu}")
    x = k * abs(eta)
    if not 0 < x <= SUPERHORIZON_THRESHOLD:
        raise RegimeError(
            f"superhorizon form requires 0 < k|eta| <= {SUPERHORIZON_THRESHOLD}, got {x}"
        )
    prefactor = (math.gamma(nu) / math.pi) ** 2 * 4.0**nu
    return (
        PowerLawScale(prefactor, -2.0 * nu),
        PowerLawScale(prefactor, -2.0 * nu + 2.0),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

COVARIANCE_CSV_HEADER = (
    "k", "eta", "regime", "qq", "pp", "qp", "nbar", "fidelity_block", "fidelity_noise",
)


def covariance_rows(solution: ModeSolution, model: BackgroundModel, k: float):
    """Rows matching COVARIANCE_CSV_HEADER along a mode solution's grid."""
    mode = FieldMode.from_solution(solution, model)
    for i, eta in enumerate(solution.eta_grid):
        a = scale_factor(model, float(eta))
        block = covariance_from_values(complex(mode.phi[i]), complex(mode.dphi[i]), a)
        nbar = noise_number_from_block(block)
        yield (
            k, float(eta), classify_regime(k, float(eta)).value,
            block.qq, block.pp, block.qp, nbar,
            fidelity_symmetric(block), fidelity_thermal(nbar),
        )
