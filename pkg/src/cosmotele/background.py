"""FRW background models: scale factors, conformal-time kinematics and the
effective potential a''/a that drives the rescaled mode equation.

Supported expansion histories and their conformal-time domains:

    Minkowski             a = a_ref                        eta in R
    PowerLaw(alpha)       a = a_ref |eta|^(alpha/(1-alpha))  eta < 0
    RadiationDominated    a = a_ref eta                    eta > 0
    MatterDominated(H0)   a = a_ref H0^2 eta^2 / 4         eta > 0
    DeSitter(H)           a = -1/(H eta)                   eta < 0

Accelerating histories (de Sitter, power-law exponents) use eta < 0
increasing toward 0-, decelerating ones eta > 0.  Natural units
throughout: wavenumbers k and Hubble rates H, H0 carry inverse
conformal-time units, so combinations like 2*pi*k/H are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class ModelKind(Enum):
    """Scale-factor law selector."""

    MINKOWSKI = "minkowski"
    POWER_LAW = "power_law"
    RADIATION_DOMINATED = "radiation"
    MATTER_DOMINATED = "matter"
    DE_SITTER = "de_sitter"


@dataclass(frozen=True)
class BackgroundModel:
    """A scale-factor law with its era parameters.

    Parameters
    ----------
    kind : ModelKind
        Which expansion history this model follows.
    alpha : float, optional
        Cosmic-time power-law exponent (PowerLaw only, alpha > 0 and
        alpha != 1; the conformal exponent alpha/(1-alpha) is singular
        at alpha = 1, use DeSitter for exponential expansion).
    H : float, optional
        Hubble rate (DeSitter only, H > 0).
    H0 : float, optional
        Effective late-time Hubble rate (MatterDominated only, H0 > 0).
    a_ref : float
        Dimensionless normalization of the scale factor, default 1.
        Ignored by DeSitter, whose normalization is fixed by H.
    """

    kind: ModelKind
    alpha: float | None = None
    H: float | None = None
    H0: float | None = None
    a_ref: float = 1.0

    def __post_init__(self):
        if self.a_ref <= 0:
            raise ValueError(f"a_ref must be positive, got {self.a_ref}")
        if self.kind is ModelKind.POWER_LAW:
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("PowerLaw requires alpha > 0")
            if self.alpha == 1:
                raise ValueError(
                    "alpha = 1 is excluded (conformal exponent singular); "
                    "use the DeSitter model for exponential expansion"
                )
        elif self.alpha is not None:
            raise ValueError(f"alpha is only meaningful for PowerLaw, not {self.kind}")
        if self.kind is ModelKind.DE_SITTER:
            if self.H is None or self.H <= 0:
                raise ValueError("DeSitter requires H > 0")
        elif self.H is not None:
            raise ValueError(f"H is only meaningful for DeSitter, not {self.kind}")
        if self.kind is ModelKind.MATTER_DOMINATED:
            if self.H0 is None or self.H0 <= 0:
                raise ValueError("MatterDominated requires H0 > 0")
        elif self.H0 is not None:
            raise ValueError(f"H0 is only meaningful for MatterDominated, not {self.kind}")

    # ---- constructors -------------------------------------------------

    @classmethod
    def minkowski(cls, a_ref: float = 1.0) -> "BackgroundModel":
        return cls(ModelKind.MINKOWSKI, a_ref=a_ref)

    @classmethod
    def power_law(cls, alpha: float, a_ref: float = 1.0) -> "BackgroundModel":
        return cls(ModelKind.POWER_LAW, alpha=alpha, a_ref=a_ref)

    @classmethod
    def radiation(cls, a_ref: float = 1.0) -> "BackgroundModel":
        return cls(ModelKind.RADIATION_DOMINATED, a_ref=a_ref)

    @classmethod
    def matter(cls, H0: float, a_ref: float = 1.0) -> "BackgroundModel":
        return cls(ModelKind.MATTER_DOMINATED, H0=H0, a_ref=a_ref)

    @classmethod
    def de_sitter(cls, H: float) -> "BackgroundModel":
        return cls(ModelKind.DE_SITTER, H=H)

    # ---- conformal-time domain ----------------------------------------

    def admits(self, eta: float) -> bool:
        """True if eta lies in this model's admissible conformal domain."""
        if self.kind is ModelKind.MINKOWSKI:
            return math.isfinite(eta)
        if self.kind in (ModelKind.POWER_LAW, ModelKind.DE_SITTER):
            return eta < 0
        return eta > 0  # radiation, matter

    def require_admissible(self, eta: float) -> None:
        if not self.admits(eta):
            raise ValueError(
                f"eta = {eta} outside the admissible domain of {self.kind.value} "
                f"({'eta < 0' if self.kind in (ModelKind.POWER_LAW, ModelKind.DE_SITTER) else 'eta > 0'})"
            )


@dataclass(frozen=True)
class ConformalDomain:
    """An oriented conformal-time interval [eta_min, eta_max].

    orientation = +1 means integration runs from past (eta_min) toward the
    future (eta_max); this is the only supported direction.
    """

    eta_min: float
    eta_max: float
    orientation: int = +1

    def __post_init__(self):
        if not self.eta_min < self.eta_max:
            raise ValueError(f"require eta_min < eta_max, got [{self.eta_min}, {self.eta_max}]")
        if self.orientation != +1:
            raise ValueError("only past-to-future orientation (+1) is supported")

    def validate_for(self, model: BackgroundModel) -> None:
        model.require_admissible(self.eta_min)
        model.require_admissible(self.eta_max)


# ---------------------------------------------------------------------------
# Kinematic functions
# ---------------------------------------------------------------------------

def nu_index(alpha: float) -> float:
    """Bessel order of the power-law mode equation.

    nu = |(1 - 3*alpha) / (2*(1 - alpha))| for cosmic-time exponent alpha.
    Radiation-like alpha = 1/3 gives nu = 0, matter-like alpha = 2/3 gives
    nu = 3/2, and alpha -> 0 recovers the flat-space value 1/2.
    """
    if alpha == 1:
        raise ValueError("nu_index is singular at alpha = 1")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return abs((1.0 - 3.0 * alpha) / (2.0 * (1.0 - alpha)))


def model_nu(model: BackgroundModel) -> float:
    """Bessel order associated with a background's mode equation.

    Minkowski and radiation have a''/a = 0, i.e. nu = 1/2 (plane waves);
    de Sitter and matter have a''/a = 2/eta^2, i.e. nu = 3/2.
    """
    if model.kind in (ModelKind.MINKOWSKI, ModelKind.RADIATION_DOMINATED):
        return 0.5
    if model.kind in (ModelKind.DE_SITTER, ModelKind.MATTER_DOMINATED):
        return 1.5
    return nu_index(model.alpha)


def scale_factor(model: BackgroundModel, eta: float) -> float:
    """Scale factor a(eta) > 0 at conformal time eta."""
    model.require_admissible(eta)
    kind = model.kind
    if kind is ModelKind.MINKOWSKI:
        return model.a_ref
    if kind is ModelKind.POWER_LAW:
        return model.a_ref * abs(eta) ** (model.alpha / (1.0 - model.alpha))
    if kind is ModelKind.RADIATION_DOMINATED:
        return model.a_ref * eta
    if kind is ModelKind.MATTER_DOMINATED:
        return 0.25 * model.H0**2 * eta**2 * model.a_ref
    # de Sitter
    return -1.0 / (model.H * eta)


def scale_factor_derivative(model: BackgroundModel, eta: float) -> float:
    """Conformal-time derivative a'(eta)."""
    model.require_admissible(eta)
    kind = model.kind
    if kind is ModelKind.MINKOWSKI:
        return 0.0
    if kind is ModelKind.RADIATION_DOMINATED:
        return model.a_ref
    if kind is ModelKind.MATTER_DOMINATED:
        return 0.5 * model.H0**2 * eta * model.a_ref
    if kind is ModelKind.DE_SITTER:
        return 1.0 / (model.H * eta**2)
    # power law: a ~ |eta|^q with q = alpha/(1-alpha), so a' = q a / eta
    q = model.alpha / (1.0 - model.alpha)
    return q * scale_factor(model, eta) / eta


def effective_potential(model: BackgroundModel, eta: float) -> float:
    """Effective potential a''(eta)/a(eta) of the rescaled mode equation.

    Exactly zero for Minkowski and radiation; 2/eta^2 for de Sitter and
    matter; (nu^2 - 1/4)/eta^2 for a general power law.
    """
    model.require_admissible(eta)
    kind = model.kind
    if kind in (ModelKind.MINKOWSKI, ModelKind.RADIATION_DOMINATED):
        return 0.0
    if eta == 0.0:
        raise ValueError("effective potential singular at eta = 0")
    if kind in (ModelKind.DE_SITTER, ModelKind.MATTER_DOMINATED):
        return 2.0 / eta**2
    nu = nu_index(model.alpha)
    return (nu**2 - 0.25) / eta**2


# ---------------------------------------------------------------------------
# Cosmic time <-> conformal time
# ---------------------------------------------------------------------------
#
# The maps below integrate d(eta) = dt / a(t) with integration constants
# chosen so that a(eta) reproduces the conformal-time laws above:
#
#   Minkowski:  eta = t / a_ref
#   Radiation:  a(t) = sqrt(2 a_ref t),      eta = sqrt(2 t / a_ref)
#   Matter:     t = a_ref H0^2 eta^3 / 12
#   DeSitter:   eta = -exp(-H t) / H
#   PowerLaw:   a(t) = c t^alpha with c = (alpha-1)^-alpha a_ref^(1-alpha),
#               eta = -t^(1-alpha) / (c (alpha - 1))      (alpha > 1 only)
#
# For decelerating power laws (alpha < 1) the integral of dt/a(t) runs over
# eta > 0, which contradicts the eta < 0 convention adopted for the PowerLaw
# kind; those histories are covered by the RadiationDominated (alpha = 1/2)
# and MatterDominated (alpha = 2/3) kinds instead, and the map refuses them.

def _power_law_c(model: BackgroundModel) -> float:
    alpha = model.alpha
    return (alpha - 1.0) ** (-alpha) * model.a_ref ** (1.0 - alpha)


def cosmic_to_conformal(model: BackgroundModel, t: float) -> float:
    """Map cosmic time t to conformal time eta for the given model."""
    kind = model.kind
    if kind is ModelKind.MINKOWSKI:
        return t / model.a_ref
    if kind is ModelKind.DE_SITTER:
        return -math.exp(-model.H * t) / model.H
    if t <= 0:
        raise ValueError(f"cosmic time must be positive for {kind.value}, got {t}")
    if kind is ModelKind.RADIATION_DOMINATED:
        return math.sqrt(2.0 * t / model.a_ref)
    if kind is ModelKind.MATTER_DOMINATED:
        return (12.0 * t / (model.a_ref * model.H0**2)) ** (1.0 / 3.0)
    # power law
    if model.alpha < 1:
        raise ValueError(
            "cosmic-time map for PowerLaw is only defined for alpha > 1 "
            "(eta < 0 branch); decelerating exponents are covered by the "
            "radiation (alpha = 1/2) and matter (alpha = 2/3) models"
        )
    c = _power_law_c(model)
    return -(t ** (1.0 - model.alpha)) / (c * (model.alpha - 1.0))


def conformal_to_cosmic(model: BackgroundModel, eta: float) -> float:
    """Inverse of :func:`cosmic_to_conformal`."""
    model.require_admissible(eta)
    kind = model.kind
    if kind is ModelKind.MINKOWSKI:
        return eta * model.a_ref
    if kind is ModelKind.DE_SITTER:
        return -math.log(-model.H * eta) / model.H
    if kind is ModelKind.RADIATION_DOMINATED:
        return 0.5 * model.a_ref * eta**2
    if kind is ModelKind.MATTER_DOMINATED:
        return model.a_ref * model.H0**2 * eta**3 / 12.0
    if model.alpha < 1:
        raise ValueError(
            "cosmic-time map for PowerLaw is only defined for alpha > 1; "
            "see cosmic_to_conformal"
        )
    c = _power_law_c(model)
    return (c * (model.alpha - 1.0) * (-eta)) ** (1.0 / (1.0 - model.alpha))
