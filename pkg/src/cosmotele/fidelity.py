"""Teleportation-fidelity models for two-mode squeezed resources on
expanding backgrounds.

Every model is an explicit, separately selectable formula; inequivalent
routes from the same era are deliberately kept distinct rather than
silently merged:

    tmsv(r)                      1 / (1 + e^(-2r))          flat baseline
    effective(r, b, gamma)       1 / (1 + e^(-2(r - gamma b)))
    power_law(r, k, alpha)       effective with the power-law |beta_k|^2
    de_sitter_squeezed(r, k, H)  effective with the thermal |beta_k|^2
    de_sitter_ratio(k, H)        (1 + e^(-pi k/H)) / 2
    matter(k, H0)                1 - e^(-2 pi k/H0)  ==  1/(1 + n_k)
    thermal(n)                   1 / (1 + n)
    concurrence(C)               (1 + C) / 2

The squeezed-channel family degrades with k (strongest for de Sitter),
while the thermal-channel matter route improves with k; both behaviors
are faithful to their respective formulas.  The degradation weight gamma
defaults to 1 (a constant prefactor can be absorbed into r) but stays
exposed as a tunable knob.

All logistic expressions are evaluated in log space (scipy expit), so
extreme arguments saturate smoothly instead of overflowing.  An effective
squeezing r - gamma |beta_k|^2 may turn negative when degradation exceeds
the available squeezing; the formulas are still evaluated as written
(fidelity dips below the classical 1/2 benchmark) and the regime is
surfaced through the SUB_CLASSICAL flag, marking where the linearized
degradation model has left its small-|beta_k|^2 validity window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from scipy.special import expit

from .bogoliubov import beta_sq_de_sitter, beta_sq_matter, beta_sq_power_law

FLAG_SUB_CLASSICAL = "sub_classical"


def _logistic_fidelity(two_r_eff: float) -> float:
    # 1/(1 + e^(-x)) via expit; overflow-safe at any argument
    return float(expit(two_r_eff))


def fidelity_tmsv(r: float) -> float:
    """Optimal fidelity of an ideal two-mode squeezed channel.

    Strictly increasing in r, from the classical benchmark 1/2 at r = 0
    toward 1 as r -> infinity.
    """
    if r < 0:
        raise ValueError(f"squeezing must be nonnegative, got r = {r}")
    return _logistic_fidelity(2.0 * r)


def effective_squeezing(r: float, beta_sq: float, gamma: float = 1.0) -> float:
    """Linearly degraded squeezing r - gamma |beta_k|^2 (may be negative)."""
    if r < 0:
        raise ValueError(f"squeezing must be nonnegative, got r = {r}")
    if beta_sq < 0:
        raise ValueError(f"|beta|^2 must be nonnegative, got {beta_sq}")
    if gamma < 0:
        raise ValueError(f"gamma must be nonnegative, got {gamma}")
    return r - gamma * beta_sq


def sub_classical(r_eff: float) -> bool:
    """True when the effective squeezing has been driven negative."""
    return r_eff < 0


def fidelity_effective(r: float, beta_sq: float, gamma: float = 1.0) -> float:
    """Squeezed-channel fidelity with linearly degraded squeezing.

    Reduces to fidelity_tmsv at beta_sq = 0 and decreases monotonically
    in beta_sq; values below 1/2 signal the sub-classical regime.
    """
    return _logistic_fidelity(2.0 * effective_squeezing(r, beta_sq, gamma))


def fidelity_power_law(r: float, k: float, alpha: float, gamma: float = 1.0) -> float:
    """Squeezed-channel fidelity on a power-law background."""
    return fidelity_effective(r, beta_sq_power_law(k, alpha), gamma)


def fidelity_de_sitter_squeezed(r: float, k: float, H: float, gamma: float = 1.0) -> float:
    """Squeezed-channel fidelity against the de Sitter thermal spectrum."""
    return fidelity_effective(r, beta_sq_de_sitter(k, H), gamma)


def fidelity_de_sitter_ratio(k: float, H: float) -> float:
    """de Sitter fidelity from the mixing-ratio squeezing, (1 + e^(-pi k/H))/2.

    Equivalent to fidelity_tmsv(artanh(e^(-pi k/H))): 1 at k = 0, falling
    monotonically to the classical 1/2 as k -> infinity.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if H <= 0:
        raise ValueError(f"H must be positive, got {H}")
    return 0.5 * (1.0 + math.exp(-math.pi * k / H))


def fidelity_matter(k: float, H0: float) -> float:
    """Matter-era thermal-channel fidelity 1 - e^(-2 pi k/H0).

    Algebraically identical to fidelity_thermal(beta_sq_matter(k, H0)):
    zero at k = 0, rising monotonically and saturating at 1.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if H0 <= 0:
        raise ValueError(f"H0 must be positive, got {H0}")
    return -math.expm1(-2.0 * math.pi * k / H0)


def fidelity_thermal(n: float) -> float:
    """Thermal-noise channel fidelity 1/(1 + n) for mean noise number n."""
    if n < 0:
        raise ValueError(f"noise number must be nonnegative, got {n}")
    return 1.0 / (1.0 + n)


def fidelity_concurrence(C: float) -> float:
    """Fidelity (1 + C)/2 of teleportation through a resource of concurrence C."""
    if not 0 <= C <= 1:
        raise ValueError(f"concurrence must lie in [0, 1], got {C}")
    return 0.5 * (1.0 + C)


def squeezing_from_ratio(beta_abs: float, alpha_abs: float) -> float:
    """Squeezing r with tanh r = |beta|/|alpha|, for |beta| < |alpha|.

    Composing with fidelity_tmsv gives (1 + |beta/alpha|)/2 exactly, which
    is how the ratio-based de Sitter curve arises.
    """
    if beta_abs < 0 or alpha_abs <= 0:
        raise ValueError("require 0 <= |beta| and 0 < |alpha|")
    if beta_abs >= alpha_abs:
        raise ValueError(
            f"|beta| = {beta_abs} must be smaller than |alpha| = {alpha_abs}"
        )
    return math.atanh(beta_abs / alpha_abs)


# ---------------------------------------------------------------------------
# Declarative queries (the sweep surface)
# ---------------------------------------------------------------------------

class FidelityModel(Enum):
    """Selectable fidelity formulas."""

    MINKOWSKI = "minkowski"
    EFFECTIVE_SQUEEZING = "effective_squeezing"
    POWER_LAW = "power_law"
    DE_SITTER_SQUEEZED = "de_sitter_squeezed"
    DE_SITTER_RATIO = "de_sitter_ratio"
    MATTER = "matter"
    THERMAL_CHANNEL = "thermal_channel"
    CONCURRENCE = "concurrence"


# per-model required / optional query fields
_REQUIRED = {
    FidelityModel.MINKOWSKI: {"r"},
    FidelityModel.EFFECTIVE_SQUEEZING: {"r", "n"},
    FidelityModel.POWER_LAW: {"r", "k", "alpha"},
    FidelityModel.DE_SITTER_SQUEEZED: {"r", "k", "H"},
    FidelityModel.DE_SITTER_RATIO: {"k", "H"},
    FidelityModel.MATTER: {"k", "H0"},
    FidelityModel.THERMAL_CHANNEL: {"n"},
    FidelityModel.CONCURRENCE: {"C"},
}
_OPTIONAL = {
    FidelityModel.EFFECTIVE_SQUEEZING: {"gamma"},
    FidelityModel.POWER_LAW: {"gamma"},
    FidelityModel.DE_SITTER_SQUEEZED: {"gamma"},
}


@dataclass(frozen=True)
class FidelityQuery:
    """One fidelity evaluation: a model kind plus exactly its parameters.

    gamma defaults to 1 where the model admits it; setting any parameter a
    model does not consume is rejected rather than ignored.
    """

    model: FidelityModel
    r: float | None = None
    gamma: float | None = None
    k: float | None = None
    H: float | None = None
    H0: float | None = None
    alpha: float | None = None
    C: float | None = None
    n: float | None = None

    def __post_init__(self):
        provided = {
            name for name in ("r", "gamma", "k", "H", "H0", "alpha", "C", "n")
            if getattr(self, name) is not None
        }
        required = _REQUIRED[self.model]
        allowed = required | _OPTIONAL.get(self.model, set())
        missing = required - provided
        extra = provided - allowed
        if missing:
            raise ValueError(f"{self.model.value} query missing fields: {sorted(missing)}")
        if extra:
            raise ValueError(f"{self.model.value} query does not accept: {sorted(extra)}")


@dataclass(frozen=True)
class FidelityResult:
    """Evaluated query: the fidelity plus the intermediates that shaped it."""

    query: FidelityQuery
    fidelity: float
    beta_sq: float | None = None
    r_eff: float | None = None
    flags: tuple[str, ...] = ()


def evaluate(query: FidelityQuery) -> FidelityResult:
    """Evaluate a fidelity query, surfacing |beta_k|^2 and regime flags."""
    m = query.model
    gamma = 1.0 if query.gamma is None else query.gamma

    if m is FidelityModel.MINKOWSKI:
        return FidelityResult(query, fidelity_tmsv(query.r))
    if m is FidelityModel.THERMAL_CHANNEL:
        return FidelityResult(query, fidelity_thermal(query.n))
    if m is FidelityModel.CONCURRENCE:
        return FidelityResult(query, fidelity_concurrence(query.C))
    if m is FidelityModel.DE_SITTER_RATIO:
        return FidelityResult(query, fidelity_de_sitter_ratio(query.k, query.H))
    if m is FidelityModel.MATTER:
        beta_sq = beta_sq_matter(query.k, query.H0)
        return FidelityResult(query, fidelity_matter(query.k, query.H0), beta_sq=beta_sq)

    # squeezed-channel family
    if m is FidelityModel.EFFECTIVE_SQUEEZING:
        beta_sq = query.n
    elif m is FidelityModel.POWER_LAW:
        beta_sq = beta_sq_power_law(query.k, query.alpha)
    else:  # DE_SITTER_SQUEEZED
        beta_sq = beta_sq_de_sitter(query.k, query.H)
    r_eff = effective_squeezing(query.r, beta_sq, gamma)
    flags = (FLAG_SUB_CLASSICAL,) if sub_classical(r_eff) else ()
    return FidelityResult(query, _logistic_fidelity(2.0 * r_eff),
                          beta_sq=beta_sq, r_eff=r_eff, flags=flags)
