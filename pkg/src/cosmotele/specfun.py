"""Real-order Bessel/Hankel evaluation plus the two asymptotic regimes used
by the horizon analysis.

The exact evaluator wraps scipy.special (jv/yv), which covers real orders
and real positive arguments to near machine precision; the test suite
cross-checks it against an arbitrary-precision oracle.  The large- and
small-argument operators implement the standard Hankel asymptotics

    H2(nu, x) ~ sqrt(2/(pi x)) exp(-i (x - pi nu/2 - pi/4))   x >> 1
    H2(nu, x) ~ (i/pi) Gamma(nu) (x/2)^(-nu)                  x << 1

with explicit validity thresholds (x >= 10 and x <= 0.1) so callers cannot
silently evaluate them out of regime.
"""

from __future__ import annotations

import math
from enum import Enum

from scipy import special as _sp

SUPPORTED_ORDER_MAX = 50.0

LARGE_ARG_THRESHOLD = 10.0
SMALL_ARG_THRESHOLD = 0.1


class HankelKind(Enum):
    """Selects H_nu^(1) = J + iY or H_nu^(2) = J - iY."""

    FIRST = 1
    SECOND = 2


def _check_args(nu: float, x: float) -> None:
    if not x > 0:
        raise ValueError(f"argument must be positive, got x = {x}")
    if not 0 <= nu <= SUPPORTED_ORDER_MAX:
        raise ValueError(f"order out of supported range [0, {SUPPORTED_ORDER_MAX}]: nu = {nu}")


def bessel_jy(nu: float, x: float) -> tuple[float, float]:
    """Evaluate (J_nu(x), Y_nu(x)) for real order nu >= 0 and x > 0."""
    _check_args(nu, x)
    j = float(_sp.jv(nu, x))
    y = float(_sp.yv(nu, x))
    if not (math.isfinite(j) and math.isfinite(y)):
        raise ValueError(f"Bessel evaluation not finite at nu = {nu}, x = {x}")
    return j, y


def bessel_jy_derivative(nu: float, x: float) -> tuple[float, float]:
    """Evaluate (J_nu'(x), Y_nu'(x)) with respect to x."""
    _check_args(nu, x)
    return float(_sp.jvp(nu, x)), float(_sp.yvp(nu, x))


def hankel(nu: float, x: float, kind: HankelKind = HankelKind.SECOND) -> complex:
    """Hankel function H_nu^(1) or H_nu^(2) at real positive argument.

    Built from the (J, Y) pair so that H1 + H2 = 2 J holds exactly and
    H2 is the complex conjugate of H1 for real order and argument.
    """
    j, y = bessel_jy(nu, x)
    return complex(j, y) if kind is HankelKind.FIRST else complex(j, -y)


def hankel_derivative(nu: float, x: float, kind: HankelKind = HankelKind.SECOND) -> complex:
    """d/dx of the Hankel function, via H' = -H_(nu+1) + (nu/x) H_nu.

    The upward form keeps all evaluated orders nonnegative.
    """
    return -hankel(nu + 1.0, x, kind) + (nu / x) * hankel(nu, x, kind)


def hankel2_asymptotic_large(nu: float, x: float) -> complex:
    """Oscillatory large-argument form of H_nu^(2), valid for x >= 10.

    Exact for nu = 1/2.  Converges to the exact evaluator in modulus,
    within 1% at the threshold for nu <= 3/2; the complex value also
    carries an O((4 nu^2 - 1)/8x) phase error, about 10% at the
    threshold for nu = 3/2.
    """
    if x < LARGE_ARG_THRESHOLD:
        raise ValueError(
            f"large-argument form requires x >= {LARGE_ARG_THRESHOLD}, got x = {x}"
        )
    amplitude = math.sqrt(2.0 / (math.pi * x))
    phase = x - 0.5 * math.pi * nu - 0.25 * math.pi
    return amplitude * complex(math.cos(phase), -math.sin(phase))


def hankel2_asymptotic_small(nu: float, x: float) -> complex:
    """Leading small-argument form of H_nu^(2), valid for 0 < x <= 0.1.

    The nu = 0 logarithmic branch is not supported.
    """
    if nu <= 0:
        raise ValueError("small-argument form requires nu > 0 (logarithmic branch unsupported)")
    if not 0 < x <= SMALL_ARG_THRESHOLD:
        raise ValueError(
            f"small-argument form requires 0 < x <= {SMALL_ARG_THRESHOLD}, got x = {x}"
        )
    return 1j / math.pi * math.gamma(nu) * (0.5 * x) ** (-nu)
