"""First-level self-energy: shift and width of the |e>-|g> transition.

Both quantities depend on the evaluation energy ``y = E/delta`` and the
photon frequency ``w = omega/delta`` only through ``s = y - w``:

    Delta_1 = 4 L_1 D(s - a)                      (closed Dawson form)
    Gamma_1 = 4 sqrt(pi) L_1 exp(-(s - a)^2)      (= 2 pi g_1^2(s))

The closed form assumes the lower bound of the underlying PV integral is
extended to minus infinity; at ``a >= 10`` the difference from the exact
``(0, inf)`` integral is far below double precision.  ``delta1_pv`` keeps the
exact-lower-bound variant available for sensitivity checks.

When the regime switch ``v1_enabled`` is off both functions are identically
zero and the second level is stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .model import CouplingConfig, DimensionlessModel
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, pv_integrate

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ShiftWidth:
    """A paired (shift, width) self-energy evaluation, in units of delta."""

    shift: float
    width: float

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"width must be non-negative, got {self.width}")


def delta1(y, w, m: DimensionlessModel, c: CouplingConfig):
    """First-level shift ``Delta_1(y, w)/delta``; zero when ``v1_enabled`` is off."""
    if not c.v1_enabled:
        return np.zeros_like(np.asarray(y, dtype=float) + np.asarray(w, dtype=float))[()]
    x = np.asarray(y, dtype=float) - np.asarray(w, dtype=float) - m.a
    return 4.0 * c.l1 * special.dawsn(x)


def gamma1(y, w, m: DimensionlessModel, c: CouplingConfig):
    """First-level width ``Gamma_1(y, w)/delta``; zero when ``v1_enabled`` is off."""
    if not c.v1_enabled:
        return np.zeros_like(np.asarray(y, dtype=float) + np.asarray(w, dtype=float))[()]
    x = np.asarray(y, dtype=float) - np.asarray(w, dtype=float) - m.a
    return 4.0 * SQRT_PI * c.l1 * np.exp(-(x**2))


def delta1_pv(
    y: float,
    w: float,
    m: DimensionlessModel,
    c: CouplingConfig,
    s: QuadratureSettings = DEFAULT_SETTINGS,
    *,
    extended: bool = True,
) -> float:
    """First-level shift by generic PV quadrature (verification route).

    ``extended=True`` integrates over the whole real line, matching the
    Dawson closed form; ``extended=False`` keeps the physical lower bound at
    zero frequency.
    """
    if not c.v1_enabled:
        return 0.0
    pole = y - w
    pref = 2.0 * c.l1 / SQRT_PI
    a = m.a

    def integrand(t):
        return pref * math.exp(-((t - a) ** 2)) / (pole - t)

    lo = -math.inf if extended else 0.0
    # pole far below the Gaussian support: integrand is regular on the domain
    if pole <= lo + 1e-12 or (not extended and pole <= 0):
        from .quadrature import integrate_adaptive

        return integrate_adaptive(integrand, lo, math.inf, s, gaussian_center=a)
    return pv_integrate(integrand, pole, lo, math.inf, s)
