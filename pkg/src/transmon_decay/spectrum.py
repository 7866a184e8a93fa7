"""Second-level self-energy and the spectral function of the third level.

Three regimes are supported:

``STABLE``
    The |g>-|e> coupling is off.  Shift and width are closed forms,

        Delta_2(y) = 4 L_2 D(y - b),
        Gamma_2(y) = 4 sqrt(pi) L_2 exp(-(y - b)^2).

``FULL``
    The |g>-|e> coupling dresses the intermediate level.  Shift and width
    are frequency integrals over the continuum with the first-level
    self-energy in the denominator:

        Delta_2(y) = (2 L_2/sqrt(pi)) int dw e^{-(w-a+alpha_d)^2}
                        (y-a-w-Delta_1) / [(y-a-w-Delta_1)^2 + Gamma_1^2/4],
        Gamma_2(y) = 8 L_1 L_2 int dw e^{-(w-a+alpha_d)^2} e^{-(y-a-w)^2}
                        / [(y-a-w-Delta_1)^2 + Gamma_1^2/4],

    with Delta_1 = Delta_1(y, w), Gamma_1 = Gamma_1(y, w).  The integrand
    develops narrow Lorentzian spikes where ``y - a - w = Delta_1``; the
    spike positions are known analytically (fixed points of ``u = 4 L_1
    D(u)``) and are passed to the adaptive integrator as break points.

``WEAK``
    Same integrals, frozen at ``y = b``; the spectral function is then a
    plain Lorentzian with those constants.

In every regime the spectral function is

    U(y) = (1/2 pi) Gamma_2(y) / [(y - b - Delta_2(y))^2 + Gamma_2(y)^2/4].
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .model import CouplingConfig, DimensionlessModel
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, _quad
from .self_energy import ShiftWidth

SQRT_PI = math.sqrt(math.pi)


class DegeneratePointError(ArithmeticError):
    """Width underflowed to zero exactly at a resonance point."""


class Regime(enum.Enum):
    STABLE = "stable"
    WEAK = "weak"
    FULL = "full"


def regime_for(c: CouplingConfig) -> Regime:
    """Natural regime of a coupling configuration (never WEAK)."""
    return Regime.FULL if c.v1_enabled else Regime.STABLE


# ---------------------------------------------------------------------------
# stable second level: closed forms

def delta2_stable(y, m: DimensionlessModel, c: CouplingConfig):
    """Second-level shift with a stable intermediate level."""
    x = np.asarray(y, dtype=float) - m.b
    return 4.0 * c.l2 * special.dawsn(x)


def gamma2_stable(y, m: DimensionlessModel, c: CouplingConfig):
    """Second-level width with a stable intermediate level."""
    x = np.asarray(y, dtype=float) - m.b
    return 4.0 * SQRT_PI * c.l2 * np.exp(-(x**2))


# ---------------------------------------------------------------------------
# full coupling: adaptive integrals

@functools.lru_cache(maxsize=64)
def _resonant_offsets(l1: float) -> tuple[float, ...]:
    """Fixed points of ``u = 4 l1 D(u)``: offsets where the inner denominator
    of the full-coupling integrand is resonant.  ``u = 0`` always; a symmetric
    pair exists once ``4 l1 > 1``."""
    if l1 <= 0:
        return (0.0,)
    if 4.0 * l1 <= 1.0:
        return (0.0,)
    f = lambda u: u - 4.0 * l1 * special.dawsn(u)
    hi = 2.0
    while f(hi) < 0:
        hi *= 2.0
    u_r = optimize.brentq(f, 1e-9, hi, xtol=1e-13)
    return (-u_r, 0.0, u_r)


def _full_integrals(
    y: float,
    m: DimensionlessModel,
    c: CouplingConfig,
    s: QuadratureSettings,
    which: str = "both",
):
    """Raw shift and width integrals (without prefactors) for FULL coupling.

    Integration variable is ``v = w - (a - alpha_d)``, centred on the
    second-transition Gaussian; in this variable the inner resonances sit at
    ``v = (y - b) - u`` for each fixed point ``u``.
    """
    a, b = m.a, m.b
    l1 = c.l1
    g1_peak = 4.0 * SQRT_PI * l1
    c2 = a - m.alpha_d
    d = y - b  # detuning from the bare resonance

    def shift_integrand(v):
        x = d - v  # = y - a - w with w = c2 + v
        dl1 = 4.0 * l1 * special.dawsn(x)
        g1 = g1_peak * math.exp(-x * x)
        num = x - dl1
        return math.exp(-v * v) * num / (num * num + 0.25 * g1 * g1)

    def width_integrand(v):
        x = d - v
        dl1 = 4.0 * l1 * special.dawsn(x)
        g1 = g1_peak * math.exp(-x * x)
        num = x - dl1
        return math.exp(-v * v) * math.exp(-x * x) / (num * num + 0.25 * g1 * g1)

    span = s.tail_cutoff
    points = [d - u for u in _resonant_offsets(l1)]
    shift = width = math.nan
    if which in ("both", "shift"):
        shift, _ = _quad(shift_integrand, -span, span, s, points=points)
    if which in ("both", "width"):
        width, _ = _quad(width_integrand, -span, span, s, points=points)
    return shift, width


def level2_shift_width(
    y: float, m: DimensionlessModel, c: CouplingConfig, s: QuadratureSettings = DEFAULT_SETTINGS
) -> ShiftWidth:
    """Second-level (shift, width) pair at energy ``y`` with full coupling."""
    if not c.v1_enabled:
        raise ValueError("full-coupling self-energy needs v1_enabled=True")
    shift_raw, width_raw = _full_integrals(float(y), m, c, s)
    return ShiftWidth(
        shift=2.0 * c.l2 / SQRT_PI * shift_raw,
        width=max(8.0 * c.l1 * c.l2 * width_raw, 0.0),
    )


def delta2_full(
    y: float, m: DimensionlessModel, c: CouplingConfig, s: QuadratureSettings = DEFAULT_SETTINGS
) -> float:
    if not c.v1_enabled:
        raise ValueError("full-coupling self-energy needs v1_enabled=True")
    shift_raw, _ = _full_integrals(float(y), m, c, s, which="shift")
    return 2.0 * c.l2 / SQRT_PI * shift_raw


def gamma2_full(
    y: float, m: DimensionlessModel, c: CouplingConfig, s: QuadratureSettings = DEFAULT_SETTINGS
) -> float:
    if not c.v1_enabled:
        raise ValueError("full-coupling self-energy needs v1_enabled=True")
    _, width_raw = _full_integrals(float(y), m, c, s, which="width")
    return max(8.0 * c.l1 * c.l2 * width_raw, 0.0)


@functools.lru_cache(maxsize=64)
def shift_width_weak(
    m: DimensionlessModel, c: CouplingConfig, s: QuadratureSettings = DEFAULT_SETTINGS
) -> ShiftWidth:
    """Weak-coupling constants: the full integrals frozen at ``y = b``."""
    return level2_shift_width(m.b, m, c, s)


# ---------------------------------------------------------------------------
# spectral function

def _shift_width_at(y: float, m, c, regime: Regime, s) -> tuple[float, float]:
    if regime is Regime.STABLE:
        return float(delta2_stable(y, m, c)), float(gamma2_stable(y, m, c))
    if regime is Regime.WEAK:
        sw = shift_width_weak(m, c, s)
        return sw.shift, sw.width
    sw = level2_shift_width(y, m, c, s)
    return sw.shift, sw.width


def spectral_function(
    y,
    m: DimensionlessModel,
    c: CouplingConfig,
    regime: Regime,
    s: QuadratureSettings = DEFAULT_SETTINGS,
):
    """Dimensionless spectral function ``U(y) = U_ff(E) * delta``."""
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    if regime is Regime.FULL:
        pairs = [(level2_shift_width(float(yi), m, c, s)) for yi in ys]
        shift = np.array([p.shift for p in pairs])
        width = np.array([p.width for p in pairs])
    elif regime is Regime.WEAK:
        sw = shift_width_weak(m, c, s)
        shift = np.full_like(ys, sw.shift)
        width = np.full_like(ys, sw.width)
    else:
        shift = np.asarray(delta2_stable(ys, m, c))
        width = np.asarray(gamma2_stable(ys, m, c))
    detuning = ys - m.b - shift
    denom = detuning**2 + 0.25 * width**2
    if np.any((denom == 0.0) & (width == 0.0)):
        raise DegeneratePointError(
            "width underflowed to zero exactly at a resonance point; "
            "the spectral function is a delta distribution there"
        )
    out = width / (2.0 * math.pi * denom)
    return out if np.ndim(y) else float(out[0])


# ---------------------------------------------------------------------------
# adaptive grid

@dataclass(frozen=True)
class SpectralGrid:
    """Sampled spectral data over a strictly increasing energy grid.

    ``refinement_level`` is 0 for coarse-scan points and counts how many
    refinement passes have touched each point otherwise.  ``complete`` is
    False when the refinement budget was exhausted before all peaks were
    resolved.
    """

    energies: np.ndarray
    u_ff: np.ndarray
    gamma2: np.ndarray
    delta2: np.ndarray
    refinement_level: np.ndarray
    y_ref: float
    complete: bool = True

    def __post_init__(self):
        if np.any(np.diff(self.energies) <= 0):
            raise ValueError("energies must be strictly increasing")
        if np.any(self.u_ff < 0) or np.any(self.gamma2 < 0):
            raise ValueError("u_ff and gamma2 must be non-negative")


def _eval_columns(ys, m, c, regime, s):
    if regime is Regime.FULL:
        pairs = [level2_shift_width(float(yi), m, c, s) for yi in ys]
        shift = np.array([p.shift for p in pairs])
        width = np.array([p.width for p in pairs])
    elif regime is Regime.WEAK:
        sw = shift_width_weak(m, c, s)
        shift = np.full(len(ys), sw.shift)
        width = np.full(len(ys), sw.width)
    else:
        shift = np.asarray(delta2_stable(ys, m, c), dtype=float)
        width = np.asarray(gamma2_stable(ys, m, c), dtype=float)
    detuning = np.asarray(ys) - m.b - shift
    u = width / (2.0 * math.pi * (detuning**2 + 0.25 * width**2))
    return u, width, shift


def _peak_width_estimate(y_p, width_p, slope):
    # FWHM of a locally Lorentzian peak when the shift is locally linear
    return max(width_p / max(abs(1.0 - slope), 1e-3), 1e-6)


def build_grid(
    m: DimensionlessModel,
    c: CouplingConfig,
    regime: Regime,
    y_range: tuple[float, float] | None = None,
    s: QuadratureSettings = DEFAULT_SETTINGS,
    *,
    coarse_step: float | None = None,
    points_per_fwhm: int = 20,
    max_refined_peaks: int = 16,
) -> SpectralGrid:
    """Coarse scan plus local refinement around every resonance.

    Refinement centres are the sign changes of ``F(y) = y - b - Delta_2(y)``
    and the local maxima of the coarse spectral function.  Around each centre
    points are laid with spacing ``FWHM / points_per_fwhm`` in a linear core
    and geometric tails, so narrow peaks are resolved without a dense global
    grid.  The minimum local step is 1e-6.
    """
    if y_range is None:
        y_range = (m.b - 12.0, m.b + 12.0)
    lo, hi = y_range
    if coarse_step is None:
        coarse_step = 0.01 if regime is Regime.FULL else 0.002
    n_coarse = max(int(round((hi - lo) / coarse_step)), 16) + 1
    ys = np.linspace(lo, hi, n_coarse)
    u, width, shift = _eval_columns(ys, m, c, regime, s)

    # refinement centres: roots of the resonance function and local maxima of U
    resfun = ys - m.b - shift
    centers: list[float] = []
    sign_change = np.nonzero(np.diff(np.signbit(resfun)))[0]
    for i in sign_change:
        # secant estimate of the crossing inside the bracket
        f0, f1 = resfun[i], resfun[i + 1]
        centers.append(ys[i] + (ys[i + 1] - ys[i]) * f0 / (f0 - f1))
    local_max = np.nonzero((u[1:-1] > u[:-2]) & (u[1:-1] > u[2:]))[0] + 1
    centers.extend(ys[local_max])

    complete = True
    if len(centers) > max_refined_peaks:
        centers = sorted(centers, key=lambda yc: -np.interp(yc, ys, u))[:max_refined_peaks]
        complete = False

    new_points: list[np.ndarray] = []
    for y_c in centers:
        i = int(np.clip(np.searchsorted(ys, y_c), 1, len(ys) - 2))
        w_c = float(np.interp(y_c, ys, width))
        # local slope of the shift from the coarse grid
        slope = float((shift[i + 1] - shift[i - 1]) / (ys[i + 1] - ys[i - 1]))
        fw = _peak_width_estimate(y_c, w_c, slope)
        core = np.linspace(0.0, 6.0 * fw, 6 * points_per_fwhm + 1)[1:]
        outer_span = min(5.0, hi - y_c, y_c - lo)
        if outer_span > 6.0 * fw:
            tail = np.geomspace(6.0 * fw, outer_span, 140)[1:]
            offsets = np.concatenate([core, tail])
        else:
            offsets = core
        new_points.append(y_c + offsets)
        new_points.append(y_c - offsets)
        new_points.append(np.array([y_c]))

    if new_points:
        extra = np.concatenate(new_points)
        extra = extra[(extra > lo) & (extra < hi)]
        merged = np.union1d(ys, extra)
        # drop near-duplicates that would break strict monotonicity
        keep = np.concatenate([[True], np.diff(merged) > 1e-12])
        merged = merged[keep]
        is_old = np.isin(merged, ys)
        is_new = ~is_old
        u_m = np.empty_like(merged)
        w_m = np.empty_like(merged)
        d_m = np.empty_like(merged)
        src = np.searchsorted(ys, merged[is_old])
        u_m[is_old], w_m[is_old], d_m[is_old] = u[src], width[src], shift[src]
        if is_new.any():
            u_new, w_new, d_new = _eval_columns(merged[is_new], m, c, regime, s)
            u_m[is_new], w_m[is_new], d_m[is_new] = u_new, w_new, d_new
        level = np.where(is_new, 1, 0)
        ys, u, width, shift = merged, u_m, w_m, d_m
    else:
        level = np.zeros(len(ys), dtype=int)

    return SpectralGrid(
        energies=ys,
        u_ff=np.maximum(u, 0.0),
        gamma2=np.maximum(width, 0.0),
        delta2=shift,
        refinement_level=np.asarray(level, dtype=int),
        y_ref=m.b,
        complete=complete,
    )
