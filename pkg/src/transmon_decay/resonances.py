"""Resonance roots, spectral peaks, widths, and coupling sweeps.

A resonance can be reported from two definitions that do not always agree:
roots of the resonance condition ``y - b - Delta_2(y) = 0`` and local maxima
of the spectral function.  Both are produced and cross-referenced, since at
full coupling some roots fall where the width is large and raise no peak.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import optimize

from .model import CouplingConfig, DimensionlessModel
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings
from .spectrum import (
    Regime,
    SpectralGrid,
    _shift_width_at,
    delta2_stable,
    spectral_function,
)


class ScanRangeError(RuntimeError):
    """A sign change touched the scan boundary; widen the range."""


@dataclass(frozen=True)
class ResonanceRecord:
    """One resonance: location, origin, height, and width when known."""

    y_r: float
    kind: str  # "root" or "peak"
    height: float
    fwhm: float | None = None
    degenerate: bool = False
    root_ref: float | None = None  # nearest root for peak records, when close

    def __post_init__(self):
        if self.kind not in ("root", "peak"):
            raise ValueError(f"kind must be 'root' or 'peak', got {self.kind!r}")
        if self.height < 0:
            raise ValueError("height must be non-negative")
        if self.fwhm is not None and self.fwhm <= 0:
            raise ValueError("fwhm must be positive when present")


@dataclass(frozen=True)
class FwhmResult:
    """Full width at half maximum; ``complete`` is False when only an
    attainable half-width could be measured (overlapping peaks)."""

    width: float
    complete: bool = True


@dataclass(frozen=True)
class SweepResult:
    l2_values: tuple[float, ...]
    records_per_l2: tuple[tuple[ResonanceRecord, ...], ...]
    crossover_estimate: float | None


def spectral_callable(m, c, regime: Regime, s: QuadratureSettings = DEFAULT_SETTINGS):
    """Scalar ``y -> U(y)`` closure for the given configuration."""
    return lambda y: float(spectral_function(float(y), m, c, regime, s))


def find_roots(
    m: DimensionlessModel,
    c: CouplingConfig,
    regime: Regime,
    s: QuadratureSettings = DEFAULT_SETTINGS,
    *,
    y_range: tuple[float, float] | None = None,
    scan_step: float = 0.01,
    root_tol: float = 1e-9,
    merge_tol: float = 1e-5,
) -> list[ResonanceRecord]:
    """All roots of ``y - b - Delta_2(y)`` in the scan range, sorted by location.

    Sign changes are bracketed on a uniform scan grid and refined by Brent
    bracketing; roots closer than ``merge_tol`` are merged into one record
    with a degeneracy flag.  Each record is annotated with the value of the
    spectral function at the root.
    """
    if y_range is None:
        y_range = (m.b - 12.0, m.b + 12.0)
    lo, hi = y_range
    n = max(int(math.ceil((hi - lo) / scan_step)), 8) + 1
    ys = np.linspace(lo, hi, n)

    from .spectrum import delta2_full, shift_width_weak

    if regime is Regime.WEAK:
        const_shift = shift_width_weak(m, c, s).shift
        resfun = lambda y: float(y) - m.b - const_shift
    elif regime is Regime.FULL:
        resfun = lambda y: float(y) - m.b - delta2_full(float(y), m, c, s)
    else:
        resfun = lambda y: float(y) - m.b - float(delta2_stable(y, m, c))

    if regime is Regime.STABLE:
        vals = np.asarray(ys - m.b - delta2_stable(ys, m, c), dtype=float)
    else:
        vals = np.array([resfun(y) for y in ys])

    crossings = np.nonzero(np.diff(np.signbit(vals)) | (vals[:-1] == 0.0))[0]
    if len(crossings) and (crossings[0] == 0 or crossings[-1] == n - 2):
        raise ScanRangeError(
            f"sign change at scan boundary of [{lo}, {hi}]; widen the range"
        )

    roots: list[float] = []
    for i in crossings:
        if vals[i] == 0.0:
            roots.append(float(ys[i]))
            continue
        roots.append(optimize.brentq(resfun, ys[i], ys[i + 1], xtol=root_tol))
    roots.sort()

    records: list[ResonanceRecord] = []
    cluster: list[float] = []
    for r in roots + [math.inf]:
        if cluster and r - cluster[-1] >= merge_tol:
            y_r = float(np.mean(cluster))
            records.append(
                ResonanceRecord(
                    y_r=y_r,
                    kind="root",
                    height=float(spectral_function(y_r, m, c, regime, s)),
                    degenerate=len(cluster) > 1,
                )
            )
            cluster = []
        if math.isfinite(r):
            cluster.append(r)
    return records


def find_peaks(
    grid: SpectralGrid,
    roots: list[ResonanceRecord] | None = None,
    *,
    min_height: float = 0.0,
) -> list[ResonanceRecord]:
    """Local maxima of the gridded spectral function with parabolic refinement.

    Each peak is paired with the nearest root when that root lies within one
    estimated FWHM of the peak; otherwise the peak stands alone.
    """
    y, u = grid.energies, grid.u_ff
    idx = np.nonzero((u[1:-1] > u[:-2]) & (u[1:-1] >= u[2:]) & (u[1:-1] > min_height))[0] + 1
    records = []
    for i in idx:
        y0, y1, y2 = y[i - 1], y[i], y[i + 1]
        u0, u1, u2 = u[i - 1], u[i], u[i + 1]
        # parabola through the triple (nonuniform spacing)
        denom = (y0 - y1) * (y0 - y2) * (y1 - y2)
        aa = (y2 * (u1 - u0) + y1 * (u0 - u2) + y0 * (u2 - u1)) / denom
        bb = (y2**2 * (u0 - u1) + y1**2 * (u2 - u0) + y0**2 * (u1 - u2)) / denom
        if aa < 0:
            y_p = -bb / (2 * aa)
            if not (y0 < y_p < y2):
                y_p = y1
        else:
            y_p = y1
        cc = u1 - aa * y1**2 - bb * y1
        h = aa * y_p**2 + bb * y_p + cc if aa < 0 else u1
        rec = ResonanceRecord(y_r=float(y_p), kind="peak", height=float(max(h, u1)))
        if roots:
            nearest = min(roots, key=lambda r: abs(r.y_r - y_p))
            # pairing window: one local width, estimated from the grid
            g_p = float(np.interp(y_p, y, grid.gamma2))
            if abs(nearest.y_r - y_p) <= max(g_p, 1e-6):
                rec = replace(rec, root_ref=nearest.y_r)
        records.append(rec)
    return records


def fwhm(
    record: ResonanceRecord,
    u,
    s: QuadratureSettings = DEFAULT_SETTINGS,
    *,
    search_span: float = 6.0,
    rel_tol: float = 1e-8,
) -> FwhmResult:
    """Full width at half maximum of a peak by bisection on each flank.

    ``u`` is a scalar callable ``y -> U(y)``.  When a flank never falls to
    half height within ``search_span`` (overlapping peaks), the attainable
    half-width is doubled and flagged incomplete.
    """
    if record.height <= 0:
        raise ValueError("fwhm needs a peak with positive height")
    y_p, half = record.y_r, 0.5 * record.height

    def crossing(direction: int) -> float | None:
        # expand outward until below half height, then bisect
        step = 1e-6
        prev = y_p
        while step <= search_span:
            y_try = y_p + direction * step
            if u(y_try) < half:
                f = lambda y: u(y) - half
                lo, hi = (prev, y_try) if direction > 0 else (y_try, prev)
                return optimize.brentq(f, lo, hi, rtol=rel_tol, xtol=1e-14)
            prev = y_try
            step *= 2.0
        return None

    left = crossing(-1)
    right = crossing(+1)
    if left is not None and right is not None:
        return FwhmResult(width=right - left)
    # overlap: report twice the attainable one-sided half width
    side = right - y_p if right is not None else (y_p - left if left is not None else None)
    if side is None:
        raise ValueError("half height not attained on either flank within the search span")
    return FwhmResult(width=2.0 * side, complete=False)


def _root_count(m, c, regime, s, scan_step) -> int:
    return len(find_roots(m, c, regime, s, scan_step=scan_step))


def sweep_coupling(
    m: DimensionlessModel,
    regime: Regime,
    l2_values,
    s: QuadratureSettings = DEFAULT_SETTINGS,
    *,
    l1_ratio: float = 2.0 / 3.0,
    scan_step: float = 0.01,
    crossover_tol: float = 1e-3,
) -> SweepResult:
    """Root structure versus coupling strength, plus the crossover estimate.

    For every ``L_2`` the roots and their spectral-function values are
    collected (``L_1 = l1_ratio * L_2`` at full coupling).  The crossover is
    the smallest ``L_2`` whose root count exceeds one, refined by bisection
    over ``L_2``.
    """
    l2_values = tuple(float(v) for v in l2_values)
    if any(v <= 0 for v in l2_values):
        raise ValueError("coupling sweep values must be positive")

    def config(l2: float) -> CouplingConfig:
        if regime is Regime.STABLE:
            return CouplingConfig.stable_second_level(l2)
        return CouplingConfig(l1=l1_ratio * l2, l2=l2, v1_enabled=True)

    records = []
    counts = []
    for l2 in l2_values:
        recs = find_roots(m, config(l2), regime, s, scan_step=scan_step)
        records.append(tuple(recs))
        counts.append(len(recs))

    crossover = None
    above = [i for i, n in enumerate(counts) if n > 1]
    if above:
        hi_i = above[0]
        hi = l2_values[hi_i]
        lo = max([l2 for l2, n in zip(l2_values[:hi_i], counts[:hi_i]) if n <= 1], default=None)
        if lo is None:
            crossover = hi
        else:
            while hi - lo > crossover_tol:
                mid = 0.5 * (lo + hi)
                if _root_count(m, config(mid), regime, s, scan_step) > 1:
                    hi = mid
                else:
                    lo = mid
            crossover = 0.5 * (lo + hi)

    return SweepResult(
        l2_values=l2_values,
        records_per_l2=tuple(records),
        crossover_estimate=crossover,
    )
