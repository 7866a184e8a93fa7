"""Rabi oscillations of the survival amplitude.

The Fourier transform of a split spectrum beats at the peak-splitting
frequency: the emitter oscillates coherently between its second excited
state and the continuum before decaying.  The script computes the survival
amplitude in both regimes and converts the periods to physical units at the
reference continuum width delta = 2 pi x 100 MHz.
"""

import math

import numpy as np

from transmon_decay import (
    CouplingConfig,
    DimensionlessModel,
    Regime,
    build_grid,
    rabi_metrics,
    survival_amplitude,
)

DELTA_RAD_S = 2 * math.pi * 1e8

model = DimensionlessModel(a=50.0, b=98.5)


def analyze(label: str, coupling: CouplingConfig, regime: Regime, t_max: float):
    grid = build_grid(model, coupling, regime)
    t = np.linspace(0.0, t_max, 4001)
    series = survival_amplitude(grid, t)
    metrics = rabi_metrics(series)
    print(f"\n{label}")
    print(f"  |U(0)| = {series.magnitude[0]:.6f}")
    if metrics.rabi_period is not None:
        print(
            f"  Rabi period: {metrics.rabi_period:.4f} (dimensionless) = "
            f"{metrics.rabi_period / DELTA_RAD_S * 1e9:.3f} ns"
        )
        print(f"  magnitude maxima: {metrics.n_maxima}, spacing {metrics.maxima_spacing:.4f}")
    if math.isfinite(metrics.decay_time):
        print(
            f"  envelope decay time: {metrics.decay_time:.3f} = "
            f"{metrics.decay_time / DELTA_RAD_S * 1e9:.2f} ns"
        )
    else:
        print("  no measurable decay over this window (quasistable doublet)")


analyze(
    "stable second level, L2 = 6 (narrow doublet, long-lived beat)",
    CouplingConfig.stable_second_level(6.0),
    Regime.STABLE,
    t_max=20.0,
)
analyze(
    "full coupling, L2 = 6, L1 = 4 (triplet, damped oscillations)",
    CouplingConfig.transmon_ratio(6.0),
    Regime.FULL,
    t_max=15.0,
)
