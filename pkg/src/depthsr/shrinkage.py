"""Banded gradient-count penalty and its closed-form threshold operator.

Depth maps are piecewise smooth on an integer level grid: most gradients
are exactly zero and a further, non-negligible share has magnitude one.
The penalty here charges nothing for zero entries, a reduced weight t for
magnitudes in (0, 1], and full weight 1 beyond, so unit steps are cheaper
than arbitrary jumps. `shrink` minimizes

    (x - p)^2 + alpha * penalty(p, t)

over p for every element independently. The minimizer is always one of
{0, sign(x), x}; which one wins depends on |x| and on where alpha sits
relative to two breakpoints of the quadratic alpha^2 t^2 + (2t-4) alpha + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Thresholds",
    "thresholds",
    "penalty",
    "penalty_sum",
    "shrink",
    "hard_shrink",
]


@dataclass(frozen=True)
class Thresholds:
    """Decision boundaries of the banded-penalty shrinkage at fixed (t, alpha).

    alpha_low/alpha_high split the alpha axis into three regimes;
    the *_cut fields are the |x| cutoffs used inside the regimes:
    zero_cut = (1 + alpha*t)/2, unit_cut = 1 + sqrt(alpha*(1-t)),
    sqrt_cut = sqrt(alpha), small_cut = sqrt(alpha*t).
    """

    alpha_low: float
    alpha_high: float
    zero_cut: float
    unit_cut: float
    sqrt_cut: float
    small_cut: float


def thresholds(t: float, alpha: float) -> Thresholds:
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    if alpha <= 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    root = 2.0 * math.sqrt(1.0 - t)
    return Thresholds(
        alpha_low=(2.0 - t - root) / (t * t),
        alpha_high=(2.0 - t + root) / (t * t),
        zero_cut=(1.0 + alpha * t) / 2.0,
        unit_cut=1.0 + math.sqrt(alpha * (1.0 - t)),
        sqrt_cut=math.sqrt(alpha),
        small_cut=math.sqrt(alpha * t),
    )


def penalty(p, t: float):
    """Per-element cost: 0 at zero, t for 0 < |p| <= 1, 1 for |p| > 1."""
    if not 0.0 < t < 1.0:
        raise ValueError(f"t must lie in (0, 1), got {t}")
    a = np.abs(np.asarray(p, dtype=np.float64))
    out = np.where(a > 1.0, 1.0, np.where(a > 0.0, t, 0.0))
    return float(out) if out.ndim == 0 else out


def penalty_sum(field, t: float) -> float:
    """Total banded count of a gradient field component."""
    return float(np.sum(penalty(field, t)))


def shrink(x, t: float, alpha: float):
    """Elementwise minimizer of (x - p)^2 + alpha * penalty(p, t).

    Odd in x by construction; every output element is one of
    {0, sign(x), x}.
    """
    th = thresholds(t, alpha)
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    ax = np.abs(xa)
    sg = np.sign(xa)

    # |x| < 1: keep or kill; the unit candidate never wins there.
    small = np.where(ax <= th.small_cut, 0.0, ax)

    if alpha > th.alpha_high:
        big = np.where(ax <= th.sqrt_cut, 0.0, ax)
    elif alpha >= th.alpha_low:
        big = np.where(ax <= th.zero_cut, 0.0, np.where(ax <= th.unit_cut, 1.0, ax))
    else:
        big = np.where(ax <= th.unit_cut, 1.0, ax)

    out = sg * np.where(ax < 1.0, small, big)
    return float(out[0]) if scalar else out


def hard_shrink(x, alpha: float):
    """Plain zero-or-keep thresholding: 0 where |x| <= sqrt(alpha), else x.

    The all-or-nothing counterpart of `shrink`; the upsampling benchmark
    uses it to isolate what the reduced-penalty band buys.
    """
    if alpha <= 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    xa = np.asarray(x, dtype=np.float64)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    out = np.where(np.abs(xa) <= math.sqrt(alpha), 0.0, xa)
    return float(out[0]) if scalar else out
