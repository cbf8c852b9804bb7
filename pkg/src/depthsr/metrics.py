"""Evaluation metrics: RMSE and depth-gradient level statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["rmse", "GradientStats", "gradient_stats"]


def rmse(pred: np.ndarray, gt: np.ndarray, mask: np.ndarray | None = None) -> float:
    """Root mean squared error over valid pixels."""
    pred = np.asarray(pred, dtype=np.float64)
    gt = np.asarray(gt, dtype=np.float64)
    if pred.shape != gt.shape:
        raise ValueError(f"shape mismatch: pred {pred.shape} vs gt {gt.shape}")
    diff = pred - gt
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != gt.shape:
            raise ValueError(f"mask shape {mask.shape} does not match {gt.shape}")
        diff = diff[mask]
        if diff.size == 0:
            raise ValueError("mask selects no pixels")
    return float(np.sqrt(np.mean(diff * diff)))


@dataclass(frozen=True)
class GradientStats:
    """Histogram of |forward difference| magnitudes on the integer level grid.

    hist_x/hist_y index counts by integer magnitude (index 0 = flat).
    Fractions are per direction and sum to 1.
    """

    hist_x: np.ndarray
    hist_y: np.ndarray

    def _fracs(self, hist: np.ndarray) -> tuple[float, float, float]:
        total = hist.sum()
        zero = hist[0] / total
        one = (hist[1] if hist.size > 1 else 0) / total
        return float(zero), float(one), float(1.0 - zero - one)

    @property
    def fractions_x(self) -> tuple[float, float, float]:
        """(at 0, at 1, above 1) for horizontal differences."""
        return self._fracs(self.hist_x)

    @property
    def fractions_y(self) -> tuple[float, float, float]:
        """(at 0, at 1, above 1) for vertical differences."""
        return self._fracs(self.hist_y)


def gradient_stats(depth: np.ndarray) -> GradientStats:
    """Magnitude histogram of non-circular forward differences.

    Depth is rounded to integer levels first; the wrap column/row never
    enters (np.diff drops it), so seams do not pollute the counts.
    """
    depth = np.rint(np.asarray(depth, dtype=np.float64))
    if depth.ndim != 2 or depth.shape[0] < 2 or depth.shape[1] < 2:
        raise ValueError(f"need at least 2x2 depth, got shape {depth.shape}")
    dx = np.abs(np.diff(depth, axis=1)).astype(np.int64).ravel()
    dy = np.abs(np.diff(depth, axis=0)).astype(np.int64).ravel()
    return GradientStats(hist_x=np.bincount(dx), hist_y=np.bincount(dy))
