"""Edge-preserving guided filtering with O(1)-per-pixel box sums.

The filter fits a local linear model of the guide in every window and
averages the overlapping models, following He's formulation. Windows are
clipped at the image border and normalized by their true area, so no
padding bias enters near edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["GuidedFilterParams", "box_filter", "guided_filter"]


@dataclass(frozen=True)
class GuidedFilterParams:
    radius: int = 8
    epsilon: float = 1e-4

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError(f"radius must be >= 1, got {self.radius}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")


def box_filter(img: np.ndarray, radius: int) -> np.ndarray:
    """Mean over the (2r+1)^2 window clipped to the image bounds.

    Computed from a summed-area table; border windows divide by their
    actual cell count.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {img.shape}")
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if radius == 0:
        return img.copy()
    h, w = img.shape
    sat = np.zeros((h + 1, w + 1), dtype=np.float64)
    sat[1:, 1:] = img.cumsum(axis=0).cumsum(axis=1)

    r0 = np.clip(np.arange(h) - radius, 0, None)
    r1 = np.clip(np.arange(h) + radius, None, h - 1)
    c0 = np.clip(np.arange(w) - radius, 0, None)
    c1 = np.clip(np.arange(w) + radius, None, w - 1)

    sums = (
        sat[np.ix_(r1 + 1, c1 + 1)]
        - sat[np.ix_(r0, c1 + 1)]
        - sat[np.ix_(r1 + 1, c0)]
        + sat[np.ix_(r0, c0)]
    )
    counts = (r1 - r0 + 1)[:, None] * (c1 - c0 + 1)[None, :]
    return sums / counts


def guided_filter(
    p: np.ndarray, guide: np.ndarray, params: GuidedFilterParams | None = None
) -> np.ndarray:
    """Filter `p` using `guide` as the structural reference.

    Per window: a = cov(I, p) / (var(I) + eps), b = mean(p) - a * mean(I);
    the output averages a and b over all windows covering each pixel.
    Input `p` is recentered on p[0, 0] before the windowed moments, which
    keeps large depth offsets out of the cov/var cancellation and makes
    constant inputs come back bit-exact.
    """
    if params is None:
        params = GuidedFilterParams()
    p = np.asarray(p, dtype=np.float64)
    guide = np.asarray(guide, dtype=np.float64)
    if p.shape != guide.shape:
        raise ValueError(f"shape mismatch: p {p.shape} vs guide {guide.shape}")
    r, eps = params.radius, params.epsilon

    offset = p[0, 0]
    pw = p - offset
    mean_i = box_filter(guide, r)
    mean_p = box_filter(pw, r)
    corr_ip = box_filter(guide * pw, r)
    corr_ii = box_filter(guide * guide, r)
    var_i = corr_ii - mean_i * mean_i
    cov_ip = corr_ip - mean_i * mean_p

    a = cov_ip / (var_i + eps)
    b = mean_p - a * mean_i
    return box_filter(a, r) * guide + box_filter(b, r) + offset
