"""Synthetic depth/guide scenes for tests, demos and benchmarking.

The staircase scene is piecewise constant except for one region whose
depth climbs by exactly one level per column, which is the gradient
pattern the banded penalty is built around. The guide mirrors the depth
structure (so edges are recoverable) plus an unrelated sinusoidal
texture (so guidance is not trivially the answer).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .image_io import write_image

__all__ = ["staircase_scene", "write_scene", "STAIRCASE_REGION", "FLAT_REGION"]

# (row0, row1, col0, col1) crops used by diagnostics and tests
STAIRCASE_REGION = (56, 88, 20, 76)
FLAT_REGION = (14, 36, 56, 84)


def staircase_scene(size: int = 96) -> tuple[np.ndarray, np.ndarray]:
    """Build the (depth, guide) pair; defaults to the committed 96x96 scene.

    Depth levels: background 24, one tall block at 80, one mid block at
    52, and a staircase strip rising one level per column from 30. The
    guide is a rescaled copy of the depth plus low-amplitude sine texture,
    kept inside [0, 1].
    """
    if size < 96:
        raise ValueError(f"scene layout needs size >= 96, got {size}")
    depth = np.full((size, size), 24.0)
    depth[8:40, 6:44] = 80.0
    depth[10:38, 52:88] = 52.0
    r0, r1, c0, c1 = (52, 92, 16, 80)
    cols = np.arange(c0, c1) - c0
    depth[r0:r1, c0:c1] = 30.0 + cols[None, :]

    lo, hi = depth.min(), depth.max()
    yy, xx = np.mgrid[0:size, 0:size]
    texture = np.sin(2 * np.pi * 3 * xx / size) * np.sin(2 * np.pi * 2 * yy / size)
    guide = 0.125 + 0.6 * (depth - lo) / (hi - lo) + 0.12 * texture
    return depth, np.clip(guide, 0.0, 1.0)


def write_scene(directory, size: int = 96) -> tuple[Path, Path]:
    """Write gt.pfm + guide.png (the benchmark dataset layout) to `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    depth, guide = staircase_scene(size)
    gt_path = directory / "gt.pfm"
    guide_path = directory / "guide.png"
    write_image(depth, gt_path, "pfm")
    Image.fromarray(np.rint(guide * 255.0).astype(np.uint8), mode="L").save(guide_path)
    return gt_path, guide_path
