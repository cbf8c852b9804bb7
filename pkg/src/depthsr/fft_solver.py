"""Closed-form Fourier solve of the quadratic data/coupling subproblem.

The subproblem couples a fidelity term to an upsampled observation, a
pull toward the guided-filter output, and a quadratic tie between the
image gradient and its auxiliary targets. With periodic boundaries the
normal equations diagonalize under the 2-D DFT, so one forward/inverse
transform pair solves them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["DiffOtf", "build_otf", "gradient", "solve_quadratic"]


@dataclass(frozen=True)
class DiffOtf:
    """Transforms of the periodic forward-difference operators for one size.

    otf_dx/otf_dy multiply a spectrum to differentiate along columns/rows;
    denom is |otf_dx|^2 + |otf_dy|^2, the gradient part of the solve's
    denominator. Immutable, shareable across solves of the same size.
    """

    shape: tuple[int, int]
    otf_dx: np.ndarray = field(repr=False)
    otf_dy: np.ndarray = field(repr=False)
    denom: np.ndarray = field(repr=False)


def build_otf(shape: tuple[int, int]) -> DiffOtf:
    """Precompute difference-operator transforms for images of `shape`.

    The x kernel is embedded periodically with -1 at column 0 and +1 at
    the wrap column, so multiplying by otf_dx in the spectrum equals the
    circular forward difference u[:, j+1] - u[:, j] in space (likewise
    otf_dy along rows).
    """
    h, w = shape
    if h < 2 or w < 2:
        raise ValueError(f"need at least 2x2, got {h}x{w}")
    kx = np.zeros(shape)
    kx[0, 0] = -1.0
    kx[0, -1] = 1.0
    ky = np.zeros(shape)
    ky[0, 0] = -1.0
    ky[-1, 0] = 1.0
    otf_dx = np.fft.fft2(kx)
    otf_dy = np.fft.fft2(ky)
    denom = np.abs(otf_dx) ** 2 + np.abs(otf_dy) ** 2
    return DiffOtf(shape=(h, w), otf_dx=otf_dx, otf_dy=otf_dy, denom=denom)


def gradient(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Circular forward differences (du/dx, du/dy), matching build_otf."""
    u = np.asarray(u, dtype=np.float64)
    gx = np.roll(u, -1, axis=1) - u
    gy = np.roll(u, -1, axis=0) - u
    return gx, gy


def solve_quadratic(
    d_up: np.ndarray,
    z: np.ndarray,
    h: np.ndarray,
    v: np.ndarray,
    rho: float,
    beta: float,
    otf: DiffOtf,
) -> np.ndarray:
    """Exact minimizer of the periodic quadratic subproblem.

    Minimizes ||u - d_up||^2 + rho ||u - z||^2 + beta (||u_x - h||^2 +
    ||u_y - v||^2) by pointwise spectral division. Inputs must all match
    the cache's shape; rho, beta >= 0. The inverse transform's imaginary
    residue is checked against 1e-8 before being dropped.
    """
    if rho < 0 or beta < 0:
        raise ValueError(f"rho and beta must be >= 0, got rho={rho}, beta={beta}")
    for name, arr in (("d_up", d_up), ("z", z), ("h", h), ("v", v)):
        if np.asarray(arr).shape != otf.shape:
            raise ValueError(
                f"{name} has shape {np.asarray(arr).shape}, cache expects {otf.shape}"
            )
    num = np.fft.fft2(d_up) + rho * np.fft.fft2(z)
    if beta > 0:
        num += beta * (
            np.conj(otf.otf_dx) * np.fft.fft2(h) + np.conj(otf.otf_dy) * np.fft.fft2(v)
        )
    den = 1.0 + rho + beta * otf.denom
    u = np.fft.ifft2(num / den)
    residue = np.abs(u.imag).max()
    if residue > 1e-8:
        raise RuntimeError(f"imaginary residue {residue:.3e} exceeds 1e-8")
    return u.real
