"""Iterative guided depth upsampling.

One call to `upsample` runs the full alternation: bicubic initialization,
then per iteration a guided-filter pull toward the guide's structure, a
banded-threshold shrinkage of the current gradients, and an exact FFT
solve of the resulting quadratic. The coupling weight beta doubles every
iteration; the shrinkage weight lam and the guide weight rho are slaved
to it (lam = value_scale * beta0/beta, rho = 0.1 * beta) and never set
independently. Shrinking lam as beta grows is what makes the
continuation converge: early iterations threshold aggressively under a
weak coupling, late ones pass gradients through under a stiff coupling,
so the auxiliary targets approach the true gradients and the iterate
freezes instead of flattening.

Depth values are shifted to start at zero internally, and compressed
into [0, value_scale] only when their span exceeds it (16-bit style
inputs); data already on an 8-bit-like level grid is left unscaled so
that the penalty's unit band keeps meaning "one depth level". The output
is mapped back and clamped to the observed input range.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .fft_solver import build_otf, gradient, solve_quadratic
from .guided import GuidedFilterParams, guided_filter
from .metrics import rmse
from .resample import bicubic_resize
from .shrinkage import hard_shrink, penalty_sum, shrink

__all__ = [
    "NumericalAbortError",
    "SolverParams",
    "IterationRecord",
    "ConvergenceTrace",
    "objective",
    "upsample",
]

PAD_WIDTH = 16  # edge padding around the periodic solve, cropped afterwards

PENALTY_BANDED = "l0t"
PENALTY_HARD = "l0"


class NumericalAbortError(RuntimeError):
    """A pipeline stage produced non-finite values; names the stage."""

    def __init__(self, stage: str, iteration: int):
        self.stage = stage
        self.iteration = iteration
        super().__init__(
            f"non-finite values after stage '{stage}' at iteration {iteration}"
        )


@dataclass(frozen=True)
class SolverParams:
    """Knobs of the alternation; defaults follow the reference schedule."""

    t: float = 0.75
    beta0: float = 0.0025
    kappa: float = 2.0
    max_iter: int = 30
    gf: GuidedFilterParams = field(default_factory=GuidedFilterParams)
    pad: bool = True
    value_scale: float = 255.0
    penalty: str = PENALTY_BANDED

    def __post_init__(self):
        if not 0.0 < self.t < 1.0:
            raise ValueError(f"t must lie in (0, 1), got {self.t}")
        if self.beta0 <= 0:
            raise ValueError(f"beta0 must be > 0, got {self.beta0}")
        if self.kappa <= 1:
            raise ValueError(f"kappa must be > 1, got {self.kappa}")
        if not 0 <= self.max_iter <= 100:
            raise ValueError(f"max_iter must lie in [0, 100], got {self.max_iter}")
        if self.value_scale <= 0:
            raise ValueError(f"value_scale must be > 0, got {self.value_scale}")
        if self.penalty not in (PENALTY_BANDED, PENALTY_HARD):
            raise ValueError(f"penalty must be '{PENALTY_BANDED}' or '{PENALTY_HARD}'")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    beta: float
    lam: float
    rho: float
    objective: float
    rmse: float | None = None


@dataclass
class ConvergenceTrace:
    """Per-iteration schedule and diagnostics of one `upsample` run.

    stage_order documents the in-loop update sequence; clamp records the
    range applied to the final output (None when no iterations ran).
    """

    records: list[IterationRecord] = field(default_factory=list)
    stage_order: str = "guided-filter, shrinkage, quadratic-solve"
    clamp: tuple[float, float] | None = None

    def write_csv(self, target) -> None:
        """Write iter,beta,lambda,rho,objective,rmse rows to a path or file."""
        if hasattr(target, "write"):
            self._write(target)
        else:
            with open(target, "w", newline="") as f:
                self._write(f)

    def _write(self, f) -> None:
        writer = csv.writer(f)
        writer.writerow(["iter", "beta", "lambda", "rho", "objective", "rmse"])
        for r in self.records:
            writer.writerow(
                [
                    r.iteration,
                    repr(r.beta),
                    repr(r.lam),
                    repr(r.rho),
                    repr(r.objective),
                    "" if r.rmse is None else repr(r.rmse),
                ]
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        self._write(buf)
        return buf.getvalue()


def objective(
    u: np.ndarray,
    d_up: np.ndarray,
    guide: np.ndarray,
    gf_params: GuidedFilterParams,
    rho: float,
    lam: float,
    t: float,
) -> float:
    """Diagnostic energy: fidelity + guide pull + banded gradient count.

    ||u - d_up||^2 + rho ||u - GF(u, guide)||^2 + lam * (banded count of
    u_x and u_y). Used for trace monitoring only, never for stopping.
    """
    u = np.asarray(u, dtype=np.float64)
    d_up = np.asarray(d_up, dtype=np.float64)
    if u.shape != d_up.shape or u.shape != guide.shape:
        raise ValueError("u, d_up and guide must share dimensions")
    fidelity = float(np.sum((u - d_up) ** 2))
    z = guided_filter(u, guide, gf_params)
    pull = float(np.sum((u - z) ** 2))
    gx, gy = gradient(u)
    return fidelity + rho * pull + lam * (penalty_sum(gx, t) + penalty_sum(gy, t))


def _check_finite(arr: np.ndarray, stage: str, iteration: int) -> None:
    if not np.isfinite(arr).all():
        raise NumericalAbortError(stage, iteration)


def upsample(
    lr: np.ndarray,
    guide: np.ndarray,
    factor: int,
    params: SolverParams | None = None,
    gt: np.ndarray | None = None,
) -> tuple[np.ndarray, ConvergenceTrace]:
    """Upsample a low-resolution depth map guided by an intensity image.

    `guide` must be `factor` times the size of `lr` (values in [0, 1]);
    `gt`, when given, only feeds the per-iteration RMSE in the trace.
    Returns the upsampled depth and the convergence trace. Deterministic:
    identical inputs give bit-identical outputs.
    """
    if params is None:
        params = SolverParams()
    lr = np.asarray(lr, dtype=np.float64)
    guide = np.asarray(guide, dtype=np.float64)
    factor = int(factor)
    if factor < 2:
        raise ValueError(f"factor must be >= 2, got {factor}")
    expected = (lr.shape[0] * factor, lr.shape[1] * factor)
    if guide.shape != expected:
        raise ValueError(f"guide shape {guide.shape} != lr x factor {expected}")
    if gt is not None:
        gt = np.asarray(gt, dtype=np.float64)
        if gt.shape != guide.shape:
            raise ValueError(f"gt shape {gt.shape} != guide shape {guide.shape}")
    if not np.isfinite(lr).all():
        raise ValueError("lr contains non-finite values")
    if not np.isfinite(guide).all():
        raise ValueError("guide contains non-finite values")

    d_up = bicubic_resize(lr, factor)
    trace = ConvergenceTrace()
    if params.max_iter == 0:
        return d_up, trace

    lo, hi = float(lr.min()), float(lr.max())
    span = hi - lo
    scale = params.value_scale / span if span > params.value_scale else 1.0
    work = (d_up - lo) * scale
    g = np.clip(guide, 0.0, 1.0)

    pad = PAD_WIDTH if params.pad else 0
    if pad:
        work = np.pad(work, pad, mode="edge")
        g = np.pad(g, pad, mode="edge")
    d_int = work.copy()
    u = work
    otf = build_otf(u.shape)

    def unscale(arr: np.ndarray) -> np.ndarray:
        inner = arr[pad:-pad, pad:-pad] if pad else arr
        return inner / scale + lo

    shrink_field = (
        (lambda x, lam: shrink(x, params.t, lam))
        if params.penalty == PENALTY_BANDED
        else (lambda x, lam: hard_shrink(x, lam))
    )

    beta = params.beta0 / 2.0
    for it in range(1, params.max_iter + 1):
        beta *= params.kappa
        lam = params.value_scale * params.beta0 / beta
        rho = 0.1 * beta

        z = guided_filter(u, g, params.gf)
        _check_finite(z, "guided-filter", it)
        gx, gy = gradient(u)
        h = shrink_field(gx, lam)
        v = shrink_field(gy, lam)
        _check_finite(h, "shrinkage", it)
        _check_finite(v, "shrinkage", it)
        u = solve_quadratic(d_int, z, h, v, rho, beta, otf)
        _check_finite(u, "quadratic-solve", it)

        obj = objective(u, d_int, g, params.gf, rho, lam, params.t)
        err = rmse(unscale(u), gt) if gt is not None else None
        trace.records.append(
            IterationRecord(
                iteration=it, beta=beta, lam=lam, rho=rho, objective=obj, rmse=err
            )
        )

    out = np.clip(unscale(u), lo, hi)
    trace.clamp = (lo, hi)
    return out, trace
