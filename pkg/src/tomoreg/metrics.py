"""Image-quality metrics: MSE, PSNR, and single-scale SSIM."""

from dataclasses import dataclass, asdict

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

SSIM_WINDOW = 8


@dataclass(frozen=True)
class MetricsRow:
    method: str
    mse: float
    psnr: float
    ssim: float
    alpha: float = None
    delta: float = None
    seed: int = None

    def as_dict(self):
        return asdict(self)


def _check_pair(x, ref):
    x = np.asarray(x, dtype=float)
    ref = np.asarray(ref, dtype=float)
    if x.shape != ref.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {ref.shape}")
    return x, ref


def mse(x, ref) -> float:
    """Mean over all pixels of the squared difference."""
    x, ref = _check_pair(x, ref)
    return float(np.mean((x - ref) ** 2))


def psnr(x, ref) -> float:
    """10 log10(peak^2 / mse) in dB, peak = max(ref) - min(ref).

    A zero misfit is reported as +inf.
    """
    x, ref = _check_pair(x, ref)
    err = mse(x, ref)
    peak = float(ref.max() - ref.min())
    if err == 0.0:
        return float("inf")
    return float(10.0 * np.log10(peak**2 / err))


def ssim(x, ref) -> float:
    """Single-scale structural similarity, mean over 8x8 windows, stride 1.

    Constants C1 = (0.01 L)^2 and C2 = (0.03 L)^2 with L the dynamic range
    of the reference (L is the one asymmetry between the arguments; a flat
    reference falls back to L = 1). Variances are biased window moments.
    """
    x, ref = _check_pair(x, ref)
    w = SSIM_WINDOW
    if min(x.shape) < w:
        raise ValueError(f"images must be at least {w}x{w}")
    L = float(ref.max() - ref.min())
    if L == 0.0:
        L = 1.0
    c1 = (0.01 * L) ** 2
    c2 = (0.03 * L) ** 2
    def win_mean(a):
        return sliding_window_view(a, (w, w)).mean(axis=(2, 3))
    mu_x = win_mean(x)
    mu_y = win_mean(ref)
    sxx = win_mean(x * x) - mu_x * mu_x
    syy = win_mean(ref * ref) - mu_y * mu_y
    sxy = win_mean(x * ref) - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + c1) * (2.0 * sxy + c2)
    den = (mu_x**2 + mu_y**2 + c1) * (sxx + syy + c2)
    return float(np.mean(num / den))


def evaluate(x, ref, method: str, alpha=None, delta=None, seed=None) -> MetricsRow:
    """All three metrics against a reference image as one labeled row."""
    return MetricsRow(method=method, mse=mse(x, ref), psnr=psnr(x, ref),
                      ssim=ssim(x, ref), alpha=alpha, delta=delta, seed=seed)
