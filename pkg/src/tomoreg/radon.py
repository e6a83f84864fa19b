"""Discrete parallel-beam projector, backprojector and half-turn extension."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Sinogram:
    """Line-integral data on angles x offsets.

    values has shape (n_angles, 2q+1) sampled at offsets kappa_l = l rho / q,
    l in [-q, q]. For data built by `project` or `analytic_sinogram` the
    angles are the half turn phi_j = j pi / p; `extend_half_turn` produces a
    full-turn sinogram with the same angular step, carried in `angles`.
    Measurements vanish for |kappa| > rho (support assumption).
    """

    values: np.ndarray
    q: int
    rho: float
    angles: np.ndarray = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 * self.q + 1:
            raise ValueError("sinogram must have 2q+1 offset columns")
        if v.shape[0] < 2 or self.q < 1 or not self.rho > 0:
            raise ValueError("need p >= 2, q >= 1, rho > 0")
        object.__setattr__(self, "values", v)
        if self.angles is None:
            object.__setattr__(
                self, "angles", np.arange(v.shape[0]) * np.pi / v.shape[0])
        elif len(self.angles) != v.shape[0]:
            raise ValueError("angles must match the number of rows")

    @property
    def p(self) -> int:
        return self.values.shape[0]

    @property
    def h_kappa(self) -> float:
        return self.rho / self.q

    @property
    def angle_step(self) -> float:
        # equals pi/p for half-turn data; quadrature weight per angle
        return float(self.angles[1] - self.angles[0])

    def kappas(self) -> np.ndarray:
        return np.arange(-self.q, self.q + 1) * self.h_kappa

    def l2_norm(self) -> float:
        w = self.angle_step * self.h_kappa
        return float(np.sqrt(w * np.sum(self.values**2)))

    def same_geometry(self, other) -> bool:
        return (self.values.shape == other.values.shape
                and self.q == other.q and self.rho == other.rho)


def _bilinear(values, X1, X2, M, h_x):
    # gather with zero outside the grid
    gi = X1 / h_x + M
    gj = X2 / h_x + M
    n = 2 * M + 1
    i0 = np.floor(gi).astype(np.int64)
    j0 = np.floor(gj).astype(np.int64)
    fi = gi - i0
    fj = gj - j0
    out = np.zeros_like(gi)
    for di in (0, 1):
        for dj in (0, 1):
            ii = i0 + di
            jj = j0 + dj
            w = (fi if di else 1.0 - fi) * (fj if dj else 1.0 - fj)
            inside = (ii >= 0) & (ii < n) & (jj >= 0) & (jj < n)
            out[inside] += w[inside] * values[ii[inside], jj[inside]]
    return out


def project(f, p: int, q: int, rho: float) -> Sinogram:
    """Discrete Radon transform of an image.

    For each angle phi_j = j pi / p and offset kappa_l = l rho / q the line
    integral is approximated by sampling f along the line at step h_x with
    bilinear interpolation and summing with weight h_x. The sample extent
    tau sqrt(2) covers the whole pixel square.

    Parameters
    ----------
    f : Image2D
    p, q : int
        Angle count and radial half-count.
    rho : float
        Offset support radius; the image support should lie inside it.
    """
    M, h_x, tau = f.M, f.h_x, f.tau
    angles = np.arange(p) * np.pi / p
    kappas = np.arange(-q, q + 1) * rho / q
    tmax = tau * np.sqrt(2.0)
    nt = int(np.ceil(2.0 * tmax / h_x)) + 1
    t = -tmax + np.arange(nt) * h_x
    out = np.zeros((p, 2 * q + 1))
    for j in range(p):
        c, s = np.cos(angles[j]), np.sin(angles[j])
        # line x = kappa theta + t theta_perp, theta_perp = (-sin, cos)
        X1 = kappas[:, None] * c - t[None, :] * s
        X2 = kappas[:, None] * s + t[None, :] * c
        out[j] = _bilinear(f.values, X1, X2, M, h_x).sum(axis=1) * h_x
    return Sinogram(out, q=q, rho=float(rho))


def backproject(g: Sinogram, M: int, tau: float):
    """Dual operator: sum of g(theta_j, x.theta_j) with weight = angle step.

    Linear interpolation in kappa, zero outside [-rho, rho]. Together with
    the quadrature weights (pi/p)(rho/q) on sinograms and h_x^2 on images
    this is the discrete adjoint of `project` up to interpolation error.
    """
    from .phantoms import Image2D

    h_x = tau / M
    x = np.arange(-M, M + 1) * h_x
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    kappas = g.kappas()
    acc = np.zeros_like(X1)
    for j in range(g.p):
        kap = X1 * np.cos(g.angles[j]) + X2 * np.sin(g.angles[j])
        acc += np.interp(kap, kappas, g.values[j], left=0.0, right=0.0)
    return Image2D(acc * g.angle_step, float(tau))


def extend_half_turn(y: Sinogram) -> Sinogram:
    """Extend half-turn data to the full circle via y(phi+pi, kappa) = y(phi, -kappa).

    Returns a 2p-angle sinogram with rows j < p copied verbatim and rows
    j + p holding the offset-reversed data; applied to noisy values as is.
    """
    ext = np.concatenate([y.values, y.values[:, ::-1]], axis=0)
    angles = np.arange(2 * y.p) * (np.pi / y.p)
    return Sinogram(ext, q=y.q, rho=y.rho, angles=angles)
