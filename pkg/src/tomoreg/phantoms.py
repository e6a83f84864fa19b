"""Synthetic test densities with closed-form line integrals.

Each phantom is a superposition of components (disks, rotated ellipses,
gaussian blobs) whose chord integrals are known exactly, so rendered images
come with an analytic sinogram oracle.
"""

from dataclasses import dataclass, field

import numpy as np

from .radon import Sinogram


@dataclass(frozen=True)
class Disk:
    center: tuple
    radius: float
    density: float


@dataclass(frozen=True)
class Ellipse:
    """Axes a, b along the frame rotated by `angle`; hard support."""

    center: tuple
    a: float
    b: float
    angle: float
    density: float


@dataclass(frozen=True)
class GaussianBlob:
    """density * exp(-|x - center|^2 / width^2); no hard support."""

    center: tuple = (0.0, 0.0)
    width: float = 1.0
    density: float = 1.0


@dataclass(frozen=True)
class PhantomSpec:
    components: tuple = field(default_factory=tuple)


def gaussian_spec(width=1.0, density=1.0) -> PhantomSpec:
    return PhantomSpec((GaussianBlob((0.0, 0.0), width, density),))


def disk_spec(radius=0.9, density=1.0) -> PhantomSpec:
    return PhantomSpec((Disk((0.0, 0.0), radius, density),))


def cheese_spec() -> PhantomSpec:
    """Disk with elliptical and circular holes; piecewise-constant test image."""
    return PhantomSpec((
        Disk((0.0, 0.0), 0.72, 1.0),
        Ellipse((-0.25, 0.20), 0.25, 0.15, 0.5, -0.8),
        Ellipse((0.30, -0.12), 0.18, 0.30, -0.3, -0.8),
        Disk((0.05, -0.42), 0.12, -0.8),
    ))


PRESETS = {
    "gaussian": gaussian_spec,
    "disk": disk_spec,
    "cheese": cheese_spec,
}


@dataclass(frozen=True)
class Image2D:
    """Square nodal image on (m1 h_x, m2 h_x), m in [-M, M]^2, h_x = tau / M."""

    values: np.ndarray
    tau: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2 != 1:
            raise ValueError("image must be square with odd side")
        if not self.tau > 0:
            raise ValueError("half-width tau must be positive")
        if not np.all(np.isfinite(v)):
            raise ValueError("image values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return (self.values.shape[0] - 1) // 2

    @property
    def h_x(self) -> float:
        return self.tau / self.M

    def axis(self) -> np.ndarray:
        return np.arange(-self.M, self.M + 1) * self.h_x

    def l2_norm(self) -> float:
        return float(self.h_x * np.sqrt(np.sum(self.values**2)))


def _check_support(comp):
    # hard-supported components must stay inside the unit ball
    c = float(np.hypot(*comp.center))
    if isinstance(comp, Disk) and c + comp.radius > 1.0 + 1e-12:
        raise ValueError(f"disk extends outside the unit ball: {comp}")
    if isinstance(comp, Ellipse) and c + max(comp.a, comp.b) > 1.0 + 1e-12:
        raise ValueError(f"ellipse extends outside the unit ball: {comp}")


def render(spec: PhantomSpec, M: int, tau: float) -> Image2D:
    """Pointwise evaluation of the density at the grid nodes.

    Rejects disk and ellipse components that extend outside the unit ball.
    Gaussian blobs have unbounded support and are accepted as is; choose tau
    large enough that the boundary values are negligible.
    """
    if M < 1 or not tau > 0:
        raise ValueError("need M >= 1 and tau > 0")
    x = np.arange(-M, M + 1) * (tau / M)
    X1, X2 = np.meshgrid(x, x, indexing="ij")
    out = np.zeros_like(X1)
    for comp in spec.components:
        _check_support(comp)
        c1, c2 = comp.center
        if isinstance(comp, Disk):
            out += comp.density * (((X1 - c1) ** 2 + (X2 - c2) ** 2)
                                   <= comp.radius**2)
        elif isinstance(comp, Ellipse):
            u = (X1 - c1) * np.cos(comp.angle) + (X2 - c2) * np.sin(comp.angle)
            v = -(X1 - c1) * np.sin(comp.angle) + (X2 - c2) * np.cos(comp.angle)
            out += comp.density * ((u / comp.a) ** 2 + (v / comp.b) ** 2 <= 1.0)
        elif isinstance(comp, GaussianBlob):
            r2 = (X1 - c1) ** 2 + (X2 - c2) ** 2
            out += comp.density * np.exp(-r2 / comp.width**2)
        else:
            raise ValueError(f"unsupported component kind: {type(comp).__name__}")
    return Image2D(out, float(tau))


def analytic_radon(spec: PhantomSpec, theta, kappa):
    """Exact line integrals R f(theta, kappa), broadcast over the inputs.

    theta is the normal angle in radians (line x.theta = kappa). Chords:
    disk 2 rho sqrt(r^2 - k'^2); ellipse 2 rho a b sqrt(l^2 - k'^2) / l^2
    with l^2 = a^2 cos^2(theta-psi) + b^2 sin^2(theta-psi); gaussian blob
    rho w sqrt(pi) exp(-k'^2 / w^2). k' is the offset in the component frame.
    """
    theta = np.asarray(theta, dtype=float)
    kappa = np.asarray(kappa, dtype=float)
    th1, th2 = np.cos(theta), np.sin(theta)
    out = np.zeros(np.broadcast(theta, kappa).shape)
    for comp in spec.components:
        c1, c2 = comp.center
        kp = kappa - (c1 * th1 + c2 * th2)
        if isinstance(comp, Disk):
            gap = comp.radius**2 - kp**2
            out += np.where(gap >= 0,
                            2.0 * comp.density * np.sqrt(np.maximum(gap, 0.0)),
                            0.0)
        elif isinstance(comp, Ellipse):
            ell2 = (comp.a**2 * np.cos(theta - comp.angle) ** 2
                    + comp.b**2 * np.sin(theta - comp.angle) ** 2)
            gap = ell2 - kp**2
            out += np.where(gap >= 0,
                            2.0 * comp.density * comp.a * comp.b
                            * np.sqrt(np.maximum(gap, 0.0)) / ell2,
                            0.0)
        elif isinstance(comp, GaussianBlob):
            out += (comp.density * comp.width * np.sqrt(np.pi)
                    * np.exp(-(kp / comp.width) ** 2))
        else:
            raise ValueError(f"unsupported component kind: {type(comp).__name__}")
    return out


def analytic_sinogram(spec: PhantomSpec, p: int, q: int, rho: float) -> Sinogram:
    """Exact sinogram on the standard half-turn grid (j pi/p, l rho/q)."""
    angles = np.arange(p) * np.pi / p
    kappas = np.arange(-q, q + 1) * rho / q
    values = analytic_radon(spec, angles[:, None], kappas[None, :])
    return Sinogram(values, q=q, rho=float(rho))
