"""Spectral regularization families and a diagonal sequence-space testbed.

The testbed realizes the composed operator T = E* A with power-law singular
values and measures convergence rates of the a-priori parameter rule
empirically, so the asserted error bounds can be checked without any PDE
machinery.
"""

from dataclasses import dataclass, field

import numpy as np

FAMILIES = ("tikhonov", "tsvd")


@dataclass(frozen=True)
class RegularizerSpec:
    """A filter family q_alpha with constants (gamma, gamma_star) and
    qualification rho(lambda) = lambda**rho_power."""

    family: str
    gamma: float = 1.0
    gamma_star: float = 1.0
    rho_power: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family: {self.family}")

    def qualification(self, lam):
        return np.asarray(lam, dtype=float) ** self.rho_power


def tikhonov_spec() -> RegularizerSpec:
    return RegularizerSpec("tikhonov", rho_power=1.0)


def tsvd_spec(rho_power=3.0) -> RegularizerSpec:
    # spectral cutoff has arbitrary qualification; any power works
    return RegularizerSpec("tsvd", rho_power=rho_power)


def q_alpha(family: str, alpha: float, lam):
    """Filter value: tikhonov 1/(lambda+alpha); tsvd 1/lambda for lambda >= alpha,
    else 0 (the boundary lambda = alpha is kept)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    lam = np.asarray(lam, dtype=float)
    if family == "tikhonov":
        return 1.0 / (lam + alpha)
    if family == "tsvd":
        return np.where(lam >= alpha, 1.0 / np.maximum(lam, 1e-300), 0.0)
    raise ValueError(f"unknown family: {family}")


def verify_definition1(spec: RegularizerSpec, a: float,
                       alpha_grid=None, lam_grid=None) -> dict:
    """Check the defining filter bounds on sampled (alpha, lambda) grids.

    Verifies sup |1 - lambda q| <= gamma, sup alpha |q| <= gamma_star, and
    the qualification bound sup |1 - lambda q| rho(lambda) <= gamma rho(alpha)
    over lambda in (0, a]. Returns the observed maxima and a pass flag.

    The filter is evaluated as a black box, so residuals are formed as
    1 - lambda q in floating point. Where the exact residual is 0 (spectral
    cutoff above its threshold) that leaves a few ulps of roundoff, which
    the qualification ratio then divides by rho(alpha) at the smallest
    alpha; residuals below 1e-12 are therefore treated as exact zeros, and
    each bound gets a 1e-6 relative slack. Real violations (a family run
    with understated constants) overshoot by orders of magnitude, so the
    slack cannot mask one.
    """
    if alpha_grid is None:
        alpha_grid = np.logspace(np.log10(a) - 8, np.log10(a), 1000)
    if lam_grid is None:
        lam_grid = np.logspace(np.log10(a) - 8, np.log10(a), 1000)
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    lam = np.asarray(lam_grid, dtype=float)
    max_residual = 0.0
    max_filter = 0.0
    max_qual = 0.0
    rho_lam = spec.qualification(lam)
    for alpha in alpha_grid:
        qv = q_alpha(spec.family, alpha, lam)
        r = np.abs(1.0 - lam * qv)
        r[r < 1e-12] = 0.0
        max_residual = max(max_residual, float(r.max()))
        max_filter = max(max_filter, float(alpha * np.abs(qv).max()))
        max_qual = max(max_qual,
                       float((r * rho_lam).max() / spec.qualification(alpha)))
    slack = 1.0 + 1e-6
    passed = (max_residual <= spec.gamma * slack
              and max_filter <= spec.gamma_star * slack
              and max_qual <= spec.gamma * slack)
    return {
        "passed": bool(passed),
        "max_residual_bound": max_residual,
        "max_filter_bound": max_filter,
        "max_qualification_ratio": max_qual,
        "gamma": spec.gamma,
        "gamma_star": spec.gamma_star,
        "rho_power": spec.rho_power,
    }


@dataclass(frozen=True)
class DiagonalModel:
    """Sequence-space operator pair with power-law spectra.

    The embedding factor has s_j(EE*) = j**-(1+2a) and the forward map
    s_j(A) = j**-p, so T = E* A has singular values t_j = j**-p * j**-(1+2a)/2.
    The true solution has coefficients f_j = c * j**-(beta+1/2), normalized
    so that sum j**(2 beta) f_j^2 = 1 over the truncation: the exponent
    beta + 1/2 makes that sum log-divergent, which pins the coefficients to
    the boundary of the smoothness-beta source set with no spare decay. A
    steeper power law would carry extra smoothness and converge faster than
    the nominal worst-case rate, hiding the slope being measured.
    """

    a_exp: float
    p_exp: float
    beta: float
    J: int = 2000
    t: np.ndarray = field(init=False, repr=False)
    f: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if min(self.a_exp, self.p_exp, self.beta) <= 0 or self.J < 2:
            raise ValueError("exponents must be positive and J >= 2")
        j = np.arange(1, self.J + 1, dtype=float)
        t = j ** (-self.p_exp) * j ** (-(1.0 + 2.0 * self.a_exp) / 2.0)
        raw = j ** (-(self.beta + 0.5))
        c = 1.0 / np.sqrt(np.sum(j ** (2.0 * self.beta) * raw**2))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "f", c * raw)

    @property
    def exponent_sum(self) -> float:
        # 1 + 2a + 2p, the combined degree of smoothing of T*T's spectrum
        return 1.0 + 2.0 * self.a_exp + 2.0 * self.p_exp

    def expected_slope(self) -> float:
        return 2.0 * self.beta / (2.0 * self.beta + self.exponent_sum)

    def truncation_tail(self) -> float:
        # || f restricted to j > J ||, bounded via the integral tail
        c = self.f[0]
        return float(c * self.J ** (-self.beta) / np.sqrt(2.0 * self.beta))


def solve_diagonal(model: DiagonalModel, spec: RegularizerSpec,
                   delta: float, alpha: float, seed: int = 0) -> dict:
    """One noisy trial: g = t f + delta eta with eta a random unit vector,
    reconstruction coefficient-wise, reported as the l2 error to f."""
    rng = np.random.default_rng(seed)
    eta = rng.standard_normal(model.J)
    eta /= np.linalg.norm(eta)
    g = model.t * model.f + delta * eta
    lam = model.t**2
    f_rec = q_alpha(spec.family, alpha, lam) * model.t * g
    return {"error": float(np.linalg.norm(model.f - f_rec))}


def rate_experiment(model: DiagonalModel, spec: RegularizerSpec,
                    deltas, rule=None, n_seeds: int = 10) -> dict:
    """Fit the log-log error decay under an a-priori parameter rule.

    Parameters
    ----------
    deltas : array_like
        Noise levels spanning at least three decades.
    rule : callable, optional
        delta -> alpha. Default balances the bias and noise terms:
        alpha = delta ** (2 (1+2a+2p) / (2 beta + 1+2a+2p)).
    n_seeds : int
        Trials averaged per noise level (seeds 0..n_seeds-1).

    Returns keys slope, expected, table; table rows are
    (delta, alpha, mean error, std).
    """
    deltas = np.asarray(deltas, dtype=float)
    if deltas.size < 2 or deltas.max() / deltas.min() < 999.0:
        raise ValueError("need a delta grid spanning at least three decades")
    if rule is None:
        expo = 2.0 * model.exponent_sum / (2.0 * model.beta + model.exponent_sum)
        rule = lambda d: d**expo
    table = []
    means = []
    for d in deltas:
        alpha = float(rule(d))
        errs = [solve_diagonal(model, spec, d, alpha, seed)["error"]
                for seed in range(n_seeds)]
        table.append((float(d), alpha, float(np.mean(errs)), float(np.std(errs))))
        means.append(np.mean(errs))
    means = np.asarray(means)
    # Truncating the sequence drops the tail of f from every measured l2
    # error. Errors combine in quadrature, so the distortion of the smallest
    # mean error is sqrt(e^2 + tail^2)/e - 1; require that to stay under 1%
    # so the slope fit cannot be flattened by under-truncation.
    tail = model.truncation_tail()
    floor = means.min()
    if np.hypot(floor, tail) > 1.01 * floor:
        raise ValueError(
            f"truncation too coarse: tail {tail:.3e} would distort the "
            f"smallest mean error {floor:.3e} by more than 1%; increase J")
    slope = float(np.polyfit(np.log(deltas), np.log(means), 1)[0])
    return {"slope": slope, "expected": model.expected_slope(), "table": table}
