"""Tomographic reconstruction by Fourier-domain Tikhonov filtering.

Parallel-beam forward model, Sobolev-embedding preprocessing, a closed-form
spectral reconstruction filter, classical FBP and diagonal-testbed baselines,
plus noise synthesis, parameter-choice rules and quality metrics.
"""

from .grids import (FrequencyGrid2D, apply_embedding_adjoint_1d,
                    bessel_multiplier, hs_norm)
from .metrics import evaluate, mse, psnr, ssim
from .noise import NoiseSpec, add_noise, noise_norms
from .params import AlphaGrid, LCurveResult, apriori_alpha, discrepancy, \
    modified_lcurve, sweep_reconstructions
from .phantoms import (Image2D, PhantomSpec, analytic_radon,
                       analytic_sinogram, cheese_spec, disk_spec,
                       gaussian_spec, render)
from .radon import Sinogram, backproject, extend_half_turn, project
from .recon import (PolarSpectrum, ReconConfig, fbp_baseline, polar_resample,
                    reconstruct, synthesize_image, tikhonov_filter)
from .spectral import (DiagonalModel, RegularizerSpec, q_alpha,
                       rate_experiment, solve_diagonal, tikhonov_spec,
                       tsvd_spec, verify_definition1)

__version__ = "0.1.0"
