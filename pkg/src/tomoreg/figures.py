"""Matplotlib renderings of images, sinograms and diagnostic curves."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return str(path)


def save_image(img, path, title=None):
    fig, ax = plt.subplots(figsize=(5, 4.2))
    t = img.tau
    im = ax.imshow(img.values.T, origin="lower", extent=(-t, t, -t, t),
                   cmap="gray")
    fig.colorbar(im, ax=ax, shrink=0.85)
    if title:
        ax.set_title(title)
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    return _save(fig, path)


def save_sinogram(sino, path, title=None):
    fig, ax = plt.subplots(figsize=(5.4, 4))
    ext = (float(sino.angles[0]), float(sino.angles[-1]), -sino.rho, sino.rho)
    im = ax.imshow(sino.values.T, origin="lower", extent=ext, aspect="auto",
                   cmap="gray")
    fig.colorbar(im, ax=ax, shrink=0.85)
    if title:
        ax.set_title(title)
    ax.set_xlabel("angle [rad]")
    ax.set_ylabel("offset")
    return _save(fig, path)


def save_sweep(alphas, curves, path):
    """curves: dict of label -> values over alphas, one panel per curve."""
    fig, axes = plt.subplots(len(curves), 1, sharex=True,
                             figsize=(5.6, 2.2 * len(curves)), squeeze=False)
    for ax, (label, vals) in zip(axes[:, 0], curves.items()):
        ax.plot(alphas, vals, marker="o", ms=3)
        ax.set_xscale("log")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
    axes[-1, 0].set_xlabel("alpha")
    return _save(fig, path)


def save_lcurve(result, path):
    fig, ax = plt.subplots(figsize=(5.6, 4))
    ax.loglog(result.alphas, result.score, marker="o", ms=3)
    ax.axvline(result.alpha_star, color="tab:red", lw=1,
               label=f"selected {result.alpha_star:.2e}")
    ax.set_xlabel("alpha")
    ax.set_ylabel("residual$^2$ x norm$^2$")
    ax.legend()
    ax.grid(alpha=0.3)
    return _save(fig, path)


def save_rates(table, slope, expected, path):
    deltas = np.array([row[0] for row in table])
    means = np.array([row[2] for row in table])
    stds = np.array([row[3] for row in table])
    fig, ax = plt.subplots(figsize=(5.6, 4))
    ax.errorbar(deltas, means, yerr=stds, marker="o", ms=4, lw=1,
                label=f"measured, slope {slope:.3f}")
    anchor = means[-1] * (deltas / deltas[-1]) ** expected
    ax.loglog(deltas, anchor, "--", color="gray",
              label=f"expected slope {expected:.3f}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("noise level delta")
    ax.set_ylabel("mean error")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    return _save(fig, path)
