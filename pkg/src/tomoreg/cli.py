"""Command-line front end: one binary, subcommand per pipeline stage.

Every run writes a JSON report with the fully resolved configuration, PRNG
name where randomness is involved, and the paths of emitted artifacts.
Numeric settings can also come from a key=value config file given with
--config; explicit flags win on conflict. Exit status: 0 success, 1 for
validation or IO failures (one-line `error: ...` on stderr), 2 usage.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import figures, io, metrics
from .noise import GENERATOR_NAME, NoiseSpec, add_noise, noise_norms
from .params import AlphaGrid, modified_lcurve, sweep_reconstructions
from .phantoms import PRESETS, render
from .radon import extend_half_turn, project
from .recon import ReconConfig, fbp_baseline, polar_resample, \
    synthesize_image, tikhonov_filter
from .spectral import DiagonalModel, rate_experiment, tikhonov_spec, tsvd_spec


def _grid_spec(text):
    """Parse 'lo:hi:n' into (lo, hi, n)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


# (flag, dest, type, default, required, help) per subcommand; defaults listed
# here are the documented module-level defaults.
_COMMON = [
    ("--out", "out", str, ".", False, "output directory (default .)"),
    ("--config", "config", str, None, False,
     "key=value file mirroring flag names; flags win"),
]

_FLAGS = {
    "phantom": [
        ("--kind", "kind", str, "gaussian", False,
         "gaussian | disk | cheese (default gaussian)"),
        ("--M", "M", int, 128, False, "image half pixel count (default 128)"),
        ("--tau", "tau", float, 1.0, False, "image half width (default 1)"),
    ],
    "project": [
        ("--in", "infile", str, None, True, "input IMG1 image"),
        ("--p", "p", int, 180, False, "angle count (default 180)"),
        ("--q", "q", int, 128, False, "radial half-count (default 128)"),
        ("--rho", "rho", float, 1.0, False, "offset support radius (default 1)"),
    ],
    "noise": [
        ("--in", "infile", str, None, True, "input SIN1 sinogram"),
        ("--delta", "delta", float, None, True, "relative noise level"),
        ("--seed", "seed", int, 0, False, "PRNG seed (default 0)"),
        ("--s", "s", float, 1.2, False,
         "order for the dual-norm diagnostic (default 1.2)"),
    ],
    "reconstruct": [
        ("--in", "infile", str, None, True, "input SIN1 sinogram"),
        ("--M", "M", int, 128, False, "image half pixel count (default 128)"),
        ("--tau", "tau", float, 1.0, False, "image half width (default 1)"),
        ("--alpha", "alpha", float, None, True, "regularization parameter"),
        ("--s", "s", float, 1.2, False, "smoothing order (default 1.2)"),
        ("--d", "d", int, 2, False, "frequency oversampling (default 2)"),
        ("--N", "N", float, None, False, "bandwidth (default pi M / tau)"),
        ("--ref", "ref", str, None, False, "reference IMG1 for metrics"),
    ],
    "fbp": [
        ("--in", "infile", str, None, True, "input SIN1 sinogram"),
        ("--M", "M", int, 128, False, "image half pixel count (default 128)"),
        ("--tau", "tau", float, 1.0, False, "image half width (default 1)"),
        ("--cutoff", "cutoff", float, None, False,
         "ramp cutoff (default radial Nyquist pi q / rho)"),
        ("--ref", "ref", str, None, False, "reference IMG1 for metrics"),
    ],
    "sweep": [
        ("--in", "infile", str, None, True, "input SIN1 sinogram"),
        ("--ref", "ref", str, None, True, "reference IMG1 for error metrics"),
        ("--M", "M", int, 128, False, "image half pixel count (default 128)"),
        ("--tau", "tau", float, 1.0, False, "image half width (default 1)"),
        ("--s", "s", float, 1.2, False, "smoothing order (default 1.2)"),
        ("--d", "d", int, 2, False, "frequency oversampling (default 2)"),
        ("--N", "N", float, None, False, "bandwidth (default pi M / tau)"),
        ("--alpha-grid", "alpha_grid", _grid_spec, (1e-12, 10.0, 27), False,
         "lo:hi:n log grid (default 1e-12:10:27)"),
        ("--threads", "threads", int, 1, False,
         "parallel workers; results do not depend on it (default 1)"),
    ],
    "lcurve": [
        ("--in", "infile", str, None, True, "input SIN1 sinogram"),
        ("--M", "M", int, 128, False, "image half pixel count (default 128)"),
        ("--tau", "tau", float, 1.0, False, "image half width (default 1)"),
        ("--s", "s", float, 1.2, False, "smoothing order (default 1.2)"),
        ("--d", "d", int, 2, False, "frequency oversampling (default 2)"),
        ("--N", "N", float, None, False, "bandwidth (default pi M / tau)"),
        ("--alpha-grid", "alpha_grid", _grid_spec, (1e-12, 10.0, 27), False,
         "lo:hi:n log grid (default 1e-12:10:27)"),
        ("--ref", "ref", str, None, False,
         "reference IMG1, adds an error column"),
        ("--threads", "threads", int, 1, False,
         "parallel workers; results do not depend on it (default 1)"),
    ],
    "metrics": [
        ("--in", "infile", str, None, True, "reconstruction IMG1"),
        ("--ref", "ref", str, None, True, "reference IMG1"),
    ],
    "rates": [
        ("--family", "family", str, "tikhonov", False,
         "tikhonov | tsvd (default tikhonov)"),
        ("--a", "a_exp", float, 0.5, False,
         "embedding eigenvalue exponent (default 0.5)"),
        ("--p-exp", "p_exp", float, 1.0, False,
         "forward-map exponent (default 1)"),
        ("--beta", "beta", float, 1.0, False, "smoothness (default 1)"),
        ("--J", "J", int, 2000, False, "truncation length (default 2000)"),
        ("--trials", "trials", int, 10, False,
         "seeds averaged per noise level (default 10)"),
        ("--delta-grid", "delta_grid", _grid_spec, (1e-1, 1e-4, 10), False,
         "lo:hi:n log grid of noise levels (default 1e-1:1e-4:10)"),
    ],
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tomoreg",
        description="Tomographic reconstruction via Fourier-domain "
                    "Tikhonov filtering, with baselines and diagnostics.")
    subs = parser.add_subparsers(dest="command", required=True)
    for cmd, flags in _FLAGS.items():
        sub = subs.add_parser(cmd)
        for flag, dest, typ, _default, _req, help_text in flags + _COMMON:
            # None defaults everywhere; resolution order is flag, config
            # file, documented default, so "flags win" stays exact
            sub.add_argument(flag, dest=dest, type=typ, default=None,
                             help=help_text)
    return parser


def _read_config_file(path):
    values = {}
    for ln, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{ln}: expected key = value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    return values


def _resolve(args, parser):
    flags = _FLAGS[args.command] + _COMMON
    file_vals = {}
    if args.config is not None:
        file_vals = _read_config_file(args.config)
        known = {f[0].lstrip("-") for f in flags}
        for key in file_vals:
            if key not in known:
                parser.error(f"unknown config key {key!r} for {args.command}")
    cfg = {}
    for flag, dest, typ, default, required, _help in flags:
        val = getattr(args, dest)
        if val is None and flag.lstrip("-") in file_vals:
            raw = file_vals[flag.lstrip("-")]
            try:
                val = typ(raw)
            except (TypeError, ValueError, argparse.ArgumentTypeError) as exc:
                raise ValueError(f"config key {flag.lstrip('-')!r}: {exc}")
        if val is None:
            val = default
        if val is None and required:
            parser.error(f"{flag} is required for {args.command}")
        cfg[dest] = val
    return cfg


def _report(outdir, command, cfg, artifacts, extras=None, prng=None, rows=None):
    doc = {
        "command": command,
        "config": {k: (list(v) if isinstance(v, tuple) else v)
                   for k, v in cfg.items()},
        "artifacts": [str(a) for a in artifacts],
    }
    if prng:
        doc["prng"] = prng
    if rows:
        doc["metrics"] = [r.as_dict() for r in rows]
    if extras:
        doc.update(extras)
    path = Path(outdir) / f"{command}_report.json"
    io.write_json(path, doc)
    return path


def _alphas(cfg):
    lo, hi, n = cfg["alpha_grid"]
    return AlphaGrid(lo, hi, n).values()


def _recon_cfg(cfg, alpha=0.0):
    return ReconConfig(M=cfg["M"], tau=cfg["tau"], alpha=alpha, s=cfg["s"],
                       d=cfg["d"], N=cfg["N"])


def _metric_rows(img, cfg, label, **kw):
    if not cfg.get("ref"):
        return []
    ref = io.read_image(cfg["ref"])
    return [metrics.evaluate(img.values, ref.values, label, **kw)]


def cmd_phantom(cfg):
    if cfg["kind"] not in PRESETS:
        raise ValueError(f"unknown phantom kind {cfg['kind']!r}; "
                         f"choose from {sorted(PRESETS)}")
    img = render(PRESETS[cfg["kind"]](), cfg["M"], cfg["tau"])
    out = Path(cfg["out"])
    img_path = out / "phantom.img1"
    io.write_image(img_path, img)
    fig = figures.save_image(img, out / "phantom.png", title=cfg["kind"])
    _report(out, "phantom", cfg, [img_path, fig])
    return 0


def cmd_project(cfg):
    img = io.read_image(cfg["infile"])
    sino = project(img, cfg["p"], cfg["q"], cfg["rho"])
    out = Path(cfg["out"])
    sin_path = out / "sinogram.sin1"
    io.write_sinogram(sin_path, sino)
    fig = figures.save_sinogram(sino, out / "sinogram.png")
    _report(out, "project", cfg, [sin_path, fig])
    return 0


def cmd_noise(cfg):
    sino = io.read_sinogram(cfg["infile"])
    noisy = add_noise(sino, NoiseSpec(delta=cfg["delta"], seed=cfg["seed"]))
    out = Path(cfg["out"])
    sin_path = out / "noisy.sin1"
    io.write_sinogram(sin_path, noisy)
    fig = figures.save_sinogram(noisy, out / "noisy.png",
                                title=f"delta={cfg['delta']}")
    norms = noise_norms(sino, noisy, cfg["s"])
    _report(out, "noise", cfg, [sin_path, fig], prng=GENERATOR_NAME,
            extras={"noise_norms": norms})
    return 0


def cmd_reconstruct(cfg):
    sino = io.read_sinogram(cfg["infile"])
    rc = _recon_cfg(cfg, alpha=cfg["alpha"])
    grid = rc.grid()
    spectrum = polar_resample(extend_half_turn(sino), grid)
    img, imag_rel = synthesize_image(tikhonov_filter(spectrum, rc), grid,
                                     rc.M, rc.tau)
    out = Path(cfg["out"])
    img_path = out / "recon.img1"
    io.write_image(img_path, img)
    fig = figures.save_image(img, out / "recon.png",
                             title=f"alpha={cfg['alpha']:.2e}")
    rows = _metric_rows(img, cfg, "tikhonov-fourier", alpha=cfg["alpha"])
    _report(out, "reconstruct", cfg, [img_path, fig], rows=rows,
            extras={"imag_residual": imag_rel, "N_resolved": rc.N})
    return 0


def cmd_fbp(cfg):
    sino = io.read_sinogram(cfg["infile"])
    img = fbp_baseline(sino, cfg["M"], cfg["tau"], cutoff=cfg["cutoff"])
    out = Path(cfg["out"])
    img_path = out / "fbp.img1"
    io.write_image(img_path, img)
    fig = figures.save_image(img, out / "fbp.png", title="fbp")
    rows = _metric_rows(img, cfg, "fbp")
    _report(out, "fbp", cfg, [img_path, fig], rows=rows)
    return 0


def cmd_sweep(cfg):
    sino = io.read_sinogram(cfg["infile"])
    ref = io.read_image(cfg["ref"])
    alphas = _alphas(cfg)
    images = sweep_reconstructions(sino, _recon_cfg(cfg), alphas,
                                   threads=cfg["threads"])
    rel = [np.linalg.norm(im.values - ref.values) / np.linalg.norm(ref.values)
           for im in images]
    rows = [metrics.evaluate(im.values, ref.values, "tikhonov-fourier",
                             alpha=float(al))
            for al, im in zip(alphas, images)]
    out = Path(cfg["out"])
    csv_path = out / "sweep.csv"
    io.write_csv(csv_path, ["alpha", "rel_error", "mse", "psnr", "ssim"],
                 [(float(al), float(e), r.mse, r.psnr, r.ssim)
                  for al, e, r in zip(alphas, rel, rows)])
    fig = figures.save_sweep(alphas, {"relative error": rel,
                                      "psnr [dB]": [r.psnr for r in rows]},
                             out / "sweep.png")
    best = int(np.argmin(rel))
    _report(out, "sweep", cfg, [csv_path, fig], rows=rows,
            extras={"best_alpha": float(alphas[best]),
                    "best_rel_error": float(rel[best])})
    return 0


def cmd_lcurve(cfg):
    sino = io.read_sinogram(cfg["infile"])
    alphas = _alphas(cfg)
    result = modified_lcurve(sino, _recon_cfg(cfg), alphas,
                             threads=cfg["threads"])
    out = Path(cfg["out"])
    header = ["alpha", "residual2", "norm2", "score"]
    rows = result.rows()
    if cfg.get("ref"):
        ref = io.read_image(cfg["ref"])
        images = sweep_reconstructions(sino, _recon_cfg(cfg), alphas)
        errs = [np.linalg.norm(im.values - ref.values)
                / np.linalg.norm(ref.values) for im in images]
        header.append("rel_error")
        rows = [r + (float(e),) for r, e in zip(rows, errs)]
    csv_path = out / "lcurve.csv"
    io.write_csv(csv_path, header,
                 [tuple(float(v) for v in row) for row in rows])
    fig = figures.save_lcurve(result, out / "lcurve.png")
    _report(out, "lcurve", cfg, [csv_path, fig],
            extras={"alpha_star": result.alpha_star})
    return 0


def cmd_metrics(cfg):
    img = io.read_image(cfg["infile"])
    ref = io.read_image(cfg["ref"])
    row = metrics.evaluate(img.values, ref.values, "image-vs-reference")
    out = Path(cfg["out"])
    fig = figures.save_image(img, out / "metrics_input.png", title="input")
    _report(out, "metrics", cfg, [fig], rows=[row])
    return 0


def cmd_rates(cfg):
    if cfg["family"] not in ("tikhonov", "tsvd"):
        raise ValueError(f"unknown family {cfg['family']!r}")
    model = DiagonalModel(a_exp=cfg["a_exp"], p_exp=cfg["p_exp"],
                          beta=cfg["beta"], J=cfg["J"])
    spec = tikhonov_spec() if cfg["family"] == "tikhonov" else tsvd_spec()
    lo, hi, n = cfg["delta_grid"]
    deltas = np.logspace(np.log10(lo), np.log10(hi), n)
    result = rate_experiment(model, spec, deltas, n_seeds=cfg["trials"])
    out = Path(cfg["out"])
    csv_path = out / "rates.csv"
    io.write_csv(csv_path, ["delta", "alpha", "mean_error", "std_error"],
                 result["table"])
    fig = figures.save_rates(result["table"], result["slope"],
                             result["expected"], out / "rates.png")
    _report(out, "rates", cfg, [csv_path, fig], prng=GENERATOR_NAME,
            extras={"slope": result["slope"],
                    "expected": result["expected"]})
    return 0


_HANDLERS = {
    "phantom": cmd_phantom,
    "project": cmd_project,
    "noise": cmd_noise,
    "reconstruct": cmd_reconstruct,
    "fbp": cmd_fbp,
    "sweep": cmd_sweep,
    "lcurve": cmd_lcurve,
    "metrics": cmd_metrics,
    "rates": cmd_rates,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args, parser)
        Path(cfg["out"]).mkdir(parents=True, exist_ok=True)
        return _HANDLERS[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
