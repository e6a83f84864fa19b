import json

import numpy as np
import pytest

from tomoreg import io
from tomoreg.cli import main


def run(*args):
    return main([str(a) for a in args])


def test_pipeline_phantom_project_reconstruct(tmp_path, capsys):
    d = tmp_path
    assert run("phantom", "--kind", "gaussian", "--M", 48, "--tau", 3.0,
               "--out", d) == 0
    assert run("project", "--in", d / "phantom.img1", "--p", 60, "--q", 48,
               "--rho", 3.0, "--out", d) == 0
    assert run("reconstruct", "--in", d / "sinogram.sin1", "--M", 48,
               "--tau", 3.0, "--alpha", 1e-10,
               "--ref", d / "phantom.img1", "--out", d) == 0
    capsys.readouterr()
    ref = io.read_image(d / "phantom.img1")
    rec = io.read_image(d / "recon.img1")
    err = np.linalg.norm(rec.values - ref.values) / np.linalg.norm(ref.values)
    assert err <= 0.05
    report = json.loads((d / "reconstruct_report.json").read_text())
    assert report["command"] == "reconstruct"
    assert report["config"]["alpha"] == 1e-10
    assert report["metrics"][0]["method"] == "tikhonov-fourier"
    assert report["imag_residual"] <= 1e-3
    for name in ("phantom.png", "sinogram.png", "recon.png"):
        assert (d / name).stat().st_size > 0


def test_corrupt_input_fails_with_one_line_error(tmp_path, capsys):
    sino_path = tmp_path / "t.sin1"
    io.write_sinogram(sino_path, _tiny_sinogram())
    sino_path.write_bytes(sino_path.read_bytes()[:40])
    code = run("reconstruct", "--in", sino_path, "--alpha", 1e-6,
               "--out", tmp_path)
    captured = capsys.readouterr()
    assert code == 1
    assert captured.err.startswith("error: ")
    assert "byte" in captured.err
    assert captured.err.strip().count("\n") == 0


def _tiny_sinogram():
    from tomoreg.phantoms import analytic_sinogram, gaussian_spec
    return analytic_sinogram(gaussian_spec(), p=30, q=24, rho=3.0)


def test_config_file_fills_gaps_but_flags_win(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# phantom geometry\nkind = disk\nM = 24\ntau = 2.0\n")
    assert run("phantom", "--config", cfg, "--kind", "gaussian",
               "--out", tmp_path) == 0
    report = json.loads((tmp_path / "phantom_report.json").read_text())
    assert report["config"]["kind"] == "gaussian"  # flag beats file
    assert report["config"]["M"] == 24
    assert report["config"]["tau"] == 2.0
    img = io.read_image(tmp_path / "phantom.img1")
    assert img.values.shape == (49, 49)


def test_unknown_config_key_is_usage_error(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("bogus = 3\n")
    with pytest.raises(SystemExit) as ei:
        run("phantom", "--config", cfg, "--out", tmp_path)
    assert ei.value.code == 2


def test_missing_required_flag_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as ei:
        run("project", "--out", tmp_path)
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei2:
        run("sweep", "--in", "x.sin1", "--ref", "y.img1",
            "--alpha-grid", "1e-3:5", "--out", tmp_path)
    assert ei2.value.code == 2


def test_noise_is_seed_deterministic(tmp_path):
    sino_path = tmp_path / "clean.sin1"
    io.write_sinogram(sino_path, _tiny_sinogram())
    d1, d2, d3 = (tmp_path / n for n in ("a", "b", "c"))
    for d, seed in ((d1, 5), (d2, 5), (d3, 6)):
        assert run("noise", "--in", sino_path, "--delta", 0.1,
                   "--seed", seed, "--out", d) == 0
    same = (d1 / "noisy.sin1").read_bytes()
    assert same == (d2 / "noisy.sin1").read_bytes()
    assert same != (d3 / "noisy.sin1").read_bytes()
    report = json.loads((d1 / "noise_report.json").read_text())
    assert "default_rng" in report["prng"]
    assert report["noise_norms"]["l2"] > 0


def test_sweep_csv_deterministic_across_threads(tmp_path):
    d = tmp_path
    assert run("phantom", "--kind", "cheese", "--M", 24, "--out", d) == 0
    assert run("project", "--in", d / "phantom.img1", "--p", 30, "--q", 24,
               "--out", d) == 0
    assert run("noise", "--in", d / "sinogram.sin1", "--delta", 0.1,
               "--out", d) == 0
    for sub, threads in (("t1", 1), ("t3", 3), ("t1b", 1)):
        assert run("sweep", "--in", d / "noisy.sin1",
                   "--ref", d / "phantom.img1", "--M", 24,
                   "--alpha-grid", "1e-10:1e-1:8", "--threads", threads,
                   "--out", d / sub) == 0
    first = (d / "t1" / "sweep.csv").read_bytes()
    assert first == (d / "t3" / "sweep.csv").read_bytes()
    assert first == (d / "t1b" / "sweep.csv").read_bytes()
    header = first.decode().splitlines()[0]
    assert header == "alpha,rel_error,mse,psnr,ssim"


def test_lcurve_reports_selected_alpha_and_error_column(tmp_path):
    d = tmp_path
    assert run("phantom", "--kind", "gaussian", "--M", 24, "--tau", 3.0,
               "--out", d) == 0
    assert run("project", "--in", d / "phantom.img1", "--p", 30, "--q", 24,
               "--rho", 3.0, "--out", d) == 0
    assert run("noise", "--in", d / "sinogram.sin1", "--delta", 0.2,
               "--out", d) == 0
    assert run("lcurve", "--in", d / "noisy.sin1", "--M", 24, "--tau", 3.0,
               "--alpha-grid", "1e-9:1:8", "--ref", d / "phantom.img1",
               "--out", d) == 0
    lines = (d / "lcurve.csv").read_text().splitlines()
    assert lines[0] == "alpha,residual2,norm2,score,rel_error"
    assert len(lines) == 9
    report = json.loads((d / "lcurve_report.json").read_text())
    alphas = [float(ln.split(",")[0]) for ln in lines[1:]]
    assert report["alpha_star"] in alphas


def test_rates_cli_recovers_expected_slope(tmp_path):
    assert run("rates", "--trials", 10, "--out", tmp_path) == 0
    report = json.loads((tmp_path / "rates_report.json").read_text())
    assert report["expected"] == pytest.approx(1.0 / 3.0)
    assert abs(report["slope"] - report["expected"]) <= 0.1
    lines = (tmp_path / "rates.csv").read_text().splitlines()
    assert lines[0] == "delta,alpha,mean_error,std_error"
    assert len(lines) == 11


def test_domain_errors_exit_one(tmp_path, capsys):
    assert run("phantom", "--kind", "nope", "--out", tmp_path) == 1
    assert "error:" in capsys.readouterr().err
    sino_path = tmp_path / "c.sin1"
    io.write_sinogram(sino_path, _tiny_sinogram())
    assert run("fbp", "--in", sino_path, "--M", 24, "--tau", 3.0,
               "--cutoff", 1e9, "--out", tmp_path) == 1
    assert "error:" in capsys.readouterr().err
