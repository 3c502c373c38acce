import os
import subprocess
import sys

import numpy as np
import pytest

from wdzoom.cli import main
from wdzoom.image_io import Image, load, save


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def gradient_png(tmp_path):
    y, x = np.mgrid[0:32, 0:48] / 64.0
    data = np.stack([x, y, 0.5 + 0.25 * np.sin(7 * x * y)], axis=-1)
    path = tmp_path / "in.png"
    save(Image(data), path)
    return path


def test_zoom_scale_two(tmp_path, gradient_png, capsys):
    out_path = tmp_path / "out.png"
    code, _, err = run(["zoom", str(gradient_png), str(out_path), "--scale", "2"], capsys)
    assert code == 0
    img = load(out_path)
    assert (img.width, img.height, img.n_channels) == (95, 63, 3)
    assert "k=1 intermediate=95x63 tensor_pass=no" in err


def test_zoom_scale_one_is_identity(tmp_path, gradient_png, capsys):
    out_path = tmp_path / "same.png"
    assert run(["zoom", str(gradient_png), str(out_path), "--scale", "1"], capsys)[0] == 0
    assert np.array_equal(load(out_path).data, load(gradient_png).data)


def test_zoom_size_reports_doublings(tmp_path, capsys):
    path = tmp_path / "big.pgm"
    save(Image(np.random.default_rng(0).uniform(size=(256, 256))), path)
    code, _, err = run(["zoom", str(path), str(tmp_path / "o.pgm"), "--size", "766x766"], capsys)
    assert code == 0
    assert "k=2 intermediate=1021x1021 tensor_pass=yes" in err
    assert load(tmp_path / "o.pgm").width == 766


@pytest.mark.parametrize("method", ["tensor-weno", "bilinear", "bicubic"])
def test_zoom_other_methods(tmp_path, gradient_png, capsys, method):
    out_path = tmp_path / "m.png"
    assert run(["zoom", str(gradient_png), str(out_path), "--scale", "2", "--method", method], capsys)[0] == 0
    assert load(out_path).width == 95


def test_zoom_usage_and_runtime_errors(tmp_path, gradient_png, capsys):
    out_path = str(tmp_path / "x.png")
    with pytest.raises(SystemExit) as exc:
        main(["zoom", str(gradient_png), out_path])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["zoom", str(gradient_png), out_path, "--scale", "2", "--size", "4x4"])
    assert exc.value.code == 1
    assert run(["zoom", str(gradient_png), out_path, "--scale", "2", "--beta", "-1"], capsys)[0] == 1
    assert run(["zoom", str(tmp_path / "missing.png"), out_path, "--scale", "2"], capsys)[0] == 2
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P5\n9 9\n255\n")
    code, _, err = run(["zoom", str(bad), out_path, "--scale", "2"], capsys)
    assert code == 2 and "truncated" in err


def test_metrics(tmp_path, capsys):
    a = tmp_path / "a.pgm"
    b = tmp_path / "b.pgm"
    # maxval 10 makes the 0.1 offset exact
    pixels = " ".join(["3"] * 144)
    a.write_bytes(f"P2 12 12 10 {pixels}".encode())
    b.write_bytes(f"P2 12 12 10 {pixels.replace('3', '4')}".encode())
    code, out, _ = run(["metrics", str(a), str(a)], capsys)
    assert code == 0 and out == "99.0000\t1.0000\n"
    code, out, _ = run(["metrics", str(a), str(b)], capsys)
    assert code == 0 and out.split("\t")[0] == "20.0000"
    c = tmp_path / "c.pgm"
    save(Image(np.zeros((12, 13))), c)
    assert run(["metrics", str(a), str(c)], capsys)[0] == 2


def test_convergence(capsys):
    code, out, _ = run(["convergence", "--levels", "6"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "h\tLinf\tOinf\tL2\tO2"
    assert len(lines) == 7
    assert lines[1].startswith("1.00E+00\t")
    assert float(lines[-1].split("\t")[4]) > 3.5


def test_convergence_region_and_errors(capsys):
    code, out, _ = run(["convergence", "--function", "disc", "--beta", "2", "--levels", "3",
                        "--region", "0,1,-1,1"], capsys)
    assert code == 0 and len(out.splitlines()) == 4
    assert run(["convergence", "--levels", "1"], capsys)[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["convergence", "--region", "1,0,0,1"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["convergence", "--function", "sinc"])
    assert exc.value.code == 1


@pytest.fixture
def bench_dir(tmp_path):
    rng = np.random.default_rng(3)
    d = tmp_path / "set"
    d.mkdir()
    for name, shape in [("b.png", (24, 30, 3)), ("a.pgm", (21, 26))]:
        y, x = np.mgrid[0 : shape[0], 0 : shape[1]] / 10.0
        base = 0.5 + 0.4 * np.sin(x) * np.cos(y)
        data = base if len(shape) == 2 else np.stack([base, base**2, 1 - base], -1)
        save(Image(np.clip(data + 0.01 * rng.normal(size=shape), 0, 1)), d / name)
    (d / "notes.txt").write_text("ignored")
    return d


def test_bench(bench_dir, capsys):
    code, out, _ = run(["bench", str(bench_dir), "--methods", "wd-weno,bilinear"], capsys)
    assert code == 0
    lines = [line.split("\t") for line in out.splitlines()]
    assert lines[0] == ["image", "method", "PSNR", "MSSIM"]
    assert [row[:2] for row in lines[1:]] == [
        ["a.pgm", "wd-weno"], ["a.pgm", "bilinear"], ["b.png", "wd-weno"], ["b.png", "bilinear"],
        ["AVERAGE", "wd-weno"], ["AVERAGE", "bilinear"],
    ]
    avg = np.mean([float(lines[1][2]), float(lines[3][2])])
    assert float(lines[5][2]) == pytest.approx(avg, abs=1e-4)


def test_bench_single_image_average_equals_row(tmp_path, capsys):
    d = tmp_path / "one"
    d.mkdir()
    save(Image(np.random.default_rng(0).uniform(size=(17, 17))), d / "x.pgm")
    code, out, _ = run(["bench", str(d), "--scale", "4"], capsys)
    assert code == 0
    rows = out.splitlines()
    assert rows[1].split("\t")[2:] == rows[2].split("\t")[2:]


def test_bench_is_deterministic_across_thread_counts(bench_dir):
    env = dict(os.environ)
    outputs = []
    for threads in ["1", "3"]:
        env["WDZOOM_THREADS"] = threads
        res = subprocess.run(
            [sys.executable, "-m", "wdzoom.cli", "bench", str(bench_dir), "--methods", "wd-weno,tensor-weno"],
            capture_output=True, text=True, env=env, check=True,
        )
        outputs.append(res.stdout)
    assert outputs[0] == outputs[1]


def test_bench_errors(tmp_path, bench_dir, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["bench", str(empty)], capsys)[0] == 1
    assert run(["bench", str(tmp_path / "nope")], capsys)[0] == 1
    assert run(["bench", str(bench_dir), "--scale", "1"], capsys)[0] == 1
    assert run(["bench", str(bench_dir), "--methods", "lanczos"], capsys)[0] == 1
