import numpy as np
import pytest

from hiertv import pnm
from hiertv.bench import make_params, run_method
from hiertv.cli import main


@pytest.fixture
def files(tmp_path):
    y, x = np.mgrid[0:40, 0:40]
    img = np.round(np.clip(0.2 + 0.5 * (x > 20) + 0.005 * y, 0, 1) * 255) / 255
    m = np.zeros((40, 40), bool)
    m[14:24, 16:26] = True
    pnm.write_image(tmp_path / "img.pgm", img)
    pnm.write_mask(tmp_path / "mask.pgm", m)
    return tmp_path, img, m


def test_inpaint_happy_path(files, capsys):
    d, img, m = files
    rc = main(["inpaint", "--image", str(d / "img.pgm"), "--mask", str(d / "mask.pgm"),
               "--method", "hier", "--out", str(d / "out.pgm"), "--lambda", "5"])
    assert rc == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("method=hier mask_pct=6.25 iterations=") and len(out.splitlines()) == 1
    data = (d / "out.pgm").read_bytes()
    assert data.startswith(b"P5")
    expected, _ = run_method("hier", img, m, make_params("hier", {"lam": 5.0}))
    assert data == pnm.save_pnm(expected)


def test_inpaint_dimension_mismatch(files, capsys):
    d, _, _ = files
    pnm.write_mask(d / "small.pgm", np.zeros((8, 8), bool))
    rc = main(["inpaint", "--image", str(d / "img.pgm"), "--mask", str(d / "small.pgm"), "--out", str(d / "o.pgm")])
    assert rc == 2
    assert len(capsys.readouterr().err.strip().splitlines()) == 1


def test_inpaint_full_mask(files, capsys):
    d, _, _ = files
    pnm.write_mask(d / "full.pgm", np.ones((40, 40), bool))
    rc = main(["inpaint", "--image", str(d / "img.pgm"), "--mask", str(d / "full.pgm"), "--out", str(d / "o.pgm")])
    assert rc == 3
    assert "unfillable" in capsys.readouterr().err


def test_inpaint_missing_file(tmp_path):
    assert main(["inpaint", "--image", str(tmp_path / "nope.pgm"), "--mask", "x", "--out", "y"]) == 1


def test_genmask(tmp_path, files):
    d, _, _ = files
    rc = main(["genmask", "--like", str(d / "img.pgm"), "--shape", "rect", "--area-pct", "10",
               "--seed", "4", "--out", str(tmp_path / "g.pgm")])
    assert rc == 0
    m = pnm.read_mask(tmp_path / "g.pgm")
    assert m.shape == (40, 40) and 9 <= 100 * m.mean() <= 11


def test_bench_cli(files, tmp_path):
    d, _, _ = files
    prefix = tmp_path / "res"
    args = ["bench", "--images", str(d), "--area-pcts", "3,6", "--methods", "nn,hier", "--out-csv", str(prefix)]
    assert main(args) == 0
    first = (tmp_path / "res_mse.csv").read_bytes(), (tmp_path / "res_psnr.csv").read_bytes()
    assert main(args) == 0
    assert first == ((tmp_path / "res_mse.csv").read_bytes(), (tmp_path / "res_psnr.csv").read_bytes())


def test_bench_empty_dir(tmp_path):
    (tmp_path / "empty").mkdir()
    assert main(["bench", "--images", str(tmp_path / "empty"), "--out-csv", str(tmp_path / "r")]) == 1
