import json

import pytest

from orthokit import build_pants, ideal_triangle
from orthokit.cli import main, EXIT_OK, EXIT_DOMAIN, EXIT_DIVERGENCE
from orthokit.kernels import F_closed
from orthokit.specfun import ZETA3


@pytest.fixture()
def pants_file(tmp_path):
    path = tmp_path / "pants.json"
    path.write_text(build_pants(1.0, 1.0, 1.0).to_json())
    return str(path)


@pytest.fixture()
def triangle_file(tmp_path):
    path = tmp_path / "tri.json"
    path.write_text(ideal_triangle().to_json())
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_eval_full_precision(capsys):
    code, out = _run(capsys, ["eval", "F_closed", "0.5"])
    assert code == EXIT_OK
    doc = json.loads(out)
    # round-trip exactness: the printed value parses back bit-identical
    assert doc["value"] == F_closed(0.5)


def test_eval_zeta(capsys):
    code, out = _run(capsys, ["eval", "zeta", "3"])
    assert code == EXIT_OK
    assert abs(json.loads(out)["value"] - ZETA3) < 1e-14


def test_eval_numeric_reports_error_estimate(capsys):
    code, out = _run(capsys, ["eval", "F_k_numeric", "0.5", "2"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert abs(doc["value"] - F_closed(0.5)) < 1e-9
    assert doc["error_estimate"] >= 0.0


def test_eval_crofton_conventions(capsys):
    code, out = _run(capsys, ["eval", "crofton_constant", "2",
                              "--convention", "paper"])
    assert code == EXIT_OK and abs(json.loads(out)["value"] - 1.0) < 1e-14
    code, out = _run(capsys, ["eval", "crofton_constant", "2"])
    assert code == EXIT_OK and abs(json.loads(out)["value"] - 4.0) < 1e-14


def test_eval_domain_error(capsys):
    assert main(["eval", "F_closed", "1.5"]) == EXIT_DOMAIN
    assert main(["eval", "no_such_function"]) == EXIT_DOMAIN


def test_verify_writes_manifest_outputs(capsys, tmp_path, pants_file):
    out_base = str(tmp_path / "report")
    code, out = _run(capsys, ["verify", pants_file, "basmajian", "6",
                              "-o", out_base])
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["predicted"] == pytest.approx(3.0)
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["manifest"]["command"] == "verify"
    assert doc["manifest"]["tool_version"]
    assert doc["data"]["identity_name"] == "basmajian"
    csv_text = (tmp_path / "report.csv").read_text()
    assert csv_text.startswith("# manifest: ")
    assert "l_max,partial_sum,abs_error" in csv_text


def test_verify_json_roundtrip_byte_identical(capsys, tmp_path, pants_file):
    out_base = str(tmp_path / "report")
    main(["verify", pants_file, "rogers", "6", "-o", out_base])
    raw = (tmp_path / "report.json").read_text()
    again = json.dumps(json.loads(raw), indent=2) + "\n"
    assert again == raw


def test_verify_divergence_exit(triangle_file):
    assert main(["verify", triangle_file, "basmajian", "5"]) == EXIT_DIVERGENCE


def test_verify_missing_file():
    assert main(["verify", "no_such.json", "basmajian", "5"]) == EXIT_DOMAIN


def test_spectrum_output(capsys, pants_file):
    code, out = _run(capsys, ["spectrum", pants_file, "4"])
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data) == 1 and data[0][1] == 3


def test_mc_outputs(capsys, tmp_path, pants_file):
    base = str(tmp_path / "mc")
    code, out = _run(capsys, ["mc", pants_file, "--samples", "300",
                              "--seed", "7", "-o", base])
    assert code == EXIT_OK
    doc = json.loads((tmp_path / "mc.json").read_text())
    assert doc["manifest"]["seed"] == 7
    assert doc["data"]["estimates"][0] == pytest.approx(6.0)
    hist = (tmp_path / "mc_histogram.csv").read_text()
    assert hist.startswith("# manifest: ")
    # determinism: same seed reproduces the same estimates
    code2, out2 = _run(capsys, ["mc", pants_file, "--samples", "300",
                                "--seed", "7", "-o", base])
    assert json.loads(out2) == json.loads(out)


def test_figures_f_curve(capsys, tmp_path):
    out = str(tmp_path / "curve.csv")
    assert main(["figures", "F_curve", "-o", out]) == EXIT_OK
    lines = open(out).read().strip().split("\n")
    assert lines[1] == "a,F_closed"
    rows = [tuple(map(float, line.split(","))) for line in lines[2:]]
    assert len(rows) == 400
    assert rows[0][0] == pytest.approx(0.002)
    assert rows[-1][0] == pytest.approx(0.998)
    # first value near 0 on the scale of the curve (F ~ 4 a log^2 a at the
    # left edge: F(0.002) ~ 0.54 against a maximum of ~18), max at (0.7545,
    # 17.98)
    assert abs(rows[0][1]) < 0.6
    a_star, f_star = max(rows, key=lambda r: r[1])
    assert a_star == pytest.approx(0.7545, abs=5e-3)
    assert f_star == pytest.approx(17.98, abs=2e-2)


def test_figures_closed_vs_numeric(capsys, tmp_path):
    out = str(tmp_path / "cvn.csv")
    assert main(["figures", "closed_vs_numeric", "-o", out]) == EXIT_OK
    lines = open(out).read().strip().split("\n")
    header = lines[1].split(",")
    diffs = [abs(float(line.split(",")[3])) for line in lines[2:]]
    assert header[0] == "a"
    assert max(diffs) < 1e-6


def test_threads_flag_accepted(capsys):
    code, out = _run(capsys, ["--threads", "1", "eval", "zeta", "2"])
    assert code == EXIT_OK
    # requests beyond the runtime's thread budget are clamped, not fatal
    code, out = _run(capsys, ["--threads", "64", "eval", "zeta", "2"])
    assert code == EXIT_OK


def test_threads_env_var(capsys, monkeypatch):
    monkeypatch.setenv("ORTHOKIT_THREADS", "2")
    code, out = _run(capsys, ["eval", "zeta", "2"])
    assert code == EXIT_OK
