import csv
import io
import math

import numpy as np
import pytest

from uniwalk import asymptotics as asy
from uniwalk.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_pmf_direct_vs_dft(capsys):
    _, a, _ = run(capsys, "pmf", "--t", "30", "--method", "direct")
    _, b, _ = run(capsys, "pmf", "--t", "30", "--method", "dft")
    _, c, _ = run(capsys, "pmf", "--t", "30", "--method", "fft")
    ra, rb, rc = rows(a), rows(b), rows(c)
    assert len(ra) == 31
    for key in ("rho", "psi0_re", "psi0_im", "psi1_re", "psi1_im"):
        for x, y, z in zip(ra, rb, rc):
            assert abs(float(x[key]) - float(y[key])) < 1e-9
            assert abs(float(x[key]) - float(z[key])) < 1e-9


def test_pmf_t0(capsys):
    code, out, _ = run(capsys, "pmf", "--t", "0")
    assert code == 0
    r = rows(out)
    assert len(r) == 1 and float(r[0]["rho"]) == pytest.approx(1.0, abs=1e-15)


def test_pmf_approx_columns(capsys):
    _, out, _ = run(capsys, "pmf", "--t", "100", "--method", "approx")
    r = rows(out)
    assert list(r[0]) == ["n", "rho", "psi0_re", "psi0_im", "psi1_re", "psi1_im", "rho_bar", "rho_min", "rho_max"]
    assert r[10]["rho_bar"] == "" and r[90]["rho_max"] == ""
    rmin, rmax = asy.rho_envelopes(0.3, 100)
    assert float(r[30]["rho_min"]) == rmin and float(r[30]["rho_max"]) == rmax
    assert float(r[50]["rho_bar"]) == pytest.approx(2 / (100 * math.pi), rel=1e-15)


def test_output_format(capsys, tmp_path):
    path = tmp_path / "pmf.csv"
    assert main(["pmf", "--t", "7", "-o", str(path)]) == 0
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    again = tmp_path / "again.csv"
    main(["pmf", "--t", "7", "-o", str(again)])
    assert again.read_bytes() == raw
    for row in rows(raw.decode()):
        for key in ("rho", "psi0_re"):
            v = row[key]
            assert float(v) == float(format(float(v), ".17g"))


def test_exit_n0_1(capsys):
    code, out, err = run(capsys, "exit", "--n0", "1", "--tmax", "10")
    assert code == 0
    r = rows(out)
    assert [int(x["t"]) for x in r] == list(range(1, 11))
    for x in r:
        assert float(x["p_classical"]) == pytest.approx(2.0 ** -int(x["t"]), rel=1e-13)
    assert r[0]["lower_bound"] == "" and r[0]["heuristic"] == ""
    assert "survival_quantum=" in err


def test_exit_n0_100(capsys):
    _, out, err = run(capsys, "exit", "--n0", "100", "--tmax", "1000")
    r = rows(out)
    pq = np.array([float(x["p_quantum"]) for x in r])
    pc = np.array([float(x["p_classical"]) for x in r])
    assert np.argmax(pq) < np.argmax(pc)
    assert abs(np.argmax(pc) + 100 - 200) <= 3
    survival = dict(kv.split("=") for kv in err.split())
    assert pq.sum() + float(survival["survival_quantum"]) == pytest.approx(1, abs=1e-9)
    assert pc.sum() + float(survival["survival_classical"]) == pytest.approx(1, abs=1e-9)
    lb = [x["lower_bound"] for x in r]
    assert lb[99] == "" and lb[100] != "" and lb[-1] == ""


def test_exit_methods_agree(capsys):
    outs = [rows(run(capsys, "exit", "--n0", "5", "--tmax", "150", "--exit-method", m)[1])
            for m in ("direct", "spectral", "filtered")]
    for a, b, c in zip(*outs):
        assert abs(float(a["p_quantum"]) - float(b["p_quantum"])) < 1e-10
        assert abs(float(a["p_quantum"]) - float(c["p_quantum"])) < 1e-10


def test_bounds(capsys):
    _, out, _ = run(capsys, "bounds", "--t", "100", "--points", "50")
    r = rows(out)
    assert len(r) == 50
    for x in r:
        assert float(x["rho_min"]) <= float(x["rho_bar"]) <= float(x["rho_max"])
    _, out, _ = run(capsys, "bounds", "--t", "100")
    assert len(rows(out)) == 101


@pytest.mark.parametrize("argv", [
    ("compare", "--t", "30"),
    ("compare", "--t", "1000"),
    ("compare", "--t", "5", "--random-state", "--seed", "11"),
])
def test_compare_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip().endswith("PASS")
    assert "time[fft]=" in out


def test_fitexit(capsys):
    code, out, _ = run(capsys, "fitexit", "--n0", "100", "--tmax", "1000", "--t-lo", "220", "--t-hi", "650")
    assert code == 0
    r = rows(out)[0]
    assert -3.0 <= float(r["exponent"]) <= -2.5
    assert float(r["heuristic_exponent"]) == -2.75


def test_fitexit_too_few_points(capsys):
    code, _, err = run(capsys, "fitexit", "--n0", "100", "--tmax", "1000", "--t-lo", "220", "--t-hi", "240")
    assert code == 2 and "need 10" in err


@pytest.mark.parametrize("argv", [
    ("pmf", "--t", "5", "--a-re", "1", "--b-re", "1"),
    ("pmf", "--t", "-1"),
    ("pmf",),
    ("exit", "--n0", "0", "--tmax", "5"),
    ("exit", "--n0", "10", "--tmax", "5"),
    ("exit", "--n0", "1", "--tmax", "5", "--p", "1.5"),
    ("pmf", "--t", "5", "--method", "magic"),
    (),
])
def test_config_errors_exit_2(capsys, argv):
    assert main(list(argv)) == 2


def test_normalize_flag(capsys):
    code, out, _ = run(capsys, "pmf", "--t", "3", "--a-re", "1", "--b-re", "1", "--normalize")
    assert code == 0
    assert sum(float(x["rho"]) for x in rows(out)) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("argv", [
    ("pmf", "--t", "5", "--method", "dft", "--coin", "general", "--phi", "0.3"),
    ("pmf", "--t", "5", "--method", "approx", "--coin", "general", "--alpha", "1"),
    ("compare", "--t", "5", "--coin", "general", "--phi", "0.3"),
    ("exit", "--n0", "2", "--tmax", "9", "--coin", "general", "--phi", "0.3"),
])
def test_incompatible_options_exit_3(capsys, argv):
    assert main(list(argv)) == 3


def test_general_coin_direct_and_filtered(capsys):
    code, out, _ = run(capsys, "pmf", "--t", "9", "--coin", "general", "--phi", "0.3", "--beta", "0.2")
    assert code == 0
    assert sum(float(x["rho"]) for x in rows(out)) == pytest.approx(1, abs=1e-12)
    code, _, _ = run(capsys, "exit", "--n0", "2", "--tmax", "9", "--coin", "general",
                     "--phi", "0.3", "--exit-method", "filtered")
    assert code == 0


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# route check\ncommand = pmf\nt = 30\nmethod = dft\n")
    code, out, _ = run(capsys, "--config", str(cfg))
    assert code == 0 and len(rows(out)) == 31
    # command-line flags override the file
    code, out, _ = run(capsys, "pmf", "--config", str(cfg), "--t", "4")
    assert code == 0 and len(rows(out)) == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("t 30\n")
    assert main(["--config", str(bad)]) == 2
    assert main(["--config", str(tmp_path / "missing.cfg")]) == 2
    flags = tmp_path / "flags.cfg"
    flags.write_text("command=pmf\nt=2\na_re=1\nb_re=1\nnormalize=true\n")
    assert main(["--config", str(flags)]) == 0
