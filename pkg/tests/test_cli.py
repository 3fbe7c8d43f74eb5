"""Command-line interface: subcommands, exit codes, and determinism."""

import csv
import json
import math

import numpy as np
import pytest

from lpmult.cli import main
from lpmult.exponents import ExponentConfig
from lpmult.martingale import MartingaleDifferenceSequence
from lpmult.report import sequence_to_record


def _run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out


def _load_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_search_p2_example(tmp_path):
    code, out = _run(["search-martingale", "--p", "2", "--tau", "0.5", "--n", "4",
                      "--seed", "1", "--store-dir", str(tmp_path / "store")], tmp_path)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["achieved_ratio"] == pytest.approx(math.sqrt(1.25), abs=1e-12)
    assert rep["target_constant"] == pytest.approx(math.sqrt(1.25), abs=1e-12)


def test_search_determinism(tmp_path):
    args = ["search-martingale", "--p", "4", "--tau", "0.5", "--n", "2",
            "--seed", "7", "--iters", "150", "--restarts", "4"]
    _, a = _run(args + ["--store-dir", str(tmp_path / "sa")], tmp_path, "a.json")
    _, b = _run(args + ["--store-dir", str(tmp_path / "sb")], tmp_path, "b.json")
    ra = json.loads(a.read_text())
    rb = json.loads(b.read_text())
    for volatile in ("timestamp", "wall_time_s"):
        ra.pop(volatile), rb.pop(volatile)
    assert ra == rb


def test_certify_explicit_instance(tmp_path):
    d1 = np.ones((2, 1), dtype=complex)
    d2 = np.zeros((2, 2, 1), dtype=complex)
    d2[:, 0, 0] = 2.0
    seq = MartingaleDifferenceSequence((d1, d2))
    rec = sequence_to_record(seq, (-1, 1), 1.0, ExponentConfig(4.0),
                             (52.0 / 21.0) ** 0.25, 0, "def2")
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(rec))

    code, out = _run(["certify", "beurling-real", "--p", "4", "--tau", "1",
                      "--n", "2", "--grid", "2", "--martingale", str(inst),
                      "--store-dir", str(tmp_path / "store")], tmp_path)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["certified_lower_bound"] == pytest.approx((52.0 / 21.0) ** 0.25,
                                                         abs=1e-9)
    assert rep["target_constant"] == pytest.approx(math.sqrt(10.0))
    assert rep["notes"]["axis_exact"] is True


def test_certify_matrix_trivial(tmp_path):
    code, out = _run(["certify", "beurling-matrix", "--p", "2", "--tau", "0",
                      "--n", "1", "--store-dir", str(tmp_path / "store")], tmp_path)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["certified_lower_bound"] == pytest.approx(1.0, abs=1e-10)
    assert rep["target_constant"] == pytest.approx(1.0)
    assert abs(rep["gap"]) < 1e-9


def test_certify_vector_depth_one(tmp_path):
    code, out = _run(["certify", "vector", "--p", "4", "--tau", "0", "--n", "1",
                      "--store-dir", str(tmp_path / "store")], tmp_path)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["certified_lower_bound"] == pytest.approx(1.0, abs=1e-10)
    assert rep["target_constant"] == pytest.approx(3.0)


def test_certify_imag_uses_approximate_directions(tmp_path):
    code, out = _run(["certify", "beurling-imag", "--p", "4", "--tau", "0",
                      "--n", "2", "--grid", "4", "--iters", "200",
                      "--restarts", "4", "--store-dir", str(tmp_path / "store")],
                     tmp_path)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["notes"]["axis_exact"] is False
    assert sum(rep["notes"]["n_plus"]) % 2 == 1
    assert rep["certified_lower_bound"] > 0.0


def test_transference_deviation_table(tmp_path):
    code, out = _run(["transference", "deviation", "--symbol", "beurling-real",
                      "--support", "1,0:0,1", "--n-start", "10",
                      "--n-doubling", "2"], tmp_path, "dev.csv")
    assert code == 0
    rows = _load_csv(out)
    assert rows[0] == ["N", "deviation", "ratio_to_previous"]
    assert float(rows[1][1]) == pytest.approx(0.019802, abs=1e-6)
    assert 3.8 <= float(rows[2][2]) <= 4.2
    assert 3.8 <= float(rows[3][2]) <= 4.2


def test_transference_gaussian_identity(tmp_path):
    code, out = _run(["transference", "gaussian", "--symbol", "identity",
                      "--j", "0,1", "--k", "0,1", "--eps-start", "1",
                      "--halvings", "3"], tmp_path, "gauss.csv")
    assert code == 0
    rows = _load_csv(out)
    for row in rows[1:]:
        assert float(row[3]) < 1e-8


def test_transference_shear(tmp_path):
    code, out = _run(["transference", "shear", "--grid", "8", "--blocks", "2",
                      "--n-shift", "2", "--p", "4", "--seed", "3"],
                     tmp_path, "shear.csv")
    assert code == 0
    rows = _load_csv(out)
    assert rows[1][3] == "True"
    assert float(rows[1][2]) <= 1e-9 * max(1.0, float(rows[1][1]))


def test_norms_tables(tmp_path):
    code, out = _run(["norms", "--family", "F", "--p", "4", "--z", "0,1"],
                     tmp_path, "norms.csv")
    assert code == 0
    rows = _load_csv(out)
    assert float(rows[1][3]) == pytest.approx(3.0)
    assert float(rows[2][3]) == pytest.approx(3.0 * math.sqrt(2.0))

    code, out = _run(["norms", "--family", "scaled", "--p", "4", "--c", "0.5,2"],
                     tmp_path, "scaled.csv")
    rows = _load_csv(out)
    assert float(rows[1][3]) == pytest.approx(3.0)
    assert float(rows[2][3]) == pytest.approx(6.0)
    assert rows[1][6] == "True" and rows[2][6] == "True"


def test_exit_code_invalid_config(tmp_path):
    code = main(["search-martingale", "--p", "0.5", "--n", "2",
                 "--store-dir", str(tmp_path)])
    assert code == 2


def test_exit_code_store_error(tmp_path):
    (tmp_path / "extremizers.json").write_text("{corrupt")
    code = main(["search-martingale", "--p", "4", "--n", "2",
                 "--iters", "50", "--restarts", "2", "--store-dir", str(tmp_path)])
    assert code == 4


def test_certify_warm_start_from_store(tmp_path):
    store = tmp_path / "store"
    code = main(["search-martingale", "--p", "4", "--tau", "1", "--n", "2",
                 "--seed", "0", "--iters", "400", "--restarts", "8",
                 "--store-dir", str(store), "--out", str(tmp_path / "s.json")])
    assert code == 0
    code, out = _run(["certify", "beurling-real", "--p", "4", "--tau", "1",
                      "--n", "2", "--grid", "2", "--store-dir", str(store)],
                     tmp_path, "c.json")
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["notes"]["martingale_source"] == "store"
    assert rep["certified_lower_bound"] >= (52.0 / 21.0) ** 0.25 - 1e-6
