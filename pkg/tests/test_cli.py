import csv
import io
import json

import numpy as np
import pytest

from welchkit import cli, frames
from welchkit.errors import InputError
from welchkit.fileio import (
    dumps,
    gram_file_dict,
    read_gram_file,
    read_samples_file,
    read_vector_file,
    samples_file_dict,
    vector_file_dict,
)
from welchkit.polysample import HomogeneousPolynomial, sample


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


# file formats -------------------------------------------------------------

def test_vector_file_round_trip(tmp_path, sic):
    path = write(tmp_path, "sic.json", vector_file_dict(sic, [1, 2, 3, 4]))
    X, w = read_vector_file(path)
    np.testing.assert_array_equal(X.vectors, sic.vectors)
    np.testing.assert_array_equal(w, [1, 2, 3, 4])
    X, w = read_vector_file(vector_file_dict(sic))
    assert w is None and X.unit_norm


def test_gram_and_samples_round_trip(tmp_path, mercedes):
    G = frames.gram(mercedes)
    np.testing.assert_array_equal(read_gram_file(write(tmp_path, "g.json", gram_file_dict(G))), G)
    s = np.array([1 + 2j, -0.5j])
    np.testing.assert_array_equal(read_samples_file(write(tmp_path, "s.json", samples_file_dict(s))), s)


@pytest.mark.parametrize(
    "doc",
    [
        {"dim": 2, "vectors": [[[1, 0]]]},
        {"dim": 2, "vectors": [[[1, 0], [0, 0]]], "weights": [1, 2]},
        {"dim": 2, "vectors": [[[1, 0], [0, 0]]], "weights": [-1]},
        {"vectors": [[[1, 0], [0, 0]]]},
        {"dim": 2, "vectors": [[["a", 0], [0, 0]]]},
    ],
)
def test_malformed_vector_files(doc):
    with pytest.raises(InputError):
        read_vector_file(doc)


def test_non_hermitian_gram_rejected():
    with pytest.raises(InputError):
        read_gram_file({"size": 2, "entries": [[[1, 0], [0.5, 0]], [[0, 0], [1, 0]]]})


def test_dumps_emits_strict_json():
    text = dumps({"a": float("-inf"), "b": 1 + 2j, "c": np.float64(0.5), "d": np.bool_(True)})
    assert json.loads(text) == {"a": None, "b": [1.0, 2.0], "c": 0.5, "d": True}


# subcommands --------------------------------------------------------------

def test_bound(capsys):
    code, doc = run_json(capsys, "bound", "--m", "4", "--n", "2", "--k", "2")
    assert code == 0
    assert doc["welch_bound"] == 5.333333333333333
    assert doc["cmax_bound_sq"] == pytest.approx(np.sqrt(1 / 9))


def test_bound_csv_header(capsys):
    code, out = run(capsys, "bound", "--m", "3", "--n", "2", "--kmax", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == cli.BOUND_FIELDS and len(rows) == 4
    assert rows[1][-1] == "true" and rows[3][-1] == "false"


def test_analyze_onb(tmp_path, capsys, onb2):
    path = write(tmp_path, "onb2.json", vector_file_dict(onb2))
    code, doc = run_json(capsys, "analyze", "--in", path, "--kmax", "2")
    assert code == 0
    assert [k["tight"] for k in doc["per_k"]] == [True, False]
    code, out = run(capsys, "analyze", "--in", path, "--kmax", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == cli.ANALYZE_FIELDS and len(rows) == 3


def test_analyze_general(tmp_path, capsys):
    path = write(tmp_path, "v.json", {"dim": 2, "vectors": [[[2, 0], [0, 0]], [[0, 0], [0, 3]]]})
    code, doc = run_json(capsys, "analyze", "--in", path, "--kmax", "1", "--general")
    assert code == 0 and doc["per_k"][0]["ratio"] == pytest.approx((16 + 81) / 13**2)
    code, doc = run_json(capsys, "analyze", "--in", path)
    assert code == 1 and doc["error"]["type"] == "FrameValidationError"


def test_certify_exit_codes(tmp_path, capsys, mercedes, onb2):
    merc = write(tmp_path, "m.json", vector_file_dict(mercedes))
    onb = write(tmp_path, "o.json", vector_file_dict(onb2))
    assert run_json(capsys, "certify", "--in", merc, "--k", "1", "--property", "equiangular")[0] == 0
    assert run_json(capsys, "certify", "--in", merc, "--k", "1", "--property", "tight")[0] == 0
    assert run_json(capsys, "certify", "--in", onb, "--k", "2", "--property", "tight")[0] == 2


def test_construct(tmp_path, capsys, sic):
    path = write(tmp_path, "g.json", gram_file_dict(frames.gram(sic)))
    code, doc = run_json(capsys, "construct", "--gram", path)
    assert code == 0
    X, _ = read_vector_file(doc)
    assert X.d == 2 and np.max(np.abs(frames.gram(X) - frames.gram(sic))) < 1e-12
    bad = write(tmp_path, "bad.json", gram_file_dict(np.diag([1.0, -1.0])))
    assert run_json(capsys, "construct", "--gram", bad)[0] == 1


def test_design(capsys):
    code, doc = run_json(capsys, "design", "--n", "2", "--m", "3", "--restarts", "2", "--seed", "4")
    assert code == 0 and doc["converged"] and doc["relative_slack"] <= 1e-7
    X, _ = read_vector_file(doc["frame"])
    assert X.m == 3


def test_design_not_converged_exit_2(capsys):
    code, doc = run_json(capsys, "design", "--n", "3", "--m", "7", "--k", "2", "--restarts", "1", "--max-iters", "3")
    assert code == 2 and not doc["converged"]


def test_tdesign(tmp_path, capsys, sic, onb2):
    s = write(tmp_path, "sic2.json", vector_file_dict(sic))
    o = write(tmp_path, "onb2.json", vector_file_dict(onb2))
    code, doc = run_json(capsys, "tdesign", "--in", s, "--t", "2", "--mc-samples", "4000")
    assert code == 0 and doc["verdict"] == "pass"
    assert run_json(capsys, "tdesign", "--in", o, "--t", "1", "--mc-probes", "0")[0] == 0
    code, doc = run_json(capsys, "tdesign", "--in", o, "--t", "2", "--mc-probes", "0")
    assert code == 2 and doc["verdict"] == "fail"


def test_tdesign_weighted(tmp_path, capsys, onb2, mercedes):
    pts = vector_file_dict(frames.FrameSet(np.vstack([onb2.vectors, mercedes.vectors])), [1, 1, 0, 0, 0])
    code, _ = run_json(capsys, "tdesign", "--in", write(tmp_path, "w.json", pts), "--t", "1", "--mc-probes", "0")
    assert code == 0


def test_haar(capsys):
    code, doc = run_json(capsys, "haar", "--n", "2", "--k", "1", "--samples", "20000", "--seed", "3")
    assert code == 0 and abs(doc["estimate"] - 0.5) < 5 * doc["stderr"]


def test_poly_recon(tmp_path, capsys, sic, rng):
    p = HomogeneousPolynomial(2, 2, rng.standard_normal(3) + 1j * rng.standard_normal(3))
    frame = write(tmp_path, "sic.json", vector_file_dict(sic))
    samples = write(tmp_path, "s.json", samples_file_dict(sample(p, sic)))
    code, doc = run_json(capsys, "poly-recon", "--in", frame, "--k", "2", "--samples", samples)
    assert code == 0
    coeffs = np.array(doc["coeffs"])
    np.testing.assert_allclose(coeffs[:, 0] + 1j * coeffs[:, 1], p.coeffs, atol=1e-10)
    # two samples cannot determine a quadratic in two variables
    two = write(tmp_path, "two.json", vector_file_dict(frames.FrameSet(sic.vectors[:2])))
    short = write(tmp_path, "s2.json", samples_file_dict(sample(p, sic)[:2]))
    code, doc = run_json(capsys, "poly-recon", "--in", two, "--k", "2", "--samples", short)
    assert code == 2 and doc["error"]["kernel_dim"] == 1


def test_input_errors_emit_json(tmp_path, capsys):
    code, doc = run_json(capsys, "analyze", "--in", str(tmp_path / "missing.json"))
    assert code == 1 and doc["error"]["type"] == "InputError"
    (tmp_path / "bad.json").write_text("{not json")
    assert run_json(capsys, "analyze", "--in", str(tmp_path / "bad.json"))[0] == 1
    code, doc = run_json(capsys, "bound", "--m", "3", "--n", "0")
    assert code == 1
    code, doc = run_json(capsys, "bogus")
    assert code == 1 and "error" in doc


def test_out_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert cli.main(["haar", "--n", "3", "--k", "2", "--samples", "5000", "--seed", "7", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_text() == b.read_text()
    json.loads(a.read_text())
