import json
import math

import numpy as np

from csforge import cli
from csforge.qam import on_lattice

E1 = (2.0 / math.pi) * math.log(3.0)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_params(tmp_path, doc, name="params.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def multilevel_doc():
    return {
        "m": 3,
        "H": 4,
        "pi": [2, 1, 3],
        "e": [E1, 0.0, 0.0],
    }


def values_of(record):
    return np.asarray(record["values"]["re"]) + 1j * np.asarray(record["values"]["im"])


def test_encode_from_params_file(tmp_path, capsys):
    path = write_params(tmp_path, multilevel_doc())
    code, out, _ = run_cli(capsys, "encode", "--params", path)
    assert code == 0
    records = json.loads(out)
    assert [r["id"] for r in records] == ["c", "d"]
    assert np.allclose(values_of(records[0]), [1, 1, 3, 3, 3, -3, -1, 1], rtol=1e-9)
    assert records[0]["gcp_residual"] <= 1e-9
    assert records[0]["schema"] == 1


def test_encode_trivial_flags(capsys):
    code, out, _ = run_cli(capsys, "encode", "--m", "1", "--H", "2", "--seed-trivial")
    assert code == 0
    records = json.loads(out)
    assert np.allclose(values_of(records[0]), [1, 1])
    assert np.allclose(values_of(records[1]), [1, -1])


def test_encode_rule_output_on_lattice(capsys):
    code, out, _ = run_cli(
        capsys, "encode", "--rule", "cyan", "--s", "4", "--indices", "2,1,4,2", "--m", "3"
    )
    assert code == 0
    records = json.loads(out)
    assert on_lattice(values_of(records[0]), 4)


def test_encode_validation_failure(tmp_path, capsys):
    doc = multilevel_doc()
    doc["seed"] = {"a": {"re": [1, 1], "im": [0, 0]}, "b": {"re": [1, 1], "im": [0, 0]}}
    path = write_params(tmp_path, doc)
    code, _, err = run_cli(capsys, "encode", "--params", path)
    assert code == 2
    assert "not complementary" in err


def test_verify_round_trip(tmp_path, capsys):
    path = write_params(tmp_path, multilevel_doc())
    code, out, _ = run_cli(capsys, "encode", "--params", path)
    records = json.loads(out)
    pair_file = tmp_path / "pair.json"
    pair_file.write_text(json.dumps(records))
    code, out, _ = run_cli(capsys, "verify", str(pair_file))
    assert code == 0
    report = json.loads(out)
    assert report["gcp_ok"] is True
    # floats survive the JSON round trip bit-for-bit
    assert report["gcp_residual"] == records[0]["gcp_residual"]
    assert report["records"][0]["papr_db"] == records[0]["papr_db"]


def test_verify_detects_corruption(tmp_path, capsys):
    path = write_params(tmp_path, multilevel_doc())
    _, out, _ = run_cli(capsys, "encode", "--params", path)
    records = json.loads(out)
    records[0]["values"]["re"][2] += 0.25
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps(records))
    code, out, _ = run_cli(capsys, "verify", str(bad_file))
    assert code == 1
    assert json.loads(out)["gcp_residual"] > 1e-9


def test_verify_rejects_malformed_file(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run_cli(capsys, "verify", str(broken))
    assert code == 2
    assert "cannot read" in err


def test_verify_reports_gap_layout(tmp_path, capsys):
    doc = multilevel_doc()
    doc["d"] = [0, 60, 0]
    doc["seed"] = {"a": {"re": [1, 0, 1], "im": [0, 1, 0]}, "b": {"re": [1, 1, -1], "im": [0, 0, 0]}}
    path = write_params(tmp_path, doc)
    _, out, _ = run_cli(capsys, "encode", "--params", path)
    pair_file = tmp_path / "gapped.json"
    pair_file.write_text(out)
    code, out, _ = run_cli(capsys, "verify", str(pair_file))
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert [c["length"] for c in rec["clusters"]] == [12, 12]
    assert rec["gaps"] == [{"start": 12, "length": 60}]


def test_enumerate_report(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--rule", "green", "--s", "1", "--m", "3")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 768
    assert report["bits"] == 9
    assert report["length"] == 8
    assert report["unit"] == "G0"


def test_enumerate_total_and_multiseed(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--s", "2", "--m", "2")
    assert code == 0
    report = json.loads(out)
    assert report["rule"] == "total"
    assert report["count"] == 38 * 64
    code, out, _ = run_cli(capsys, "enumerate", "--s", "2", "--m", "2", "--N", "3")
    report = json.loads(out)
    assert report["n_class"] == "N>1"
    assert report["length"] == 3 * 4


def test_enumerate_dedup(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "--rule", "green", "--s", "1", "--m", "2", "--dedup")
    assert code == 0
    report = json.loads(out)
    assert report["dedup"] == 64
    assert report["dedup_matches_formula"] is True


def test_enumerate_guard_exit(capsys, monkeypatch):
    monkeypatch.setenv("CS_FORGE_MAX_ENUM", "16")
    code, _, err = run_cli(
        capsys, "enumerate", "--rule", "green", "--s", "1", "--m", "2", "--dedup"
    )
    assert code == 3
    assert "guard" in err


def test_papr_report_and_trace(tmp_path, capsys):
    path = write_params(tmp_path, multilevel_doc())
    _, out, _ = run_cli(capsys, "encode", "--params", path)
    pair_file = tmp_path / "pair.json"
    pair_file.write_text(out)
    trace_file = tmp_path / "trace.csv"
    code, out, _ = run_cli(
        capsys, "papr", str(pair_file), "--oversample", "8", "--out", str(trace_file)
    )
    assert code == 0
    report = json.loads(out)
    assert report["papr_db"] <= report["papr_bound_db"] + 1e-9
    lines = trace_file.read_text().strip().splitlines()
    assert lines[0] == "t_norm,power"
    assert len(lines) == 1 + 8 * 8


def test_simulate_noiseless_and_deterministic(tmp_path, capsys):
    cb_file = tmp_path / "codebook.json"
    cb_file.write_text(
        json.dumps({"sequences": [{"re": [1, 1], "im": [0, 0]}, {"re": [1, -1], "im": [0, 0]}]})
    )
    code, out1, _ = run_cli(
        capsys, "simulate", "--codebook", str(cb_file), "--ebn0", "inf",
        "--trials", "1000", "--rng-seed", "11",
    )
    assert code == 0
    assert json.loads(out1)["ber"] == [0.0]
    code, out2, _ = run_cli(
        capsys, "simulate", "--codebook", str(cb_file), "--ebn0", "0,5",
        "--trials", "2000", "--rng-seed", "11",
    )
    code, out3, _ = run_cli(
        capsys, "simulate", "--codebook", str(cb_file), "--ebn0", "0,5",
        "--trials", "2000", "--rng-seed", "11",
    )
    assert out2 == out3


def test_simulate_guard_on_large_m(capsys):
    code, _, err = run_cli(
        capsys, "simulate", "--rule", "green", "--s", "1", "--m", "5",
        "--ebn0", "inf", "--trials", "10",
    )
    assert code == 3
    assert "m <= 4" in err


def test_simulate_rule_codebook(capsys, monkeypatch):
    code, out, _ = run_cli(
        capsys, "simulate", "--rule", "green", "--s", "1", "--m", "2",
        "--ebn0", "inf", "--trials", "200", "--rng-seed", "1",
    )
    assert code == 0
    report = json.loads(out)
    assert report["codebook_size"] == 64
    assert report["bits_per_word"] == 6
    assert report["ber"] == [0.0]


def test_missing_inputs_exit_2(capsys):
    code, _, err = run_cli(capsys, "encode")
    assert code == 2
    code, _, err = run_cli(capsys, "simulate", "--ebn0", "0")
    assert code == 2
