import json

import pytest

from qdesk.circuit import render_circuit
from qdesk.cli import main
from qdesk.css import steane_code, syndrome_extraction_circuit

BELL = "qubits 2\ninit 1 +\ncnot 1 2\nmeasure 1 2\n"


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    payload = json.loads(out) if out.strip() else None
    return code, payload, err


@pytest.fixture
def bell_file(tmp_path):
    p = tmp_path / "bell.qc"
    p.write_text(BELL)
    return str(p)


def test_run_bell(capsys, bell_file):
    code, out, err = call(capsys, "run", bell_file, "--shots", "1000", "--seed", "3")
    assert code == 0 and out["schema"] == 1
    assert set(out["frequencies"]) == {"00", "11"}
    assert all(0.45 <= f <= 0.55 for f in out["frequencies"].values())
    assert "1000 shots" in err


def test_run_is_reproducible(capsys, bell_file):
    a = call(capsys, "run", bell_file, "--shots", "50", "--seed", "9")[1]
    b = call(capsys, "run", bell_file, "--shots", "50", "--seed", "9")[1]
    assert a == b


def test_run_from_stdin_with_dump(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("qubits 1\n"))
    code, out, _ = call(capsys, "run", "-", "--dump-state")
    assert code == 0
    assert out["final_state"][0].startswith("1")


def test_steane_demo(capsys):
    code, out, err = call(capsys, "steane", "demo", "--error", "X2,Z5", "--seed", "1")
    assert code == 0
    assert out["x_syndrome"] == [1, 0, 1] and out["z_syndrome"] == [0, 1, 0]
    assert out["correction"] == "X2Z5"
    assert out["fidelity"] > 0.999999
    assert "correction X2Z5" in err


def test_steane_demo_without_error(capsys):
    code, out, _ = call(capsys, "steane", "demo", "--z-first", "--alpha", "1", "--beta", "1j")
    assert code == 0 and out["correction"] == "I"


def test_steane_encode(capsys):
    code, out, _ = call(capsys, "steane", "encode", "--dump-state")
    assert code == 0
    assert len(out["support"]) == 8 and len(out["final_state"]) == 128


def test_dj_constant(capsys):
    code, out, _ = call(capsys, "dj", "--table", "00")
    assert code == 0 and out["verdict"] == "constant"


def test_dj_balanced_hex(capsys):
    code, out, _ = call(capsys, "dj", "--table", "0x0f", "--n", "3")
    assert code == 0 and out["verdict"] == "balanced" and out["w"] == "100"


def test_correlations(capsys):
    code, out, _ = call(capsys, "correlations", "--table", "0110")
    assert code == 0
    assert dict(out["classical"])["11"] == pytest.approx(1)
    assert out["max_abs_difference"] < 1e-10


def test_bloch(capsys):
    code, out, _ = call(capsys, "bloch", "--state", "1,0")
    assert code == 0
    assert {k: out[k] for k in "zxy"} == {"z": 1, "x": 0, "y": 0}


def test_superdense(capsys):
    code, out, _ = call(capsys, "superdense", "--bits", "10")
    assert code == 0 and out["received"] == "10" and out["ok"]


def test_teleport(capsys):
    code, out, _ = call(capsys, "teleport", "--state", "0.6,0.8i", "--seed", "4")
    assert code == 0 and out["fidelity"] > 1 - 1e-10


def test_propagate_copy_up(capsys, tmp_path):
    f = tmp_path / "z.qc"
    f.write_text(render_circuit(syndrome_extraction_circuit(steane_code(), "Z")))
    code, out, _ = call(capsys, "propagate", str(f), "--fault", "Z8@z1.2")
    assert code == 0
    assert out["result"] == "+Z5Z7Z8"
    assert out["result_mask"].startswith("+Z^0000101")


def test_uncorrectable_exit_code(capsys):
    code, out, err = call(capsys, "ec", "--p", "1100,0011", "--error", "X1,X3")
    assert code == 4
    assert out["uncorrectable"] is True and out["correction"] is None
    assert "uncorrectable" in err


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.qc"
    f.write_text("qubits 2\ncnot 1\n")
    code, out, err = call(capsys, "run", str(f))
    assert code == 2 and out is None
    assert "line 2" in err


def test_resource_cap_exit_code(capsys, tmp_path):
    f = tmp_path / "big.qc"
    f.write_text("qubits 30\n")
    assert call(capsys, "run", str(f))[0] == 3


def test_missing_file_exit_code(capsys, tmp_path):
    assert call(capsys, "run", str(tmp_path / "nope.qc"))[0] == 1


def test_bad_arguments(capsys):
    assert call(capsys, "superdense", "--bits", "12")[0] == 2
    assert call(capsys, "bloch")[0] == 2
    assert call(capsys, "ec", "--p", "110,101")[0] == 2
