import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdesk.circuit import (
    Circuit,
    CircuitSyntaxError,
    Fault,
    GateOp,
    Init,
    Label,
    Measure,
    execute,
    parse_circuit,
    render_circuit,
    run,
)
from qdesk.statevec import BooleanFunction, ResourceError, StateVector, ket, zero_state

BELL_TEXT = "qubits 2\ninit 1 +\ncnot 1 2\nmeasure 1 2"


# -- parsing ----------------------------------------------------------------


def test_bell_program_parses():
    c = parse_circuit(BELL_TEXT)
    assert c.num_qubits == 2
    # the qubits header plus three body instructions
    assert [type(i) for i in c.instructions] == [Init, GateOp, Measure]
    assert c.instructions[0] == Init(0, "+")
    assert c.instructions[2] == Measure((0, 1), "Z")


def test_double_splitter_parses():
    c = parse_circuit("qubits 1\nh 1\nmeasure 1\nh 1\nmeasure 1")
    assert len(c.instructions) == 4
    assert len(c.measurements()) == 2


def test_comments_blank_lines_and_case():
    c = parse_circuit("# header\nqubits 2   # two\n\nH 1\nCNOT 1 2\nmeasure 2 basis=x\n")
    assert c.gate_counts() == {"H": 1, "CNOT": 1}
    assert c.measurements()[0].basis == "X"


@pytest.mark.parametrize(
    "text,line",
    [
        ("cnot 1", 1),
        ("qubits 2\ncnot 1", 2),
        ("qubits 2\nh 3", 2),
        ("qubits 2\nh 0", 2),
        ("qubits 2\nlabel a\nlabel a", 3),
        ("qubits 2\nfoo 1", 2),
        ("qubits 2\ninit 1 q", 2),
        ("qubits 2\nfault Z 1 @nowhere\nlabel here", 2),
        ("qubits 2\nfault W 1", 2),
        ("qubits 3\nuf 3 1 2 table=zz", 2),
        ("qubits 2\nmeasure 1 basis=y", 2),
        ("qubits 2\ncnot 1 1", 2),
        ("qubits 2\nqubits 2", 2),
        ("", 1),
    ],
)
def test_syntax_errors_carry_line_numbers(text, line):
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_qubit_cap_is_a_resource_error():
    with pytest.raises(ResourceError):
        parse_circuit("qubits 25")


def test_uf_line():
    c = parse_circuit("qubits 3\nuf 3 1 2 table=0001")
    g = c.gates()[0]
    assert g.kind == "ControlledBoolean" and g.wires == (0, 1, 2)
    assert g.payload.table == (0, 0, 0, 1)
    assert parse_circuit("qubits 3\nuf 3 1 2 table=0x1").gates()[0].payload.table == (0, 0, 0, 1)


def test_labelled_fault_resolves_forward_reference():
    c = parse_circuit("qubits 1\nfault X 1 @later\nlabel later\nmeasure 1")
    rec = execute(c).records[0]
    assert rec.outcome.value == 1


# -- round trip ---------------------------------------------------------------


@st.composite
def circuits(draw):
    n = draw(st.integers(1, 4))
    c = Circuit(n)
    labels = []
    for k in range(draw(st.integers(0, 12))):
        op = draw(st.sampled_from(["init", "gate1", "gate2", "uf", "label", "fault", "measure"]))
        if op == "init":
            c.init(draw(st.integers(0, n - 1)), draw(st.sampled_from(["0", "1", "+", "-"])))
        elif op == "gate1":
            c.gate(draw(st.sampled_from(["H", "X", "Y", "Z", "S"])), draw(st.integers(0, n - 1)))
        elif op == "gate2" and n > 1:
            a, b = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
            c.gate(draw(st.sampled_from(["CNOT", "SWAP"])), a, b)
        elif op == "uf" and n > 1:
            wires = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=n, unique=True))
            k_in = len(wires) - 1
            table = draw(st.lists(st.integers(0, 1), min_size=1 << k_in, max_size=1 << k_in))
            c.uf(BooleanFunction(k_in, tuple(table)), wires[1:], wires[0])
        elif op == "label":
            name = f"L{k}"
            c.label(name)
            labels.append(name)
        elif op == "fault":
            at = draw(st.sampled_from([None] + labels))
            c.fault(draw(st.sampled_from("XYZ")), draw(st.integers(0, n - 1)), at)
        elif op == "measure":
            wires = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=n, unique=True))
            c.measure(*wires, basis=draw(st.sampled_from(["Z", "X"])))
    return c


@given(circuits())
@settings(max_examples=150)
def test_parse_render_round_trip(c):
    text = render_circuit(c)
    again = parse_circuit(text)
    assert again.num_qubits == c.num_qubits
    assert again.instructions == c.instructions
    assert render_circuit(again) == text


# -- running ------------------------------------------------------------------


def test_bell_run_frequencies():
    report = run(parse_circuit(BELL_TEXT), shots=1000, seed=7)
    assert set(report.frequencies) <= {"00", "11"}
    for k in ("00", "11"):
        assert 0.45 <= report.frequencies[k] <= 0.55
    assert sum(report.frequencies.values()) == pytest.approx(1)


def test_hh_run_always_zero():
    report = run(parse_circuit("qubits 1\nh 1\nh 1\nmeasure 1"), shots=300, seed=3)
    assert report.frequencies == {"0": 1.0}


def test_empty_circuit_dump():
    report = run(parse_circuit("qubits 1"), shots=1, seed=0, dump_state=True)
    assert report.final_state == ["1+0j", "0+0j"]
    assert report.outcomes == [""]
    assert StateVector.from_dump(report.final_state).allclose(ket("0"))


def test_run_is_deterministic_and_serialisable():
    c = parse_circuit("qubits 3\nh 1\nh 2\nh 3\nmeasure 1 2 3")
    a = run(c, shots=64, seed=11)
    b = run(c, shots=64, seed=11)
    assert a.outcomes == b.outcomes
    assert run(c, shots=64, seed=12).outcomes != a.outcomes
    d = json.loads(json.dumps(a.to_dict()))
    assert d["schema"] == 1 and d["shots"] == 64


def test_x_basis_measurement_in_program():
    report = run(parse_circuit("qubits 1\ninit 1 -\nmeasure 1 basis=x"), shots=20, seed=1)
    assert report.frequencies == {"1": 1.0}


def test_init_requires_fresh_wire():
    c = Circuit(1).x(0).init(0, "+")
    with pytest.raises(ValueError):
        execute(c)


def test_wire_map_runs_inside_larger_register():
    c = Circuit(2).h(0).cnot(0, 1)
    out = execute(c, zero_state(3), wire_map=[2, 0]).state
    assert out.allclose(StateVector([2**-0.5, 0, 0, 0, 0, 2**-0.5, 0, 0]))


def test_extra_faults_are_injected_at_labels():
    c = Circuit(1).label("mid").measure(0)
    assert execute(c, faults=[Fault("X", 0, "mid")]).records[0].outcome.value == 1
    with pytest.raises(ValueError):
        execute(c, faults=[Fault("X", 0, "nope")])


def test_duplicate_label_in_builder():
    c = Circuit(1).label("a")
    with pytest.raises(ValueError):
        c.label("a")
