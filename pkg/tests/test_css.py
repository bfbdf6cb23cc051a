import itertools

import numpy as np
import pytest

from conftest import equal_up_to_phase
from qdesk.circuit import Fault, GateOp, Init, execute
from qdesk.css import (
    CssConstructionError,
    UncorrectableSyndrome,
    build_css,
    correct,
    coset_basis,
    dual_toy_code,
    ec_round,
    encoding_circuit,
    extract_syndrome,
    logical_minus,
    logical_one,
    logical_plus,
    logical_state,
    logical_zero,
    steane_code,
    syndrome_circuits,
    syndrome_extraction_circuit,
    toy_code,
)
from qdesk.f2 import F2Matrix, F2Vector, hamming_p, row_span
from qdesk.measure import reduced_density_matrix, stabiliser_distribution
from qdesk.pauli import PauliOperator, apply_pauli, commutes, parse_pauli
from qdesk.statevec import Gate, StateVector, apply_gate, fidelity, ket, tensor, zero_state

STEANE = steane_code()
TOY = toy_code()


def v(s):
    return F2Vector.from_str(s)


def random_logical(code, seed):
    g = np.random.default_rng(seed)
    a, b = g.normal(size=2) + 1j * g.normal(size=2)
    return logical_state(code, a, b).dense


# -- construction -------------------------------------------------------------


def test_steane_construction():
    assert STEANE.n == 7
    assert len(STEANE.x_stabilisers) == 3 and len(STEANE.z_stabilisers) == 3
    assert STEANE.num_logical == 1


def test_toy_code_has_z_checks_only():
    assert TOY.x_stabilisers == []
    assert [str(s) for s in TOY.z_stabilisers] == ["+Z1Z2", "+Z2Z3"]


def test_non_orthogonal_rows_rejected():
    with pytest.raises(CssConstructionError, match="rows 1 and 2"):
        build_css(F2Matrix.from_rows(["110", "101"]))


def test_odd_weight_row_rejected():
    with pytest.raises(CssConstructionError, match="rows 1 and 1"):
        build_css(F2Matrix.from_rows(["111"]))


@pytest.mark.parametrize("code", [STEANE, TOY, dual_toy_code()])
def test_generators_commute_and_fix_logical_states(code):
    gens = code.stabilisers
    for a, b in itertools.combinations(gens, 2):
        assert commutes(a, b)
    for state in (logical_zero(code).dense, logical_one(code).dense):
        assert state.is_normalized()
        for g in gens:
            assert apply_pauli(state, g).allclose(state, atol=1e-12)


# -- logical states -----------------------------------------------------------


def test_steane_logical_zero():
    z = logical_zero(STEANE).dense
    nz = np.flatnonzero(np.abs(z.amplitudes) > 1e-12)
    assert len(nz) == 8
    assert np.allclose(z.amplitudes[nz], 1 / np.sqrt(8))
    assert sorted(nz) == sorted(x.value for x in row_span(hamming_p()))


def test_steane_logical_one_is_the_flipped_coset():
    one = logical_one(STEANE).dense
    expected = sorted((x + F2Vector.ones(7)).value for x in row_span(hamming_p()))
    assert sorted(np.flatnonzero(np.abs(one.amplitudes) > 1e-12)) == expected


def test_toy_logical_states():
    assert logical_zero(TOY).dense.allclose(ket("000"))
    assert logical_one(TOY).dense.allclose(ket("111"))


def test_dual_toy_logical_states():
    d = dual_toy_code()
    assert logical_zero(d).dense.allclose(ket("+++"))
    assert logical_one(d).dense.allclose(ket("---"))


def test_labels_and_normalisation():
    assert logical_plus(STEANE).label == "plus"
    assert logical_minus(STEANE).label == "minus"
    s = logical_state(STEANE, 3, 4j)
    assert s.dense.is_normalized() and s.label.startswith("general")


def test_transverse_x_swaps_logical_states():
    xs = PauliOperator.x_of(F2Vector.ones(7))
    assert apply_pauli(logical_zero(STEANE).dense, xs).allclose(logical_one(STEANE).dense)
    assert apply_pauli(logical_one(STEANE).dense, xs).allclose(logical_zero(STEANE).dense)


def test_toy_transverse_z_is_logical_z():
    zzz = PauliOperator.parse("ZZZ")
    assert apply_pauli(ket("000"), zzz).allclose(ket("000"))
    assert apply_pauli(ket("111"), zzz).allclose(ket("111").scale(-1))


def test_k_zero_code_has_no_logical_one():
    bell_code = build_css(F2Matrix.from_rows(["11"]))
    assert bell_code.num_logical == 0
    with pytest.raises(CssConstructionError):
        logical_one(bell_code)


# -- circuits -----------------------------------------------------------------


def test_steane_encoding_circuit():
    c = encoding_circuit(STEANE)
    plus_wires = [i.wire + 1 for i in c.instructions if isinstance(i, Init) and i.state == "+"]
    assert plus_wires == [1, 2, 4]
    cnots = [tuple(w + 1 for w in i.gate.wires) for i in c.instructions if isinstance(i, GateOp)]
    assert cnots == [(1, 3), (1, 5), (1, 7), (2, 3), (2, 6), (2, 7), (4, 5), (4, 6), (4, 7)]
    assert execute(c).state.allclose(logical_zero(STEANE).dense, atol=1e-12)


def test_steane_plus_encoding():
    out = execute(encoding_circuit(STEANE, "plus")).state
    assert out.allclose(logical_plus(STEANE).dense, atol=1e-12)


def test_toy_plus_encoding_is_cat_state():
    c = encoding_circuit(TOY, "plus")
    assert sum(isinstance(i, Init) and i.state == "+" for i in c.instructions) == 1
    assert c.gate_counts() == {"CNOT": 2}
    assert execute(c).state.allclose(StateVector([2**-0.5, 0, 0, 0, 0, 0, 0, 2**-0.5]))


def test_single_row_p_gives_bell_circuit():
    code = build_css(F2Matrix.from_rows(["11"]))
    c = encoding_circuit(code)
    assert [type(i).__name__ for i in c.instructions] == ["Init", "Init", "GateOp"]
    assert execute(c).state.allclose(StateVector([2**-0.5, 0, 0, 2**-0.5]))


def test_dual_code_encoding():
    d = dual_toy_code()
    assert execute(encoding_circuit(d)).state.allclose(ket("+++"))


def test_steane_x_syndrome_circuits():
    circuits = syndrome_circuits(STEANE, "X")
    assert len(circuits) == 3
    for row, c in zip(hamming_p().rows, circuits):
        gates = c.gates()
        cnots = [g for g in gates if g.kind == "CNOT"]
        assert len(cnots) == 4
        assert all(g.wires[0] == 7 for g in cnots)
        assert sorted(g.wires[1] for g in cnots) == row.support()
        assert gates[-1] == Gate("H", (7,))


def test_steane_z_syndrome_circuits_are_dual():
    for row, c in zip(hamming_p().rows, syndrome_circuits(STEANE, "Z")):
        cnots = c.gates()
        assert all(g.kind == "CNOT" and g.wires[1] == 7 for g in cnots)
        assert [g.wires[0] for g in cnots] == row.support()


def test_toy_syndrome_circuits():
    assert syndrome_circuits(TOY, "X") == []
    zs = syndrome_circuits(TOY, "Z")
    assert [[g.wires[0] + 1 for g in c.gates()] for c in zs] == [[1, 2], [2, 3]]


def test_syndrome_circuit_measures_stabiliser():
    # each single-check circuit reproduces the projector distribution
    rng = np.random.default_rng(5)
    for basis, gens in (("X", STEANE.x_stabilisers), ("Z", STEANE.z_stabilisers)):
        for c, g in zip(syndrome_circuits(STEANE, basis), gens):
            amps = rng.normal(size=128) + 1j * rng.normal(size=128)
            s = StateVector(amps, 7).normalize()
            want = {str(o): p for o, p, _ in stabiliser_distribution(s, g)}
            got = {}
            for seed in range(1):
                ex = execute(c.without_measurements(), tensor(s, zero_state(1)))
                from qdesk.measure import outcome_distribution

                got = {str(o): p for o, p, _ in outcome_distribution(ex.state, [7])}
            assert got == pytest.approx(want, abs=1e-10)


# -- syndromes and correction -------------------------------------------------


def test_clean_state_has_trivial_syndromes():
    s = random_logical(STEANE, 1)
    res = extract_syndrome(s, STEANE, 0)
    assert str(res.x_syndrome) == "000" and str(res.z_syndrome) == "000"
    assert res.post_state.allclose(s, atol=1e-12)


def test_x2_z5_syndromes():
    s = apply_pauli(random_logical(STEANE, 2), parse_pauli("X2Z5", 7))
    res = extract_syndrome(s, STEANE, 0)
    assert res.x_syndrome.bits() == (1, 0, 1)
    assert res.z_syndrome.bits() == (0, 1, 0)
    assert res.probability == pytest.approx(1)


def test_toy_bit_flip_syndrome():
    s = apply_pauli(StateVector([0.6, 0, 0, 0, 0, 0, 0, 0.8]), parse_pauli("X2", 3))
    res = extract_syndrome(s, TOY, 0)
    assert res.x_syndrome.length == 0
    assert res.z_syndrome.bits() == (1, 1)


def test_correction_examples():
    assert str(correct(STEANE, v("101"), v("010"))) == "+X2Z5"
    assert correct(STEANE, v("000"), v("000")).is_identity_up_to_phase()
    assert str(correct(TOY, F2Vector.zeros(0), v("11"))) == "+X2"


def test_uncorrectable_syndrome():
    code = build_css(F2Matrix.from_rows(["1100", "0011"]))
    with pytest.raises(UncorrectableSyndrome):
        correct(code, v("00"), v("11"))
    s = apply_pauli(logical_zero(code).dense, parse_pauli("X1X3", 4))
    out, report = ec_round(s, code, 0)
    assert report.uncorrectable and report.correction is None
    assert report.to_dict()["correction"] is None


@pytest.mark.parametrize("i", range(1, 8))
def test_single_x_injection_is_corrected(i):
    s = random_logical(STEANE, i)
    out, report = ec_round(apply_pauli(s, parse_pauli(f"X{i}", 7)), STEANE, i)
    assert equal_up_to_phase(out, s)
    assert report.correction_text == f"X{i}"


def test_no_error_gives_identity_report():
    s = random_logical(STEANE, 0)
    out, report = ec_round(s, STEANE, 0)
    assert report.correction_text == "I"
    assert out.allclose(s, atol=1e-12)


def test_weight_one_errors_on_a_sample_of_states():
    for seed in range(3):
        s = random_logical(STEANE, 100 + seed)
        for i, j in [(1, 1), (3, 6), (7, 2), (5, 5)]:
            err = parse_pauli(f"X{i}Z{j}", 7)
            out, _ = ec_round(apply_pauli(s, err), STEANE, seed)
            assert fidelity(out, s) > 1 - 1e-9


def test_reversed_order_gives_same_correction():
    s = apply_pauli(random_logical(STEANE, 9), parse_pauli("Y4", 7))
    a = ec_round(s, STEANE, 0, order="XZ")[1]
    b = ec_round(s, STEANE, 0, order="ZX")[1]
    assert a.correction_text == b.correction_text == "X4Z4"


def test_toy_code_round():
    s = StateVector([0.6, 0, 0, 0, 0, 0, 0, 0.8])
    out, report = ec_round(apply_pauli(s, parse_pauli("X3", 3)), TOY, 0)
    assert out.allclose(s)
    assert report.correction_text == "X3"


def test_dual_toy_code_corrects_phase_flips():
    d = dual_toy_code()
    s = logical_state(d, 0.6, 0.8).dense
    out, report = ec_round(apply_pauli(s, parse_pauli("Z2", 3)), d, 0)
    assert report.x_syndrome.bits() == (1, 1)
    assert out.allclose(s, atol=1e-12)


# -- environment example -----------------------------------------------------


def environment_state():
    minus_l = logical_minus(STEANE).dense
    a = tensor(ket("0"), minus_l).scale(0.8)
    b = tensor(ket("1"), apply_pauli(minus_l, parse_pauli("X2", 7))).scale(0.6)
    return a + b


def test_environment_stabiliser_probabilities():
    s = environment_state()
    z = parse_pauli("Z2Z3Z6Z7", 7)
    dist = stabiliser_distribution(s, z, list(range(1, 8)))
    assert {str(o): p for o, p, _ in dist} == pytest.approx({"0": 16 / 25, "1": 9 / 25}, abs=1e-10)


def test_environment_round_disentangles():
    seen = {}
    for seed in range(60):
        out, report = ec_round(environment_state(), STEANE, seed, data_wires=list(range(1, 8)))
        seen.setdefault(report.correction_text, report.probability)
        rho_env = reduced_density_matrix(out, [0])
        assert np.max(np.linalg.eigvalsh(rho_env)) > 1 - 1e-10
        data = reduced_density_matrix(out, list(range(1, 8)))
        minus_l = logical_minus(STEANE).dense.amplitudes
        assert abs(minus_l.conj() @ data @ minus_l) > 1 - 1e-10
    assert seen.keys() == {"I", "X2"}
    assert seen["X2"] == pytest.approx(9 / 25)
    assert seen["I"] == pytest.approx(16 / 25)


# -- faults, GHZ, logical CNOT, decomposition ---------------------------------


def test_z_syndrome_ancilla_fault_copies_up():
    s = random_logical(STEANE, 4)
    out, report = ec_round(s, STEANE, 0, faults=[Fault("Z", 7, "z1.2")])
    assert str(report.x_syndrome) == "000" and str(report.z_syndrome) == "000"
    assert report.correction_text == "I"
    assert equal_up_to_phase(out, apply_pauli(s, PauliOperator.z_of(v("0000101"))))


def test_extraction_circuit_labels():
    c = syndrome_extraction_circuit(STEANE, "X")
    assert {"x1.0", "x1.4", "x3.2"} <= set(c.labels())
    assert c.num_qubits == 10


def test_cat_state_ghz_eigenvalues():
    cat = execute(encoding_circuit(TOY, "plus")).state
    assert apply_pauli(cat, PauliOperator.parse("XXX")).allclose(cat)
    assert apply_pauli(cat, PauliOperator.parse("XYY")).allclose(cat.scale(-1))


def test_transverse_cnot_makes_logical_bell_state():
    s = tensor(logical_plus(TOY).dense, logical_zero(TOY).dense)
    for k in range(3):
        s = apply_gate(s, Gate("CNOT", (k, k + 3)))
    bell_l = (tensor(ket("000"), ket("000")) + tensor(ket("111"), ket("111"))).scale(2**-0.5)
    assert s.allclose(bell_l)


def test_orthonormal_decomposition():
    states = coset_basis(STEANE)
    assert len(states) == 128
    m = np.array([s.amplitudes for *_, s in states])
    assert np.max(np.abs(m.conj() @ m.T - np.eye(128))) < 1e-9
