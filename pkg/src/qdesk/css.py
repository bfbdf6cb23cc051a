"""CSS codes from a parity-check matrix, with Shor-style syndrome extraction.

For a parity-check matrix ``P`` the X-stabilisers are ``X^u`` and the
Z-stabilisers ``Z^w`` for ``u, w`` in the row span of ``P``. Either family
can be switched off, which is how the length-3 repetition code (Z checks
only) and its dual (X checks only) are modelled.

Syndrome extraction appends one fresh ancilla per check, runs the CNOT
circuits, measures the ancillae and discards them. X-stabiliser circuits
run before Z-stabiliser circuits unless ``order="ZX"`` is passed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .circuit import Circuit, Fault, execute
from .f2 import F2Matrix, F2Vector, row_span, single_error_table, orthogonal_complement
from .measure import discard_wires
from .pauli import PauliOperator, apply_pauli, correction_text, commutes
from .rng import make_rng
from .statevec import StateVector, apply_matrix, H, tensor, zero_state


class CssConstructionError(ValueError):
    pass


class UncorrectableSyndrome(ValueError):
    def __init__(self, x_syndrome: F2Vector, z_syndrome: F2Vector):
        super().__init__(f"no weight<=1 correction for syndromes x={x_syndrome} z={z_syndrome}")
        self.x_syndrome = x_syndrome
        self.z_syndrome = z_syndrome


class CssCode:
    """A CSS code built from ``p``; construct with :func:`build_css`."""

    def __init__(self, p: F2Matrix, x_enabled: bool = True, z_enabled: bool = True, name: str = "css"):
        self.p = p
        self.x_enabled = x_enabled
        self.z_enabled = z_enabled
        self.name = name

    def __repr__(self) -> str:
        return f"CssCode({self.name!r}, n={self.n}, checks={self.r}, x={self.x_enabled}, z={self.z_enabled})"

    @property
    def n(self) -> int:
        return self.p.ncols

    @property
    def r(self) -> int:
        return self.p.nrows

    @cached_property
    def rank(self) -> int:
        return self.p.rank

    @cached_property
    def x_stabilisers(self) -> list[PauliOperator]:
        return [PauliOperator.x_of(row) for row in self.p.rows] if self.x_enabled else []

    @cached_property
    def z_stabilisers(self) -> list[PauliOperator]:
        return [PauliOperator.z_of(row) for row in self.p.rows] if self.z_enabled else []

    @property
    def stabilisers(self) -> list[PauliOperator]:
        return self.x_stabilisers + self.z_stabilisers

    @cached_property
    def decode_table(self) -> dict[F2Vector, F2Vector]:
        return single_error_table(self.p)

    @cached_property
    def logical_x_vector(self) -> F2Vector | None:
        """A vector ``c`` with ``X^c`` a nontrivial logical operator, all-ones if possible."""
        checks = self.p if self.z_enabled else F2Matrix((), self.n)
        stab = set(row_span(self.p)) if self.x_enabled else {F2Vector.zeros(self.n)}
        ones = F2Vector.ones(self.n)
        if all(r.dot(ones) == 0 for r in checks.rows) and ones not in stab:
            return ones
        for c in orthogonal_complement(checks):
            if c not in stab:
                return c
        return None

    @property
    def num_logical(self) -> int:
        return self.n - (self.rank if self.x_enabled else 0) - (self.rank if self.z_enabled else 0)


def build_css(p: F2Matrix, x_stabilisers: bool = True, z_stabilisers: bool = True, name: str | None = None) -> CssCode:
    """Build a CSS code, checking that the two stabiliser families commute."""
    if not (x_stabilisers or z_stabilisers):
        raise CssConstructionError("at least one stabiliser family must be enabled")
    if x_stabilisers and z_stabilisers:
        for i, a in enumerate(p.rows):
            for j in range(i, p.nrows):
                if a.dot(p.rows[j]):
                    raise CssConstructionError(
                        f"rows {i + 1} and {j + 1} of P are not orthogonal ({a} . {p.rows[j]} = 1); "
                        "X- and Z-stabilisers would anticommute"
                    )
    code = CssCode(p, x_stabilisers, z_stabilisers, name or f"css[{p.ncols}]")
    for a in code.x_stabilisers:
        for b in code.z_stabilisers:
            assert commutes(a, b)
    return code


def steane_code() -> CssCode:
    from .f2 import hamming_p

    return build_css(hamming_p(), name="steane")


def toy_code() -> CssCode:
    """Length-3 bit-flip code: Z checks only, codewords ``|000>`` and ``|111>``."""
    from .f2 import toy_p

    return build_css(toy_p(), x_stabilisers=False, name="toy")


def dual_toy_code() -> CssCode:
    """Length-3 phase-flip code: X checks only, codewords ``|+++>`` and ``|--->``."""
    from .f2 import toy_p

    return build_css(toy_p(), z_stabilisers=False, name="dual_toy")


# ---------------------------------------------------------------------------
# logical states


@dataclass(frozen=True)
class LogicalState:
    label: str
    dense: StateVector


def _uniform(n: int, vectors: Sequence[F2Vector]) -> np.ndarray:
    amps = np.zeros(1 << n, dtype=complex)
    for v in vectors:
        amps[v.value] = 1
    return amps / np.sqrt(len(vectors))


def _hadamard_all(state: StateVector) -> StateVector:
    for w in range(state.num_qubits):
        state = apply_matrix(state, H, [w])
    return state


def _basis_states(code: CssCode) -> tuple[np.ndarray, np.ndarray | None]:
    if not code.z_enabled:
        # X checks only: Hadamard image of the matching Z-only code
        dual = CssCode(code.p, False, True, code.name)
        z0, z1 = _basis_states(dual)
        h0 = _hadamard_all(StateVector(z0, code.n)).amplitudes
        h1 = None if z1 is None else _hadamard_all(StateVector(z1, code.n)).amplitudes
        return h0, h1
    group = row_span(code.p) if code.x_enabled else [F2Vector.zeros(code.n)]
    zero = _uniform(code.n, group)
    c = code.logical_x_vector
    one = None if c is None else _uniform(code.n, [v + c for v in group])
    return zero, one


def logical_zero(code: CssCode) -> LogicalState:
    """Uniform superposition over the X-stabiliser row span."""
    return LogicalState("zero", StateVector(_basis_states(code)[0], code.n))


def logical_one(code: CssCode) -> LogicalState:
    """``logical_zero`` shifted by the logical-X vector (the all-ones coset)."""
    one = _basis_states(code)[1]
    if one is None:
        raise CssConstructionError(f"{code.name} encodes no logical qubit")
    return LogicalState("one", StateVector(one, code.n))


def logical_state(code: CssCode, alpha: complex, beta: complex) -> LogicalState:
    """``alpha |0>_L + beta |1>_L`` (normalized)."""
    zero, one = _basis_states(code)
    if one is None:
        raise CssConstructionError(f"{code.name} encodes no logical qubit")
    state = StateVector(alpha * zero + beta * one, code.n).normalize()
    s = 2 ** -0.5
    label = {(1, 0): "zero", (0, 1): "one", (s, s): "plus", (s, -s): "minus"}.get(
        (round(complex(alpha).real, 12) if complex(alpha).imag == 0 else None,
         round(complex(beta).real, 12) if complex(beta).imag == 0 else None),
        f"general({alpha},{beta})",
    )
    return LogicalState(label, state)


def logical_plus(code: CssCode) -> LogicalState:
    return LogicalState("plus", logical_state(code, 1, 1).dense)


def logical_minus(code: CssCode) -> LogicalState:
    return LogicalState("minus", logical_state(code, 1, -1).dense)


# ---------------------------------------------------------------------------
# circuits


def css_state_circuit(m: F2Matrix) -> Circuit:
    """CNOT network preparing ``2^(-rank/2) sum_{v in rowspan(m)} |v>``.

    Pivot wires of the reduced matrix start in ``|+>`` and fan out to the rest
    of their row's support; every other wire starts in ``|0>``.
    """
    reduced, pivots = m.rref()
    c = Circuit(m.ncols)
    for w in range(m.ncols):
        c.init(w, "+" if w in pivots else "0")
    for row, piv in zip(reduced.rows, pivots):
        for t in row.support():
            if t != piv:
                c.cnot(piv, t)
    return c


def encoding_circuit(code: CssCode, logical: str = "zero") -> Circuit:
    """Preparation circuit for ``|0>_L`` (or ``|+>_L`` with ``logical="plus"``)."""
    if logical not in ("zero", "plus"):
        raise ValueError("logical must be 'zero' or 'plus'")
    if not code.z_enabled:
        # dual code: prepare the Z-only code's state, then Hadamard every wire
        circuit = encoding_circuit(CssCode(code.p, False, True, code.name), logical)
        for w in range(code.n):
            circuit.h(w)
        return circuit
    rows = list(code.p.rows) if code.x_enabled else []
    if logical == "plus":
        c = code.logical_x_vector
        if c is None:
            raise CssConstructionError(f"{code.name} encodes no logical qubit")
        rows.append(c)
    return css_state_circuit(F2Matrix(tuple(rows), code.n))


def _syndrome_block(circuit: Circuit, basis: str, row_index: int, row: F2Vector, ancilla: int) -> None:
    tag = f"{basis.lower()}{row_index + 1}"
    circuit.init(ancilla, "+" if basis == "X" else "0")
    circuit.label(f"{tag}.0")
    for k, d in enumerate(row.support(), start=1):
        if basis == "X":
            circuit.cnot(ancilla, d)
        else:
            circuit.cnot(d, ancilla)
        circuit.label(f"{tag}.{k}")


def syndrome_circuits(code: CssCode, basis: str) -> list[Circuit]:
    """One ancilla circuit per check on ``n + 1`` wires; the ancilla is the last wire.

    X checks: ancilla ``|+>`` controls CNOTs onto the row's support, then
    ``H`` and a Z measurement. Z checks: the row's data wires control CNOTs
    onto an ancilla in ``|0>``, then a Z measurement. Labels ``x1.2`` etc.
    mark the point after the second CNOT of check 1.
    """
    basis = basis.upper()
    if (basis == "X" and not code.x_enabled) or (basis == "Z" and not code.z_enabled):
        return []
    out = []
    for i, row in enumerate(code.p.rows):
        c = Circuit(code.n + 1)
        _syndrome_block(c, basis, i, row, code.n)
        if basis == "X":
            c.h(code.n)
        c.measure(code.n)
        out.append(c)
    return out


def syndrome_extraction_circuit(code: CssCode, basis: str) -> Circuit:
    """All checks of one family on ``n + r`` wires, ancilla ``i`` on wire ``n + i``.

    The ancillae are measured together at the end, so the single measurement
    record is the syndrome.
    """
    basis = basis.upper()
    c = Circuit(code.n + code.r)
    ancillae = [code.n + i for i in range(code.r)]
    for i, row in enumerate(code.p.rows):
        _syndrome_block(c, basis, i, row, ancillae[i])
    if basis == "X":
        for a in ancillae:
            c.h(a)
    c.measure(*ancillae)
    return c


# ---------------------------------------------------------------------------
# error correction


@dataclass
class SyndromeResult:
    x_syndrome: F2Vector
    z_syndrome: F2Vector
    post_state: StateVector
    probability: float


def extract_syndrome(
    state: StateVector,
    code: CssCode,
    rng: int | np.random.Generator = 0,
    data_wires: Sequence[int] | None = None,
    order: str = "XZ",
    faults: Sequence[Fault] = (),
) -> SyndromeResult:
    """Measure every enabled check on the data wires of ``state``.

    ``faults`` are labelled faults on the extraction circuits, with ancilla
    ``i`` of a family on circuit wire ``n + i``.
    """
    rng = make_rng(rng)
    if data_wires is None:
        data_wires = list(range(code.n))
    data_wires = list(data_wires)
    if len(data_wires) != code.n:
        raise ValueError(f"{code.name} needs {code.n} data wires, got {len(data_wires)}")
    if sorted(order.upper()) != ["X", "Z"]:
        raise ValueError("order must be 'XZ' or 'ZX'")
    syndromes = {"X": F2Vector.zeros(0), "Z": F2Vector.zeros(0)}
    probability = 1.0
    for basis in order.upper():
        if not (code.x_enabled if basis == "X" else code.z_enabled):
            continue
        circuit = syndrome_extraction_circuit(code, basis)
        labels = circuit.labels()
        base = state.num_qubits
        state = tensor(state, zero_state(code.r))
        wire_map = data_wires + [base + i for i in range(code.r)]
        ex = execute(circuit, state, rng, wire_map, [f for f in faults if f.at in labels])
        rec = ex.records[0]
        syndromes[basis] = rec.outcome
        probability *= rec.probability
        state = discard_wires(ex.state, wire_map[code.n:])
    return SyndromeResult(syndromes["X"], syndromes["Z"], state, probability)


def correct(code: CssCode, x_syndrome: F2Vector, z_syndrome: F2Vector) -> PauliOperator:
    """Correction for the given syndromes.

    X-stabilisers detect Z errors and Z-stabilisers detect X errors, so the
    X part comes from the Z syndrome and vice versa.
    """
    n = code.n
    x_part = F2Vector.zeros(n)
    z_part = F2Vector.zeros(n)
    if code.z_enabled and z_syndrome.length:
        e = code.decode_table.get(z_syndrome)
        if e is None:
            raise UncorrectableSyndrome(x_syndrome, z_syndrome)
        x_part = e
    if code.x_enabled and x_syndrome.length:
        e = code.decode_table.get(x_syndrome)
        if e is None:
            raise UncorrectableSyndrome(x_syndrome, z_syndrome)
        z_part = e
    return PauliOperator(x_part, z_part)


@dataclass
class EcReport:
    x_syndrome: F2Vector
    z_syndrome: F2Vector
    correction: PauliOperator | None
    probability: float
    uncorrectable: bool = False
    fidelity: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def correction_text(self) -> str | None:
        return None if self.correction is None else correction_text(self.correction)

    def to_dict(self) -> dict:
        out = {
            "x_syndrome": list(self.x_syndrome),
            "z_syndrome": list(self.z_syndrome),
            "correction": self.correction_text,
            "uncorrectable": self.uncorrectable,
            "probability": self.probability,
            "fidelity": self.fidelity,
        }
        out.update(self.extra)
        return out


def ec_round(
    state: StateVector,
    code: CssCode,
    rng: int | np.random.Generator = 0,
    data_wires: Sequence[int] | None = None,
    order: str = "XZ",
    faults: Sequence[Fault] = (),
) -> tuple[StateVector, EcReport]:
    """Extract syndromes, decode, and apply the correction.

    An uncorrectable syndrome is reported and the measured state returned
    without a correction.
    """
    if data_wires is None:
        data_wires = list(range(code.n))
    res = extract_syndrome(state, code, rng, data_wires, order, faults)
    try:
        fix = correct(code, res.x_syndrome, res.z_syndrome)
    except UncorrectableSyndrome:
        return res.post_state, EcReport(res.x_syndrome, res.z_syndrome, None, res.probability, uncorrectable=True)
    out = apply_pauli(res.post_state, fix, data_wires)
    return out, EcReport(res.x_syndrome, res.z_syndrome, fix, res.probability)


def coset_basis(code: CssCode) -> list[tuple[F2Vector, F2Vector, int, StateVector]]:
    """States ``X^e Z^f |b>_L`` with ``e, f`` ranging over the decode-table errors.

    For a perfect code these span the whole register.
    """
    leaders = sorted(set(code.decode_table.values()))
    zero = logical_zero(code).dense
    one = logical_one(code).dense
    out = []
    for e in leaders:
        for f in leaders:
            p = PauliOperator(e, f)
            for b, s in ((0, zero), (1, one)):
                out.append((e, f, b, apply_pauli(s, p)))
    return out
