"""Circuits, the line-based circuit language, and a seeded shot runner.

Grammar (one instruction per line, ``#`` starts a comment, wires 1-based)::

    qubits N
    init q 0|1|+|-
    h q | x q | y q | z q | s q
    cnot c t
    swap a b
    uf out in1 .. ink table=<hex or bits>
    fault P q [@label]          P in X, Y, Z
    label name
    measure q1 .. qk [basis=x]

A fault without ``@label`` fires where it is written. A fault with
``@label`` fires when execution reaches that label, wherever the label is
written. Measurement results of a shot are concatenated in program order.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .measure import MeasurementRecord, measure, measure_x_basis
from .pauli import PauliOperator, apply_pauli
from .rng import make_rng, shot_rng
from .statevec import (
    MAX_QUBITS,
    BooleanFunction,
    Gate,
    H,
    ResourceError,
    StateVector,
    WireError,
    X,
    apply_gate,
    apply_matrix,
    zero_state,
)

INIT_STATES = ("0", "1", "+", "-")


class CircuitSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Init:
    wire: int
    state: str


@dataclass(frozen=True)
class GateOp:
    gate: Gate


@dataclass(frozen=True)
class Fault:
    kind: str
    wire: int
    at: str | None = None


@dataclass(frozen=True)
class Measure:
    wires: tuple[int, ...]
    basis: str = "Z"


@dataclass(frozen=True)
class Label:
    name: str


Instruction = Union[Init, GateOp, Fault, Measure, Label]


@dataclass
class Circuit:
    """Ordered instructions on ``num_qubits`` wires (0-based internally)."""

    num_qubits: int
    instructions: list[Instruction] = field(default_factory=list)

    # -- builders ----------------------------------------------------
    def _wire(self, w: int) -> int:
        if not 0 <= w < self.num_qubits:
            raise WireError(f"wire {w + 1} out of range 1..{self.num_qubits}")
        return w

    def append(self, ins: Instruction) -> Circuit:
        self.instructions.append(ins)
        return self

    def init(self, wire: int, state: str) -> Circuit:
        if state not in INIT_STATES:
            raise ValueError(f"init state must be one of {INIT_STATES}")
        return self.append(Init(self._wire(wire), state))

    def gate(self, kind: str, *wires: int, payload=None) -> Circuit:
        for w in wires:
            self._wire(w)
        return self.append(GateOp(Gate(kind, tuple(wires), payload)))

    def h(self, w: int) -> Circuit:
        return self.gate("H", w)

    def x(self, w: int) -> Circuit:
        return self.gate("X", w)

    def y(self, w: int) -> Circuit:
        return self.gate("Y", w)

    def z(self, w: int) -> Circuit:
        return self.gate("Z", w)

    def s(self, w: int) -> Circuit:
        return self.gate("S", w)

    def cnot(self, c: int, t: int) -> Circuit:
        return self.gate("CNOT", c, t)

    def swap(self, a: int, b: int) -> Circuit:
        return self.gate("SWAP", a, b)

    def uf(self, f: BooleanFunction, inputs: Sequence[int], output: int) -> Circuit:
        return self.gate("ControlledBoolean", *inputs, output, payload=f)

    def fault(self, kind: str, wire: int, at: str | None = None) -> Circuit:
        if kind not in ("X", "Y", "Z"):
            raise ValueError(f"fault must be X, Y or Z, got {kind!r}")
        return self.append(Fault(kind, self._wire(wire), at))

    def label(self, name: str) -> Circuit:
        if name in self.labels():
            raise ValueError(f"duplicate label {name!r}")
        return self.append(Label(name))

    def measure(self, *wires: int, basis: str = "Z") -> Circuit:
        for w in wires:
            self._wire(w)
        return self.append(Measure(tuple(wires), basis.upper()))

    def extend(self, other: Circuit) -> Circuit:
        if other.num_qubits > self.num_qubits:
            raise WireError("appended circuit is wider than this one")
        for ins in other.instructions:
            if isinstance(ins, Label):
                self.label(ins.name)
            else:
                self.append(ins)
        return self

    # -- queries -----------------------------------------------------
    def labels(self) -> dict[str, int]:
        return {ins.name: i for i, ins in enumerate(self.instructions) if isinstance(ins, Label)}

    def step_index(self, label: str) -> int:
        try:
            return self.labels()[label]
        except KeyError:
            raise KeyError(f"no label {label!r}") from None

    def gates(self) -> list[Gate]:
        return [ins.gate for ins in self.instructions if isinstance(ins, GateOp)]

    def gate_counts(self) -> Counter:
        return Counter(g.kind for g in self.gates())

    def measurements(self) -> list[Measure]:
        return [ins for ins in self.instructions if isinstance(ins, Measure)]

    def without_measurements(self) -> Circuit:
        return Circuit(self.num_qubits, [i for i in self.instructions if not isinstance(i, Measure)])

    def validate(self) -> None:
        labels = self.labels()
        seen = set()
        for ins in self.instructions:
            if isinstance(ins, Label):
                if ins.name in seen:
                    raise ValueError(f"duplicate label {ins.name!r}")
                seen.add(ins.name)
            elif isinstance(ins, Fault) and ins.at is not None and ins.at not in labels:
                raise ValueError(f"fault references unknown label {ins.at!r}")

    def __str__(self) -> str:
        return render_circuit(self)


# ---------------------------------------------------------------------------
# text format

_LABEL_NAME = re.compile(r"^[A-Za-z_][\w.\-]*$")


def _wire_arg(tok: str, n: int | None, lineno: int) -> int:
    if n is None:
        raise CircuitSyntaxError(lineno, "'qubits N' must come first")
    if not tok.isdigit():
        raise CircuitSyntaxError(lineno, f"expected a wire number, got {tok!r}")
    w = int(tok)
    if not 1 <= w <= n:
        raise CircuitSyntaxError(lineno, f"wire {w} out of range 1..{n}")
    return w - 1


def parse_circuit(text: str) -> Circuit:
    """Parse the circuit language; errors carry the 1-based line number."""
    circuit: Circuit | None = None
    n: int | None = None
    fault_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        op = op.lower()

        def expect(count: int) -> None:
            if len(args) != count:
                raise CircuitSyntaxError(lineno, f"'{op}' takes {count} argument(s), got {len(args)}")

        if op == "qubits":
            expect(1)
            if circuit is not None:
                raise CircuitSyntaxError(lineno, "'qubits' given twice")
            if not args[0].isdigit() or int(args[0]) < 1:
                raise CircuitSyntaxError(lineno, f"bad qubit count {args[0]!r}")
            n = int(args[0])
            if n > MAX_QUBITS:
                raise ResourceError(f"line {lineno}: {n} qubits exceeds the dense cap of {MAX_QUBITS}")
            circuit = Circuit(n)
            continue
        if circuit is None:
            raise CircuitSyntaxError(lineno, "'qubits N' must come first")
        if op == "init":
            expect(2)
            if args[1] not in INIT_STATES:
                raise CircuitSyntaxError(lineno, f"init state must be one of 0 1 + -, got {args[1]!r}")
            circuit.init(_wire_arg(args[0], n, lineno), args[1])
        elif op in ("h", "x", "y", "z", "s"):
            expect(1)
            circuit.gate(op.upper(), _wire_arg(args[0], n, lineno))
        elif op in ("cnot", "swap"):
            expect(2)
            a, b = (_wire_arg(t, n, lineno) for t in args)
            if a == b:
                raise CircuitSyntaxError(lineno, f"'{op}' needs two distinct wires")
            circuit.gate(op.upper(), a, b)
        elif op == "uf":
            if len(args) < 3 or not args[-1].startswith("table="):
                raise CircuitSyntaxError(lineno, "usage: uf out in1..ink table=<hex>")
            wires = [_wire_arg(t, n, lineno) for t in args[:-1]]
            out, inputs = wires[0], wires[1:]
            if len(set(wires)) != len(wires):
                raise CircuitSyntaxError(lineno, "uf wires must be distinct")
            try:
                f = BooleanFunction.from_hex(args[-1][len("table="):], len(inputs))
            except ValueError as exc:
                raise CircuitSyntaxError(lineno, str(exc)) from None
            circuit.uf(f, inputs, out)
        elif op == "fault":
            if len(args) not in (2, 3):
                raise CircuitSyntaxError(lineno, "usage: fault X|Y|Z q [@label]")
            kind = args[0].upper()
            if kind not in ("X", "Y", "Z"):
                raise CircuitSyntaxError(lineno, f"fault must be X, Y or Z, got {args[0]!r}")
            at = None
            if len(args) == 3:
                if not args[2].startswith("@") or len(args[2]) < 2:
                    raise CircuitSyntaxError(lineno, f"expected @label, got {args[2]!r}")
                at = args[2][1:]
                fault_lines.append((lineno, at))
            circuit.fault(kind, _wire_arg(args[1], n, lineno), at)
        elif op == "label":
            expect(1)
            if not _LABEL_NAME.match(args[0]):
                raise CircuitSyntaxError(lineno, f"bad label name {args[0]!r}")
            if args[0] in circuit.labels():
                raise CircuitSyntaxError(lineno, f"duplicate label {args[0]!r}")
            circuit.label(args[0])
        elif op == "measure":
            basis = "Z"
            if args and args[-1].lower().startswith("basis="):
                basis = args.pop()[len("basis="):].upper()
                if basis not in ("X", "Z"):
                    raise CircuitSyntaxError(lineno, f"basis must be x or z, got {basis.lower()!r}")
            if not args:
                raise CircuitSyntaxError(lineno, "measure needs at least one wire")
            wires = [_wire_arg(t, n, lineno) for t in args]
            if len(set(wires)) != len(wires):
                raise CircuitSyntaxError(lineno, "measured wires must be distinct")
            circuit.measure(*wires, basis=basis)
        else:
            raise CircuitSyntaxError(lineno, f"unknown instruction {op!r}")
    if circuit is None:
        raise CircuitSyntaxError(1, "'qubits N' missing")
    labels = circuit.labels()
    for lineno, at in fault_lines:
        if at not in labels:
            raise CircuitSyntaxError(lineno, f"fault references unknown label {at!r}")
    return circuit


def render_circuit(circuit: Circuit) -> str:
    """Inverse of :func:`parse_circuit`."""
    lines = [f"qubits {circuit.num_qubits}"]
    for ins in circuit.instructions:
        if isinstance(ins, Init):
            lines.append(f"init {ins.wire + 1} {ins.state}")
        elif isinstance(ins, GateOp):
            g = ins.gate
            ws = [w + 1 for w in g.wires]
            if g.kind == "ControlledBoolean":
                inputs = " ".join(map(str, ws[:-1]))
                lines.append(f"uf {ws[-1]} {inputs} table={g.payload.to_bitstring()}")
            elif g.kind in ("ControlledUnitary", "CustomUnitary"):
                raise ValueError(f"{g.kind} has no text form")
            else:
                lines.append(f"{g.kind.lower()} {' '.join(map(str, ws))}")
        elif isinstance(ins, Fault):
            at = f" @{ins.at}" if ins.at else ""
            lines.append(f"fault {ins.kind} {ins.wire + 1}{at}")
        elif isinstance(ins, Label):
            lines.append(f"label {ins.name}")
        elif isinstance(ins, Measure):
            basis = " basis=x" if ins.basis == "X" else ""
            lines.append(f"measure {' '.join(str(w + 1) for w in ins.wires)}{basis}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# execution


@dataclass
class Execution:
    state: StateVector
    records: list[MeasurementRecord]

    @property
    def outcome_bits(self) -> str:
        return "".join(str(r.outcome) for r in self.records)

    @property
    def probability(self) -> float:
        return float(np.prod([r.probability for r in self.records])) if self.records else 1.0


def _prepare(state: StateVector, wire: int, target: str) -> StateVector:
    t = np.moveaxis(state.tensor(), wire, 0)
    if np.linalg.norm(t[1]) > 1e-12:
        raise ValueError(f"init on wire {wire + 1}, which is not in |0>")
    if target in ("1", "-"):
        state = apply_matrix(state, X, [wire])
    if target in ("+", "-"):
        state = apply_matrix(state, H, [wire])
    return state


def execute(
    circuit: Circuit,
    state: StateVector | None = None,
    rng: int | np.random.Generator = 0,
    wire_map: Sequence[int] | None = None,
    faults: Sequence[Fault] = (),
) -> Execution:
    """Run ``circuit`` once on ``state`` (default ``|0...0>``).

    ``wire_map[i]`` is the register wire that circuit wire ``i`` drives, so a
    small circuit can act inside a larger register. ``faults`` adds labelled
    faults on top of those written in the circuit.
    """
    rng = make_rng(rng)
    circuit.validate()
    if state is None:
        state = zero_state(circuit.num_qubits)
    if wire_map is None:
        wire_map = list(range(circuit.num_qubits))
    wire_map = list(wire_map)
    if len(wire_map) != circuit.num_qubits:
        raise WireError(f"wire map has {len(wire_map)} entries for {circuit.num_qubits} wires")
    if any(not 0 <= w < state.num_qubits for w in wire_map):
        raise WireError("wire map points outside the register")

    pending: dict[str, list[Fault]] = {}
    for f in list(faults) + [i for i in circuit.instructions if isinstance(i, Fault) and i.at]:
        if f.at not in circuit.labels():
            raise ValueError(f"fault references unknown label {f.at!r}")
        pending.setdefault(f.at, []).append(f)

    def inject(s: StateVector, f: Fault) -> StateVector:
        p = PauliOperator.single(1, f.kind, 0)
        return apply_pauli(s, p, [wire_map[f.wire]])

    records: list[MeasurementRecord] = []
    for ins in circuit.instructions:
        if isinstance(ins, Init):
            state = _prepare(state, wire_map[ins.wire], ins.state)
        elif isinstance(ins, GateOp):
            g = ins.gate
            state = apply_gate(state, Gate(g.kind, tuple(wire_map[w] for w in g.wires), g.payload))
        elif isinstance(ins, Fault):
            if ins.at is None:
                state = inject(state, ins)
        elif isinstance(ins, Label):
            for f in pending.get(ins.name, []):
                state = inject(state, f)
        elif isinstance(ins, Measure):
            wires = [wire_map[w] for w in ins.wires]
            rec = measure_x_basis(state, wires, rng) if ins.basis == "X" else measure(state, wires, rng)
            records.append(rec)
            state = rec.post_state
    return Execution(state, records)


@dataclass
class RunReport:
    shots: int
    seed: int
    outcomes: list[str]
    frequencies: dict[str, float]
    final_state: list[str] | None = None

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "shots": self.shots,
            "seed": self.seed,
            "outcomes": self.outcomes,
            "frequencies": self.frequencies,
        }
        if self.final_state is not None:
            out["final_state"] = self.final_state
        return out


def run(circuit: Circuit, shots: int = 1, seed: int = 0, dump_state: bool = False) -> RunReport:
    """Execute ``shots`` independent shots.

    Shot ``i`` draws from :func:`qdesk.rng.shot_rng` ``(seed, i)``, so a report
    depends only on ``(circuit, shots, seed)``. ``final_state`` is the state
    after the last shot.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    outcomes = []
    last = None
    for i in range(shots):
        ex = execute(circuit, rng=shot_rng(seed, i))
        outcomes.append(ex.outcome_bits)
        last = ex
    counts = Counter(outcomes)
    freqs = {k: counts[k] / shots for k in sorted(counts)}
    return RunReport(shots, seed, outcomes, freqs, last.state.dump() if dump_state else None)


__all__ = [
    "Circuit",
    "CircuitSyntaxError",
    "Execution",
    "Fault",
    "GateOp",
    "Init",
    "Label",
    "Measure",
    "RunReport",
    "execute",
    "parse_circuit",
    "render_circuit",
    "run",
]
