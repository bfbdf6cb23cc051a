"""Pauli operators with exact phases, and fault propagation through Clifford gates.

A :class:`PauliOperator` on ``n`` qubits is ``i**k * X^x Z^z`` where, on
each qubit, the X factor is written to the left of the Z factor. So
``x = z = 1`` on a qubit is the product ``XZ``, which equals ``-iY``.

Conjugation follows the copy rules for CNOT::

    X_c -> X_c X_t    X_t -> X_t    Z_c -> Z_c    Z_t -> Z_c Z_t

together with ``H: X <-> Z`` and ``S: X -> Y, Z -> Z``. The image of a
general Pauli is the ordered product of the images of its X and Z factors,
which keeps the phase exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .f2 import F2DimensionError, F2Vector
from .statevec import I2, X, Z, Gate, StateVector, WireError, apply_matrix

PHASES = (1, 1j, -1, -1j)
PHASE_TEXT = ("+", "+i", "-", "-i")


class UnsupportedGateError(ValueError):
    """Raised when propagation meets a gate outside the Clifford set."""


@dataclass(frozen=True)
class PauliOperator:
    """``i**phase * X^x_bits Z^z_bits`` with ``phase`` taken mod 4."""

    x_bits: F2Vector
    z_bits: F2Vector
    phase: int = 0

    def __post_init__(self) -> None:
        if self.x_bits.length != self.z_bits.length:
            raise F2DimensionError("x and z parts differ in length")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(F2Vector.zeros(n), F2Vector.zeros(n))

    @classmethod
    def from_xz(cls, x: F2Vector | str, z: F2Vector | str, phase: int = 0) -> PauliOperator:
        x = F2Vector.from_str(x) if isinstance(x, str) else x
        z = F2Vector.from_str(z) if isinstance(z, str) else z
        return cls(x, z, phase)

    @classmethod
    def x_of(cls, u: F2Vector) -> PauliOperator:
        """``X^u``."""
        return cls(u, F2Vector.zeros(u.length))

    @classmethod
    def z_of(cls, w: F2Vector) -> PauliOperator:
        """``Z^w``."""
        return cls(F2Vector.zeros(w.length), w)

    @classmethod
    def single(cls, n: int, kind: str, wire: int) -> PauliOperator:
        """One of ``I, X, Y, Z`` on 0-based ``wire``."""
        e = F2Vector.unit(n, wire)
        o = F2Vector.zeros(n)
        kind = kind.upper()
        if kind == "I":
            return cls(o, o)
        if kind == "X":
            return cls(e, o)
        if kind == "Z":
            return cls(o, e)
        if kind == "Y":
            return cls(e, e, 1)
        raise ValueError(f"unknown Pauli {kind!r}")

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> PauliOperator:
        """Parse ``"+X1Z3"``, ``"-iY2"``, ``"XZIY"``, ``"Z^0000101"`` or ``"X^101 Z^010"``.

        Indexed terms are 1-based and need ``n`` unless a bitmask or dense
        form fixes the length. Repeated factors are multiplied left to right.
        """
        return parse_pauli(text, n)

    # -- properties ---------------------------------------------------
    @property
    def n(self) -> int:
        return self.x_bits.length

    @property
    def coefficient(self) -> complex:
        return PHASES[self.phase]

    @property
    def weight(self) -> int:
        return bin(self.x_bits.value | self.z_bits.value).count("1")

    def is_identity_up_to_phase(self) -> bool:
        return self.x_bits.is_zero() and self.z_bits.is_zero()

    def is_hermitian(self) -> bool:
        # dagger of i^k X^x Z^z is i^-k (-1)^{x.z} X^x Z^z
        return self.phase % 2 == self.x_bits.dot(self.z_bits)

    def dropping_phase(self) -> PauliOperator:
        return PauliOperator(self.x_bits, self.z_bits, 0)

    def restrict(self, wires: Sequence[int]) -> PauliOperator:
        """Keep only ``wires`` (0-based, in the given order), keeping the phase."""
        x = F2Vector.from_bits(self.x_bits[w] for w in wires)
        z = F2Vector.from_bits(self.z_bits[w] for w in wires)
        return PauliOperator(x, z, self.phase)

    def embed(self, n: int, wires: Sequence[int]) -> PauliOperator:
        """Place this operator on ``wires`` of an ``n``-qubit register."""
        if len(wires) != self.n:
            raise F2DimensionError(f"{self.n}-qubit operator on {len(wires)} wires")
        x = F2Vector.from_support(n, [w for w, b in zip(wires, self.x_bits) if b])
        z = F2Vector.from_support(n, [w for w, b in zip(wires, self.z_bits) if b])
        return PauliOperator(x, z, self.phase)

    # -- algebra ------------------------------------------------------
    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __neg__(self) -> PauliOperator:
        return PauliOperator(self.x_bits, self.z_bits, self.phase + 2)

    def times_phase(self, k: int) -> PauliOperator:
        """Multiply by ``i**k``."""
        return PauliOperator(self.x_bits, self.z_bits, self.phase + k)

    def to_matrix(self) -> np.ndarray:
        mats = []
        for xb, zb in zip(self.x_bits, self.z_bits):
            m = I2
            if xb:
                m = X
            if zb:
                m = m @ Z
            mats.append(m)
        return self.coefficient * reduce(np.kron, mats)

    def __str__(self) -> str:
        return render_pauli(self)

    def __repr__(self) -> str:
        return f"PauliOperator({render_pauli(self)!r}, n={self.n})"


def _check_sizes(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise F2DimensionError(f"size mismatch: {p.n} vs {q.n} qubits")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact product ``p q``.

    ``X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}``: moving ``p``'s Z part
    past ``q``'s X part costs a sign for every overlap.
    """
    _check_sizes(p, q)
    sign = 2 * p.z_bits.dot(q.x_bits)
    return PauliOperator(p.x_bits + q.x_bits, p.z_bits + q.z_bits, p.phase + q.phase + sign)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """True iff the symplectic form ``x_p.z_q + z_p.x_q`` vanishes."""
    _check_sizes(p, q)
    return (p.x_bits.dot(q.z_bits) ^ p.z_bits.dot(q.x_bits)) == 0


def product(ops: Iterable[PauliOperator], n: int) -> PauliOperator:
    return reduce(multiply, ops, PauliOperator.identity(n))


# ---------------------------------------------------------------------------
# conjugation


def _generator_images(g: Gate, n: int, wire: int) -> tuple[PauliOperator, PauliOperator]:
    """Images of ``X_wire`` and ``Z_wire`` under conjugation by ``g``."""
    xw = PauliOperator.single(n, "X", wire)
    zw = PauliOperator.single(n, "Z", wire)
    if wire not in g.wires:
        return xw, zw
    kind = g.kind
    if kind == "H":
        return zw, xw
    if kind == "S":
        return PauliOperator.single(n, "Y", wire), zw
    if kind == "X":
        return xw, -zw
    if kind == "Z":
        return -xw, zw
    if kind == "Y":
        return -xw, -zw
    if kind == "CNOT":
        c, t = g.wires
        if wire == c:
            return xw * PauliOperator.single(n, "X", t), zw
        return xw, PauliOperator.single(n, "Z", c) * zw
    if kind == "SWAP":
        a, b = g.wires
        other = b if wire == a else a
        return PauliOperator.single(n, "X", other), PauliOperator.single(n, "Z", other)
    raise UnsupportedGateError(f"{g} is not a Clifford gate")


def conjugate_through(p: PauliOperator, g: Gate) -> PauliOperator:
    """``g p g^-1`` for a Clifford gate ``g``, phase included."""
    if not g.is_clifford:
        raise UnsupportedGateError(f"{g} is not a Clifford gate")
    for w in g.wires:
        if not 0 <= w < p.n:
            raise WireError(f"wire {w + 1} out of range for {p.n} qubits")
    n = p.n
    out = PauliOperator.identity(n).times_phase(p.phase)
    for w in range(n):
        gx, gz = _generator_images(g, n, w)
        if p.x_bits[w]:
            out = out * gx
        if p.z_bits[w]:
            out = out * gz
    return out


def propagate(p: PauliOperator, circuit, from_step: int | str = 0) -> PauliOperator:
    """Push the fault ``p`` from ``from_step`` to the end of ``circuit``.

    ``circuit`` is a :class:`~qdesk.circuit.Circuit` (or a plain sequence of
    gates); ``from_step`` is an instruction index or a label name. Labels,
    faults and measurements are passed over; a mid-circuit ``init`` on a wire
    the fault touches, or any non-Clifford gate, raises.
    """
    from .circuit import GateOp, Init, Circuit

    if isinstance(circuit, Circuit):
        instructions = circuit.instructions
        start = circuit.step_index(from_step) if isinstance(from_step, str) else int(from_step)
    else:
        instructions = [GateOp(g) for g in circuit]
        start = int(from_step)
    for step in range(start, len(instructions)):
        ins = instructions[step]
        if isinstance(ins, GateOp):
            if not ins.gate.is_clifford:
                raise UnsupportedGateError(f"step {step}: {ins.gate} is not a Clifford gate")
            p = conjugate_through(p, ins.gate)
        elif isinstance(ins, Init):
            if p.x_bits[ins.wire] or p.z_bits[ins.wire]:
                raise UnsupportedGateError(f"step {step}: fault reaches re-initialised wire {ins.wire + 1}")
    return p


def apply_pauli(state: StateVector, p: PauliOperator, wires: Sequence[int] | None = None) -> StateVector:
    """Apply ``p`` exactly; ``wires`` places a smaller operator inside a larger register."""
    if wires is None:
        if p.n != state.num_qubits:
            raise F2DimensionError(f"{p.n}-qubit Pauli on a {state.num_qubits}-qubit state")
        wires = range(p.n)
    wires = list(wires)
    if len(wires) != p.n:
        raise F2DimensionError(f"{p.n}-qubit Pauli on {len(wires)} wires")
    for w, xb, zb in zip(wires, p.x_bits, p.z_bits):
        if zb:
            state = apply_matrix(state, Z, [w])
        if xb:
            state = apply_matrix(state, X, [w])
    return state.scale(p.coefficient) if p.phase else state


# ---------------------------------------------------------------------------
# text forms

_TERM = re.compile(r"([IXYZ])(\d+)")
_MASK = re.compile(r"([XZ])\^([01]+)")
_PHASE = re.compile(r"^([+-]?)(i?)")


def _phase_prefix(text: str) -> tuple[int, str]:
    m = _PHASE.match(text)
    sign, imag = m.group(1), m.group(2)
    k = (2 if sign == "-" else 0) + (1 if imag else 0)
    return k, text[m.end():]


def parse_pauli(text: str, n: int | None = None) -> PauliOperator:
    raw = text.strip().replace(" ", "").replace("*", "")
    k, body = _phase_prefix(raw)
    if not body:
        raise ValueError(f"empty Pauli string: {text!r}")
    if body == "I" and n is not None:
        # indexed rendering of the identity
        return PauliOperator.identity(n).times_phase(k)
    if "^" in body:
        parts = _MASK.findall(body)
        if "".join(f"{a}^{b}" for a, b in parts) != body:
            raise ValueError(f"bad bitmask Pauli: {text!r}")
        size = len(parts[0][1])
        if n is not None and n != size:
            raise F2DimensionError(f"bitmask length {size} != {n}")
        out = PauliOperator.identity(size).times_phase(k)
        for kind, bits in parts:
            v = F2Vector.from_str(bits)
            if v.length != size:
                raise F2DimensionError("bitmasks differ in length")
            out = out * (PauliOperator.x_of(v) if kind == "X" else PauliOperator.z_of(v))
        return out
    if set(body) <= set("IXYZ"):
        if n is not None and len(body) != n:
            raise F2DimensionError(f"dense Pauli of length {len(body)} != {n}")
        size = len(body)
        out = PauliOperator.identity(size).times_phase(k)
        for w, c in enumerate(body):
            out = out * PauliOperator.single(size, c, w)
        return out
    terms = _TERM.findall(body)
    if "".join(a + b for a, b in terms) != body:
        raise ValueError(f"bad Pauli string: {text!r}")
    if n is None:
        n = max(int(w) for _, w in terms)
    out = PauliOperator.identity(n).times_phase(k)
    for kind, w in terms:
        w = int(w)
        if not 1 <= w <= n:
            raise WireError(f"qubit {w} out of range 1..{n}")
        out = out * PauliOperator.single(n, kind, w - 1)
    return out


def render_pauli(p: PauliOperator, style: str = "indexed") -> str:
    """Text form with ``Y`` surfaced.

    ``style="indexed"`` gives ``"+X1Z3"`` (``"+I"`` for the identity),
    ``"dense"`` gives ``"+XIZ"``, ``"mask"`` gives ``"+X^100 Z^001"`` in the
    internal X-then-Z order without Y.
    """
    if style == "mask":
        parts = []
        if not p.x_bits.is_zero():
            parts.append(f"X^{p.x_bits}")
        if not p.z_bits.is_zero() or not parts:
            parts.append(f"Z^{p.z_bits}")
        return PHASE_TEXT[p.phase] + " ".join(parts)
    letters = []
    ys = 0
    for xb, zb in zip(p.x_bits, p.z_bits):
        if xb and zb:
            letters.append("Y")
            ys += 1
        else:
            letters.append("X" if xb else "Z" if zb else "I")
    # each XZ = -iY, so i^k (XZ)^m = i^(k-m) Y^m
    prefix = PHASE_TEXT[(p.phase - ys) % 4]
    if style == "dense":
        return prefix + "".join(letters)
    body = "".join(f"{c}{i + 1}" for i, c in enumerate(letters) if c != "I")
    return prefix + (body or "I")


def correction_text(p: PauliOperator) -> str:
    """Phase-free indexed form used in reports, e.g. ``"X2Z5"``; X part first."""
    xs = "".join(f"X{i}" for i in p.x_bits.support1())
    zs = "".join(f"Z{i}" for i in p.z_bits.support1())
    return xs + zs or "I"
