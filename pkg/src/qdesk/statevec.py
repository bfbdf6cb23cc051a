"""Dense state vectors and unitary gate application.

A state on ``n`` qubits is an array of ``2**n`` complex amplitudes. Index
``k`` is read as a bit-string with qubit 1 as the most significant bit, so
``|100>`` lives at index 4. Internally wires are 0-based.

Gates are applied by viewing the amplitudes as an ``(2,)*n`` tensor whose
axis ``i`` is wire ``i`` and contracting the gate matrix against the named
axes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .f2 import F2Vector, F2DimensionError
from .rng import make_rng

MAX_QUBITS = 24
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12

SQRT1_2 = 1 / np.sqrt(2)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
Y = 1j * X @ Z
H = SQRT1_2 * np.array([[1, 1], [1, -1]], dtype=complex)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

FIXED_MATRICES = {"X": X, "Y": Y, "Z": Z, "H": H, "S": S, "CNOT": CNOT, "SWAP": SWAP}
CLIFFORD_KINDS = frozenset(FIXED_MATRICES)
GATE_KINDS = CLIFFORD_KINDS | {"ControlledBoolean", "ControlledUnitary", "CustomUnitary"}


class ResourceError(RuntimeError):
    """The requested state exceeds the dense-simulation cap."""


class NotUnitaryError(ValueError):
    pass


class WireError(ValueError):
    pass


def _check_qubits(n: int) -> None:
    if n < 1:
        raise ValueError("need at least one qubit")
    if n > MAX_QUBITS:
        raise ResourceError(f"{n} qubits exceeds the dense cap of {MAX_QUBITS}")


class StateVector:
    """Amplitudes of an ``n``-qubit pure state.

    Treat instances as immutable: every operation in this package returns a
    new state.
    """

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes: Iterable[complex] | np.ndarray, num_qubits: int | None = None):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if num_qubits is None:
            num_qubits = int(round(np.log2(amps.size))) if amps.size else 0
        _check_qubits(num_qubits)
        if amps.size != 1 << num_qubits:
            raise F2DimensionError(f"{amps.size} amplitudes cannot describe {num_qubits} qubits")
        amps.setflags(write=False)
        self.num_qubits = num_qubits
        self.amplitudes = amps

    def __repr__(self) -> str:
        return f"StateVector({self.num_qubits} qubits, norm={self.norm():.12g})"

    def __len__(self) -> int:
        return self.amplitudes.size

    def __getitem__(self, label: int | str | F2Vector) -> complex:
        return complex(self.amplitudes[_index(label)])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> StateVector:
        nrm = self.norm()
        if nrm == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / nrm, self.num_qubits)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1) <= tol

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def scale(self, c: complex) -> StateVector:
        return StateVector(self.amplitudes * c, self.num_qubits)

    def __add__(self, other: StateVector) -> StateVector:
        _same_size(self, other)
        return StateVector(self.amplitudes + other.amplitudes, self.num_qubits)

    def __sub__(self, other: StateVector) -> StateVector:
        _same_size(self, other)
        return StateVector(self.amplitudes - other.amplitudes, self.num_qubits)

    def __rmul__(self, c: complex) -> StateVector:
        return self.scale(c)

    def allclose(self, other: StateVector, atol: float = 1e-12) -> bool:
        return self.num_qubits == other.num_qubits and np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0)

    def support(self, tol: float = 1e-14) -> list[str]:
        """Labels of basis states with non-negligible amplitude."""
        return [format(k, f"0{self.num_qubits}b") for k in np.flatnonzero(np.abs(self.amplitudes) > tol)]

    def dump(self) -> list[str]:
        """Lossless text form of the amplitudes, ``re+imj`` with 17 significant digits."""
        return [format_complex(a) for a in self.amplitudes]

    @classmethod
    def from_dump(cls, items: Sequence[str]) -> StateVector:
        return cls([complex(s) for s in items])


def format_complex(a: complex) -> str:
    a = complex(a)
    return f"{a.real:.17g}{a.imag:+.17g}j"


def _index(label: int | str | F2Vector) -> int:
    if isinstance(label, F2Vector):
        return label.value
    if isinstance(label, str):
        return F2Vector.from_str(label).value
    return int(label)


def _same_size(a: StateVector, b: StateVector) -> None:
    if a.num_qubits != b.num_qubits:
        raise F2DimensionError(f"qubit count mismatch: {a.num_qubits} vs {b.num_qubits}")


# ---------------------------------------------------------------------------
# named states


def make_basis_state(n: int, v: F2Vector | str | Sequence[int]) -> StateVector:
    """``|v>`` on ``n`` qubits."""
    _check_qubits(n)
    if not isinstance(v, F2Vector):
        v = F2Vector.from_str(v) if isinstance(v, str) else F2Vector.from_bits(v)
    if v.length != n:
        raise F2DimensionError(f"label has length {v.length}, expected {n}")
    amps = np.zeros(1 << n, dtype=complex)
    amps[v.value] = 1
    return StateVector(amps, n)


def zero_state(n: int) -> StateVector:
    return make_basis_state(n, F2Vector.zeros(n))


def qubit(alpha: complex, beta: complex) -> StateVector:
    return StateVector([alpha, beta], 1)


KET = {
    "0": qubit(1, 0),
    "1": qubit(0, 1),
    "+": qubit(SQRT1_2, SQRT1_2),
    "-": qubit(SQRT1_2, -SQRT1_2),
}


def ket(labels: str) -> StateVector:
    """Product state from a string over ``01+-``, e.g. ``ket("+0")``."""
    out = KET[labels[0]]
    for c in labels[1:]:
        out = tensor(out, KET[c])
    return out


def random_state(n: int, rng: int | np.random.Generator = 0) -> StateVector:
    g = make_rng(rng)
    amps = g.normal(size=1 << n) + 1j * g.normal(size=1 << n)
    return StateVector(amps, n).normalize()


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    _same_size(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """``|<a|b>|``; equal to 1 exactly when the states agree up to global phase."""
    return abs(inner_product(a, b))


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """``a (x) b`` with ``a``'s qubits first."""
    _check_qubits(a.num_qubits + b.num_qubits)
    return StateVector(np.kron(a.amplitudes, b.amplitudes), a.num_qubits + b.num_qubits)


def tensor_all(states: Iterable[StateVector]) -> StateVector:
    it = iter(states)
    out = next(it)
    for s in it:
        out = tensor(out, s)
    return out


# ---------------------------------------------------------------------------
# Boolean functions


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of ``f : F2^n -> F2``; ``table[v]`` is ``f`` at the packed input ``v``."""

    arity: int
    table: tuple[int, ...]
    name: str = field(default="table", compare=False)

    def __post_init__(self) -> None:
        if len(self.table) != 1 << self.arity:
            raise F2DimensionError(f"truth table length {len(self.table)} != 2^{self.arity}")
        if any(b not in (0, 1) for b in self.table):
            raise ValueError("truth table entries must be 0 or 1")

    def __call__(self, v: F2Vector | int) -> int:
        return self.table[int(v)]

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[F2Vector], int], name: str = "callable") -> BooleanFunction:
        return cls(n, tuple(int(fn(F2Vector(n, v))) & 1 for v in range(1 << n)), name)

    @classmethod
    def constant(cls, n: int, value: int) -> BooleanFunction:
        return cls(n, (value & 1,) * (1 << n), f"constant{value & 1}")

    @classmethod
    def dot_with(cls, w: F2Vector) -> BooleanFunction:
        return cls.from_callable(w.length, w.dot, f"dot_{w}")

    @classmethod
    def balanced_sample(cls, n: int, seed: int = 0) -> BooleanFunction:
        g = make_rng(seed)
        table = np.zeros(1 << n, dtype=int)
        table[g.permutation(1 << n)[: 1 << (n - 1)]] = 1
        return cls(n, tuple(int(b) for b in table), f"balanced_sample({seed})")

    @classmethod
    def random(cls, n: int, seed: int = 0) -> BooleanFunction:
        g = make_rng(seed)
        return cls(n, tuple(int(b) for b in g.integers(0, 2, size=1 << n)), f"random({seed})")

    @classmethod
    def from_bitstring(cls, bits: str) -> BooleanFunction:
        size = len(bits)
        n = size.bit_length() - 1
        if size == 0 or 1 << n != size:
            raise ValueError(f"truth table length {size} is not a power of two")
        return cls(n, tuple(int(c) for c in F2Vector.from_str(bits)))

    @classmethod
    def from_hex(cls, text: str, n: int | None = None) -> BooleanFunction:
        """Parse a truth table.

        A plain ``0``/``1`` string whose length is a power of two is read
        literally, entry ``f(0)`` first. Anything else (or a ``0x`` prefix) is
        hexadecimal, most significant bit = ``f(0)``, padded on the left to
        ``2**n`` bits; ``n`` defaults to the smallest arity that fits.
        """
        text = text.strip().lower()
        forced_hex = text.startswith("0x")
        if forced_hex:
            text = text[2:]
        if not text:
            raise ValueError("empty truth table")
        if not forced_hex and set(text) <= {"0", "1"}:
            size = len(text)
            if size & (size - 1) == 0 and (n is None or size == 1 << n):
                return cls.from_bitstring(text)
        value = int(text, 16)
        if n is None:
            width = 4 * len(text)
            n = max(0, (width - 1).bit_length())
        size = 1 << n
        if value >> size:
            raise ValueError(f"hex table {text!r} has more than 2^{n} bits")
        return cls(n, tuple((value >> (size - 1 - v)) & 1 for v in range(size)))

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.table)

    def to_hex(self) -> str:
        size = 1 << self.arity
        value = int(self.to_bitstring(), 2)
        return format(value, f"0{max(1, (size + 3) // 4)}x")

    @property
    def weight(self) -> int:
        return sum(self.table)

    def is_constant(self) -> bool:
        return self.weight in (0, 1 << self.arity)

    def is_balanced(self) -> bool:
        return 2 * self.weight == 1 << self.arity


# ---------------------------------------------------------------------------
# gates


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u)
    return u.ndim == 2 and u.shape[0] == u.shape[1] and np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=tol, rtol=0)


@dataclass(frozen=True)
class Gate:
    """A gate on named wires (0-based).

    ``ControlledBoolean`` wires are the inputs followed by the output wire.
    ``ControlledUnitary`` wires are the control followed by the targets.
    """

    kind: str
    wires: tuple[int, ...]
    payload: np.ndarray | BooleanFunction | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(set(self.wires)) != len(self.wires):
            raise WireError(f"{self.kind}: wires must be distinct, got {self.wires}")
        if any(w < 0 for w in self.wires):
            raise WireError(f"{self.kind}: negative wire in {self.wires}")
        arity = {"CNOT": 2, "SWAP": 2}.get(self.kind, 1 if self.kind in CLIFFORD_KINDS else None)
        if arity is not None and len(self.wires) != arity:
            raise WireError(f"{self.kind} takes {arity} wire(s), got {len(self.wires)}")
        if self.kind == "ControlledBoolean":
            f = self.payload
            if not isinstance(f, BooleanFunction):
                raise TypeError("ControlledBoolean needs a BooleanFunction payload")
            if f.arity != len(self.wires) - 1:
                raise F2DimensionError(f"function arity {f.arity} but {len(self.wires) - 1} input wires")
        elif self.kind in ("ControlledUnitary", "CustomUnitary"):
            u = np.asarray(self.payload, dtype=complex)
            k = len(self.wires) - (1 if self.kind == "ControlledUnitary" else 0)
            if k < 1 or u.shape != (1 << k, 1 << k):
                raise F2DimensionError(f"{self.kind}: matrix shape {u.shape} does not fit {k} target wire(s)")
            if not is_unitary(u):
                raise NotUnitaryError(f"{self.kind}: payload is not unitary within {UNITARY_TOL}")
            u.setflags(write=False)
            object.__setattr__(self, "payload", u)

    @property
    def is_clifford(self) -> bool:
        return self.kind in CLIFFORD_KINDS

    def matrix(self) -> np.ndarray:
        """Matrix on ``len(wires)`` qubits, first wire most significant."""
        if self.kind in FIXED_MATRICES:
            return FIXED_MATRICES[self.kind]
        if self.kind == "CustomUnitary":
            return self.payload
        if self.kind == "ControlledUnitary":
            u = self.payload
            d = u.shape[0]
            out = np.eye(2 * d, dtype=complex)
            out[d:, d:] = u
            return out
        f = self.payload
        size = 1 << (f.arity + 1)
        out = np.zeros((size, size), dtype=complex)
        for k in range(size):
            v, b = k >> 1, k & 1
            out[(v << 1) | (b ^ f(v)), k] = 1
        return out

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(w + 1) for w in self.wires)})"


def gate(kind: str, *wires: int, payload=None) -> Gate:
    return Gate(kind, tuple(wires), payload)


def embed_matrix(gate_: Gate, n: int) -> np.ndarray:
    """Full ``2**n`` square matrix of ``gate_`` acting on an ``n``-qubit register."""
    basis = np.eye(1 << n, dtype=complex)
    cols = [apply_gate(StateVector(basis[:, k], n), gate_).amplitudes for k in range(1 << n)]
    return np.array(cols).T


def _apply_matrix(state: StateVector, u: np.ndarray, wires: Sequence[int]) -> StateVector:
    n = state.num_qubits
    k = len(wires)
    t = state.tensor()
    ut = u.reshape((2,) * (2 * k))
    # contract the input axes of u with the named wires; result has gate outputs first
    out = np.tensordot(ut, t, axes=(list(range(k, 2 * k)), list(wires)))
    out = np.moveaxis(out, list(range(k)), list(wires))
    return StateVector(out.reshape(-1), n)


def _check_wires(state: StateVector, wires: Sequence[int]) -> None:
    for w in wires:
        if not 0 <= w < state.num_qubits:
            raise WireError(f"wire {w + 1} out of range for {state.num_qubits} qubits")


def apply_gate(state: StateVector, gate_: Gate) -> StateVector:
    """``U |psi>`` with ``U`` acting on ``gate_.wires`` and identity elsewhere."""
    _check_wires(state, gate_.wires)
    if gate_.kind == "ControlledBoolean":
        return apply_controlled_boolean(state, gate_.payload, gate_.wires[:-1], gate_.wires[-1])
    return _apply_matrix(state, gate_.matrix(), gate_.wires)


def apply_matrix(state: StateVector, u: np.ndarray, wires: Sequence[int]) -> StateVector:
    """Apply an arbitrary (not necessarily unitary) matrix on ``wires``."""
    _check_wires(state, wires)
    u = np.asarray(u, dtype=complex)
    if u.shape != (1 << len(wires),) * 2:
        raise F2DimensionError(f"matrix shape {u.shape} does not fit {len(wires)} wire(s)")
    return _apply_matrix(state, u, wires)


def apply_controlled_boolean(state: StateVector, f: BooleanFunction, inputs: Sequence[int], output: int) -> StateVector:
    """``U_f |v>|b> = |v>|b + f(v)>`` on the named input and output wires."""
    inputs = [int(w) for w in inputs]
    if f.arity != len(inputs):
        raise F2DimensionError(f"function arity {f.arity} but {len(inputs)} input wires")
    wires = inputs + [int(output)]
    if len(set(wires)) != len(wires):
        raise WireError("controlled-f wires must be distinct")
    _check_wires(state, wires)
    n = state.num_qubits
    idx = np.arange(1 << n)
    v = np.zeros_like(idx)
    for w in inputs:
        v = (v << 1) | ((idx >> (n - 1 - w)) & 1)
    fv = np.asarray(f.table, dtype=idx.dtype)[v]
    target = idx ^ (fv << (n - 1 - output))
    out = np.empty_like(state.amplitudes)
    out[target] = state.amplitudes
    return StateVector(out, n)


def apply_circuit_gates(state: StateVector, gates: Iterable[Gate]) -> StateVector:
    for g in gates:
        state = apply_gate(state, g)
    return state


def transverse(kind: str, wires: Iterable[int]) -> list[Gate]:
    return [Gate(kind, (w,)) for w in wires]
