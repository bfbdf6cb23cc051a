"""Named protocols: Hadamard transforms, correlation spectra, Deutsch-Jozsa,
Bell-state gadgets, superdense coding, teleportation and the GHZ argument."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .circuit import Circuit, execute
from .f2 import F2Vector
from .measure import measure, sample
from .pauli import PauliOperator, apply_pauli
from .rng import make_rng
from .statevec import (
    BooleanFunction,
    StateVector,
    X,
    Y,
    Z,
    apply_controlled_boolean,
    apply_matrix,
    H,
    make_basis_state,
    zero_state,
)

MAX_SPECTRUM_ARITY = 20


# ---------------------------------------------------------------------------
# Hadamard transform and correlations


def hadamard_all(state: StateVector, wires=None) -> StateVector:
    for w in range(state.num_qubits) if wires is None else wires:
        state = apply_matrix(state, H, [w])
    return state


def transverse_hadamard(v: F2Vector) -> StateVector:
    """``H^{(x)n} |v>``, i.e. ``2^{-n/2} sum_w (-1)^{v.w} |w>``."""
    return hadamard_all(make_basis_state(v.length, v))


@dataclass(frozen=True)
class CorrelationSpectrum:
    n: int
    values: np.ndarray  # indexed by the packed value of w

    def __getitem__(self, w: F2Vector | int | str) -> float:
        if isinstance(w, str):
            w = int(w, 2)
        return float(self.values[int(w.value if isinstance(w, F2Vector) else w)])

    def parseval(self) -> float:
        return float(np.sum(self.values**2))

    def items(self) -> list[tuple[str, float]]:
        return [(format(i, f"0{self.n}b") if self.n else "", float(c)) for i, c in enumerate(self.values)]


def _walsh_hadamard(a: np.ndarray) -> np.ndarray:
    a = a.astype(float).copy()
    h = 1
    while h < len(a):
        a = a.reshape(-1, 2, h)
        a = np.stack([a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]], axis=1).reshape(-1)
        h *= 2
    return a


def correlation_spectrum_classical(f: BooleanFunction) -> CorrelationSpectrum:
    """``c_f(w) = P[f(v) = v.w] - P[f(v) != v.w]`` for every ``w``.

    Computed exactly with a butterfly over the +-1 values of ``f``; every
    intermediate is an integer so the result is exact to rounding of the
    final division.
    """
    if f.arity > MAX_SPECTRUM_ARITY:
        raise ValueError(f"arity {f.arity} exceeds {MAX_SPECTRUM_ARITY}")
    signs = 1 - 2 * np.asarray(f.table, dtype=np.int64)
    return CorrelationSpectrum(f.arity, _walsh_hadamard(signs) / (1 << f.arity))


def graph_state(f: BooleanFunction) -> StateVector:
    """``U_f`` applied to ``|+>^n |0>``: uniform weight on the pairs ``(v, f(v))``."""
    n = f.arity
    s = hadamard_all(zero_state(n + 1), range(n))
    return apply_controlled_boolean(s, f, list(range(n)), n)


def qdft_circuit(f: BooleanFunction, measure_all: bool = True) -> Circuit:
    """X on the last wire, H everywhere, ``U_f``, H everywhere, then measure.

    Just before measurement the register holds ``sum_w c_f(w) |w>|1>``.
    """
    n = f.arity
    c = Circuit(n + 1)
    c.x(n)
    for w in range(n + 1):
        c.h(w)
    c.uf(f, list(range(n)), n)
    for w in range(n + 1):
        c.h(w)
    if measure_all:
        for w in range(n + 1):
            c.measure(w)
    return c


def qdft_state(f: BooleanFunction) -> StateVector:
    return execute(qdft_circuit(f, measure_all=False)).state


def correlation_spectrum_quantum(f: BooleanFunction) -> CorrelationSpectrum:
    """Read ``c_f`` off the amplitudes ``<w, 1| qdft_state>``."""
    amps = qdft_state(f).amplitudes[1::2]
    if np.max(np.abs(amps.imag)) > 1e-12:
        raise ArithmeticError("correlation amplitudes should be real")
    return CorrelationSpectrum(f.arity, amps.real.copy())


@dataclass(frozen=True)
class DjResult:
    verdict: str
    w: F2Vector
    last_bit: int
    probability: float

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "w": str(self.w), "last_bit": self.last_bit, "probability": self.probability}


def deutsch_jozsa(f: BooleanFunction, rng: int | np.random.Generator = 0) -> DjResult:
    """One oracle call. Constant iff the first ``n`` measured bits are all 0.

    If ``f`` is neither constant nor balanced the verdict is just what the
    measurement happened to give.
    """
    ex = execute(qdft_circuit(f), rng=make_rng(rng))
    bits = [int(r.outcome.value) for r in ex.records]
    w = F2Vector.from_bits(bits[:-1])
    return DjResult("constant" if w.value == 0 else "balanced", w, bits[-1], ex.probability)


# ---------------------------------------------------------------------------
# Bell states


PAULI_BY_BITS = {(0, 0): "I", (0, 1): "X", (1, 0): "Z", (1, 1): "XZ"}


def _pauli_word(word: str) -> np.ndarray:
    mats = {"I": np.eye(2), "X": X, "Z": Z}
    out = np.eye(2, dtype=complex)
    for ch in word:
        out = out @ mats[ch]
    return out


def bell_prepare() -> StateVector:
    """``CNOT (|+> |0>)``."""
    c = Circuit(2).init(0, "+").cnot(0, 1)
    return execute(c).state


def bell_state(word: str) -> StateVector:
    """``P |Phi>`` with ``P`` in {I, X, Z, XZ} acting on the first qubit."""
    return apply_matrix(bell_prepare(), _pauli_word(word), [0])


def bell_measure_gadget(state: StateVector, rng: int | np.random.Generator = 0) -> tuple[tuple[int, int], StateVector]:
    """CNOT(1, 2), H on 1, then measure both in the Z basis."""
    if state.num_qubits != 2:
        raise ValueError("the gadget takes a 2-qubit state")
    c = Circuit(2).cnot(0, 1).h(0)
    s = execute(c, state).state
    rec = measure(s, [0, 1], make_rng(rng))
    b = rec.outcome.bits()
    return (b[0], b[1]), rec.post_state


def bell_gadget_table() -> list[tuple[str, tuple[int, int], float]]:
    """Outcome of the gadget on each corrupted Bell state, with its probability."""
    rows = []
    for word in ("I", "X", "Z", "XZ"):
        b, _ = bell_measure_gadget(bell_state(word), 0)
        s = execute(Circuit(2).cnot(0, 1).h(0), bell_state(word)).state
        rows.append((word, b, float(s.probabilities()[b[0] * 2 + b[1]])))
    return rows


def superdense(send: tuple[int, int] | str, rng: int | np.random.Generator = 0) -> tuple[int, int]:
    """Encode two bits by acting on Alice's half of ``|Phi>``, decode with the gadget."""
    send = (int(send[0]), int(send[1]))
    if any(b not in (0, 1) for b in send):
        raise ValueError("bits must be 0 or 1")
    bits, _ = bell_measure_gadget(bell_state(PAULI_BY_BITS[send]), rng)
    return bits


@dataclass(frozen=True)
class TeleportResult:
    bits: tuple[int, int]
    bob_state: StateVector
    correction: PauliOperator
    probability: float

    @property
    def corrected(self) -> StateVector:
        return apply_pauli(self.bob_state, self.correction)


def _pauli_from_word(word: str) -> PauliOperator:
    p = PauliOperator.identity(1)
    for ch in word:
        if ch != "I":
            p = p * PauliOperator.single(1, ch, 0)
    return p


def teleport(psi: StateVector, rng: int | np.random.Generator = 0) -> TeleportResult:
    """Project Alice's two qubits onto the Bell basis ``P|Phi>``.

    Outcome ``P`` leaves Bob holding ``P^dagger psi``, so the correction is ``P``.
    """
    if psi.num_qubits != 1:
        raise ValueError("teleport takes a single qubit")
    if not psi.is_normalized(1e-10):
        raise ValueError("psi must be normalized")
    rng = make_rng(rng)
    full = np.kron(psi.amplitudes, bell_prepare().amplitudes).reshape(4, 2)
    dist = []
    for k, word in enumerate(("I", "X", "Z", "XZ")):
        bra = bell_state(word).amplitudes.conj()
        bob = bra @ full
        p = float(np.vdot(bob, bob).real)
        dist.append((F2Vector(2, k), p, StateVector(bob / np.sqrt(p), 1)))
    outcome, p, bob = dist[sample(dist, rng)]
    bits = outcome.bits()
    return TeleportResult((bits[0], bits[1]), bob, _pauli_from_word(PAULI_BY_BITS[bits]), p)


def bell_observable_eigen() -> list[tuple[str, float]]:
    """Eigenvalue of ``XX + YY + ZZ`` on each Bell state."""
    e = np.kron(X, X) + np.kron(Y, Y) + np.kron(Z, Z)
    out = []
    for word in ("I", "X", "Z", "XZ"):
        b = bell_state(word).amplitudes
        v = e @ b
        lam = complex(np.vdot(b, v))
        if not np.allclose(v, lam * b, atol=1e-12):
            raise ArithmeticError(f"{word}|Phi> is not an eigenvector")
        out.append((word, lam.real))
    return out


# ---------------------------------------------------------------------------
# GHZ


def ghz_report() -> dict:
    """Eigenvalues of the cat state and the failed hidden-variable assignment.

    Predetermined +-1 values for X and Y on each qubit would force
    ``XXX = (XYY)(YXY)(YYX)``, since every Y value appears twice. The cat
    state has ``XXX = +1`` but the right-hand product equal to -1.
    """
    from .css import encoding_circuit, toy_code

    cat = execute(encoding_circuit(toy_code(), "plus")).state
    eig = {}
    for word in ("XXX", "XYY", "YXY", "YYX"):
        p = PauliOperator.parse(word)
        v = apply_pauli(cat, p).amplitudes
        lam = complex(np.vdot(cat.amplitudes, v))
        if not np.allclose(v, lam * cat.amplitudes, atol=1e-12):
            raise ArithmeticError(f"cat state is not an eigenvector of {word}")
        eig[word] = int(round(lam.real))
    quantum_product = eig["XYY"] * eig["YXY"] * eig["YYX"]
    consistent = 0
    for xs in iproduct((1, -1), repeat=3):
        for ys in iproduct((1, -1), repeat=3):
            ok = (
                xs[0] * xs[1] * xs[2] == eig["XXX"]
                and xs[0] * ys[1] * ys[2] == eig["XYY"]
                and ys[0] * xs[1] * ys[2] == eig["YXY"]
                and ys[0] * ys[1] * xs[2] == eig["YYX"]
            )
            consistent += ok
    return {
        "cat_state": cat.dump(),
        "eigenvalues": eig,
        "product_xyy_yxy_yyx": quantum_product,
        "hidden_variable_prediction_xxx": quantum_product,
        "consistent_assignments": consistent,
        "contradiction": consistent == 0 and quantum_product != eig["XXX"],
    }


__all__ = [
    "CorrelationSpectrum",
    "DjResult",
    "TeleportResult",
    "bell_gadget_table",
    "bell_measure_gadget",
    "bell_observable_eigen",
    "bell_prepare",
    "bell_state",
    "correlation_spectrum_classical",
    "correlation_spectrum_quantum",
    "deutsch_jozsa",
    "ghz_report",
    "graph_state",
    "hadamard_all",
    "qdft_circuit",
    "qdft_state",
    "superdense",
    "teleport",
    "transverse_hadamard",
]
