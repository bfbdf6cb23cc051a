"""Born-rule measurement of state vectors.

Outcomes are listed in increasing order of their packed bit-string, and a
sample picks the first outcome whose running probability total exceeds one
uniform draw from the caller's generator. Branches whose amplitude norm is
below ``PRUNE_AMPLITUDE`` are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .f2 import F2Vector
from .statevec import (
    H,
    NORM_TOL,
    StateVector,
    WireError,
    apply_matrix,
)

PRUNE_AMPLITUDE = 1e-14
PROB_TOL = 1e-10


class UnnormalizedStateError(ValueError):
    pass


class NotInvolutionError(ValueError):
    pass


@dataclass(frozen=True)
class MeasurementRecord:
    wires: tuple[int, ...]
    outcome: F2Vector
    probability: float
    post_state: StateVector

    @property
    def bits(self) -> tuple[int, ...]:
        return self.outcome.bits()


def _check(state: StateVector, wires: Sequence[int]) -> tuple[int, ...]:
    wires = tuple(int(w) for w in wires)
    if len(set(wires)) != len(wires):
        raise WireError(f"measured wires must be distinct: {wires}")
    for w in wires:
        if not 0 <= w < state.num_qubits:
            raise WireError(f"wire {w + 1} out of range for {state.num_qubits} qubits")
    if not state.is_normalized(1e-10):
        raise UnnormalizedStateError(f"state norm {state.norm():.3g} is not 1")
    return wires


def outcome_distribution(state: StateVector, wires: Sequence[int]) -> list[tuple[F2Vector, float, StateVector]]:
    """Every possible result of a Z-basis measurement of ``wires``.

    Returns ``(outcome, probability, post_state)`` triples; the post-state
    keeps all qubits, with the measured ones collapsed.
    """
    wires = _check(state, wires)
    n, m = state.num_qubits, len(wires)
    rest = [w for w in range(n) if w not in wires]
    t = np.transpose(state.tensor(), list(wires) + rest).reshape(1 << m, -1)
    inverse = np.argsort(list(wires) + rest)
    out = []
    for k in range(1 << m):
        row = t[k]
        nrm = np.linalg.norm(row)
        if nrm < PRUNE_AMPLITUDE:
            continue
        collapsed = np.zeros_like(t)
        collapsed[k] = row / nrm
        amps = np.transpose(collapsed.reshape((2,) * n), inverse).reshape(-1)
        out.append((F2Vector(m, k), float(nrm**2), StateVector(amps, n)))
    return out


def sample(distribution: Sequence[tuple[F2Vector, float, StateVector]], rng: np.random.Generator) -> int:
    """Index into ``distribution`` chosen with one uniform draw."""
    u = rng.random()
    acc = 0.0
    for i, (_, p, _) in enumerate(distribution):
        acc += p
        if u < acc:
            return i
    return len(distribution) - 1


def measure(state: StateVector, wires: Sequence[int], rng: np.random.Generator) -> MeasurementRecord:
    """Sample a Z-basis measurement of ``wires``."""
    dist = outcome_distribution(state, wires)
    outcome, p, post = dist[sample(dist, rng)]
    return MeasurementRecord(tuple(int(w) for w in wires), outcome, p, post)


def _hadamard_all(state: StateVector, wires: Sequence[int]) -> StateVector:
    for w in wires:
        state = apply_matrix(state, H, [w])
    return state


def x_outcome_distribution(state: StateVector, wires: Sequence[int]) -> list[tuple[F2Vector, float, StateVector]]:
    """As :func:`outcome_distribution` in the X basis; bit 0 means ``|+>``, 1 means ``|->``."""
    dist = outcome_distribution(_hadamard_all(state, wires), wires)
    return [(o, p, _hadamard_all(s, wires)) for o, p, s in dist]


def measure_x_basis(state: StateVector, wires: Sequence[int], rng: np.random.Generator) -> MeasurementRecord:
    dist = x_outcome_distribution(state, wires)
    outcome, p, post = dist[sample(dist, rng)]
    return MeasurementRecord(tuple(int(w) for w in wires), outcome, p, post)


# ---------------------------------------------------------------------------
# stabiliser measurement


def _operator_matrix(u) -> np.ndarray:
    if hasattr(u, "to_matrix"):
        return u.to_matrix()
    return np.asarray(u, dtype=complex)


def stabiliser_distribution(state: StateVector, u, wires: Sequence[int] | None = None) -> list[tuple[F2Vector, float, StateVector]]:
    """Split ``state`` into the +1 and -1 eigencomponents of the involution ``u``.

    ``u`` is a matrix or a :class:`~qdesk.pauli.PauliOperator` acting on
    ``wires`` (default: the first ``log2(dim u)`` qubits). Outcome 0 is the
    +1 eigenspace.
    """
    m = _operator_matrix(u)
    k = int(round(np.log2(m.shape[0])))
    if wires is None:
        wires = list(range(k))
    wires = _check(state, wires)
    if len(wires) != k:
        raise WireError(f"operator acts on {k} qubits but {len(wires)} wires given")
    if not np.allclose(m @ m, np.eye(m.shape[0]), atol=PROB_TOL, rtol=0):
        raise NotInvolutionError("operator does not square to the identity")
    u_psi = apply_matrix(state, m, wires)
    out = []
    for bit, sign in ((0, 1), (1, -1)):
        comp = StateVector((state.amplitudes + sign * u_psi.amplitudes) / 2, state.num_qubits)
        nrm = comp.norm()
        if nrm < PRUNE_AMPLITUDE:
            continue
        out.append((F2Vector(1, bit), nrm**2, comp.scale(1 / nrm)))
    return out


def measure_stabiliser(state: StateVector, u, rng: np.random.Generator, wires: Sequence[int] | None = None) -> MeasurementRecord:
    dist = stabiliser_distribution(state, u, wires)
    outcome, p, post = dist[sample(dist, rng)]
    if wires is None:
        wires = range(int(round(np.log2(_operator_matrix(u).shape[0]))))
    return MeasurementRecord(tuple(int(w) for w in wires), outcome, p, post)


def expectation(state: StateVector, u, wires: Sequence[int] | None = None) -> complex:
    m = _operator_matrix(u)
    if wires is None:
        wires = list(range(int(round(np.log2(m.shape[0])))))
    return complex(np.vdot(state.amplitudes, apply_matrix(state, m, wires).amplitudes))


# ---------------------------------------------------------------------------
# reduced states


def reduced_density_matrix(state: StateVector, keep: Sequence[int]) -> np.ndarray:
    """Partial trace onto ``keep`` (in the order given)."""
    keep = list(keep)
    n = state.num_qubits
    rest = [w for w in range(n) if w not in keep]
    t = np.transpose(state.tensor(), keep + rest).reshape(1 << len(keep), -1)
    return t @ t.conj().T


def discard_wires(state: StateVector, wires: Sequence[int], tol: float = 1e-10) -> StateVector:
    """Drop ``wires`` that are in a definite Z-basis state (for example just measured)."""
    wires = list(wires)
    n = state.num_qubits
    rest = [w for w in range(n) if w not in wires]
    t = np.transpose(state.tensor(), wires + rest).reshape(1 << len(wires), -1)
    weights = np.linalg.norm(t, axis=1) ** 2
    k = int(np.argmax(weights))
    if abs(weights[k] - state.norm() ** 2) > tol:
        raise ValueError("discarded wires are not in a definite Z-basis state")
    return StateVector(t[k], len(rest))


__all__ = [
    "MeasurementRecord",
    "NORM_TOL",
    "NotInvolutionError",
    "UnnormalizedStateError",
    "discard_wires",
    "expectation",
    "measure",
    "measure_stabiliser",
    "measure_x_basis",
    "outcome_distribution",
    "reduced_density_matrix",
    "sample",
    "stabiliser_distribution",
    "x_outcome_distribution",
]
