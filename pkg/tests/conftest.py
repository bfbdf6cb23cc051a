import numpy as np
import pytest

from qdesk.f2 import F2Vector
from qdesk.pauli import PauliOperator
from qdesk.statevec import Gate, StateVector, embed_matrix

ONE_QUBIT_CLIFFORDS = ("H", "S", "X", "Y", "Z")
TWO_QUBIT_CLIFFORDS = ("CNOT", "SWAP")


def random_clifford_gates(rng, n, depth):
    gates = []
    for _ in range(depth):
        if n > 1 and rng.random() < 0.4:
            a, b = rng.choice(n, size=2, replace=False)
            gates.append(Gate(str(rng.choice(TWO_QUBIT_CLIFFORDS)), (int(a), int(b))))
        else:
            gates.append(Gate(str(rng.choice(ONE_QUBIT_CLIFFORDS)), (int(rng.integers(n)),)))
    return gates


def random_pauli(rng, n):
    return PauliOperator(
        F2Vector(n, int(rng.integers(1 << n))),
        F2Vector(n, int(rng.integers(1 << n))),
        int(rng.integers(4)),
    )


def circuit_unitary(gates, n):
    u = np.eye(1 << n, dtype=complex)
    for g in gates:
        u = embed_matrix(g, n) @ u
    return u


def equal_up_to_phase(a, b, atol=1e-10):
    a = np.asarray(a.amplitudes if isinstance(a, StateVector) else a).reshape(-1)
    b = np.asarray(b.amplitudes if isinstance(b, StateVector) else b).reshape(-1)
    k = int(np.argmax(np.abs(b)))
    if abs(b[k]) < atol:
        return np.allclose(a, b, atol=atol)
    phase = a[k] / b[k]
    return abs(abs(phase) - 1) < atol and np.allclose(a, phase * b, atol=atol)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
