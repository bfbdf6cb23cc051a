"""Single-qubit geometry: Bloch coordinates, rotated measurements and the
two-to-one map from SU(2) to rotations.

Coordinates are always listed in the order (z, x, y).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .measure import UnnormalizedStateError
from .rng import make_rng
from .statevec import X, Y, Z, StateVector, qubit


@dataclass(frozen=True)
class BlochPoint:
    z: float
    x: float
    y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.z, self.x, self.y])

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))

    def to_dict(self) -> dict:
        return {"z": self.z, "x": self.x, "y": self.y}


def bloch_point(state: StateVector) -> BlochPoint:
    """``(|a|^2 - |b|^2, 2 Re a conj(b), -2 Im a conj(b))`` for ``a|0> + b|1>``."""
    if state.num_qubits != 1:
        raise ValueError("expected a single qubit")
    if not state.is_normalized(1e-10):
        raise UnnormalizedStateError(f"state norm {state.norm():.3g} is not 1")
    a, b = state.amplitudes
    ab = a * b.conjugate()
    # adding 0.0 turns -0.0 into 0.0 for display
    return BlochPoint(float(abs(a) ** 2 - abs(b) ** 2) + 0.0, float(2 * ab.real) + 0.0, float(-2 * ab.imag) + 0.0)


@dataclass(frozen=True)
class Su2Element:
    """The matrix ``[[alpha, -conj(beta)], [beta, conj(alpha)]]``."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        d = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(d - 1) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {d!r}, not 1")

    @classmethod
    def identity(cls) -> Su2Element:
        return cls(1, 0)

    @classmethod
    def rotation(cls, theta: float) -> Su2Element:
        """``(cos theta, sin theta)``, a real rotation of the qubit basis."""
        return cls(math.cos(theta), math.sin(theta))

    @classmethod
    def from_matrix(cls, u: np.ndarray) -> Su2Element:
        u = np.asarray(u, dtype=complex)
        if not np.allclose(u, [[u[0, 0], -u[1, 0].conjugate()], [u[1, 0], u[0, 0].conjugate()]], atol=1e-12):
            raise ValueError("matrix is not of SU(2) form")
        return cls(complex(u[0, 0]), complex(u[1, 0]))

    @classmethod
    def random(cls, rng: int | np.random.Generator = 0) -> Su2Element:
        v = make_rng(rng).normal(size=4)
        v /= np.linalg.norm(v)
        return cls(complex(v[0], v[1]), complex(v[2], v[3]))

    def matrix(self) -> np.ndarray:
        a, b = complex(self.alpha), complex(self.beta)
        return np.array([[a, -b.conjugate()], [b, a.conjugate()]])

    def determinant(self) -> complex:
        return complex(np.linalg.det(self.matrix()))

    def __mul__(self, other: Su2Element) -> Su2Element:
        a, b = complex(self.alpha), complex(self.beta)
        c, d = complex(other.alpha), complex(other.beta)
        alpha = a * c - b.conjugate() * d
        beta = b * c + a.conjugate() * d
        # renormalise away rounding drift in long products
        s = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        return Su2Element(alpha / s, beta / s)

    def __neg__(self) -> Su2Element:
        return Su2Element(-self.alpha, -self.beta)

    def apply(self, state: StateVector) -> StateVector:
        return StateVector(self.matrix() @ state.amplitudes, 1)


def double_cover(u: Su2Element) -> np.ndarray:
    """The rotation induced by ``u`` on measurement directions, in (z, x, y) order.

    Column ``k`` holds the (Z, X, Y) coefficients of ``U P_k U^-1`` for
    ``P = Z, X, Y``.
    """
    a, b = complex(u.alpha), complex(u.beta)
    ab = a * b
    abc = a * b.conjugate()
    a2, bc2 = a * a, b.conjugate() ** 2
    return np.array(
        [
            [abs(a) ** 2 - abs(b) ** 2, -2 * ab.real, -2 * ab.imag],
            [2 * abc.real, (a2 - bc2).real, (a2 + bc2).imag],
            [-2 * abc.imag, -(a2 - bc2).imag, (a2 + bc2).real],
        ]
    )


PAULI_ZXY = (Z, X, Y)


def adjoint_matrix(u: np.ndarray) -> np.ndarray:
    """Same rotation computed by conjugating dense Paulis and expanding; used as a cross-check."""
    u = np.asarray(u, dtype=complex)
    out = np.zeros((3, 3))
    for k, p in enumerate(PAULI_ZXY):
        img = u @ p @ u.conj().T
        for j, q in enumerate(PAULI_ZXY):
            out[j, k] = (np.trace(q @ img) / 2).real
    return out


# ---------------------------------------------------------------------------
# rotated measurements


def rotated_observable(theta: float) -> np.ndarray:
    return math.cos(theta) * Z + math.sin(theta) * X


def rotated_measurement(theta: float) -> tuple[np.ndarray, tuple[StateVector, StateVector]]:
    """``R = cos(theta) Z + sin(theta) X`` and its +1 / -1 eigenstates."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return rotated_observable(theta), (qubit(c, s), qubit(-s, c))


@dataclass
class WalkResult:
    final_state: StateVector
    backwards: int
    steps_taken: int
    aborted: bool = False

    @property
    def overlap_with_zero(self) -> complex:
        return complex(self.final_state.amplitudes[0])


def slow_rotation_walk(
    theta_total: float,
    steps: int,
    rng: int | np.random.Generator = 0,
    strict: bool = False,
) -> WalkResult:
    """Start in ``|0>`` and measure ``R(k theta / N)`` for ``k = 1..N``.

    Each measurement applies ``(I + R)/2`` (or ``(I - R)/2`` for a backwards
    result) and renormalises, which keeps the phase continuous. Backwards
    results are counted and the walk carries on from the backwards
    eigenstate; with ``strict`` it stops at the first one.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    rng = make_rng(rng)
    a, b = 1 + 0j, 0j
    backwards = 0
    for k in range(1, steps + 1):
        t = theta_total * k / steps
        c, s = math.cos(t), math.sin(t)
        # (I + R) psi / 2 with R = [[c, s], [s, -c]]
        pa = ((1 + c) * a + s * b) / 2
        pb = (s * a + (1 - c) * b) / 2
        p_plus = abs(pa) ** 2 + abs(pb) ** 2
        if rng.random() < p_plus:
            n = math.sqrt(p_plus)
            a, b = pa / n, pb / n
        else:
            backwards += 1
            ma, mb = a - pa, b - pb
            n = math.sqrt(abs(ma) ** 2 + abs(mb) ** 2)
            a, b = ma / n, mb / n
            if strict:
                return WalkResult(qubit(a, b), backwards, k, aborted=True)
    return WalkResult(qubit(a, b), backwards, steps)


def backwards_probability_per_step(theta_total: float, steps: int) -> float:
    """Chance of a backwards result at one step of an undisturbed walk."""
    return math.sin(theta_total / (2 * steps)) ** 2


def spinor_path(theta_total: float, steps: int) -> StateVector:
    """Compose ``steps`` small SU(2) rotations by ``theta_total / steps`` on ``|0>``.

    Each factor carries the +1 eigenstate of ``R(t)`` to that of
    ``R(t + delta)``, so after a full turn the state is ``-|0>``.
    """
    half = theta_total / (2 * steps)
    step = Su2Element(math.cos(half), math.sin(half))
    u = Su2Element.identity()
    for _ in range(steps):
        u = step * u
    return u.apply(qubit(1, 0))


def parse_qubit(text: str) -> StateVector:
    """``"a+bi,c+di"`` as a normalized qubit (``i`` or ``j`` for the imaginary unit)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated amplitudes, got {text!r}")
    try:
        amps = [complex(p.replace(" ", "").replace("i", "j")) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad amplitude in {text!r}") from exc
    return StateVector(amps, 1).normalize()


__all__ = [
    "BlochPoint",
    "Su2Element",
    "WalkResult",
    "adjoint_matrix",
    "backwards_probability_per_step",
    "bloch_point",
    "double_cover",
    "parse_qubit",
    "rotated_measurement",
    "rotated_observable",
    "slow_rotation_walk",
    "spinor_path",
]
