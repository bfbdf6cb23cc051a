"""Dense state-vector simulation of small qubit registers, Pauli fault
propagation, F2 linear algebra and CSS error correction."""
from .f2 import F2Matrix, F2Vector, hamming_p, toy_p
from .statevec import (
    BooleanFunction,
    Gate,
    ResourceError,
    StateVector,
    apply_gate,
    fidelity,
    ket,
    make_basis_state,
    zero_state,
)
from .measure import measure, outcome_distribution, stabiliser_distribution
from .pauli import PauliOperator, conjugate_through, parse_pauli, propagate, render_pauli
from .circuit import Circuit, execute, parse_circuit, render_circuit, run
from .css import (
    CssCode,
    build_css,
    ec_round,
    encoding_circuit,
    extract_syndrome,
    logical_one,
    logical_state,
    logical_zero,
    steane_code,
    toy_code,
)

__version__ = "0.1.0"
