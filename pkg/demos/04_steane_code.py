"""Encode a qubit in seven, break it, and put it back.

Every single-qubit error has a distinct pair of syndromes, so one round of
syndrome extraction finds and fixes it. A badly placed fault on a syndrome
ancilla, however, can copy up onto two data qubits without being seen.
"""
from qdesk.circuit import Fault
from qdesk.css import ec_round, logical_state, steane_code
from qdesk.pauli import apply_pauli, parse_pauli
from qdesk.statevec import fidelity

code = steane_code()
clean = logical_state(code, 0.6, 0.8).dense

for err in ["X2", "Z5", "X2Z5", "Y7"]:
    noisy = apply_pauli(clean, parse_pauli(err, 7))
    fixed, rep = ec_round(noisy, code, rng=0)
    print(f"{err:5s} syndromes {rep.x_syndrome}/{rep.z_syndrome}  correction {rep.correction_text:5s} "
          f"fidelity {fidelity(fixed, clean):.12f}")

out, rep = ec_round(clean, code, rng=0, faults=[Fault("Z", 7, "z1.2")])
residual = apply_pauli(out, parse_pauli("Z5Z7", 7))
print(f"ancilla fault: syndromes {rep.x_syndrome}/{rep.z_syndrome}, "
      f"state differs from the original by Z5Z7: {fidelity(residual, clean):.12f}")
