"""One shared Bell pair, used in both directions.

Superdense coding sends two classical bits by touching one qubit. Teleport
sends one qubit using two classical bits and a Pauli fix-up on Bob's side.
"""
from collections import Counter

from qdesk.algorithms import superdense, teleport
from qdesk.rng import shot_rng
from qdesk.statevec import StateVector, fidelity

for bits in ["00", "01", "10", "11"]:
    print(f"superdense {bits} -> {superdense(bits, 0)}")

psi = StateVector([0.6, 0.8j], 1)
seen = Counter()
for i in range(1000):
    r = teleport(psi, shot_rng(7, i))
    assert fidelity(r.corrected, psi) > 1 - 1e-10
    seen[str(r.correction)] += 1
print("teleport corrections over 1000 shots:", dict(seen))
