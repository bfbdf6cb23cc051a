"""Superposition, a double beam splitter and the Bell state.

Two Hadamards in a row undo each other: measure after one and the coin is
fair, measure after two and the answer is always 0. A Hadamard followed by
a CNOT makes the Bell state, whose two halves always agree.
"""
from qdesk.circuit import parse_circuit, run

SPLITTER_ONCE = "qubits 1\nh 1\nmeasure 1\n"
SPLITTER_TWICE = "qubits 1\nh 1\nh 1\nmeasure 1\n"
BELL = "qubits 2\ninit 1 +\ncnot 1 2\nmeasure 1 2\n"

for title, text in [("one splitter", SPLITTER_ONCE), ("two splitters", SPLITTER_TWICE), ("Bell pair", BELL)]:
    report = run(parse_circuit(text), shots=2000, seed=1)
    print(f"{title:14s} {report.frequencies}")
