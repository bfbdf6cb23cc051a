"""How Pauli faults move through CNOTs.

An X on the control spreads to the target and a Z on the target spreads
back to the control. Everything else passes straight through. Conjugating
through whole circuits is just repeated use of these rules.
"""
from qdesk.circuit import Circuit
from qdesk.pauli import PauliOperator, propagate

cnot = Circuit(2).cnot(0, 1)
for word in ["XI", "IX", "ZI", "IZ", "YI", "IY"]:
    print(f"{word} -> {propagate(PauliOperator.parse(word), cnot)}")

# a chain of CNOTs carries one X along every wire
chain = Circuit(4).cnot(0, 1).cnot(1, 2).cnot(2, 3)
print("X1 through a CNOT chain ->", propagate(PauliOperator.parse("XIII"), chain))
