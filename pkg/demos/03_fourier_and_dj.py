"""One oracle call reads off the whole correlation spectrum.

For a Boolean function f, the amplitudes of the circuit's output are the
correlations of f with every linear map. A constant f puts all weight on
w = 0 and a balanced one puts none there, which is the Deutsch-Jozsa test.
"""
from qdesk.algorithms import correlation_spectrum_classical, correlation_spectrum_quantum, deutsch_jozsa
from qdesk.statevec import BooleanFunction

f = BooleanFunction.from_bitstring("01101001")  # parity of three bits
q, c = correlation_spectrum_quantum(f), correlation_spectrum_classical(f)
for (w, a), (_, b) in zip(q.items(), c.items()):
    print(f"w={w}  quantum {round(a, 12) + 0.0:+.3f}  classical {b:+.3f}")

for table in ["00000000", "11111111", "00001111", "01101001"]:
    r = deutsch_jozsa(BooleanFunction.from_bitstring(table), 3)
    print(f"{table}: {r.verdict} (measured w={r.w})")
