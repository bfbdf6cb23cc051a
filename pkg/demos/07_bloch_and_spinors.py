"""Bloch coordinates, and why a full turn is not the identity.

A qubit maps to a point on the sphere, listed here in (z, x, y) order.
Dragging |0> once around by many small measurements brings back -|0>:
the rotation of measurement axes is the identity but the state picks up
a sign.
"""
import math

from qdesk.bloch import Su2Element, bloch_point, double_cover, parse_qubit, slow_rotation_walk
from qdesk.statevec import ket

for text in ["1,0", "1,1", "1,1i", "0.6,0.8"]:
    print(f"{text:8s} -> {bloch_point(parse_qubit(text)).to_dict()}")

print("U(pi/4) rotates axes by:\n", double_cover(Su2Element.rotation(math.pi / 4)).round(3))
print("-I acts on axes as:\n", double_cover(Su2Element(-1, 0)))

walk = slow_rotation_walk(2 * math.pi, 10_000, rng=0)
print(f"after a full turn: <0|state> = {walk.overlap_with_zero.real:+.6f}, backwards steps {walk.backwards}")
