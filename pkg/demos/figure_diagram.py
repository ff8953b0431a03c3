"""
A diagram with four inner, four incoming and three outgoing lines
=================================================================
"""

from collections import Counter
from pathlib import Path

from hwhopf import decompositions, phi, phi_bar, read_diagram, render_dot

d = read_diagram(Path(__file__).parent / "diagrams" / "fig1.hwd")
print("inner, incoming, outgoing:", d.line_counts())
print("phi:", phi(d))
print("phi bar:", phi_bar(d))

# 2^11 ways to split the lines
parts = decompositions(d)
print(len(parts), "decompositions")

# left parts with one outgoing and two incoming lines and no inner line
tally = Counter()
for left, _ in parts:
    inner, incoming, outgoing = left.line_counts()
    tally[outgoing, incoming, inner] += 1
print(tally[1, 2, 0], "of them have left counts (1, 2, 0)")

# pipe into `dot -Tsvg` to draw it
print(render_dot(d))
