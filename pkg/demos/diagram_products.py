"""
Multiplying diagrams
====================

The product of two diagrams sums every way of plugging the free outgoing
lines of the lower one into free incoming lines of the upper one.
"""

from hwhopf import Diagram, disjoint_union, enumerate_matchings, phi, product
from hwhopf.textio import format_sum_text

# one vertex, one line in, one line out
d1 = Diagram(1, [("in", 0), (0, "out")])

# two matchings: nothing joined, or the single pair joined
print(len(enumerate_matchings(d1, d1)), "matchings")
print(format_sum_text(product(d1, d1)))

# stars with two free lines each: 1 + 4 + 2 matchings, collected by shape
upper = Diagram(1, [("in", 0), ("in", 0)])
lower = Diagram(1, [(0, "out"), (0, "out")])
for c, d in product(upper, lower).terms():
    print(c, d)

# the forgetful map only counts lines, so products turn into operator products
x, y = d1, disjoint_union(d1, Diagram(1, [(0, "out")]))
print(phi(product(x, y)))
print(phi(x) * phi(y))

# order matters
up, dn = Diagram(1, [(0, "out")]), Diagram(1, [("in", 0)])
print(product(up, dn))
print(product(dn, up))
