"""
Splitting diagrams: coproduct, counit, antipode
===============================================
"""

from hwhopf import (
    Diagram,
    antipode,
    convolve,
    coproduct,
    counit,
    unit_projection,
)
from hwhopf.checks import run_suite
from hwhopf.hopf import identity
from hwhopf.textio import format_sum_text, format_tensor_text

d1 = Diagram(1, [("in", 0), (0, "out")])

# every subset of lines goes to the left factor, the rest to the right
print(format_tensor_text(coproduct(d1)))

print("counit:", counit(d1))

# three terms: -D1, twice the split pair, and one inner line
print(format_sum_text(antipode(d1)))

# mu (Id x S) Delta collapses to the counit times the empty diagram
print(convolve(identity, antipode, d1) == unit_projection(d1))

chain = Diagram(3, [("in", 0), (0, 1), (1, 2), (2, "out")])
print(len(antipode(chain)), "terms in S of a 4-line chain")

# the same identities over every diagram with up to three lines
for r in run_suite("hopf", 3):
    print(r.line())
