"""
Normal ordering with a central element
======================================

Words in a, ad and e rewritten into the ordered basis ad^k a^l e^m.
"""

from hwhopf import Gen, normal_order_word, parse_word, project_pi
from hwhopf.envelope import word_polynomial

# a ad picks up one contraction
(c, w), = parse_word("a ad")
print("a ad =", normal_order_word(w))

# the same element from the structure constants instead of rewriting
print("check:", word_polynomial(w))

# powers of the number operator; e counts how many contractions happened
for n in range(1, 5):
    (c, w), = parse_word(f"(ad a)^{n}")
    print(f"(ad a)^{n} =", normal_order_word(w))

# setting e to 1 leaves Stirling numbers of the second kind as coefficients
for n in range(1, 6):
    (c, w), = parse_word(f"(ad a)^{n}")
    p = project_pi(normal_order_word(w))
    print(n, [int(p.coefficient((k, k))) for k in range(1, n + 1)])

# letters can also be given directly
print(normal_order_word([Gen.A, Gen.A, Gen.A_DAG, Gen.A_DAG]))
