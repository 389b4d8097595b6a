"""Rebuild a pairwise-interaction function from its values on sets of size <= 2.

Run: python3 demos/03_low_order_reduction.py
"""

import random
from fractions import Fraction

from cpwlmat import (LowOrderTable, UniformMatroid, decompose, extend_from_low_order,
                     membership, reconstruct, triple_relation_check)
from cpwlmat.lattice import format_mask

table = LowOrderTable(3, 2, {0: 0, 1: 1, 2: 2, 4: 3, 3: 5, 5: 6, 6: 7})
F = extend_from_low_order(table)
print("F({1,2,3}) from pairs and singletons:", F[0b111])
print("  5 + 6 + 7 - 1 - 2 - 3 =", 5 + 6 + 7 - 1 - 2 - 3)

# a larger random case: the extension agrees with every triple relation
rng = random.Random(0)
n = 6
values = {S: Fraction(rng.randint(-9, 9), rng.randint(1, 3))
          for S in range(1 << n) if bin(S).count("1") <= 2}
G = extend_from_low_order(LowOrderTable(n, 2, values))
print(f"\nn={n}: triple relation residuals:", triple_relation_check(G) or "none")
M = UniformMatroid(n, 2)
print("member of the pairwise space:", membership(G, M).member)

coeffs, residual = decompose(G, M)
assert residual == [] and reconstruct(coeffs) == G
top = sorted(coeffs.nonzero().items(), key=lambda kv: -abs(kv[1]))[:5]
print("largest basis coefficients:",
      ", ".join(f"{format_mask(T)}: {c}" for T, c in top))
