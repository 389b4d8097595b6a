"""Two ways to constrain a set function by a uniform matroid, and where they differ.

Requiring only the circuit functionals to vanish leaves more freedom than
requiring the whole Moebius spectrum to vanish on dependent sets. The gap is
sum_{i=k+2}^{n} C(n, i), which is zero exactly when k >= n - 1.

Run: python3 demos/02_dimension_gap.py
"""

from math import comb

from cpwlmat import UniformMatroid, kernel_dimension

print(" n  k  kernel  independent  gap  predicted")
for n in range(2, 9):
    for k in range(0, n + 1):
        rep = kernel_dimension(UniformMatroid(n, k))
        predicted = sum(comb(n, i) for i in range(k + 2, n + 1))
        assert rep.discrepancy == predicted
        print(f"{n:2d} {k:2d} {rep.kernel_dim:7d} {rep.independent_count:12d}"
              f" {rep.discrepancy:4d} {predicted:10d}")
