"""Moebius and zeta transforms on a three-element ground set.

Run: python3 demos/01_transforms.py
"""

from cpwlmat import SetFunction, interaction_spectrum, moebius_transform, zeta_transform
from cpwlmat.lattice import format_mask

# F(S) for S = {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}, indexed by bitmask
F = SetFunction(3, [0, 1, 2, 5, 3, 6, 7, 12])
Fhat = moebius_transform(F)

print("S          F(S)   F^(S)")
for S in range(8):
    print(f"{format_mask(S):<10} {str(F[S]):>5}   {str(Fhat[S]):>5}")

# subset summation undoes the transform exactly
assert zeta_transform(Fhat) == F
print("\nzeta(moebius(F)) == F:", zeta_transform(Fhat) == F)

print("\nper-order interaction mass:")
for row in interaction_spectrum(Fhat):
    print(f"  order {row.order}: max |F^| = {row.max_abs}, sum |F^| = {row.sum_abs}")
