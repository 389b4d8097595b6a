"""Extend a set function to a continuous piecewise-linear map on R^n.

Each ordering of coordinates gives one cone of the braid fan; the extension
is affine on every cone. The certificate checks that neighbouring pieces
agree on their shared facet. The probe then tries to catch a function whose
kinks do not follow the fan.

Run: python3 demos/04_braid_realization.py
"""

from fractions import Fraction

from cpwlmat import (CompatiblePL, PLFunction, SetFunction, compatibility_probe,
                     lovasz_eval, realize_braid)

F = SetFunction(3, [0, 1, 2, 5, 3, 6, 7, 12])
pl, cert = realize_braid(F)
print(f"cones: {cert.cones_checked}, facet checks: {cert.facet_checks}, passed: {cert.passed}")
for perm in [(0, 1, 2), (2, 1, 0)]:
    piece = pl.piece(perm)
    print(f"  cone {piece.cone.label()}: gradient {[str(g) for g in piece.gradient]},"
          f" offset {piece.offset}")

x = [Fraction(1, 2), Fraction(1, 2), Fraction(1, 4)]
print("\nextension at", [str(v) for v in x], "=", lovasz_eval(F, x))

print("\nprobe on the extension:", compatibility_probe(CompatiblePL(F), 3, trials=200).conforming)
kinked = PLFunction(2, lambda x: max(x[0] - x[1], 2 * x[1] - x[0]), "kink off the fan")
rep = compatibility_probe(kinked, 2, trials=200, seed=0)
print("probe on max(x1 - x2, 2 x2 - x1):", rep.conforming)
print("witness:", rep.witness)
