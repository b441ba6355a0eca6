"""Tour of the pointwise algebra of the model 3-form.

Run:  python3 demos/01_pointwise_algebra.py
"""
from fractions import Fraction

from g2kit import (
    PHI,
    STAR_PHI,
    Form,
    epsilon_identity_residuals,
    form_norm_sq,
    i_map,
    j_map,
    project2,
    project3,
)

print("model 3-form        phi =", PHI)
print("dual 4-form        *phi =", STAR_PHI)
print("|phi|^2 =", form_norm_sq(PHI), " |*phi|^2 =", form_norm_sq(STAR_PHI))

print("\nstructure-constant contraction identities (all residuals exact):")
for name, residual in epsilon_identity_residuals().items():
    print(f"  {name:45s} {residual}")

print("\ntype decomposition of a 2-form into the 7- and 14-dimensional pieces:")
beta = Form.basis(1, 2) + Form.basis(4, 5).scale(Fraction(3, 2))
b7, b14 = project2(beta)
print("  beta   =", beta)
print("  beta_7 =", b7)
print("  beta_14=", b14)

print("\ntype decomposition of a 3-form (1 + 7 + 27):")
gamma = Form.basis(1, 2, 4) + PHI.scale(Fraction(1, 3))
c1, c7, c27 = project3(gamma)
print("  singlet   =", c1)
print("  7-piece   =", c7)
print("  27-piece  =", c27)

print("\nthe i/j pair between symmetric tensors and 3-forms:")
identity = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
print("  i(g) == 6 phi :", i_map(identity) == PHI.scale(6))
print("  j(phi) == 6 g :", j_map(PHI) == [[6 * x for x in row] for row in identity])
