"""From a definite 3-form to its metric, volume, and Hodge star.

Run:  python3 demos/02_metric_from_definite_form.py
"""
import random
from fractions import Fraction

from g2kit import PHI, Form, metric_from, pullback

print("the model form induces the identity metric, exactly in rationals:")
st = metric_from(PHI)
print("  g =", st.metric.matrix[0], "...")
print("  volume density s =", st.s, " orientation =", st.orientation)

print("\nscaling covariance: lambda^3 sigma gives lambda^2 g")
lam = Fraction(3, 2)
st2 = metric_from(PHI.scale(lam ** 3))
print("  g_11 =", st2.metric.matrix[0][0], "== lambda^2 =", lam * lam)

print("\na random perturbation inside the definite cone:")
rng = random.Random(1)
pairs = [
    (tuple(sorted(rng.sample(range(1, 8), 3))), Fraction(rng.randint(-4, 4), 20))
    for _ in range(6)
]
sigma = (PHI + Form.from_terms(3, pairs)).to_float()
st3 = metric_from(sigma)
print("  definiteness margin =", st3.margin)
print("  volume density      =", st3.s)
alpha = Form.basis(1).to_float()
ss = st3.star(st3.star(alpha))
print("  ** on a 1-form returns it to machine precision:",
      (ss - alpha).max_abs())

print("\nGL(7) equivariance under a pullback:")
A = [[rng.uniform(-0.2, 0.2) for _ in range(7)] for _ in range(7)]
for i in range(7):
    A[i][i] += 1.0
st4 = metric_from(pullback(A, PHI.to_float()))
print("  metric of the pulled back form (first row):")
print("  ", [round(x, 6) for x in st4.metric.matrix[0]])
