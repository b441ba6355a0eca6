"""First-order operators between irreducible type bundles on the flat model,
checked exactly on random rational polynomial sections.

Run:  python3 demos/05_flat_operator_tables.py
"""
from g2kit.flatops import (
    adjointness_report,
    derivative_decomposition_residuals,
    composition_identity_residuals,
    laplacian_formula_residuals,
)


def show(title, report):
    print(f"\n== {title} ==")
    for key, residual in report.items():
        if key == "trials":
            continue
        print(f"  {key:58s} {residual}")


show("first-order decompositions of d (all residuals exact)",
     derivative_decomposition_residuals(trials=5, max_poly_degree=2, seed=0))
show("second-order compositions", composition_identity_residuals(trials=8, seed=0))
show("Laplacians in terms of the typed operators", laplacian_formula_residuals(trials=5, seed=0))
show("formal adjointness under the boundary window",
     adjointness_report(trials=2, max_poly_degree=1, seed=0))
