"""Invariant geometry of definite 3-forms in seven dimensions.

The package implements, with exact rational arithmetic wherever the
claims are exact:

- sparse exterior algebra on a 7-dimensional frame with generic
  coefficient rings (:mod:`g2kit.forms`, :mod:`g2kit.poly`);
- the model 3-form, its structure-constant tables, cross product, type
  decompositions of 2- and 3-forms, and the maps between symmetric
  tensors and 3-forms (:mod:`g2kit.g2`);
- metric, orientation and volume extraction from a definite 3-form,
  deformation calculus, and the second-order volume expansion
  (:mod:`g2kit.definite`);
- torsion forms, scalar and full Ricci curvature of invariant
  structures on 7-dimensional Lie algebras, with an independent
  Levi-Civita cross-oracle (:mod:`g2kit.liealg`);
- the volume-increasing flow of closed structures with monitors and a
  closed-form reference solution (:mod:`g2kit.flow`);
- the torsion-free first-order operator calculus on the flat model with
  its second-order identities and Laplacian formulas
  (:mod:`g2kit.flatops`);
- aggregated verification suites and a command line front end
  (:mod:`g2kit.verify`, :mod:`g2kit.cli`).
"""

from .definite import (
    DefiniteStructure,
    NonDefiniteError,
    deformation_split,
    metric_from,
    metric_linearization,
    predicted_derivatives,
    ricci_eigenvalues,
    same_metric_family,
    taylor_volume,
)
from .forms import (
    DIM,
    Form,
    Metric,
    Vector,
    form_inner,
    form_norm_sq,
    hodge_star,
    pullback,
    volume_form,
)
from .flow import (
    FlowLostDefiniteness,
    FlowTrace,
    fernandez_reference,
    flow_rhs,
    monitor_residuals,
    run_flow,
)
from .g2 import (
    PHI,
    STAR_PHI,
    cross,
    epsilon3,
    epsilon4,
    epsilon_identity_residuals,
    i_map,
    j_map,
    lambda14_invariants,
    project2,
    project3,
    project4,
    project5,
    q_pairing,
    two_form_rank,
)
from .liealg import (
    LieAlgebra7,
    TorsionForms,
    builtin_algebra,
    builtin_names,
    closed_structure_report,
    codifferential,
    erp_residual,
    hodge_laplacian,
    natural_equation_residual,
    ricci_torsion_formula,
    ricci_via_connection,
    scalar_curvature,
    scalar_via_connection,
    torsion_forms,
)
from .poly import Poly

__version__ = "0.1.0"

__all__ = [
    "DIM",
    "DefiniteStructure",
    "FlowLostDefiniteness",
    "FlowTrace",
    "Form",
    "LieAlgebra7",
    "Metric",
    "NonDefiniteError",
    "PHI",
    "Poly",
    "STAR_PHI",
    "TorsionForms",
    "Vector",
    "builtin_algebra",
    "builtin_names",
    "closed_structure_report",
    "codifferential",
    "cross",
    "deformation_split",
    "epsilon3",
    "epsilon4",
    "epsilon_identity_residuals",
    "erp_residual",
    "fernandez_reference",
    "flow_rhs",
    "form_inner",
    "form_norm_sq",
    "hodge_laplacian",
    "hodge_star",
    "i_map",
    "j_map",
    "lambda14_invariants",
    "metric_from",
    "metric_linearization",
    "monitor_residuals",
    "natural_equation_residual",
    "predicted_derivatives",
    "project2",
    "project3",
    "project4",
    "project5",
    "pullback",
    "q_pairing",
    "ricci_eigenvalues",
    "ricci_torsion_formula",
    "ricci_via_connection",
    "run_flow",
    "same_metric_family",
    "scalar_curvature",
    "scalar_via_connection",
    "taylor_volume",
    "torsion_forms",
    "two_form_rank",
    "volume_form",
]
