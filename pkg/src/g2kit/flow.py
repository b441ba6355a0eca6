"""Laplacian flow of invariant definite 3-forms.

d sigma / dt = Delta_sigma sigma, integrated with fixed-step RK4 on the
35 coefficients of sigma.  For closed structures the right hand side is
d tau_2 (the closed mode keeps the flow exactly on closed forms); the
general mode evaluates the full Hodge Laplacian.  Each recorded step
carries the monitored quantities: volume, torsion norm, scalar
curvature, Ricci eigenvalues, definiteness margin and the closedness
residual.
"""

from __future__ import annotations

from .definite import (
    DefiniteStructure,
    NonDefiniteError,
    metric_from,
    ricci_eigenvalues,
)
from .forms import DIM, Form, _masks_of_degree
from .g2 import PHI
from .liealg import (
    LieAlgebra7,
    closed_structure_report,
    hodge_laplacian,
    ricci_via_connection,
    torsion_forms,
)

TRACE_HEADER = (
    "t,vol,tau2_sq,scal,ric1,ric2,ric3,ric4,ric5,ric6,ric7,margin,closed_residual"
)

_MASKS3 = None


def _masks3():
    global _MASKS3
    if _MASKS3 is None:
        _MASKS3 = _masks_of_degree(3)
    return _MASKS3


def sigma_to_coeffs(sigma: Form):
    return [float(sigma.terms.get(m, 0)) for m in _masks3()]


def coeffs_to_sigma(coeffs) -> Form:
    return Form(3, {m: c for m, c in zip(_masks3(), coeffs) if c != 0.0})


class FlowLostDefiniteness(RuntimeError):
    """The flow left the cone of definite forms."""

    def __init__(self, t, partial_trace=None):
        super().__init__(f"lost definiteness at t={t}")
        self.t = t
        self.partial_trace = partial_trace


class FlowStep:
    __slots__ = (
        "t",
        "sigma",
        "vol",
        "tau2_sq",
        "scal",
        "ricci",
        "margin",
        "closed_residual",
    )

    def __init__(self, t, sigma, vol, tau2_sq, scal, ricci, margin, closed_residual):
        self.t = t
        self.sigma = sigma
        self.vol = vol
        self.tau2_sq = tau2_sq
        self.scal = scal
        self.ricci = ricci
        self.margin = margin
        self.closed_residual = closed_residual

    def csv_row(self) -> str:
        vals = [self.t, self.vol, self.tau2_sq, self.scal]
        vals += list(self.ricci)
        vals += [self.margin, self.closed_residual]
        return ",".join(f"{v:.17g}" for v in vals)


class FlowTrace:
    def __init__(self, algebra: LieAlgebra7, mode: str, dt: float):
        self.algebra = algebra
        self.mode = mode
        self.dt = dt
        self.steps: list[FlowStep] = []

    def append(self, step: FlowStep):
        self.steps.append(step)

    def write_csv(self, path: str):
        with open(path, "w") as fh:
            fh.write(TRACE_HEADER + "\n")
            for step in self.steps:
                fh.write(step.csv_row() + "\n")

    @property
    def final(self) -> FlowStep:
        return self.steps[-1]


def flow_rhs(L: LieAlgebra7, sigma: Form, mode: str = "closed") -> Form:
    """Right hand side of the flow at sigma."""
    st = metric_from(sigma)
    if mode == "closed":
        t = torsion_forms(L, st)
        return L.d_form(t.tau2)
    if mode == "general":
        return hodge_laplacian(L, st, sigma)
    raise ValueError(f"unknown flow mode {mode!r}")


def _observe(L: LieAlgebra7, t: float, sigma: Form) -> FlowStep:
    st = metric_from(sigma)
    tor = torsion_forms(L, st)
    n = tor.norms()
    ric = ricci_via_connection(L, st.metric)
    eig = ricci_eigenvalues(ric, st.metric)
    ginv = st.metric.inv()
    scal = float(
        sum(ginv[i][j] * ric[i][j] for i in range(DIM) for j in range(DIM))
    )
    return FlowStep(
        t,
        sigma,
        float(st.s) if st.orientation > 0 else -float(st.s),
        float(n["tau2_sq"]),
        scal,
        [float(x) for x in eig],
        st.margin,
        L.d_form(sigma).max_abs(),
    )


def run_flow(
    L: LieAlgebra7,
    sigma0: Form,
    t_end: float,
    dt: float,
    mode: str = "closed",
    record_every: int = 1,
) -> FlowTrace:
    """Integrate the flow with fixed-step RK4 from t=0 to t_end."""
    if dt <= 0 or t_end < 0:
        raise ValueError("need dt > 0 and t_end >= 0")
    trace = FlowTrace(L, mode, dt)
    y = sigma_to_coeffs(sigma0.to_float())
    n_steps = max(1, round(t_end / dt)) if t_end > 0 else 0
    t = 0.0

    def rhs(coeffs):
        sigma = coeffs_to_sigma(coeffs)
        try:
            out = flow_rhs(L, sigma, mode)
        except (NonDefiniteError, ZeroDivisionError):
            raise FlowLostDefiniteness(t, trace) from None
        except ValueError as exc:
            # a singular induced metric is a degenerate limit of the cone
            if "singular" in str(exc):
                raise FlowLostDefiniteness(t, trace) from None
            raise
        return sigma_to_coeffs(out)

    trace.append(_observe(L, 0.0, coeffs_to_sigma(y)))
    for step in range(n_steps):
        k1 = rhs(y)
        k2 = rhs([a + dt / 2 * b for a, b in zip(y, k1)])
        k3 = rhs([a + dt / 2 * b for a, b in zip(y, k2)])
        k4 = rhs([a + dt * b for a, b in zip(y, k3)])
        y = [
            a + dt / 6 * (b1 + 2 * b2 + 2 * b3 + b4)
            for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4)
        ]
        t = (step + 1) * dt
        sigma = coeffs_to_sigma(y)
        try:
            if (step + 1) % record_every == 0 or step + 1 == n_steps:
                trace.append(_observe(L, t, sigma))
        except (NonDefiniteError, ZeroDivisionError):
            raise FlowLostDefiniteness(t, trace) from None
        except ValueError as exc:
            if "singular" in str(exc):
                raise FlowLostDefiniteness(t, trace) from None
            raise
    return trace


def monitor_residuals(trace: FlowTrace) -> dict:
    """Check the structural monotonicity identities along a closed-mode
    trace by central differences:

        d/dt vol = (1/3) |tau|^2 vol

    plus positivity of |tau|^2 decay bookkeeping (scal = -|tau|^2 / 2).
    Residuals are relative to the scale of each quantity.
    """
    steps = trace.steps
    worst_vol = 0.0
    worst_scal = 0.0
    for k in range(1, len(steps) - 1):
        prev, cur, nxt = steps[k - 1], steps[k], steps[k + 1]
        h = nxt.t - prev.t
        if h <= 0:
            continue
        dvol = (nxt.vol - prev.vol) / h
        pred = cur.tau2_sq * cur.vol / 3.0
        worst_vol = max(worst_vol, abs(dvol - pred) / max(1.0, abs(pred)))
        worst_scal = max(
            worst_scal,
            abs(cur.scal + cur.tau2_sq / 2.0) / max(1.0, abs(cur.scal)),
        )
    return {"vol_growth": worst_vol, "scal_vs_torsion": worst_scal}


# ---------------------------------------------------------------------------
# the closed nilpotent reference solution


def fernandez_reference(t: float) -> dict:
    """Closed form solution of the flow on the nilpotent example.

    Only the e^123 coefficient moves.  Writing sigma(t) = f(t) e^123 +
    (the six remaining unit terms), the torsion of the scaled form is
    tau_2 = f^{-2/3} (e^27 - e^36), so the flow reduces to the scalar
    ODE f' = 2 f^{-2/3} with f(0) = 1, whose solution is the power law

        f(t) = (1 + 10 t / 3)^{3/5}.

    The induced metric is f^{2/3} on the first three directions and
    f^{-1/3} on the remaining four, the volume density is f^{1/3}, and
    |tau_2|^2 = 2 f^{-5/3} = 2 / (1 + 10 t / 3).  The volume grows
    without bound, monotonically, as t -> infinity.
    """
    f = (1.0 + 10.0 * t / 3.0) ** 0.6
    sigma = PHI.to_float() + Form.basis(1, 2, 3).to_float().scale(f - 1.0)
    g_diag = [f ** (2.0 / 3.0)] * 3 + [f ** (-1.0 / 3.0)] * 4
    return {
        "sigma": sigma,
        "g_diag": g_diag,
        "vol": f ** (1.0 / 3.0),
        "tau2_sq": 2.0 / (1.0 + 10.0 * t / 3.0),
        "scal": -1.0 / (1.0 + 10.0 * t / 3.0),
    }
