"""Laplacian-type flow of closed definite forms on the nilpotent example."""
import pytest

from g2kit.flow import (
    FlowLostDefiniteness,
    TRACE_HEADER,
    fernandez_reference,
    flow_rhs,
    monitor_residuals,
    run_flow,
)
from g2kit.forms import Form
from g2kit.g2 import PHI
from g2kit.liealg import builtin_algebra


def test_rhs_vanishes_on_flat_structure():
    L = builtin_algebra("abelian")
    assert flow_rhs(L, PHI.to_float()).max_abs() <= 1e-14


def test_short_flow_matches_reference():
    L = builtin_algebra("fernandez")
    trace = run_flow(L, PHI, t_end=0.1, dt=1e-3, record_every=10)
    ref = fernandez_reference(0.1)
    final = trace.final
    err = (final.sigma - ref["sigma"]).max_abs()
    assert err <= 1e-8
    assert abs(final.vol - ref["vol"]) <= 1e-8
    assert abs(final.tau2_sq - ref["tau2_sq"]) <= 1e-7
    assert abs(final.scal - ref["scal"]) <= 1e-7


def test_flow_monitors_and_monotonicity():
    L = builtin_algebra("fernandez")
    trace = run_flow(L, PHI, t_end=0.2, dt=2e-3, record_every=5)
    res = monitor_residuals(trace)
    assert res["vol_growth"] <= 1e-3
    assert res["scal_vs_torsion"] <= 1e-8
    vols = [s.vol for s in trace.steps]
    assert all(b > a for a, b in zip(vols, vols[1:]))
    # closedness is preserved along the flow
    assert all(s.closed_residual <= 1e-12 for s in trace.steps)


def test_trace_csv(tmp_path):
    L = builtin_algebra("fernandez")
    trace = run_flow(L, PHI, t_end=0.01, dt=1e-3)
    p = tmp_path / "trace.csv"
    trace.write_csv(str(p))
    lines = p.read_text().strip().splitlines()
    assert lines[0] == TRACE_HEADER
    assert len(lines) == len(trace.steps) + 1
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == 0.0 and abs(first[1] - 1.0) <= 1e-14


def test_reference_solves_the_scalar_ode():
    # f' = 2 f^{-2/3} for the e^123 coefficient f(t) = (1 + 10t/3)^{3/5}
    h = 1e-6
    for t in (0.0, 0.5, 2.0):
        f = lambda u: fernandez_reference(u)["sigma"].coeff(1, 2, 3)
        deriv = (f(t + h) - f(t - h)) / (2 * h)
        assert abs(deriv - 2.0 * f(t) ** (-2.0 / 3.0)) <= 1e-6


def test_bad_arguments_rejected():
    L = builtin_algebra("fernandez")
    with pytest.raises(ValueError):
        run_flow(L, PHI, t_end=1.0, dt=0.0)
    with pytest.raises(ValueError):
        run_flow(L, PHI, t_end=-1.0, dt=0.1)


def test_lost_definiteness_reported():
    # the general-mode flow on this algebra degenerates in finite time
    L = builtin_algebra("su2-r4")
    with pytest.raises(FlowLostDefiniteness) as exc:
        run_flow(L, PHI, t_end=40.0, dt=0.5, mode="general", record_every=20)
    assert exc.value.t > 0.0
    assert exc.value.partial_trace is not None
    assert len(exc.value.partial_trace.steps) >= 1
