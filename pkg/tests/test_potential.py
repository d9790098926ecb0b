"""Envelope/Monge-Ampere unit tests against hand-solved instances.

The two-vertex oracle: edge a-b of length 1 and weight 1, theta = (1, 0),
bound u = (0, -2).  Feasibility forces F(b) <= -2 and the slope row at a
forces F(a) <= F(b) + 1, so the envelope is exactly (-1, -2)."""

import pytest

from skelpot import (
    AtomicMeasure,
    CurvatureData,
    EnvelopeInfeasible,
    GraphPoint,
    MassMismatch,
    MetrizedGraph,
    PLFunction,
    PotentialError,
    dd_c,
    energy,
    envelope,
    is_theta_psh,
    ma_measure,
    orthogonality_residual,
    pl_equal,
    solve_ma,
)
from skelpot.rat import Rat

import random

from helpers import rand_graph, rand_nef_theta, rand_plf, rand_psh

EDGE = MetrizedGraph(("a", "b"), ((0, 1, 1, 1),))


def test_envelope_edge_oracle():
    theta = CurvatureData(EDGE, (1, 0))
    u = PLFunction(EDGE, (0, -2))
    res = envelope(EDGE, theta, u)
    assert res.envelope.vertex_values == (Rat(-1), Rat(-2))
    assert res.certificate.ok
    assert res.lp_summary["n_vars"] == 2


def test_envelope_infeasible_when_total_degree_negative():
    theta = CurvatureData(EDGE, (0, -1))
    with pytest.raises(EnvelopeInfeasible):
        envelope(EDGE, theta, PLFunction(EDGE, (0, 0)))


def test_envelope_fixes_psh_input():
    # V-shaped u on a length-2 edge is itself psh for theta = (1, 1)
    g = MetrizedGraph(("a", "b"), ((0, 1, 2, 1),))
    theta = CurvatureData(g, (1, 1))
    u = PLFunction(g, (0, 0), (((Rat(1), Rat(-1)),),))
    ok, _ = is_theta_psh(g, theta, u)
    assert ok
    env = envelope(g, theta, u).envelope
    assert pl_equal(env, u)


def test_ma_of_kink():
    g = MetrizedGraph(("a", "b"), ((0, 1, 2, 1),))
    theta = CurvatureData(g, (1, 1))
    u = PLFunction(g, (0, 0), (((Rat(1), Rat(-1)),),))
    mu = ma_measure(g, theta, u)
    assert mu.atoms == ((GraphPoint("e", 0, Rat(1)), Rat(2)),)
    assert mu.total_mass() == theta.total()


def test_ddc_mass_zero():
    rng = random.Random(3)
    for _ in range(10):
        g = rand_graph(rng)
        f = rand_plf(rng, g)
        assert dd_c(g, f).total_mass() == 0


def test_envelope_cap():
    theta = CurvatureData(EDGE, (1, 0))
    u = PLFunction(EDGE, (0, -2))
    with pytest.raises(PotentialError, match="above the cap"):
        envelope(EDGE, theta, u, max_lp_vars=1)


def test_solve_ma_recovers_kink():
    g = MetrizedGraph(("a", "b"), ((0, 1, 2, 1),))
    theta = CurvatureData(g, (1, 1))
    mu = AtomicMeasure(g, {GraphPoint("e", 0, Rat(1)): Rat(2)})
    f = solve_ma(g, theta, mu, anchor=0)
    expect = PLFunction(g, (0, 0), (((Rat(1), Rat(-1)),),))
    assert pl_equal(f, expect)


def test_solve_ma_rejects_mass_mismatch():
    theta = CurvatureData(EDGE, (1, 0))
    with pytest.raises(MassMismatch):
        solve_ma(EDGE, theta, AtomicMeasure(EDGE, {GraphPoint("v", 0): Rat(2)}))
    with pytest.raises(MassMismatch):
        solve_ma(
            EDGE,
            theta,
            AtomicMeasure(
                EDGE, {GraphPoint("v", 0): Rat(2), GraphPoint("v", 1): Rat(-1)}
            ),
        )


def test_solve_ma_anchors_differ_by_constant():
    rng = random.Random(17)
    g = rand_graph(rng, max_v=5)
    theta = rand_nef_theta(rng, g)
    phi = rand_psh(rng, g, theta)
    mu = ma_measure(g, theta, phi)
    f0 = solve_ma(g, theta, mu, anchor=0)
    f1 = solve_ma(g, theta, mu, anchor=g.n_vertices - 1)
    c = f0.vertex_values[0] - f1.vertex_values[0]
    assert pl_equal(f0, f1.add_const(c))


def test_energy_normalization():
    rng = random.Random(23)
    for _ in range(5):
        g = rand_graph(rng, max_v=5)
        theta = rand_nef_theta(rng, g)
        phi = rand_psh(rng, g, theta)
        c = Rat(rng.randint(-5, 5), rng.randint(1, 4))
        # E(phi + c, phi) = c * total degree, and the pairing is antisymmetric
        assert energy(g, theta, phi.add_const(c), phi) == c * theta.total()
        psi = rand_psh(rng, g, theta)
        assert energy(g, theta, phi, psi) == -energy(g, theta, psi, phi)


def test_orthogonality_on_fixed_instance():
    theta = CurvatureData(EDGE, (1, 0))
    u = PLFunction(EDGE, (0, -2))
    assert orthogonality_residual(EDGE, theta, u) == 0


def test_slope_report_failing_rows():
    theta = CurvatureData(EDGE, (0, 0))
    f = PLFunction(EDGE, (0, 1))
    ok, report = is_theta_psh(EDGE, theta, f)
    assert not ok
    assert [r.point for r in report.failing()] == [GraphPoint("v", 1)]
