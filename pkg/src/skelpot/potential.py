"""Potential theory on metrized graphs.

The central notion: a PL function F is theta-psh when at every point x the
weighted outgoing slopes plus the theta-degree are nonnegative,

    sum_nu  w(nu) * slope_{x,nu}(F)  +  deg_theta(x)  >=  0,

where nu runs over the finitely many directions out of x, the weight of a
direction is the weight of its edge, and deg_theta is zero away from
vertices.  Only vertices and breakpoints can violate the inequality, so the
check is finite.

The Monge-Ampere operator assigns to F the atomic measure whose mass at x
is exactly that excess; its total telescopes to the total theta-degree.
dd^c is the theta = 0 case (a signed measure of total mass zero).

Envelopes are computed by exact LP: after subdividing at the breakpoints of
u and absorbing dd^c(u) into the curvature, the candidates F - u = G <= 0
are affine on edges, and maximizing sum G(v) over the slope constraints
yields the upper envelope.  The optimum is the unique pointwise maximal
feasible point; the solver re-solves with each coordinate as objective and
asserts equality, so degenerate optima cannot slip through silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    AtomicMeasure,
    CurvatureData,
    GraphError,
    GraphPoint,
    MetrizedGraph,
    PLFunction,
    subdivide,
)
from .lp import LinearProgram, lp_solve, reoptimize
from .rat import Rat, rat

ZERO = Rat(0)


class PotentialError(GraphError):
    pass


class EnvelopeInfeasible(PotentialError):
    """Raised when no theta-psh function exists (the envelope is -infinity)."""


class MassMismatch(PotentialError):
    pass


@dataclass(frozen=True)
class SlopeRow:
    point: GraphPoint
    slopes: tuple  # of (edge, tag, weight, slope)
    degree: object
    excess: object


@dataclass(frozen=True)
class SlopeReport:
    rows: tuple
    ok: bool

    def failing(self):
        return tuple(r for r in self.rows if r.excess < 0)


def _check_same_graph(g, *objs):
    for o in objs:
        if o.graph != g:
            raise PotentialError("data lives on a different graph")


def slope_report(g: MetrizedGraph, theta: CurvatureData, f: PLFunction) -> SlopeReport:
    _check_same_graph(g, theta, f)
    points = [g.vertex_point(v) for v in range(g.n_vertices)]
    points.extend(f.breakpoints())
    rows = []
    ok = True
    for pt in points:
        slopes = tuple(f.directional_slopes(pt))
        deg = theta.degree_at(pt)
        excess = sum((w * s for _, _, w, s in slopes), start=ZERO) + deg
        if excess < 0:
            ok = False
        rows.append(SlopeRow(point=pt, slopes=slopes, degree=deg, excess=excess))
    return SlopeReport(rows=tuple(rows), ok=ok)


def is_theta_psh(g: MetrizedGraph, theta: CurvatureData, f: PLFunction):
    """Decide the slope criterion; returns (verdict, full report)."""
    report = slope_report(g, theta, f)
    return report.ok, report


def ma_measure(g: MetrizedGraph, theta: CurvatureData, f: PLFunction) -> AtomicMeasure:
    """Monge-Ampere measure of f: the slope excess as an atomic measure.
    Total mass always equals the total theta-degree."""
    report = slope_report(g, theta, f)
    return AtomicMeasure(g, {row.point: row.excess for row in report.rows})


def dd_c(g: MetrizedGraph, f: PLFunction) -> AtomicMeasure:
    """Curvature of f alone (theta = 0): a signed measure of total mass 0."""
    return ma_measure(g, CurvatureData(g, (ZERO,) * g.n_vertices), f)


# ---------------------------------------------------------------------------
# Envelope
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnvelopeResult:
    envelope: PLFunction
    certificate: SlopeReport
    lp_summary: dict


def _lp_rows(gs: MetrizedGraph, degrees):
    """Slope-criterion rows for an affine-on-edges unknown, in the y = -F
    variables: sum_nu (w/l)(y_nu - y_v) <= deg(v).  Loops contribute 0."""
    n = gs.n_vertices
    rows = []
    for v in range(n):
        coeffs = [ZERO] * n
        for e, end in gs.incident(v):
            a, b, length, w = gs.edges[e]
            if a == b:
                continue
            other = b if end == 0 else a
            coeffs[other] += Rat(w) / length
            coeffs[v] -= Rat(w) / length
        rows.append((tuple(coeffs), "<=", degrees[v]))
    return rows


def envelope(
    g: MetrizedGraph,
    theta: CurvatureData,
    u: PLFunction,
    verify_pointwise_max: bool = True,
    max_lp_vars: int | None = None,
) -> EnvelopeResult:
    """Largest theta-psh function below u.

    Raises EnvelopeInfeasible when no theta-psh function exists at all (for
    instance when the total degree is negative).  The result comes with a
    recomputed psh certificate and is verified to be pointwise maximal among
    LP-feasible candidates unless verify_pointwise_max is switched off.
    """
    _check_same_graph(g, theta, u)
    gs, smap = subdivide(g, u.breakpoints())
    us = smap.plf(u)
    theta_s = smap.curvature(theta)
    ddc_u = ma_measure(gs, CurvatureData(gs, (ZERO,) * gs.n_vertices), us)
    degrees = list(theta_s.degrees)
    for pt, m in ddc_u.atoms:
        assert pt.is_vertex()  # us is affine on the subdivided edges
        degrees[pt.index] += m
    n = gs.n_vertices
    if max_lp_vars is not None and n > max_lp_vars:
        raise PotentialError(
            f"envelope LP needs {n} variables, above the cap of {max_lp_vars}"
        )
    lp = LinearProgram(
        objective=(-Rat(1),) * n,
        constraints=_lp_rows(gs, degrees),
        nonneg=True,
    )
    res = lp_solve(lp)
    if res.status == "infeasible":
        raise EnvelopeInfeasible("no theta-psh function exists")
    assert res.status == "optimal"  # objective <= 0 rules out unbounded
    y = res.point
    f0 = tuple(-yi for yi in y)
    if verify_pointwise_max:
        current = res
        for v in range(n):
            obj = [ZERO] * n
            obj[v] = -Rat(1)
            current = reoptimize(current, obj)
            if current.status != "optimal" or current.value != f0[v]:
                raise PotentialError(
                    "LP optimum is not the pointwise maximal feasible point"
                )
    env_s = PLFunction(gs, tuple(a + b for a, b in zip(f0, us.vertex_values)), None)
    env = smap.plf_back(env_s)
    report = slope_report(g, theta, env)
    if not report.ok:
        raise PotentialError("internal: envelope fails its own psh certificate")
    for v in range(g.n_vertices):
        if env.vertex_values[v] > u.vertex_values[v]:
            raise PotentialError("internal: envelope exceeds its bound")
    return EnvelopeResult(
        envelope=env,
        certificate=report,
        lp_summary={
            "n_vars": n,
            "n_constraints": n,
            "objective": sum(f0, start=ZERO),
        },
    )


# ---------------------------------------------------------------------------
# Dirichlet-type problem, energy, orthogonality
# ---------------------------------------------------------------------------


def solve_ma(
    g: MetrizedGraph, theta: CurvatureData, mu: AtomicMeasure, anchor: int = 0
) -> PLFunction:
    """Solve MA_theta(F) = mu with F(anchor) = 0.

    mu must be a nonnegative measure of total mass equal to the total
    theta-degree, supported on finitely many points.  On a connected graph
    the solution exists and is unique up to an additive constant; anchoring
    picks the representative.  The result is verified by recomputing its
    Monge-Ampere measure.
    """
    _check_same_graph(g, theta, mu)
    if not mu.is_nonnegative():
        raise MassMismatch("measure has a negative atom")
    if mu.total_mass() != theta.total():
        raise MassMismatch(
            "total mass must equal the total theta-degree "
            f"({mu.total_mass()} != {theta.total()})"
        )
    if not 0 <= anchor < g.n_vertices:
        raise PotentialError("anchor vertex out of range")
    interior = [pt for pt, _ in mu.atoms if not pt.is_vertex()]
    gs, smap = subdivide(g, interior)
    theta_s = smap.curvature(theta)
    mu_s = smap.measure(mu)
    n = gs.n_vertices
    b = [mu_s.mass_at(gs.vertex_point(v)) - theta_s.degrees[v] for v in range(n)]
    # rows: sum_nu (w/l)(F(nu) - F(v)) = b[v]; replace the anchor's row by
    # the anchoring condition (the dropped row is implied: rows sum to zero)
    mat = []
    rhs = []
    for v in range(n):
        if v == anchor:
            row = [ZERO] * n
            row[v] = Rat(1)
            mat.append(row)
            rhs.append(ZERO)
            continue
        row = [ZERO] * n
        for e, end in gs.incident(v):
            a_, b_, length, w = gs.edges[e]
            if a_ == b_:
                continue
            other = b_ if end == 0 else a_
            row[other] += Rat(w) / length
            row[v] -= Rat(w) / length
        mat.append(row)
        rhs.append(b[v])
    from .rat import solve_linear

    try:
        f_vals = solve_linear(mat, rhs)
    except ValueError as ex:  # pragma: no cover - connected graphs are regular
        raise PotentialError(f"Laplacian solve failed: {ex}") from ex
    f_s = PLFunction(gs, f_vals, None)
    f = smap.plf_back(f_s)
    if ma_measure(g, theta, f).atoms != mu.atoms:
        raise PotentialError("internal: solution does not reproduce the measure")
    return f


def energy(
    g: MetrizedGraph, theta: CurvatureData, phi1: PLFunction, phi2: PLFunction
):
    """The quadratic energy pairing
    E(phi1, phi2) = 1/2 * integral of (phi1 - phi2) against
    (MA(phi1) + MA(phi2)), the standard bilinear form normalized so that
    E(phi + c, phi) = c * total degree."""
    total = ma_measure(g, theta, phi1) + ma_measure(g, theta, phi2)
    diff = phi1 - phi2
    acc = ZERO
    for pt, m in total.atoms:
        acc += m * diff.value_at(pt)
    return acc / 2


def orthogonality_residual(g: MetrizedGraph, theta: CurvatureData, u: PLFunction):
    """integral of (u - P(u)) against MA(P(u)); identically zero, returned
    exactly so callers can assert it."""
    env = envelope(g, theta, u, verify_pointwise_max=False).envelope
    ma = ma_measure(g, theta, env)
    diff = u - env
    acc = ZERO
    for pt, m in ma.atoms:
        acc += m * diff.value_at(pt)
    return acc
