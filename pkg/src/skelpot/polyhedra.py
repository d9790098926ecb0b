"""Rational polyhedra in generator (V-) representation.

A polyhedron is conv(points) + cone(rays) with at least one point.  That is
the natural form for polyhedral complexes built from fans and skeletons.
Membership and redundancy are decided by exact LP feasibility; for the
2-dimensional case there is a full facet (H-) representation, intersection,
and hull-area toolkit, all over Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .lp import LinearProgram, lp_solve
from .rat import Rat, rat, dot, vec_sub, primitive, matrix_rank, cross2

ZERO = Rat(0)
ONE = Rat(1)


@dataclass(frozen=True)
class Polyhedron:
    """conv(gen_points) + cone(gen_rays); gen_points is never empty."""

    gen_points: tuple
    gen_rays: tuple = ()

    def __init__(self, gen_points, gen_rays=()):
        pts = tuple(tuple(rat(x) for x in p) for p in gen_points)
        rays = tuple(tuple(rat(x) for x in r) for r in gen_rays)
        if not pts:
            raise ValueError("a polyhedron needs at least one generator point")
        d = len(pts[0])
        if any(len(p) != d for p in pts) or any(len(r) != d for r in rays):
            raise ValueError("mixed ambient dimensions")
        if any(all(x == 0 for x in r) for r in rays):
            raise ValueError("zero vector is not a valid ray")
        object.__setattr__(self, "gen_points", pts)
        object.__setattr__(self, "gen_rays", rays)

    @property
    def ambient_dim(self) -> int:
        return len(self.gen_points[0])

    def translate(self, v):
        v = tuple(rat(x) for x in v)
        return Polyhedron(
            tuple(tuple(a + b for a, b in zip(p, v)) for p in self.gen_points),
            self.gen_rays,
        )


def poly_contains(poly: Polyhedron, u) -> bool:
    """Exact membership: is u = sum a_i p_i + sum t_j r_j with a in the
    simplex and t >= 0 feasible?  Decided by LP."""
    u = tuple(rat(x) for x in u)
    d = poly.ambient_dim
    if len(u) != d:
        raise ValueError("point dimension mismatch")
    k = len(poly.gen_points)
    l = len(poly.gen_rays)
    n = k + l
    cons = []
    for i in range(d):
        coeffs = [p[i] for p in poly.gen_points] + [r[i] for r in poly.gen_rays]
        cons.append((tuple(coeffs), "=", u[i]))
    cons.append((tuple([ONE] * k + [ZERO] * l), "=", ONE))
    res = lp_solve(LinearProgram(objective=(ZERO,) * n, constraints=cons, nonneg=True))
    return res.status == "optimal"


def recession(poly: Polyhedron) -> Polyhedron:
    """Recession cone, presented with the origin as its single point."""
    d = poly.ambient_dim
    return Polyhedron(((ZERO,) * d,), poly.gen_rays)


def poly_dim(poly: Polyhedron) -> int:
    p0 = poly.gen_points[0]
    rows = [vec_sub(p, p0) for p in poly.gen_points[1:]]
    rows += [r for r in poly.gen_rays]
    if not rows:
        return 0
    return matrix_rank(rows)


def poly_is_subset(a: Polyhedron, b: Polyhedron) -> bool:
    """a subset of b, via generators: points of a in b, rays of a in rec(b)."""
    rb = recession(b)
    return all(poly_contains(b, p) for p in a.gen_points) and all(
        poly_contains(rb, r) for r in a.gen_rays
    )


def poly_equal(a: Polyhedron, b: Polyhedron) -> bool:
    return poly_is_subset(a, b) and poly_is_subset(b, a)


def minimalize(poly: Polyhedron) -> Polyhedron:
    """Drop redundant generators (points inside the hull of the others,
    rays inside the cone of the others).  Canonically sorted output."""
    pts = sorted(set(poly.gen_points))
    rays = sorted({primitive(r) for r in poly.gen_rays})
    keep_r = []
    for i, r in enumerate(rays):
        others = [x for j, x in enumerate(rays) if j != i]
        if not others or not _in_cone(r, others):
            keep_r.append(r)
    keep_p = []
    for i, p in enumerate(pts):
        others = [x for j, x in enumerate(pts) if j != i]
        if not others:
            keep_p.append(p)
            continue
        sub = Polyhedron(tuple(others), tuple(keep_r))
        if not poly_contains(sub, p):
            keep_p.append(p)
    return Polyhedron(tuple(keep_p), tuple(keep_r))


def _in_cone(r, gens) -> bool:
    d = len(r)
    cons = []
    for i in range(d):
        cons.append((tuple(g[i] for g in gens), "=", r[i]))
    res = lp_solve(
        LinearProgram(objective=(ZERO,) * len(gens), constraints=cons, nonneg=True)
    )
    return res.status == "optimal"


# ---------------------------------------------------------------------------
# 2-dimensional H-representation and intersections
# ---------------------------------------------------------------------------


def halfplanes(poly: Polyhedron) -> tuple:
    """Facet inequalities (n, c) meaning <n, x> <= c, for a 2-dimensional
    polyhedron in the plane.  Normals are primitive integer vectors.

    Candidate normals come from pairing generators: each facet of a 2-poly
    is spanned by a direction that is either (q - p) for generators p, q or
    a ray direction.  Rotating candidates by 90 degrees and keeping those
    valid and tight on two independent generators yields exactly the facets.
    """
    if poly.ambient_dim != 2:
        raise ValueError("halfplanes is 2-dimensional only")
    if poly_dim(poly) != 2:
        raise ValueError("halfplanes needs a full-dimensional cell")
    pts, rays = tuple(sorted(set(poly.gen_points))), poly.gen_rays
    dirs = []
    for p, q in itertools.combinations(pts, 2):
        d = vec_sub(q, p)
        if any(x != 0 for x in d):
            dirs.append(d)
    dirs.extend(rays)
    out = {}
    for d in dirs:
        n = (-d[1], d[0])
        for normal in (n, (-n[0], -n[1])):
            # valid side: all generators satisfy <normal, x> <= c with
            # c = max over points, and rays must not increase the form
            if any(dot(normal, r) > 0 for r in rays):
                continue
            c = max(dot(normal, p) for p in pts)
            tight_pts = [p for p in pts if dot(normal, p) == c]
            tight_rays = [r for r in rays if dot(normal, r) == 0]
            # a facet of a 2-poly is 1-dimensional: needs two independent
            # tight generators
            if len(tight_pts) + len(tight_rays) < 2:
                continue
            if len(tight_pts) == 1 and not tight_rays:
                continue
            key = primitive(normal)
            scale = Rat(key[0], normal[0]) if normal[0] else Rat(key[1], normal[1])
            out[key] = c * scale
    return tuple(sorted((n, c) for n, c in out.items()))


def halfplane_contains(hps, u) -> bool:
    return all(dot(n, u) <= c for n, c in hps)


def vrep_from_halfplanes(hps) -> Polyhedron | None:
    """Generators of {x : <n_i, x> <= c_i} in the plane.

    Returns None when the region is empty, raises when it is not pointed
    (contains a line) since such cells never occur in valid complexes.
    """
    hps = [((rat(n[0]), rat(n[1])), rat(c)) for n, c in hps]
    verts = set()
    for (n1, c1), (n2, c2) in itertools.combinations(hps, 2):
        det = cross2(n1, n2)
        if det == 0:
            continue
        x = (c1 * n2[1] - c2 * n1[1]) / det
        y = (n1[0] * c2 - n2[0] * c1) / det
        if halfplane_contains(hps, (x, y)):
            verts.add((x, y))
    rays = set()
    for n, _ in hps:
        for d in ((-n[1], n[0]), (n[1], -n[0])):
            if all(dot(m, d) <= 0 for m, _ in hps):
                rays.add(primitive(d))
    for r in list(rays):
        if (-r[0], -r[1]) in rays:
            raise ValueError("region is not pointed (contains a line)")
    if not verts:
        # pointed and nonempty implies a vertex exists; so check emptiness
        cons = [(n, "<=", c) for n, c in hps]
        feas = lp_solve(LinearProgram(objective=(ZERO, ZERO), constraints=cons))
        if feas.status == "infeasible":
            return None
        raise ValueError("region is not pointed (no vertex)")
    return minimalize(Polyhedron(tuple(sorted(verts)), tuple(sorted(rays))))


def intersect2(a: Polyhedron, b: Polyhedron) -> Polyhedron | None:
    """Intersection of two full-dimensional cells in the plane (V-rep in,
    V-rep out); None when empty."""
    return vrep_from_halfplanes(halfplanes(a) + halfplanes(b))


def convex_hull_2d(points) -> list:
    """Andrew's monotone chain on exact rationals; returns hull vertices in
    counterclockwise order (collinear points pruned)."""
    pts = sorted({(rat(p[0]), rat(p[1])) for p in points})
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and cross2(vec_sub(lower[-1], lower[-2]), vec_sub(p, lower[-2])) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross2(vec_sub(upper[-1], upper[-2]), vec_sub(p, upper[-2])) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def hull_area_2d(points) -> Rat:
    """Area of conv(points), exact (shoelace on the hull)."""
    hull = convex_hull_2d(points)
    if len(hull) < 3:
        return ZERO
    s = ZERO
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return s / 2
