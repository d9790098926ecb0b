"""Complete rational polyhedral complexes in the plane and their skeleta.

A PolyComplex is a finite set of full-dimensional cells (V-representation
polyhedra) that tile R^2 face-to-face; its recession cones form a complete
fan.  The bounded cells make up the skeleton, and every point of the plane
retracts onto it by dropping the recession part of its barycentric-plus-ray
decomposition inside any containing cell.

PL functions are stored as one affine piece per maximal cell.  Concavity is
a facet-local condition (the affine piece of one side must dominate the
function on the other side), and for concave functions with recession equal
to the support function of a lattice polytope P the Monge-Ampere measure is
atomic: each complex vertex carries 2! times the area of the polygon spanned
by the gradients of its incident cells, and the masses add up to 2 * area(P).

Everything is exact; ambient dimension is capped at 2, which covers all the
geometry this package models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .polyhedra import (
    Polyhedron,
    convex_hull_2d,
    halfplane_contains,
    halfplanes,
    hull_area_2d,
    intersect2,
    minimalize,
    poly_contains,
    poly_dim,
    poly_equal,
    poly_is_subset,
    recession,
    vrep_from_halfplanes,
)
from .rat import Rat, rat, dot, rfloor, primitive, solve_linear, det3, vec_sub

ZERO = Rat(0)
ONE = Rat(1)


class ToricError(Exception):
    pass


class ComplexInvalid(ToricError):
    pass


class PolyComplex:
    """Cells are minimalized at construction; validity (tiling, fan of
    recession cones, simpliciality) is established by validate_complex."""

    def __init__(self, cells, dim=2):
        if dim != 2:
            raise ToricError("only ambient dimension 2 is supported")
        cells = tuple(minimalize(c) for c in cells)
        if not cells:
            raise ToricError("a complex needs at least one cell")
        if any(c.ambient_dim != 2 for c in cells):
            raise ToricError("cells must live in the plane")
        self.dim = dim
        self.cells = cells
        self._hps = {}

    def __eq__(self, other):
        return isinstance(other, PolyComplex) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def cell_halfplanes(self, i: int):
        if i not in self._hps:
            self._hps[i] = halfplanes(self.cells[i])
        return self._hps[i]

    def cells_containing(self, u) -> list:
        u = tuple(rat(x) for x in u)
        return [
            i
            for i in range(len(self.cells))
            if halfplane_contains(self.cell_halfplanes(i), u)
        ]

    def vertices(self) -> tuple:
        out = set()
        for c in self.cells:
            out.update(c.gen_points)
        return tuple(sorted(out))


@dataclass(frozen=True)
class SimplicialFlag:
    simplicial: tuple
    unimodular: tuple

    def all_simplicial(self) -> bool:
        return all(self.simplicial)

    def all_unimodular(self) -> bool:
        return all(self.unimodular)


def _lift_primitive(p, height):
    return primitive((p[0], p[1], rat(height)))


def _cell_flags(cell: Polyhedron):
    gens = [_lift_primitive(p, 1) for p in cell.gen_points]
    gens += [_lift_primitive(r, 0) for r in cell.gen_rays]
    if len(gens) != 3:
        return False, False
    d = det3(*gens)
    return d != 0, abs(d) == 1


def _facets(pc: PolyComplex, i: int):
    """Facets of cell i as canonical keys with their V-data."""
    cell = pc.cells[i]
    out = []
    for n, c in pc.cell_halfplanes(i):
        pts = tuple(sorted(p for p in cell.gen_points if dot(n, p) == c))
        rays = tuple(sorted(primitive(r) for r in cell.gen_rays if dot(n, r) == 0))
        out.append(((pts, rays), (n, c)))
    return out


def _is_face(pc: PolyComplex, i: int, face: Polyhedron) -> bool:
    """Is `face` a face of cell i?  Computed by intersecting the cell with
    all of its halfplanes that are tight on `face`."""
    cell = pc.cells[i]
    hps = list(pc.cell_halfplanes(i))
    tight = []
    for n, c in hps:
        if all(dot(n, p) == c for p in face.gen_points) and all(
            dot(n, r) == 0 for r in face.gen_rays
        ):
            tight.append((n, c))
    if not tight:
        return poly_equal(face, cell)
    for n, c in tight:
        hps.append(((-n[0], -n[1]), -c))
    cut = vrep_from_halfplanes(hps)
    return cut is not None and poly_equal(cut, face)


def _vertex_link_ok(pc: PolyComplex, v) -> bool:
    """The cells around vertex v tile a neighbourhood iff every boundary
    direction at v occurs exactly twice (cell interiors being disjoint)."""
    dirs = []
    for i, cell in enumerate(pc.cells):
        if v not in cell.gen_points:
            continue
        for (pts, rays), (n, c) in _facets(pc, i):
            if v not in pts:
                continue
            d = None
            for p in pts:
                if p != v:
                    d = primitive(vec_sub(p, v))
                    break
            if d is None:
                if not rays:
                    continue  # degenerate facet data; caught elsewhere
                d = rays[0]
            dirs.append(d)
    counts = {}
    for d in dirs:
        counts[d] = counts.get(d, 0) + 1
    return bool(counts) and all(k == 2 for k in counts.values())


def recession_fan(pc: PolyComplex) -> tuple:
    """Distinct recession cones of the cells (origin-pointed polyhedra)."""
    cones = []
    for c in pc.cells:
        rc = minimalize(recession(c))
        if all(not poly_equal(rc, k) for k in cones):
            cones.append(rc)
    return tuple(cones)


def validate_complex(pc: PolyComplex, fan) -> SimplicialFlag:
    """Full validity check: pairwise face-compatibility, completeness (facet
    pairing plus vertex links), recession fan equal to the given fan, and
    per-cell simplicial/unimodular flags.  Raises ComplexInvalid with the
    offending cells named; returns the flags when valid."""
    cells = pc.cells
    # pairwise: intersections are common faces, interiors disjoint
    for i, j in itertools.combinations(range(len(cells)), 2):
        inter = intersect2(cells[i], cells[j])
        if inter is None:
            continue
        if poly_dim(inter) == 2:
            raise ComplexInvalid(f"cells {i} and {j} overlap in dimension 2")
        if not _is_face(pc, i, inter) or not _is_face(pc, j, inter):
            raise ComplexInvalid(
                f"cells {i} and {j} do not intersect in a common face"
            )
    # completeness: every facet shared by exactly two cells
    seen = {}
    for i in range(len(cells)):
        for key, _ in _facets(pc, i):
            seen.setdefault(key, []).append(i)
    for key, owners in seen.items():
        if len(owners) != 2:
            raise ComplexInvalid(
                f"facet {key} belongs to cells {owners}, expected exactly 2"
            )
    # completeness around vertices
    for v in pc.vertices():
        if not _vertex_link_ok(pc, v):
            raise ComplexInvalid(f"cells around vertex {v} do not tile the plane")
    # recession fan: must form a fan equal to the given one
    rec_cones = recession_fan(pc)
    maximal = [k for k in rec_cones if poly_dim(k) == 2]
    for a, b in itertools.combinations(range(len(maximal)), 2):
        inter = intersect2(maximal[a], maximal[b])
        if inter is not None and poly_dim(inter) == 2:
            raise ComplexInvalid(
                f"recession cones of the complex overlap ({a}, {b})"
            )
    for k in rec_cones:
        if poly_dim(k) < 2 and not any(
            poly_is_subset(k, m) for m in maximal
        ):
            raise ComplexInvalid("recession cones do not form a fan")
    fan_cells = list(fan.cells) if isinstance(fan, PolyComplex) else list(fan)
    fan_max = [minimalize(k) for k in fan_cells if poly_dim(k) == 2]
    for k in maximal:
        if not any(poly_equal(k, m) for m in fan_max):
            raise ComplexInvalid("recession fan does not match the expected fan")
    for m in fan_max:
        if not any(poly_equal(k, m) for k in maximal):
            raise ComplexInvalid("expected fan has a cone the complex misses")
    flags = [_cell_flags(c) for c in cells]
    return SimplicialFlag(
        simplicial=tuple(s for s, _ in flags),
        unimodular=tuple(u for _, u in flags),
    )


def fan_of_p2() -> tuple:
    """The complete fan with rays e1, e2, -e1-e2 (three maximal cones)."""
    o = ((0, 0),)
    return (
        Polyhedron(o, ((1, 0), (0, 1))),
        Polyhedron(o, ((0, 1), (-1, -1))),
        Polyhedron(o, ((-1, -1), (1, 0))),
    )


# ---------------------------------------------------------------------------
# Skeleton and retraction
# ---------------------------------------------------------------------------


def skeleton(pc: PolyComplex) -> tuple:
    """Maximal bounded faces of the complex, largest dimension first.
    (The union of these cells is the combinatorial skeleton.)"""
    found = []
    for i, cell in enumerate(pc.cells):
        if not cell.gen_rays:
            found.append(cell)
            continue
        # bounded faces of an unbounded cell: facets without rays, vertices
        for (pts, rays), _ in _facets(pc, i):
            if rays or not pts:
                continue
            found.append(Polyhedron(pts))
        for p in cell.gen_points:
            found.append(Polyhedron((p,)))
    out = []
    for cand in found:
        if any(poly_is_subset(cand, other) and not poly_equal(cand, other) for other in found):
            continue
        if any(poly_equal(cand, k) for k in out):
            continue
        out.append(cand)
    return tuple(sorted(out, key=lambda c: (-poly_dim(c), c.gen_points)))


def decompose(cell: Polyhedron, u):
    """Coefficients (a, lam) with u = sum a_i p_i + sum lam_j v_j, a >= 0
    summing to 1, lam >= 0.  Unique for simplicial cells; errors when the
    cell is not simplicial or u lies outside it."""
    u = tuple(rat(x) for x in u)
    cell = minimalize(cell)
    pts, rays = cell.gen_points, cell.gen_rays
    cols = [(p[0], p[1], ONE) for p in pts] + [(r[0], r[1], ZERO) for r in rays]
    if len(cols) > 3:
        raise ToricError("cell is not simplicial")
    rows = [[col[k] for col in cols] for k in range(3)]
    rhs = [u[0], u[1], ONE]
    if len(cols) < 3:
        # lower-dimensional simplicial cell: solve the consistent subsystem
        sol = _solve_rect(rows, rhs)
        if sol is None:
            raise ToricError("point is outside the cell")
    else:
        try:
            sol = solve_linear(rows, rhs)
        except ValueError as ex:
            raise ToricError(f"cell is not simplicial: {ex}") from ex
    a = tuple(sol[: len(pts)])
    lam = tuple(sol[len(pts):])
    if any(x < 0 for x in a) or any(x < 0 for x in lam):
        raise ToricError("point is outside the cell")
    return a, lam


def _solve_rect(rows, rhs):
    """Solve an overdetermined exact system with full column rank; None when
    inconsistent."""
    m, n = len(rows), len(rows[0])
    aug = [list(map(Rat, rows[i])) + [Rat(rhs[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((k for k in range(r, m) if aug[k][c] != 0), None)
        if piv is None:
            return None  # rank deficiency: not simplicial
        aug[r], aug[piv] = aug[piv], aug[r]
        pr = aug[r]
        inv = ONE / pr[c]
        aug[r] = pr = [x * inv for x in pr]
        for k in range(m):
            if k != r and aug[k][c] != 0:
                f = aug[k][c]
                aug[k] = [x - f * y for x, y in zip(aug[k], pr)]
        pivots.append(c)
        r += 1
    for k in range(r, m):
        if aug[k][n] != 0:
            return None  # inconsistent
    sol = [ZERO] * n
    for idx, c in enumerate(pivots):
        sol[c] = aug[idx][n]
    return tuple(sol)


def retraction(pc: PolyComplex, u) -> tuple:
    """p(u): the point part of the decomposition of u in any containing
    cell; checked to agree across all containing cells."""
    u = tuple(rat(x) for x in u)
    owners = pc.cells_containing(u)
    if not owners:
        raise ToricError(f"no cell contains {u}; the complex is not complete")
    results = []
    for i in owners:
        cell = pc.cells[i]
        a, _ = decompose(cell, u)
        pt = (
            sum((ai * p[0] for ai, p in zip(a, cell.gen_points)), start=ZERO),
            sum((ai * p[1] for ai, p in zip(a, cell.gen_points)), start=ZERO),
        )
        results.append(pt)
    first = results[0]
    if any(r != first for r in results[1:]):
        raise ToricError(f"retraction of {u} differs between containing cells")
    return first


def retraction_affine(cell: Polyhedron):
    """The retraction restricted to a simplicial cell is affine:
    returns (A, b) with p(u) = A u + b, as rows of A plus the shift."""
    cell = minimalize(cell)
    pts, rays = cell.gen_points, cell.gen_rays
    cols = [(p[0], p[1], ONE) for p in pts] + [(r[0], r[1], ZERO) for r in rays]
    if len(cols) != 3:
        raise ToricError("affine retraction needs a full-dimensional simplicial cell")
    rows = [[col[k] for col in cols] for k in range(3)]
    # columns of M^{-1}
    inv_cols = [solve_linear(rows, e) for e in ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))]
    k = len(pts)
    A = [[ZERO, ZERO], [ZERO, ZERO]]
    b = [ZERO, ZERO]
    for j in range(2):  # output coordinate
        for col_idx in range(3):
            coef = sum((pts[i][j] * inv_cols[col_idx][i] for i in range(k)), start=ZERO)
            if col_idx < 2:
                A[j][col_idx] = coef
            else:
                b[j] = coef
    return A, tuple(b)


# ---------------------------------------------------------------------------
# PL functions on complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportFn:
    """min of affine pieces <m, u> + c; concave by construction."""

    pieces: tuple

    def __init__(self, pieces):
        rows = tuple(
            ((rat(m[0]), rat(m[1])), rat(c)) for m, c in pieces
        )
        if not rows:
            raise ToricError("a support function needs at least one piece")
        object.__setattr__(self, "pieces", rows)

    @classmethod
    def from_polytope(cls, vertices):
        return cls(tuple((v, ZERO) for v in vertices))

    def value(self, u):
        u = tuple(rat(x) for x in u)
        return min(dot(m, u) + c for m, c in self.pieces)


class ToricPLFunction:
    """One affine piece (gradient, constant) per maximal cell, continuous
    across every shared face (verified at construction)."""

    def __init__(self, complex: PolyComplex, pieces, check: bool = True):
        pieces = tuple(
            ((rat(g[0]), rat(g[1])), rat(c)) for g, c in pieces
        )
        if len(pieces) != len(complex.cells):
            raise ToricError("one affine piece per cell required")
        self.complex = complex
        self.pieces = pieces
        if check:
            self._check_continuity()

    def __eq__(self, other):
        return (
            isinstance(other, ToricPLFunction)
            and self.complex == other.complex
            and self.pieces == other.pieces
        )

    def _check_continuity(self):
        cells = self.complex.cells
        for i, j in itertools.combinations(range(len(cells)), 2):
            inter = intersect2(cells[i], cells[j])
            if inter is None:
                continue
            (gi, ci), (gj, cj) = self.pieces[i], self.pieces[j]
            dg = (gi[0] - gj[0], gi[1] - gj[1])
            dc = ci - cj
            if any(dot(dg, p) + dc != 0 for p in inter.gen_points) or any(
                dot(dg, r) != 0 for r in inter.gen_rays
            ):
                raise ToricError(
                    f"pieces of cells {i} and {j} disagree on their shared face"
                )

    def value(self, u):
        u = tuple(rat(x) for x in u)
        owners = self.complex.cells_containing(u)
        if not owners:
            raise ToricError(f"{u} lies in no cell")
        g, c = self.pieces[owners[0]]
        return dot(g, u) + c

    def add_support(self, psi: SupportFn) -> "ToricPLFunction":
        """Materialize psi + self on this complex; psi must be affine on
        each cell (one piece active throughout)."""
        out = []
        for i, cell in enumerate(self.complex.cells):
            active = _active_piece(psi, cell)
            if active is None:
                raise ToricError(
                    f"support function is not affine on cell {i}; refine the complex"
                )
            (m, c) = active
            (g, k) = self.pieces[i]
            out.append(((g[0] + m[0], g[1] + m[1]), k + c))
        return ToricPLFunction(self.complex, tuple(out))

    def scale(self, t) -> "ToricPLFunction":
        t = rat(t)
        return ToricPLFunction(
            self.complex,
            tuple(((t * g[0], t * g[1]), t * c) for g, c in self.pieces),
            check=False,
        )


def _active_piece(psi: SupportFn, cell: Polyhedron):
    """The piece of psi equal to psi on all of cell, if one exists."""
    for m, c in psi.pieces:
        ok = True
        for m2, c2 in psi.pieces:
            dg = (m2[0] - m[0], m2[1] - m[1])
            dc = c2 - c
            if any(dot(dg, p) + dc < 0 for p in cell.gen_points) or any(
                dot(dg, r) < 0 for r in cell.gen_rays
            ):
                ok = False
                break
        if ok:
            return (m, c)
    return None


def support_on_complex(psi: SupportFn, pc: PolyComplex) -> ToricPLFunction:
    zero = ToricPLFunction(pc, tuple((((0, 0), 0)) for _ in pc.cells), check=False)
    return zero.add_support(psi)


def compose_with_retraction(pc: PolyComplex, g_pieces) -> ToricPLFunction:
    """g composed with the retraction of pc.

    g_pieces: affine data on the skeleton, given either as a ToricPLFunction
    over the skeleton cells or as a list of ((grad, const), cell) pairs in
    skeleton order.  The result is affine on each maximal cell (errors when
    a cell's retraction image crosses skeleton cells) and continuous.
    """
    skel = skeleton(pc)
    if isinstance(g_pieces, ToricPLFunction):
        if tuple(g_pieces.complex.cells) != tuple(skel):
            raise ToricError("g must live on the skeleton of this complex")
        gp = g_pieces.pieces
    else:
        gp = tuple(((rat(g[0]), rat(g[1])), rat(c)) for g, c in g_pieces)
        if len(gp) != len(skel):
            raise ToricError("one affine piece per skeleton cell required")
    out = []
    for i, cell in enumerate(pc.cells):
        image = Polyhedron(cell.gen_points)
        owner = next(
            (k for k, s in enumerate(skel) if poly_is_subset(image, s)), None
        )
        if owner is None:
            raise ToricError(
                f"retraction image of cell {i} spans several skeleton cells"
            )
        (mg, cg) = gp[owner]
        A, b = retraction_affine(cell)
        grad = (
            mg[0] * A[0][0] + mg[1] * A[1][0],
            mg[0] * A[0][1] + mg[1] * A[1][1],
        )
        const = mg[0] * b[0] + mg[1] * b[1] + cg
        out.append((grad, const))
    return ToricPLFunction(pc, tuple(out))


def skeleton_complex(pc: PolyComplex) -> PolyComplex:
    """The skeleton as a PolyComplex value (cells may be lower-dimensional);
    useful for bundling skeleton functions."""
    obj = PolyComplex.__new__(PolyComplex)
    obj.dim = 2
    obj.cells = tuple(skeleton(pc))
    obj._hps = {}
    return obj


def restrict_to_skeleton(f: ToricPLFunction) -> tuple:
    """Affine data of f on each skeleton cell, in skeleton order."""
    skel = skeleton(f.complex)
    out = []
    for s in skel:
        owner = next(
            i
            for i, c in enumerate(f.complex.cells)
            if poly_is_subset(s, c)
        )
        out.append(f.pieces[owner])
    return tuple(out)


# ---------------------------------------------------------------------------
# Concavity and Monge-Ampere
# ---------------------------------------------------------------------------


def is_concave(h: ToricPLFunction):
    """Facet-local concavity on a complete complex: across every shared
    1-dimensional face of cells i, j the piece of i must dominate h on j.
    Returns (True, None) or (False, witness dict)."""
    cells = h.complex.cells
    for i, j in itertools.combinations(range(len(cells)), 2):
        inter = intersect2(cells[i], cells[j])
        if inter is None or poly_dim(inter) != 1:
            continue
        for a, b in ((i, j), (j, i)):
            (ga, ca), (gb, cb) = h.pieces[a], h.pieces[b]
            dg = (ga[0] - gb[0], ga[1] - gb[1])
            dc = ca - cb
            # need dg.x + dc >= 0 on all of cell b
            for p in cells[b].gen_points:
                if dot(dg, p) + dc < 0:
                    return False, {"facet": (a, b), "point": p}
            p0 = cells[b].gen_points[0]
            base = dot(dg, p0) + dc
            for r in cells[b].gen_rays:
                slope = dot(dg, r)
                if slope < 0:
                    k = rfloor(base / (-slope)) + 1
                    witness = (p0[0] + k * r[0], p0[1] + k * r[1])
                    return False, {"facet": (a, b), "point": witness}
    return True, None


@dataclass(frozen=True)
class ToricAtomicMeasure:
    atoms: tuple  # of (point, mass), masses > 0, points distinct, sorted

    def __init__(self, atoms):
        rows = []
        for pt, m in atoms:
            pt = (rat(pt[0]), rat(pt[1]))
            m = rat(m)
            if m < 0:
                raise ToricError("toric measures have positive masses")
            if m > 0:
                rows.append((pt, m))
        rows.sort()
        if len({p for p, _ in rows}) != len(rows):
            raise ToricError("atom points must be distinct")
        object.__setattr__(self, "atoms", tuple(rows))

    def total_mass(self):
        return sum((m for _, m in self.atoms), start=ZERO)

    def mass_at(self, pt):
        pt = (rat(pt[0]), rat(pt[1]))
        for q, m in self.atoms:
            if q == pt:
                return m
        return ZERO


def toric_ma(h: ToricPLFunction) -> ToricAtomicMeasure:
    """Monge-Ampere measure of a concave PL function whose recession is the
    support function of the lattice polytope P = conv(gradients): the atom
    at a complex vertex is 2 * area of the superdifferential there (the
    polygon spanned by the gradients of the incident cells); total mass is
    2 * area(P) exactly."""
    ok, witness = is_concave(h)
    if not ok:
        raise ToricError(f"function is not concave: {witness}")
    grads = [g for g, _ in h.pieces]
    pvertices = convex_hull_2d(grads)
    for v in pvertices:
        if v[0].denominator != 1 or v[1].denominator != 1:
            raise ToricError(
                "recession is not the support function of a lattice polytope"
            )
    atoms = []
    total = ZERO
    for v in h.complex.vertices():
        incident = [
            h.pieces[i][0]
            for i in range(len(h.complex.cells))
            if v in h.complex.cells[i].gen_points
        ]
        area = hull_area_2d(incident)
        if area > 0:
            atoms.append((v, 2 * area))
            total += 2 * area
    expected = 2 * hull_area_2d(grads)
    if total != expected:
        raise ToricError(
            "superdifferential masses do not add up to 2*area(P); "
            "the recession of h does not match its gradient polytope"
        )
    return ToricAtomicMeasure(tuple(atoms))


# ---------------------------------------------------------------------------
# Refinement and cross-complex comparison
# ---------------------------------------------------------------------------


def refine(a: PolyComplex, b: PolyComplex) -> PolyComplex:
    """Common refinement: all full-dimensional pairwise intersections."""
    cells = []
    for ca in a.cells:
        for cb in b.cells:
            inter = intersect2(ca, cb)
            if inter is not None and poly_dim(inter) == 2:
                cells.append(inter)
    return PolyComplex(tuple(cells))


def refine_function(f: ToricPLFunction, fine: PolyComplex) -> ToricPLFunction:
    """Transport f to a finer complex (each fine cell inside one f-cell)."""
    pieces = []
    for cell in fine.cells:
        owner = next(
            (i for i, c in enumerate(f.complex.cells) if poly_is_subset(cell, c)),
            None,
        )
        if owner is None:
            raise ToricError("target complex does not refine the function's complex")
        pieces.append(f.pieces[owner])
    return ToricPLFunction(fine, tuple(pieces), check=False)


def pl_functions_equal(f: ToricPLFunction, g: ToricPLFunction) -> bool:
    """Exact equality of PL functions on possibly different complexes."""
    if f.complex == g.complex:
        return f.pieces == g.pieces
    common = refine(f.complex, g.complex)
    return refine_function(f, common).pieces == refine_function(g, common).pieces
