"""Metrized graphs, piecewise linear functions, and retractions.

A metrized graph is a finite connected multigraph with positive rational
edge lengths and positive integer edge weights (multiplicities).  Loops and
parallel edges are allowed.  Points are either vertices or interior points
of an edge, addressed by (edge index, offset); offsets 0 and length
canonicalize to the endpoints, so point equality is unambiguous.

PL functions carry rational vertex values plus per-edge interior
breakpoints and are linear between consecutive samples; every slope is
rational by construction.  Subdivision returns the refined graph together
with a two-way point/function/measure transfer map, so data never has to be
re-derived after refining.

Retraction onto a subgraph collapses hanging trees to their attachment
points; it is only defined when every complement component is a tree meeting
the subgraph in exactly one point, and validation enforces that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rat import Rat, rat, rat_str

ZERO = Rat(0)


class GraphError(Exception):
    pass


class RetractionError(GraphError):
    pass


@dataclass(frozen=True)
class GraphPoint:
    """A point of the geometric realization: ('v', index, 0) at a vertex or
    ('e', edge, offset) strictly inside an edge.  Build via MetrizedGraph
    .point / .vertex_point so canonicalization is guaranteed."""

    kind: str
    index: int
    offset: object = ZERO

    def is_vertex(self) -> bool:
        return self.kind == "v"

    def sort_key(self):
        return (0 if self.kind == "v" else 1, self.index, self.offset)


@dataclass(frozen=True)
class MetrizedGraph:
    labels: tuple
    edges: tuple  # of (a, b, length, weight) with vertex indices a, b

    def __init__(self, labels, edges):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels) or not labels:
            raise GraphError("vertex labels must be nonempty and unique")
        rows = []
        for a, b, length, weight in edges:
            a, b = int(a), int(b)
            if not (0 <= a < len(labels) and 0 <= b < len(labels)):
                raise GraphError("edge endpoint out of range")
            length = rat(length)
            if length <= 0:
                raise GraphError("edge lengths must be positive")
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise GraphError("edge weights must be positive integers")
            rows.append((a, b, length, int(weight)))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", tuple(rows))
        if not self._connected():
            raise GraphError("graph must be connected")

    def _connected(self) -> bool:
        n = len(self.labels)
        seen = {0}
        stack = [0]
        adj = [[] for _ in range(n)]
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def edge_length(self, e: int):
        return self.edges[e][2]

    def vertex_point(self, v: int) -> GraphPoint:
        if not 0 <= v < self.n_vertices:
            raise GraphError("vertex index out of range")
        return GraphPoint("v", v)

    def point(self, e: int, offset) -> GraphPoint:
        a, b, length, _ = self.edges[e]
        offset = rat(offset)
        if offset < 0 or offset > length:
            raise GraphError(f"offset {rat_str(offset)} outside edge of length {rat_str(length)}")
        if offset == 0:
            return GraphPoint("v", a)
        if offset == length:
            return GraphPoint("v", b)
        return GraphPoint("e", e, offset)

    def incident(self, v: int):
        """(edge index, end) pairs with end 0 for the a-side, 1 for the
        b-side; a loop at v yields both ends."""
        out = []
        for e, (a, b, _, _) in enumerate(self.edges):
            if a == v:
                out.append((e, 0))
            if b == v:
                out.append((e, 1))
        return out


# ---------------------------------------------------------------------------
# PL functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise linear function: values at vertices, plus sorted
    strictly interior (offset, value) breakpoints per edge."""

    graph: MetrizedGraph
    vertex_values: tuple
    breaks: tuple  # per edge: tuple of (offset, value)

    def __init__(self, graph, vertex_values, breaks=None):
        vertex_values = tuple(rat(x) for x in vertex_values)
        if len(vertex_values) != graph.n_vertices:
            raise GraphError("one value per vertex required")
        if breaks is None:
            breaks = tuple(() for _ in graph.edges)
        norm = []
        for e, seq in enumerate(breaks):
            length = graph.edge_length(e)
            row = tuple((rat(t), rat(v)) for t, v in seq)
            for t, _ in row:
                if not (0 < t < length):
                    raise GraphError("breakpoints must be strictly interior")
            offs = [t for t, _ in row]
            if sorted(set(offs)) != offs:
                raise GraphError("breakpoint offsets must strictly increase")
            norm.append(row)
        if len(norm) != len(graph.edges):
            raise GraphError("one breakpoint sequence per edge required")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "vertex_values", vertex_values)
        object.__setattr__(self, "breaks", tuple(norm))

    def samples(self, e: int):
        """All (offset, value) samples on edge e including both endpoints."""
        a, b, length, _ = self.graph.edges[e]
        return (
            (ZERO, self.vertex_values[a]),
            *self.breaks[e],
            (length, self.vertex_values[b]),
        )

    def value_at(self, pt: GraphPoint):
        if pt.is_vertex():
            return self.vertex_values[pt.index]
        t = pt.offset
        samples = self.samples(pt.index)
        for (t0, v0), (t1, v1) in zip(samples, samples[1:]):
            if t0 <= t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        raise GraphError("point outside edge")  # pragma: no cover

    def breakpoints(self):
        out = []
        for e, row in enumerate(self.breaks):
            out.extend(GraphPoint("e", e, t) for t, _ in row)
        return out

    def directional_slopes(self, pt: GraphPoint):
        """Outgoing slopes at pt: list of (edge, tag, weight, slope) where
        tag identifies the direction.  Covers loops (two directions) and
        interior breakpoints (left/right)."""
        g = self.graph
        out = []
        if pt.is_vertex():
            v = pt.index
            for e, end in g.incident(v):
                samples = self.samples(e)
                w = g.edges[e][3]
                if end == 0:
                    (t0, v0), (t1, v1) = samples[0], samples[1]
                    out.append((e, "from_a", w, (v1 - v0) / (t1 - t0)))
                else:
                    (t0, v0), (t1, v1) = samples[-2], samples[-1]
                    out.append((e, "from_b", w, (v0 - v1) / (t1 - t0)))
        else:
            e, t = pt.index, pt.offset
            samples = self.samples(e)
            w = g.edges[e][3]
            vt = self.value_at(pt)
            left = max(((t0, v0) for t0, v0 in samples if t0 < t), key=lambda s: s[0])
            right = min(((t1, v1) for t1, v1 in samples if t1 > t), key=lambda s: s[0])
            out.append((e, "left", w, (left[1] - vt) / (t - left[0])))
            out.append((e, "right", w, (right[1] - vt) / (right[0] - t)))
        return out

    # -- arithmetic -----------------------------------------------------

    def _merge(self, other, op):
        g = self.graph
        if other.graph != g:
            raise GraphError("PL functions live on different graphs")
        vv = tuple(op(a, b) for a, b in zip(self.vertex_values, other.vertex_values))
        breaks = []
        for e in range(len(g.edges)):
            offs = sorted(
                {t for t, _ in self.breaks[e]} | {t for t, _ in other.breaks[e]}
            )
            row = tuple(
                (t, op(self.value_at(GraphPoint("e", e, t)), other.value_at(GraphPoint("e", e, t))))
                for t in offs
            )
            breaks.append(row)
        return PLFunction(g, vv, tuple(breaks)).prune()

    def __add__(self, other):
        return self._merge(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._merge(other, lambda a, b: a - b)

    def scale(self, t):
        t = rat(t)
        return PLFunction(
            self.graph,
            tuple(t * v for v in self.vertex_values),
            tuple(tuple((o, t * v) for o, v in row) for row in self.breaks),
        )

    def add_const(self, c):
        c = rat(c)
        return PLFunction(
            self.graph,
            tuple(v + c for v in self.vertex_values),
            tuple(tuple((o, v + c) for o, v in row) for row in self.breaks),
        )

    def prune(self):
        """Drop breakpoints where the two adjacent segments are collinear.
        Collinearity is checked against the last kept sample, so runs of
        redundant points collapse in one pass."""
        breaks = []
        for e in range(len(self.graph.edges)):
            samples = list(self.samples(e))
            keep = []
            prev = samples[0]
            for i in range(1, len(samples) - 1):
                t0, v0 = prev
                t1, v1 = samples[i]
                t2, v2 = samples[i + 1]
                if (v1 - v0) * (t2 - t1) != (v2 - v1) * (t1 - t0):
                    keep.append((t1, v1))
                    prev = (t1, v1)
            breaks.append(tuple(keep))
        return PLFunction(self.graph, self.vertex_values, tuple(breaks))


def pl_max(f: PLFunction, g: PLFunction) -> PLFunction:
    """Pointwise max, with exact breakpoints at crossing offsets."""
    gr = f.graph
    if g.graph != gr:
        raise GraphError("PL functions live on different graphs")
    vv = tuple(max(a, b) for a, b in zip(f.vertex_values, g.vertex_values))
    breaks = []
    for e in range(len(gr.edges)):
        offs = sorted({t for t, _ in f.breaks[e]} | {t for t, _ in g.breaks[e]})
        length = gr.edge_length(e)
        grid = [ZERO] + offs + [length]
        row = []
        for t0, t1 in zip(grid, grid[1:]):
            f0 = f.value_at(gr.point(e, t0))
            f1 = f.value_at(gr.point(e, t1))
            g0 = g.value_at(gr.point(e, t0))
            g1 = g.value_at(gr.point(e, t1))
            # crossing of the two affine pieces inside (t0, t1)?
            d0, d1 = f0 - g0, f1 - g1
            if d0 * d1 < 0:
                tc = t0 + (t1 - t0) * d0 / (d0 - d1)
                vc = f0 + (f1 - f0) * (tc - t0) / (t1 - t0)
                row.append((tc, vc))
            if t1 != length:
                row.append((t1, max(f1, g1)))
        breaks.append(tuple(row))
    return PLFunction(gr, vv, tuple(breaks)).prune()


def pl_equal(f: PLFunction, g: PLFunction) -> bool:
    if f.graph != g.graph:
        return False
    diff = f - g
    if any(v != 0 for v in diff.vertex_values):
        return False
    return all(not row or all(v == 0 for _, v in row) for row in diff.breaks)


# ---------------------------------------------------------------------------
# Curvature and measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvatureData:
    """A vertex-supported divisor-like weight: rational degree per vertex.
    Nef at graph level means the total degree is >= 0."""

    graph: MetrizedGraph
    degrees: tuple

    def __init__(self, graph, degrees):
        degrees = tuple(rat(x) for x in degrees)
        if len(degrees) != graph.n_vertices:
            raise GraphError("one degree per vertex required")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "degrees", degrees)

    def total(self):
        return sum(self.degrees, start=ZERO)

    def is_nef(self) -> bool:
        return self.total() >= 0

    def degree_at(self, pt: GraphPoint):
        return self.degrees[pt.index] if pt.is_vertex() else ZERO


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely supported rational measure; zero-mass atoms are dropped on
    construction so support is canonical."""

    graph: MetrizedGraph
    atoms: tuple  # sorted tuple of (GraphPoint, mass), masses nonzero

    def __init__(self, graph, atoms):
        if isinstance(atoms, dict):
            atoms = atoms.items()
        norm = {}
        for pt, mass in atoms:
            mass = rat(mass)
            if not isinstance(pt, GraphPoint):
                raise GraphError("atoms must be keyed by GraphPoint")
            if mass != 0:
                norm[pt] = norm.get(pt, ZERO) + mass
        rows = tuple(
            (pt, m) for pt, m in sorted(norm.items(), key=lambda kv: kv[0].sort_key()) if m != 0
        )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "atoms", rows)

    def total_mass(self):
        return sum((m for _, m in self.atoms), start=ZERO)

    def mass_at(self, pt: GraphPoint):
        for q, m in self.atoms:
            if q == pt:
                return m
        return ZERO

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for _, m in self.atoms)

    def __add__(self, other):
        if other.graph != self.graph:
            raise GraphError("measures live on different graphs")
        merged = dict(self.atoms)
        for pt, m in other.atoms:
            merged[pt] = merged.get(pt, ZERO) + m
        return AtomicMeasure(self.graph, merged)

    def scale(self, t):
        t = rat(t)
        return AtomicMeasure(self.graph, {pt: t * m for pt, m in self.atoms})


def total_mass(measure: AtomicMeasure):
    return measure.total_mass()


# ---------------------------------------------------------------------------
# Subdivision
# ---------------------------------------------------------------------------


@dataclass
class SubdivisionMap:
    """Two-way transfer between a graph and its subdivision."""

    old: MetrizedGraph
    new: MetrizedGraph
    cut_vertex: dict = field(default_factory=dict)  # (edge, offset) -> new v
    edge_pieces: dict = field(default_factory=dict)  # edge -> [(new_e, t0, t1)]

    def point(self, pt: GraphPoint) -> GraphPoint:
        if pt.is_vertex():
            return GraphPoint("v", pt.index)
        e, t = pt.index, pt.offset
        if (e, t) in self.cut_vertex:
            return GraphPoint("v", self.cut_vertex[(e, t)])
        for ne, t0, t1 in self.edge_pieces[e]:
            if t0 < t < t1:
                return self.new.point(ne, t - t0)
        raise GraphError("point not found in subdivision")  # pragma: no cover

    def point_back(self, pt: GraphPoint) -> GraphPoint:
        if pt.is_vertex():
            if pt.index < self.old.n_vertices:
                return GraphPoint("v", pt.index)
            for (e, t), v in self.cut_vertex.items():
                if v == pt.index:
                    return self.old.point(e, t)
            raise GraphError("unknown subdivision vertex")  # pragma: no cover
        ne = pt.index
        for e, pieces in self.edge_pieces.items():
            for ne2, t0, t1 in pieces:
                if ne2 == ne:
                    return self.old.point(e, t0 + pt.offset)
        raise GraphError("unknown subdivision edge")  # pragma: no cover

    def plf(self, f: PLFunction) -> PLFunction:
        vv = list(f.vertex_values) + [ZERO] * (self.new.n_vertices - self.old.n_vertices)
        for (e, t), v in self.cut_vertex.items():
            vv[v] = f.value_at(self.old.point(e, t))
        breaks = [() for _ in self.new.edges]
        for e, pieces in self.edge_pieces.items():
            for ne, t0, t1 in pieces:
                row = [
                    (t - t0, val) for t, val in f.breaks[e] if t0 < t < t1
                ]
                breaks[ne] = tuple(row)
        return PLFunction(self.new, tuple(vv), tuple(breaks))

    def plf_back(self, f: PLFunction) -> PLFunction:
        """Transfer a PL function on the subdivision back; subdivision
        vertices become breakpoints (collinear ones pruned)."""
        vv = tuple(f.vertex_values[: self.old.n_vertices])
        breaks = []
        for e in range(len(self.old.edges)):
            row = []
            for ne, t0, t1 in self.edge_pieces[e]:
                if t0 != 0:
                    row.append((t0, f.vertex_values[self.cut_vertex[(e, t0)]]))
                row.extend((t0 + t, val) for t, val in f.breaks[ne])
            breaks.append(tuple(row))
        return PLFunction(self.old, vv, tuple(breaks)).prune()

    def curvature(self, theta: CurvatureData) -> CurvatureData:
        degs = list(theta.degrees) + [ZERO] * (
            self.new.n_vertices - self.old.n_vertices
        )
        return CurvatureData(self.new, tuple(degs))

    def measure(self, mu: AtomicMeasure) -> AtomicMeasure:
        return AtomicMeasure(self.new, {self.point(pt): m for pt, m in mu.atoms})

    def measure_back(self, mu: AtomicMeasure) -> AtomicMeasure:
        return AtomicMeasure(self.old, {self.point_back(pt): m for pt, m in mu.atoms})


def subdivide(g: MetrizedGraph, points) -> tuple[MetrizedGraph, SubdivisionMap]:
    """Insert the given points as vertices.  Vertex points are ignored, so
    subdividing at existing vertices is the identity refinement."""
    cuts = {}
    for pt in points:
        if not isinstance(pt, GraphPoint):
            raise GraphError("subdivide expects GraphPoints")
        if pt.is_vertex():
            continue
        cuts.setdefault(pt.index, set()).add(pt.offset)
    labels = list(g.labels)
    used = set(labels)
    edges = []
    cut_vertex = {}
    edge_pieces = {}
    counter = 0
    for e, (a, b, length, w) in enumerate(g.edges):
        offs = sorted(cuts.get(e, ()))
        prev_v, prev_t = a, ZERO
        pieces = []
        for t in offs:
            while f"s{counter}" in used:
                counter += 1
            name = f"s{counter}"
            used.add(name)
            labels.append(name)
            nv = len(labels) - 1
            cut_vertex[(e, t)] = nv
            pieces.append((len(edges), prev_t, t))
            edges.append((prev_v, nv, t - prev_t, w))
            prev_v, prev_t = nv, t
        pieces.append((len(edges), prev_t, length))
        edges.append((prev_v, b, length - prev_t, w))
        edge_pieces[e] = pieces
    new = MetrizedGraph(tuple(labels), tuple(edges))
    return new, SubdivisionMap(old=g, new=new, cut_vertex=cut_vertex, edge_pieces=edge_pieces)


# ---------------------------------------------------------------------------
# Subgraphs and retraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset
    edges: frozenset

    def __init__(self, vertices, edges):
        object.__setattr__(self, "vertices", frozenset(int(v) for v in vertices))
        object.__setattr__(self, "edges", frozenset(int(e) for e in edges))


def _validate_subgraph(g: MetrizedGraph, sub: Subgraph):
    if not sub.vertices:
        raise RetractionError("subgraph needs at least one vertex")
    if any(not 0 <= v < g.n_vertices for v in sub.vertices):
        raise RetractionError("subgraph vertex out of range")
    for e in sub.edges:
        if not 0 <= e < len(g.edges):
            raise RetractionError("subgraph edge out of range")
        a, b, _, _ = g.edges[e]
        if a not in sub.vertices or b not in sub.vertices:
            raise RetractionError("subgraph edge endpoints must be subgraph vertices")
    # induced connectivity
    seen = {min(sub.vertices)}
    stack = [min(sub.vertices)]
    while stack:
        v = stack.pop()
        for e in sub.edges:
            a, b, _, _ = g.edges[e]
            for x, y in ((a, b), (b, a)):
                if x == v and y in sub.vertices and y not in seen:
                    seen.add(y)
                    stack.append(y)
    if seen != sub.vertices:
        raise RetractionError("subgraph must be connected")


def complement_components(g: MetrizedGraph, sub: Subgraph) -> list:
    """Components of (graph minus subgraph): each is (edges, vertices,
    attachments) with attachments the subgraph vertices its edges touch.
    Raises unless every component is a tree attached at exactly one point."""
    _validate_subgraph(g, sub)
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for v in range(g.n_vertices):
        if v not in sub.vertices:
            parent[("v", v)] = ("v", v)
    for e in range(len(g.edges)):
        if e not in sub.edges:
            parent[("e", e)] = ("e", e)
    for e in range(len(g.edges)):
        if e in sub.edges:
            continue
        a, b, _, _ = g.edges[e]
        if a not in sub.vertices:
            union(("e", e), ("v", a))
        if b not in sub.vertices:
            union(("e", e), ("v", b))
    groups = {}
    for key in parent:
        groups.setdefault(find(key), []).append(key)
    comps = []
    for members in groups.values():
        edges = sorted(i for k, i in members if k == "e")
        verts = sorted(i for k, i in members if k == "v")
        if not edges and not verts:
            continue
        attach = set()
        for e in edges:
            a, b, _, _ = g.edges[e]
            for x in (a, b):
                if x in sub.vertices:
                    attach.add(x)
        if not edges:
            # an isolated non-subgraph vertex cannot happen in a connected
            # graph whose subgraph edges stay inside the subgraph
            raise RetractionError("complement component with no edges")
        if len(attach) != 1:
            raise RetractionError(
                f"complement component touches the subgraph at {len(attach)} points, need exactly 1"
            )
        if len(edges) != len(verts):
            raise RetractionError("complement component is not a tree")
        comps.append((tuple(edges), tuple(verts), attach.pop()))
    return comps


def retract_point(g: MetrizedGraph, sub: Subgraph, x: GraphPoint) -> GraphPoint:
    """Retraction onto the subgraph: identity on it, each hanging tree
    collapses to its attachment vertex."""
    comps = complement_components(g, sub)
    if x.is_vertex():
        if x.index in sub.vertices:
            return x
        for edges, verts, attach in comps:
            if x.index in verts:
                return GraphPoint("v", attach)
    else:
        if x.index in sub.edges:
            return x
        for edges, verts, attach in comps:
            if x.index in edges:
                return GraphPoint("v", attach)
    raise RetractionError("point not located")  # pragma: no cover


@dataclass
class SubgraphEmbedding:
    """The subgraph as a metrized graph in its own right, with index maps."""

    big: MetrizedGraph
    sub: Subgraph
    graph: MetrizedGraph
    vertex_to_sub: dict
    edge_to_sub: dict

    def restrict(self, f: PLFunction) -> PLFunction:
        vv = [ZERO] * self.graph.n_vertices
        for v, sv in self.vertex_to_sub.items():
            vv[sv] = f.vertex_values[v]
        breaks = [() for _ in self.graph.edges]
        for e, se in self.edge_to_sub.items():
            breaks[se] = f.breaks[e]
        return PLFunction(self.graph, tuple(vv), tuple(breaks))


def subgraph_graph(g: MetrizedGraph, sub: Subgraph) -> SubgraphEmbedding:
    _validate_subgraph(g, sub)
    verts = sorted(sub.vertices)
    vmap = {v: i for i, v in enumerate(verts)}
    labels = tuple(g.labels[v] for v in verts)
    edges = []
    emap = {}
    for e in sorted(sub.edges):
        a, b, length, w = g.edges[e]
        emap[e] = len(edges)
        edges.append((vmap[a], vmap[b], length, w))
    return SubgraphEmbedding(
        big=g,
        sub=sub,
        graph=MetrizedGraph(labels, tuple(edges)),
        vertex_to_sub=vmap,
        edge_to_sub=emap,
    )


def compose_retraction(
    g: MetrizedGraph, sub: Subgraph, f_on_sub: PLFunction
) -> PLFunction:
    """F composed with the retraction: equals F on the subgraph and is
    constant (the attachment value) on every hanging tree."""
    emb = subgraph_graph(g, sub)
    if f_on_sub.graph != emb.graph:
        raise RetractionError("function does not live on this subgraph")
    comps = complement_components(g, sub)
    vv = [None] * g.n_vertices
    for v, sv in emb.vertex_to_sub.items():
        vv[v] = f_on_sub.vertex_values[sv]
    for edges, verts, attach in comps:
        aval = f_on_sub.vertex_values[emb.vertex_to_sub[attach]]
        for v in verts:
            vv[v] = aval
    breaks = [() for _ in g.edges]
    for e, se in emb.edge_to_sub.items():
        breaks[e] = f_on_sub.breaks[se]
    return PLFunction(g, tuple(vv), tuple(breaks))
