"""Measurement spaces: graphs, 2-dimensional scenarios, and their standard families.

A Graph is a 1-dimensional simplicial set (loops and parallel edges allowed);
a Scenario is a 2-dimensional one, stored as triangles with three edge slots.
Slot conventions follow the face maps of the standard 2-simplex: for a
triangle, d2 is the x edge, d0 the y edge, d1 the z edge, and an edge runs
from its d1 vertex to its d0 vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import CollapseError, DisconnectedGraphError, UnsupportedShapeError


@dataclass(frozen=True)
class Edge:
    id: str
    d0: str  # head vertex
    d1: str  # tail vertex

    @property
    def is_loop(self) -> bool:
        return self.d0 == self.d1

    def other(self, vertex: str) -> str:
        if vertex == self.d1:
            return self.d0
        if vertex == self.d0:
            return self.d1
        raise ValueError(f"vertex {vertex!r} is not an endpoint of edge {self.id!r}")


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids")
        vs = set(self.vertices)
        for e in self.edges:
            if e.d0 not in vs or e.d1 not in vs:
                raise ValueError(f"edge {e.id!r} references unknown vertex")

    @cached_property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    @cached_property
    def _by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, edge_id: str) -> Edge:
        return self._by_id[edge_id]

    @cached_property
    def _incidence(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.d1].append(e)
            if not e.is_loop:
                inc[e.d0].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def incident(self, vertex: str) -> tuple[Edge, ...]:
        return self._incidence[vertex]

    def degree(self, vertex: str) -> int:
        return sum(2 if e.is_loop else 1 for e in self._incidence[vertex])

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        out = []
        for root in self.vertices:
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            queue = [root]
            while queue:
                v = queue.pop()
                for e in self.incident(v):
                    w = e.other(v)
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(tuple(sorted(comp, key=self.vertices.index)))
        return out

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


@dataclass(frozen=True)
class Triangle:
    """A 2-simplex; slots hold edge ids. x = d2, y = d0, z = d1."""

    id: str
    d0: str
    d1: str
    d2: str

    @property
    def x(self) -> str:
        return self.d2

    @property
    def y(self) -> str:
        return self.d0

    @property
    def z(self) -> str:
        return self.d1


@dataclass(frozen=True)
class Scenario:
    """2-dimensional measurement space in generators-and-relations form.

    edge_faces records each edge's (d0, d1) vertex pair when known; it is
    bookkeeping for gluing and cone recognition, not needed by the polytope
    layer.  cone_of/apex are set when the scenario was built as a cone.
    """

    edges: tuple[str, ...]
    triangles: tuple[Triangle, ...]
    edge_faces: tuple[tuple[str, str, str], ...] = ()  # (edge, d0 vertex, d1 vertex)
    cone_of: Graph | None = None
    apex: str | None = None

    def __post_init__(self):
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate edge ids")
        tids = [t.id for t in self.triangles]
        if len(set(tids)) != len(tids):
            raise ValueError("duplicate triangle ids")
        known = set(self.edges)
        for t in self.triangles:
            for slot in (t.d0, t.d1, t.d2):
                if slot not in known:
                    raise ValueError(f"triangle {t.id!r} references unknown edge {slot!r}")
        faces = self.faces
        if faces:
            # face relations of the 2-simplex: d0d0 = d0d1, d1d0 = d0d2, d1d1 = d1d2
            for t in self.triangles:
                y, z, x = faces.get(t.y), faces.get(t.z), faces.get(t.x)
                if y is None or z is None or x is None:
                    continue
                if y[0] != z[0] or y[1] != x[0] or z[1] != x[1]:
                    raise ValueError(f"triangle {t.id!r} has inconsistent vertex incidences")

    @cached_property
    def faces(self) -> dict[str, tuple[str, str]]:
        return {e: (a, b) for e, a, b in self.edge_faces}

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return self.edges

    @cached_property
    def _triangle_by_id(self) -> dict[str, Triangle]:
        return {t.id: t for t in self.triangles}

    def triangle(self, triangle_id: str) -> Triangle:
        return self._triangle_by_id[triangle_id]

    @property
    def is_cone(self) -> bool:
        return self.cone_of is not None

    @cached_property
    def cone_edges(self) -> dict[str, str]:
        """Vertex of the base graph -> id of its cone edge."""
        if not self.is_cone:
            return {}
        return {v: f"{self.apex}_{v}" for v in self.cone_of.vertices}

    def cone_edge(self, vertex: str) -> str:
        return self.cone_edges[vertex]

    @cached_property
    def boundary_edge_ids(self) -> tuple[str, ...]:
        """Base-graph edges of a cone scenario."""
        if not self.is_cone:
            raise ValueError("not a cone scenario")
        return self.cone_of.edge_ids


@dataclass(frozen=True)
class CollapseMap:
    """Quotient of a graph by a forest of edges.

    edge_map sends each source edge to its target edge (ids are preserved) or
    to None for a collapsed edge; vertex_map sends each source vertex to its
    union-find representative.
    """

    source: Graph
    target: Graph
    edge_map: tuple[tuple[str, str | None], ...]
    vertex_map: tuple[tuple[str, str], ...]

    @cached_property
    def edge_images(self) -> dict[str, str | None]:
        return dict(self.edge_map)

    @cached_property
    def vertex_images(self) -> dict[str, str]:
        return dict(self.vertex_map)

    @cached_property
    def collapsed_edges(self) -> tuple[str, ...]:
        return tuple(e for e, img in self.edge_map if img is None)


@dataclass(frozen=True)
class ClassicalDisk:
    """Fan-triangulated disk: boundary circle plus interior edges.

    `boundary` lists the boundary edges in cyclic order; `interior` lists the
    interior edges in elimination order, from the terminal triangle back to
    the initial one.
    """

    scenario: Scenario
    boundary: tuple[str, ...]
    interior: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @cached_property
    def initial_triangle(self) -> Triangle:
        return self.scenario.triangles[0]

    @cached_property
    def terminal_triangle(self) -> Triangle:
        return self.scenario.triangles[-1]

    @cached_property
    def boundary_graph(self) -> Graph:
        faces = self.scenario.faces
        vertices: list[str] = []
        for e in self.boundary:
            for v in faces[e]:
                if v not in vertices:
                    vertices.append(v)
        return Graph(tuple(vertices), tuple(Edge(e, *faces[e]) for e in self.boundary))


# ---------------------------------------------------------------------------
# standard families


def circle(n: int) -> Graph:
    """Cyclic graph with n edges; circle(1) is a single loop."""
    if n < 1:
        raise ValueError("circle size must be >= 1")
    vertices = tuple(f"v{i}" for i in range(n)) if n > 1 else ("v0",)
    edges = []
    for i in range(1, n + 1):
        tail = f"v{i - 1}"
        head = f"v{i}" if i < n else "v0"
        edges.append(Edge(f"t{i}", head, tail))
    return Graph(vertices, tuple(edges))


def line(n: int) -> Graph:
    """Path with n edges."""
    if n < 1:
        raise ValueError("line size must be >= 1")
    vertices = tuple(f"u{i}" for i in range(n + 1))
    edges = tuple(Edge(f"e{i}", f"u{i}", f"u{i - 1}") for i in range(1, n + 1))
    return Graph(vertices, edges)


def wedge_circles(n: int) -> Graph:
    """n loops sharing a single vertex."""
    if n < 1:
        raise ValueError("wedge size must be >= 1")
    return Graph(("v0",), tuple(Edge(f"t{i}", "v0", "v0") for i in range(1, n + 1)))


def flower(*sizes: int) -> Graph:
    """k lines glued at both terminal vertices v and w."""
    if len(sizes) < 2:
        raise ValueError("flower needs at least 2 petals")
    if any(s < 1 for s in sizes):
        raise ValueError("petal sizes must be >= 1")
    vertices = ["v", "w"]
    edges = []
    for i, size in enumerate(sizes, start=1):
        inner = [f"u{i}_{j}" for j in range(1, size)]
        vertices.extend(inner)
        chain = ["v", *inner, "w"]
        for j in range(size):
            edges.append(Edge(f"e{i}_{j + 1}", chain[j + 1], chain[j]))
    return Graph(tuple(vertices), tuple(edges))


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with parts v0..v{m-1} and w0..w{n-1}."""
    if m < 1 or n < 1:
        raise ValueError("bipartite part sizes must be >= 1")
    vertices = tuple(f"v{i}" for i in range(m)) + tuple(f"w{j}" for j in range(n))
    sep = "" if m <= 10 and n <= 10 else "_"
    edges = tuple(
        Edge(f"t{i}{sep}{j}", f"v{i}", f"w{j}") for i in range(m) for j in range(n)
    )
    return Graph(vertices, edges)


def _fresh_apex(g: Graph) -> str:
    apex = "c"
    taken = set(g.vertices)
    edge_ids = set(g.edge_ids)
    while apex in taken or any(f"{apex}_{v}" in edge_ids for v in g.vertices):
        apex += "'"
    return apex


def cone(g: Graph) -> Scenario:
    """Cone scenario: one apex, one cone edge per vertex, one triangle per edge.

    The triangle over an edge t has slots d0 = t, d1 = (apex, d0 t),
    d2 = (apex, d1 t); for a loop the last two slots coincide.
    """
    apex = _fresh_apex(g)
    cone_edge = {v: f"{apex}_{v}" for v in g.vertices}
    edges = g.edge_ids + tuple(cone_edge[v] for v in g.vertices)
    triangles = tuple(
        Triangle(f"s_{e.id}", d0=e.id, d1=cone_edge[e.d0], d2=cone_edge[e.d1])
        for e in g.edges
    )
    faces = [(e.id, e.d0, e.d1) for e in g.edges]
    faces += [(cone_edge[v], v, apex) for v in g.vertices]
    return Scenario(edges, triangles, tuple(faces), cone_of=g, apex=apex)


def classical_disk(n: int, prefix: str = "") -> ClassicalDisk:
    """Canonical fan triangulation of the disk with an n-circle boundary.

    Triangle s_i spans vertices (u0, u_i, u_{i+1}); interior edge z_j joins u0
    to u_{j+1}.  s_1 is the initial triangle and s_{n-2} the terminal one,
    each carrying two boundary edges.
    """
    if n < 3:
        raise ValueError("classical disk needs n >= 3")
    p = prefix
    vertices = tuple(f"{p}u{i}" for i in range(n))
    boundary = []
    for i in range(1, n):
        boundary.append(Edge(f"{p}t{i}", f"{p}u{i}", f"{p}u{i - 1}"))
    boundary.append(Edge(f"{p}t{n}", f"{p}u{n - 1}", f"{p}u0"))
    interior = tuple(Edge(f"{p}z{j}", f"{p}u{j + 1}", f"{p}u0") for j in range(1, n - 2))
    triangles = []
    for i in range(1, n - 1):
        x = f"{p}t1" if i == 1 else f"{p}z{i - 1}"
        y = f"{p}t{i + 1}"
        z = f"{p}t{n}" if i == n - 2 else f"{p}z{i}"
        triangles.append(Triangle(f"{p}s{i}", d0=y, d1=z, d2=x))
    edges = tuple(e.id for e in boundary) + tuple(e.id for e in interior)
    faces = tuple((e.id, e.d0, e.d1) for e in (*boundary, *interior))
    scenario = Scenario(edges, tuple(triangles), faces)
    elimination = tuple(f"{p}z{j}" for j in range(n - 3, 0, -1))
    return ClassicalDisk(scenario, tuple(e.id for e in boundary), elimination)


# ---------------------------------------------------------------------------
# quotients and graph invariants


def collapse(g: Graph, edges_to_collapse) -> CollapseMap:
    """Collapse a forest of edges; endpoints merge to the smallest vertex id."""
    to_collapse = set(edges_to_collapse)
    unknown = to_collapse - set(g.edge_ids)
    if unknown:
        raise CollapseError(f"unknown edges: {sorted(unknown)}")

    parent = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in sorted(to_collapse):
        e = g.edge(eid)
        if e.is_loop:
            raise CollapseError(f"cannot collapse loop {eid!r}")
        a, b = find(e.d0), find(e.d1)
        if a == b:
            raise CollapseError(f"edges {sorted(to_collapse)} span a circle (at {eid!r})")
        root, child = (a, b) if a < b else (b, a)
        parent[child] = root

    vertex_map = {v: find(v) for v in g.vertices}
    reps = []
    for v in g.vertices:
        r = vertex_map[v]
        if r not in reps:
            reps.append(r)
    new_edges = tuple(
        Edge(e.id, vertex_map[e.d0], vertex_map[e.d1])
        for e in g.edges
        if e.id not in to_collapse
    )
    target = Graph(tuple(reps), new_edges)
    edge_map = tuple(
        (e.id, None if e.id in to_collapse else e.id) for e in g.edges
    )
    return CollapseMap(g, target, edge_map, tuple(vertex_map.items()))


def identity_collapse(g: Graph) -> CollapseMap:
    return collapse(g, ())


def spanning_tree(g: Graph) -> tuple[str, ...]:
    """Edge ids of a BFS spanning tree (loops never enter the tree)."""
    if not g.vertices:
        return ()
    comps = g.components()
    if len(comps) > 1:
        raise DisconnectedGraphError(comps)
    tree = []
    seen = {g.vertices[0]}
    queue = [g.vertices[0]]
    while queue:
        v = queue.pop(0)
        for e in g.incident(v):
            w = e.other(v)
            if w not in seen:
                seen.add(w)
                tree.append(e.id)
                queue.append(w)
    return tuple(tree)


def cycle_rank(g: Graph) -> int:
    """First Betti number: |edges| - |vertices| + #components."""
    return len(g.edges) - len(g.vertices) + len(g.components())


def enumerate_circles(g: Graph) -> tuple[tuple[str, ...], ...]:
    """All simple circles as cyclic edge sequences.

    Loops are circles of length 1 and parallel pairs circles of length 2;
    each circle is reported once up to rotation and reflection, and the list
    is sorted by the canonical edge sequence.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    found: set[frozenset[str]] = set()

    def search(start: str, current: str, used: list[str], visited: set[str]):
        for e in sorted(g.incident(current), key=lambda e: e.id):
            if e.id in used:
                continue
            if e.is_loop:
                if not used and current == start:
                    found.add(frozenset([e.id]))
                continue
            nxt = e.other(current)
            if nxt == start:
                if used:
                    found.add(frozenset([*used, e.id]))
            elif nxt not in visited and order[nxt] > order[start]:
                used.append(e.id)
                visited.add(nxt)
                search(start, nxt, used, visited)
                visited.remove(nxt)
                used.pop()

    for start in g.vertices:
        search(start, start, [], {start})

    circles = sorted(_ordered_circle(g, c) for c in found)
    return tuple(circles)


def _ordered_circle(g: Graph, edge_set: frozenset[str]) -> tuple[str, ...]:
    """Canonical cyclic edge sequence: starts at the smallest id, lex-min direction."""
    if len(edge_set) == 1:
        return (next(iter(edge_set)),)
    first = min(edge_set)
    e0 = g.edge(first)
    best = None
    for head in (e0.d0, e0.d1):
        seq = [first]
        vertex = head
        while len(seq) < len(edge_set):
            nxt = next(
                e
                for e in sorted(g.incident(vertex), key=lambda e: e.id)
                if e.id in edge_set and e.id != seq[-1]
            )
            seq.append(nxt.id)
            vertex = nxt.other(vertex)
        cand = tuple(seq)
        if best is None or cand < best:
            best = cand
    return best


def is_circle_graph(g: Graph) -> bool:
    """True iff g is a single circle (including the 1-circle loop)."""
    if not g.vertices or not g.is_connected:
        return False
    if len(g.edges) != len(g.vertices):
        return False
    return all(g.degree(v) == 2 for v in g.vertices)


def flower_petals(g: Graph) -> tuple[tuple[str, ...], ...] | None:
    """Decompose g into the petal paths of a flower, or None.

    A flower has exactly two vertices v, w of degree k >= 3 joined by k
    internally disjoint paths covering the whole graph.
    """
    if not g.is_connected or not g.vertices:
        return None
    hubs = [v for v in g.vertices if g.degree(v) != 2]
    if len(hubs) != 2:
        return None
    v, w = hubs
    if g.degree(v) != g.degree(w) or g.degree(v) < 3:
        return None
    if any(e.is_loop for e in g.edges):
        return None
    petals = []
    covered: set[str] = set()
    for e in sorted(g.incident(v), key=lambda e: e.id):
        if e.id in covered:
            return None
        path = [e.id]
        vertex = e.other(v)
        prev = e.id
        while vertex not in (v, w):
            nxt = [x for x in g.incident(vertex) if x.id != prev]
            if len(nxt) != 1:
                return None
            prev = nxt[0].id
            path.append(prev)
            vertex = nxt[0].other(vertex)
        if vertex == v:
            return None
        covered.update(path)
        petals.append(tuple(path))
    if len(covered) != len(g.edges):
        return None
    return tuple(petals)


def subgraph(g: Graph, edge_ids) -> Graph:
    """Subgraph spanned by the given edges (in g's edge order)."""
    wanted = set(edge_ids)
    edges = tuple(e for e in g.edges if e.id in wanted)
    missing = wanted - {e.id for e in edges}
    if missing:
        raise ValueError(f"unknown edges: {sorted(missing)}")
    vertices = []
    for e in edges:
        for x in (e.d1, e.d0):
            if x not in vertices:
                vertices.append(x)
    return Graph(tuple(vertices), edges)
