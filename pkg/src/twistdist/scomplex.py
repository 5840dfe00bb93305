"""Finite 2-dimensional simplicial sets, simplicial subsets and quotients.

A triangle stores its faces as ``(d0, d1, d2)``.  With vertex order
``v0 < v1 < v2`` these are the edges ``v1->v2``, ``v0->v2`` and ``v0->v1``.
Every vertex carries exactly one degenerate edge ``s0(v)``; these are stored
explicitly because degenerate faces change the distribution constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

BASEPOINT = "*"


class ComplexError(ValueError):
    """Base class for structural errors in simplicial sets."""


class UnresolvedReference(ComplexError):
    pass


class NotFaceClosed(ComplexError):
    pass


class InvalidParameter(ComplexError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # IdentityViolation | BoundaryShapeViolation | UngeneratedEdge
    simplex: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}({self.simplex}): {self.detail}"


class InvalidComplex(ComplexError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Edge:
    src: str
    tgt: str
    degenerate: bool = False


@dataclass(frozen=True)
class SimplicialSet2:
    vertices: tuple[str, ...]
    edges: dict[str, Edge]
    triangles: dict[str, tuple[str, str, str]]
    name: str = "X"
    _degen: dict[str, str] = field(default=None, init=False, repr=False, compare=False)
    _cofaces: dict[str, tuple[str, ...]] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        degen = {e.src: eid for eid, e in self.edges.items() if e.degenerate}
        cof: dict[str, list[str]] = {e: [] for e in self.edges}
        for t, faces in self.triangles.items():
            for e in dict.fromkeys(faces):
                if e in cof:
                    cof[e].append(t)
        object.__setattr__(self, "_degen", degen)
        object.__setattr__(self, "_cofaces", {e: tuple(ts) for e, ts in cof.items()})

    # -- basic queries -----------------------------------------------------

    @property
    def nondegenerate_edges(self) -> tuple[str, ...]:
        return tuple(e for e, d in self.edges.items() if not d.degenerate)

    @property
    def triangle_ids(self) -> tuple[str, ...]:
        return tuple(self.triangles)

    def is_degenerate(self, edge: str) -> bool:
        return self.edges[edge].degenerate

    def degenerate_edge(self, vertex: str) -> str:
        return self._degen[vertex]

    def faces(self, triangle: str) -> tuple[str, str, str]:
        return self.triangles[triangle]

    def boundary(self, triangle: str) -> tuple[str, ...]:
        """Distinct non-degenerate faces of a triangle, in face order."""
        return tuple(
            e for e in dict.fromkeys(self.triangles[triangle]) if not self.is_degenerate(e)
        )

    def cofaces(self, edge: str) -> tuple[str, ...]:
        """Triangles having ``edge`` as a face."""
        return self._cofaces[edge]

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.nondegenerate_edges) + len(self.triangles)

    def is_standard(self) -> bool:
        """Every triangle has three distinct non-degenerate faces, or two and a degenerate one."""
        return not [v for v in violations(self) if v.kind == "BoundaryShapeViolation"]

    def subset(self, edges: Iterable[str] = (), triangles: Iterable[str] = (),
               vertices: Iterable[str] = ()) -> "SimplicialSubset":
        return SimplicialSubset.generated(self, edges, triangles, vertices)


def violations(X: SimplicialSet2, strict: bool = True) -> list[Violation]:
    """All violated invariants; boundary-shape checks only when ``strict``."""
    out: list[Violation] = []
    vset = set(X.vertices)
    seen_degen: dict[str, str] = {}
    for eid, e in X.edges.items():
        if e.src not in vset or e.tgt not in vset:
            out.append(Violation("IdentityViolation", eid, "endpoint is not a vertex"))
        if e.degenerate:
            if e.src != e.tgt:
                out.append(Violation("IdentityViolation", eid, "degenerate edge with source != target"))
            if e.src in seen_degen:
                out.append(Violation("IdentityViolation", eid,
                                     f"second degenerate edge at {e.src} (also {seen_degen[e.src]})"))
            seen_degen[e.src] = eid
    for v in X.vertices:
        if v not in seen_degen:
            out.append(Violation("IdentityViolation", v, "vertex without degenerate edge"))
    for t, (f0, f1, f2) in X.triangles.items():
        missing = [f for f in (f0, f1, f2) if f not in X.edges]
        if missing:
            out.append(Violation("IdentityViolation", t, f"unknown face(s) {missing}"))
            continue
        e0, e1, e2 = X.edges[f0], X.edges[f1], X.edges[f2]
        if e2.tgt != e0.src:
            out.append(Violation("IdentityViolation", t, "target(d2) != source(d0)"))
        if e2.src != e1.src:
            out.append(Violation("IdentityViolation", t, "source(d2) != source(d1)"))
        if e0.tgt != e1.tgt:
            out.append(Violation("IdentityViolation", t, "target(d0) != target(d1)"))
        if strict:
            nondeg = [f for f in (f0, f1, f2) if not X.is_degenerate(f)]
            if len(set(nondeg)) != len(nondeg):
                out.append(Violation("BoundaryShapeViolation", t, "repeated non-degenerate face"))
            elif len(nondeg) < 2:
                out.append(Violation("BoundaryShapeViolation", t,
                                     f"{3 - len(nondeg)} degenerate faces"))
    for e in X.nondegenerate_edges:
        if not X.cofaces(e):
            out.append(Violation("UngeneratedEdge", e, "edge is not a face of any triangle"))
    return out


def validate(X: SimplicialSet2, strict: bool = True) -> SimplicialSet2:
    bad = violations(X, strict)
    if bad:
        raise InvalidComplex(bad)
    return X


@dataclass(frozen=True)
class SimplicialSubset:
    """A face-closed subset; ``edges`` holds non-degenerate edges only."""

    parent: SimplicialSet2 = field(repr=False, compare=False)
    vertices: frozenset[str]
    edges: frozenset[str]
    triangles: frozenset[str]

    @classmethod
    def generated(cls, X: SimplicialSet2, edges: Iterable[str] = (),
                  triangles: Iterable[str] = (), vertices: Iterable[str] = ()) -> "SimplicialSubset":
        tri = set(triangles)
        eds = set(edges)
        for t in tri:
            if t not in X.triangles:
                raise UnresolvedReference(f"unknown triangle {t}")
            eds.update(X.triangles[t])
        verts = set(vertices)
        for e in eds:
            if e not in X.edges:
                raise UnresolvedReference(f"unknown edge {e}")
            verts.update((X.edges[e].src, X.edges[e].tgt))
        eds = {e for e in eds if not X.is_degenerate(e)}
        return cls(X, frozenset(verts), frozenset(eds), frozenset(tri))

    def is_face_closed(self) -> bool:
        X = self.parent
        for t in self.triangles:
            for f in X.triangles[t]:
                if not X.is_degenerate(f) and f not in self.edges:
                    return False
                if X.edges[f].src not in self.vertices:
                    return False
        return all(
            X.edges[e].src in self.vertices and X.edges[e].tgt in self.vertices for e in self.edges
        )

    def union(self, other: "SimplicialSubset") -> "SimplicialSubset":
        return SimplicialSubset(self.parent, self.vertices | other.vertices,
                                self.edges | other.edges, self.triangles | other.triangles)

    def is_empty(self) -> bool:
        return not self.vertices


@dataclass(frozen=True)
class QuotientMap:
    source: SimplicialSet2
    collapsed: SimplicialSubset
    target: SimplicialSet2
    vertex_map: dict[str, str]
    edge_map: dict[str, str]
    triangle_map: dict[str, str | None]  # None: the triangle became degenerate

    def image(self, Z: SimplicialSubset) -> SimplicialSubset:
        edges = [self.edge_map[e] for e in Z.edges]
        tris = [self.triangle_map[t] for t in Z.triangles if self.triangle_map[t] is not None]
        return SimplicialSubset.generated(
            self.target, edges, tris, [self.vertex_map[v] for v in Z.vertices]
        )


def _fresh_basepoint(X: SimplicialSet2, Z: SimplicialSubset) -> str:
    name = BASEPOINT
    while name in X.vertices and name not in Z.vertices:
        name += "'"
    return name


def quotient(X: SimplicialSet2, Z: SimplicialSubset) -> QuotientMap:
    """Collapse ``Z`` to a single basepoint."""
    if not Z.is_face_closed():
        raise NotFaceClosed("subset is not closed under faces")
    if Z.is_empty():
        return QuotientMap(X, Z, X, {v: v for v in X.vertices}, {e: e for e in X.edges},
                           {t: t for t in X.triangles})
    base = _fresh_basepoint(X, Z)
    vmap = {v: (base if v in Z.vertices else v) for v in X.vertices}
    vertices = tuple(dict.fromkeys(vmap[v] for v in X.vertices))
    base_degen = X.degenerate_edge(base) if base in X.vertices else "s0_" + base
    emap: dict[str, str] = {}
    edges: dict[str, Edge] = {}
    for eid, e in X.edges.items():
        if e.degenerate and e.src in Z.vertices or eid in Z.edges:
            emap[eid] = base_degen
            edges.setdefault(base_degen, Edge(base, base, True))
        else:
            emap[eid] = eid
            edges[eid] = Edge(vmap[e.src], vmap[e.tgt], e.degenerate)
    tmap: dict[str, str | None] = {}
    triangles = {}
    for t, faces in X.triangles.items():
        if t in Z.triangles:
            tmap[t] = None
        else:
            tmap[t] = t
            triangles[t] = tuple(emap[f] for f in faces)
    target = SimplicialSet2(vertices, edges, triangles, name=f"{X.name}/Z")
    validate(target, strict=False)
    return QuotientMap(X, Z, target, vmap, emap, tmap)


def dimension(X: SimplicialSet2) -> int:
    """|X1°| minus the number of degenerate faces summed over triangles."""
    lost = sum(
        len({f for f in X.triangles[t] if X.is_degenerate(f)}) for t in X.triangles
    )
    return len(X.nondegenerate_edges) - lost


# -- construction --------------------------------------------------------


class _UnionFind:
    def __init__(self):
        self.parent: dict[str, str] = {}

    def add(self, x: str) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: str, b: str, order: dict[str, int]) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # the earliest declared id stays the representative
        if order[rb] < order[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class ComplexBuilder:
    """Declare vertices, edges and triangles, then glue and collapse.

    Gluings identify edges (and hence their endpoints); collapsing an edge
    makes it the degenerate edge of its merged endpoint.  ``build`` resolves
    everything by union-find, keeping the first-declared id of each class.
    """

    def __init__(self, name: str = "X"):
        self.name = name
        self._vertices: dict[str, int] = {}
        self._edges: dict[str, tuple[str, str, bool]] = {}
        self._triangles: dict[str, tuple[str, str, str]] = {}
        self._glues: list[tuple[str, int, str, int]] = []
        self._collapses: list[str] = []

    def vertex(self, *ids: str) -> "ComplexBuilder":
        for v in ids:
            if v in self._vertices:
                raise ComplexError(f"duplicate vertex {v}")
            self._vertices[v] = len(self._vertices)
        return self

    def _need_vertex(self, v: str) -> None:
        if v not in self._vertices:
            raise UnresolvedReference(f"undeclared vertex {v}")

    def _new_edge(self, eid: str, data: tuple[str, str, bool]) -> None:
        if eid in self._edges:
            raise ComplexError(f"duplicate edge {eid}")
        self._edges[eid] = data

    def edge(self, eid: str, src: str, tgt: str) -> "ComplexBuilder":
        self._need_vertex(src)
        self._need_vertex(tgt)
        self._new_edge(eid, (src, tgt, False))
        return self

    def collapsed_edge(self, eid: str, vertex: str) -> "ComplexBuilder":
        self._need_vertex(vertex)
        self._new_edge(eid, (vertex, vertex, True))
        return self

    def triangle(self, tid: str, d0: str, d1: str, d2: str) -> "ComplexBuilder":
        for e in (d0, d1, d2):
            if e not in self._edges:
                raise UnresolvedReference(f"triangle {tid} references undeclared edge {e}")
        if tid in self._triangles:
            raise ComplexError(f"duplicate triangle {tid}")
        self._triangles[tid] = (d0, d1, d2)
        return self

    def glue(self, t1: str, i: int, t2: str, j: int) -> "ComplexBuilder":
        for t in (t1, t2):
            if t not in self._triangles:
                raise UnresolvedReference(f"glue references undeclared triangle {t}")
        if i not in (0, 1, 2) or j not in (0, 1, 2):
            raise ComplexError("face index must be 0, 1 or 2")
        self._glues.append((t1, i, t2, j))
        return self

    def collapse(self, eid: str) -> "ComplexBuilder":
        if eid not in self._edges:
            raise UnresolvedReference(f"collapse references undeclared edge {eid}")
        self._collapses.append(eid)
        return self

    def build(self, strict: bool = False) -> SimplicialSet2:
        vorder = dict(self._vertices)
        eorder = {e: k for k, e in enumerate(self._edges)}
        vuf, euf = _UnionFind(), _UnionFind()
        for v in vorder:
            vuf.add(v)
        for e in eorder:
            euf.add(e)
        degenerate = {e for e, (_, _, d) in self._edges.items() if d}
        degenerate.update(self._collapses)
        for t1, i, t2, j in self._glues:
            euf.union(self._triangles[t1][i], self._triangles[t2][j], eorder)

        changed = True
        while changed:
            changed = False
            for e, (src, tgt, _) in self._edges.items():
                r = euf.find(e)
                rs, rt, _ = self._edges[r]
                changed |= vuf.union(src, rs, vorder)
                changed |= vuf.union(tgt, rt, vorder)
            degen_classes = {euf.find(e) for e in degenerate}
            at_vertex: dict[str, str] = {}
            for r in sorted(degen_classes, key=eorder.get):
                src, tgt, _ = self._edges[r]
                changed |= vuf.union(src, tgt, vorder)
                v = vuf.find(src)
                if v in at_vertex:
                    changed |= euf.union(at_vertex[v], r, eorder)
                else:
                    at_vertex[v] = r

        vertices = tuple(v for v in vorder if vuf.find(v) == v)
        degen_classes = {euf.find(e) for e in degenerate}
        edges: dict[str, Edge] = {}
        for e, (src, tgt, _) in self._edges.items():
            if euf.find(e) != e:
                continue
            edges[e] = Edge(vuf.find(src), vuf.find(tgt), e in degen_classes)
        have = {ed.src for ed in edges.values() if ed.degenerate}
        for v in vertices:
            if v not in have:
                eid = "s0_" + v
                if eid in edges:
                    raise ComplexError(f"edge id {eid} is reserved for the degenerate edge at {v}")
                edges[eid] = Edge(v, v, True)
        triangles = {
            t: tuple(euf.find(f) for f in faces) for t, faces in self._triangles.items()
        }
        X = SimplicialSet2(vertices, edges, triangles, name=self.name)
        return validate(X, strict=strict)


# -- built-in scenarios ----------------------------------------------------


def delta2() -> SimplicialSet2:
    b = ComplexBuilder("delta2").vertex("0", "1", "2")
    b.edge("x", "0", "1").edge("y", "1", "2").edge("z", "0", "2")
    b.triangle("s", "y", "z", "x")
    return b.build(strict=True)


def glued_triangle(collapse_y: bool = False) -> SimplicialSet2:
    """The triangle with faces x = d2 and z = d1 identified, optionally y collapsed."""
    b = ComplexBuilder("delta2_xz_y" if collapse_y else "delta2_xz").vertex("0", "1", "2")
    b.edge("x", "0", "1").edge("y", "1", "2").edge("z", "0", "2")
    b.triangle("s", "y", "z", "x").glue("s", 2, "s", 1)
    if collapse_y:
        b.collapse("y")
    return b.build()


def collapsed_triangle(face: int = 0) -> SimplicialSet2:
    """The triangle with one face collapsed to a point."""
    b = ComplexBuilder(f"delta2_c{face}").vertex("0", "1", "2")
    b.edge("x", "0", "1").edge("y", "1", "2").edge("z", "0", "2")
    b.triangle("s", "y", "z", "x").collapse(("y", "z", "x")[face])
    return b.build(strict=True)


def disk(n: int) -> SimplicialSet2:
    """A fan of ``n`` triangles around a centre vertex (a disk)."""
    if n < 1:
        raise InvalidParameter("disk needs N >= 1")
    b = ComplexBuilder(f"disk{n}")
    b.vertex(*[f"v{k}" for k in range(n + 1)], "c")
    for k in range(n + 1):
        b.edge(f"e{k}", f"v{k}", "c")
    for k in range(1, n + 1):
        b.edge(f"x{k}", f"v{k - 1}", f"v{k}")
        b.triangle(f"s{k}", f"e{k}", f"e{k - 1}", f"x{k}")
    return b.build(strict=True)


def cycle(n: int) -> SimplicialSet2:
    """The N-cycle scenario: ``n`` triangles around a centre, boundary x1..xN."""
    if n < 2:
        raise InvalidParameter("cycle needs N >= 2")
    b = ComplexBuilder(f"cycle{n}")
    b.vertex(*[f"v{k}" for k in range(1, n + 1)], "c")
    for k in range(1, n + 1):
        b.edge(f"x{k}", f"v{k}", f"v{k % n + 1}")
    for k in range(1, n + 1):
        b.edge(f"e{k}", f"v{k}", "c")
    for k in range(1, n + 1):
        b.triangle(f"s{k}", f"e{k % n + 1}", f"e{k}", f"x{k}")
    return b.build(strict=True)


def boundary_edges(X: SimplicialSet2) -> tuple[str, ...]:
    """Non-degenerate edges lying in exactly one triangle."""
    return tuple(e for e in X.nondegenerate_edges if len(X.cofaces(e)) == 1)


def tetrahedron() -> SimplicialSet2:
    b = ComplexBuilder("tetrahedron").vertex("0", "1", "2", "3")
    for i in range(4):
        for j in range(i + 1, 4):
            b.edge(f"e{i}{j}", str(i), str(j))
    for omit in range(4):
        i, j, k = (v for v in range(4) if v != omit)
        b.triangle(f"t{i}{j}{k}", f"e{j}{k}", f"e{i}{k}", f"e{i}{j}")
    return b.build(strict=True)


# Mermin square realized as a torus: observables m<r><c>, rows r0..r2 and
# columns c0..c2 are the six triangles, faces listed as (d0, d1, d2).
_MERMIN_EDGES = {
    "m00": ("R", "P"), "m01": ("R", "P"), "m02": ("R", "R"),
    "m10": ("R", "P"), "m11": ("Q", "P"), "m12": ("Q", "R"),
    "m20": ("R", "R"), "m21": ("Q", "R"), "m22": ("Q", "R"),
}


def mermin_torus() -> SimplicialSet2:
    b = ComplexBuilder("mermin_torus").vertex("P", "Q", "R")
    for e, (s, t) in _MERMIN_EDGES.items():
        b.edge(e, s, t)
    for r in range(3):
        b.triangle(f"r{r}", f"m{r}0", f"m{r}1", f"m{r}2")
    for c in range(3):
        b.triangle(f"c{c}", f"m0{c}", f"m1{c}", f"m2{c}")
    return b.build(strict=True)


BUILTINS = {
    "delta2": lambda n=None: delta2(),
    "disk": lambda n=4: disk(n),
    "cycle": lambda n=4: cycle(n),
    "tetrahedron": lambda n=None: tetrahedron(),
    "mermin_torus": lambda n=None: mermin_torus(),
    "glued_triangle": lambda n=None: glued_triangle(False),
    "glued_collapsed_triangle": lambda n=None: glued_triangle(True),
    "collapsed_triangle": lambda n=0: collapsed_triangle(n),
}


def builtin(kind: str, n: int | None = None) -> SimplicialSet2:
    try:
        make = BUILTINS[kind]
    except KeyError:
        raise InvalidParameter(f"unknown builtin {kind!r}; choose from {sorted(BUILTINS)}")
    return make() if n is None else make(n)
