import pytest

from twistdist.polytope import affine_dimension, enumerate_vertices
from twistdist.scomplex import (ComplexBuilder, Edge, InvalidComplex, InvalidParameter, NotFaceClosed,
                                SimplicialSet2, SimplicialSubset, UnresolvedReference, boundary_edges,
                                builtin, collapsed_triangle, cycle, delta2, dimension, disk,
                                glued_triangle, mermin_torus, quotient, tetrahedron, validate, violations)


def kinds(X, strict=True):
    return {v.kind for v in violations(X, strict)}


def test_delta2_is_valid():
    X = validate(delta2())
    assert X.triangles["s"] == ("y", "z", "x")
    assert len(X.edges) == 6  # three plus one degenerate edge per vertex


def test_repeated_face_is_a_boundary_shape_violation():
    b = ComplexBuilder().vertex("0", "1")
    b.edge("x", "0", "1").edge("w", "1", "1").edge("u", "0", "1")
    b.triangle("s", "w", "u", "x")
    X = b.build()
    bad = SimplicialSet2(X.vertices, X.edges, {"s": ("x", "u", "x")})
    assert "BoundaryShapeViolation" in kinds(bad) or "IdentityViolation" in kinds(bad)
    # d0 = d2 = x needs x to be a loop; a loop makes the identities hold
    b = ComplexBuilder().vertex("0").edge("x", "0", "0").edge("z", "0", "0")
    b.triangle("s", "x", "z", "x")
    with pytest.raises(InvalidComplex) as err:
        b.build(strict=True)
    assert {v.kind for v in err.value.violations} == {"BoundaryShapeViolation"}
    assert b.build(strict=False).triangles["s"] == ("x", "z", "x")


def test_identity_violation():
    X = delta2()
    bad = SimplicialSet2(X.vertices, X.edges, {"s": ("z", "y", "x")})
    assert "IdentityViolation" in kinds(bad)


def test_degenerate_edge_must_be_a_loop():
    X = delta2()
    edges = dict(X.edges)
    edges["s0_0"] = Edge("0", "1", True)
    assert "IdentityViolation" in kinds(SimplicialSet2(X.vertices, edges, X.triangles))


def test_ungenerated_edge_is_reported():
    b = ComplexBuilder().vertex("0", "1", "2")
    b.edge("x", "0", "1").edge("y", "1", "2").edge("z", "0", "2").edge("w", "0", "2")
    b.triangle("s", "y", "z", "x")
    with pytest.raises(InvalidComplex):
        b.build()


@pytest.mark.parametrize("make, verts, edges, tris, chi", [
    (lambda: cycle(4), 5, 8, 4, 1),
    (lambda: disk(4), 6, 9, 4, 1),
    (tetrahedron, 4, 6, 4, 2),
    (mermin_torus, 3, 9, 6, 0),
])
def test_builtin_counts(make, verts, edges, tris, chi):
    X = make()
    assert (len(X.vertices), len(X.nondegenerate_edges), len(X.triangles)) == (verts, edges, tris)
    assert X.euler_characteristic() == chi
    assert X.is_standard()


def test_closed_surfaces_have_every_edge_in_two_triangles():
    for X in (tetrahedron(), mermin_torus()):
        assert all(len(X.cofaces(e)) == 2 for e in X.nondegenerate_edges)
        assert boundary_edges(X) == ()


def vertex_links(X):
    """Link graph of each vertex: nodes are edge ends, arcs are triangle corners."""
    links = {v: [] for v in X.vertices}
    for t, (d0, d1, d2) in X.triangles.items():
        e = X.edges
        corners = [(e[d2].src, (d2, 0), (d1, 0)),
                   (e[d2].tgt, (d2, 1), (d0, 0)),
                   (e[d0].tgt, (d0, 1), (d1, 1))]
        for v, u, w in corners:
            links[v].append((u, w))
    return links


def test_surfaces_have_circle_links():
    for X in (tetrahedron(), mermin_torus()):
        for v, arcs in vertex_links(X).items():
            nodes = {n for arc in arcs for n in arc}
            degree = {n: sum(arc.count(n) for arc in arcs) for n in nodes}
            assert set(degree.values()) == {2}
            seen, stack = set(), [next(iter(nodes))]
            while stack:
                n = stack.pop()
                if n not in seen:
                    seen.add(n)
                    stack += [m for arc in arcs if n in arc for m in arc]
            assert seen == nodes, f"link of {v} in {X.name} is not connected"


def test_builtin_errors():
    with pytest.raises(InvalidParameter):
        cycle(1)
    with pytest.raises(InvalidParameter):
        builtin("sphere")
    assert builtin("cycle", 5).name == "cycle5"


def test_builder_unresolved_reference():
    b = ComplexBuilder().vertex("0", "1")
    with pytest.raises(UnresolvedReference):
        b.edge("x", "0", "2")
    b.edge("x", "0", "1")
    with pytest.raises(UnresolvedReference):
        b.triangle("s", "x", "x", "q")


def test_glue_and_collapse():
    X = glued_triangle()
    assert X.triangles["s"] == ("y", "x", "x")
    assert not X.is_standard()
    Y = glued_triangle(collapse_y=True)
    assert Y.is_degenerate(Y.triangles["s"][0])
    assert len(Y.vertices) == 2  # 1 and 2 merge when y collapses


def test_quotient_by_cycle_boundary():
    X = cycle(4)
    q = quotient(X, SimplicialSubset.generated(X, boundary_edges(X)))
    Xb = q.target
    assert len(Xb.triangles) == 4
    for t in Xb.triangles:
        assert len(Xb.boundary(t)) == 2
        assert all(f.startswith("e") for f in Xb.boundary(t))
    assert Xb.vertices == ("*", "c")


def test_empty_quotient_is_identity():
    X = tetrahedron()
    q = quotient(X, SimplicialSubset.generated(X))
    assert q.target == X


def test_collapse_one_edge_of_delta2():
    X = delta2()
    Xb = quotient(X, SimplicialSubset.generated(X, ["y"])).target
    assert set(Xb.boundary("s")) == {"x", "z"}


def test_not_face_closed():
    X = delta2()
    Z = SimplicialSubset(X, frozenset(), frozenset({"x"}), frozenset())
    with pytest.raises(NotFaceClosed):
        quotient(X, Z)


def test_generated_subset_is_face_closed():
    X = tetrahedron()
    Z = SimplicialSubset.generated(X, triangles=["t012"])
    assert Z.is_face_closed()
    assert Z.edges == {"e01", "e02", "e12"}
    assert Z.vertices == {"0", "1", "2"}


def test_dimension_examples():
    assert dimension(cycle(4)) == 8
    assert dimension(tetrahedron()) == 6
    # collapsing y leaves the columns x, z and one degenerate face: 2 - 1
    assert dimension(collapsed_triangle(0)) == 1


@pytest.mark.parametrize("X", [delta2(), cycle(3), cycle(4), disk(3), tetrahedron(), mermin_torus(),
                               collapsed_triangle(0), collapsed_triangle(1), collapsed_triangle(2)],
                         ids=lambda X: X.name)
def test_dimension_matches_enumerated_vertices(X):
    assert affine_dimension(enumerate_vertices(X)) == dimension(X)
