"""Vertex counts of the builtin complexes, with and without a twist.

    python3 scripts/vertex_census.py
"""

from twistdist import cohomology as coh
from twistdist.dist import is_point_mass
from twistdist.polytope import enumerate_vertices, rank_of
from twistdist.scomplex import builtin

CASES = [("cycle", 3), ("cycle", 4), ("cycle", 5), ("tetrahedron", None), ("mermin_torus", None),
         ("delta2", None), ("glued_triangle", None), ("collapsed_triangle", None),
         ("glued_collapsed_triangle", None), ("disk", 3)]


def census(kind, n):
    X = builtin(kind, n)
    first = next(iter(X.triangles))
    for label, beta in (("0", {}), ("one", {first: 1})):
        verts = enumerate_vertices(X, beta)
        det = sum(all(is_point_mass(t) for t in v.tables.values()) for v in verts)
        shapes: dict[tuple[int, int], int] = {}
        for v in verts:
            zp = rank_of(v).zp
            key = (len(zp.edges), len(zp.triangles))
            shapes[key] = shapes.get(key, 0) + 1
        cls = "trivial" if coh.is_trivial(X, beta) else "nontrivial"
        name = kind if n is None else f"{kind}({n})"
        print(f"{name:28} beta={label:4} [{cls:10}] {len(verts):4} vertices, {det:3} deterministic, "
              f"Z_p shapes (edges, triangles) {dict(sorted(shapes.items()))}")


if __name__ == "__main__":
    for kind, n in CASES:
        census(kind, n)
