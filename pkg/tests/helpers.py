"""Shared generators for the test suite (random but seeded)."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from twistdist import cohomology as coh
from twistdist.dist import (TwistedDistribution, deterministic_subcomplex, face_outcome,
                            phi_inverse, table_index)
from twistdist.polytope import enumerate_vertices
from twistdist.scomplex import SimplicialSubset, builtin, quotient

FAMILIES = [("cycle", 3), ("cycle", 4), ("cycle", 5), ("cycle", 6), ("tetrahedron", None),
            ("mermin_torus", None), ("delta2", None)]


@lru_cache(maxsize=None)
def complex_of(kind: str, n: int | None):
    return builtin(kind, n)


def random_beta(X, rng: random.Random) -> dict[str, int]:
    return {t: rng.randint(0, 1) for t in X.triangles}


def _vertices(X, beta):
    key = (id(X), tuple(sorted(beta.items())))
    if key not in _VERTEX_CACHE:
        _VERTEX_CACHE[key] = (X, enumerate_vertices(X, beta))
    return _VERTEX_CACHE[key][1]


_VERTEX_CACHE: dict = {}


def mixture(X, beta, verts, rng: random.Random) -> TwistedDistribution:
    w = [Fraction(rng.randint(1, 9)) for _ in verts]
    total = sum(w)
    tabs = {t: [sum((wi * v.tables[t][k] for wi, v in zip(w, verts)), Fraction(0)) / total
                for k in range(4)] for t in X.triangles}
    return TwistedDistribution.make(X, beta, tabs)


def forced_zeros(p: TwistedDistribution, edges) -> set[tuple[str, int]]:
    """Outcome rows that vanish once ``edges`` carry p's deterministic values."""
    X, out = p.X, set()
    for e in edges:
        o = p.edge_outcome(e)
        for t in X.cofaces(e):
            for i, f in enumerate(X.faces(t)):
                if f == e:
                    out |= {(t, table_index(a, b)) for a in (0, 1) for b in (0, 1)
                            if face_outcome(i, a, b, p.beta[t]) != o}
    return out


def face_sample(X, beta, rng: random.Random) -> TwistedDistribution:
    """Mix the vertices of the face fixed by part of a random vertex's deterministic edges."""
    verts = _vertices(X, beta)
    v = rng.choice(verts)
    zp = sorted(deterministic_subcomplex(v).edges)
    T = forced_zeros(v, rng.sample(zp, rng.randint(0, len(zp))))
    pool = [u for u in verts if all(u.tables[t][k] == 0 for t, k in T)]
    if rng.random() < 0.3:
        pool = rng.sample(pool, rng.randint(1, len(pool)))
    return mixture(X, beta, pool, rng)


def lift_instance(X, beta, rng: random.Random):
    """A random (q, s, pbar): Z collapsed by q, s with ds = beta on Z, pbar generic on X/Z."""
    edges = [e for e in X.nondegenerate_edges if rng.random() < 0.25]
    edges += [e for e in X.nondegenerate_edges if len(X.cofaces(e)) == 1 and e not in edges]
    for t in X.triangles:  # every triangle needs a collapsed face to keep a zero outcome
        if not any(f in edges for f in X.triangles[t]):
            edges.append(rng.choice(X.boundary(t)))
    tris = [t for t in X.triangles if all(X.is_degenerate(f) or f in edges for f in X.triangles[t])]
    Z = SimplicialSubset.generated(X, edges, tris)
    for _ in range(16):
        s = {e: rng.randint(0, 1) for e in sorted(Z.edges)}
        ds = coh.coboundary1(X, coh.extend_by_zero(X, s))
        if all(ds[t] == beta[t] for t in Z.triangles):
            break
    else:
        return None
    q = quotient(X, Z)
    zeta = coh.zeta(q, s, beta)
    beta_bar = coh.add({q.triangle_map[t]: beta[t] for t in X.triangles
                        if q.triangle_map[t] is not None}, zeta)
    verts = enumerate_vertices(q.target, beta_bar)
    if not verts:
        return None
    return q, s, mixture(q.target, beta_bar, verts, rng)


def lift_sample(X, beta, rng: random.Random) -> TwistedDistribution | None:
    """phi^{-1} of a generic point of the quotient polytope, for a random Z and s."""
    inst = lift_instance(X, beta, rng)
    if inst is None:
        return None
    q, s, pbar = inst
    return phi_inverse(q, s, beta, pbar)


def random_distribution(rng: random.Random) -> TwistedDistribution:
    while True:
        kind, n = rng.choice(FAMILIES)
        X = complex_of(kind, n)
        beta = coh.normalize2(X, {next(iter(X.triangles)): rng.randint(0, 1)})
        p = face_sample(X, beta, rng) if rng.random() < 0.5 else lift_sample(X, beta, rng)
        if p is not None:
            return p
