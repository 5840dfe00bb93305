"""Z/2 cochains on 2-dimensional simplicial sets.

Cochains are plain dicts.  A 1-cochain maps non-degenerate edges to 0/1
(degenerate edges are implicitly 0); a 2-cochain maps the generating
triangles to 0/1.  Every normalized 2-cochain counts as a cocycle since
there are no non-degenerate 3-simplices.
"""

from __future__ import annotations

from typing import Mapping

from .linalg import GF2System
from .scomplex import QuotientMap, SimplicialSet2

Cochain1 = dict[str, int]
Cochain2 = dict[str, int]


class RestrictionNotTrivialized(ValueError):
    pass


def zero1(X: SimplicialSet2) -> Cochain1:
    return {e: 0 for e in X.nondegenerate_edges}


def zero2(X: SimplicialSet2) -> Cochain2:
    return {t: 0 for t in X.triangles}


def normalize1(X: SimplicialSet2, s: Mapping[str, int]) -> Cochain1:
    """Restrict to non-degenerate edges; unknown keys are an error."""
    for e, v in s.items():
        if e not in X.edges:
            raise KeyError(f"unknown edge {e}")
        if X.is_degenerate(e) and v % 2:
            raise ValueError(f"1-cochain is not normalized at degenerate edge {e}")
    return {e: s.get(e, 0) % 2 for e in X.nondegenerate_edges}


def normalize2(X: SimplicialSet2, beta: Mapping[str, int] | None) -> Cochain2:
    beta = beta or {}
    for t in beta:
        if t not in X.triangles:
            raise KeyError(f"unknown triangle {t}")
    return {t: beta.get(t, 0) % 2 for t in X.triangles}


def add(a: Mapping[str, int], b: Mapping[str, int]) -> dict[str, int]:
    return {k: (a.get(k, 0) + b.get(k, 0)) % 2 for k in dict.fromkeys([*a, *b])}


def _value(X: SimplicialSet2, s: Mapping[str, int], e: str) -> int:
    return 0 if X.is_degenerate(e) else s.get(e, 0)


def coboundary0(X: SimplicialSet2, u: Mapping[str, int]) -> Cochain1:
    """(du)(x) = u(source) + u(target)."""
    return {e: (u.get(X.edges[e].src, 0) + u.get(X.edges[e].tgt, 0)) % 2
            for e in X.nondegenerate_edges}


def coboundary1(X: SimplicialSet2, s: Mapping[str, int]) -> Cochain2:
    """(ds)(t) = s(d0 t) + s(d1 t) + s(d2 t) mod 2."""
    return {t: sum(_value(X, s, f) for f in faces) % 2 for t, faces in X.triangles.items()}


def _coboundary_rows(X: SimplicialSet2, cols: tuple[str, ...]) -> list[int]:
    index = {e: j for j, e in enumerate(cols)}
    rows = []
    for faces in X.triangles.values():
        row = 0
        for f in faces:
            if f in index:
                row ^= 1 << index[f]
        rows.append(row)
    return rows


def solve_system(X: SimplicialSet2, beta: Mapping[str, int]) -> tuple[GF2System, tuple[str, ...]]:
    cols = X.nondegenerate_edges
    rows = _coboundary_rows(X, cols)
    rhs = [beta.get(t, 0) % 2 for t in X.triangles]
    return GF2System(rows, rhs, len(cols)), cols


def _decode(cols: tuple[str, ...], x: int) -> Cochain1:
    return {e: x >> j & 1 for j, e in enumerate(cols)}


def trivialize(X: SimplicialSet2, beta: Mapping[str, int]) -> Cochain1 | None:
    """A normalized s with ds = beta, or None when [beta] != 0."""
    system, cols = solve_system(X, beta)
    x = system.particular()
    return None if x is None else _decode(cols, x)


def is_trivial(X: SimplicialSet2, beta: Mapping[str, int]) -> bool:
    return trivialize(X, beta) is not None


def class_equal(X: SimplicialSet2, beta1: Mapping[str, int], beta2: Mapping[str, int]) -> bool:
    return is_trivial(X, add(beta1, beta2))


def h2_dimension(X: SimplicialSet2) -> int:
    system, _ = solve_system(X, {})
    return len(X.triangles) - system.rank


def cycle_class(X: SimplicialSet2, beta: Mapping[str, int]) -> int:
    """Sum of beta over all triangles mod 2.

    On a closed surface this is the class of beta; for the N-cycle it is the
    class of beta pushed to the sphere obtained by collapsing the boundary.
    """
    return sum(beta.get(t, 0) for t in X.triangles) % 2


def extend_by_zero(X: SimplicialSet2, s: Mapping[str, int]) -> Cochain1:
    return {e: s.get(e, 0) % 2 for e in X.nondegenerate_edges}


def zeta(q: QuotientMap, s: Mapping[str, int], beta: Mapping[str, int] | None = None) -> Cochain2:
    """Connecting cocycle: extend ``s`` by zero, take d, descend to the quotient.

    With ``beta`` given, ``s`` only has to satisfy ds = beta on the collapsed
    triangles (instead of ds = 0).
    """
    beta = beta or {}
    X = q.source
    unknown = [e for e in s if e not in q.collapsed.edges and s[e] % 2]
    if unknown:
        raise ValueError(f"cochain is nonzero outside the collapsed subset: {unknown}")
    ds = coboundary1(X, extend_by_zero(X, s))
    bad = [t for t in q.collapsed.triangles if ds[t] != beta.get(t, 0) % 2]
    if bad:
        raise RestrictionNotTrivialized(f"d(s~) does not vanish on collapsed triangles {bad}")
    return {q.triangle_map[t]: v for t, v in ds.items() if q.triangle_map[t] is not None}
