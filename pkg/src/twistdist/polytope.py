"""The polytope of twisted distributions in correlation coordinates.

Coordinates are c(x) for the non-degenerate edges x; degenerate faces are
folded into the right-hand side with c = 1.  Row (t, ab) says p_t^{ab} >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from . import cohomology as coh
from .dist import (OUTCOMES, TwistedDistribution, deterministic_subcomplex, face_sign,
                   from_correlations, correlations, table_index)
from .linalg import affine_solutions, rational_rank
from .scomplex import SimplicialSet2, SimplicialSubset


class DimensionTooLarge(ValueError):
    code = "DimensionTooLarge"


@dataclass(frozen=True)
class HPolytope:
    """``{c : matrix . c >= rhs}`` with one row per (triangle, outcome)."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, int], ...]  # (triangle, outcome index 2a+b)
    matrix: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    def values(self, c: Mapping[str, Fraction]) -> list[Fraction]:
        """Slack ``row . c - rhs`` of every row; equals 4 p_t^{ab}."""
        vec = [Fraction(c[x]) for x in self.columns]
        return [sum((a * v for a, v in zip(row, vec)), Fraction(0)) - r
                for row, r in zip(self.matrix, self.rhs)]

    def contains(self, c: Mapping[str, Fraction]) -> bool:
        return all(v >= 0 for v in self.values(c))

    def equalities(self) -> list[int]:
        """Indices of rows whose negation is also a row (implicit equalities)."""
        seen = {}
        for i, (row, r) in enumerate(zip(self.matrix, self.rhs)):
            seen.setdefault((row, r), i)
        out = []
        for i, (row, r) in enumerate(zip(self.matrix, self.rhs)):
            j = seen.get((tuple(-a for a in row), -r))
            if j is not None and i < j:
                out.append(i)
        return out


def build_M(X: SimplicialSet2, beta: Mapping[str, int] | None) -> HPolytope:
    beta = coh.normalize2(X, beta)
    cols = X.nondegenerate_edges
    index = {x: j for j, x in enumerate(cols)}
    rows, matrix, rhs = [], [], []
    for t, faces in X.triangles.items():
        for a, b in OUTCOMES:
            row = [0] * len(cols)
            const = 1
            for i, f in enumerate(faces):
                sgn = face_sign(i, a, b, beta[t])
                if X.is_degenerate(f):
                    const += sgn
                else:
                    row[index[f]] += sgn
            rows.append((t, table_index(a, b)))
            matrix.append(tuple(row))
            rhs.append(-const)
    return HPolytope(tuple(cols), tuple(rows), tuple(matrix), tuple(rhs))


@dataclass(frozen=True)
class VertexReport:
    distribution: TwistedDistribution = field(repr=False)
    tight: tuple[tuple[str, int], ...]
    rank: int
    is_vertex: bool
    zp: SimplicialSubset = field(repr=False)

    def summary(self) -> dict:
        return {
            "rank": self.rank,
            "columns": len(self.distribution.X.nondegenerate_edges),
            "is_vertex": self.is_vertex,
            "tight": [f"{t}:{k >> 1}{k & 1}" for t, k in self.tight],
            "zp_edges": sorted(self.zp.edges),
            "zp_triangles": sorted(self.zp.triangles),
        }


def rank_of(p: TwistedDistribution) -> VertexReport:
    """Rank of the rows tight at p, i.e. rows (t, ab) with p_t^{ab} = 0."""
    H = build_M(p.X, p.beta)
    tight_idx = [i for i, (t, k) in enumerate(H.rows) if p.tables[t][k] == 0]
    rank = rational_rank([H.matrix[i] for i in tight_idx]) if H.columns else 0
    return VertexReport(
        distribution=p,
        tight=tuple(H.rows[i] for i in tight_idx),
        rank=rank,
        is_vertex=rank == len(H.columns),
        zp=deterministic_subcomplex(p),
    )


# -- double description ----------------------------------------------------


@dataclass(frozen=True)
class EnumerationConfig:
    max_dimension: int = 16


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v) if g > 1 else tuple(v)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _integer_row(row: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for v in row:
        den = lcm(den, Fraction(v).denominator)
    return _primitive([int(Fraction(v) * den) for v in row])


def double_description(constraints: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : a . y >= 0 for all a}``.

    Starts from the whole space (all of it lineality) and inserts one
    constraint at a time.  Two rays are combined only when adjacent, tested
    by the rank of their common tight constraints.
    """
    lineality = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], frozenset[int]]] = []
    done: list[tuple[int, ...]] = []

    for h, a in enumerate(constraints):
        k = next((i for i, l in enumerate(lineality) if _dot(a, l) != 0), None)
        if k is not None:
            pivot = lineality.pop(k)
            if _dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            ap = _dot(a, pivot)
            lineality = [
                _primitive([ap * x - _dot(a, l) * y for x, y in zip(l, pivot)])
                for l in lineality
            ]
            rays = [
                (_primitive([ap * x - _dot(a, r) * y for x, y in zip(r, pivot)]), z | {h})
                for r, z in rays
            ]
            rays.append((pivot, frozenset(range(h))))
            done.append(tuple(a))
            continue

        vals = [_dot(a, r) for r, _ in rays]
        pos = [(r, z, v) for (r, z), v in zip(rays, vals) if v > 0]
        neg = [(r, z, v) for (r, z), v in zip(rays, vals) if v < 0]
        new = [(r, z) for (r, z), v in zip(rays, vals) if v > 0]
        new += [(r, z | {h}) for (r, z), v in zip(rays, vals) if v == 0]
        done.append(tuple(a))
        need = dim - len(lineality) - 2
        for rp, zp, vp in pos:
            for rn, zn, vn in neg:
                common = zp & zn
                if len(common) < need:
                    continue
                if need > 0 and rational_rank([done[i] for i in common]) != need:
                    continue
                ray = _primitive([vp * x - vn * y for x, y in zip(rn, rp)])
                new.append((ray, common | {h}))
        rays = new

    if lineality:
        raise ValueError("cone is not pointed: the polytope is unbounded")
    return [r for r, _ in rays]


@dataclass(frozen=True)
class AffineChart:
    """c = origin + basis . t, the affine hull cut out by paired rows."""

    origin: list[Fraction]
    basis: list[list[Fraction]]

    def point(self, t: Sequence[Fraction]) -> list[Fraction]:
        return [o + sum((b[j] * t[k] for k, b in enumerate(self.basis)), Fraction(0))
                for j, o in enumerate(self.origin)]


def enumerate_vertices(X: SimplicialSet2, beta: Mapping[str, int] | None = None,
                       config: EnumerationConfig = EnumerationConfig()) -> list[TwistedDistribution]:
    beta = coh.normalize2(X, beta)
    H = build_M(X, beta)
    n = len(H.columns)
    eq = H.equalities()
    chart = affine_solutions([H.matrix[i] for i in eq], [H.rhs[i] for i in eq], n)
    if chart is None:
        return []
    origin, basis = chart
    k = len(basis)
    if k > config.max_dimension:
        raise DimensionTooLarge(f"{k} free coordinates exceed the limit {config.max_dimension}")
    # homogenize: y = (lam, t), rows  (M origin - rhs) lam + (M basis) t >= 0
    cons = [tuple([1] + [0] * k)]
    for row, r in zip(H.matrix, H.rhs):
        off = sum((a * o for a, o in zip(row, origin)), Fraction(0)) - r
        coeffs = [sum((a * b[j] for j, a in enumerate(row)), Fraction(0)) for b in basis]
        if not any(coeffs):
            if off < 0:
                return []
            continue
        cons.append(_integer_row([off] + coeffs))
    cons = list(dict.fromkeys(cons))
    rays = double_description(cons, k + 1)
    chart = AffineChart(origin, basis)
    out: dict[tuple, TwistedDistribution] = {}
    for ray in rays:
        if ray[0] <= 0:
            continue
        t = [Fraction(v, ray[0]) for v in ray[1:]]
        c = dict(zip(H.columns, chart.point(t)))
        p = from_correlations(X, beta, c)
        out.setdefault(p.key(), p)
    return sorted(out.values(), key=_vertex_order)


def _vertex_order(p: TwistedDistribution) -> tuple:
    return tuple(-v for tab in p.key() for v in tab)


def affine_dimension(points: Sequence[TwistedDistribution]) -> int:
    if not points:
        return -1
    vecs = [[v for v in correlations(p).values()] for p in points]
    base = vecs[0]
    return rational_rank([[a - b for a, b in zip(v, base)] for v in vecs[1:]]) if len(vecs) > 1 else 0
