"""Signed graphs attached to twisted distributions, and the rank formula.

The bipartite graph has edge-vertices (non-degenerate edges of X) on one
side and outcome-vertices ``(t, k)`` with ``k = 2a+b`` on the other.  The
sign of ``{x, (t, k)}`` is the polytope matrix entry of row (t, k) at x.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping

from . import cohomology as coh
from .dist import (OUTCOMES, TwistedDistribution, deterministic_subcomplex, face_sign,
                   is_point_mass, phi, table_index)
from .linalg import rational_rank
from .polytope import rank_of
from .scomplex import SimplicialSet2, validate

Vertex = Hashable


class HypothesisViolation(ValueError):
    code = "HypothesisViolation"

    def __init__(self, clause: str, detail: str = ""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause


class DeterministicSimplexPresent(ValueError):
    code = "DeterministicSimplexPresent"


class NoZeroOutcome(ValueError):
    code = "NoZeroOutcome"


class DegreeViolation(ValueError):
    code = "DegreeViolation"


@dataclass(frozen=True)
class SignedBipartiteGraph:
    outcome_vertices: tuple[tuple[str, int], ...]  # V0
    edge_vertices: tuple[str, ...]  # V1
    signs: dict[tuple[tuple[str, int], str], int]

    def degree(self, v: Vertex) -> int:
        return sum(1 for (s, x) in self.signs if v in (s, x))

    def neighbours(self, s: tuple[str, int]) -> list[str]:
        return [x for (u, x) in self.signs if u == s]

    def biadjacency(self) -> list[list[int]]:
        """B with rows indexed by outcome vertices and columns by edge vertices."""
        return [[self.signs.get((s, x), 0) for x in self.edge_vertices]
                for s in self.outcome_vertices]

    def to_text(self) -> str:
        lines = [f"# signed bipartite graph: {len(self.outcome_vertices)} outcome vertices, "
                 f"{len(self.edge_vertices)} edge vertices"]
        for (t, k), x in self.signs:
            sign = "+" if self.signs[((t, k), x)] > 0 else "-"
            lines.append(f"{t}:{k >> 1}{k & 1} -- {x} {sign}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SignedGraph:
    """Undirected multigraph with a +-1 sign on every edge."""

    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[Vertex, Vertex, int], ...]


@dataclass(frozen=True)
class BidirectedGraph:
    vertices: tuple[Vertex, ...]
    # edge id -> ((v, eta(v, e)), (w, eta(w, e)))
    edges: dict[Hashable, tuple[tuple[Vertex, int], tuple[Vertex, int]]]

    def signed(self) -> SignedGraph:
        return SignedGraph(self.vertices, tuple(
            (v, w, -ev * ew) for (v, ev), (w, ew) in self.edges.values()))

    def incidence_matrix(self) -> list[list[int]]:
        index = {v: i for i, v in enumerate(self.vertices)}
        H = [[0] * len(self.edges) for _ in self.vertices]
        for j, ((v, ev), (w, ew)) in enumerate(self.edges.values()):
            H[index[v]][j] += ev
            H[index[w]][j] += ew
        return H

    def switch(self, vertex: Vertex) -> "BidirectedGraph":
        """Negate eta at every incidence of ``vertex``."""
        flip = lambda end: (end[0], -end[1]) if end[0] == vertex else end  # noqa: E731
        return BidirectedGraph(self.vertices, {e: (flip(a), flip(b)) for e, (a, b) in self.edges.items()})


# -- balance ---------------------------------------------------------------


@dataclass(frozen=True)
class Balance:
    components: tuple[tuple[tuple[Vertex, ...], bool], ...]

    @property
    def b(self) -> int:
        return sum(1 for _, ok in self.components if ok)


def balanced_components(G: SignedGraph) -> Balance:
    """Label vertices by +-1 so that each edge sign is the product of its end labels.

    A component is balanced exactly when such a switching exists.
    """
    adj: dict[Vertex, list[tuple[Vertex, int]]] = {v: [] for v in G.vertices}
    for v, w, s in G.edges:
        adj[v].append((w, s))
        adj[w].append((v, s))
    label: dict[Vertex, int] = {}
    comps = []
    for root in G.vertices:
        if root in label:
            continue
        label[root] = 1
        members, ok = [root], True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, s in adj[v]:
                want = label[v] * s
                if w not in label:
                    label[w] = want
                    members.append(w)
                    queue.append(w)
                elif label[w] != want:
                    ok = False
        comps.append((tuple(members), ok))
    return Balance(tuple(comps))


@dataclass(frozen=True)
class IncidenceRank:
    direct: int
    vertices: int
    balanced: int

    @property
    def formula(self) -> int:
        return self.vertices - self.balanced


def incidence_rank(S: BidirectedGraph) -> IncidenceRank:
    direct = rational_rank(S.incidence_matrix()) if S.edges else 0
    out = IncidenceRank(direct, len(S.vertices), balanced_components(S.signed()).b)
    if out.direct != out.formula:
        raise ArithmeticError(f"incidence rank {out.direct} != |V| - b = {out.formula}")
    return out


# -- graphs of a simplicial set ----------------------------------------------


def gamma_graph(X: SimplicialSet2, beta: Mapping[str, int] | None) -> SignedBipartiteGraph:
    validate(X, strict=True)
    beta = coh.normalize2(X, beta)
    outcome_vertices, signs = [], {}
    for t, faces in X.triangles.items():
        for a, b in OUTCOMES:
            s = (t, table_index(a, b))
            outcome_vertices.append(s)
            for i, f in enumerate(faces):
                if not X.is_degenerate(f):
                    signs[(s, f)] = face_sign(i, a, b, beta[t])
    return SignedBipartiteGraph(tuple(outcome_vertices), X.nondegenerate_edges, signs)


def _induced(G: SignedBipartiteGraph, keep: list[tuple[str, int]]) -> SignedBipartiteGraph:
    ks = set(keep)
    return SignedBipartiteGraph(tuple(keep), G.edge_vertices,
                                {k: v for k, v in G.signs.items() if k[0] in ks})


def support_graph(p: TwistedDistribution) -> SignedBipartiteGraph:
    """Induced subgraph on the outcome vertices where p vanishes."""
    G = gamma_graph(p.X, p.beta)
    return _induced(G, [s for s in G.outcome_vertices if p.tables[s[0]][s[1]] == 0])


def kept_outcome(p: TwistedDistribution, t: str) -> int:
    """The zero outcome kept for triangle t in the reduced graph."""
    X = p.X
    tab = p.tables[t]
    if is_point_mass(tab):
        raise DeterministicSimplexPresent(f"triangle {t} is deterministic")
    for e in X.boundary(t):
        if p.edge_outcome(e) is not None:
            raise DeterministicSimplexPresent(f"edge {e} is deterministic")
    zeros = [k for k in range(4) if tab[k] == 0]
    if not zeros:
        raise NoZeroOutcome(f"triangle {t} has no zero outcome")
    if len(X.boundary(t)) == 3:
        if len(zeros) > 1:
            raise DeterministicSimplexPresent(f"triangle {t} has {len(zeros)} zero outcomes")
        return zeros[0]
    # two forced zeros with opposite rows; the smallest index has a = 0 whenever possible
    return zeros[0]


def reduced_graph(p: TwistedDistribution) -> tuple[SignedBipartiteGraph, dict[tuple[str, str], int]]:
    """The graph keeping one zero-outcome vertex per triangle, and its sign gamma_p."""
    G = gamma_graph(p.X, p.beta)
    keep = [(t, kept_outcome(p, t)) for t in p.X.triangles]
    R = _induced(G, keep)
    gamma_p = {(x, s[0]): sign for (s, x), sign in R.signs.items()}
    return R, gamma_p


def hat(G: SignedBipartiteGraph) -> BidirectedGraph:
    """Outcome vertices become vertices, edge vertices become edges."""
    for s in G.outcome_vertices:
        if G.degree(s) != 2:
            raise DegreeViolation(f"outcome vertex {s} has degree {G.degree(s)}")
    ends: dict[str, list[tuple[Any, int]]] = {x: [] for x in G.edge_vertices}
    for (s, x), sign in G.signs.items():
        ends[x].append((s[0], sign))
    for x, e in ends.items():
        if len(e) != 2:
            raise DegreeViolation(f"edge vertex {x} has degree {len(e)}")
    return BidirectedGraph(tuple(s[0] for s in G.outcome_vertices),
                           {x: (e[0], e[1]) for x, e in ends.items()})


# -- the rank formula --------------------------------------------------------


@dataclass(frozen=True)
class RankFormula:
    value: int
    zp_edges: int
    quotient_triangles: int
    balanced: int
    trace: dict = field(repr=False)


def rank_formula(p: TwistedDistribution) -> RankFormula:
    """|(Z_p)_1°| + |Xbar_2°| - b(Xbar, pbar), with every intermediate in the trace."""
    X = p.X
    trace: dict[str, Any] = {}
    if not X.is_standard():
        raise HypothesisViolation("boundary-shape", "every triangle needs 3 or 2+degenerate faces")
    no_zero = [t for t, tab in p.tables.items() if all(v != 0 for v in tab)]
    if no_zero:
        raise HypothesisViolation("zero-outcome", f"triangles without a zero outcome: {no_zero}")
    Z = deterministic_subcomplex(p)
    trace["zp_edges"] = sorted(Z.edges)
    trace["zp_triangles"] = sorted(Z.triangles)
    red = phi(p, Z)
    Xbar, pbar = red.q.target, red.dist
    trace["s"] = dict(sorted(red.s.items()))
    trace["zeta"] = dict(red.zeta)
    trace["beta_bar"] = dict(pbar.beta)
    trace["pbar"] = {t: [str(v) for v in tab] for t, tab in pbar.tables.items()}
    lonely = {e: len(Xbar.cofaces(e)) for e in Xbar.nondegenerate_edges if len(Xbar.cofaces(e)) != 2}
    if lonely:
        raise HypothesisViolation("two-triangles", f"edges of X/Z_p not in exactly two triangles: {lonely}")
    if len(Xbar.nondegenerate_edges) != len(Xbar.triangles):
        trace["note"] = (f"|Xbar_1°| = {len(Xbar.nondegenerate_edges)} differs from "
                         f"|Xbar_2°| = {len(Xbar.triangles)}")
    R, gamma_p = reduced_graph(pbar)
    trace["reduced_graph"] = {f"{x}|{t}": s for (x, t), s in gamma_p.items()}
    try:
        S = hat(R)
    except DegreeViolation as exc:
        raise HypothesisViolation("triangle-degree", str(exc)) from exc
    bal = balanced_components(S.signed())
    trace["hat_edges"] = {x: [v, w, s] for x, (v, w, s) in zip(S.edges, S.signed().edges)}
    trace["components"] = [[list(map(str, vs)), ok] for vs, ok in bal.components]
    inc = incidence_rank(S)
    trace["incidence_rank"] = inc.direct
    value = len(Z.edges) + len(Xbar.triangles) - bal.b
    trace["value"] = value
    return RankFormula(value, len(Z.edges), len(Xbar.triangles), bal.b, trace)


def check_rank_formula(p: TwistedDistribution) -> tuple[int, int]:
    """(formula value, matrix rank); callers compare the two."""
    return rank_formula(p).value, rank_of(p).rank
