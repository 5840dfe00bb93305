"""Twisted simplicial distributions with binary outcomes.

A distribution stores, for every generating triangle, the outcome table
``(p00, p01, p10, p11)``.  The first index is the d2-outcome ``a``; the
d0-outcome is ``b + beta(t)`` and the d1-outcome is ``a + b``.  Table
positions are ``2*a + b`` so that adding outcomes in Z2^2 is XOR on indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import cohomology as coh
from .lp import feasible_point
from .scomplex import QuotientMap, SimplicialSet2, SimplicialSubset, quotient

OUTCOMES = ((0, 0), (0, 1), (1, 0), (1, 1))
Table = tuple[Fraction, Fraction, Fraction, Fraction]

ZERO, ONE = Fraction(0), Fraction(1)


class InvalidDistribution(ValueError):
    code = "InvalidDistribution"

    def __init__(self, message: str, problems: Sequence[str] = ()):
        super().__init__(message)
        self.problems = list(problems) or [message]


class Negativity(InvalidDistribution):
    code = "Negativity"


class NormalizationFailure(InvalidDistribution):
    code = "NormalizationFailure"


class MarginalMismatch(InvalidDistribution):
    code = "MarginalMismatch"


class DegenerateFaceViolation(InvalidDistribution):
    code = "DegenerateFaceViolation"


class InfeasibleCorrelations(InvalidDistribution):
    code = "InfeasibleCorrelations"


class MismatchedComplex(ValueError):
    code = "MismatchedComplex"


class RestrictionNotDeterministic(ValueError):
    code = "RestrictionNotDeterministic"


class SolutionSpaceTooLarge(ValueError):
    code = "SolutionSpaceTooLarge"


def face_outcome(face: int, a: int, b: int, twist: int) -> int:
    if face == 0:
        return (b + twist) % 2
    if face == 1:
        return (a + b) % 2
    return a


def face_sign(face: int, a: int, b: int, twist: int) -> int:
    """Coefficient of c(d_i t) in 4*p^{ab}; also the polytope matrix entry."""
    return -1 if face_outcome(face, a, b, twist) else 1


def table_index(a: int, b: int) -> int:
    return 2 * a + b


def point_mass(index: int) -> Table:
    return tuple(ONE if k == index else ZERO for k in range(4))


def as_table(values: Iterable) -> Table:
    t = tuple(Fraction(v) for v in values)
    if len(t) != 4:
        raise ValueError("an outcome table has four entries")
    return t


def shift(table: Table, index: int) -> Table:
    """Convolution with a point mass: entry k moves to k XOR index."""
    return tuple(table[k ^ index] for k in range(4))


def convolve_tables(p: Table, q: Table) -> Table:
    out = [ZERO] * 4
    for i in range(4):
        for j in range(4):
            out[i ^ j] += p[i] * q[j]
    return tuple(out)


@dataclass(frozen=True)
class TwistedDistribution:
    X: SimplicialSet2
    beta: dict[str, int]
    tables: dict[str, Table]

    @classmethod
    def make(cls, X: SimplicialSet2, beta: Mapping[str, int] | None,
             tables: Mapping[str, Iterable], check: bool = True) -> "TwistedDistribution":
        missing = [t for t in X.triangles if t not in tables]
        extra = [t for t in tables if t not in X.triangles]
        if missing or extra:
            raise MismatchedComplex(f"tables do not match triangles (missing {missing}, extra {extra})")
        p = cls(X, coh.normalize2(X, beta), {t: as_table(tables[t]) for t in X.triangles})
        if check:
            validate_dist(p)
        return p

    def face_marginal(self, triangle: str, face: int) -> Fraction:
        """Probability of outcome 0 on face ``face`` of ``triangle``."""
        tw = self.beta[triangle]
        tab = self.tables[triangle]
        return sum((tab[table_index(a, b)] for a, b in OUTCOMES
                    if face_outcome(face, a, b, tw) == 0), ZERO)

    def edge_marginal(self, edge: str) -> Fraction:
        if self.X.is_degenerate(edge):
            return ONE
        t = self.X.cofaces(edge)[0]
        return self.face_marginal(t, self.X.faces(t).index(edge))

    def edge_outcome(self, edge: str) -> int | None:
        """The deterministic outcome on an edge, or None."""
        m = self.edge_marginal(edge)
        return 0 if m == 1 else 1 if m == 0 else None

    def key(self) -> tuple:
        return tuple(self.tables[t] for t in self.X.triangles)

    def __str__(self) -> str:
        rows = [f"{t}: " + " ".join(str(v) for v in tab) for t, tab in self.tables.items()]
        return "\n".join(rows)


def dist_problems(p: TwistedDistribution) -> list[tuple[type, str]]:
    X = p.X
    out: list[tuple[type, str]] = []
    for t, tab in p.tables.items():
        if any(v < 0 for v in tab):
            out.append((Negativity, f"negative entry in {t}"))
        if sum(tab) != 1:
            out.append((NormalizationFailure, f"entries of {t} sum to {sum(tab)}"))
    for e in X.nondegenerate_edges:
        seen = {p.face_marginal(t, i) for t in X.cofaces(e)
                for i, f in enumerate(X.faces(t)) if f == e}
        if len(seen) > 1:
            out.append((MarginalMismatch, f"edge {e} has marginals {sorted(seen)}"))
    for t, faces in X.triangles.items():
        for i, f in enumerate(faces):
            if X.is_degenerate(f) and p.face_marginal(t, i) != 1:
                out.append((DegenerateFaceViolation, f"triangle {t} face d{i} is degenerate"))
    return out


def validate_dist(p: TwistedDistribution) -> TwistedDistribution:
    problems = dist_problems(p)
    if problems:
        kind = problems[0][0]
        raise kind("; ".join(msg for _, msg in problems), [msg for _, msg in problems])
    return p


def is_valid(p: TwistedDistribution) -> bool:
    return not dist_problems(p)


# -- correlation coordinates ---------------------------------------------


def correlations(p: TwistedDistribution) -> dict[str, Fraction]:
    return {e: 2 * p.edge_marginal(e) - 1 for e in p.X.nondegenerate_edges}


def table_from_correlations(X: SimplicialSet2, t: str, twist: int,
                            c: Mapping[str, Fraction]) -> Table:
    faces = X.faces(t)
    vals = [ONE if X.is_degenerate(f) else Fraction(c[f]) for f in faces]
    out = []
    for a, b in OUTCOMES:
        s = ONE + sum(face_sign(i, a, b, twist) * vals[i] for i in range(3))
        out.append(s / 4)
    return tuple(out)


def from_correlations(X: SimplicialSet2, beta: Mapping[str, int] | None,
                      c: Mapping[str, Fraction]) -> TwistedDistribution:
    beta = coh.normalize2(X, beta)
    tables = {t: table_from_correlations(X, t, beta[t], c) for t in X.triangles}
    bad = [t for t, tab in tables.items() if any(v < 0 for v in tab)]
    if bad:
        raise InfeasibleCorrelations(f"negative probabilities on {bad}")
    return TwistedDistribution.make(X, beta, tables)


# -- products ---------------------------------------------------------------


def convolve(p: TwistedDistribution, q: TwistedDistribution) -> TwistedDistribution:
    """Triangle-wise convolution; the twists add."""
    if p.X != q.X:
        raise MismatchedComplex("distributions live on different complexes")
    tables = {t: convolve_tables(p.tables[t], q.tables[t]) for t in p.X.triangles}
    return TwistedDistribution(p.X, coh.add(p.beta, q.beta), tables)


# -- deterministic distributions -------------------------------------------


def section_index(X: SimplicialSet2, s: Mapping[str, int], t: str, twist: int) -> int:
    """Outcome index of the section ``s`` on triangle ``t``.

    a is the d2-value; b is chosen so that the twisted d0-face reads s(d0).
    """
    d0, _, d2 = X.faces(t)
    val = lambda e: 0 if X.is_degenerate(e) else s.get(e, 0) % 2  # noqa: E731
    return table_index(val(d2), (val(d0) + twist) % 2)


def deterministic(X: SimplicialSet2, beta: Mapping[str, int] | None,
                  s: Mapping[str, int]) -> TwistedDistribution:
    beta = coh.normalize2(X, beta)
    if coh.coboundary1(X, s) != beta:
        raise ValueError("section does not satisfy ds = beta")
    return TwistedDistribution(
        X, beta, {t: point_mass(section_index(X, s, t, beta[t])) for t in X.triangles})


def deterministic_all(X: SimplicialSet2, beta: Mapping[str, int] | None,
                      max_count: int = 2 ** 20) -> list[coh.Cochain1]:
    """Every normalized s with ds = beta (empty iff [beta] != 0)."""
    beta = coh.normalize2(X, beta)
    system, cols = coh.solve_system(X, beta)
    x0 = system.particular()
    if x0 is None:
        return []
    kernel = system.kernel_basis()
    if 2 ** len(kernel) > max_count:
        raise SolutionSpaceTooLarge(f"2^{len(kernel)} sections exceed the cap {max_count}")
    out = []
    for mask in range(2 ** len(kernel)):
        x = x0
        for k, v in enumerate(kernel):
            if mask >> k & 1:
                x ^= v
        out.append({e: x >> j & 1 for j, e in enumerate(cols)})
    return out


def theta(X: SimplicialSet2, beta: Mapping[str, int] | None,
          weights: Iterable[tuple[Mapping[str, int], Fraction]]) -> TwistedDistribution:
    """The mixture of deterministic distributions with the given weights."""
    beta = coh.normalize2(X, beta)
    acc = {t: [ZERO] * 4 for t in X.triangles}
    for s, w in weights:
        w = Fraction(w)
        for t in X.triangles:
            acc[t][section_index(X, s, t, beta[t])] += w
    return TwistedDistribution(X, beta, {t: tuple(v) for t, v in acc.items()})


@dataclass(frozen=True)
class Contextuality:
    contextual: bool
    certificate: list[tuple[coh.Cochain1, Fraction]] | None = None
    reason: str = ""


def is_contextual(p: TwistedDistribution, max_sections: int = 2 ** 20) -> Contextuality:
    sections = deterministic_all(p.X, p.beta, max_sections)
    if not sections:
        return Contextuality(True, None, "no deterministic sections: [beta] != 0")
    X = p.X
    A, b = [], []
    idx = [{t: section_index(X, s, t, p.beta[t]) for t in X.triangles} for s in sections]
    for t in X.triangles:
        for k in range(4):
            A.append([1 if ix[t] == k else 0 for ix in idx])
            b.append(p.tables[t][k])
    A.append([1] * len(sections))
    b.append(ONE)
    x = feasible_point(A, b)
    if x is None:
        return Contextuality(True, None, "no convex decomposition into deterministic distributions")
    cert = [(s, w) for s, w in zip(sections, x) if w]
    return Contextuality(False, cert, "mixture of deterministic distributions")


# -- deterministic subcomplex and the quotient bijection --------------------


def is_point_mass(tab: Table) -> bool:
    return any(v == 1 for v in tab)


def deterministic_subcomplex(p: TwistedDistribution) -> SimplicialSubset:
    X = p.X
    edges = [e for e in X.nondegenerate_edges if p.edge_outcome(e) is not None]
    tris = [t for t in X.triangles if is_point_mass(p.tables[t])]
    return SimplicialSubset.generated(X, edges, tris)


def restriction_section(p: TwistedDistribution, Z: SimplicialSubset) -> coh.Cochain1:
    """The s with p|Z = delta^s, read off from the edge marginals."""
    s = {}
    for e in sorted(Z.edges):
        a = p.edge_outcome(e)
        if a is None:
            raise RestrictionNotDeterministic(f"edge {e} is not deterministic")
        s[e] = a
    for t in Z.triangles:
        if not is_point_mass(p.tables[t]):
            raise RestrictionNotDeterministic(f"triangle {t} is not deterministic")
    return s


@dataclass(frozen=True)
class Reduction:
    """phi(p) together with the data needed to invert it."""

    q: QuotientMap
    s: coh.Cochain1
    zeta: coh.Cochain2
    dist: TwistedDistribution


def _shift_indices(X: SimplicialSet2, s: Mapping[str, int]) -> dict[str, int]:
    """Outcome index of delta^{s~} (which is d(s~)-twisted) on each triangle."""
    st = coh.extend_by_zero(X, s)
    ds = coh.coboundary1(X, st)
    return {t: section_index(X, st, t, ds[t]) for t in X.triangles}


def phi(p: TwistedDistribution, Z: SimplicialSubset | None = None,
        s: Mapping[str, int] | None = None) -> Reduction:
    """Multiply by delta^{s~} and descend to X/Z (Z defaults to Z_p)."""
    X = p.X
    if Z is None:
        Z = deterministic_subcomplex(p)
    found = restriction_section(p, Z)
    if s is None:
        s = found
    elif {e: s.get(e, 0) % 2 for e in Z.edges} != found:
        raise RestrictionNotDeterministic("p restricted to Z is not delta^s")
    s = {e: s.get(e, 0) % 2 for e in sorted(Z.edges)}
    if {t: v for t, v in coh.coboundary1(X, s).items() if t in Z.triangles} != {
            t: p.beta[t] for t in Z.triangles}:
        raise RestrictionNotDeterministic("ds differs from beta on Z")
    q = quotient(X, Z)
    z = coh.zeta(q, s, p.beta)
    idx = _shift_indices(X, s)
    tables = {}
    for t in X.triangles:
        tab = shift(p.tables[t], idx[t])
        if q.triangle_map[t] is None:
            if tab != point_mass(0):
                raise RestrictionNotDeterministic(f"triangle {t} does not reduce to delta^0")
            continue
        tables[q.triangle_map[t]] = tab
    beta_bar = {q.triangle_map[t]: p.beta[t] for t in X.triangles if q.triangle_map[t] is not None}
    pbar = TwistedDistribution.make(q.target, coh.add(beta_bar, z), tables)
    return Reduction(q, s, z, pbar)


def phi_inverse(q: QuotientMap, s: Mapping[str, int], beta: Mapping[str, int],
                pbar: TwistedDistribution) -> TwistedDistribution:
    """Pull back along q and multiply by delta^{s~} again."""
    X = q.source
    if pbar.X != q.target:
        raise MismatchedComplex("distribution does not live on the quotient")
    idx = _shift_indices(X, s)
    tables = {}
    for t in X.triangles:
        image = q.triangle_map[t]
        tab = point_mass(0) if image is None else pbar.tables[image]
        tables[t] = shift(tab, idx[t])
    return TwistedDistribution.make(X, beta, tables)
