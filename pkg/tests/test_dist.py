import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from twistdist import cohomology as coh
from twistdist.dist import (DegenerateFaceViolation, InfeasibleCorrelations, MarginalMismatch,
                            MismatchedComplex, Negativity, NormalizationFailure, RestrictionNotDeterministic,
                            TwistedDistribution, convolve, convolve_tables, correlations, deterministic,
                            deterministic_all, deterministic_subcomplex, from_correlations, is_contextual,
                            is_valid, phi, phi_inverse, point_mass, theta)
from twistdist.scomplex import (SimplicialSubset, boundary_edges, collapsed_triangle, cycle, delta2, disk,
                                glued_triangle, tetrahedron)

from helpers import random_distribution

H, Q = F(1, 2), F(1, 4)
UNIFORM = (Q, Q, Q, Q)


def boundary_box(n, a, beta=None):
    """Boundary outcomes a_i on the N-cycle, interior uniform."""
    X = cycle(n)
    tabs = {f"s{i + 1}": (H, H, 0, 0) if a[i] == 0 else (0, 0, H, H) for i in range(n)}
    return TwistedDistribution.make(X, beta, tabs)


def test_uniform_on_cycle_is_valid():
    X = cycle(4)
    assert is_valid(TwistedDistribution.make(X, None, {t: UNIFORM for t in X.triangles}))


def test_degenerate_face_violation():
    with pytest.raises(DegenerateFaceViolation):
        TwistedDistribution.make(collapsed_triangle(1), None, {"s": UNIFORM})


def test_twisted_d0_marginal():
    p = TwistedDistribution.make(delta2(), {"s": 1}, {"s": (H, 0, 0, H)})
    assert p.face_marginal("s", 0) == H  # p01 + p11


@pytest.mark.parametrize("tab, err", [((H, H, H, -H), Negativity), ((Q, Q, Q, 0), NormalizationFailure)])
def test_table_errors(tab, err):
    with pytest.raises(err):
        TwistedDistribution.make(delta2(), None, {"s": tab})


def test_marginal_mismatch():
    X = cycle(4)
    tabs = {t: UNIFORM for t in X.triangles}
    tabs["s1"] = (H, 0, H, 0)  # e2 deterministic in s1 but not in s2
    with pytest.raises(MarginalMismatch):
        TwistedDistribution.make(X, None, tabs)


def test_mismatched_tables():
    with pytest.raises(MismatchedComplex):
        TwistedDistribution.make(delta2(), None, {"t": UNIFORM})


def test_correlation_examples():
    X = delta2()
    assert from_correlations(X, None, {"x": 0, "y": 0, "z": 0}).tables["s"] == UNIFORM
    assert from_correlations(X, None, {"x": 0, "y": 0, "z": 1}).tables["s"] == (H, 0, 0, H)
    with pytest.raises(InfeasibleCorrelations):
        from_correlations(X, {"s": 1}, {"x": 1, "y": 1, "z": 1})


def test_convolution_examples():
    p = (F(1, 3), F(1, 6), F(1, 6), F(1, 3))
    assert convolve_tables(p, point_mass(0)) == p
    assert convolve_tables(UNIFORM, p) == UNIFORM
    assert convolve_tables(point_mass(2), (H, 0, 0, H)) == (0, H, H, 0)


def test_deterministic_section_counts():
    assert len(deterministic_all(cycle(4), None)) == 16
    assert len(deterministic_all(tetrahedron(), None)) == 8
    assert deterministic_all(tetrahedron(), {"t123": 1}) == []


@pytest.mark.parametrize("X", [delta2(), cycle(3), disk(3), tetrahedron()], ids=lambda X: X.name)
def test_deterministic_distributions_are_valid_and_noncontextual(X):
    beta = {t: 0 for t in X.triangles}
    beta[next(iter(X.triangles))] = 1 if coh.h2_dimension(X) == 0 else 0
    for s in deterministic_all(X, beta)[:6]:
        p = deterministic(X, beta, s)
        assert is_valid(p)
        ctx = is_contextual(p)
        assert not ctx.contextual
        assert len(ctx.certificate) == 1 and ctx.certificate[0][1] == 1
        assert deterministic_subcomplex(p).edges == set(X.nondegenerate_edges)


def test_glued_triangle_contextuality():
    X = glued_triangle()
    assert is_contextual(TwistedDistribution.make(X, None, {"s": (0, H, 0, H)})).contextual
    assert not is_contextual(TwistedDistribution.make(X, None, {"s": (H, 0, H, 0)})).contextual


def test_pr_box():
    p = boundary_box(4, [1, 0, 0, 0])
    assert is_contextual(p).contextual
    assert deterministic_subcomplex(p).edges == {"x1", "x2", "x3", "x4"}
    assert not is_contextual(boundary_box(4, [1, 1, 0, 0])).contextual


def test_uniform_has_empty_zp():
    X = tetrahedron()
    p = TwistedDistribution.make(X, None, {t: UNIFORM for t in X.triangles})
    Z = deterministic_subcomplex(p)
    assert not Z.edges and not Z.triangles


def test_theta_mixture():
    X = cycle(3)
    secs = deterministic_all(X, None)
    p = theta(X, None, [(secs[0], H), (secs[5], H)])
    assert is_valid(p) and not is_contextual(p).contextual


def test_phi_of_deterministic_is_point_mass():
    X = tetrahedron()
    s = deterministic_all(X, None)[3]
    red = phi(deterministic(X, None, s))
    assert all(tab == point_mass(0) for tab in red.dist.tables.values())
    assert red.q.target.vertices == ("*",)


def test_phi_of_pr_box():
    a = [1, 0, 1, 1]
    red = phi(boundary_box(4, a))
    assert red.zeta == {f"s{i + 1}": a[i] for i in range(4)}
    assert all(tab == (H, H, 0, 0) for tab in red.dist.tables.values())
    assert red.dist.beta == red.zeta


@pytest.mark.parametrize("a", [0, 1])
def test_phi_glued_triangle_twist(a):
    X = glued_triangle()
    tab = (H, 0, H, 0) if a == 0 else (0, H, 0, H)
    red = phi(TwistedDistribution.make(X, None, {"s": tab}), SimplicialSubset.generated(X, ["y"]))
    assert red.dist.beta == {"s": a}
    assert red.q.target.is_degenerate(red.q.target.triangles["s"][0])


def test_phi_rejects_nondeterministic_restriction():
    X = cycle(4)
    p = TwistedDistribution.make(X, None, {t: UNIFORM for t in X.triangles})
    with pytest.raises(RestrictionNotDeterministic):
        phi(p, SimplicialSubset.generated(X, boundary_edges(X)))


@given(st.integers(0, 10 ** 6))
def test_correlation_round_trip(seed):
    p = random_distribution(random.Random(seed))
    assert from_correlations(p.X, p.beta, correlations(p)) == p


@given(st.integers(0, 10 ** 6))
def test_convolution_adds_twists(seed):
    rng = random.Random(seed)
    p = random_distribution(rng)
    while True:
        q = random_distribution(rng)
        if q.X == p.X:
            break
    r = convolve(p, q)
    assert r.beta == coh.add(p.beta, q.beta)
    assert is_valid(r)


@given(st.integers(0, 10 ** 6))
def test_phi_round_trip(seed):
    p = random_distribution(random.Random(seed))
    red = phi(p)
    back = phi_inverse(red.q, red.s, p.beta, red.dist)
    assert back == p
    assert phi(back).dist == red.dist
