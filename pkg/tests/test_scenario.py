from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from twistdist.dist import NormalizationFailure, TwistedDistribution
from twistdist.scenario import ScenarioSyntaxError, ValidationError, from_complex, load, parse, render
from twistdist.scomplex import UnresolvedReference, builtin, cycle

SCENARIOS = sorted((Path(__file__).resolve().parent.parent / "scenarios").glob("*.sdist"))

HEAD = """scenario t
vertex 0 1 2
edge x : 0 -> 1
edge y : 1 -> 2
edge z : 0 -> 2
"""


def test_chsh_file_is_the_four_cycle():
    sf = load(str(SCENARIOS[[p.name for p in SCENARIOS].index("chsh.sdist")]))
    C = cycle(4)
    X = sf.complex
    assert (X.vertices, X.edges, X.triangles) == (C.vertices, C.edges, C.triangles)
    pr = sf.distribution("pr")
    assert not any(pr.beta.values())
    assert pr.tables["s1"] == (0, 0, 0.5, 0.5)


def test_undeclared_edge():
    with pytest.raises(UnresolvedReference):
        parse(HEAD + "triangle s : d0=y d1=w d2=x\n")


def test_bad_normalization_is_a_validation_error():
    with pytest.raises(ValidationError) as err:
        parse(HEAD + "triangle s : d0=y d1=z d2=x\ndistribution p twist 0 { s = 1/4 1/4 1/4 0 }\n")
    assert isinstance(err.value.cause, NormalizationFailure)


def test_syntax_error_position():
    with pytest.raises(ScenarioSyntaxError) as err:
        parse(HEAD + "triangle s : d0=y d1=z d3=x\n")
    assert (err.value.line, err.value.col) == (6, 24)


def test_unknown_twist():
    with pytest.raises(UnresolvedReference):
        parse(HEAD + "triangle s : d0=y d1=z d2=x\ndistribution p twist odd { s = 1 0 0 0 }\n")


def test_comments_primes_and_stars():
    text = """# leading comment
scenario t'  # trailing comment
vertex * *' a
edge x : * -> *'
edge y : *' -> a
edge z : * -> a
triangle s : d0=y d1=z d2=x
"""
    sf = parse(text)
    assert sf.complex.vertices == ("*", "*'", "a")
    assert parse(render(sf)) == sf


def test_glue_and_collapse_lines():
    sf = parse(HEAD + "triangle s : d0=y d1=z d2=x\nglue s.d2 = s.d1\ncollapse y\n")
    X = sf.complex
    assert X.triangles["s"] == ("y", "x", "x") and X.is_degenerate("y")


def test_subset_block():
    sf = parse(HEAD + "triangle s : d0=y d1=z d2=x\nsubset Z { y }\n")
    assert sf.subsets["Z"].edges == {"y"} and sf.subsets["Z"].vertices == {"1", "2"}


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.name)
def test_shipped_files_round_trip(path):
    sf = load(str(path))
    text = render(sf)
    again = parse(text)
    assert again == sf
    assert render(again) == text


@given(st.sampled_from([("delta2", None), ("cycle", 3), ("cycle", 6), ("disk", 2), ("tetrahedron", None),
                        ("mermin_torus", None), ("glued_collapsed_triangle", None)]))
def test_builtin_round_trip(kind):
    X = builtin(*kind)
    sf = from_complex(X, {"one": {t: int(i == 0) for i, t in enumerate(X.triangles)}})
    assert parse(render(sf)) == sf


def test_distribution_twist_is_recorded():
    sf = parse(HEAD + "triangle s : d0=y d1=z d2=x\ncocycle odd { s=1 }\n"
                      "distribution p twist odd {\n  s = 0 1 0 0\n}\n")
    p = sf.distribution("p")
    assert isinstance(p, TwistedDistribution) and p.beta == {"s": 1}
    assert sf.twists == {"p": "odd"}
