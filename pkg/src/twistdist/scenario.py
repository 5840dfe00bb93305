"""Scenario files: a small line-oriented text format for complexes and distributions.

    # comments run to the end of the line
    scenario chsh
    vertex v1 v2 c
    edge x1 : v1 -> v2
    edge s0_c : collapsed(c)
    triangle s1 : d0=e2 d1=e1 d2=x1
    glue s1.d2 = s2.d0
    collapse y
    cocycle odd { s1=1 }
    distribution pr twist odd {
      s1 = 1/2 0 0 1/2
    }
    subset boundary { x1 x2 }

Outcome order inside a distribution row is p00 p01 p10 p11.  ``twist 0``
means the zero cocycle.  Printing emits the resolved complex, so glue and
collapse lines do not survive a round trip but the complex does.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import cohomology as coh
from .dist import InvalidDistribution, MismatchedComplex, TwistedDistribution
from .scomplex import (ComplexBuilder, ComplexError, InvalidComplex, SimplicialSet2,
                       SimplicialSubset, UnresolvedReference)


class ScenarioSyntaxError(ValueError):
    code = "SyntaxError"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line, self.col = line, col


class ValidationError(ValueError):
    """A declared object failed its module validator; ``cause`` is that error."""

    code = "ValidationError"

    def __init__(self, message: str, cause: Exception):
        super().__init__(message)
        self.cause = cause


@dataclass(frozen=True)
class ScenarioFile:
    name: str
    complex: SimplicialSet2
    cocycles: dict[str, dict[str, int]] = field(default_factory=dict)
    distributions: dict[str, TwistedDistribution] = field(default_factory=dict)
    twists: dict[str, str] = field(default_factory=dict)  # distribution -> cocycle name
    subsets: dict[str, SimplicialSubset] = field(default_factory=dict)

    def cocycle(self, name: str | None) -> dict[str, int]:
        if name is None or name == "0":
            return coh.zero2(self.complex)
        if name not in self.cocycles:
            raise UnresolvedReference(f"no cocycle named {name}")
        return self.cocycles[name]

    def distribution(self, name: str | None = None) -> TwistedDistribution:
        if name is None:
            if len(self.distributions) != 1:
                raise UnresolvedReference(
                    f"choose a distribution with --dist among {sorted(self.distributions)}")
            return next(iter(self.distributions.values()))
        if name not in self.distributions:
            raise UnresolvedReference(f"no distribution named {name}")
        return self.distributions[name]


_TOKEN = re.compile(r"\s*(?:(->)|([:={}().])|(-?[A-Za-z0-9_*']+(?:/[0-9]+)?))")


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        pos = 0
        while pos < len(line):
            m = _TOKEN.match(line, pos)
            if m is None or m.end() == pos:
                col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
                raise ScenarioSyntaxError(f"unexpected character {line[col - 1]!r}", lineno, col)
            start = m.start(m.lastindex)
            toks.append(_Tok(m.group(m.lastindex), lineno, start + 1))
            pos = m.end()
    return toks


_WORD = re.compile(r"-?[A-Za-z0-9_*']+(?:/[0-9]+)?$")
_IDENT = re.compile(r"[A-Za-z0-9_*']+$")
_KEYWORDS = {"scenario", "vertex", "edge", "triangle", "glue", "collapse", "cocycle",
             "distribution", "subset"}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def fail(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek() or (self.toks[-1] if self.toks else _Tok("", 1, 1))
        raise ScenarioSyntaxError(message, tok.line, tok.col)

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.fail(f"unexpected end of file, expected {what}")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next(repr(text))
        if tok.text != text:
            self.fail(f"expected {text!r}, found {tok.text!r}", tok)
        return tok

    def ident(self, what: str = "identifier") -> _Tok:
        tok = self.next(what)
        if not _IDENT.match(tok.text) or tok.text in _KEYWORDS:
            self.fail(f"expected {what}, found {tok.text!r}", tok)
        return tok

    def number(self) -> tuple[Fraction, _Tok]:
        tok = self.next("a rational number")
        try:
            return Fraction(tok.text), tok
        except (ValueError, ZeroDivisionError):
            self.fail(f"expected a rational number, found {tok.text!r}", tok)

    def at_statement_start(self) -> bool:
        tok = self.peek()
        return tok is None or tok.text in _KEYWORDS

    def same_line_idents(self, line: int) -> list[_Tok]:
        out = []
        while (tok := self.peek()) is not None and tok.line == line and tok.text not in _KEYWORDS:
            out.append(self.ident("vertex id"))
        return out


def _face_index(p: _Parser) -> tuple[str, int]:
    t = p.ident("triangle id")
    p.expect(".")
    d = p.next("face d0, d1 or d2")
    if d.text not in ("d0", "d1", "d2"):
        p.fail(f"expected d0, d1 or d2, found {d.text!r}", d)
    return t.text, int(d.text[1])


def _block(p: _Parser, item) -> list:
    p.expect("{")
    out = []
    while (tok := p.peek()) is not None and tok.text != "}":
        out.append(item(p))
    p.expect("}")
    return out


def parse(text: str) -> ScenarioFile:
    p = _Parser(text)
    name = None
    b: ComplexBuilder | None = None
    cocycles: dict[str, tuple[_Tok, list]] = {}
    dists: dict[str, tuple[_Tok, _Tok, list]] = {}
    subsets: dict[str, tuple[_Tok, list[_Tok]]] = {}

    def located(tok: _Tok, fn, *args):
        try:
            return fn(*args)
        except UnresolvedReference as exc:
            raise UnresolvedReference(f"line {tok.line}: {exc}") from None
        except ComplexError as exc:
            raise ScenarioSyntaxError(str(exc), tok.line, tok.col) from None

    while (kw := p.peek()) is not None:
        p.i += 1
        if kw.text not in _KEYWORDS:
            p.fail(f"expected a statement keyword, found {kw.text!r}", kw)
        if kw.text == "scenario":
            if name is not None:
                p.fail("duplicate scenario line", kw)
            name = p.ident("scenario name").text
            b = ComplexBuilder(name)
            continue
        if b is None:
            p.fail("the file must start with 'scenario NAME'", kw)
        if kw.text == "vertex":
            ids = p.same_line_idents(kw.line)
            if not ids:
                p.fail("vertex needs at least one id", kw)
            located(kw, b.vertex, *[t.text for t in ids])
        elif kw.text == "edge":
            e = p.ident("edge id")
            p.expect(":")
            first = p.ident("vertex id or 'collapsed'")
            if first.text == "collapsed" and p.peek() is not None and p.peek().text == "(":
                p.expect("(")
                v = p.ident("vertex id")
                p.expect(")")
                located(e, b.collapsed_edge, e.text, v.text)
            else:
                p.expect("->")
                tgt = p.ident("vertex id")
                located(e, b.edge, e.text, first.text, tgt.text)
        elif kw.text == "triangle":
            t = p.ident("triangle id")
            p.expect(":")
            faces = {}
            for want in ("d0", "d1", "d2"):
                d = p.next(want)
                if d.text != want:
                    p.fail(f"expected {want}=EDGE, found {d.text!r}", d)
                p.expect("=")
                faces[want] = p.ident("edge id").text
            located(t, b.triangle, t.text, faces["d0"], faces["d1"], faces["d2"])
        elif kw.text == "glue":
            t1, i = _face_index(p)
            p.expect("=")
            t2, j = _face_index(p)
            located(kw, b.glue, t1, i, t2, j)
        elif kw.text == "collapse":
            e = p.ident("edge id")
            located(e, b.collapse, e.text)
        elif kw.text == "cocycle":
            n = p.ident("cocycle name")
            if n.text in cocycles or n.text == "0":
                p.fail(f"duplicate cocycle {n.text}", n)

            def entry(p):
                t = p.ident("triangle id")
                p.expect("=")
                v = p.next("0 or 1")
                if v.text not in ("0", "1"):
                    p.fail(f"cocycle values are 0 or 1, found {v.text!r}", v)
                return t, int(v.text)
            cocycles[n.text] = (n, _block(p, entry))
        elif kw.text == "distribution":
            n = p.ident("distribution name")
            if n.text in dists:
                p.fail(f"duplicate distribution {n.text}", n)
            tw = p.next("'twist'")
            if tw.text != "twist":
                p.fail(f"expected 'twist', found {tw.text!r}", tw)
            twist = p.ident("cocycle name")

            def row(p):
                t = p.ident("triangle id")
                p.expect("=")
                return t, [p.number()[0] for _ in range(4)]
            dists[n.text] = (n, twist, _block(p, row))
        elif kw.text == "subset":
            n = p.ident("subset name")
            if n.text in subsets:
                p.fail(f"duplicate subset {n.text}", n)
            subsets[n.text] = (n, _block(p, lambda p: p.ident("simplex id")))

    if b is None:
        raise ScenarioSyntaxError("empty scenario file", 1, 1)
    try:
        X = b.build(strict=False)
    except InvalidComplex as exc:
        raise ValidationError(f"complex {name} is invalid: {exc}", exc) from None
    except ComplexError as exc:
        raise ValidationError(f"complex {name} could not be built: {exc}", exc) from None
    return _resolve(name, X, cocycles, dists, subsets)


def _resolve(name, X, cocycles, dists, subsets) -> ScenarioFile:
    out_cocycles = {}
    for cname, (tok, entries) in cocycles.items():
        beta = {}
        for t, v in entries:
            if t.text not in X.triangles:
                raise UnresolvedReference(f"line {t.line}: cocycle {cname} names unknown triangle {t.text}")
            if t.text in beta:
                raise ScenarioSyntaxError(f"triangle {t.text} listed twice", t.line, t.col)
            beta[t.text] = v
        out_cocycles[cname] = coh.normalize2(X, beta)
    out_dists, twists = {}, {}
    for dname, (tok, twist, rows) in dists.items():
        if twist.text != "0" and twist.text not in out_cocycles:
            raise UnresolvedReference(f"line {twist.line}: no cocycle named {twist.text}")
        beta = out_cocycles.get(twist.text, coh.zero2(X))
        tables = {}
        for t, vals in rows:
            if t.text not in X.triangles:
                raise UnresolvedReference(
                    f"line {t.line}: distribution {dname} names unknown triangle {t.text}")
            if t.text in tables:
                raise ScenarioSyntaxError(f"triangle {t.text} listed twice", t.line, t.col)
            tables[t.text] = vals
        try:
            out_dists[dname] = TwistedDistribution.make(X, beta, tables)
        except (InvalidDistribution, MismatchedComplex) as exc:
            raise ValidationError(f"line {tok.line}: distribution {dname}: {exc}", exc) from None
        twists[dname] = twist.text
    out_subsets = {}
    for sname, (tok, ids) in subsets.items():
        verts, edges, tris = [], [], []
        for t in ids:
            if t.text in X.triangles:
                tris.append(t.text)
            elif t.text in X.edges:
                edges.append(t.text)
            elif t.text in X.vertices:
                verts.append(t.text)
            else:
                raise UnresolvedReference(f"line {t.line}: subset {sname} names unknown simplex {t.text}")
        out_subsets[sname] = SimplicialSubset.generated(X, edges, tris, verts)
    return ScenarioFile(name, X, out_cocycles, out_dists, twists, out_subsets)


def render(sf: ScenarioFile) -> str:
    """Canonical text for a scenario; ``parse(render(sf)) == sf``."""
    X = sf.complex
    lines = [f"scenario {sf.name}", "vertex " + " ".join(X.vertices)]
    for e, ed in X.edges.items():
        if ed.degenerate:
            lines.append(f"edge {e} : collapsed({ed.src})")
        else:
            lines.append(f"edge {e} : {ed.src} -> {ed.tgt}")
    for t, (d0, d1, d2) in X.triangles.items():
        lines.append(f"triangle {t} : d0={d0} d1={d1} d2={d2}")
    for cname, beta in sf.cocycles.items():
        ones = " ".join(f"{t}=1" for t, v in beta.items() if v)
        lines.append(f"cocycle {cname} {{ {ones} }}" if ones else f"cocycle {cname} {{ }}")
    for dname, p in sf.distributions.items():
        lines.append(f"distribution {dname} twist {sf.twists.get(dname, '0')} {{")
        for t, tab in p.tables.items():
            lines.append(f"  {t} = " + " ".join(str(v) for v in tab))
        lines.append("}")
    for sname, Z in sf.subsets.items():
        ids = sorted(Z.vertices) + sorted(Z.edges) + sorted(Z.triangles)
        lines.append(f"subset {sname} {{ {' '.join(ids)} }}")
    return "\n".join(lines) + "\n"


def from_complex(X: SimplicialSet2, cocycles=None, distributions=None, twists=None) -> ScenarioFile:
    return ScenarioFile(X.name, X, dict(cocycles or {}), dict(distributions or {}),
                        dict(twists or {}), {})


def load(path: str) -> ScenarioFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
