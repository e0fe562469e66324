"""Paths in a quiver and exact linear combinations of paths."""

from __future__ import annotations

import re
from typing import NamedTuple

from .scalars import QQ, ScalarParseError


class Path(NamedTuple):
    """A path; arrows are composed left to right (``a.b`` means a then b)."""

    source: int
    target: int
    arrows: tuple

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __mul__(self, other: "Path"):
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e({self.source})"
        return ".".join(self.arrows)


def stationary(v) -> Path:
    return Path(v, v, ())


def path_of(q, arrows) -> Path:
    """Path along the given arrow names in quiver ``q``."""
    if isinstance(arrows, str):
        arrows = arrows.split(".")
    arrows = tuple(arrows)
    if not arrows:
        raise ValueError("use stationary() for paths of length 0")
    for x, y in zip(arrows, arrows[1:]):
        if q.target(x) != q.source(y):
            raise ValueError(f"arrows {x} and {y} do not compose")
    return Path(q.source(arrows[0]), q.target(arrows[-1]), arrows)


def path_key(p: Path):
    return (len(p.arrows), p.arrows)


class PathExpr:
    """Finite linear combination of paths with nonzero exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for p, c in dict(terms).items():
                if c:
                    self.terms[p] = self.terms.get(p, 0) + c
                    if not self.terms[p]:
                        del self.terms[p]

    @classmethod
    def of(cls, path: Path, coef=1):
        return cls({path: coef})

    def copy(self):
        e = PathExpr()
        e.terms = dict(self.terms)
        return e

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, PathExpr):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, p: Path):
        return self.terms.get(p, 0)

    def paths(self):
        return sorted(self.terms, key=path_key)

    def __add__(self, other):
        r = self.copy()
        for p, c in other.terms.items():
            v = r.terms.get(p, 0) + c
            if v:
                r.terms[p] = v
            else:
                r.terms.pop(p, None)
        return r

    def __neg__(self):
        e = PathExpr()
        e.terms = {p: -c for p, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        if not k:
            return PathExpr()
        e = PathExpr()
        e.terms = {p: k * c for p, c in self.terms.items()}
        return e

    def __rmul__(self, k):
        return self.scale(k)

    def __mul__(self, other):
        if isinstance(other, Path):
            other = PathExpr.of(other)
        if not isinstance(other, PathExpr):
            return self.scale(other)
        out = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                pq = p * q
                if pq is None:
                    continue
                v = out.get(pq, 0) + c * d
                if v:
                    out[pq] = v
                else:
                    out.pop(pq, None)
        e = PathExpr()
        e.terms = out
        return e

    def endpoints(self):
        return {(p.source, p.target) for p in self.terms}

    def min_length(self) -> int:
        return min(p.length for p in self.terms)

    def max_length(self) -> int:
        return max(p.length for p in self.terms)

    def rename(self, mapping: dict, q=None):
        """Substitute arrow names; arrows missing from ``mapping`` are kept."""
        e = PathExpr()
        for p, c in self.terms.items():
            arrows = tuple(mapping.get(a, a) for a in p.arrows)
            e = e + PathExpr.of(Path(p.source, p.target, arrows), c)
        return e

    def format(self, field=QQ) -> str:
        return format_path_expr(self, field)

    def __repr__(self):
        return f"PathExpr({format_path_expr(self)})"


def format_path_expr(e: PathExpr, field=QQ) -> str:
    if not e.terms:
        return "0"
    parts = []
    for p in e.paths():
        c = e.terms[p]
        s = field.format(c)
        neg = s.startswith("-")
        mag = s[1:] if neg else s
        body = str(p) if mag == "1" else f"{mag} * {p}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?(e\(\s*[-0-9]+\s*\)|[A-Za-z_][A-Za-z0-9_']*(?:\.[A-Za-z_][A-Za-z0-9_']*)*)\s*")


class PathExprParseError(ValueError):
    pass


def parse_path_expr(text: str, q, field=QQ) -> PathExpr:
    """Parse terms like ``"2 * a.b - 1/3 * c.d.e + e(1)"``."""
    s = text.replace("−", "-").strip()
    if s == "0":
        return PathExpr()
    pos, out, first = 0, PathExpr(), True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PathExprParseError(f"cannot parse {s[pos:]!r}")
        sign, coef, body = m.groups()
        if not sign and not first:
            raise PathExprParseError(f"missing operator before {body!r}")
        try:
            c = field(coef) if coef else field(1)
        except ScalarParseError as exc:
            raise PathExprParseError(str(exc)) from None
        if sign == "-":
            c = -c
        if body.startswith("e("):
            v = int(body[2:-1])
            if v not in q.vertices:
                raise PathExprParseError(f"unknown vertex {v}")
            p = stationary(v)
        else:
            try:
                p = path_of(q, body)
            except (KeyError, ValueError) as exc:
                raise PathExprParseError(str(exc)) from None
        out = out + PathExpr.of(p, c)
        pos = m.end()
        first = False
    return out
