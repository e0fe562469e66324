"""One-parameter families of weighted surface algebras.

Arrows get degrees u(a) = M / q(a), where q(a) = m_a n_a and M is the least
common multiple of the q-values. Rescaling every arrow a by t^u(a) turns each
relation a f(a) - c A into a f(a) - c t^v(a) A; at t = 0 only the monomial
parts survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .algebra import FDAlgebra, quotient_algebra
from .paths import Path, PathExpr
from .quiver import find_isomorphism, tetrahedral_triangulation_quiver, validate_regularity
from .scalars import QQ
from .wsa import B_path, WSASpec, labeled_relations, wsa_cap


class NonIntegralExponent(ArithmeticError):
    pass


class NegativeExponent(ArithmeticError):
    pass


@dataclass(frozen=True)
class DegreeData:
    q: dict
    M: int
    u: dict
    v: dict

    def degree(self, path) -> int:
        return sum(self.u[a] for a in path.arrows)


def _as_wsa(spec) -> WSASpec:
    if isinstance(spec, WSASpec):
        return spec
    from .hat import HatSpec, to_wsa_spec

    if isinstance(spec, HatSpec):
        return to_wsa_spec(spec)
    raise TypeError(f"expected WSASpec or HatSpec, got {type(spec).__name__}")


def degree_data(spec) -> DegreeData:
    ws = _as_wsa(spec)
    arrows = ws.quiver.arrow_names
    q = {a: ws.q(a) for a in arrows}
    M = lcm(*q.values())
    u = {a: M // q[a] for a in arrows}
    v = {}
    for a in arrows:
        f1 = ws.f(a)
        f2 = ws.f(f1)
        val = M * (1 - Fraction(1, q[a]) - Fraction(1, q[f1]) - Fraction(1, q[f2]))
        if val.denominator != 1:
            raise NonIntegralExponent(f"v({a}) = {val} is not an integer")
        v[a] = int(val)
    return DegreeData(q, M, u, v)


@dataclass(frozen=True)
class FamilyRelations:
    """Relations of the rescaled algebra at one value of t.

    ``scaled`` holds the images of the defining relations (termwise equal to
    them at t = 1); ``socle`` holds c_a B_a - c_abar B_abar per vertex, which
    lie in the ideal for every t != 0 and keep the dimension constant at t = 0.
    """

    t: object
    scaled: tuple
    socle: tuple

    @property
    def all(self):
        return self.scaled + self.socle


def _power(t, e, field):
    if e < 0:
        if not t:
            raise NegativeExponent(f"t = 0 with exponent {e}")
        return field(1) / _power(t, -e, field)
    out = field(1)
    for _ in range(e):
        out = out * t
    return out


def family_relations(spec, t, dd: DegreeData | None = None, field=QQ) -> FamilyRelations:
    ws = _as_wsa(spec)
    dd = dd or degree_data(ws)
    t = field(t)
    scaled = []
    for kind, a, expr in labeled_relations(ws):
        if kind in ("1", "1'"):
            head = dd.u[a] + dd.u[ws.f(a)]
            out = PathExpr()
            for p, c in expr.terms.items():
                out = out + PathExpr.of(p, c * _power(t, dd.degree(p) - head, field))
            scaled.append(out)
        else:
            scaled.append(expr)
    socle = []
    for z in ws.quiver.vertices:
        x, y = ws.quiver.out_arrows(z)
        e = PathExpr.of(B_path(ws, x), ws.param(x)) - PathExpr.of(B_path(ws, y), ws.param(y))
        if e:
            socle.append(e)
    return FamilyRelations(t, tuple(scaled), tuple(socle))


def build_family(spec, t, field=QQ, cap=None) -> FDAlgebra:
    import warnings

    from .algebra import NotAdmissible

    ws = _as_wsa(spec)
    rels = family_relations(ws, t, field=field)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAdmissible)
        return quotient_algebra(ws.quiver, list(rels.all), field, cap or wsa_cap(ws))


@dataclass(frozen=True)
class BiserialVerdict:
    passed: bool
    right_violations: tuple  # (a, [b, ...]) with several nonzero a.b
    left_violations: tuple  # (a, [c, ...]) with several nonzero c.a
    degree_violations: tuple  # vertices with more than two in- or out-arrows
    surviving: tuple  # all (a, b) with a.b nonzero


def special_biserial_check(a: FDAlgebra) -> BiserialVerdict:
    q = a.quiver
    nonzero = []
    for x in q.arrow_names:
        for y in q.out_arrows(q.target(x)):
            if a.path_nf(Path(q.source(x), q.target(y), (x, y))):
                nonzero.append((x, y))
    right, left = {}, {}
    for x, y in nonzero:
        right.setdefault(x, []).append(y)
        left.setdefault(y, []).append(x)
    rv = tuple((x, tuple(ys)) for x, ys in sorted(right.items()) if len(ys) > 1)
    lv = tuple((y, tuple(xs)) for y, xs in sorted(left.items()) if len(xs) > 1)
    dv = tuple(v for v in q.vertices if len(q.in_arrows(v)) > 2 or len(q.out_arrows(v)) > 2)
    return BiserialVerdict(not (rv or lv or dv), rv, lv, dv, tuple(nonzero))


@dataclass(frozen=True)
class ObstructionReport:
    nonpositive: tuple  # arrows with v <= 0
    tetrahedral: bool
    contradiction: str | None
    applies: bool = True  # the argument assumes q >= 3 on every arrow


def tetrahedral_obstruction(spec) -> ObstructionReport:
    """Arrows with v <= 0, and whether they come from the tetrahedral quiver
    with all q-values equal to 3 (the only configuration where this happens)."""
    ws = _as_wsa(spec)
    dd = degree_data(ws)
    bad = tuple(a for a in ws.quiver.arrow_names if dd.v[a] <= 0)
    if not bad:
        return ObstructionReport((), False, None)
    tq, _ = tetrahedral_triangulation_quiver()
    is_tet = find_isomorphism(ws.quiver, tq) is not None and all(x == 3 for x in dd.q.values())
    if min(dd.q.values()) < 3:
        return ObstructionReport(bad, is_tet, None, applies=False)
    msg = None
    if not is_tet:
        qs = sorted({dd.q[a] for a in bad})
        msg = f"arrows {list(bad)} have v <= 0 with q-values {qs} outside the tetrahedral configuration"
    return ObstructionReport(bad, is_tet, msg)


def has_one_vertex(q) -> bool:
    return bool(validate_regularity(q).one_vertices)
