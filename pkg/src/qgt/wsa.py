"""Weighted surface algebras: relation emission, construction and basis checks."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

from .algebra import FDAlgebra, NotAdmissible, default_cap, gabriel_quiver, quotient_algebra
from .linalg import rank
from .paths import Path, PathExpr, stationary
from .quiver import FPermutation, Quiver, find_isomorphism, spherical_triangulation_quiver, triangle_triangulation_quiver
from .scalars import QQ


class InvalidSpec(ValueError):
    pass


class BasisMismatch(AssertionError):
    def __init__(self, vertex, msg):
        super().__init__(f"vertex {vertex}: {msg}")
        self.vertex = vertex


def _per_orbit(fperm: FPermutation, values, default, what):
    """Normalise weights/parameters to a dict keyed by g-orbit tuples.

    ``values`` may be keyed by orbit tuples or by arrow names; in the latter
    case every arrow given must agree with the others in its orbit.
    """
    out = {}
    values = dict(values or {})
    for orb in fperm.g_orbits():
        if orb in values:
            out[orb] = values[orb]
            continue
        given = {values[a] for a in orb if a in values}
        if len(given) > 1:
            raise InvalidSpec(f"{what} is not constant on the g-orbit {orb}: {sorted(map(str, given))}")
        if given:
            out[orb] = given.pop()
        elif default is not None:
            out[orb] = default
        else:
            raise InvalidSpec(f"no {what} for g-orbit {orb}")
    unknown = [k for k in values if not (isinstance(k, tuple) and k in out) and not (isinstance(k, str) and k in fperm.f)]
    if unknown:
        raise InvalidSpec(f"{what} given for unknown keys {unknown}")
    return out


@dataclass(frozen=True)
class WSASpec:
    quiver: Quiver
    fperm: FPermutation
    m: dict  # g-orbit -> int
    c: dict  # g-orbit -> scalar
    b: dict = dc_field(default_factory=dict)  # border vertex -> scalar

    @classmethod
    def make(cls, quiver, fperm, m=None, c=None, b=None, field=QQ):
        m = _per_orbit(fperm, m, 1, "weight m")
        c = {k: field(v) for k, v in _per_orbit(fperm, c, 1, "parameter c").items()}
        spec = cls(quiver, fperm, m, c, {v: field(x) for v, x in (b or {}).items()})
        spec.validate()
        return spec

    def validate(self):
        for orb, w in self.m.items():
            if int(w) != w or w < 1:
                raise InvalidSpec(f"weight {w} on {orb} is not a positive integer")
            if w * len(orb) < 2:
                raise InvalidSpec(f"m*n = {w * len(orb)} < 2 on the g-orbit {orb}")
        for orb, x in self.c.items():
            if not x:
                raise InvalidSpec(f"parameter c vanishes on {orb}")
        border = set(self.border_vertices())
        for v in self.b:
            if v not in border:
                raise InvalidSpec(f"border value at non-border vertex {v}")

    # --- orbit data -------------------------------------------------------

    def orbit(self, a):
        return self.fperm.g_orbit_of(a)

    def weight(self, a) -> int:
        return self.m[self.orbit(a)]

    def param(self, a):
        return self.c[self.orbit(a)]

    def n(self, a) -> int:
        return len(self.orbit(a))

    def q(self, a) -> int:
        """m_a * n_a."""
        return self.weight(a) * self.n(a)

    def f(self, a):
        return self.fperm.f[a]

    def g(self, a):
        return self.fperm.g[a]

    def bar(self, a):
        return self.fperm.bar[a]

    def is_type1_loop(self, a) -> bool:
        return self.fperm.f[a] == a

    def border_vertices(self):
        return tuple(sorted({self.quiver.source(a) for a in self.fperm.f if self.fperm.f[a] == a}))

    def border(self, v):
        return self.b.get(v, 0)

    def is_virtual(self, a) -> bool:
        return self.q(a) == 2

    def with_weights(self, m=None, c=None, b=None):
        """Copy with some weights/parameters replaced (keys: arrows or orbits)."""

        def upd(base, new):
            out = dict(base)
            for k, v in (new or {}).items():
                out[k if isinstance(k, tuple) else self.orbit(k)] = v
            return out

        spec = WSASpec(self.quiver, self.fperm, upd(self.m, m), upd(self.c, c), dict(self.b if b is None else b))
        spec.validate()
        return spec


@dataclass(frozen=True)
class GOrbitPaths:
    A: Path
    B: Path
    theta: dict


def _g_walk(spec: WSASpec, a, length) -> Path:
    if length == 0:
        return stationary(spec.quiver.source(a))
    arrows = [a]
    while len(arrows) < length:
        arrows.append(spec.g(arrows[-1]))
    q = spec.quiver
    return Path(q.source(arrows[0]), q.target(arrows[-1]), tuple(arrows))


def A_path(spec: WSASpec, a) -> Path:
    return _g_walk(spec, a, spec.q(a) - 1)


def B_path(spec: WSASpec, a) -> Path:
    return _g_walk(spec, a, spec.q(a))


def g_orbit_paths(spec: WSASpec, a, ks=()) -> GOrbitPaths:
    return GOrbitPaths(A_path(spec, a), B_path(spec, a), {k: _g_walk(spec, a, k) for k in ks})


def virtual_arrows(spec: WSASpec) -> dict:
    """{arrow: "loop" | "2-cycle"} for every virtual arrow."""
    out = {}
    for a in spec.quiver.arrow_names:
        if spec.is_virtual(a):
            src, tgt = spec.quiver.source(a), spec.quiver.target(a)
            out[a] = "loop" if src == tgt else "2-cycle"
    return out


def _p(spec, *arrows) -> Path:
    q = spec.quiver
    return Path(q.source(arrows[0]), q.target(arrows[-1]), tuple(arrows))


def labeled_relations(spec: WSASpec, trace=None):
    """[(kind, arrow, PathExpr)] with kind in {"1", "1'", "2", "3"}.

    Suppressed zero relations are recorded in ``trace`` (a list) with the
    clause that suppressed them.
    """
    out = []
    virt = spec.is_virtual
    for a in spec.quiver.arrow_names:
        f, g, bar = spec.f, spec.g, spec.bar
        abar = bar(a)
        if spec.is_type1_loop(a):
            e = PathExpr.of(_p(spec, a, a)) - PathExpr.of(A_path(spec, abar), spec.param(abar))
            bv = spec.border(spec.quiver.source(a))
            if bv:
                e = e - PathExpr.of(B_path(spec, a), bv)
            out.append(("1'", a, e))
        else:
            e = PathExpr.of(_p(spec, a, f(a))) - PathExpr.of(A_path(spec, abar), spec.param(abar))
            out.append(("1", a, e))
    for a in spec.quiver.arrow_names:
        f, g, bar = spec.f, spec.g, spec.bar
        w = _p(spec, a, f(a), g(f(a)))
        if virt(f(f(a))):
            _note(trace, "2", a, w, "f^2(a) is virtual")
        elif virt(f(bar(a))) and spec.q(bar(a)) == 3:
            _note(trace, "2", a, w, "f(bar a) is virtual and m n of bar a is 3")
        else:
            out.append(("2", a, PathExpr.of(w)))
    for a in spec.quiver.arrow_names:
        f, g = spec.f, spec.g
        w = _p(spec, a, g(a), f(g(a)))
        if virt(f(a)):
            _note(trace, "3", a, w, "f(a) is virtual")
        elif virt(f(f(a))) and spec.q(f(a)) == 3:
            _note(trace, "3", a, w, "f^2(a) is virtual and m n of f(a) is 3")
        else:
            out.append(("3", a, PathExpr.of(w)))
    return out


def _note(trace, kind, a, w, why):
    if trace is not None:
        trace.append(f"({kind}) for {a}: {w} suppressed since {why}")


def wsa_relations(spec: WSASpec, trace=None):
    return [e for _, _, e in labeled_relations(spec, trace)]


def wsa_cap(spec: WSASpec) -> int:
    return default_cap(2 * max(spec.q(a) for a in spec.quiver.arrow_names) + 4)


def build_wsa(spec: WSASpec, field=QQ, cap=None) -> FDAlgebra:
    # virtual arrows give length-1 terms on purpose; the algebra records them
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAdmissible)
        return quotient_algebra(spec.quiver, wsa_relations(spec), field, cap or wsa_cap(spec))


# --- checks -------------------------------------------------------------------


def predicted_basis(spec: WSASpec, v):
    """The predicted monomial basis of e_v Lambda.

    Two non-virtual arrows a, abar at v: all initial submonomials of B_a, and
    those of B_abar of length 1 .. q-1. One non-virtual arrow a: the initial
    submonomials of B_a together with a f(a).
    """
    outs = [a for a in spec.quiver.out_arrows(v) if not spec.is_virtual(a)]
    if len(outs) == 2:
        a, b = outs
        paths = [_g_walk(spec, a, k) for k in range(spec.q(a) + 1)]
        paths += [_g_walk(spec, b, k) for k in range(1, spec.q(b))]
        return paths
    if len(outs) == 1:
        (a,) = outs
        paths = [_g_walk(spec, a, k) for k in range(spec.q(a) + 1)]
        return paths + [_p(spec, a, spec.f(a))]
    return [stationary(v)]


def check_projective_bases(a: FDAlgebra, spec: WSASpec, blocks=None) -> dict:
    """Compare each e_v Lambda with the predicted monomial basis.

    Returns {vertex: "2-vertex" | "1-vertex"}; raises BasisMismatch.
    """
    report = {}
    for v in spec.quiver.vertices:
        outs = [x for x in spec.quiver.out_arrows(v) if not spec.is_virtual(x)]
        pred = predicted_basis(spec, v)
        if len(outs) == 2:
            expect = sum(spec.q(x) for x in outs)
        else:
            expect = spec.q(outs[0]) + 2 if outs else 1
        dim = len(a.basis_from(v))
        if dim != expect:
            raise BasisMismatch(v, f"dim e_vA = {dim}, predicted {expect}")
        vecs = [a.vector(PathExpr.of(p), v) for p in pred]
        if len(pred) != dim or rank(vecs, a.field) != dim:
            raise BasisMismatch(v, "predicted monomials are not a basis")
        report[v] = "2-vertex" if len(outs) == 2 else "1-vertex"
    return report


def socle_identity(a: FDAlgebra, spec: WSASpec, v):
    """(c_a nf(B_a), c_abar nf(B_abar)) for the two arrows at v."""
    x, y = spec.quiver.out_arrows(v)
    bx = a.normal_form(PathExpr.of(B_path(spec, x), spec.param(x)))
    by = a.normal_form(PathExpr.of(B_path(spec, y), spec.param(y)))
    return bx, by


def expected_gabriel_quiver(spec: WSASpec) -> Quiver:
    return spec.quiver.without_arrows(virtual_arrows(spec))


def detect_singular(spec: WSASpec) -> dict:
    flags = {"singular": "Unknown", "family": None}
    sph, sph_f = spherical_triangulation_quiver()
    vmap = find_isomorphism(spec.quiver, sph)
    if vmap is not None and len(spec.fperm.g_orbits()) == 4:
        two = [o for o in spec.fperm.g_orbits() if len(o) == 2]
        if len(two) == 2:
            if all(spec.m[o] == 1 for o in two):
                flags["singular"] = "SphericalSingular"
            else:
                flags["singular"] = "NotSingular"
        flags["family"] = "Spherical"
    tri, _ = triangle_triangulation_quiver()
    if find_isomorphism(spec.quiver, tri) is not None:
        flags["family"] = "TriangleOrDisc"
    return flags
