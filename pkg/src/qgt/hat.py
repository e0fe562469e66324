"""Extension of a biregular algebra to an algebra on a 2-regular quiver.

Each V2 block a -> c -> b -> d -> a gains a 2-cycle xi: c -> d, mu: d -> c,
and each V1 block x -> y -> x gains a loop rho at y. With trivial weights
the new arrows become redundant and the base algebra is recovered.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import FDAlgebra, default_cap, gabriel_quiver, quotient_algebra
from .blocks import BlockDecomposition, assemble_from_blocks, locate_one_vertex_blocks
from .homology import ModuleMap, UnsupportedCase, wsa_middle_maps
from .linalg import NotInSpan, rank, solve_membership
from .paths import Path, PathExpr, stationary
from .quiver import Arrow, FPermutation, Quiver, derive_bar_and_g, is_isomorphic, orbits, validate_regularity
from .scalars import QQ
from .wsa import WSASpec


class ExcludedQuiver(ValueError):
    pass


class InvalidWeights(ValueError):
    pass


class IsoCheckFailed(AssertionError):
    pass


class SocleMismatch(AssertionError):
    pass


class NotSymmetric(AssertionError):
    def __init__(self, x, y, msg="t(xy) != t(yx)"):
        super().__init__(f"{msg}: x = {x}, y = {y}")
        self.witness = (x, y)


class Degenerate(AssertionError):
    def __init__(self, x, msg="Gram matrix is singular"):
        super().__init__(f"{msg}; kernel vector {x}")
        self.witness = x


@dataclass(frozen=True)
class HatSpec:
    """Biregular quiver Q with its V1/V2 blocks, the permutation g of Q's
    arrows, weights m and parameters c on g-orbits of Q, and the new weights
    (one per V2 block, one per V1 block) with the names of the added arrows."""

    quiver: Quiver
    blocks: BlockDecomposition
    g: dict
    m: dict
    c: dict
    v2_weights: tuple
    v1_weights: tuple
    v2_names: tuple  # (xi, mu) per V2 block
    v1_names: tuple  # rho per V1 block
    b: dict = dc_field(default_factory=dict)

    def validate(self):
        for w in self.v2_weights:
            if int(w) != w or w < 1:
                raise InvalidWeights(f"V2 weight {w} is not a positive integer")
        for w in self.v1_weights:
            if int(w) != w or w < 1:
                raise InvalidWeights(f"V1 weight {w} is not a positive integer")
        if len(self.v2_weights) != self.blocks.p or len(self.v1_weights) != self.blocks.q:
            raise InvalidWeights("one weight per V2 block and one per V1 block is needed")
        names = set(self.quiver.arrow_names)
        new = [x for pair in self.v2_names for x in pair] + list(self.v1_names)
        if len(set(new)) != len(new) or names & set(new):
            raise InvalidWeights("names of added arrows clash")
        if set(self.g) != names or set(self.g.values()) != names:
            raise InvalidWeights("g is not a permutation of the arrows of Q")

    @property
    def is_admissible(self) -> bool:
        return all(w >= 2 for w in self.v2_weights) and all(w >= 3 for w in self.v1_weights)

    @property
    def is_trivial(self) -> bool:
        return all(w == 1 for w in self.v2_weights) and all(w == 2 for w in self.v1_weights)

    def with_weights(self, v2=None, v1=None):
        spec = HatSpec(
            self.quiver, self.blocks, self.g, self.m, self.c,
            tuple(v2 if v2 is not None else self.v2_weights),
            tuple(v1 if v1 is not None else self.v1_weights),
            self.v2_names, self.v1_names, self.b,
        )
        spec.validate()
        return spec

    def g_orbit(self, a):
        for o in orbits(self.g):
            if a in o:
                return o
        raise KeyError(a)


def _check_not_spherical(q: Quiver):
    from .quiver import spherical_quiver

    if is_isomorphic(q, spherical_quiver()):
        raise ExcludedQuiver("the spherical quiver Q^S is handled by the higher spherical algebras")


def hat_quiver(spec: HatSpec):
    """(Q-hat, FPermutation) with f = bar . g extended by the new orbits."""
    q = spec.quiver
    extra = []
    g = dict(spec.g)
    for blk, (xi, mu) in zip(spec.blocks.v2_blocks, spec.v2_names):
        _, c, _, d = blk.vertices
        extra += [Arrow(xi, c, d), Arrow(mu, d, c)]
        g[xi], g[mu] = mu, xi
    for blk, rho in zip(spec.blocks.v1_blocks, spec.v1_names):
        _, y = blk.vertices
        extra.append(Arrow(rho, y, y))
        g[rho] = rho
    hq = q.with_arrows(extra)
    rep = validate_regularity(hq)
    if not rep.is_2regular:
        raise InvalidWeights("the extended quiver is not 2-regular")
    bar = {}
    for v in hq.vertices:
        x, y = hq.out_arrows(v)
        bar[x], bar[y] = y, x
    f = {a: bar[g[a]] for a in g}
    fperm = derive_bar_and_g(hq, f)
    for a in f:
        if f[f[f[a]]] != a:
            raise InvalidWeights(f"f does not have order dividing 3 at {a}")
    return hq, fperm


def to_wsa_spec(spec: HatSpec, field=QQ) -> WSASpec:
    """The weighted surface algebra data on Q-hat (c = 1 on the new orbits)."""
    hq, fperm = hat_quiver(spec)
    m, c = {}, {}
    for o, w in spec.m.items():
        m[fperm.g_orbit_of(o[0])] = w
    for o, x in spec.c.items():
        c[fperm.g_orbit_of(o[0])] = field(x)
    for (xi, _), w in zip(spec.v2_names, spec.v2_weights):
        m[fperm.g_orbit_of(xi)] = w
        c[fperm.g_orbit_of(xi)] = field(1)
    for rho, w in zip(spec.v1_names, spec.v1_weights):
        m[fperm.g_orbit_of(rho)] = w
        c[fperm.g_orbit_of(rho)] = field(1)
    return WSASpec(hq, fperm, m, c, dict(spec.b))


# --- relations ---------------------------------------------------------------


def _arrow(q, a) -> PathExpr:
    return PathExpr.of(Path(q.source(a), q.target(a), (a,)))


def _word(q, *arrows) -> PathExpr:
    return PathExpr.of(Path(q.source(arrows[0]), q.target(arrows[-1]), tuple(arrows)))


def hat_relations(spec: HatSpec, field=QQ) -> dict:
    """{"R0": [...], "R1": [...], "R2": [...]} generating the ideal of the extension."""
    spec.validate()
    ws = to_wsa_spec(spec, field)
    hq = ws.quiver
    rep = validate_regularity(spec.quiver)
    two = set(rep.two_vertices)
    from .wsa import A_path, B_path

    def bold_a(x):
        return PathExpr.of(A_path(ws, x), ws.param(x))

    def other_in(v, a):
        (o,) = [x for x in hq.in_arrows(v) if x != a]
        return o

    r0 = []
    for a in spec.quiver.arrow_names:
        s, t = spec.quiver.source(a), spec.quiver.target(a)
        if s not in two or t not in two:
            continue
        if ws.is_type1_loop(a):
            e = _word(hq, a, a) - bold_a(ws.bar(a))
            if ws.border(s):
                e = e - PathExpr.of(B_path(ws, a), ws.border(s))
        else:
            e = _word(hq, a, ws.f(a)) - bold_a(ws.bar(a))
        r0.append(e)
    r1 = []
    for blk, (xi, mu), mi in zip(spec.blocks.v2_blocks, spec.v2_names, spec.v2_weights):
        al, be, nu, de = blk.arrows
        a_, c_, b_, d_ = blk.vertices
        albar, nubar = ws.bar(al), ws.bar(nu)
        xm = _word(hq, *([xi, mu] * (mi - 1) + [xi]))
        mx = _word(hq, *([mu, xi] * (mi - 1) + [mu]))
        r1 += [
            _word(hq, al, xi) - bold_a(albar),
            _word(hq, xi, de) - bold_a(be),
            _word(hq, de, al) - mx,
            _word(hq, nu, mu) - bold_a(nubar),
            _word(hq, mu, be) - bold_a(de),
            _word(hq, be, nu) - xm,
            _word(hq, xi, de, albar),
            _word(hq, mu, be, nubar),
            _word(hq, al, xi, mu),
            _word(hq, nu, mu, xi),
            _word(hq, xi, mu, be),
            _word(hq, mu, xi, de),
            _word(hq, other_in(a_, de), al, xi),
            _word(hq, other_in(b_, be), nu, mu),
        ]
    r2 = []
    for blk, rho, mj in zip(spec.blocks.v1_blocks, spec.v1_names, spec.v1_weights):
        eps, eta = blk.arrows
        x_, y_ = blk.vertices
        rho_pow = _word(hq, *([rho] * (mj - 1))) if mj > 1 else PathExpr.of(stationary(y_))
        r2 += [
            _word(hq, eps, rho) - bold_a(ws.bar(eps)),
            _word(hq, rho, eta) - bold_a(eta),
            _word(hq, eta, eps) - rho_pow,
            _word(hq, rho, eta, ws.bar(eps)),
            _word(hq, eps, rho, rho),
            _word(hq, rho, rho, eta),
            _word(hq, other_in(x_, eta), eps, rho),
        ]
    return {"R0": r0, "R1": r1, "R2": r2}


def build_hat(spec: HatSpec, field=QQ, cap=None) -> FDAlgebra:
    import warnings

    from .algebra import NotAdmissible
    from .wsa import wsa_cap

    rels = hat_relations(spec, field)
    ws = to_wsa_spec(spec, field)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAdmissible)
        return quotient_algebra(ws.quiver, rels["R0"] + rels["R1"] + rels["R2"], field, cap or wsa_cap(ws))


# --- constructing hat data ----------------------------------------------------


def _default_names(q: Quiver, p, k):
    taken = set(q.arrow_names)
    v2, v1 = [], []
    for i in range(1, p + 1):
        xi, mu = f"xi{i}", f"mu{i}"
        while xi in taken or mu in taken:
            xi, mu = xi + "_", mu + "_"
        v2.append((xi, mu))
    for j in range(1, k + 1):
        rho = f"rho{j}"
        while rho in taken:
            rho += "_"
        v1.append(rho)
    return v2, v1


def hat_spec_from_wsa(spec: WSASpec, v2_weights=None, v1_weights=None, pairs=None) -> HatSpec:
    """Read off Q (the Gabriel quiver), its blocks, g and weights from a
    weighted surface algebra whose virtual arrows are removed.

    Virtual arrows that sit exactly where the extension adds arrows keep
    their names, so trivial weights reproduce the input data.
    """
    from .wsa import virtual_arrows

    virt = virtual_arrows(spec)
    q = spec.quiver.without_arrows(virt)
    _check_not_spherical(q)
    blocks = locate_one_vertex_blocks(q, pairs)
    v2n, v1n = _default_names(spec.quiver, blocks.p, blocks.q)
    full = spec.quiver
    for i, blk in enumerate(blocks.v2_blocks):
        _, c, _, d = blk.vertices
        xi = [a for a in virt if full.source(a) == c and full.target(a) == d]
        mu = [a for a in virt if full.source(a) == d and full.target(a) == c]
        if len(xi) == 1 and len(mu) == 1:
            v2n[i] = (xi[0], mu[0])
    for j, blk in enumerate(blocks.v1_blocks):
        _, y = blk.vertices
        rho = [a for a in virt if full.source(a) == y and full.target(a) == y]
        if len(rho) == 1:
            v1n[j] = rho[0]
    g = {a: spec.g(a) for a in q.arrow_names}
    if any(x not in g for x in g.values()):
        raise InvalidWeights("g does not preserve the non-virtual arrows")
    qo = orbits(g)
    m = {o: spec.weight(o[0]) for o in qo}
    c = {o: spec.param(o[0]) for o in qo}
    hs = HatSpec(
        q, blocks, g, m, c,
        tuple(v2_weights or [1] * blocks.p),
        tuple(v1_weights or [2] * blocks.q),
        tuple(v2n), tuple(v1n), {v: x for v, x in spec.b.items()},
    )
    hs.validate()
    return hs


def hat_spec_from_blocks(blocks, pairing, v2_weights, v1_weights, m=None, c=None, field=QQ) -> HatSpec:
    """Biregular Q glued from blocks; g is read off from the f-orbits of the
    blocks together with the triangles around the added arrows."""
    q, _ = assemble_from_blocks(blocks, pairing)
    _check_not_spherical(q)
    dec = BlockDecomposition(tuple(b for b in blocks if b.kind in ("V1", "V2")), tuple(pairing))
    v2n, v1n = _default_names(q, dec.p, dec.q)
    f = {}
    for b in blocks:
        orb = b.f_orbit()
        if orb is None:
            continue
        for k, a in enumerate(orb):
            f[a] = orb[(k + 1) % len(orb)]
    for blk, (xi, mu) in zip(dec.v2_blocks, v2n):
        al, be, nu, de = blk.arrows
        for orb in ((al, xi, de), (nu, mu, be)):
            for k, a in enumerate(orb):
                f[a] = orb[(k + 1) % 3]
    for blk, rho in zip(dec.v1_blocks, v1n):
        eps, eta = blk.arrows
        for k, a in enumerate((eps, rho, eta)):
            f[a] = (eps, rho, eta)[(k + 1) % 3]
    extra = []
    for blk, (xi, mu) in zip(dec.v2_blocks, v2n):
        _, cc, _, d = blk.vertices
        extra += [Arrow(xi, cc, d), Arrow(mu, d, cc)]
    for blk, rho in zip(dec.v1_blocks, v1n):
        extra.append(Arrow(rho, blk.vertices[1], blk.vertices[1]))
    fp = derive_bar_and_g(q.with_arrows(extra), f)
    g = {a: fp.g[a] for a in q.arrow_names}
    qo = orbits(g)
    mm = {o: _lookup(m, o, 1) for o in qo}
    cc_ = {o: field(_lookup(c, o, 1)) for o in qo}
    hs = HatSpec(q, dec, g, mm, cc_, tuple(v2_weights), tuple(v1_weights), tuple(v2n), tuple(v1n))
    hs.validate()
    return hs


def _lookup(values, orbit, default):
    values = values or {}
    if orbit in values:
        return values[orbit]
    got = {values[a] for a in orbit if a in values}
    if len(got) > 1:
        raise InvalidWeights(f"value not constant on the g-orbit {orbit}")
    return got.pop() if got else default


# --- trivial weights ------------------------------------------------------------


@dataclass(frozen=True)
class IsoVerdict:
    substituted: int
    dim: int
    gabriel_equal: bool
    passed: bool = True


def _substitute(expr: PathExpr, sub: dict) -> PathExpr:
    out = PathExpr()
    for p, c in expr.terms.items():
        term = PathExpr.of(stationary(p.source), c)
        for a in p.arrows:
            term = term * sub[a]
        out = out + term
    return out


def check_trivial_weights_iso(base: FDAlgebra, spec: HatSpec, field=None) -> IsoVerdict:
    """Certify that the extension with trivial weights is the base algebra:
    every generator, after xi -> beta.nu, mu -> delta.alpha, rho -> eta.eps,
    vanishes in the base, and dimensions and Gabriel quivers agree."""
    if not spec.is_trivial:
        raise InvalidWeights("weights are not trivial (m_i = 1, m'_j = 2)")
    field = field or base.field
    rels = hat_relations(spec, field)
    hq, _ = hat_quiver(spec)
    sub = {}
    for a in hq.arrow_names:
        if base.quiver.has_arrow(a) and a in spec.quiver.arrow_names:
            sub[a] = _arrow(base.quiver, a)
    for blk, (xi, mu) in zip(spec.blocks.v2_blocks, spec.v2_names):
        al, be, nu, de = blk.arrows
        sub[xi] = _word(base.quiver, be, nu)
        sub[mu] = _word(base.quiver, de, al)
    for blk, rho in zip(spec.blocks.v1_blocks, spec.v1_names):
        eps, eta = blk.arrows
        sub[rho] = _word(base.quiver, eta, eps)
    count = 0
    for part in ("R0", "R1", "R2"):
        for r in rels[part]:
            image = _substitute(r, sub)
            if not base.is_zero(image):
                raise IsoCheckFailed(f"{part} generator {r.format(field)} does not vanish in the base algebra")
            count += 1
    hat = build_hat(spec, field)
    if hat.dim != base.dim:
        raise IsoCheckFailed(f"dimension {hat.dim} differs from the base dimension {base.dim}")
    same = is_isomorphic(gabriel_quiver(hat), gabriel_quiver(base))
    if not same:
        raise IsoCheckFailed("Gabriel quivers differ")
    return IsoVerdict(count, hat.dim, same)


# --- symmetrizing form --------------------------------------------------------------


@dataclass(frozen=True)
class SymmetrizingForm:
    """Linear form on the algebra, stored by its values on the canonical basis."""

    algebra: FDAlgebra
    values: dict  # basis path -> scalar (nonzero only)
    socle_scalars: dict = dc_field(default_factory=dict)  # vertex -> unit relating the two B's

    def __call__(self, x) -> object:
        a = self.algebra
        if isinstance(x, Path):
            terms = a.path_nf(x)
        else:
            terms = a.normal_form(x).terms
        return sum((c * self.values[p] for p, c in terms.items() if p in self.values), a.field(0))

    def gram(self):
        a = self.algebra
        return [[self(p * q) if p.target == q.source else a.field(0) for q in a.basis] for p in a.basis]


def socle_paths(ws: WSASpec, z):
    from .wsa import B_path

    return [(x, B_path(ws, x)) for x in ws.quiver.out_arrows(z)]


def hat_symmetrizing_form(a: FDAlgebra, ws: WSASpec, c_values=None) -> SymmetrizingForm:
    """The form with value 1/c on the socle monomial B and 0 on the remaining
    initial submonomials of B_alpha, B_abar at each vertex.

    ``c_values`` overrides c per arrow (used to build deliberately wrong forms).
    """
    from .wsa import _g_walk

    field = a.field
    values = {}
    ratios = {}
    for z in ws.quiver.vertices:
        outs = ws.quiver.out_arrows(z)
        if len(outs) != 2:
            raise SocleMismatch(f"vertex {z} is not a 2-vertex")
        al, ab = outs
        soc, _ = a.socle_layers(z)
        if len(soc) != 1:
            raise SocleMismatch(f"soc(P_{z}) has dimension {len(soc)}")
        bal = a.normal_form(PathExpr.of(_g_walk(ws, al, ws.q(al))))
        bab = a.normal_form(PathExpr.of(_g_walk(ws, ab, ws.q(ab))))
        svec = a.vector(soc[0], z)
        for bx in (bal, bab):
            v = a.vector(bx, z)
            if not any(v) or rank([svec, v], field) != 1:
                raise SocleMismatch(f"soc(P_{z}) is not spanned by a B-monomial")
        k = next(i for i, x in enumerate(a.vector(bal, z)) if x)
        ratios[z] = a.vector(bab, z)[k] / a.vector(bal, z)[k]
        basis = [_g_walk(ws, al, k) for k in range(ws.q(al) + 1)]
        basis += [_g_walk(ws, ab, k) for k in range(1, ws.q(ab))]
        vecs = [a.vector(PathExpr.of(p), z) for p in basis]
        n = len(a.basis_from(z))
        if len(basis) != n or rank(vecs, field) != n:
            raise SocleMismatch(f"initial submonomials do not form a basis of P_{z}")
        cval = (c_values or {}).get(al, ws.param(al))
        target = [field(0)] * n
        target[ws.q(al)] = field(1) / cval
        cols = [[vecs[r][k] for r in range(n)] for k in range(n)]
        try:
            phi = solve_membership(cols, target, field)
        except NotInSpan:
            raise SocleMismatch(f"cannot solve for the form at {z}") from None
        for p, x in zip(a.basis_from(z), phi):
            if x:
                values[p] = x
    return SymmetrizingForm(a, values, ratios)


@dataclass(frozen=True)
class FormCertificate:
    dim: int
    symmetric: bool
    rank: int


def certify_symmetric_nondegenerate(a: FDAlgebra, t: SymmetrizingForm) -> FormCertificate:
    basis = a.basis
    field = a.field
    gram = [[field(0)] * len(basis) for _ in basis]
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            if p.target == q.source:
                gram[i][j] = t(p * q)
    for i, p in enumerate(basis):
        for j in range(i + 1, len(basis)):
            if gram[i][j] != gram[j][i]:
                raise NotSymmetric(basis[i], basis[j])
    r = rank(gram, field)
    if r != len(basis):
        from .linalg import kernel_basis

        ker = kernel_basis(gram, field)
        witness = PathExpr({basis[k]: x for k, x in enumerate(ker[0]) if x})
        raise Degenerate(witness.format(field))
    return FormCertificate(len(basis), True, r)


# --- resolutions ------------------------------------------------------------------


def classify_vertex(spec: HatSpec, z) -> str:
    """Case label of vertex z for the middle map of the resolution of S_z."""
    rep = validate_regularity(spec.quiver)
    one = set(rep.one_vertices)
    v2_of, v1_of = {}, {}
    for blk in spec.blocks.v2_blocks:
        for v in blk.vertices:
            v2_of[v] = blk
    for blk in spec.blocks.v1_blocks:
        for v in blk.vertices:
            v1_of[v] = blk
    if z in one:
        return "II.2" if z in v1_of and v1_of[z].vertices[1] == z else "II.1"
    hq, _ = hat_quiver(spec)
    sources = [hq.source(a) for a in hq.in_arrows(z)]
    ones = [x for x in sources if x in one]
    if not ones:
        return "I.1"
    if len(ones) == 1:
        return "I.2b" if ones[0] in v1_of else "I.2a"
    kinds = sorted("V1" if x in v1_of else "V2" for x in ones)
    return {("V2", "V2"): "I.3a", ("V1", "V2"): "I.3b", ("V1", "V1"): "I.3c"}[tuple(kinds)]


@dataclass(frozen=True)
class MiddleMaps:
    case: str
    d1: ModuleMap
    d2: ModuleMap
    d3: ModuleMap


def middle_map_catalog(spec: HatSpec, z, field=QQ) -> MiddleMaps:
    case = classify_vertex(spec, z)
    if case == "I.3c":
        raise UnsupportedCase(f"vertex {z}: both neighbouring blocks are V1 (the triangle quiver)")
    d3, d2, d1 = wsa_middle_maps(to_wsa_spec(spec, field), z)
    return MiddleMaps(case, d1, d2, d3)


# --- second socle around blocks ------------------------------------------------------


def block_boundary_paths(q: Quiver, blocks: BlockDecomposition):
    """Length-3 paths around every V2 block and eta.eps.eta, eps.eta.eps at every V1 block."""
    out = []
    for blk in blocks.v2_blocks:
        arr = blk.arrows
        for k in range(4):
            out.append(Path(q.source(arr[k]), q.target(arr[(k + 2) % 4]), tuple(arr[(k + j) % 4] for j in range(3))))
    for blk in blocks.v1_blocks:
        eps, eta = blk.arrows
        out.append(Path(q.source(eta), q.target(eta), (eta, eps, eta)))
        out.append(Path(q.source(eps), q.target(eps), (eps, eta, eps)))
    return out


def second_socle_check(a: FDAlgebra, q: Quiver, blocks: BlockDecomposition) -> dict:
    """{path: True if the path lies in the second socle of its projective}."""
    cache = {}
    out = {}
    for p in block_boundary_paths(q, blocks):
        if p.source not in cache:
            cache[p.source] = a.socle_layers(p.source)[1]
        out[p] = a.in_span(PathExpr.of(p), cache[p.source])
    return out


def hat_spec_from_quiver(q: Quiver, g_orbits, m=None, c=None, v2_weights=None, v1_weights=None, field=QQ, pairs=None) -> HatSpec:
    """Biregular Q given directly with the g-orbits of its arrows."""
    _check_not_spherical(q)
    g = {}
    for orb in g_orbits:
        for k, a in enumerate(orb):
            g[a] = orb[(k + 1) % len(orb)]
    blocks = locate_one_vertex_blocks(q, pairs)
    v2n, v1n = _default_names(q, blocks.p, blocks.q)
    qo = orbits(g)
    hs = HatSpec(
        q, blocks, g,
        {o: _lookup(m, o, 1) for o in qo},
        {o: field(_lookup(c, o, 1)) for o in qo},
        tuple(v2_weights or [1] * blocks.p),
        tuple(v1_weights or [2] * blocks.q),
        tuple(v2n), tuple(v1n),
    )
    hs.validate()
    return hs
