"""Right modules, projective covers, syzygies, periods of simples and
verification of four-term exact sequences P_z -> P^- -> P^+ -> P_z."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .linalg import kernel_with_free_columns, matmul, rank
from .paths import Path, PathExpr, stationary


class ZeroModule(ValueError):
    pass


class NotAComplex(AssertionError):
    pass


class NotExact(AssertionError):
    pass


class ShapeMismatch(ValueError):
    pass


def _zeros(r, c, field):
    z = field(0)
    return [[z] * c for _ in range(r)]


@dataclass(frozen=True)
class RightModule:
    """Fibres M e_v with dimensions ``dims`` and, for each arrow a: s -> t,
    a matrix ``action[a]`` (dims[t] x dims[s]) giving m -> m.a on columns."""

    algebra: object
    dims: dict
    action: dict

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    @property
    def field(self):
        return self.algebra.field

    def support(self):
        return tuple(v for v, d in self.dims.items() if d)

    def act(self, vec, path: Path):
        """vec in the fibre at path.source, pushed along the path."""
        for a in path.arrows:
            m = self.action[a]
            vec = [sum((x * y for x, y in zip(row, vec) if x and y), self.field(0)) for row in m]
        return vec

    def act_expr(self, vec, expr: PathExpr, target):
        out = [self.field(0)] * self.dims[target]
        for p, c in expr.terms.items():
            w = self.act(vec, p)
            out = [x + c * y for x, y in zip(out, w)]
        return out

    def relations_act_trivially(self) -> bool:
        q = self.algebra.quiver
        for r in self.algebra.relations:
            (s, t), = r.endpoints()
            for k in range(self.dims[s]):
                e = [self.field(int(i == k)) for i in range(self.dims[s])]
                if any(self.act_expr(e, r, t)):
                    return False
        return True

    def is_simple_at(self, i) -> bool:
        return self.dim == 1 and self.dims.get(i, 0) == 1


def simple_module(a, i) -> RightModule:
    dims = {v: int(v == i) for v in a.quiver.vertices}
    act = {x.name: _zeros(dims[x.target], dims[x.source], a.field) for x in a.quiver.arrows}
    return RightModule(a, dims, act)


def projective_module(a, i) -> RightModule:
    dims = {v: len(a.basis_between(i, v)) for v in a.quiver.vertices}
    act = {x.name: a.right_mult_matrix(i, x.name) for x in a.quiver.arrows}
    return RightModule(a, dims, act)


@dataclass(frozen=True)
class ProjectiveCover:
    """Map from a direct sum of projectives P_{v_1} + ... onto a module.

    ``tops`` lists (vertex, top vector in the fibre at that vertex);
    ``fibre_maps[t]`` is the scalar matrix from the cover's fibre at t
    (summand by summand, basis_between order) to the module's fibre at t.
    """

    module: RightModule
    tops: tuple
    fibre_maps: dict

    @property
    def vertices(self):
        return tuple(v for v, _ in self.tops)


def _top_vectors(m: RightModule):
    field = m.field
    q = m.algebra.quiver
    tops = []
    for v in q.vertices:
        d = m.dims[v]
        if not d:
            continue
        cols = []
        for a in q.in_arrows(v):
            mat = m.action[a]
            for c in range(m.dims[q.source(a)]):
                cols.append([mat[r][c] for r in range(d)])
        base = rank(cols, field) if cols else 0
        chosen = list(cols)
        for k in range(d):
            e = [field(int(i == k)) for i in range(d)]
            if rank(chosen + [e], field) > base:
                chosen.append(e)
                base += 1
                tops.append((v, e))
    return tops


def projective_cover(m: RightModule) -> ProjectiveCover:
    if m.dim == 0:
        raise ZeroModule("the zero module has no projective cover")
    a = m.algebra
    tops = _top_vectors(m)
    fibre_maps = {}
    for t in a.quiver.vertices:
        cols = []
        for v, vec in tops:
            for p in a.basis_between(v, t):
                cols.append(m.act(vec, p))
        d = m.dims[t]
        fibre_maps[t] = [[col[r] for col in cols] for r in range(d)] if cols else [[] for _ in range(d)]
    return ProjectiveCover(m, tuple(tops), fibre_maps)


def _kernel_with_coords(mat, ncols, field):
    """Kernel basis (each vector 1 at its own free column, 0 at the others)."""
    if ncols == 0:
        return [], []
    rows = [r for r in mat if r]
    if not rows:
        basis = [[field(int(i == k)) for i in range(ncols)] for k in range(ncols)]
        return basis, list(range(ncols))
    return kernel_with_free_columns(rows, field, ncols=ncols)


def syzygy(m: RightModule) -> RightModule:
    if m.dim == 0:
        raise ZeroModule("syzygy of the zero module")
    a = m.algebra
    field = a.field
    q = a.quiver
    cover = projective_cover(m)
    # block-diagonal right action on the cover
    summands = cover.vertices
    offsets = {}
    for t in q.vertices:
        off, o = [], 0
        for v in summands:
            off.append(o)
            o += len(a.basis_between(v, t))
        offsets[t] = (off, o)
    kers = {}
    for t in q.vertices:
        n = offsets[t][1]
        kers[t] = _kernel_with_coords(cover.fibre_maps[t], n, field)
    proj_act = {}
    for x in q.arrows:
        blocks = [a.right_mult_matrix(v, x.name) for v in summands]
        proj_act[x.name] = blocks
    dims = {t: len(kers[t][0]) for t in q.vertices}
    action = {}
    for x in q.arrows:
        s, t = x.source, x.target
        ks, _ = kers[s]
        _, free_t = kers[t]
        offs, _ = offsets[s]
        offt, nt = offsets[t]
        mat = _zeros(dims[t], dims[s], field)
        for col, k in enumerate(ks):
            image = [field(0)] * nt
            for idx, blk in enumerate(proj_act[x.name]):
                w = len(a.basis_between(summands[idx], s))
                part = k[offs[idx] : offs[idx] + w]
                if not any(part):
                    continue
                for r, row in enumerate(blk):
                    val = sum((u * y for u, y in zip(row, part) if u and y), field(0))
                    if val:
                        image[offt[idx] + r] += val
            for r, fc in enumerate(free_t):
                mat[r][col] = image[fc]
        action[x.name] = mat
    return RightModule(a, dims, action)


@dataclass(frozen=True)
class NoneWithin:
    """No period found within ``max_steps`` syzygies."""

    max_steps: int

    def __bool__(self):
        return False


def is_weakly_symmetric(a) -> bool:
    for v in a.quiver.vertices:
        soc, _ = a.socle_layers(v)
        if len(soc) != 1 or any(p.target != v for p in soc[0].terms):
            return False
    return True


def period_of_simple(a, i, max_steps: int = 8, check_symmetry: bool = False):
    if check_symmetry and not is_weakly_symmetric(a):
        warnings.warn("algebra is not weakly symmetric; periodicity may fail", RuntimeWarning, stacklevel=2)
    m = simple_module(a, i)
    for d in range(1, max_steps + 1):
        if m.dim == 0:
            return NoneWithin(max_steps)
        m = syzygy(m)
        if m.is_simple_at(i):
            return d
    return NoneWithin(max_steps)


def syzygy_dims(a, i, steps):
    m = simple_module(a, i)
    out = []
    for _ in range(steps):
        m = syzygy(m) if m.dim else m
        out.append(m.dim)
    return out


# --- maps between projectives --------------------------------------------------


@dataclass(frozen=True)
class ModuleMap:
    """Matrix of algebra elements; entry [r][c] lies in e_{rows[r]} A e_{cols[c]}
    and the map sends u in (+)_c P_{cols[c]} to (+)_r P_{rows[r]} by M.u."""

    rows: tuple
    cols: tuple
    entries: tuple

    def __post_init__(self):
        for r, row in enumerate(self.entries):
            for c, e in enumerate(row):
                for p in e.terms:
                    if p.source != self.rows[r] or p.target != self.cols[c]:
                        raise ShapeMismatch(f"entry ({r},{c}) path {p} has wrong endpoints")

    def rescaled(self, scale: dict):
        """Multiply every arrow a occurring in the entries by scale[a]."""

        def sc(e):
            out = PathExpr()
            for p, c in e.terms.items():
                k = c
                for x in p.arrows:
                    k = k * scale.get(x, 1)
                out = out + PathExpr.of(p, k)
            return out

        return ModuleMap(self.rows, self.cols, tuple(tuple(sc(e) for e in row) for row in self.entries))

    def negate_entry(self, r, c):
        ent = [list(row) for row in self.entries]
        ent[r][c] = -ent[r][c]
        return ModuleMap(self.rows, self.cols, tuple(tuple(row) for row in ent))

    def scalar_matrix(self, a):
        """Matrix on the underlying spaces, basis_from order per summand."""
        field = a.field
        row_pos, n_rows = [], 0
        for v in self.rows:
            row_pos.append(n_rows)
            n_rows += len(a.basis_from(v))
        index = [{p: k for k, p in enumerate(a.basis_from(v))} for v in self.rows]
        cols = []
        for c, v in enumerate(self.cols):
            for p in a.basis_from(v):
                col = [field(0)] * n_rows
                for r in range(len(self.rows)):
                    e = self.entries[r][c]
                    if not e:
                        continue
                    prod = a.normal_form(e * PathExpr.of(p))
                    for b, x in prod.terms.items():
                        col[row_pos[r] + index[r][b]] += x
                cols.append(col)
        if not cols:
            return [[] for _ in range(n_rows)]
        return [[col[r] for col in cols] for r in range(n_rows)]

    def format(self, field) -> list:
        return [[e.format(field) for e in row] for row in self.entries]


@dataclass(frozen=True)
class ResolutionCertificate:
    vertex: object
    dim_Pz: int
    dim_P_plus: int
    dim_P_minus: int
    rank_d1: int
    rank_d2: int
    rank_d3: int
    exact: bool = True

    def as_dict(self):
        return dict(self.__dict__)


def _is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


def verify_sequence(a, z, d3: ModuleMap, d2: ModuleMap, d1: ModuleMap, rescale=None) -> ResolutionCertificate:
    """Check that P_z -d3-> P^- -d2-> P^+ -d1-> P_z is exact with S_z at both ends."""
    if rescale:
        d1, d2, d3 = (d.rescaled(rescale) for d in (d1, d2, d3))
    if d1.rows != (z,) or d3.cols != (z,) or d1.cols != d2.rows or d2.cols != d3.rows:
        raise ShapeMismatch("maps do not compose as P_z -> P^- -> P^+ -> P_z")
    field = a.field
    m1, m2, m3 = d1.scalar_matrix(a), d2.scalar_matrix(a), d3.scalar_matrix(a)
    if m2 and m2[0] and m1 and not _is_zero_matrix(matmul(m1, m2, field)):
        raise NotAComplex("d1 d2 != 0")
    if m3 and m3[0] and m2 and not _is_zero_matrix(matmul(m2, m3, field)):
        raise NotAComplex("d2 d3 != 0")
    r1 = rank(m1, field) if m1 and m1[0] else 0
    r2 = rank(m2, field) if m2 and m2[0] else 0
    r3 = rank(m3, field) if m3 and m3[0] else 0
    nz = len(a.basis_from(z))
    nplus = sum(len(a.basis_from(v)) for v in d1.cols)
    nminus = sum(len(a.basis_from(v)) for v in d2.cols)
    if nz - r1 != 1:
        raise NotExact(f"coker d1 has dimension {nz - r1}, expected 1")
    if nplus - r1 != r2:
        raise NotExact(f"at P^+: dim ker d1 = {nplus - r1} but dim im d2 = {r2}")
    if nminus - r2 != r3:
        raise NotExact(f"at P^-: dim ker d2 = {nminus - r2} but dim im d3 = {r3}")
    if nz - r3 != 1:
        raise NotExact(f"ker d3 has dimension {nz - r3}, expected 1")
    return ResolutionCertificate(z, nz, nplus, nminus, r1, r2, r3)


# --- the standard four-term sequence of a weighted surface algebra -------------


class UnsupportedCase(NotImplementedError):
    pass


def wsa_middle_maps(spec, z):
    """(d3, d2, d1) for P_z -> P^- -> P^+ -> P_z with the two arrows a, abar at z:

    d1 = [a  abar],  d2 = [[f(a), -c_a A'_a], [-c_abar A'_abar, f(abar)]],
    d3 = (f^2(a), f^2(abar))^T, where A'_x is A_x without its first arrow.
    """
    from .wsa import A_path

    q = spec.quiver
    outs = q.out_arrows(z)
    if len(outs) != 2:
        raise UnsupportedCase(f"vertex {z} does not have two outgoing arrows")
    a, abar = outs
    if spec.bar(a) != abar:
        raise UnsupportedCase(f"arrows at {z} are not paired")
    f = spec.f

    def arrow(x):
        return PathExpr.of(Path(q.source(x), q.target(x), (x,)))

    def a_tail(x):
        p = A_path(spec, x)
        rest = p.arrows[1:]
        tail = Path(q.target(x), p.target, rest) if rest else stationary(q.target(x))
        return PathExpr.of(tail, -spec.param(x))

    ta, tb = q.target(a), q.target(abar)
    tfa, tfb = q.target(f(a)), q.target(f(abar))
    d1 = ModuleMap((z,), (ta, tb), ((arrow(a), arrow(abar)),))
    d2 = ModuleMap((ta, tb), (tfa, tfb), ((arrow(f(a)), a_tail(a)), (a_tail(abar), arrow(f(abar)))))
    d3 = ModuleMap((tfa, tfb), (z,), ((arrow(f(f(a))),), (arrow(f(f(abar))),)))
    return d3, d2, d1
