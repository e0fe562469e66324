"""Finite-dimensional quotients KQ/I of path algebras.

The quotient is computed inside the truncation KQ / R^{L+1}, where R is the
arrow ideal. The image of I there is the span of all u.r.v (r a generator)
with terms longer than L dropped; it is built as the closure of the
generators under multiplication by arrows on both sides and kept in reduced
echelon form, one block per (source, target) pair. Columns are paths ordered
length first, then lexicographically by arrow names, and the pivot of a row
is its *shortest* path. So a pivot path is rewritten as a combination of
longer paths, and the surviving (non-pivot) paths form the basis.

The truncation is exact once every path of length L lies in the image of I
(i.e. R^L is contained in I + R^{L+1}); L is raised until that happens.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass

from .linalg import EchelonSpace, kernel_basis
from .paths import Path, PathExpr, path_key, stationary
from .quiver import Quiver
from .scalars import QQ


class NotFiniteDimensionalWithinCap(RuntimeError):
    pass


class NotAdmissible(UserWarning):
    pass


class RelationEndpointError(ValueError):
    pass


def default_cap(fallback: int) -> int:
    env = os.environ.get("QGT_CAP")
    if env:
        return int(env)
    return fallback


def _coerce_expr(e: PathExpr, field) -> PathExpr:
    return PathExpr({p: field(c) for p, c in e.terms.items()})


def _arrow_products(q: Quiver, vec: dict, L: int):
    """All products arrow*vec and vec*arrow, truncated above length L."""
    p0 = next(iter(vec))
    s, t = p0.source, p0.target
    out = []
    for a in q.in_arrows(s):
        src = q.source(a)
        w = {}
        for p, c in vec.items():
            if len(p.arrows) < L:
                w[Path(src, t, (a,) + p.arrows)] = c
        if w:
            out.append(w)
    for a in q.out_arrows(t):
        tgt = q.target(a)
        w = {}
        for p, c in vec.items():
            if len(p.arrows) < L:
                w[Path(s, tgt, p.arrows + (a,))] = c
        if w:
            out.append(w)
    return out


def _paths_up_to(q: Quiver, L: int):
    """All paths of length <= L, grouped by length."""
    layers = [[stationary(v) for v in q.vertices]]
    for _ in range(L):
        nxt = []
        for p in layers[-1]:
            for a in q.out_arrows(p.target):
                nxt.append(Path(p.source, q.target(a), p.arrows + (a,)))
        layers.append(nxt)
    return layers


def _ideal_image(q: Quiver, rels, L: int):
    spaces = {}
    queue = []
    for r in rels:
        v = {p: c for p, c in r.terms.items() if len(p.arrows) <= L}
        if v:
            queue.append(v)
    while queue:
        v = queue.pop()
        p0 = next(iter(v))
        key = (p0.source, p0.target)
        sp = spaces.get(key)
        if sp is None:
            sp = spaces[key] = EchelonSpace(key=path_key)
        if sp.add(v):
            queue.extend(_arrow_products(q, v, L))
    return spaces


class FDAlgebra:
    """A finite-dimensional algebra KQ/I with a canonical path basis."""

    def __init__(self, quiver, relations, field, L, spaces, warnings_=()):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.truncation = L
        self._spaces = spaces
        self.admissibility_warnings = tuple(warnings_)
        basis = []
        for layer in _paths_up_to(quiver, L - 1):
            for p in layer:
                sp = spaces.get((p.source, p.target))
                if sp is None or p not in sp.rows:
                    basis.append(p)
        basis.sort(key=lambda p: (p.source, p.target, len(p.arrows), p.arrows))
        self.basis = tuple(basis)
        self.index = {p: k for k, p in enumerate(self.basis)}
        self._from = {v: tuple(p for p in basis if p.source == v) for v in quiver.vertices}
        self._nf_cache = {}
        self.nilpotency = max(p.length for p in basis) + 1 if basis else 0

    # --- basic data -----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self):
        return self.quiver.vertices

    def basis_from(self, i) -> tuple:
        """Basis of the right projective e_i Lambda."""
        return self._from[i]

    def basis_between(self, i, j) -> tuple:
        return tuple(p for p in self._from[i] if p.target == j)

    def dims(self) -> dict:
        return {v: len(self._from[v]) for v in self.quiver.vertices}

    # --- normal forms ---------------------------------------------------

    def path_nf(self, p: Path) -> dict:
        """Normal form of a single path as a dict over basis paths."""
        if len(p.arrows) >= self.truncation:
            return {}
        hit = self._nf_cache.get(p)
        if hit is not None:
            return hit
        sp = self._spaces.get((p.source, p.target))
        if sp is None or p not in sp.rows:
            res = {p: self.field(1)}
        else:
            res = {c: -x for c, x in sp.rows[p].items() if c != p}
        self._nf_cache[p] = res
        return res

    def nf_dict(self, terms) -> dict:
        out = {}
        for p, c in terms:
            for b, x in self.path_nf(p).items():
                v = out.get(b, 0) + c * x
                if v:
                    out[b] = v
                else:
                    out.pop(b, None)
        return out

    def normal_form(self, x) -> PathExpr:
        if isinstance(x, Path):
            x = PathExpr.of(x)
        e = PathExpr()
        e.terms = self.nf_dict((p, self.field(c)) for p, c in x.terms.items())
        return e

    def is_zero(self, x) -> bool:
        return not self.normal_form(x)

    def mul(self, x: PathExpr, y: PathExpr) -> PathExpr:
        return self.normal_form(x * y)

    def one(self) -> PathExpr:
        return PathExpr({stationary(v): self.field(1) for v in self.quiver.vertices})

    def vector(self, x, i=None, j=None):
        """Coordinates of x over basis_from(i) (or the full basis)."""
        nf = self.normal_form(x).terms
        paths = self.basis if i is None else (self._from[i] if j is None else self.basis_between(i, j))
        return [nf.get(p, self.field(0)) for p in paths]

    def right_mult_matrix(self, i, arrow):
        """Matrix of p -> p*arrow from e_i Lambda e_{s(arrow)} to e_i Lambda e_{t(arrow)}
        (columns indexed by the source fibre)."""
        s, t = self.quiver.source(arrow), self.quiver.target(arrow)
        src = self.basis_between(i, s)
        tgt = self.basis_between(i, t)
        pos = {p: k for k, p in enumerate(tgt)}
        zero = self.field(0)
        m = [[zero] * len(src) for _ in tgt]
        for col, p in enumerate(src):
            for b, x in self.path_nf(Path(p.source, t, p.arrows + (arrow,))).items():
                m[pos[b]][col] = x
        return m

    # --- filtrations ----------------------------------------------------

    def radical_layers(self, i):
        """[(dim e_iJ^k/e_iJ^{k+1}, representative basis paths)] for k = 0, 1, ..."""
        top = max((p.length for p in self._from[i]), default=-1)
        layers = []
        for k in range(top + 1):
            reps = tuple(p for p in self._from[i] if p.length == k)
            layers.append((len(reps), reps))
        return layers

    def socle_layers(self, i):
        """Bases (as PathExprs) of soc(e_i Lambda) and soc^2(e_i Lambda)."""
        paths = self._from[i]
        pos = {p: k for k, p in enumerate(paths)}
        n = len(paths)
        zero = self.field(0)
        act = []
        for a in self.quiver.arrow_names:
            m = [[zero] * n for _ in range(n)]
            for col, p in enumerate(paths):
                if p.target != self.quiver.source(a):
                    continue
                for b, x in self.path_nf(Path(p.source, self.quiver.target(a), p.arrows + (a,))).items():
                    m[pos[b]][col] = x
            act.append(m)
        stacked = [row for m in act for row in m]
        soc = kernel_basis(stacked, self.field, ncols=n)
        ann = kernel_basis(soc, self.field, ncols=n) if soc else None
        if ann is None:
            soc2 = soc
        else:
            # x in soc^2 iff ann . (x * arrow) = 0 for every arrow
            rows = []
            for m in act:
                for f in ann:
                    rows.append([sum((f[r] * m[r][c] for r in range(n) if f[r] and m[r][c]), zero) for c in range(n)])
            soc2 = kernel_basis(rows, self.field, ncols=n)

        def to_expr(v):
            return PathExpr({paths[k]: x for k, x in enumerate(v) if x})

        return [to_expr(v) for v in soc], [to_expr(v) for v in soc2]

    def in_span(self, x: PathExpr, span) -> bool:
        from .linalg import NotInSpan, solve_membership

        target = self.vector(x)
        vecs = [self.vector(s) for s in span]
        try:
            solve_membership(vecs, target, self.field)
            return True
        except NotInSpan:
            return False

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, dims={self.dims()}, field={self.field!r})"


def quotient_algebra(q: Quiver, rels, field=QQ, cap=None) -> FDAlgebra:
    rels = [_coerce_expr(r, field) for r in rels]
    rels = [r for r in rels if r]
    warns = []
    for r in rels:
        if len(r.endpoints()) != 1:
            raise RelationEndpointError(f"relation {r} has terms with different endpoints")
        for p in r.terms:
            for x, y in zip(p.arrows, p.arrows[1:]):
                if q.target(x) != q.source(y):
                    raise RelationEndpointError(f"path {p} does not compose")
        if r.min_length() < 2:
            msg = f"relation {r.format(field)} has a term of length < 2"
            warns.append(msg)
            warnings.warn(msg, NotAdmissible, stacklevel=2)
    longest = max((r.max_length() for r in rels), default=1)
    if cap is None:
        cap = default_cap(2 * longest + 4)
    L = min(longest + 2, cap)
    while True:
        spaces = _ideal_image(q, rels, L)
        stable = True
        for p in _paths_up_to(q, L)[L]:
            sp = spaces.get((p.source, p.target))
            if sp is None or not sp.contains({p: field(1)}):
                stable = False
                break
        if stable:
            return FDAlgebra(q, rels, field, L, spaces, warns)
        if L >= cap:
            raise NotFiniteDimensionalWithinCap(
                f"paths of length {L} survive; quotient infinite-dimensional or cap {cap} too small"
            )
        L += 1


@dataclass(frozen=True)
class MinimalRelationSpace:
    """Per-(source, target) dimensions of I / (R I + I R) with chosen lifts."""

    dims: dict
    lifts: dict
    _algebra: object = None

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def contains(self, expr: PathExpr) -> bool:
        """True iff expr lies in I but not in R I + I R (a minimal relation)."""
        a = self._algebra
        in_i, in_rir = _relation_membership(a, expr)
        return in_i and not in_rir

    def involves(self, path: Path) -> bool:
        """Does some choice of minimal relations have ``path`` as a summand?

        Decided on leading forms of degree len(path); a False answer is
        relative to this reading and to the presentation.
        """
        return _involves(self._algebra, path)


def _products_space(a: FDAlgebra):
    """Image of R I + I R in the truncation."""
    L = a.truncation
    q = a.quiver
    spaces = {}
    for (s, t), sp in a._spaces.items():
        for row in sp.rows.values():
            for w in _arrow_products(q, row, L):
                p0 = next(iter(w))
                key = (p0.source, p0.target)
                if key not in spaces:
                    spaces[key] = EchelonSpace(key=path_key)
                spaces[key].add(w)
    return spaces


def _relation_membership(a: FDAlgebra, expr: PathExpr):
    expr = _coerce_expr(expr, a.field)
    if not expr:
        return True, True
    (key,) = expr.endpoints()
    v = {p: c for p, c in expr.terms.items() if len(p.arrows) <= a.truncation}
    sp = a._spaces.get(key)
    in_i = bool(sp) and sp.contains(v) if v else True
    if not hasattr(a, "_rir"):
        a._rir = _products_space(a)
    sp2 = a._rir.get(key)
    in_rir = (sp2.contains(v) if sp2 is not None else False) if v else True
    return in_i, in_rir


def _leading_space(space, ell, key):
    """Degree-ell leading forms of elements of the space lying in R^ell."""
    out = EchelonSpace(key=path_key)
    if space is None:
        return out
    for piv, row in space.rows.items():
        if len(piv.arrows) == ell:
            out.add({p: c for p, c in row.items() if len(p.arrows) == ell})
    return out


def _involves(a: FDAlgebra, path: Path) -> bool:
    if not hasattr(a, "_rir"):
        a._rir = _products_space(a)
    key = (path.source, path.target)
    ell = len(path.arrows)
    U = _leading_space(a._spaces.get(key), ell, key)
    U2 = _leading_space(a._rir.get(key), ell, key)
    if len(U) == len(U2):
        return False
    return any(path in row for row in U.rows.values())


def minimal_relation_space(a: FDAlgebra) -> MinimalRelationSpace:
    if not hasattr(a, "_rir"):
        a._rir = _products_space(a)
    dims, lifts = {}, {}
    for key in sorted(set(a._spaces) | set(a._rir)):
        big = a._spaces.get(key)
        small = a._rir.get(key)
        d = (len(big) if big else 0) - (len(small) if small else 0)
        if d <= 0:
            continue
        dims[key] = d
        chosen = []
        acc = EchelonSpace(key=path_key)
        if small:
            for row in small.rows.values():
                acc.add(row)
        for r in a.relations:
            if r.endpoints() != {key}:
                continue
            v = {p: c for p, c in r.terms.items() if len(p.arrows) <= a.truncation}
            if v and acc.add(v):
                chosen.append(r)
        lifts[key] = tuple(chosen)
    return MinimalRelationSpace(dims, lifts, a)


def gabriel_quiver(a: FDAlgebra) -> Quiver:
    """Arrows i -> j counted by dim e_iJe_j / e_iJ^2e_j (length-1 basis paths)."""
    arrows = [(p.arrows[0], p.source, p.target) for p in a.basis if p.length == 1]
    return Quiver(a.quiver.vertices, tuple(arrows))
