"""Dense exact linear algebra over QQ or F_p.

Matrices are lists of rows. Entries are coerced into the given field, so
plain ints can be passed in.
"""

from __future__ import annotations

from .scalars import QQ


class NotInSpan(ValueError):
    pass


def _coerce(m, field):
    return [[field(x) for x in row] for row in m]


def rref(m, field=QQ):
    """Return ``(R, rank, pivots)`` with R the reduced row echelon form."""
    rows = _coerce(m, field)
    if not rows:
        return [], 0, []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, r, pivots


def rank(m, field=QQ) -> int:
    return rref(m, field)[1]


def kernel_basis(m, field=QQ, ncols=None):
    """Basis of the right null space {v : m v = 0} as a list of vectors."""
    return kernel_with_free_columns(m, field, ncols)[0]


def kernel_with_free_columns(m, field=QQ, ncols=None):
    """(basis, free): one kernel vector per non-pivot column c, equal to 1
    at c and 0 at every other non-pivot column."""
    if not m:
        n = ncols or 0
        return [[field(int(i == j)) for i in range(n)] for j in range(n)], list(range(n))
    R, _, pivots = rref(m, field)
    n = len(R[0])
    piv = set(pivots)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [field(0)] * n
        v[fc] = field(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis, free


def solve_membership(span, target, field=QQ):
    """Coefficients x with sum x_k span[k] = target, else raise NotInSpan."""
    target = [field(x) for x in target]
    if not span:
        if any(target):
            raise NotInSpan("empty span")
        return []
    k = len(span)
    # columns are the spanning vectors, augmented by the target
    aug = [[span[j][i] for j in range(k)] + [target[i]] for i in range(len(target))]
    R, rk, pivots = rref(aug, field)
    if k in pivots:
        raise NotInSpan("target is not in the span")
    coeffs = [field(0)] * k
    for i, pc in enumerate(pivots):
        coeffs[pc] = R[i][k]
    return coeffs


def matmul(a, b, field=QQ):
    if not a or not b:
        return [[field(0)] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    zero = field(0)
    return [[sum((x * y for x, y in zip(row, col) if x and y), zero) for col in bt] for row in a]


def determinant(m, field=QQ):
    rows = _coerce(m, field)
    n = len(rows)
    det = field(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return field(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                k = rows[i][c] * inv
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[c])]
    return det


class EchelonSpace:
    """Incrementally maintained subspace of a coordinate space, kept fully reduced.

    Vectors are sparse dicts ``{column: scalar}``. The column order is given
    by ``key``; the pivot of a vector is its smallest column under ``key``.
    """

    def __init__(self, key=None):
        self.key = key
        self.rows = {}  # pivot column -> row (pivot coefficient 1)
        self._occurs = {}  # column -> set of pivots whose row has that column

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        """Reduce ``vec`` (a dict, not modified) modulo the space."""
        v = dict(vec)
        for c in [c for c in v if c in self.rows]:
            k = v.get(c)
            if not k:
                continue
            for cc, x in self.rows[c].items():
                nv = v.get(cc, 0) - k * x
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def add(self, vec) -> bool:
        """Insert ``vec``; return True if it enlarged the space."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v, key=self.key) if self.key else min(v)
        inv = 1 / v[piv]
        v = {c: x * inv for c, x in v.items()}
        # eliminate the new pivot from existing rows
        for p in list(self._occurs.get(piv, ())):
            row = self.rows[p]
            k = row[piv]
            for cc, x in v.items():
                nv = row.get(cc, 0) - k * x
                if nv:
                    if cc not in row:
                        self._occurs.setdefault(cc, set()).add(p)
                    row[cc] = nv
                else:
                    if cc in row:
                        del row[cc]
                        self._occurs[cc].discard(p)
        self.rows[piv] = v
        for cc in v:
            if cc != piv:
                self._occurs.setdefault(cc, set()).add(piv)
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)
