"""Independent brute-force oracles.

These do not import the package. They enumerate every path up to a fixed
length, write down every product u.r.v explicitly, and row-reduce a dense
matrix per (source, target) block. Results are frozen into the tests.
"""

from fractions import Fraction
from math import gcd


def _rank(rows):
    rows = [list(r) for r in rows if any(r)]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                k = rows[i][c] / rows[rank][c]
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def brute_force_dims(arrows, relations, L):
    """dim e_i (KQ / (I + R^{L+1})) for each vertex i.

    arrows: {name: (source, target)}; relations: list of {tuple_of_arrows: coef}.
    """
    verts = sorted({v for st in arrows.values() for v in st})
    paths = [((v, v), ()) for v in verts]
    frontier = [(v, v, ()) for v in verts]
    for _ in range(L):
        new = []
        for s, t, w in frontier:
            for a, (x, y) in sorted(arrows.items()):
                if x == t:
                    new.append((s, y, w + (a,)))
        paths += [((s, t), w) for s, t, w in new]
        frontier = new

    def ends(w):
        return arrows[w[0]][0], arrows[w[-1]][1]

    rows = {}
    for r in relations:
        s, t = ends(next(iter(r)))
        for (us, ut), u in paths:
            if ut != s:
                continue
            for (vs, vt), v in paths:
                if vs != t:
                    continue
                vec = {}
                for w, c in r.items():
                    ww = u + w + v
                    if len(ww) <= L:
                        vec[ww] = vec.get(ww, 0) + Fraction(c)
                if any(vec.values()):
                    rows.setdefault((us, vt), []).append(vec)
    dims = {}
    for i in verts:
        total = 0
        for j in verts:
            cols = [w for (s, t), w in paths if s == i and t == j]
            idx = {w: k for k, w in enumerate(cols)}
            mat = []
            for vec in rows.get((i, j), []):
                row = [Fraction(0)] * len(cols)
                for w, c in vec.items():
                    row[idx[w]] += c
                mat.append(row)
            total += len(cols) - (_rank(mat) if mat else 0)
        dims[i] = total
    return dims


TRIANGLE_ARROWS = {
    "alpha": (2, 3),
    "beta": (3, 2),
    "nu": (2, 1),
    "delta": (1, 2),
    "rho": (1, 1),
    "sigma": (3, 3),
}


def triangle_wsa_relations():
    """Hand-written relations of the triangle WSA with m_rho = m_sigma = 3,
    weight 1 on the 4-cycle and all parameters 1."""
    comm = [
        {("alpha", "sigma"): 1, ("nu", "delta", "alpha"): -1},
        {("sigma", "beta"): 1, ("beta", "nu", "delta"): -1},
        {("beta", "alpha"): 1, ("sigma", "sigma"): -1},
        {("nu", "rho"): 1, ("alpha", "beta", "nu"): -1},
        {("rho", "delta"): 1, ("delta", "alpha", "beta"): -1},
        {("delta", "nu"): 1, ("rho", "rho"): -1},
    ]
    zero = [
        ("alpha", "sigma", "sigma"),
        ("sigma", "beta", "nu"),
        ("beta", "alpha", "beta"),
        ("nu", "rho", "rho"),
        ("rho", "delta", "alpha"),
        ("delta", "nu", "delta"),
        ("alpha", "beta", "alpha"),
        ("sigma", "sigma", "beta"),
        ("beta", "nu", "rho"),
        ("nu", "delta", "nu"),
        ("rho", "rho", "delta"),
        ("delta", "alpha", "sigma"),
    ]
    return comm + [{w: 1} for w in zero]


def loop_dims(n, L):
    """K[x]/x^n."""
    return brute_force_dims({"x": (1, 1)}, [{("x",) * n: 1}], L)


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


if __name__ == "__main__":
    print("triangle", brute_force_dims(TRIANGLE_ARROWS, triangle_wsa_relations(), 7))
    print("x^3", loop_dims(3, 6))
