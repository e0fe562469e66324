"""Quivers, regularity, the permutations f, g and the bar involution,
and recognition of a few named quivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple


class MalformedQuiver(ValueError):
    pass


class NotTwoRegular(ValueError):
    pass


class FNotCompatible(ValueError):
    pass


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple
    _out: dict = field(init=False, repr=False, compare=False, hash=False)
    _in: dict = field(init=False, repr=False, compare=False, hash=False)
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        arrows = tuple(sorted((Arrow(*a) for a in self.arrows), key=lambda a: a.name))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        by_name = {}
        out = {v: [] for v in verts}
        inc = {v: [] for v in verts}
        for a in arrows:
            if a.name in by_name:
                raise MalformedQuiver(f"duplicate arrow name {a.name!r}")
            if a.source not in out or a.target not in out:
                raise MalformedQuiver(f"arrow {a.name!r} references a missing vertex")
            by_name[a.name] = a
            out[a.source].append(a.name)
            inc[a.target].append(a.name)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_out", {v: tuple(x) for v, x in out.items()})
        object.__setattr__(self, "_in", {v: tuple(x) for v, x in inc.items()})
        if not _connected(verts, arrows):
            raise MalformedQuiver("quiver is not connected")

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def source(self, name: str) -> int:
        return self.arrow(name).source

    def target(self, name: str) -> int:
        return self.arrow(name).target

    def out_arrows(self, v) -> tuple:
        return self._out[v]

    def in_arrows(self, v) -> tuple:
        return self._in[v]

    @property
    def arrow_names(self) -> tuple:
        return tuple(a.name for a in self.arrows)

    def without_arrows(self, names) -> "Quiver":
        names = set(names)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.name not in names))

    def with_arrows(self, extra) -> "Quiver":
        return Quiver(self.vertices, self.arrows + tuple(Arrow(*a) for a in extra))

    def relabel(self, vmap: dict) -> "Quiver":
        return Quiver(
            tuple(vmap[v] for v in self.vertices),
            tuple(Arrow(a.name, vmap[a.source], vmap[a.target]) for a in self.arrows),
        )

    def __str__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver(vertices={list(self.vertices)}, arrows=[{arr}])"


def _connected(verts, arrows) -> bool:
    if not verts:
        return True
    adj = {v: set() for v in verts}
    for a in arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


@dataclass(frozen=True)
class RegularityReport:
    degrees: dict  # vertex -> (in, out)
    is_biregular: bool
    is_2regular: bool
    one_vertices: tuple
    two_vertices: tuple


def validate_regularity(q: Quiver) -> RegularityReport:
    degrees = {v: (len(q.in_arrows(v)), len(q.out_arrows(v))) for v in q.vertices}
    bireg = all(i == o and i in (1, 2) for i, o in degrees.values())
    two = all(i == o == 2 for i, o in degrees.values())
    return RegularityReport(
        degrees=degrees,
        is_biregular=bireg,
        is_2regular=two and bool(degrees),
        one_vertices=tuple(v for v, d in degrees.items() if d == (1, 1)),
        two_vertices=tuple(v for v, d in degrees.items() if d == (2, 2)),
    )


def orbits(perm: dict) -> list:
    """Cycles of a permutation given as a dict, each started at its smallest
    unvisited element, in sorted order of starting points."""
    seen = set()
    result = []
    for x in sorted(perm):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        y = perm[x]
        while y != x:
            if y in seen:
                raise ValueError("not a permutation")
            cyc.append(y)
            seen.add(y)
            y = perm[y]
        result.append(tuple(cyc))
    return result


@dataclass(frozen=True)
class FPermutation:
    """The permutation f of a triangulation quiver with derived bar and g."""

    f: dict
    bar: dict
    g: dict

    def f_orbits(self):
        return orbits(self.f)

    def g_orbits(self):
        return orbits(self.g)

    def g_orbit_of(self, a: str) -> tuple:
        for o in self.g_orbits():
            if a in o:
                return o
        raise KeyError(a)

    def n(self, a: str) -> int:
        """Length of the g-orbit of ``a``."""
        k, b = 1, self.g[a]
        while b != a:
            k += 1
            b = self.g[b]
        return k

    def g_inv(self, a: str) -> str:
        b = a
        while self.g[b] != a:
            b = self.g[b]
        return b


def derive_bar_and_g(q: Quiver, f: dict) -> FPermutation:
    rep = validate_regularity(q)
    if not rep.is_2regular:
        raise NotTwoRegular("quiver is not 2-regular")
    names = set(q.arrow_names)
    if set(f) != names or set(f.values()) != names:
        raise FNotCompatible("f is not a permutation of the arrow set")
    for a, b in f.items():
        if q.target(a) != q.source(b):
            raise FNotCompatible(f"t({a}) != s(f({a})) = s({b})")
    bar = {}
    for v in q.vertices:
        x, y = q.out_arrows(v)
        bar[x], bar[y] = y, x
    g = {a: bar[f[a]] for a in f}
    return FPermutation(dict(f), bar, g)


def f_from_orbits(f_orbits) -> dict:
    f = {}
    for orb in f_orbits:
        for k, a in enumerate(orb):
            if a in f:
                raise FNotCompatible(f"arrow {a!r} in two f-orbits")
            f[a] = orb[(k + 1) % len(orb)]
    return f


# --- isomorphism up to vertex relabeling -------------------------------------


def _multiplicities(q: Quiver) -> dict:
    m = {}
    for a in q.arrows:
        m[(a.source, a.target)] = m.get((a.source, a.target), 0) + 1
    return m


def find_isomorphism(q1: Quiver, q2: Quiver):
    """A vertex bijection q1 -> q2 preserving arrow multiplicities, or None."""
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return None
    m1, m2 = _multiplicities(q1), _multiplicities(q2)

    def sig(q, m, v):
        return (len(q.in_arrows(v)), len(q.out_arrows(v)), m.get((v, v), 0))

    s1 = {v: sig(q1, m1, v) for v in q1.vertices}
    s2 = {v: sig(q2, m2, v) for v in q2.vertices}
    if sorted(s1.values()) != sorted(s2.values()):
        return None
    order = list(q1.vertices)
    vmap, used = {}, set()

    def ok(v, w):
        for u, x in vmap.items():
            if m1.get((v, u), 0) != m2.get((w, x), 0) or m1.get((u, v), 0) != m2.get((x, w), 0):
                return False
        return True

    def search(k):
        if k == len(order):
            return True
        v = order[k]
        for w in q2.vertices:
            if w in used or s1[v] != s2[w] or not ok(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del vmap[v]
            used.discard(w)
        return False

    return dict(vmap) if search(0) else None


def is_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    return find_isomorphism(q1, q2) is not None


# --- named quivers -----------------------------------------------------------


def triangle_triangulation_quiver():
    """Two type-II blocks glued: loops rho at 1 and sigma at 3."""
    q = Quiver(
        (1, 2, 3),
        (
            ("rho", 1, 1),
            ("delta", 1, 2),
            ("nu", 2, 1),
            ("alpha", 2, 3),
            ("beta", 3, 2),
            ("sigma", 3, 3),
        ),
    )
    f = f_from_orbits([("alpha", "sigma", "beta"), ("nu", "rho", "delta")])
    return q, derive_bar_and_g(q, f)


def spherical_triangulation_quiver():
    """Four triangles glued into a sphere; 6 vertices and 12 arrows."""
    q = Quiver(
        (1, 2, 3, 4, 5, 6),
        (
            ("alpha", 1, 2),
            ("rho", 1, 6),
            ("delta", 5, 1),
            ("sigma", 4, 1),
            ("xi", 5, 2),
            ("mu", 2, 5),
            ("beta", 2, 3),
            ("xi'", 4, 6),
            ("mu'", 6, 4),
            ("omega", 6, 3),
            ("gamma", 3, 4),
            ("nu", 3, 5),
        ),
    )
    f = f_from_orbits(
        [
            ("alpha", "mu", "delta"),
            ("beta", "nu", "xi"),
            ("sigma", "rho", "mu'"),
            ("gamma", "xi'", "omega"),
        ]
    )
    return q, derive_bar_and_g(q, f)


def tetrahedral_triangulation_quiver():
    """Quiver of the tetrahedron triangulation of the sphere.

    Vertices are the six edges of a tetrahedron; each coherently oriented
    face (x, y, z) contributes the f-triangle xy -> yz -> zx -> xy.
    """
    faces = [("B", "C", "D"), ("A", "D", "C"), ("A", "B", "D"), ("A", "C", "B")]
    edges = sorted({frozenset(p) for x, y, z in faces for p in ((x, y), (y, z), (z, x))}, key=sorted)
    vid = {e: k + 1 for k, e in enumerate(edges)}
    arrows, f_orbits = [], []
    for x, y, z in faces:
        es = [frozenset((x, y)), frozenset((y, z)), frozenset((z, x))]
        orb = []
        for k in range(3):
            s, t = es[k], es[(k + 1) % 3]
            name = "".join(sorted(s)).lower() + "_" + "".join(sorted(t)).lower()
            arrows.append((name, vid[s], vid[t]))
            orb.append(name)
        f_orbits.append(tuple(orb))
    q = Quiver(tuple(vid.values()), tuple(arrows))
    return q, derive_bar_and_g(q, f_from_orbits(f_orbits))


def spherical_quiver():
    """Q^S: the spherical triangulation quiver without both 2-cycles."""
    q, _ = spherical_triangulation_quiver()
    return q.without_arrows({"xi", "mu", "xi'", "mu'"})


def almost_spherical_quiver():
    """Q^{S'}: the spherical triangulation quiver without the 2-cycle xi, mu."""
    q, _ = spherical_triangulation_quiver()
    return q.without_arrows({"xi", "mu"})


def triangle_quiver():
    """Q^T: the triangle triangulation quiver without its two loops."""
    q, _ = triangle_triangulation_quiver()
    return q.without_arrows({"rho", "sigma"})


def almost_triangle_quiver():
    """Q^{T'}: the triangle triangulation quiver without the loop sigma."""
    q, _ = triangle_triangulation_quiver()
    return q.without_arrows({"sigma"})


def markov_quivers():
    three = Quiver(
        (1, 2, 3),
        (("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 3), ("b2", 2, 3), ("c1", 3, 1), ("c2", 3, 1)),
    )
    two = Quiver((1, 2), (("a1", 1, 2), ("a2", 1, 2), ("b1", 2, 1), ("b2", 2, 1)))
    return [three, two]


def classify_special(q: Quiver) -> str:
    candidates = [
        ("Spherical", spherical_quiver()),
        ("AlmostSpherical", almost_spherical_quiver()),
        ("Triangle", triangle_quiver()),
        ("AlmostTriangle", almost_triangle_quiver()),
        ("Tetrahedral", tetrahedral_triangulation_quiver()[0]),
    ] + [("Markov", m) for m in markov_quivers()]
    for tag, model in candidates:
        if is_isomorphic(q, model):
            return tag
    return "Other"
