"""Block gluing and block decomposition around 1-vertices.

Block shapes (canonical arrow order, canonical vertex order, glue slots):

    I    loop at o                       arrows (loop,)            vertices (o,)
    II   loop at b, b -> o, o -> b       arrows (loop, out, back)  vertices (b, o)
    III  triangle o1 -> o2 -> o3 -> o1   arrows (a, b, c)          vertices (o1, o2, o3)
    V1   x -> y -> x                     arrows (eps, eta)         vertices (x, y)
    V2   a -> c -> b -> d -> a           arrows (alpha, beta, nu, delta)  vertices (a, c, b, d)

Only the o-vertices of I/II/III, x of V1, and a, b of V2 are glue slots.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import FPermutation, Quiver, derive_bar_and_g, f_from_orbits, validate_regularity


class BadPairing(ValueError):
    pass


class NotBiregular(ValueError):
    pass


class BlockShapeViolation(ValueError):
    pass


SLOTS = {"I": (0,), "II": (1,), "III": (0, 1, 2), "V1": (0,), "V2": (0, 2)}
SLOT_NAMES = {
    "I": ("o",),
    "II": ("b", "o"),
    "III": ("o1", "o2", "o3"),
    "V1": ("x", "y"),
    "V2": ("a", "c", "b", "d"),
}
ARITY = {"I": (1, 1), "II": (3, 2), "III": (3, 3), "V1": (2, 2), "V2": (4, 4)}


@dataclass(frozen=True)
class Block:
    kind: str
    arrows: tuple
    vertices: tuple

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ValueError(f"unknown block type {self.kind!r}")
        na, nv = ARITY[self.kind]
        if len(self.arrows) != na or len(self.vertices) != nv:
            raise ValueError(f"block {self.kind} needs {na} arrows and {nv} vertices")

    def slot_index(self, slot) -> int:
        if isinstance(slot, int):
            return slot
        return SLOT_NAMES[self.kind].index(slot)

    def arrow_triples(self):
        v, a = self.vertices, self.arrows
        if self.kind == "I":
            return [(a[0], v[0], v[0])]
        if self.kind == "II":
            return [(a[0], v[0], v[0]), (a[1], v[0], v[1]), (a[2], v[1], v[0])]
        if self.kind == "III":
            return [(a[0], v[0], v[1]), (a[1], v[1], v[2]), (a[2], v[2], v[0])]
        if self.kind == "V1":
            return [(a[0], v[0], v[1]), (a[1], v[1], v[0])]
        return [(a[k], v[k], v[(k + 1) % 4]) for k in range(4)]

    def f_orbit(self):
        a = self.arrows
        if self.kind == "I":
            return (a[0],)
        if self.kind == "II":
            return (a[2], a[0], a[1])
        if self.kind == "III":
            return tuple(a)
        return None


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple
    pairing: tuple = ()

    @property
    def v2_blocks(self):
        return tuple(b for b in self.blocks if b.kind == "V2")

    @property
    def v1_blocks(self):
        return tuple(b for b in self.blocks if b.kind == "V1")

    @property
    def p(self) -> int:
        return len(self.v2_blocks)

    @property
    def q(self) -> int:
        return len(self.v1_blocks)


def assemble_from_blocks(blocks, pairing):
    """Glue blocks along the given pairs of glue slots.

    ``pairing`` is a list of ``((block_index, slot), (block_index, slot))``.
    Glued slots must carry the same vertex id; all other vertices must be
    distinct. Returns ``(quiver, fperm)``; ``fperm`` is None in biregular mode
    (when V-blocks are present).
    """
    blocks = list(blocks)
    matched = {}
    for pair in pairing:
        (i, s), (j, t) = pair
        si, tj = blocks[i].slot_index(s), blocks[j].slot_index(t)
        for bi, sl in ((i, si), (j, tj)):
            if sl not in SLOTS[blocks[bi].kind]:
                raise BadPairing(f"slot {sl} of block {bi} is not a glue slot")
            if (bi, sl) in matched:
                raise BadPairing(f"slot {sl} of block {bi} matched twice")
        if i == j:
            raise BadPairing("a slot must be glued to a different block")
        matched[(i, si)] = (j, tj)
        matched[(j, tj)] = (i, si)
        if blocks[i].vertices[si] != blocks[j].vertices[tj]:
            raise BadPairing(f"glued slots carry different vertex ids: {pair}")
    owners = {}
    for bi, b in enumerate(blocks):
        for k in SLOTS[b.kind]:
            if (bi, k) not in matched:
                raise BadPairing(f"slot {SLOT_NAMES[b.kind][k]} of block {bi} is unmatched")
        for k, v in enumerate(b.vertices):
            owners.setdefault(v, []).append((bi, k))
    for v, occ in owners.items():
        if len(occ) == 1:
            continue
        if len(occ) == 2 and matched.get(occ[0]) == occ[1]:
            continue
        raise BadPairing(f"vertex {v} is shared without being glued")
    arrows = [t for b in blocks for t in b.arrow_triples()]
    q = Quiver(tuple(owners), tuple(arrows))
    if any(b.kind in ("V1", "V2") for b in blocks):
        return q, None
    f = f_from_orbits([b.f_orbit() for b in blocks])
    return q, derive_bar_and_g(q, f)


def _orient_v2(q: Quiver, c, d):
    """Canonical V2 block through 1-vertices c, d (c entered from a)."""
    alpha = q.in_arrows(c)[0]
    beta = q.out_arrows(c)[0]
    nu = q.in_arrows(d)[0]
    delta = q.out_arrows(d)[0]
    a, b = q.source(alpha), q.target(beta)
    if min(alpha, nu) == nu:
        return Block("V2", (nu, delta, alpha, beta), (b, d, a, c))
    return Block("V2", (alpha, beta, nu, delta), (a, c, b, d))


def _v2_partners(q: Quiver, rep, v, free):
    """1-vertices u such that {v, u} spans a V2 block."""
    alpha = q.in_arrows(v)[0]
    beta = q.out_arrows(v)[0]
    a, b = q.source(alpha), q.target(beta)
    two = set(rep.two_vertices)
    found = set()
    if a in two and b in two and a != b:
        # v plays c: need b -> d -> a
        for nu in q.out_arrows(b):
            d = q.target(nu)
            if d in free and d != v and q.target(q.out_arrows(d)[0]) == a:
                found.add(d)
        # v plays d: need b' -> c -> a' with a' = target of v's out arrow
        for al in q.out_arrows(b):
            c = q.target(al)
            if c in free and c != v and q.target(q.out_arrows(c)[0]) == a:
                found.add(c)
    return found


def locate_one_vertex_blocks(q: Quiver, pairs=None) -> BlockDecomposition:
    """Group all 1-vertices into V1 and V2 blocks.

    ``pairs`` optionally fixes which 1-vertices share a V2 block. Otherwise
    the smallest free 1-vertex is paired with its largest admissible partner,
    with backtracking.
    """
    rep = validate_regularity(q)
    if not rep.is_biregular:
        raise NotBiregular("quiver is not biregular")
    two = set(rep.two_vertices)
    blocks = []
    free = set()
    for y in rep.one_vertices:
        eps, eta = q.in_arrows(y)[0], q.out_arrows(y)[0]
        x = q.source(eps)
        if x == q.target(eta) and x in two:
            blocks.append(Block("V1", (eps, eta), (x, y)))
        else:
            free.add(y)
    if pairs is not None:
        for c, d in pairs:
            if c not in free or d not in free or d not in _v2_partners(q, rep, c, free):
                raise BlockShapeViolation(f"vertices {c}, {d} do not span a V2 block")
            free -= {c, d}
            blocks.append(_orient_v2_any(q, c, d))
        if free:
            raise BlockShapeViolation(f"1-vertices {sorted(free)} not covered")
        return BlockDecomposition(tuple(blocks))

    def search(free):
        if not free:
            return []
        v = min(free)
        for u in sorted(_v2_partners(q, rep, v, free), reverse=True):
            rest = search(free - {v, u})
            if rest is not None:
                return [_orient_v2_any(q, v, u)] + rest
        return None

    v2 = search(frozenset(free))
    if v2 is None:
        raise BlockShapeViolation(f"1-vertices {sorted(free)} fit neither V1 nor V2")
    return BlockDecomposition(tuple(blocks + v2))


def _orient_v2_any(q, u, v):
    # decide which of u, v is entered from the same vertex the other exits to
    a_u = q.source(q.in_arrows(u)[0])
    if q.target(q.out_arrows(v)[0]) == a_u:
        return _orient_v2(q, u, v)
    return _orient_v2(q, v, u)


def detect_supcritical_shapes(q: Quiver, blocks: BlockDecomposition):
    """V2 blocks (a, c, b, d) sitting in the configuration
    a -> b, b -> e, e -> a with e a 2-vertex outside the block.

    Returns a list of ``(block, (a, b, e))``; both orientations are tried.
    """
    two = set(validate_regularity(q).two_vertices)
    found = []
    for blk in blocks.v2_blocks:
        a, c, b, d = blk.vertices
        for x, y in ((a, b), (b, a)):
            block_arrows = set(blk.arrows)
            direct = [s for s in q.out_arrows(x) if s not in block_arrows and q.target(s) == y]
            if not direct:
                continue
            hit = None
            for gam in q.out_arrows(y):
                e = q.target(gam)
                if gam in block_arrows or e not in two or e in (a, b, c, d):
                    continue
                if any(q.target(t) == x and t not in block_arrows for t in q.out_arrows(e)):
                    hit = e
            if hit is not None:
                found.append((blk, (x, y, hit)))
                break
    return found
