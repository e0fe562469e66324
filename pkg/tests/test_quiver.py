import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qgt.blocks import SLOTS, Block, assemble_from_blocks
from qgt.quiver import (
    FNotCompatible, MalformedQuiver, NotTwoRegular, Quiver, almost_spherical_quiver, almost_triangle_quiver,
    classify_special, derive_bar_and_g, f_from_orbits, find_isomorphism, is_isomorphic, markov_quivers,
    orbits, spherical_quiver, spherical_triangulation_quiver, tetrahedral_triangulation_quiver,
    triangle_quiver, triangle_triangulation_quiver, validate_regularity,
)


def test_triangle_quiver_regularity():
    rep = validate_regularity(triangle_quiver())
    assert rep.is_biregular and not rep.is_2regular
    assert rep.one_vertices == (1, 3)


def test_spherical_quiver_regularity():
    rep = validate_regularity(spherical_quiver())
    assert rep.is_biregular
    assert rep.one_vertices == (2, 4, 5, 6)
    assert rep.two_vertices == (1, 3)


def test_isolated_vertex_is_not_biregular():
    rep = validate_regularity(Quiver((1,), ()))
    assert rep.degrees == {1: (0, 0)}
    assert not rep.is_biregular and not rep.is_2regular


def test_malformed_quivers():
    with pytest.raises(MalformedQuiver):
        Quiver((1,), (("a", 1, 2),))
    with pytest.raises(MalformedQuiver):
        Quiver((1, 2), (("a", 1, 2), ("a", 2, 1)))
    with pytest.raises(MalformedQuiver):
        Quiver((1, 2), (("a", 1, 1), ("b", 2, 2)))


def test_triangle_triangulation_orbits():
    _, fp = triangle_triangulation_quiver()
    assert fp.g_orbits() == [("alpha", "beta", "nu", "delta"), ("rho",), ("sigma",)]
    assert sorted(len(o) for o in fp.g_orbits()) == [1, 1, 4]
    assert fp.n("alpha") == 4 and fp.n("rho") == 1


def test_spherical_triangulation_orbits():
    _, fp = spherical_triangulation_quiver()
    assert set(fp.g_orbits()) == {
        ("alpha", "beta", "gamma", "sigma"), ("delta", "rho", "omega", "nu"), ("mu", "xi"), ("mu'", "xi'"),
    }
    assert sorted(len(o) for o in fp.g_orbits()) == [2, 2, 4, 4]


def test_tetrahedral_g_orbits_have_length_three():
    q, fp = tetrahedral_triangulation_quiver()
    assert len(q.vertices) == 6 and len(q.arrows) == 12
    assert [len(o) for o in fp.g_orbits()] == [3, 3, 3, 3]


def test_orbits_of_identity():
    assert orbits({a: a for a in "abcd"}) == [("a",), ("b",), ("c",), ("d",)]
    with pytest.raises(ValueError):
        orbits({"a": "b", "b": "b"})


def test_derive_bar_and_g_errors():
    q, _ = triangle_triangulation_quiver()
    with pytest.raises(FNotCompatible):
        derive_bar_and_g(q, f_from_orbits([("alpha", "beta", "sigma"), ("nu", "rho", "delta")]))
    with pytest.raises(NotTwoRegular):
        derive_bar_and_g(triangle_quiver(), {})


def test_classify_named_quivers():
    assert classify_special(triangle_quiver()) == "Triangle"
    assert classify_special(almost_triangle_quiver()) == "AlmostTriangle"
    assert classify_special(spherical_quiver()) == "Spherical"
    assert classify_special(almost_spherical_quiver()) == "AlmostSpherical"
    assert classify_special(tetrahedral_triangulation_quiver()[0]) == "Tetrahedral"
    for m in markov_quivers():
        assert classify_special(m) == "Markov"
    assert classify_special(triangle_triangulation_quiver()[0]) == "Other"


def test_isomorphism_respects_direction():
    a = Quiver((1, 2, 3), (("x", 1, 2), ("y", 2, 3), ("z", 1, 3)))
    b = Quiver((1, 2, 3), (("x", 1, 2), ("y", 2, 3), ("z", 3, 1)))
    assert not is_isomorphic(a, b)
    assert find_isomorphism(a, a.relabel({1: 3, 2: 1, 3: 2})) is not None


NAMED = [triangle_quiver, almost_triangle_quiver, spherical_quiver, almost_spherical_quiver,
         lambda: tetrahedral_triangulation_quiver()[0]]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(NAMED), st.randoms(use_true_random=False))
def test_classification_is_invariant_under_relabeling(make, rnd):
    q = make()
    ids = list(q.vertices)
    new = [v + 100 for v in ids]
    rnd.shuffle(new)
    assert classify_special(q.relabel(dict(zip(ids, new)))) == classify_special(q)


@st.composite
def glued_triangulations(draw):
    """Random blocks of types I, II, III glued along a random matching that
    always joins a new block to the part already built, so the result is
    connected."""
    n3 = draw(st.integers(0, 3))
    n1 = draw(st.sampled_from([k for k in range(n3 + 2, -1, -2) if k + n3 >= 2]))
    kinds = ["III"] * n3 + [draw(st.sampled_from(["I", "II"])) for _ in range(n1)]
    free = {i: list(SLOTS[k]) for i, k in enumerate(kinds)}
    pairs = []
    for i in range(1, len(kinds)):
        # tie block i to an earlier block with a free slot, if any
        earlier = [(j, s) for j in range(i) for s in free[j]]
        assume(earlier)
        j, s = draw(st.sampled_from(earlier))
        t = draw(st.sampled_from(free[i]))
        free[j].remove(s)
        free[i].remove(t)
        pairs.append(((j, s), (i, t)))
    rest = [(i, s) for i in free for s in free[i]]
    rest = draw(st.permutations(rest))
    while rest:
        x = rest.pop()
        options = [y for y in rest if y[0] != x[0]]
        assume(options)
        y = draw(st.sampled_from(options))
        rest.remove(y)
        pairs.append((x, y))
    vid = {}
    for n, (x, y) in enumerate(pairs):
        vid[x] = vid[y] = n + 1
    nxt = len(pairs) + 1
    blocks = []
    for i, k in enumerate(kinds):
        verts = []
        for s in range({"I": 1, "II": 2, "III": 3}[k]):
            if (i, s) in vid:
                verts.append(vid[(i, s)])
            else:
                verts.append(nxt)
                nxt += 1
        arrows = tuple(f"a{i}_{j}" for j in range({"I": 1, "II": 3, "III": 3}[k]))
        blocks.append(Block(k, arrows, tuple(verts)))
    return blocks, pairs


@settings(max_examples=60, deadline=None)
@given(glued_triangulations())
def test_glued_quivers_are_triangulation_quivers(data):
    blocks, pairs = data
    q, fp = assemble_from_blocks(blocks, pairs)
    assert validate_regularity(q).is_2regular
    for a in q.arrow_names:
        assert fp.f[fp.f[fp.f[a]]] == a
        assert fp.bar[fp.bar[a]] == a
        assert fp.g[a] == fp.bar[fp.f[a]]
    for orb in fp.f_orbits():
        assert len(orb) in (1, 3)
        if len(orb) == 1:
            assert q.source(orb[0]) == q.target(orb[0])
    assert sum(len(o) for o in fp.g_orbits()) == len(q.arrows)
