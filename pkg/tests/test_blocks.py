import pytest

from qgt.blocks import BadPairing, Block, BlockShapeViolation, NotBiregular, assemble_from_blocks, detect_supcritical_shapes, locate_one_vertex_blocks
from qgt.quiver import (
    Quiver, almost_triangle_quiver, spherical_quiver, spherical_triangulation_quiver, triangle_triangulation_quiver,
)


def test_two_type_two_blocks_give_the_triangle_triangulation():
    blocks = [Block("II", ("rho", "delta", "nu"), (1, 2)), Block("II", ("sigma", "beta", "alpha"), (3, 2))]
    q, fp = assemble_from_blocks(blocks, [((0, "o"), (1, "o"))])
    ref, ref_fp = triangle_triangulation_quiver()
    assert q == ref
    assert fp.f_orbits() == ref_fp.f_orbits() == [("alpha", "sigma", "beta"), ("delta", "nu", "rho")]


def test_four_triangles_give_the_sphere():
    blocks = [
        Block("III", ("alpha", "mu", "delta"), (1, 2, 5)),
        Block("III", ("beta", "nu", "xi"), (2, 3, 5)),
        Block("III", ("sigma", "rho", "mu'"), (4, 1, 6)),
        Block("III", ("gamma", "xi'", "omega"), (3, 4, 6)),
    ]
    pairs = [((0, "o1"), (2, "o2")), ((0, "o2"), (1, "o1")), ((0, "o3"), (1, "o3")),
             ((1, "o2"), (3, "o1")), ((2, "o1"), (3, "o2")), ((2, "o3"), (3, "o3"))]
    q, fp = assemble_from_blocks(blocks, pairs)
    ref, ref_fp = spherical_triangulation_quiver()
    assert q == ref
    assert set(fp.f_orbits()) == set(ref_fp.f_orbits())


def test_unmatched_v_slots():
    with pytest.raises(BadPairing):
        assemble_from_blocks([Block("V1", ("e", "h"), (1, 2)), Block("V2", ("a", "b", "c", "d"), (3, 4, 5, 6))], [])


def test_slot_matched_twice():
    blocks = [Block("I", ("x",), (1,)), Block("I", ("y",), (1,)), Block("I", ("z",), (1,))]
    with pytest.raises(BadPairing):
        assemble_from_blocks(blocks, [((0, "o"), (1, "o")), ((0, "o"), (2, "o"))])


def test_spherical_quiver_has_two_v2_blocks():
    dec = locate_one_vertex_blocks(spherical_quiver())
    assert dec.p == 2 and dec.q == 0
    assert {b.vertices for b in dec.blocks} == {(1, 2, 3, 5), (3, 4, 1, 6)}
    assert dec.v2_blocks[0].arrows == ("alpha", "beta", "nu", "delta")


def test_almost_triangle_has_one_v1_block():
    dec = locate_one_vertex_blocks(almost_triangle_quiver())
    assert dec.p == 0 and dec.q == 1
    assert dec.v1_blocks[0].vertices == (2, 3)


def test_block_shape_violation():
    q = Quiver((1, 2, 3), (("a", 1, 2), ("b", 2, 3), ("c", 3, 1)))
    with pytest.raises(BlockShapeViolation):
        locate_one_vertex_blocks(q)


def test_not_biregular():
    q = Quiver((1, 2), (("a", 1, 2), ("b", 1, 2), ("c", 2, 1)))
    with pytest.raises(NotBiregular):
        locate_one_vertex_blocks(q)


def test_every_one_vertex_covered_once():
    for q in (spherical_quiver(), almost_triangle_quiver()):
        dec = locate_one_vertex_blocks(q)
        from qgt.quiver import validate_regularity

        ones = validate_regularity(q).one_vertices
        covered = [v for b in dec.blocks for v in (b.vertices[1:2] if b.kind == "V1" else (b.vertices[1], b.vertices[3]))]
        assert sorted(covered) == sorted(ones)


SUPCRITICAL = Quiver(
    (1, 2, 3, 4, 5, 6),
    (("al", 1, 2), ("be", 2, 3), ("nu", 3, 4), ("de", 4, 1), ("s", 1, 3), ("gam", 3, 5), ("t", 5, 1),
     ("ep", 5, 6), ("et", 6, 5)),
)


def test_supcritical_configuration_detected():
    dec = locate_one_vertex_blocks(SUPCRITICAL)
    found = detect_supcritical_shapes(SUPCRITICAL, dec)
    assert len(found) == 1
    blk, tri = found[0]
    assert blk.vertices == (1, 2, 3, 4) and tri == (1, 3, 5)


def test_spherical_blocks_are_not_supcritical():
    q = spherical_quiver()
    assert detect_supcritical_shapes(q, locate_one_vertex_blocks(q)) == []


def test_no_one_vertices_means_no_shapes():
    q, _ = triangle_triangulation_quiver()
    assert detect_supcritical_shapes(q, locate_one_vertex_blocks(q)) == []
