"""Exact computations with quivers, weighted surface algebras and hat variants."""

from .algebra import FDAlgebra, NotFiniteDimensionalWithinCap, gabriel_quiver, minimal_relation_space, quotient_algebra
from .blocks import Block, BlockDecomposition, assemble_from_blocks, locate_one_vertex_blocks
from .degeneration import build_family, degree_data, special_biserial_check, tetrahedral_obstruction
from .hat import HatSpec, build_hat, check_trivial_weights_iso, hat_quiver, hat_symmetrizing_form
from .homology import period_of_simple, verify_sequence
from .paths import Path, PathExpr, parse_path_expr
from .quiver import FPermutation, Quiver, derive_bar_and_g, f_from_orbits
from .scalars import GF, QQ, field_from_name
from .specfile import build_hat_spec, build_wsa_spec, parse_spec
from .wsa import WSASpec, build_wsa

__version__ = "0.1.0"

__all__ = [
    "FDAlgebra", "NotFiniteDimensionalWithinCap", "gabriel_quiver", "minimal_relation_space", "quotient_algebra",
    "Block", "BlockDecomposition", "assemble_from_blocks", "locate_one_vertex_blocks",
    "build_family", "degree_data", "special_biserial_check", "tetrahedral_obstruction",
    "HatSpec", "build_hat", "check_trivial_weights_iso", "hat_quiver", "hat_symmetrizing_form",
    "period_of_simple", "verify_sequence",
    "Path", "PathExpr", "parse_path_expr",
    "FPermutation", "Quiver", "derive_bar_and_g", "f_from_orbits",
    "GF", "QQ", "field_from_name",
    "build_hat_spec", "build_wsa_spec", "parse_spec",
    "WSASpec", "build_wsa",
]
