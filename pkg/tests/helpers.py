"""Shared fixtures: corpus loading and cached builds."""

from functools import lru_cache
from importlib import resources

from qgt.hat import build_hat, to_wsa_spec
from qgt.quiver import triangle_triangulation_quiver
from qgt.scalars import GF, QQ
from qgt.specfile import build_hat_spec, build_wsa_spec, parse_spec
from qgt.wsa import WSASpec, build_wsa

F = GF(10007)
FIELDS = {"Q": QQ, "F10007": F}


def corpus_text(name):
    return (resources.files("qgt") / "corpus" / f"{name}.qgt").read_text()


def corpus(name, field="Q"):
    text = corpus_text(name)
    if field != "Q":
        text = text.replace("field Q", f"field {field}")
    return parse_spec(text)


@lru_cache(maxsize=None)
def wsa(name, field="Q"):
    spec = corpus(name, field)
    ws = build_wsa_spec(spec)
    return ws, build_wsa(ws, FIELDS[field])


@lru_cache(maxsize=None)
def hat(name, weights=None, field="Q"):
    """(HatSpec, algebra) for a corpus entry; weights like (("m", 1, 2),)."""
    spec = corpus(name, field)
    hs = build_hat_spec(spec, list(weights) if weights is not None else None)
    return hs, build_hat(hs, FIELDS[field])


@lru_cache(maxsize=None)
def hat_surface(name, weights=None, field="Q"):
    hs, _ = hat(name, weights, field)
    return to_wsa_spec(hs, FIELDS[field])


@lru_cache(maxsize=None)
def triangle(field="Q"):
    q, fp = triangle_triangulation_quiver()
    ws = WSASpec.make(q, fp, m={"rho": 3, "sigma": 3}, field=FIELDS[field])
    return ws, build_wsa(ws, FIELDS[field])


# admissible instances used across the suites
HAT_CASES = [
    ("almost_spherical", (("m", 1, 2),)),
    ("almost_spherical", (("m", 1, 3),)),
    ("hat_v1", (("mp", 1, 3),)),
    ("hat_v1", (("mp", 1, 4),)),
    ("almost_triangle", (("mp", 1, 3),)),
    ("almost_triangle", (("mp", 1, 4),)),
    ("blocks_v2v2", (("m", 1, 2), ("m", 2, 2))),
    ("blocks_v2v2", (("m", 1, 3), ("m", 2, 3))),
    ("blocks_v2v1", (("m", 1, 2), ("mp", 1, 3))),
    ("blocks_v2v1", (("m", 1, 3), ("mp", 1, 4))),
]

WSA_CORPUS = ["triangle", "spherical", "spherical_21", "almost_spherical", "almost_triangle", "hat_v1", "tetrahedral"]


def case_id(case):
    name, w = case
    return name + "-" + "-".join(f"{k}{i}={v}" for k, i, v in w)
