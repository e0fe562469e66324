"""Line-based input format.

One directive per line, ``#`` starts a comment::

    field Q                      # or: field Fp 10007
    vertices 1 2 3
    arrow alpha 2 3              # name source target
    f-orbit alpha beta nu        # triangulation quivers
    g-orbit a1 a2 a3             # biregular quivers given with g
    block V2 al be nu de @ 1 2 3 5
    glue 0:a 1:x                 # block index : slot name
    weight rho 3                 # m on the g-orbit of the arrow
    param alpha 1/2              # c on the g-orbit of the arrow
    border 1 2/3                 # b at a vertex with a type-I loop
    hat m1=2 mp1=3               # weights of the extension
    relation alpha.beta - nu     # explicit relations (plain quotients)
    option cap 20
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .blocks import SLOT_NAMES, Block, assemble_from_blocks
from .paths import PathExprParseError, parse_path_expr
from .quiver import Arrow, FPermutation, MalformedQuiver, Quiver, derive_bar_and_g, f_from_orbits
from .scalars import QQ, ScalarParseError, field_from_name, parse_rational


class ParseError(ValueError):
    def __init__(self, line, col, msg):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


class SemanticError(ValueError):
    def __init__(self, line, msg):
        where = f"line {line}: " if line else ""
        super().__init__(where + msg)
        self.line = line


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_INT = re.compile(r"^-?[0-9]+$")
_HAT_KEY = re.compile(r"^(m|mp|m')([0-9]+)'?$")


@dataclass(frozen=True)
class SpecFile:
    field: str = "Q"
    vertices: tuple = ()
    arrows: tuple = ()  # (name, source, target)
    f_orbits: tuple = ()
    g_orbits: tuple = ()
    blocks: tuple = ()  # (kind, arrows, vertices)
    glue: tuple = ()  # ((i, slot), (j, slot))
    weights: tuple = ()  # (arrow, int)
    params: tuple = ()  # (arrow, str)
    border: tuple = ()  # (vertex, str)
    hat: tuple = ()  # ("m" | "mp", index, int)
    relations: tuple = ()
    options: tuple = ()  # (key, str)
    lines: tuple = ()  # source line per directive, for diagnostics; ignored by ==

    def __eq__(self, other):
        if not isinstance(other, SpecFile):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.field, self.vertices, self.arrows, self.f_orbits, self.g_orbits, self.blocks,
                self.glue, self.weights, self.params, self.border, self.hat, self.relations, self.options)

    @property
    def kind(self) -> str:
        if self.blocks:
            return "blocks"
        if self.f_orbits:
            return "wsa"
        return "quiver"

    def option(self, key, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default

    def hat_weights(self):
        v2 = {i: w for k, i, w in self.hat if k == "m"}
        v1 = {i: w for k, i, w in self.hat if k == "mp"}
        return v2, v1

    def line_of(self, tag):
        return dict(self.lines).get(tag)


def _vertex(tok, line, col):
    if not _INT.match(tok):
        raise ParseError(line, col, f"vertex {tok!r} is not an integer")
    return int(tok)


def _name(tok, line, col):
    if not _NAME.match(tok):
        raise ParseError(line, col, f"bad arrow name {tok!r}")
    return tok


def parse_spec(text: str) -> SpecFile:
    data = {k: [] for k in ("vertices", "arrows", "f_orbits", "g_orbits", "blocks", "glue", "weights",
                            "params", "border", "hat", "relations", "options", "lines")}
    field = "Q"
    seen_arrows = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        toks = body.split()
        cols, pos = [], 0
        for t in toks:
            pos = body.index(t, pos)
            cols.append(pos + 1)
            pos += len(t)
        head, args = toks[0], toks[1:]

        def need(n, exact=True):
            if (exact and len(args) != n) or (not exact and len(args) < n):
                raise ParseError(ln, cols[0], f"{head} expects {'exactly' if exact else 'at least'} {n} argument(s)")

        if head == "field":
            need(1, exact=False)
            field = " ".join(args)
            try:
                field_from_name(field)
            except ValueError as exc:
                raise ParseError(ln, cols[1], str(exc)) from None
        elif head == "vertices":
            need(1, exact=False)
            data["vertices"] += [_vertex(t, ln, c) for t, c in zip(args, cols[1:])]
        elif head == "arrow":
            need(3)
            name = _name(args[0], ln, cols[1])
            if name in seen_arrows:
                raise ParseError(ln, cols[1], f"duplicate arrow name {name!r}")
            seen_arrows.add(name)
            data["arrows"].append((name, _vertex(args[1], ln, cols[2]), _vertex(args[2], ln, cols[3])))
            data["lines"].append((("arrow", name), ln))
        elif head in ("f-orbit", "g-orbit"):
            need(1, exact=False)
            orb = tuple(_name(t, ln, c) for t, c in zip(args, cols[1:]))
            key = "f_orbits" if head == "f-orbit" else "g_orbits"
            data[key].append(orb)
            data["lines"].append(((key, orb), ln))
        elif head == "block":
            if "@" not in args:
                raise ParseError(ln, cols[0], "block needs '@' between arrows and vertices")
            k = args.index("@")
            kind = args[0]
            if kind not in SLOT_NAMES:
                raise ParseError(ln, cols[1], f"unknown block type {kind!r}")
            arr = tuple(_name(t, ln, c) for t, c in zip(args[1:k], cols[2 : k + 1]))
            verts = tuple(_vertex(t, ln, c) for t, c in zip(args[k + 1 :], cols[k + 2 :]))
            for a in arr:
                if a in seen_arrows:
                    raise ParseError(ln, cols[0], f"duplicate arrow name {a!r}")
                seen_arrows.add(a)
            data["blocks"].append((kind, arr, verts))
            data["lines"].append((("block", len(data["blocks"]) - 1), ln))
        elif head == "glue":
            need(2)
            ends = []
            for t, c in zip(args, cols[1:]):
                if ":" not in t:
                    raise ParseError(ln, c, f"glue end {t!r} must look like index:slot")
                i, slot = t.split(":", 1)
                if not _INT.match(i):
                    raise ParseError(ln, c, f"block index {i!r} is not an integer")
                ends.append((int(i), slot))
            data["glue"].append(tuple(ends))
            data["lines"].append((("glue", len(data["glue"]) - 1), ln))
        elif head == "weight":
            need(2)
            if not _INT.match(args[1]):
                raise ParseError(ln, cols[2], f"weight {args[1]!r} is not an integer")
            data["weights"].append((_name(args[0], ln, cols[1]), int(args[1])))
            data["lines"].append((("weight", args[0]), ln))
        elif head in ("param", "border"):
            need(2)
            try:
                parse_rational(args[1])
            except ScalarParseError as exc:
                raise ParseError(ln, cols[2], str(exc)) from None
            if head == "param":
                data["params"].append((_name(args[0], ln, cols[1]), args[1]))
                data["lines"].append((("param", args[0]), ln))
            else:
                data["border"].append((_vertex(args[0], ln, cols[1]), args[1]))
                data["lines"].append((("border", int(args[0])), ln))
        elif head == "hat":
            need(1, exact=False)
            for t, c in zip(args, cols[1:]):
                data["hat"].append(_parse_hat_item(t, ln, c))
        elif head == "relation":
            need(1, exact=False)
            data["relations"].append(body.strip()[len("relation") :].strip())
            data["lines"].append((("relation", len(data["relations"]) - 1), ln))
        elif head == "option":
            need(2)
            data["options"].append((args[0], args[1]))
        else:
            raise ParseError(ln, cols[0], f"unknown directive {head!r}")
    return SpecFile(field=field, **{k: tuple(v) for k, v in data.items()})


def _parse_hat_item(tok, ln, col):
    if "=" not in tok:
        raise ParseError(ln, col, f"hat weight {tok!r} must look like m1=2 or mp1=3")
    key, val = tok.split("=", 1)
    m = _HAT_KEY.match(key)
    if not m or not _INT.match(val):
        raise ParseError(ln, col, f"bad hat weight {tok!r}")
    kind = "m" if m.group(1) == "m" and not key.endswith("'") else "mp"
    return (kind, int(m.group(2)), int(val))


def parse_weights_option(text: str):
    """``"m1=2,mp1=3"`` -> hat tuple entries."""
    return tuple(_parse_hat_item(t.strip(), 0, 0) for t in text.split(",") if t.strip())


def format_spec(spec: SpecFile) -> str:
    out = [f"field {spec.field}"]
    if spec.vertices:
        out.append("vertices " + " ".join(map(str, spec.vertices)))
    out += [f"arrow {n} {s} {t}" for n, s, t in spec.arrows]
    out += ["f-orbit " + " ".join(o) for o in spec.f_orbits]
    out += ["g-orbit " + " ".join(o) for o in spec.g_orbits]
    for kind, arr, verts in spec.blocks:
        out.append(f"block {kind} {' '.join(arr)} @ {' '.join(map(str, verts))}")
    out += [f"glue {i}:{s} {j}:{t}" for (i, s), (j, t) in spec.glue]
    out += [f"weight {a} {w}" for a, w in spec.weights]
    out += [f"param {a} {c}" for a, c in spec.params]
    out += [f"border {v} {c}" for v, c in spec.border]
    if spec.hat:
        out.append("hat " + " ".join(f"{k}{i}={w}" for k, i, w in spec.hat))
    out += [f"relation {r}" for r in spec.relations]
    out += [f"option {k} {v}" for k, v in spec.options]
    return "\n".join(out) + "\n"


# --- semantic layer -------------------------------------------------------------------


def scalar_field(spec: SpecFile):
    return field_from_name(spec.field)


def build_quiver(spec: SpecFile) -> Quiver:
    if spec.blocks:
        blocks = [Block(k, a, v) for k, a, v in spec.blocks]
        try:
            q, _ = assemble_from_blocks(blocks, list(spec.glue))
        except (ValueError, MalformedQuiver) as exc:
            raise SemanticError(None, str(exc)) from None
        return q
    verts = tuple(spec.vertices) or tuple(sorted({v for _, s, t in spec.arrows for v in (s, t)}))
    try:
        return Quiver(verts, tuple(Arrow(*a) for a in spec.arrows))
    except (ValueError, MalformedQuiver) as exc:
        raise SemanticError(None, str(exc)) from None


def _check_arrows(spec, q, names, tag):
    for a in names:
        if not q.has_arrow(a):
            raise SemanticError(spec.line_of((tag, a)), f"unknown arrow {a!r} in {tag}")


def build_fperm(spec: SpecFile, q: Quiver) -> FPermutation:
    for orb in spec.f_orbits:
        for a in orb:
            if not q.has_arrow(a):
                raise SemanticError(spec.line_of(("f_orbits", orb)), f"unknown arrow {a!r} in f-orbit")
    try:
        return derive_bar_and_g(q, f_from_orbits(spec.f_orbits))
    except ValueError as exc:
        raise SemanticError(None, str(exc)) from None


def _orbit_values(spec, q, items, tag, conv):
    out = {}
    for a, v in items:
        if not q.has_arrow(a):
            raise SemanticError(spec.line_of((tag, a)), f"{tag} given for nonexistent arrow {a!r}")
        out[a] = conv(a, v)
    return out


def build_wsa_spec(spec: SpecFile):
    from .wsa import InvalidSpec, WSASpec

    field = scalar_field(spec)
    q = build_quiver(spec)
    fperm = build_fperm(spec, q)
    m = _orbit_values(spec, q, spec.weights, "weight", lambda a, v: v)
    c = _orbit_values(spec, q, spec.params, "param", lambda a, v: _nonzero(spec, a, field(v)))
    border = {}
    for v, x in spec.border:
        if v not in q.vertices:
            raise SemanticError(spec.line_of(("border", v)), f"border value at unknown vertex {v}")
        border[v] = x
    try:
        return WSASpec.make(q, fperm, m=m, c=c, b=border, field=field)
    except InvalidSpec as exc:
        raise SemanticError(None, str(exc)) from None


def _nonzero(spec, a, x):
    if not x:
        raise SemanticError(spec.line_of(("param", a)), f"parameter c for {a!r} must be nonzero")
    return x


def _hat_lists(spec: SpecFile, p, k, override=None):
    items = override if override is not None else spec.hat
    v2 = {i: w for kind, i, w in items if kind == "m"}
    v1 = {i: w for kind, i, w in items if kind == "mp"}
    for i in list(v2) + list(v1):
        if i < 1:
            raise SemanticError(None, f"hat weight index {i} must start at 1")
    if any(i > p for i in v2) or any(i > k for i in v1):
        raise SemanticError(None, f"hat weights refer to blocks beyond {p} V2 and {k} V1 blocks")
    return [v2.get(i, 1) for i in range(1, p + 1)], [v1.get(i, 2) for i in range(1, k + 1)]


def build_hat_spec(spec: SpecFile, override=None):
    """HatSpec from any of the three input kinds."""
    from .hat import _check_not_spherical, hat_spec_from_blocks, hat_spec_from_quiver, hat_spec_from_wsa

    field = scalar_field(spec)
    if spec.kind == "wsa":
        base = hat_spec_from_wsa(build_wsa_spec(spec))
        v2, v1 = _hat_lists(spec, base.blocks.p, base.blocks.q, override)
        return base.with_weights(v2=v2, v1=v1)
    q = build_quiver(spec)
    m = _orbit_values(spec, q, spec.weights, "weight", lambda a, v: v)
    c = _orbit_values(spec, q, spec.params, "param", lambda a, v: _nonzero(spec, a, field(v)))
    if spec.kind == "blocks":
        blocks = [Block(k, a, v) for k, a, v in spec.blocks]
        p = sum(1 for b in blocks if b.kind == "V2")
        k = sum(1 for b in blocks if b.kind == "V1")
        v2, v1 = _hat_lists(spec, p, k, override)
        return hat_spec_from_blocks(blocks, list(spec.glue), v2, v1, m=m, c=c, field=field)
    _check_not_spherical(q)
    if not spec.g_orbits:
        raise SemanticError(None, "a biregular quiver needs its g-orbits (g-orbit lines) for the extension")
    for orb in spec.g_orbits:
        _check_arrows(spec, q, orb, "g-orbit")
    base = hat_spec_from_quiver(q, spec.g_orbits, m=m, c=c, field=field)
    v2, v1 = _hat_lists(spec, base.blocks.p, base.blocks.q, override)
    return base.with_weights(v2=v2, v1=v1)


def build_relations(spec: SpecFile, q=None):
    field = scalar_field(spec)
    q = q or build_quiver(spec)
    out = []
    for k, text in enumerate(spec.relations):
        try:
            out.append(parse_path_expr(text, q, field))
        except PathExprParseError as exc:
            raise SemanticError(spec.line_of(("relation", k)), str(exc)) from None
    return out
