"""Verification suites and their JSON/text reports."""

from __future__ import annotations

import json
import time

from .algebra import NotFiniteDimensionalWithinCap, gabriel_quiver, minimal_relation_space, quotient_algebra
from .blocks import BlockShapeViolation, NotBiregular, detect_supcritical_shapes, locate_one_vertex_blocks
from .homology import NotAComplex, NotExact, is_weakly_symmetric, period_of_simple, verify_sequence, wsa_middle_maps
from .quiver import classify_special, validate_regularity
from .specfile import SemanticError, SpecFile, build_hat_spec, build_quiver, build_relations, build_wsa_spec, scalar_field

SUITES = ("analyze", "wsa", "period", "hat", "degenerate")
TOP_KEYS = ("dims", "total_dim", "nilpotency", "gabriel_quiver", "weakly_symmetric", "symmetrizing_form",
            "periods", "certificates", "degeneration", "analysis", "hat", "relations", "checks", "errors")


def empty_report(spec: SpecFile | None = None) -> dict:
    r = {k: None for k in TOP_KEYS}
    r["checks"] = {}
    r["info"] = {}
    r["errors"] = []
    r["singular"] = None
    r["input"] = {"kind": spec.kind, "field": spec.field} if spec else None
    return r


def _quiver_json(q):
    return [[a.name, a.source, a.target] for a in q.arrows]


def _dims_json(a):
    return {str(v): n for v, n in a.dims().items()}


def _scalar(field, x):
    return field.format(x)


# --- suites ------------------------------------------------------------------------


def run_analyze(spec: SpecFile, r: dict):
    q = build_quiver(spec)
    rep = validate_regularity(q)
    out = {
        "vertices": list(q.vertices),
        "arrows": _quiver_json(q),
        "biregular": rep.is_biregular,
        "two_regular": rep.is_2regular,
        "one_vertices": list(rep.one_vertices),
        "classification": classify_special(q),
        "blocks": None,
        "supcritical": None,
    }
    if rep.is_biregular and rep.one_vertices:
        try:
            dec = locate_one_vertex_blocks(q)
            out["blocks"] = [{"kind": b.kind, "arrows": list(b.arrows), "vertices": list(b.vertices)} for b in dec.blocks]
            out["supcritical"] = [
                {"block": list(b.vertices), "triangle": list(t)} for b, t in detect_supcritical_shapes(q, dec)
            ]
        except (BlockShapeViolation, NotBiregular) as exc:
            out["blocks"] = {"error": str(exc)}
    if spec.kind == "wsa":
        from .degeneration import degree_data
        from .wsa import detect_singular, virtual_arrows

        ws = build_wsa_spec(spec)
        out["f_orbits"] = [list(o) for o in ws.fperm.f_orbits()]
        out["g_orbits"] = [list(o) for o in ws.fperm.g_orbits()]
        out["virtual_arrows"] = virtual_arrows(ws)
        out["singular"] = detect_singular(ws)
        dd = degree_data(ws)
        out["degree"] = {"M": dd.M, "u": dd.u, "v": dd.v}
    r["analysis"] = out


def _build_base(spec: SpecFile):
    """(algebra, WSASpec or None, labeled relations)."""
    field = scalar_field(spec)
    cap = int(spec.option("cap")) if spec.option("cap") else None
    if spec.kind == "wsa":
        from .wsa import build_wsa, labeled_relations

        ws = build_wsa_spec(spec)
        return build_wsa(ws, field, cap), ws, [(k, a, e) for k, a, e in labeled_relations(ws)]
    q = build_quiver(spec)
    rels = build_relations(spec, q)
    return quotient_algebra(q, rels, field, cap), None, [("relation", None, e) for e in rels]


def run_wsa(spec: SpecFile, r: dict, emit_relations=False):
    from .wsa import BasisMismatch, check_projective_bases, expected_gabriel_quiver, socle_identity

    a, ws, rels = _build_base(spec)
    field = a.field
    r["dims"] = _dims_json(a)
    r["total_dim"] = a.dim
    r["nilpotency"] = a.nilpotency
    gq = gabriel_quiver(a)
    r["gabriel_quiver"] = _quiver_json(gq)
    r["weakly_symmetric"] = is_weakly_symmetric(a)
    if emit_relations:
        r["relations"] = [{"kind": k, "arrow": x, "expr": e.format(field)} for k, x, e in rels]
    checks = r["checks"]
    if ws is None:
        return a
    checks["weakly_symmetric"] = r["weakly_symmetric"]
    try:
        kinds = check_projective_bases(a, ws)
        checks["basis_formula"] = True
        r["basis_kinds"] = {str(v): k for v, k in kinds.items()}
    except BasisMismatch as exc:
        checks["basis_formula"] = False
        r["errors"].append(str(exc))
    checks["virtual_arrow_law"] = gq == expected_gabriel_quiver(ws)
    ok = True
    ident = {}
    for v in ws.quiver.vertices:
        bx, by = socle_identity(a, ws, v)
        good = bool(bx) and bx == by
        ident[str(v)] = good
        ok = ok and good
    checks["socle_identity"] = ok
    r["socle_identity"] = ident
    return a


def run_period(spec: SpecFile, r: dict, max_steps=8, algebra=None):
    a = algebra
    ws = None
    if a is None:
        a, ws, _ = _build_base(spec)
    elif spec.kind == "wsa":
        ws = build_wsa_spec(spec)
    periods = {}
    for v in a.quiver.vertices:
        p = period_of_simple(a, v, max_steps=max_steps)
        periods[str(v)] = p if p else None
    r["periods"] = periods
    r["checks"]["periodic"] = all(p is not None for p in periods.values())
    if ws is not None and validate_regularity(ws.quiver).is_2regular and not _virtual(ws):
        certs, ok = {}, True
        for v in ws.quiver.vertices:
            try:
                certs[str(v)] = verify_sequence(a, v, *wsa_middle_maps(ws, v)).as_dict()
            except (NotAComplex, NotExact) as exc:
                certs[str(v)] = {"error": str(exc)}
                ok = False
        r["certificates"] = certs
        r["checks"]["resolutions"] = ok
        r["checks"]["period_4"] = all(p == 4 for p in periods.values())
    return a


def _virtual(ws):
    from .wsa import virtual_arrows

    return bool(virtual_arrows(ws))


def run_hat(spec: SpecFile, r: dict, override=None):
    from .hat import (
        build_hat, certify_symmetric_nondegenerate, check_trivial_weights_iso, hat_quiver,
        hat_relations, hat_symmetrizing_form, middle_map_catalog, second_socle_check, to_wsa_spec,
    )
    from .homology import UnsupportedCase
    from .wsa import build_wsa, socle_identity

    hs = build_hat_spec(spec, override)
    field = scalar_field(spec)
    hq, _ = hat_quiver(hs)
    rels = hat_relations(hs, field)
    a = build_hat(hs, field)
    ws = to_wsa_spec(hs, field)
    trivial = hs.with_weights(v2=[1] * hs.blocks.p, v1=[2] * hs.blocks.q)
    base = build_wsa(to_wsa_spec(trivial, field), field)
    out = {
        "quiver": _quiver_json(hq),
        "v2_weights": list(hs.v2_weights),
        "v1_weights": list(hs.v1_weights),
        "added_arrows": [list(p) for p in hs.v2_names] + [[x] for x in hs.v1_names],
        "admissible": hs.is_admissible,
        "relations": {k: [e.format(field) for e in v] for k, v in rels.items()},
        "base_dims": _dims_json(base),
    }
    r["hat"] = out
    r["dims"] = _dims_json(a)
    r["total_dim"] = a.dim
    r["nilpotency"] = a.nilpotency
    gq = gabriel_quiver(a)
    r["gabriel_quiver"] = _quiver_json(gq)
    checks = r["checks"]
    checks["hat_matches_surface_algebra"] = build_wsa(ws, field).dims() == a.dims()
    try:
        check_trivial_weights_iso(base, trivial, field)
        checks["trivial_weights_iso"] = True
    except AssertionError as exc:
        checks["trivial_weights_iso"] = False
        r["errors"].append(str(exc))
    soc2 = second_socle_check(base, hs.quiver, hs.blocks)
    out["base_second_socle"] = {str(p): ok for p, ok in soc2.items()}
    checks["base_second_socle"] = all(soc2.values())
    if not hs.is_admissible:
        return a
    checks["gabriel_is_hat_quiver"] = gq == hq
    r["weakly_symmetric"] = is_weakly_symmetric(a)
    checks["weakly_symmetric"] = r["weakly_symmetric"]
    ok = True
    for v in hq.vertices:
        bx, by = socle_identity(a, ws, v)
        ok = ok and bool(bx) and bx == by
    checks["socle_identity"] = ok
    try:
        t = hat_symmetrizing_form(a, ws)
        cert = certify_symmetric_nondegenerate(a, t)
        r["symmetrizing_form"] = {"symmetric": True, "gram_rank": cert.rank, "dim": cert.dim,
                                  "socle_scalars": {str(v): _scalar(field, x) for v, x in t.socle_scalars.items()}}
        checks["symmetrizing_form"] = True
    except AssertionError as exc:
        r["symmetrizing_form"] = {"error": str(exc)}
        checks["symmetrizing_form"] = False
    periods, certs, good = {}, {}, True
    for v in hq.vertices:
        p = period_of_simple(a, v)
        periods[str(v)] = p if p else None
        try:
            mm = middle_map_catalog(hs, v, field)
            c = verify_sequence(a, v, mm.d3, mm.d2, mm.d1).as_dict()
            c["case"] = mm.case
            certs[str(v)] = c
        except UnsupportedCase as exc:
            certs[str(v)] = {"unsupported": str(exc)}
        except (NotAComplex, NotExact) as exc:
            certs[str(v)] = {"error": str(exc)}
            good = False
    r["periods"] = periods
    r["certificates"] = certs
    checks["period_4"] = all(p == 4 for p in periods.values())
    checks["resolutions"] = good
    return a


def run_degenerate(spec: SpecFile, r: dict, ts=("0", "1", "2"), override=None):
    from .degeneration import build_family, degree_data, special_biserial_check, tetrahedral_obstruction

    field = scalar_field(spec)
    if spec.kind == "wsa" and not spec.hat:
        target = build_wsa_spec(spec)
    else:
        target = build_hat_spec(spec, override)
    dd = degree_data(target)
    obst = tetrahedral_obstruction(target)
    dims = {}
    biserial = {}
    for t in ts:
        a = build_family(target, field(t), field)
        dims[t] = a.dim
        biserial[t] = special_biserial_check(a).passed
    out = {
        "M": dd.M, "u": dd.u, "v": dd.v, "dims": dims, "special_biserial": biserial,
        "obstruction": {"nonpositive": list(obst.nonpositive), "tetrahedral": obst.tetrahedral,
                        "contradiction": obst.contradiction, "applies": obst.applies},
    }
    r["degeneration"] = out
    checks = r["checks"]
    checks["dimension_constant"] = len(set(dims.values())) == 1
    if obst.nonpositive:
        if obst.applies:
            checks["obstruction_certified"] = obst.tetrahedral
    else:
        checks["v_positive"] = all(x >= 1 for x in dd.v.values())
        if "0" in biserial:
            checks["special_biserial_at_0"] = biserial["0"]
        if "1" in biserial:
            checks["not_special_biserial_at_1"] = not biserial["1"]


# Checks that only make sense for non-singular algebras; on a flagged
# singular spec they are kept as information instead of failing the run.
SINGULAR_EXEMPT = ("weakly_symmetric", "socle_identity", "periodic", "period_4", "resolutions")


def run_suites(spec: SpecFile, suites, *, max_steps=8, emit_relations=False, override=None, ts=None) -> dict:
    r = empty_report(spec)
    started = time.perf_counter()
    for s in suites:
        try:
            if s == "analyze":
                run_analyze(spec, r)
            elif s == "wsa":
                run_wsa(spec, r, emit_relations)
            elif s == "period":
                run_period(spec, r, max_steps)
            elif s == "hat":
                run_hat(spec, r, override)
            elif s == "degenerate":
                run_degenerate(spec, r, ts or ("0", "1", "2"), override)
            else:
                raise ValueError(f"unknown suite {s!r}")
        except NotFiniteDimensionalWithinCap as exc:
            r["errors"].append(f"{s}: {exc}")
            r["checks"][f"{s}_finite"] = False
    if spec.kind == "wsa":
        from .wsa import detect_singular

        try:
            r["singular"] = detect_singular(build_wsa_spec(spec))["singular"]
        except SemanticError:
            pass
    if r.get("singular") == "SphericalSingular":
        for k in SINGULAR_EXEMPT:
            if k in r["checks"]:
                r["info"][k] = r["checks"].pop(k)
        r["checks"]["singular_flagged"] = True
    r["_seconds"] = round(time.perf_counter() - started, 3)
    return r


def suites_for(spec: SpecFile, name: str):
    if name != "all":
        return (name,)
    out = ["analyze"]
    if spec.kind in ("wsa", "quiver") and (spec.kind == "wsa" or spec.relations):
        out += ["wsa", "period"]
    if spec.hat or spec.kind == "blocks":
        out.append("hat")
    if spec.kind == "wsa" or spec.hat or spec.kind == "blocks":
        out.append("degenerate")
    return tuple(out)


def failed(r: dict) -> bool:
    return any(v is False for v in r["checks"].values())


def to_json(r: dict) -> str:
    clean = {k: v for k, v in r.items() if not k.startswith("_")}
    return json.dumps(clean, sort_keys=True, indent=2, default=str) + "\n"


def to_text(r: dict) -> str:
    lines = []
    if r.get("input"):
        lines.append(f"input: {r['input']['kind']} over {r['input']['field']}")
    if r.get("analysis"):
        an = r["analysis"]
        lines.append(f"quiver: {len(an['vertices'])} vertices, {len(an['arrows'])} arrows, "
                     f"class {an['classification']}, biregular {an['biregular']}, 2-regular {an['two_regular']}")
        if an.get("blocks"):
            lines.append(f"blocks: {an['blocks']}")
    if r.get("dims") is not None:
        lines.append(f"dims: {r['dims']} total {r['total_dim']} nilpotency {r['nilpotency']}")
    if r.get("gabriel_quiver") is not None:
        lines.append("gabriel quiver: " + ", ".join(f"{n}:{s}->{t}" for n, s, t in r["gabriel_quiver"]))
    if r.get("periods") is not None:
        lines.append(f"periods: {r['periods']}")
    if r.get("symmetrizing_form") is not None:
        lines.append(f"symmetrizing form: {r['symmetrizing_form']}")
    if r.get("degeneration") is not None:
        d = r["degeneration"]
        lines.append(f"degeneration: M={d['M']} dims {d['dims']} special biserial {d['special_biserial']}")
    if r.get("singular") not in (None, "Unknown"):
        lines.append(f"singular flag: {r['singular']}")
    for k, v in sorted(r.get("info", {}).items()):
        lines.append(f"[INFO] {k} = {v}")
    for k, v in sorted(r["checks"].items()):
        lines.append(f"[{'PASS' if v else 'FAIL'}] {k}")
    for e in r["errors"]:
        lines.append(f"error: {e}")
    return "\n".join(lines) + "\n"


def basis_report(spec: SpecFile, vertex) -> dict:
    a, ws, _ = _build_base(spec)
    if vertex not in a.quiver.vertices:
        raise KeyError(vertex)
    field = a.field
    soc, soc2 = a.socle_layers(vertex)
    out = {
        "vertex": vertex,
        "dim": len(a.basis_from(vertex)),
        "basis": [str(p) for p in sorted(a.basis_from(vertex), key=lambda p: (len(p.arrows), p.arrows))],
        "radical_layers": [[str(p) for p in reps] for _, reps in a.radical_layers(vertex)],
        "socle": [e.format(field) for e in soc],
        "second_socle_dim": len(soc2),
    }
    if ws is not None:
        from .wsa import predicted_basis

        out["predicted_basis"] = [str(p) for p in predicted_basis(ws, vertex)]
    mr = minimal_relation_space(a)
    out["minimal_relations_total"] = mr.total
    return out
