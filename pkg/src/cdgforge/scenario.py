"""JSON scenario files: declarations of algebras, modules and complexes plus a
command list.  The schema is ``SCHEMA`` below; docs/scenario-format.md walks
through it with examples.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import jsonschema
import numpy as np

from .algebra import FinAlgebra, FinModule, direct_sum, quotient
from .field import Field, _is_prime
from .mixed import (Duplex, MixedComplex, alpha_epi, bar_complex, check_duplex, check_mixed,
                    completed_bar, completed_bar_crosscheck, counit_factorization_check, fold,
                    mixed_model_class_test, sbar)
from .model import (cohomology_dims, complex_from, gorenstein_membership, orthogonal_membership, path_object,
                    right_homotopic, weakly_trivial_examples_check)
from .modules import classify_module, ext1, hom_space, is_module_map, projective_resolution, stable_hom
from .verify import Report

log = logging.getLogger(__name__)

EXIT_OK, EXIT_ASSERT, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3

_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_vector = {"type": "array", "items": {"type": "integer"}}
_degree_map = {"type": "object", "patternProperties": {r"^-?\d+$": {}}, "additionalProperties": False}

SCHEMA = {
    "type": "object",
    "required": ["field"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "integer", "minimum": 0, "maximum": (1 << 20) - 1},
        "seed": {"type": "integer"},
        "description": {"type": "string"},
        "algebras": {"type": "object", "additionalProperties": {
            "type": "object",
            "oneOf": [
                {"required": ["truncated_polynomial"], "properties": {"truncated_polynomial": {"type": "integer", "minimum": 1}}},
                {"required": ["mult", "unit"], "properties": {
                    "mult": {"type": "array", "items": _matrix}, "unit": _vector,
                    "generators": _vector}},
            ]}},
        "modules": {"type": "object", "additionalProperties": {
            "type": "object",
            "oneOf": [
                {"required": ["algebra", "regular"]},
                {"required": ["algebra", "action"], "properties": {"action": {"type": "array", "items": _matrix}}},
                {"required": ["quotient_of", "by"], "properties": {"by": _matrix}},
                {"required": ["direct_sum"], "properties": {"direct_sum": {"type": "array", "items": {"type": "string"}}}},
            ]}},
        "maps": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["source", "target", "matrix"],
            "properties": {"source": {"type": "string"}, "target": {"type": "string"}, "matrix": _matrix}}},
        "complexes": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["algebra", "components"],
            "properties": {"algebra": {"type": "string"}, "components": _degree_map, "maps": _degree_map}}},
        "mixed": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["algebra", "w", "components"],
            "properties": {"algebra": {"type": "string"}, "w": _vector, "components": _degree_map,
                           "d": _degree_map, "s": _degree_map}}},
        "duplexes": {"type": "object", "additionalProperties": {
            "type": "object", "required": ["algebra", "w", "M0", "M1", "f", "g"],
            "properties": {"algebra": {"type": "string"}, "w": _vector, "M0": {"type": "string"},
                           "M1": {"type": "string"}, "f": _matrix, "g": _matrix}}},
        "commands": {"type": "array", "items": {
            "type": "object", "required": ["op"],
            "properties": {"op": {"type": "string"}, "id": {"type": "string"}, "args": {"type": "object"},
                           "expect": {"type": "object"}, "tags": {"type": "array", "items": {"type": "string"}}}}},
    },
}


class ScenarioError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class Scenario:
    F: Field
    seed: int = 0
    algebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    mixed: dict = field(default_factory=dict)
    duplexes: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)

    def get(self, table: str, name: str):
        tab = getattr(self, table)
        if name not in tab:
            raise ScenarioError(f"unresolved reference: {table[:-1]} {name!r}", EXIT_INVALID)
        return tab[name]


def _invalid(what: str, exc: Exception) -> ScenarioError:
    return ScenarioError(f"{what}: {exc}", EXIT_INVALID)


def load(path: str) -> Scenario:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot parse {path}: {exc}", EXIT_PARSE) from exc
    return build(raw)


def build(raw: dict) -> Scenario:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        loc = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"schema error at {loc}: {exc.message}", EXIT_PARSE) from exc
    p = raw["field"]
    if p != 0 and not _is_prime(p):
        raise ScenarioError(f"field characteristic {p} is neither 0 nor prime", EXIT_PARSE)
    sc = Scenario(Field(p), seed=raw.get("seed", 0))
    F = sc.F
    for name, decl in raw.get("algebras", {}).items():
        try:
            if "truncated_polynomial" in decl:
                sc.algebras[name] = FinAlgebra.truncated_polynomial(F, decl["truncated_polynomial"], name)
            else:
                sc.algebras[name] = FinAlgebra(F, decl["mult"], decl["unit"], generators=decl.get("generators"),
                                               name=name)
        except ValueError as exc:
            raise _invalid(f"algebra {name}", exc) from exc
    # modules may refer to earlier modules
    for name, decl in raw.get("modules", {}).items():
        try:
            if "regular" in decl:
                M = FinModule.regular(sc.get("algebras", decl["algebra"]), name)
            elif "action" in decl:
                M = FinModule(sc.get("algebras", decl["algebra"]), decl["action"], name=name)
            elif "quotient_of" in decl:
                M, _ = quotient(sc.get("modules", decl["quotient_of"]), F.array(decl["by"]))
            else:
                M = direct_sum(*[sc.get("modules", m) for m in decl["direct_sum"]])
        except ValueError as exc:
            raise _invalid(f"module {name}", exc) from exc
        M.name = name
        sc.modules[name] = M
    for name, decl in raw.get("maps", {}).items():
        X, Y = sc.get("modules", decl["source"]), sc.get("modules", decl["target"])
        m = F.array(decl["matrix"])
        if m.shape != (Y.dim, X.dim):
            raise ScenarioError(f"map {name}: shape {m.shape}, expected {(Y.dim, X.dim)}", EXIT_INVALID)
        if not is_module_map(X, Y, m):
            raise ScenarioError(f"map {name} is not a module map", EXIT_INVALID)
        sc.maps[name] = (X, Y, m)
    for name, decl in raw.get("complexes", {}).items():
        R = sc.get("algebras", decl["algebra"])
        comps = {int(k): sc.get("modules", v) for k, v in decl["components"].items()}
        maps = {int(k): F.array(v) for k, v in decl.get("maps", {}).items()}
        try:
            sc.complexes[name] = complex_from(R, comps, maps, name=name)
        except (ValueError, AssertionError) as exc:
            raise _invalid(f"complex {name}", exc) from exc
    for name, decl in raw.get("mixed", {}).items():
        S = sc.get("algebras", decl["algebra"])
        comps = {int(k): sc.get("modules", v) for k, v in decl["components"].items()}
        d = {int(k): F.array(v) for k, v in decl.get("d", {}).items()}
        s = {int(k): F.array(v) for k, v in decl.get("s", {}).items()}
        try:
            sc.mixed[name] = MixedComplex(S, F.array(decl["w"]), comps, d, s, name=name)
        except ValueError as exc:
            raise _invalid(f"mixed complex {name}", exc) from exc
    for name, decl in raw.get("duplexes", {}).items():
        S = sc.get("algebras", decl["algebra"])
        try:
            sc.duplexes[name] = Duplex(S, F.array(decl["w"]), sc.get("modules", decl["M0"]),
                                       sc.get("modules", decl["M1"]), decl["f"], decl["g"], name=name)
        except ValueError as exc:
            raise _invalid(f"duplex {name}", exc) from exc
    for i, cmd in enumerate(raw.get("commands", [])):
        if cmd["op"] not in OPS:
            raise ScenarioError(f"command {i}: unknown op {cmd['op']!r}", EXIT_PARSE)
        sc.commands.append({"id": cmd.get("id", f"{i:03d}:{cmd['op']}"), "op": cmd["op"],
                            "args": cmd.get("args", {}), "expect": cmd.get("expect", {}),
                            "tags": cmd.get("tags", [])})
    for cmd in sc.commands:
        _resolve_refs(sc, cmd)
    return sc


# -- commands --------------------------------------------------------------------------

_REF_TABLES = {
    "module": "modules", "source": "modules", "target": "modules", "list": "modules",
    "object": "mixed", "duplex": "duplexes", "complex": "complexes", "cover": "maps", "f": "maps", "g": "maps",
    "P": "complexes", "X": "complexes",
}


def _resolve_refs(sc: Scenario, cmd: dict):
    for key, val in cmd["args"].items():
        table = _REF_TABLES.get(key)
        if table is None:
            continue
        for v in (val if isinstance(val, list) else [val]):
            sc.get(table, v)


def _rng(sc: Scenario):
    return np.random.default_rng(sc.seed)


def op_hom_dim(sc, a):
    return {"dim": int(hom_space(sc.get("modules", a["source"]), sc.get("modules", a["target"])).shape[0])}


def op_ext1(sc, a):
    return {"dim": ext1(sc.get("modules", a["source"]), sc.get("modules", a["target"])).dim}


def op_stable_hom(sc, a):
    return {"dim": stable_hom(sc.get("modules", a["source"]), sc.get("modules", a["target"])).dim}


def op_classify(sc, a):
    c = classify_module(sc.get("modules", a["module"]))
    return {"projective": bool(c["projective"]), "injective": bool(c["injective"])}


def op_projective_resolution(sc, a):
    r = projective_resolution(sc.get("modules", a["module"]), a.get("bound", 3), _rng(sc))
    return {"verdict": r.verdict, "syzygy_dims": [m.dim for m in r.syzygies]}


def op_gorenstein(sc, a):
    M = sc.get("modules", a["module"])
    g = gorenstein_membership(M.algebra, M, a.get("bound", 3), _rng(sc))
    W = g["witness"]
    return {"finite_pd": g["finite_pd"], "gorenstein_projective": g["gorenstein_projective"],
            "gorenstein_injective": g["gorenstein_injective"], "witness_period": W.period if W else None,
            "q0_iso": bool(W.q0_iso) if W else None}


def op_orthogonal(sc, a):
    r = orthogonal_membership([sc.get("modules", m) for m in a["list"]], sc.get("modules", a["module"]),
                              a.get("side", "right"))
    return {"verdict": r["verdict"], "ext1": [p["ext1"] for p in r["pairs"]]}


def op_path_object(sc, a):
    I, Y, pi = sc.get("maps", a["cover"])
    P = path_object(Y, I, pi)
    return {"dim": P.PY.dim, "rows_exact": all(P.rows_exact().values())}


def op_right_homotopic(sc, a):
    I, Y, pi = sc.get("maps", a["cover"])
    X, Y1, f = sc.get("maps", a["f"])
    _, _, g = sc.get("maps", a["g"])
    r = right_homotopic(f, g, X, path_object(Y, I, pi))
    return {k: bool(v) for k, v in r.items()}


def op_check_mixed(sc, a):
    problems = check_mixed(sc.get("mixed", a["object"]))
    return {"valid": not problems, "problems": problems}


def op_check_duplex(sc, a):
    problems = check_duplex(sc.get("duplexes", a["duplex"]))
    return {"valid": not problems, "problems": problems}


def op_fold(sc, a):
    X = sc.get("mixed", a["object"])
    M = fold(X, a.get("mode", "product"))
    F = sc.F
    return {"dims": [M.M0.dim, M.M1.dim], "fg_is_w": F.equal(F.mul(M.f, M.g), M.M1.act(X.w)),
            "gf_is_w": F.equal(F.mul(M.g, M.f), M.M0.act(X.w))}


def _duplex_arg(sc, a):
    if "duplex" in a:
        return sc.get("duplexes", a["duplex"])
    return fold(sc.get("mixed", a["object"]))


def op_sbar(sc, a):
    T = sbar(_duplex_arg(sc, a))
    lo, hi = a.get("window", [-4, 4])
    return {"dims": [T.component(n).dim for n in range(lo, hi + 1)], "laws_hold": not T.check(lo, hi)}


def op_completed_bar(sc, a):
    X = sc.get("mixed", a["object"])
    B = completed_bar(X)
    cc = completed_bar_crosscheck(X)
    return {"window": [B.lo, B.hi], "dims": [B.component(n).dim for n in range(B.lo, B.hi + 1)],
            "matches_totalization": cc["equal"]}


def op_alpha_epi(sc, a):
    A = alpha_epi(sc.get("mixed", a["object"]), a.get("depth", 2), _rng(sc))
    return {"surjective": A.surjective, "morphism": A.is_morphism, "kernel_dims": A.kernel_dims_ok,
            "filtration_isos": [f["verdict"] is True for f in A.filtration]}


def op_counit_factorization(sc, a):
    return {"holds": counit_factorization_check(sc.get("mixed", a["object"]))}


def op_bar_complex(sc, a):
    X = sc.get("mixed", a["object"])
    lo, hi = a.get("window", [-6, 6])
    B = bar_complex(X, a.get("depth", X.hi - lo + 2 if X.comps else 1))
    return {"composites_vanish": B.composites_vanish(lo, hi), "acyclic": B.is_acyclic_on(lo, hi)}


def op_model_classes(sc, a):
    r = mixed_model_class_test(sc.get("mixed", a["object"]))
    return {"cofibrant": r["ctr_sing_cofibrant"], "fibrant_abs": r["ctr_sing_fibrant_abs"],
            "cohomology": {str(k): v for k, v in sorted(r["cohomology"].items())}}


def op_cohomology(sc, a):
    h = cohomology_dims(sc.get("complexes", a["complex"]))
    return {"dims": {str(k): v for k, v in sorted(h.items())}}


def op_weakly_trivial(sc, a):
    r = weakly_trivial_examples_check(sc.get("complexes", a["P"]), sc.get("complexes", a["X"]),
                                      tuple(a["window"]))
    return {"verdict": r["verdict"], "refused": r["refused"]}


OPS = {
    "hom_dim": op_hom_dim, "ext1": op_ext1, "stable_hom": op_stable_hom, "classify": op_classify,
    "projective_resolution": op_projective_resolution, "gorenstein": op_gorenstein, "orthogonal": op_orthogonal,
    "path_object": op_path_object, "right_homotopic": op_right_homotopic, "check_mixed": op_check_mixed,
    "check_duplex": op_check_duplex, "fold": op_fold, "sbar": op_sbar, "completed_bar": op_completed_bar,
    "alpha_epi": op_alpha_epi, "counit_factorization": op_counit_factorization, "bar_complex": op_bar_complex,
    "model_classes": op_model_classes, "cohomology": op_cohomology, "weakly_trivial": op_weakly_trivial,
}


def _plain(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _dims_of(v) -> list:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return []
    if isinstance(v, int):
        return [v]
    if isinstance(v, list):
        return [x for x in v if isinstance(x, int) and not isinstance(x, bool)]
    if isinstance(v, dict):
        return [x for x in v.values() if isinstance(x, int) and not isinstance(x, bool)]
    return []


def run(sc: Scenario, only: str | None = None) -> tuple:
    """Execute the commands in order; returns ``(report, lines)``."""
    rep = Report()
    lines = []
    for cmd in sc.commands:
        if only and only != cmd["op"] and only not in cmd["tags"]:
            continue
        try:
            result = _plain(OPS[cmd["op"]](sc, cmd["args"]))
        except ScenarioError:
            raise
        except (ValueError, KeyError) as exc:
            rep.check(cmd["id"], False, status="fail")
            lines.append(f"{cmd['id']}: error: {exc}")
            continue
        lines.append(f"{cmd['id']}: {json.dumps(result, sort_keys=True)}")
        if not cmd["expect"]:
            rep.check(cmd["id"], True)
            continue
        for key, want in cmd["expect"].items():
            got = result.get(key)
            ok = got == want
            rep.check(f"{cmd['id']}/{key}", ok, _dims_of(got), _dims_of(want))
            if not ok:
                lines.append(f"  FAIL {key}: got {json.dumps(got)}, expected {json.dumps(want)}")
    return rep, lines
