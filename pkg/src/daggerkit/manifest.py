"""JSON manifests: parsing into live structures and serialising back.

A manifest is one JSON object whose ``kind`` selects a schema (see
``schema/manifest.schema.json``).  A manifest with a ``builder`` key and no
``kind`` is a builder manifest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import jsonschema

from . import examples
from .dagger1 import FixedPoint, FlaggedDagger, StrictDagger, anti_involutive, AntiInvolutive
from .dagger2 import BiInvolutive, CoherentDagger2Input, Pivotal, TwoFunctorData
from .fin2cat import Adjunction, Fin2Category
from .fincat import FinCategory
from .report import StructureError

KINDS = ("category", "dagger-category", "anti-involutive", "flagged-dagger", "two-category",
         "bi-involutive", "coherent-dagger-2", "pivotal", "builder")


class ManifestError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Manifest:
    """``kind`` as written, ``resolved_kind`` after expanding builders, ``value`` the live object."""

    kind: str
    payload: dict
    value: object
    resolved_kind: str


_SCHEMA = None


def schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files("daggerkit").joinpath("schema/manifest.schema.json").read_text("utf-8")
        _SCHEMA = json.loads(text)
    return _SCHEMA


def _validator(kind: str):
    s = schema()
    sub = dict(s["$defs"][kind])
    sub["$defs"] = s["$defs"]
    return jsonschema.Draft202012Validator(sub)


def parse_manifest(data) -> Manifest:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ManifestError(f"not UTF-8 text (byte {e.start})") from None
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as e:
        raise ManifestError(e.msg, e.lineno, e.colno) from None
    return manifest_from_payload(payload)


def manifest_from_payload(payload) -> Manifest:
    if not isinstance(payload, dict):
        raise ManifestError("a manifest must be a JSON object")
    kind = payload.get("kind")
    if kind is None and "builder" in payload:
        kind = "builder"
    if kind not in KINDS:
        raise ManifestError(f"unknown or missing kind {kind!r}; expected one of {', '.join(KINDS)}")
    errors = sorted(_validator(kind).iter_errors(payload), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ManifestError(f"schema violation at {path}: {e.message}")
    try:
        value, resolved = _resolve(kind, payload)
    except StructureError as e:
        raise ManifestError(str(e)) from None
    return Manifest(kind, payload, value, resolved)


def serialize_manifest(m: Manifest) -> str:
    return dump_payload(m.payload)


def dump_payload(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# -- payload -> objects -------------------------------------------------------

def _pairs(rows, what):
    out = {}
    for g, f, h in rows:
        if (g, f) in out:
            raise StructureError(f"{what} given twice for ({g}, {f})")
        out[(g, f)] = h
    return out


def _category(p) -> FinCategory:
    return FinCategory(p["objects"], p["morphisms"], p["identities"], _pairs(p["compose"], "composite"),
                       name=p.get("name", ""))


def _two(p) -> Fin2Category:
    return Fin2Category(p["objects"], p["one_cells"], p["one_identities"], _pairs(p["one_compose"], "1-composite"),
                        p["two_cells"], p["two_identities"], _pairs(p["vertical"], "vertical composite"),
                        _pairs(p["horizontal"], "horizontal composite"), name=p.get("name", ""))


def _anti(p) -> AntiInvolutive:
    c = _category(p)
    for tag, table, pool in (("dual_objects", p["dual_objects"], c.objects),
                             ("dual_morphisms", p["dual_morphisms"], c.morphisms),
                             ("eta", p["eta"], c.objects)):
        for k in table:
            if k not in pool:
                raise StructureError(f"{tag} given for unknown id {k!r}")
    return anti_involutive(c, p["dual_objects"], p["dual_morphisms"], p["eta"])


# builder -> (required, optional) parameters
_BUILDER_PARAMS = {
    "mat": ({"q", "dmax"}, set()),
    "rel": ({"nmax"}, set()),
    "group": ({"group"}, set()),
    "graded-lines": ({"group", "m"}, {"with_zero"}),
    "walking-arrow": (set(), set()),
    "group-2cat": ({"group"}, set()),
    "group-delooping": ({"group"}, set()),
    "mat-delooping": (set(), {"q"}),
    "twisted-lines": (set(), {"group", "m"}),
}


def _builder(p):
    b = p["builder"]
    required, optional = _BUILDER_PARAMS[b]
    given = set(p) - {"kind", "builder"}
    extra = given - required - optional
    if extra:
        raise ManifestError(f"builder {b!r} does not take {', '.join(sorted(extra))}")
    missing = required - given
    if missing:
        raise ManifestError(f"builder {b!r} needs {', '.join(sorted(missing))}")
    try:
        if b == "mat":
            return examples.build_mat_category(p["q"], p["dmax"]), "dagger-category"
        if b == "rel":
            return examples.build_rel_category(p["nmax"]), "dagger-category"
        if b == "group":
            return examples.build_inverse_dagger_groupoid(p["group"]), "dagger-category"
        if b == "graded-lines":
            return examples.build_graded_lines_2cat(p["group"], p["m"], p.get("with_zero", True)), "bi-involutive"
        if b == "walking-arrow":
            return examples.walking_arrow_2cat(), "two-category"
        if b == "group-2cat":
            return examples.group_2cat(p["group"]), "two-category"
        if b == "group-delooping":
            return examples.group_delooping(p["group"]), "coherent-dagger-2"
        if b == "mat-delooping":
            return examples.mat_delooping(p.get("q", 2)), "coherent-dagger-2"
        return examples.twisted_lines_input(p.get("group", "S3"), p.get("m", 2)), "coherent-dagger-2"
    except ValueError as e:
        raise ManifestError(f"builder {b!r}: {e}") from None


def _resolve(kind, p):
    if kind == "builder":
        return _builder(p)
    if kind == "category":
        return _category(p), kind
    if kind == "dagger-category":
        return StrictDagger(_category(p), dict(p["dagger"])), kind
    if kind == "anti-involutive":
        return _anti(p), kind
    if kind == "flagged-dagger":
        a = _anti(p)
        f = FlaggedDagger(a, _category(p["c0"]), {k: FixedPoint(*v) for k, v in p["flag_objects"].items()},
                          dict(p["flag_morphisms"]), coflagged=p.get("coflagged", False))
        f.check_structure()
        return f, kind
    b = _two(p)
    if kind == "two-category":
        return b, kind
    if kind == "bi-involutive":
        return BiInvolutive(b, dict(p["dag2"]), dict(p["dag1_one"]), dict(p["dag1_two"]), dict(p["phi"])), kind
    if kind == "coherent-dagger-2":
        psi = [TwoFunctorData(dict(q["objects"]), dict(q["one"]), dict(q["two"])) for q in (p["psi1"], p["psi2"])]
        return CoherentDagger2Input(b, psi[0], psi[1], dict(p["h1"]), dict(p["h2"]), dict(p["hf"]),
                                    p.get("flagged_objects")), kind
    adjs = {f: Adjunction(f, *v) for f, v in p["adjoints"].items()}
    return Pivotal(b, adjs, dict(p["theta"]), dict(p["tau"])), kind


# -- objects -> payload -------------------------------------------------------

def _head(kind, name):
    out = {"kind": kind}
    if name:
        out["name"] = name
    return out


def category_fields(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [list(t) for t in c.morphism_triples()],
        "identities": dict(c.identities),
        "compose": [[g, f, h] for (g, f), h in c.table.items()],
    }


def two_fields(b: Fin2Category) -> dict:
    sk = b.skeleton
    return {
        "objects": list(b.objects),
        "one_cells": [list(t) for t in sk.morphism_triples()],
        "one_identities": dict(sk.identities),
        "one_compose": [[g, f, h] for (g, f), h in sk.table.items()],
        "two_cells": [list(t) for t in b.two_cell_triples()],
        "two_identities": dict(b.two_identities),
        "vertical": [[x, y, z] for (x, y), z in b.vertical_table.items()],
        "horizontal": [[x, y, z] for (x, y), z in b.horizontal_table.items()],
    }


def _anti_fields(a: AntiInvolutive) -> dict:
    return dict(category_fields(a.base), dual_objects=dict(a.D.obj_map), dual_morphisms=dict(a.D.mor_map),
                eta=dict(a.eta.components))


def to_payload(obj, kind: str | None = None) -> dict:
    """Serialise a live structure; ``kind`` is inferred from its type when omitted."""
    if kind is None:
        kind = {FinCategory: "category", StrictDagger: "dagger-category", AntiInvolutive: "anti-involutive",
                FlaggedDagger: "flagged-dagger", Fin2Category: "two-category", BiInvolutive: "bi-involutive",
                CoherentDagger2Input: "coherent-dagger-2", Pivotal: "pivotal"}[type(obj)]
    if kind == "category":
        return dict(_head(kind, obj.name), **category_fields(obj))
    if kind == "dagger-category":
        return dict(_head(kind, obj.base.name), **category_fields(obj.base), dagger=dict(obj.dag))
    if kind == "anti-involutive":
        return dict(_head(kind, obj.base.name), **_anti_fields(obj))
    if kind == "flagged-dagger":
        c0 = category_fields(obj.c0)
        if obj.c0.name:
            c0 = dict(name=obj.c0.name, **c0)
        out = dict(_head(kind, obj.base.name), **_anti_fields(obj.anti), c0=c0,
                   flag_objects={k: [p.obj, p.h] for k, p in obj.flag_obj.items()},
                   flag_morphisms=dict(obj.flag_mor))
        if obj.coflagged:
            out["coflagged"] = True
        return out
    if kind == "two-category":
        return dict(_head(kind, obj.name), **two_fields(obj))
    if kind == "bi-involutive":
        return dict(_head(kind, obj.base.name), **two_fields(obj.base), dag2=dict(obj.dag2),
                    dag1_one=dict(obj.dag1_on1), dag1_two=dict(obj.dag1_on2), phi=dict(obj.phi))
    if kind == "coherent-dagger-2":
        def psi(t):
            return {"objects": dict(t.obj), "one": dict(t.one), "two": dict(t.two)}
        out = dict(_head(kind, obj.base.name), **two_fields(obj.base), psi1=psi(obj.psi1), psi2=psi(obj.psi2),
                   h1=dict(obj.h1), h2=dict(obj.h2), hf=dict(obj.hf))
        if obj.flagged_objects is not None:
            out["flagged_objects"] = list(obj.flagged_objects)
        return out
    if kind == "pivotal":
        return dict(_head(kind, obj.base.name), **two_fields(obj.base),
                    adjoints={f: [a.fR, a.eta, a.eps] for f, a in obj.adjoint_choice.items()},
                    theta=dict(obj.theta), tau=dict(obj.tau))
    raise ValueError(f"cannot serialise kind {kind!r}")
