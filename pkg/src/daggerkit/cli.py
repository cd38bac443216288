"""``daggerkit <command> --input FILE``: run a validator or construction on a manifest.

Exit codes: 0 pass, 1 axiom violation, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import dagger1 as d1
from . import dagger2 as d2
from .fin2cat import Fin2Category, find_right_adjoints, validate_2category
from .fincat import SearchBudget, validate_category
from .manifest import Manifest, ManifestError, dump_payload, parse_manifest, to_payload
from .report import SearchSpaceExceeded, StructureError, ValidationReport

REPORT_SCHEMA = "daggerkit.report/1"
ENV_MAX_SEARCH = "DAGGERKIT_MAX_SEARCH"

COMMANDS = ("check", "unitaries", "fixed-points", "strictify", "univalentize", "complete", "coherentify",
            "adjoints", "strictify-2", "check-pivotal")

TWO_KINDS = ("two-category", "bi-involutive", "coherent-dagger-2", "pivotal")

# command -> kinds it accepts
ACCEPTS = {
    "check": None,
    "unitaries": ("dagger-category",),
    "fixed-points": ("anti-involutive", "dagger-category", "flagged-dagger"),
    "strictify": ("flagged-dagger",),
    "univalentize": ("flagged-dagger",),
    "complete": ("anti-involutive", "flagged-dagger"),
    "coherentify": ("dagger-category",),
    "adjoints": TWO_KINDS,
    "strictify-2": ("coherent-dagger-2",),
    "check-pivotal": ("pivotal",),
}


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    input_kind: str
    checks: ValidationReport = field(default_factory=ValidationReport)
    summary: dict = field(default_factory=dict)
    artifact: dict | None = None

    @property
    def ok(self) -> bool:
        return self.checks.ok

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


@dataclass
class Options:
    max_search: int | None = None


def resolve_max_search(cli_value: int | None, environ=None) -> int:
    """The flag wins, then the environment variable, then the library default."""
    if cli_value is not None:
        return cli_value
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_MAX_SEARCH)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{ENV_MAX_SEARCH} must be an integer, got {raw!r}") from None
    return d1.DEFAULT_MAX_SEARCH


# -- commands ---------------------------------------------------------------

def _base_of(value):
    if isinstance(value, Fin2Category):
        return value
    return value.base


def _check(kind, v, rep: ValidationReport, summary: dict):
    if kind == "category":
        rep.extend(validate_category(v))
        summary.update(objects=len(v.objects), morphisms=len(v.morphisms))
    elif kind == "dagger-category":
        rep.extend(d1.validate_strict_dagger(v, check_base=True))
        summary.update(objects=len(v.base.objects), morphisms=len(v.base.morphisms))
    elif kind == "anti-involutive":
        rep.extend(validate_category(v.base), prefix="base-")
        if rep.ok:
            rep.extend(d1.validate_anti_involutive(v))
    elif kind == "flagged-dagger":
        rep.extend(validate_category(v.base), prefix="base-")
        rep.extend(validate_category(v.c0), prefix="c0-")
        if rep.ok:
            rep.extend(d1.validate_flagged_dagger(v))
        if rep.ok:
            summary["univalent"] = d1.is_univalent(v)
    else:
        b = _base_of(v)
        rep.extend(validate_2category(b), prefix="base-")
        summary.update(objects=len(b.objects), one_cells=len(b.one_cells), two_cells=len(b.two_cells))
        if not rep.ok:
            return
        if kind == "bi-involutive":
            rep.extend(d2.validate_bi_involutive(v))
        elif kind == "coherent-dagger-2":
            rep.extend(d2.validate_coherent_input(v))
        elif kind == "pivotal":
            rep.extend(d2.validate_pivotal(v))


def _anti_of(kind, v):
    if kind == "dagger-category":
        return d1.coherentify(v).anti
    if kind == "flagged-dagger":
        return v.anti
    return v


def run_command(cmd: str, m: Manifest, options: Options | None = None) -> Report:
    options = options or Options()
    if cmd not in COMMANDS:
        raise UsageError(f"unknown command {cmd!r}")
    kind, v = m.resolved_kind, m.value
    accepts = ACCEPTS[cmd]
    if accepts is not None and kind not in accepts:
        raise UsageError(f"command {cmd!r} takes {' or '.join(accepts)}, not {kind}")
    r = Report(cmd, kind)
    rep, summary = r.checks, r.summary
    if cmd in ("check", "check-pivotal"):
        _check(kind, v, rep, summary)
        return r
    # constructions first make sure their input is sound
    if kind == "dagger-category":
        rep.extend(d1.validate_strict_dagger(v, check_base=True))
    elif kind in ("anti-involutive", "flagged-dagger"):
        _check(kind, v, rep, {})
    elif kind == "coherent-dagger-2":
        _check(kind, v, rep, {})
    else:
        rep.extend(validate_2category(_base_of(v)), prefix="base-")
    if not rep.ok:
        return r

    if cmd == "unitaries":
        us = d1.unitaries(v)
        c = v.base
        by_hom = {}
        for u in us:
            key = f"{c.src(u)}>{c.tgt(u)}"
            by_hom[key] = by_hom.get(key, 0) + 1
        summary.update(count=len(us), by_hom=by_hom, unitaries=us)
    elif cmd == "fixed-points":
        a = _anti_of(kind, v)
        fp = d1.fixed_points(a)
        pts = []
        for p in fp.points:
            i = fp.index(p)
            pts.append({"object": p.obj, "h": p.h, "automorphisms": len(fp.hom(i, i))})
        by_obj = {x: len(fp.over(x)) for x in a.base.objects}
        summary.update(points=pts, points_by_object=by_obj, morphisms=len(fp.morphisms))
        r.artifact = to_payload(fp.as_category(), "category")
    elif cmd == "strictify":
        s = d1.strictify(v)
        rep.extend(d1.validate_strict_dagger(s, check_base=True), prefix="output-")
        r.artifact = to_payload(s)
    elif cmd == "univalentize":
        u = d1.univalentize(v)
        summary.update(input_univalent=d1.is_univalent(v), univalent=d1.is_univalent(u))
        r.artifact = to_payload(u)
    elif cmd == "complete":
        out = d1.hermitian_complete(v) if kind == "anti-involutive" else d1.complete_coflagged(v)
        kept = set(out.base.objects)
        summary.update(kept=list(out.base.objects), excised=[x for x in _anti_of(kind, v).base.objects
                                                             if x not in kept])
        rep.extend(d1.validate_flagged_dagger(out), prefix="output-")
        r.artifact = to_payload(out)
    elif cmd == "coherentify":
        f = d1.coherentify(v)
        rep.extend(d1.validate_flagged_dagger(f), prefix="output-")
        r.artifact = to_payload(f)
    elif cmd == "adjoints":
        b = _base_of(v)
        budget = SearchBudget(resolve_max_search(options.max_search))
        found = {f: [[a.fR, a.eta, a.eps] for a in find_right_adjoints(b, f, budget)] for f in b.one_cells}
        summary.update(right_adjoints=found, without_right_adjoint=[f for f, a in found.items() if not a])
    elif cmd == "strictify-2":
        missing = [f for f in v.base.one_cells if f not in v.hf]
        if missing:
            v = d2.CoherentDagger2Input(v.base, v.psi1, v.psi2, v.h1, v.h2, d2.derive_hf(v, missing),
                                        v.flagged_objects)
            summary["derived_hf"] = missing
        out = d2.strictify_bicategory(v)
        rep.extend(d2.validate_bi_involutive(out), prefix="output-")
        r.artifact = to_payload(out)
    return r


# -- output -----------------------------------------------------------------

def report_dict(r: Report) -> dict:
    rep = r.checks
    return {
        "schema": REPORT_SCHEMA,
        "command": r.command,
        "input_kind": r.input_kind,
        "status": r.status,
        "violations": [{"axiom": v.axiom, "witness": [str(w) for w in v.witness], "detail": v.detail}
                       for v in rep.violations],
        "counts": dict(rep.counts),
        "elided": {a: rep.elided(a) for a in rep.counts if rep.elided(a)},
        "warnings": list(rep.warnings),
        "unchecked": list(rep.unchecked),
        "summary": r.summary,
        "artifact": r.artifact,
    }


def emit_report(r: Report, fmt: str = "text") -> bytes:
    if fmt == "machine":
        return (json.dumps(report_dict(r), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise UsageError(f"unknown format {fmt!r}")
    rep = r.checks
    lines = ["OK"] if r.ok else [f"FAIL: {sum(rep.counts.values())} violation(s)"]
    lines += [f"  {v}" for v in rep.violations]
    lines += [f"  ... {n} more {a}" for a in rep.counts if (n := rep.elided(a))]
    lines += [f"warning: {w}" for w in rep.warnings]
    lines += [f"unchecked: {u}" for u in rep.unchecked]
    for k in sorted(r.summary):
        lines.append(f"{k}: {json.dumps(r.summary[k], sort_keys=True)}")
    if r.artifact is not None:
        lines.append("artifact:")
        lines.append(dump_payload(r.artifact).rstrip("\n"))
    return ("\n".join(lines) + "\n").encode("utf-8")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="daggerkit", description="Check and build finite dagger structures.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="manifest file (JSON)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--max-search", type=int, default=None,
                   help=f"search ceiling (default: ${ENV_MAX_SEARCH} or {d1.DEFAULT_MAX_SEARCH})")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.input, "rb") as fh:
            data = fh.read()
    except OSError as e:
        print(f"daggerkit: cannot read {args.input}: {e.strerror}", file=sys.stderr)
        return 2
    try:
        m = parse_manifest(data)
        r = run_command(args.command, m, Options(max_search=args.max_search))
    except ManifestError as e:
        print(f"daggerkit: {args.input}: {e}", file=sys.stderr)
        return 2
    except (UsageError, StructureError, SearchSpaceExceeded, ValueError) as e:
        print(f"daggerkit: {e}", file=sys.stderr)
        return 2
    out = emit_report(r, args.format)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
    return r.exit_code


if __name__ == "__main__":
    sys.exit(main())
