"""The ten acceptance criteria, one test each.

Each criterion is a function returning ``(passed, detail)``.  Results are
printed as one line per criterion at the end of the pytest run, and
``python3 tests/test_acceptance.py`` prints them directly.
"""

import json
import os
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from daggerkit import examples  # noqa: E402
from daggerkit import dagger1 as d1  # noqa: E402
from daggerkit import dagger2 as d2  # noqa: E402
from daggerkit.fin2cat import adjoint_comparison, find_right_adjoint, find_right_adjoints  # noqa: E402
from daggerkit.fincat import equivalence_report, inclusion_functor  # noqa: E402
from daggerkit.report import StructureError  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


def c1_dagger_axioms():
    t = time.perf_counter()
    ds = [examples.build_mat_category(2, 2), examples.build_rel_category(2),
          examples.build_inverse_dagger_groupoid("S3")]
    witnesses = sum(len(d1.validate_strict_dagger(d, check_base=True).violations) for d in ds)
    dt = time.perf_counter() - t
    return witnesses == 0 and dt < 10.0, f"{witnesses} witnesses, {dt:.2f}s (limit 10s)"


def c2_unitary_oracle():
    d = examples.build_mat_category(2, 2)
    c = d.base
    us = d1.unitaries(d)
    got = {n: sum(1 for u in us if c.src(u) == c.tgt(u) == str(n)) for n in (1, 2)}
    want = {n: len(oracles.unitary(oracles.F4, n)) for n in (1, 2)}
    ok = got == want == {1: 3, 2: 18}
    return ok, f"library {got}, brute force {want}, expected {{1: 3, 2: 18}}"


def c3_hermitian_fixed_points():
    F = oracles.F4
    a = d1.coherentify(examples.build_mat_category(2, 1)).anti
    fp = d1.fixed_points(a)
    over1 = fp.over("1")
    forms = {oracles.parse_mat(F, p.h) for p in over1}
    herm = set(oracles.hermitian_invertible(F, 1))
    bad = 0
    for u, s, t in fp.morphisms:
        U = oracles.parse_mat(F, u)
        H = oracles.parse_mat(F, fp.points[s].h)
        K = oracles.parse_mat(F, fp.points[t].h)
        if oracles.matmul(F, oracles.matmul(F, U, H), oracles.dagger(F, U)) != K:
            bad += 1
    ok = len(over1) == 1 and forms == herm and bad == 0
    return ok, (f"{len(over1)} point(s) over dim 1, {len(herm)} invertible Hermitian 1x1, "
                f"{len(fp.morphisms)} morphisms checked, {bad} failing UHU^dag = K")


def c4_round_trip():
    failures = []
    strict = examples.strict_corpus()
    for name, d in strict.items():
        s = d1.strictify(d1.coherentify(d))
        if not (s.base == d.base and s.dag == d.dag):
            failures.append(f"strict {name}")
    flagged = examples.flagged_corpus()
    univalent = nonuni = 0
    for name, f in flagged.items():
        g = d1.coherentify(d1.strictify(f))
        if d1.is_univalent(f):
            univalent += 1
            if not d1.dagger_equivalent(g, f):
                failures.append(f"flagged {name}")
        else:
            # the construction forgets non-univalent flag data; compare with the univalent replacement
            nonuni += 1
            if not d1.dagger_equivalent(g, d1.univalentize(f)):
                failures.append(f"flagged {name} (univalentized)")
    detail = (f"{len(strict)} strict, {univalent} univalent flagged, "
              f"{nonuni} non-univalent vs univalentization; failures: {failures or 'none'}")
    return not failures, detail


def _same_flagged(f, g):
    return (f.c0 == g.c0 and f.flag_obj == g.flag_obj and f.flag_mor == g.flag_mor
            and f.base == g.base)


def c5_univalentize(n=500, seed=20251016):
    rng = random.Random(seed)
    bad = []
    nonuni = 0
    for i in range(n):
        f = examples.random_flagged_dagger(rng, max_objects=4)
        nonuni += not d1.is_univalent(f)
        u = d1.univalentize(f)
        if not d1.is_univalent(u) or not d1.validate_flagged_dagger(u).ok:
            bad.append((i, "not univalent"))
        elif not _same_flagged(d1.univalentize(u), u):
            bad.append((i, "not idempotent"))
    return not bad, f"{n} cases ({nonuni} non-univalent inputs), failures: {bad[:5] or 'none'}"


def _completion_ok(a):
    out = d1.hermitian_complete(a)
    if not d1.is_univalent(out) or not d1.validate_flagged_dagger(out).ok:
        return "output not univalent"
    inc = inclusion_functor(out.base, a.base)
    if not equivalence_report(inc).fully_faithful:
        return "inclusion not fully faithful"
    excised = [x for x in a.base.objects if x not in set(out.base.objects)]
    no_points = [x for x in a.base.objects if x not in set(oracles.brute_fixed_objects(a))]
    if excised != no_points:
        return f"excised {excised} but objects without fixed points are {no_points}"
    return None


def c6_hermitian_completion(n=200, seed=7):
    bad = []
    corpus = examples.anti_corpus()
    for name, a in corpus.items():
        err = _completion_ok(a)
        if err:
            bad.append((name, err))
    rng = random.Random(seed)
    excising = 0
    for i in range(n):
        a = examples.random_anti_involutive(rng)
        excising += len(oracles.brute_fixed_objects(a)) < len(a.base.objects)
        err = _completion_ok(a)
        if err:
            bad.append((i, err))
    return not bad, (f"{len(corpus)} corpus + {n} fuzzed ({excising} with excised objects), "
                     f"failures: {bad[:5] or 'none'}")


def c7_zigzag():
    b = examples.build_graded_lines_2cat("Z/3", 3).base
    missing = [f for f in b.one_cells if find_right_adjoint(b, f) is None]
    w = examples.walking_arrow_2cat()
    arrow = find_right_adjoint(w, "f")
    unrelated = 0
    pairs = 0
    for f in b.one_cells:
        found = find_right_adjoints(b, f)
        for x in found:
            for y in found:
                pairs += 1
                unrelated += adjoint_comparison(b, x, y) is None
    ok = not missing and arrow is None and unrelated == 0
    return ok, (f"lines(Z/3,3): {len(b.one_cells) - len(missing)}/{len(b.one_cells)} have right adjoints; "
                f"walking arrow f: {arrow}; {pairs} adjoint pairs compared, {unrelated} not isomorphic")


def _mutate(v, rng):
    b = v.base
    sites = []
    for which in ("dag2", "dag1_on1", "dag1_on2", "phi"):
        pool = b.one_cells if which == "dag1_on1" else b.two_cells
        for k, val in getattr(v, which).items():
            if len(pool) > 1:
                sites.append((which, k, pool))
    which, k, pool = rng.choice(sites)
    tab = dict(getattr(v, which))
    tab[k] = rng.choice([x for x in pool if x != tab[k]])
    parts = {n: getattr(v, n) for n in ("dag2", "dag1_on1", "dag1_on2", "phi")}
    parts[which] = tab
    return d2.BiInvolutive(b, **parts)


def c8_bi_involutive(n=1000, seed=5):
    structures = dict(examples.bi_involutive_corpus())
    for name, c in examples.coherent_corpus().items():
        structures[f"strictify {name}"] = d2.strictify_bicategory(c)
    invalid = [k for k, v in structures.items() if not d2.validate_bi_involutive(v).ok]
    rng = random.Random(seed)
    candidates = [v for v in structures.values() if len(v.base.two_cells) > 1]
    detected = 0
    for _ in range(n):
        w = _mutate(rng.choice(candidates), rng)
        try:
            detected += not d2.validate_bi_involutive(w).ok
        except StructureError:
            detected += 1
    rate = detected / n
    return not invalid and rate >= 0.99, (f"{len(structures)} structures valid except {invalid or 'none'}; "
                                          f"mutations detected {detected}/{n} = {rate:.1%} (need 99%)")


def c9_bridge():
    structures = dict(examples.bi_involutive_corpus())
    for name, c in examples.coherent_corpus().items():
        structures[f"strictify {name}"] = d2.strictify_bicategory(c)
    homs = bad = 0
    for v in structures.values():
        for x, y, sd in d2.hom_strict_daggers(v):
            homs += 1
            bad += not d1.validate_strict_dagger(sd, check_base=True).ok
    return bad == 0, f"{homs} hom-categories across {len(structures)} structures, {bad} failing"


def _run_cli(manifest):
    env = dict(os.environ)
    env.pop("DAGGERKIT_MAX_SEARCH", None)
    out = subprocess.run([sys.executable, "-m", "daggerkit", "check", "--input", str(manifest),
                          "--format", "machine"], capture_output=True, env=env, check=False)
    return out.returncode, out.stdout


def c10_cli_determinism():
    problems = []
    for name in ("category", "dagger", "bi_involutive"):
        code1, first = _run_cli(GOLDEN / f"{name}.json")
        code2, second = _run_cli(GOLDEN / f"{name}.json")
        expected = (GOLDEN / f"{name}.check.expected.json").read_bytes()
        if code1 != 0 or code2 != 0:
            problems.append(f"{name}: exit {code1}/{code2}")
        if first != second:
            problems.append(f"{name}: runs differ")
        if first != expected:
            problems.append(f"{name}: differs from golden")
        elif json.loads(first)["schema"] != "daggerkit.report/1":
            problems.append(f"{name}: schema tag")
    return not problems, f"3 golden manifests x 2 runs; problems: {problems or 'none'}"


CRITERIA = [
    (1, "dagger axiom suite", c1_dagger_axioms),
    (2, "unitary oracle", c2_unitary_oracle),
    (3, "Hermitian fixed-point oracle", c3_hermitian_fixed_points),
    (4, "strictify/coherentify round trip", c4_round_trip),
    (5, "univalentize idempotent and univalent", c5_univalentize),
    (6, "Hermitian completion", c6_hermitian_completion),
    (7, "zig-zag suite", c7_zigzag),
    (8, "bi-involutive suite and mutation testing", c8_bi_involutive),
    (9, "hom-category bridge", c9_bridge),
    (10, "CLI determinism", c10_cli_determinism),
]


def _line(num, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn):
    from conftest import ACCEPTANCE_LINES
    ok, detail = fn()
    line = _line(num, name, ok, detail)
    ACCEPTANCE_LINES.append((num, line))
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [(n, name, *fn()) for n, name, fn in CRITERIA]
    for n, name, ok, detail in results:
        print(_line(n, name, ok, detail))
    sys.exit(0 if all(r[2] for r in results) else 1)
