"""Deterministic builders for small categories with known answers, plus fuzzers.

Every builder validates what it returns and raises on failure.
"""

from __future__ import annotations

import functools
import itertools
import random

from .dagger1 import (AntiInvolutive, FlaggedDagger, StrictDagger, anti_involutive, coherentify,
                      fixed_point_isos, fixed_points, fixed_points_over, restrict_anti, validate_anti_involutive,
                      validate_flagged_dagger, validate_strict_dagger)
from .dagger2 import BiInvolutive, CoherentDagger2Input, TwoFunctorData, validate_bi_involutive, \
    validate_coherent_input
from .fin2cat import Fin2Category, find_right_adjoint, locally_discrete, validate_2category
from .fincat import FinCategory, SearchBudget, category_from_group, disjoint_union, iter_functors, validate_category
from .gf import GaloisField

MAT_LIMITS = {2: 2, 3: 1}
REL_LIMIT = 3
GROUP_LIMIT = 6
ROOTS_LIMIT = 4


def _require(rep, what):
    if not rep.ok:
        raise AssertionError(f"{what} failed validation:\n{rep}")


# -- groups -------------------------------------------------------------------

def _perm_name(p):
    return "".join(str(i) for i in p)


def group_table(g):
    """``(elements, mult)`` for a named group or a user table; unit first.

    Names: ``trivial``, ``Z/n``, ``S3``, ``Z2xZ2``.  A table is a pair
    ``(elements, mult)`` with ``mult[(a, b)] = a*b``.
    """
    if isinstance(g, str):
        if g == "trivial":
            els, mult = ["e"], {("e", "e"): "e"}
        elif g.startswith("Z/"):
            n = int(g[2:])
            if n < 1:
                raise ValueError(f"bad cyclic order in {g!r}")
            els = [str(i) for i in range(n)]
            mult = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
        elif g == "S3":
            perms = list(itertools.permutations(range(3)))
            els = [_perm_name(p) for p in perms]
            # (a.b)(i) = a(b(i)), b acts first
            mult = {(_perm_name(a), _perm_name(b)): _perm_name(tuple(a[b[i]] for i in range(3)))
                    for a in perms for b in perms}
        elif g == "Z2xZ2":
            els = ["00", "01", "10", "11"]
            mult = {(a, b): "".join(str((int(x) + int(y)) % 2) for x, y in zip(a, b)) for a in els for b in els}
        else:
            raise ValueError(f"unknown group name {g!r}")
    else:
        els, mult = list(g[0]), dict(g[1])
    _check_group(els, mult)
    return els, mult


def _check_group(els, mult):
    if not els:
        raise ValueError("group has no elements")
    s = set(els)
    for a in els:
        for b in els:
            if mult.get((a, b)) not in s:
                raise ValueError(f"group table undefined or unresolved at ({a}, {b})")
    e = els[0]
    for a in els:
        if mult[(e, a)] != a or mult[(a, e)] != a:
            raise ValueError(f"first element {e!r} is not a unit (fails at {a!r})")
        if not any(mult[(a, b)] == e for b in els):
            raise ValueError(f"element {a!r} has no inverse")
    for a, b, c in itertools.product(els, repeat=3):
        if mult[(mult[(a, b)], c)] != mult[(a, mult[(b, c)])]:
            raise ValueError(f"group table is not associative at ({a}, {b}, {c})")


def group_inverses(els, mult) -> dict:
    return {a: next(b for b in els if mult[(a, b)] == els[0]) for a in els}


def is_abelian(els, mult) -> bool:
    return all(mult[(a, b)] == mult[(b, a)] for a in els for b in els)


# -- strict dagger categories ------------------------------------------------

def mat_id(F: GaloisField, A, rows: int, cols: int) -> str:
    body = ";".join(",".join(F.name(x) for x in row) for row in A)
    return f"M{rows}x{cols}[{body}]"


def build_mat_category(q: int, dmax: int) -> StrictDagger:
    """Matrices over F_{q^2}: objects are dimensions, ``hom(m, n)`` holds n x m matrices."""
    if q not in MAT_LIMITS:
        raise ValueError(f"q must be one of {sorted(MAT_LIMITS)}, got {q}")
    if dmax < 0 or dmax > MAT_LIMITS[q]:
        raise ValueError(f"dmax={dmax} exceeds the size guard {MAT_LIMITS[q]} for q={q}")
    F = GaloisField(q)
    dims = range(dmax + 1)
    objs = [str(d) for d in dims]
    mats = {}   # (m, n) -> list of (id, matrix)
    by_mat = {}
    triples = []
    for m in dims:
        for n in dims:
            row = []
            for A in F.matrices(n, m):
                i = mat_id(F, A, n, m)
                row.append((i, A))
                by_mat[(n, m, A)] = i
                triples.append((i, str(m), str(n)))
            mats[(m, n)] = row
    comp = {}
    for m in dims:
        for n in dims:
            for p in dims:
                for fi, A in mats[(m, n)]:
                    for gi, B in mats[(n, p)]:
                        comp[(gi, fi)] = by_mat[(p, m, F.matmul(B, A, p, n, m))]
    idents = {str(d): by_mat[(d, d, F.identity_matrix(d))] for d in dims}
    dag = {}
    for (m, n), row in mats.items():
        for i, A in row:
            dag[i] = by_mat[(m, n, F.conj_transpose(A, n, m))]
    cat = FinCategory(objs, triples, idents, comp, name=f"Mat(F{q * q},{dmax})")
    d = StrictDagger(cat, dag)
    _require(validate_strict_dagger(d, check_base=True), cat.name)
    return d


def build_rel_category(nmax: int) -> StrictDagger:
    """Finite sets {1..k} for k <= nmax and relations, with converse as dagger."""
    if nmax < 0 or nmax > REL_LIMIT:
        raise ValueError(f"nmax={nmax} exceeds the size guard {REL_LIMIT}")
    sizes = range(nmax + 1)
    rels = {}
    triples = []

    def rid(m, n, bits):
        return f"R{m}>{n}:" + "".join("1" if b else "0" for b in bits)

    for m in sizes:
        for n in sizes:
            row = []
            for bits in itertools.product((0, 1), repeat=m * n):
                i = rid(m, n, bits)
                row.append((i, bits))
                triples.append((i, str(m), str(n)))
            rels[(m, n)] = row
    comp = {}
    for m in sizes:
        for n in sizes:
            for p in sizes:
                for fi, R in rels[(m, n)]:
                    for gi, S in rels[(n, p)]:
                        out = tuple(int(any(R[i * n + j] and S[j * p + k] for j in range(n)))
                                    for i in range(m) for k in range(p))
                        comp[(gi, fi)] = rid(m, p, out)
    idents = {str(k): rid(k, k, tuple(int(i == j) for i in range(k) for j in range(k))) for k in sizes}
    dag = {}
    for (m, n), row in rels.items():
        for i, R in row:
            dag[i] = rid(n, m, tuple(R[a * n + b] for b in range(n) for a in range(m)))
    cat = FinCategory([str(k) for k in sizes], triples, idents, comp, name=f"Rel({nmax})")
    d = StrictDagger(cat, dag)
    _require(validate_strict_dagger(d, check_base=True), cat.name)
    return d


def build_inverse_dagger_groupoid(g) -> StrictDagger:
    """One-object groupoid of a group with inversion as the dagger."""
    els, mult = group_table(g)
    cat = category_from_group(els, mult, name=g if isinstance(g, str) else "group")
    d = StrictDagger(cat, group_inverses(els, mult))
    _require(validate_strict_dagger(d, check_base=True), cat.name)
    return d


def walking_arrow_category() -> FinCategory:
    return FinCategory(["a", "b"], [("1a", "a", "a"), ("1b", "b", "b"), ("f", "a", "b")],
                       {"a": "1a", "b": "1b"},
                       {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f", ("1b", "f"): "f"},
                       name="arrow")


def walking_iso_category() -> FinCategory:
    """Two objects and a single iso ``u: a -> b`` with inverse ``v``."""
    mors = [("1a", "a", "a"), ("1b", "b", "b"), ("u", "a", "b"), ("v", "b", "a")]
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("u", "1a"): "u", ("1b", "u"): "u",
            ("v", "1b"): "v", ("1a", "v"): "v", ("v", "u"): "1a", ("u", "v"): "1b"}
    return FinCategory(["a", "b"], mors, {"a": "1a", "b": "1b"}, comp, name="iso")


def codiscrete_times_group(objects, g="trivial") -> FinCategory:
    """Exactly one morphism ``x -> y`` per group element; ids ``x>y:g``."""
    els, mult = group_table(g)
    mors = [(f"{x}>{y}:{e}", x, y) for x in objects for y in objects for e in els]
    comp = {(f"{y}>{z}:{b}", f"{x}>{y}:{a}"): f"{x}>{z}:{mult[(b, a)]}"
            for x in objects for y in objects for z in objects for a in els for b in els}
    idents = {x: f"{x}>{x}:{els[0]}" for x in objects}
    name = f"codiscrete({len(objects)})x{g}" if isinstance(g, str) else f"codiscrete({len(objects)})"
    return FinCategory(list(objects), mors, idents, comp, name=name)


def walking_iso_dagger() -> StrictDagger:
    c = walking_iso_category()
    d = StrictDagger(c, {"1a": "1a", "1b": "1b", "u": "v", "v": "u"})
    _require(validate_strict_dagger(d), "walking iso dagger")
    return d


def strict_corpus() -> dict:
    """Strict daggers used for round-trip and bridge checks."""
    return {
        "Mat(F4,1)": build_mat_category(2, 1),
        "Mat(F4,2)": build_mat_category(2, 2),
        "Mat(F9,1)": build_mat_category(3, 1),
        "Rel(1)": build_rel_category(1),
        "Rel(2)": build_rel_category(2),
        "Z/1": build_inverse_dagger_groupoid("trivial"),
        "Z/2": build_inverse_dagger_groupoid("Z/2"),
        "Z/4": build_inverse_dagger_groupoid("Z/4"),
        "Z2xZ2": build_inverse_dagger_groupoid("Z2xZ2"),
        "S3": build_inverse_dagger_groupoid("S3"),
        "iso": walking_iso_dagger(),
    }


# -- anti-involutive categories ----------------------------------------------

def twisted_group(g="Z/2", eta=None) -> AntiInvolutive:
    """One-object abelian group with ``D = id`` and ``eta`` a central involution.

    A non-trivial ``eta`` leaves no fixed points at all.
    """
    els, mult = group_table(g)
    if not is_abelian(els, mult):
        raise ValueError("D = id is only contravariant on an abelian group")
    eta = els[-1] if eta is None else eta
    c = category_from_group(els, mult, name=f"{g}~")
    a = anti_involutive(c, {"*": "*"}, {e: e for e in els}, {"*": eta})
    _require(validate_anti_involutive(a), "twisted group")
    return a


def incoherent_cyclic() -> AntiInvolutive:
    """Z/4 with ``D = id`` and ``eta`` a generator; natural but not coherent."""
    els, mult = group_table("Z/4")
    c = category_from_group(els, mult, name="Z/4")
    return anti_involutive(c, {"*": "*"}, {e: e for e in els}, {"*": "1"})


def walking_iso_swap() -> AntiInvolutive:
    """D exchanges the two objects and fixes ``u`` and ``v``; eta is trivial."""
    c = walking_iso_category()
    a = anti_involutive(c, {"a": "b", "b": "a"}, {"1a": "1b", "1b": "1a", "u": "u", "v": "v"},
                        {"a": "1a", "b": "1b"})
    _require(validate_anti_involutive(a), "walking iso swap")
    return a


def _union_anti(*parts: AntiInvolutive) -> AntiInvolutive:
    c = disjoint_union(*(p.base for p in parts))
    om, mm, eta = {}, {}, {}
    for k, p in enumerate(parts):
        pre = f"{k}."
        om.update({pre + x: pre + y for x, y in p.D.obj_map.items()})
        mm.update({pre + f: pre + g for f, g in p.D.mor_map.items()})
        eta.update({pre + x: pre + e for x, e in p.eta.components.items()})
    a = anti_involutive(c, om, mm, eta)
    _require(validate_anti_involutive(a), "disjoint union")
    return a


def excision_example() -> AntiInvolutive:
    """A point (with trivial structure) next to a twisted Z/2 that has no fixed points."""
    return _union_anti(coherentify(build_inverse_dagger_groupoid("trivial")).anti, twisted_group("Z/2"))


def twisted_codiscrete(objects=("a", "b"), g="Z/2") -> AntiInvolutive:
    """Codiscrete x abelian group, ``D`` fixing objects, ``eta`` the last element everywhere."""
    els, mult = group_table(g)
    c = codiscrete_times_group(list(objects), g)
    om = {x: x for x in objects}
    mm = {f"{x}>{y}:{e}": f"{y}>{x}:{e}" for x in objects for y in objects for e in els}
    a = anti_involutive(c, om, mm, {x: f"{x}>{x}:{els[-1]}" for x in objects})
    _require(validate_anti_involutive(a), "twisted codiscrete")
    return a


def anti_corpus() -> dict:
    out = {f"strict {k}": coherentify(d).anti for k, d in strict_corpus().items() if k != "Mat(F4,2)"}
    out.update({
        "twisted Z/2": twisted_group("Z/2"),
        "twisted Z/4": twisted_group("Z/4", eta="2"),
        "excision": excision_example(),
        "iso swap": walking_iso_swap(),
        "twisted codiscrete": twisted_codiscrete(),
    })
    return out


def all_anti_involutions(base: FinCategory, limit: int = 200_000) -> list:
    """Every coherent anti-involution on ``base`` (D fully faithful, eta any coherent choice)."""
    c = base
    out = []
    budget = SearchBudget(limit)
    for D in iter_functors(c, c, contravariant=True, fully_faithful=True, budget=budget):
        dd_obj = {x: D.obj_map[D.obj_map[x]] for x in c.objects}
        cands = [c.isos(dd_obj[x], x) for x in c.objects]
        if any(not cs for cs in cands):
            continue
        for choice in itertools.product(*cands):
            budget.tick()
            eta = dict(zip(c.objects, choice))
            if _eta_ok(c, D, eta):
                out.append(anti_involutive(c, D.obj_map, D.mor_map, eta))
    return out


def _eta_ok(c, D, eta) -> bool:
    m = D.mor_map
    for f in c.morphisms:
        x, y = c.src(f), c.tgt(f)
        if c.compose(eta[y], m[m[f]]) != c.compose(f, eta[x]):
            return False
    for x in c.objects:
        if c.inverse(eta[D.obj_map[x]]) != m[eta[x]]:
            return False
    return True


def _fuzz_bases():
    return [
        lambda: build_inverse_dagger_groupoid("trivial").base,
        lambda: build_inverse_dagger_groupoid("Z/2").base,
        lambda: build_inverse_dagger_groupoid("Z/3").base,
        lambda: build_inverse_dagger_groupoid("Z/4").base,
        lambda: build_inverse_dagger_groupoid("Z2xZ2").base,
        lambda: build_inverse_dagger_groupoid("S3").base,
        lambda: codiscrete_times_group(["a", "b"]),
        lambda: codiscrete_times_group(["a", "b"], "Z/2"),
        lambda: codiscrete_times_group(["a", "b", "c"]),
        walking_arrow_category,
        walking_iso_category,
        lambda: build_mat_category(2, 1).base,
        lambda: build_rel_category(1).base,
        lambda: disjoint_union(*(build_inverse_dagger_groupoid(g).base for g in ("trivial", "Z/2"))),
        lambda: disjoint_union(*(build_inverse_dagger_groupoid("Z/2").base for _ in range(2))),
        lambda: disjoint_union(*(build_inverse_dagger_groupoid(g).base for g in ("trivial", "trivial", "Z/3"))),
        lambda: disjoint_union(walking_arrow_category(), build_inverse_dagger_groupoid("Z/2").base),
        lambda: disjoint_union(codiscrete_times_group(["a", "b"]), build_inverse_dagger_groupoid("Z/2").base),
    ]


N_FUZZ_BASES = len(_fuzz_bases())


@functools.lru_cache(maxsize=None)
def _anti_pool(k: int) -> tuple:
    return tuple(all_anti_involutions(_fuzz_bases()[k]()))


def random_anti_involutive(rng: random.Random) -> AntiInvolutive:
    """A uniformly chosen coherent anti-involution on a randomly chosen small base."""
    while True:
        pool = _anti_pool(rng.randrange(N_FUZZ_BASES))
        if pool:
            return rng.choice(pool)


def hermitian_part(a: AntiInvolutive) -> AntiInvolutive | None:
    """Restriction to the objects that carry a fixed point, or None if there are none."""
    keep = [x for x in a.base.objects if fixed_points_over(a, x)]
    return restrict_anti(a, keep) if keep else None


def random_flagged_dagger(rng: random.Random, max_objects: int = 4) -> FlaggedDagger:
    """A flagged dagger with a random C0 of at most ``max_objects`` objects.

    C0 covers every iso class and groups its objects into components that
    are either full (all fixed-point isos) or thin (a single chosen iso between
    any two objects).  Thin components and repeated points make the flag fail
    to be fully faithful.
    """
    while True:
        a = hermitian_part(random_anti_involutive(rng))
        if a is None:
            continue
        fp = fixed_points(a)
        n = len(fp.points)
        comp_of = list(range(n))
        for u, s, t in fp.morphisms:
            lo, hi = sorted((comp_of[s], comp_of[t]))
            comp_of = [lo if c == hi else c for c in comp_of]
        c = a.base
        classes = []
        for x in c.objects:
            if not any(c.isos(y, x) for y in classes):
                classes.append(x)
        if len(classes) > max_objects:
            continue
        chosen = [rng.choice([i for i, p in enumerate(fp.points) if p.obj == x]) for x in classes]
        while len(chosen) < max_objects and rng.random() < 0.5:
            chosen.append(rng.randrange(n))
        rng.shuffle(chosen)
        return _flag_from_points(a, fp, chosen, comp_of, rng)


def _flag_from_points(a, fp, chosen, comp_of, rng) -> FlaggedDagger:
    c = a.base
    P = fp.points
    names = [f"o{i}" for i in range(len(chosen))]
    groups = {}
    for i, k in enumerate(chosen):
        key = (comp_of[k], rng.randrange(2))
        groups.setdefault(key, []).append(i)
    triples, flag_mor, comp, all_idents = [], {}, {}, {}
    for members in groups.values():
        full = rng.random() < 0.5
        if full:
            homs = {}
            for i in members:
                for j in members:
                    for u in fixed_point_isos(a, P[chosen[i]], P[chosen[j]]):
                        mid = f"{names[i]}>{names[j]}:{u}"
                        triples.append((mid, names[i], names[j]))
                        flag_mor[mid] = u
                        homs.setdefault((i, j), []).append((mid, u))
            for (i, j), fs in homs.items():
                for (k2, l2), gs in homs.items():
                    if k2 != j:
                        continue
                    for fm, u in fs:
                        for gm, v in gs:
                            comp[(gm, fm)] = f"{names[i]}>{names[l2]}:{c.compose(v, u)}"
            idents = {names[i]: f"{names[i]}>{names[i]}:{c.identity(P[chosen[i]].obj)}" for i in members}
        else:
            root = P[chosen[members[0]]]
            to_root = {i: rng.choice(fixed_point_isos(a, P[chosen[i]], root)) for i in members}
            for i in members:
                for j in members:
                    mid = f"{names[i]}>{names[j]}"
                    triples.append((mid, names[i], names[j]))
                    flag_mor[mid] = c.compose(c.inverse(to_root[j]), to_root[i])
                    for k in members:
                        comp[(f"{names[j]}>{names[k]}", mid)] = f"{names[i]}>{names[k]}"
            idents = {names[i]: f"{names[i]}>{names[i]}" for i in members}
        all_idents.update(idents)
    c0 = FinCategory(names, triples, all_idents, comp, name="C0")
    f = FlaggedDagger(a, c0, {names[i]: P[k] for i, k in enumerate(chosen)}, flag_mor)
    _require(validate_category(c0), "fuzzed C0")
    _require(validate_flagged_dagger(f), "fuzzed flagged dagger")
    return f


def flagged_corpus() -> dict:
    """Hand-picked flagged daggers small enough for equivalence search."""
    from .dagger1 import hermitian_complete, univalentize
    out = {f"coherentify {k}": coherentify(d) for k, d in strict_corpus().items() if k != "Mat(F4,2)"}
    out["complete excision"] = hermitian_complete(excision_example())
    out["complete iso swap"] = hermitian_complete(walking_iso_swap())
    rng = random.Random(7)
    for i in range(6):
        out[f"fuzz {i}"] = random_flagged_dagger(rng, max_objects=3)
    out["univalentize fuzz 0"] = univalentize(out["fuzz 0"])
    return out


# -- 2-categories -------------------------------------------------------------

def walking_arrow_2cat() -> Fin2Category:
    b = locally_discrete(walking_arrow_category())
    _require(validate_2category(b), "walking arrow 2-category")
    return b


def group_2cat(g) -> Fin2Category:
    """One object, the group as 1-cells, identity 2-cells only."""
    els, mult = group_table(g)
    b = locally_discrete(category_from_group(els, mult, name=g if isinstance(g, str) else "group"))
    _require(validate_2category(b), "group 2-category")
    return b


def _scalar_id(g, k):
    return f"{g}/0" if k is None else f"{g}/z{k}"


def build_graded_lines_2cat(g, m: int, with_zero: bool = True) -> BiInvolutive:
    """One object, group elements as 1-cells, scalars in mu_m (and 0) as endo-2-cells.

    Returned with its canonical structure: dag1 inverts group elements and keeps
    scalars, dag2 inverts scalars, phi is trivial.  ``.base`` is the 2-category.
    """
    els, mult = group_table(g)
    if len(els) > GROUP_LIMIT:
        raise ValueError(f"group of order {len(els)} exceeds the size guard {GROUP_LIMIT}")
    if m < 1 or m > ROOTS_LIMIT:
        raise ValueError(f"m={m} outside 1..{ROOTS_LIMIT}")
    inv = group_inverses(els, mult)
    scalars = list(range(m)) + ([None] if with_zero else [])

    def smul(s, t):
        return None if s is None or t is None else (s + t) % m

    def sinv(s):
        return None if s is None else (-s) % m

    cells = [(_scalar_id(x, s), x, x) for x in els for s in scalars]
    vertical = {(_scalar_id(x, s), _scalar_id(x, t)): _scalar_id(x, smul(s, t))
                for x in els for s in scalars for t in scalars}
    horizontal = {(_scalar_id(x, s), _scalar_id(y, t)): _scalar_id(mult[(x, y)], smul(s, t))
                  for x in els for y in els for s in scalars for t in scalars}
    name = f"lines({g},{m})" if isinstance(g, str) else f"lines({m})"
    b = Fin2Category(["*"], [(x, "*", "*") for x in els], {"*": els[0]}, dict(mult),
                     cells, {x: _scalar_id(x, 0) for x in els}, vertical, horizontal, name=name)
    _require(validate_2category(b), name)
    v = BiInvolutive(
        b,
        {_scalar_id(x, s): _scalar_id(x, sinv(s)) for x in els for s in scalars},
        dict(inv),
        {_scalar_id(x, s): _scalar_id(inv[x], s) for x in els for s in scalars},
        {x: _scalar_id(x, 0) for x in els},
    )
    _require(validate_bi_involutive(v), name)
    return v


def adjoint_choice(b: Fin2Category) -> dict:
    """A right adjoint for every 1-cell, or ValueError naming one without."""
    out = {}
    for f in b.one_cells:
        adj = find_right_adjoint(b, f)
        if adj is None:
            raise ValueError(f"1-morphism {f!r} has no right adjoint")
        out[f] = adj
    return out


# -- deloopings ---------------------------------------------------------------

def build_delooping(d: StrictDagger, unit, tensor_obj, tensor_mor, dual_obj=None, dual_mor=None,
                    name: str = "") -> CoherentDagger2Input:
    """One object; objects of ``d`` become 1-cells and morphisms become 2-cells.

    ``tensor_obj[(y, x)]`` is the 1-composite ``y . x`` and ``tensor_mor``
    the matching horizontal composite.  psi2 is the dagger; psi1 comes from
    ``dual_obj``/``dual_mor`` (default: identity).  All h data is trivial.
    """
    c = d.base
    for y in c.objects:
        for x in c.objects:
            if tensor_obj.get((y, x)) not in set(c.objects):
                raise ValueError(f"tensor not closed on objects at ({y}, {x})")
    for g in c.morphisms:
        for f in c.morphisms:
            if tensor_mor.get((g, f)) not in set(c.morphisms):
                raise ValueError(f"tensor not closed on morphisms at ({g}, {f})")
    b = Fin2Category(["*"], [(x, "*", "*") for x in c.objects], {"*": unit}, dict(tensor_obj),
                     c.morphism_triples(), c.identities, c.table, dict(tensor_mor),
                     name=name or f"B({c.name})")
    _require(validate_2category(b), b.name)
    dual_obj = dual_obj or {x: x for x in c.objects}
    dual_mor = dual_mor or {f: f for f in c.morphisms}
    psi1 = TwoFunctorData({"*": "*"}, dict(dual_obj), dict(dual_mor))
    psi2 = TwoFunctorData({"*": "*"}, {x: x for x in c.objects}, dict(d.dag))
    out = CoherentDagger2Input(b, psi1, psi2, {"*": unit}, {"*": unit}, {x: b.id2(x) for x in c.objects})
    _require(validate_coherent_input(out), b.name)
    return out


def group_delooping(g) -> CoherentDagger2Input:
    """Delooping of the inverse-dagger groupoid of an abelian group."""
    d = build_inverse_dagger_groupoid(g)
    els, mult = group_table(g)
    if not is_abelian(els, mult):
        raise ValueError("the group must be abelian for its delooping to satisfy interchange")
    return build_delooping(d, "*", {("*", "*"): "*"}, mult)


def mat_delooping(q: int = 2) -> CoherentDagger2Input:
    """Delooping of Mat(F_{q^2}) on dimensions {0, 1}; tensor is the Kronecker product."""
    d = build_mat_category(q, 1)
    F = GaloisField(q)
    c = d.base
    objs = c.objects
    tensor_obj = {(y, x): str(int(y) * int(x)) for y in objs for x in objs}
    by = {(r, cc, A): mat_id(F, A, r, cc) for r in (0, 1) for cc in (0, 1) for A in F.matrices(r, cc)}
    ents = {f: k for k, f in by.items()}
    tensor_mor = {}
    for g in c.morphisms:
        rb, cb, B = ents[g]
        for f in c.morphisms:
            ra, ca, A = ents[f]
            tensor_mor[(g, f)] = by[(rb * ra, cb * ca, F.kron(B, A, rb, cb, ra, ca))]
    dual_mor = {f: by[(r, cc, tuple(tuple(F.conj(x) for x in row) for row in A))]
                for f, (r, cc, A) in ents.items()}
    return build_delooping(d, "1", tensor_obj, tensor_mor, dual_mor=dual_mor, name=f"B(Mat(F{q * q},1))")


def terminal_delooping() -> CoherentDagger2Input:
    return group_delooping("trivial")


def twisted_lines_input(g="S3", m: int = 2, c: str = "102") -> CoherentDagger2Input:
    """Graded lines whose psi1 is conjugated by the involution ``c``; ``h1 = c`` undoes the twist."""
    v = build_graded_lines_2cat(g, m, with_zero=False)
    b = v.base
    els, mult = group_table(g)
    inv = group_inverses(els, mult)
    if mult[(c, c)] != els[0]:
        raise ValueError(f"{c!r} is not an involution")

    def tw(x):
        return mult[(mult[(c, inv[x])], inv[c])]

    psi1 = TwoFunctorData({"*": "*"}, {x: tw(x) for x in els},
                          {a: f"{tw(b.src2(a))}/{a.split('/')[1]}" for a in b.two_cells})
    psi2 = TwoFunctorData({"*": "*"}, {x: x for x in els}, dict(v.dag2))
    out = CoherentDagger2Input(b, psi1, psi2, {"*": c}, {"*": els[0]}, {x: b.id2(x) for x in els})
    _require(validate_coherent_input(out), "twisted lines")
    return out


def coherent_corpus() -> dict:
    return {
        "B(Z/2)": group_delooping("Z/2"),
        "B(Z/3)": group_delooping("Z/3"),
        "B(trivial)": terminal_delooping(),
        "B(Mat(F4,1))": mat_delooping(2),
        "twisted lines S3": twisted_lines_input(),
    }


def bi_involutive_corpus() -> dict:
    out = {
        "lines(Z/2,2)": build_graded_lines_2cat("Z/2", 2),
        "lines(Z/3,3)": build_graded_lines_2cat("Z/3", 3),
        "lines(S3,2)": build_graded_lines_2cat("S3", 2),
        "lines(Z/4,4)": build_graded_lines_2cat("Z/4", 4, with_zero=False),
        "lines(trivial,1)": build_graded_lines_2cat("trivial", 1, with_zero=False),
    }
    return out
