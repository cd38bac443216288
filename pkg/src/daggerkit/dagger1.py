"""Dagger structure on finite 1-categories.

Strict daggers, anti-involutions with their coherence isomorphism, the
groupoid of fixed points, flaggings, and the constructions relating them:
coherentify / strictify, univalentize and Hermitian completion.

Conventions used throughout: ``D`` is the anti-involution (a contravariant
endofunctor), ``eta_x: D(D(x)) -> x``.  A fixed point over ``x`` is an iso
``h: D(x) -> x`` with ``h == eta_x . D(h)``; a morphism of fixed points
``(x, h) -> (y, k)`` is an iso ``u: x -> y`` with ``u . h . D(u) == k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (FinCategory, FinFunctor, NatTransform, SearchBudget, check_nat_transform,
                     compose_functors, equivalence_report, identity_functor, iter_functors,
                     validate_category, validate_functor)
from .report import SearchSpaceExceeded, StructureError, ValidationReport

DEFAULT_MAX_OBJECTS = 6
DEFAULT_MAX_MORPHISMS = 64
DEFAULT_MAX_SEARCH = 200_000


# -- strict daggers -----------------------------------------------------------

@dataclass
class StrictDagger:
    base: FinCategory
    dag: dict

    def __call__(self, f):
        return self.dag[f]

    def as_functor(self) -> FinFunctor:
        c = self.base
        return FinFunctor(c, c, {x: x for x in c.objects}, dict(self.dag), contravariant=True)


def validate_strict_dagger(d: StrictDagger, check_base: bool = False) -> ValidationReport:
    c = d.base
    for f in c.morphisms:
        g = d.dag.get(f)
        if g is None or not c.has_morphism(g):
            raise StructureError(f"dagger undefined or unresolved at {f!r}")
    rep = ValidationReport(subject=f"dagger on {c.name}" if c.name else "dagger")
    if check_base:
        rep.extend(validate_category(c), prefix="base-")
    dag = d.dag
    for f in c.morphisms:
        g = dag[f]
        if c.src(g) != c.tgt(f) or c.tgt(g) != c.src(f):
            rep.add("dagger-typing", (f, g), f"{c.describe(f)} but dagger is {c.describe(g)}")
        if dag[g] != f:
            rep.add("involution", (f,), f"dagger twice gives {dag[g]}")
    for x in c.objects:
        i = c.identity(x)
        if dag[i] != i:
            rep.add("identity", (x, dag[i]))
    table = c._comp
    for (g, f), gf in table.items():
        expected = table.get((dag[f], dag[g]))
        if dag[gf] != expected:
            rep.add("contravariance", (g, f), f"({gf})^dag = {dag[gf]} but f^dag.g^dag = {expected}")
    return rep


def unitaries(d: StrictDagger) -> list:
    """Morphisms with ``u^dag == u^{-1}``, in input order."""
    c = d.base
    return [u for u in c.morphisms if c.inverse(u) is not None and c.inverse(u) == d.dag[u]]


# -- anti-involutions ---------------------------------------------------------

@dataclass
class AntiInvolutive:
    base: FinCategory
    D: FinFunctor
    eta: NatTransform

    def dual(self, f):
        return self.D.mor_map[f]

    def dual_obj(self, x):
        return self.D.obj_map[x]

    def eta_at(self, x):
        return self.eta.components[x]


def anti_involutive(base: FinCategory, obj_map: dict, mor_map: dict, eta: dict) -> AntiInvolutive:
    """Assemble an anti-involution from raw maps."""
    D = FinFunctor(base, base, dict(obj_map), dict(mor_map), contravariant=True)
    D.check_structure()
    DD = compose_functors(D, D)
    return AntiInvolutive(base, D, NatTransform(DD, identity_functor(base), dict(eta)))


def validate_anti_involutive(a: AntiInvolutive) -> ValidationReport:
    c = a.base
    if not a.D.contravariant:
        raise StructureError("anti-involution must be contravariant")
    rep = ValidationReport(subject="anti-involution")
    dval = validate_functor(a.D)
    rep.extend(dval, prefix="D-")
    if not dval.ok:
        return rep
    nat = check_nat_transform(a.eta)
    rep.extend(nat, prefix="eta-")
    if not nat.ok:
        return rep
    for x in c.objects:
        if c.inverse(a.eta_at(x)) is None:
            rep.add("eta-invertible", (x, a.eta_at(x)))
    if not rep.ok:
        return rep
    for x in c.objects:
        lhs = c.inverse(a.eta_at(a.dual_obj(x)))
        rhs = a.dual(a.eta_at(x))
        if lhs != rhs:
            rep.add("eta-coherence", (x,), f"eta_(D x)^-1 = {lhs} but D(eta_x) = {rhs}")
    return rep


def restrict_anti(a: AntiInvolutive, objects) -> AntiInvolutive:
    """Restriction to a D-closed full subcategory."""
    sub = a.base.subcategory(objects)
    keep = set(sub.objects)
    if any(a.dual_obj(x) not in keep for x in keep):
        raise ValueError("object set is not closed under the anti-involution")
    return anti_involutive(sub, {x: a.dual_obj(x) for x in sub.objects},
                           {f: a.dual(f) for f in sub.morphisms},
                           {x: a.eta_at(x) for x in sub.objects})


# -- fixed points -------------------------------------------------------------

@dataclass(frozen=True)
class FixedPoint:
    obj: str
    h: str

    @property
    def id(self) -> str:
        return f"({self.obj},{self.h})"


def is_fixed_point(a: AntiInvolutive, p: FixedPoint) -> bool:
    c = a.base
    h = p.h
    if c.src(h) != a.dual_obj(p.obj) or c.tgt(h) != p.obj or c.inverse(h) is None:
        return False
    return c.compose(a.eta_at(p.obj), a.dual(h)) == h


def is_fixed_point_morphism(a: AntiInvolutive, u: str, p: FixedPoint, q: FixedPoint) -> bool:
    c = a.base
    if c.src(u) != p.obj or c.tgt(u) != q.obj or c.inverse(u) is None:
        return False
    return c.comp(u, p.h, a.dual(u)) == q.h


def fixed_points_over(a: AntiInvolutive, x: str) -> list:
    c = a.base
    out = []
    for h in c.isos(a.dual_obj(x), x):
        if c.compose(a.eta_at(x), a.dual(h)) == h:
            out.append(FixedPoint(x, h))
    return out


def fixed_point_isos(a: AntiInvolutive, p: FixedPoint, q: FixedPoint) -> list:
    c = a.base
    return [u for u in c.isos(p.obj, q.obj) if c.comp(u, p.h, a.dual(u)) == q.h]


def _mor_id(u, p: FixedPoint, q: FixedPoint) -> str:
    return f"{u}@{p.id}->{q.id}"


@dataclass
class FixedPointGroupoid:
    anti: AntiInvolutive
    points: list
    morphisms: list  # (u, from index, to index)

    def index(self, p: FixedPoint) -> int:
        return self.points.index(p)

    def hom(self, i: int, j: int) -> list:
        return [u for u, s, t in self.morphisms if s == i and t == j]

    def over(self, x) -> list:
        return [p for p in self.points if p.obj == x]

    def as_category(self, points=None) -> FinCategory:
        """The groupoid as a FinCategory, optionally the full subgroupoid on ``points``."""
        c = self.anti.base
        pts = self.points if points is None else [p for p in self.points if p in set(points)]
        keep = {self.points.index(p) for p in pts}
        mors = [(u, s, t) for u, s, t in self.morphisms if s in keep and t in keep]
        P = self.points
        triples = [(_mor_id(u, P[s], P[t]), P[s].id, P[t].id) for u, s, t in mors]
        into = {}
        for u, s, t in mors:
            into.setdefault(t, []).append((u, s))
        comp = {}
        for v, s2, t2 in mors:
            for u, s in into.get(s2, ()):
                comp[(_mor_id(v, P[s2], P[t2]), _mor_id(u, P[s], P[s2]))] = _mor_id(c.compose(v, u), P[s], P[t2])
        idents = {p.id: _mor_id(c.identity(p.obj), p, p) for p in pts}
        return FinCategory([p.id for p in pts], triples, idents, comp, name="fixed points")


def fixed_points(a: AntiInvolutive) -> FixedPointGroupoid:
    points = [p for x in a.base.objects for p in fixed_points_over(a, x)]
    mors = []
    for i, p in enumerate(points):
        for j, q in enumerate(points):
            mors += [(u, i, j) for u in fixed_point_isos(a, p, q)]
    return FixedPointGroupoid(a, points, mors)


# -- flagged daggers ----------------------------------------------------------

@dataclass
class FlaggedDagger:
    """An anti-involutive category with a groupoid ``c0`` mapped into its fixed points.

    ``flag_obj`` sends objects of ``c0`` to fixed points and ``flag_mor``
    sends morphisms of ``c0`` to base morphisms.  With ``coflagged`` set,
    failure of essential surjectivity is only a warning.
    """

    anti: AntiInvolutive
    c0: FinCategory
    flag_obj: dict
    flag_mor: dict
    coflagged: bool = False

    @property
    def base(self) -> FinCategory:
        return self.anti.base

    def check_structure(self) -> None:
        c = self.base
        for a in self.c0.objects:
            p = self.flag_obj.get(a)
            if p is None or not c.has_object(p.obj) or not c.has_morphism(p.h):
                raise StructureError(f"flag undefined or unresolved at C0 object {a!r}")
        for m in self.c0.morphisms:
            u = self.flag_mor.get(m)
            if u is None or not c.has_morphism(u):
                raise StructureError(f"flag undefined or unresolved at C0 morphism {m!r}")


def _flag_report(f: FlaggedDagger) -> ValidationReport:
    f.check_structure()
    a, c, c0 = f.anti, f.base, f.c0
    rep = ValidationReport(subject="flagged dagger")
    for m in c0.morphisms:
        if c0.inverse(m) is None:
            rep.add("c0-groupoid", (m,), "C0 morphism is not invertible")
    for x in c0.objects:
        if not is_fixed_point(a, f.flag_obj[x]):
            rep.add("flag-point", (x, f.flag_obj[x].id), "not a fixed point")
    for m in c0.morphisms:
        u = f.flag_mor[m]
        p, q = f.flag_obj[c0.src(m)], f.flag_obj[c0.tgt(m)]
        if c.src(u) != p.obj or c.tgt(u) != q.obj:
            rep.add("flag-typing", (m, u))
        elif c.comp(u, p.h, a.dual(u)) != q.h:
            rep.add("flag-equivariance", (m, u), "u . h . D(u) differs from target form")
    if not rep.ok:
        return rep
    for x in c0.objects:
        if f.flag_mor[c0.identity(x)] != c.identity(f.flag_obj[x].obj):
            rep.add("flag-identity", (x,))
    for (n, m), nm in c0.table.items():
        if f.flag_mor[nm] != c.compose(f.flag_mor[n], f.flag_mor[m]):
            rep.add("flag-composition", (n, m))
    covered = [p.obj for p in f.flag_obj.values()]
    for y in c.objects:
        if not any(c.isos(x, y) for x in covered):
            if f.coflagged:
                rep.warn(f"essential-surjectivity: {y} is not isomorphic to a flagged object")
            else:
                rep.add("essential-surjectivity", (y,), "not isomorphic to any flagged object")
    return rep


def validate_flagged_dagger(f: FlaggedDagger, check_anti: bool = True) -> ValidationReport:
    rep = ValidationReport(subject="flagged dagger")
    if check_anti:
        anti = validate_anti_involutive(f.anti)
        rep.extend(anti, prefix="anti-")
        if not anti.ok:
            return rep
    rep.extend(_flag_report(f))
    return rep


def is_univalent(f: FlaggedDagger) -> bool:
    """Whether the flag is fully faithful into the fixed-point groupoid."""
    c0 = f.c0
    for s in c0.objects:
        for t in c0.objects:
            images = [f.flag_mor[m] for m in c0.hom(s, t)]
            target = fixed_point_isos(f.anti, f.flag_obj[s], f.flag_obj[t])
            if len(images) != len(set(images)) or set(images) != set(target):
                return False
    return True


def coherentify(d: StrictDagger) -> FlaggedDagger:
    """Keep the category and dagger; flag every object by its identity, unitaries as C0."""
    c = d.base
    a = anti_involutive(c, {x: x for x in c.objects}, d.dag, {x: c.identity(x) for x in c.objects})
    us = unitaries(d)
    c0 = c.subcategory(c.objects, us, name=f"unitaries({c.name})" if c.name else "unitaries")
    return FlaggedDagger(a, c0, {x: FixedPoint(x, c.identity(x)) for x in c.objects}, {u: u for u in us})


def _tautological(fp: FixedPointGroupoid, points) -> FlaggedDagger:
    c0 = fp.as_category(points)
    P = fp.points
    keep = {p.id for p in points}
    flag_obj = {p.id: p for p in P if p.id in keep}
    flag_mor = {}
    for u, s, t in fp.morphisms:
        if P[s].id in keep and P[t].id in keep:
            flag_mor[_mor_id(u, P[s], P[t])] = u
    return FlaggedDagger(fp.anti, c0, flag_obj, flag_mor)


def univalentize(f: FlaggedDagger) -> FlaggedDagger:
    """Replace C0 by the full subgroupoid of fixed points on the essential image of the flag."""
    fp = fixed_points(f.anti)
    flagged = {fp.index(p) for p in f.flag_obj.values()}
    reach = {j for i in flagged for u, s, j in fp.morphisms if s == i}
    pts = [p for k, p in enumerate(fp.points) if k in reach]
    out = _tautological(fp, pts)
    out.coflagged = f.coflagged
    return out


def univalentize_unit(f: FlaggedDagger, g: FlaggedDagger | None = None) -> FinFunctor:
    """The canonical map from C0 of ``f`` to C0 of ``univalentize(f)``."""
    g = g or univalentize(f)
    obj_map = {a: f.flag_obj[a].id for a in f.c0.objects}
    mor_map = {m: _mor_id(f.flag_mor[m], f.flag_obj[f.c0.src(m)], f.flag_obj[f.c0.tgt(m)])
               for m in f.c0.morphisms}
    return FinFunctor(f.c0, g.c0, obj_map, mor_map)


def coflag(a: AntiInvolutive) -> FlaggedDagger:
    """The coflagged structure whose C0 is the whole fixed-point groupoid."""
    fp = fixed_points(a)
    out = _tautological(fp, fp.points)
    out.coflagged = True
    return out


def complete_coflagged(f: FlaggedDagger) -> FlaggedDagger:
    """Cut the base down to the full subcategory on the (essential) image of C0."""
    a, c = f.anti, f.base
    hit = [p.obj for p in f.flag_obj.values()]
    keep = [y for y in c.objects if any(c.isos(x, y) for x in hit)]
    sub = restrict_anti(a, keep)
    return FlaggedDagger(sub, f.c0, dict(f.flag_obj), dict(f.flag_mor), coflagged=False)


def hermitian_complete(a: AntiInvolutive) -> FlaggedDagger:
    return complete_coflagged(coflag(a))


# -- strictification ----------------------------------------------------------

def _strictify(f: FlaggedDagger):
    a, c, c0 = f.anti, f.base, f.c0
    objs = list(c0.objects)
    over = {x: f.flag_obj[x] for x in objs}
    keep_ids = len({p.obj for p in over.values()}) == len(objs)

    def name(m, s, t):
        return m if keep_ids else f"{m}@{s}>{t}"

    triples, back = [], {}
    for s in objs:
        for t in objs:
            for m in c.hom(over[s].obj, over[t].obj):
                n = name(m, s, t)
                triples.append((n, s, t))
                back[n] = (m, s, t)
    comp = {}
    for n2, (m2, s2, t2) in back.items():
        for s in objs:
            for m in c.hom(over[s].obj, over[s2].obj):
                comp[(n2, name(m, s, s2))] = name(c.compose(m2, m), s, t2)
    idents = {s: name(c.identity(over[s].obj), s, s) for s in objs}
    cat = FinCategory(objs, triples, idents, comp, name=f"strict({c.name})" if c.name else "strict")
    dag = {}
    for n, (m, s, t) in back.items():
        hs, ht = over[s].h, over[t].h
        dag[n] = name(c.comp(hs, a.dual(m), c.inverse(ht)), t, s)
    functor = FinFunctor(cat, c, {s: over[s].obj for s in objs}, {n: back[n][0] for n in back})
    return StrictDagger(cat, dag), functor


def strictify(f: FlaggedDagger) -> StrictDagger:
    """Objects of C0, base hom-sets, dagger ``f -> h_x . D(f) . h_y^{-1}``."""
    return _strictify(f)[0]


def strictification_functor(f: FlaggedDagger) -> FinFunctor:
    """The evident functor from ``strictify(f)`` to the base (an equivalence)."""
    return _strictify(f)[1]


# -- dagger functors and equivalence -----------------------------------------

@dataclass
class DaggerFunctor:
    """A functor of flagged daggers.

    ``sigma[x]: F(D x) -> D'(F x)`` fills the equivariance square and
    ``flag_map`` is the induced functor between the C0 groupoids.
    """

    source: FlaggedDagger
    target: FlaggedDagger
    functor: FinFunctor
    sigma: dict
    flag_map: FinFunctor

    @property
    def square_filler(self) -> NatTransform:
        F, A, B = self.functor, self.source.anti, self.target.anti
        return NatTransform(compose_functors(F, A.D), compose_functors(B.D, F), dict(self.sigma))

    def transport(self, p: FixedPoint) -> FixedPoint:
        tgt = self.target.base
        F = self.functor
        return FixedPoint(F.ob(p.obj), tgt.compose(F(p.h), tgt.inverse(self.sigma[p.obj])))


def validate_dagger_functor(df: DaggerFunctor) -> ValidationReport:
    F, A, B = df.functor, df.source.anti, df.target.anti
    c2 = B.base
    rep = ValidationReport(subject="dagger functor")
    fr = validate_functor(F)
    rep.extend(fr, prefix="functor-")
    if not fr.ok:
        return rep
    sq = check_nat_transform(df.square_filler)
    rep.extend(sq, prefix="filler-")
    if not sq.ok:
        return rep
    for x, s in df.sigma.items():
        if c2.inverse(s) is None:
            rep.add("filler-invertible", (x, s))
    if not rep.ok:
        return rep
    for x in A.base.objects:
        lhs = F(A.eta_at(x))
        rhs = c2.comp(B.eta_at(F.ob(x)), c2.inverse(B.dual(df.sigma[x])), df.sigma[A.dual_obj(x)])
        if lhs != rhs:
            rep.add("involution-compatibility", (x,), f"F(eta) = {lhs} vs {rhs}")
    fm = validate_functor(df.flag_map)
    rep.extend(fm, prefix="flag-map-")
    if not fm.ok:
        return rep
    src, tgt = df.source, df.target
    for a0 in src.c0.objects:
        want = df.transport(src.flag_obj[a0])
        got = tgt.flag_obj[df.flag_map.ob(a0)]
        if want != got:
            rep.add("flag-compatibility", (a0,), f"transported {want.id} vs flagged {got.id}")
    for m in src.c0.morphisms:
        if tgt.flag_mor[df.flag_map(m)] != F(src.flag_mor[m]):
            rep.add("flag-compatibility", (m,))
    return rep


def _check_size(f: FlaggedDagger, max_objects, max_morphisms):
    c = f.base
    if len(c.objects) > max_objects or len(c.morphisms) > max_morphisms:
        raise SearchSpaceExceeded(
            f"{len(c.objects)} objects / {len(c.morphisms)} morphisms exceeds the search ceiling "
            f"({max_objects} / {max_morphisms})")


def _sigma_search(F, A, B, budget):
    c1, c2 = A.base, B.base
    xs = list(c1.objects)
    cands = {x: c2.isos(F.ob(A.dual_obj(x)), B.dual_obj(F.ob(x))) for x in xs}

    def consistent(sig):
        for f in c1.morphisms:
            x, y = c1.src(f), c1.tgt(f)
            if x in sig and y in sig:
                if c2.compose(B.dual(F(f)), sig[y]) != c2.compose(sig[x], F(A.dual(f))):
                    return False
        for x in sig:
            dx = A.dual_obj(x)
            if dx in sig:
                rhs = c2.comp(B.eta_at(F.ob(x)), c2.inverse(B.dual(sig[x])), sig[dx])
                if F(A.eta_at(x)) != rhs:
                    return False
        return True

    def rec(i, sig):
        if i == len(xs):
            yield dict(sig)
            return
        x = xs[i]
        for s in cands[x]:
            budget.tick()
            sig[x] = s
            if consistent(sig):
                yield from rec(i + 1, sig)
            del sig[x]

    yield from rec(0, {})


def _flag_map_search(src: FlaggedDagger, tgt: FlaggedDagger, F, sigma, budget):
    partial = DaggerFunctor(src, tgt, F, sigma, None)
    a0s = list(src.c0.objects)
    obj_cands = []
    for a0 in a0s:
        want = partial.transport(src.flag_obj[a0])
        obj_cands.append([b for b in tgt.c0.objects if tgt.flag_obj[b] == want])
    for choice in itertools.product(*obj_cands):
        budget.tick()
        om = dict(zip(a0s, choice))
        mor_cands = []
        ok = True
        for m in src.c0.morphisms:
            u = F(src.flag_mor[m])
            cs = [n for n in tgt.c0.hom(om[src.c0.src(m)], om[src.c0.tgt(m)]) if tgt.flag_mor[n] == u]
            if not cs:
                ok = False
                break
            mor_cands.append(cs)
        if not ok:
            continue
        for mchoice in itertools.product(*mor_cands):
            budget.tick()
            G = FinFunctor(src.c0, tgt.c0, om, dict(zip(src.c0.morphisms, mchoice)))
            if validate_functor(G).ok and equivalence_report(G).is_equivalence:
                yield G


def find_dagger_equivalence(f: FlaggedDagger, g: FlaggedDagger, max_search: int | None = DEFAULT_MAX_SEARCH,
                            max_objects: int = DEFAULT_MAX_OBJECTS,
                            max_morphisms: int = DEFAULT_MAX_MORPHISMS):
    """Search for a dagger functor ``f -> g`` that is an equivalence on bases and on C0.

    Raises :class:`SearchSpaceExceeded` when either input is beyond the size
    ceiling or the search visits more than ``max_search`` candidates.
    """
    _check_size(f, max_objects, max_morphisms)
    _check_size(g, max_objects, max_morphisms)
    budget = SearchBudget(max_search)
    A, B = f.anti, g.anti
    for F in iter_functors(A.base, B.base, fully_faithful=True, budget=budget):
        if not equivalence_report(F).essentially_surjective:
            continue
        for sigma in _sigma_search(F, A, B, budget):
            for G in _flag_map_search(f, g, F, sigma, budget):
                return DaggerFunctor(f, g, F, sigma, G)
    return None


def dagger_equivalent(f: FlaggedDagger, g: FlaggedDagger, max_search: int | None = DEFAULT_MAX_SEARCH,
                      max_objects: int = DEFAULT_MAX_OBJECTS, max_morphisms: int = DEFAULT_MAX_MORPHISMS) -> bool:
    """Whether a dagger equivalence exists between ``f`` and ``g`` (either direction)."""
    kw = dict(max_search=max_search, max_objects=max_objects, max_morphisms=max_morphisms)
    if find_dagger_equivalence(f, g, **kw) is not None:
        return True
    return find_dagger_equivalence(g, f, **kw) is not None


def identity_dagger_functor(f: FlaggedDagger) -> DaggerFunctor:
    c = f.base
    return DaggerFunctor(f, f, identity_functor(c),
                         {x: c.identity(f.anti.dual_obj(x)) for x in c.objects}, identity_functor(f.c0))
