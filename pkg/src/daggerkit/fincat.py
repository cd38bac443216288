"""Explicit finite 1-categories, functors and natural transformations.

Categories are total composition tables over opaque string ids.  Everything
is ordered by input order, which is also the order witnesses are reported in.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .report import SearchSpaceExceeded, StructureError, ValidationReport


class FinCategory:
    """A finite category given by its full composition table.

    ``compose`` maps ``(g, f)`` to ``g . f`` and should be defined exactly on
    the composable pairs (``tgt(f) == src(g)``).  Construction only checks
    that ids resolve; the axioms are checked by :func:`validate_category`.
    """

    def __init__(self, objects: Sequence[str], morphisms: Iterable[Sequence[str]],
                 identities: Mapping[str, str], compose: Mapping[tuple, str], name: str = ""):
        self.name = name
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise StructureError(f"duplicate object id in {name or 'category'}")
        objset = set(self.objects)
        ids, src, tgt = [], {}, {}
        for m, s, t in morphisms:
            if m in src:
                raise StructureError(f"duplicate morphism id {m!r}")
            for o in (s, t):
                if o not in objset:
                    raise StructureError(f"morphism {m!r} references unknown object {o!r}")
            ids.append(m)
            src[m], tgt[m] = s, t
        self.morphisms = tuple(ids)
        self._src, self._tgt = src, tgt
        self._ident = {}
        for x in self.objects:
            if x not in identities:
                raise StructureError(f"object {x!r} has no identity")
            i = identities[x]
            if i not in src:
                raise StructureError(f"identity of {x!r} is unknown morphism {i!r}")
            self._ident[x] = i
        for x in identities:
            if x not in objset:
                raise StructureError(f"identity given for unknown object {x!r}")
        comp = {}
        for (g, f), h in compose.items():
            for m in (g, f, h):
                if m not in src:
                    raise StructureError(f"composition table references unknown morphism {m!r}")
            comp[(g, f)] = h
        self._comp = comp
        homs = {(x, y): [] for x in self.objects for y in self.objects}
        for m in self.morphisms:
            homs[(src[m], tgt[m])].append(m)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._inverse_cache = None

    # -- basic access -----------------------------------------------------

    def src(self, f: str) -> str:
        return self._src[f]

    def tgt(self, f: str) -> str:
        return self._tgt[f]

    def identity(self, x: str) -> str:
        return self._ident[x]

    @property
    def identities(self) -> dict:
        return dict(self._ident)

    @property
    def table(self) -> dict:
        return dict(self._comp)

    def compose(self, g: str, f: str) -> str:
        """``g . f`` (apply f first)."""
        try:
            return self._comp[(g, f)]
        except KeyError:
            raise ValueError(f"{g!r} . {f!r} is not defined") from None

    def comp(self, *fs: str) -> str:
        """Compose a chain right to left: ``comp(h, g, f) == h . g . f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def hom(self, x: str, y: str) -> tuple:
        return self._homs[(x, y)]

    def has_object(self, x) -> bool:
        return x in self._ident

    def has_morphism(self, f) -> bool:
        return f in self._src

    def is_identity(self, f: str) -> bool:
        return self._ident.get(self._src[f]) == f

    def composable(self, g: str, f: str) -> bool:
        return self._tgt[f] == self._src[g]

    def composable_pairs(self) -> Iterator[tuple]:
        for g in self.morphisms:
            for f in self._homs_into(self._src[g]):
                yield g, f

    def _homs_into(self, y):
        for x in self.objects:
            yield from self._homs[(x, y)]

    def describe(self, f: str) -> str:
        return f"{f}: {self._src[f]} -> {self._tgt[f]}"

    def __len__(self):
        return len(self.morphisms)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FinCategory{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        # listing order is presentation only
        return (set(self.objects) == set(other.objects)
                and set(self.morphisms) == set(other.morphisms)
                and self._src == other._src and self._tgt == other._tgt
                and self._ident == other._ident and self._comp == other._comp)

    __hash__ = None

    def morphism_triples(self) -> list:
        return [(m, self._src[m], self._tgt[m]) for m in self.morphisms]

    # -- inverses ---------------------------------------------------------

    def inverse(self, f: str):
        if self._inverse_cache is None:
            self._inverse_cache = _all_inverses(self)
        return self._inverse_cache[f]

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def isos(self, x: str, y: str) -> list:
        return [f for f in self.hom(x, y) if self.inverse(f) is not None]

    # -- numpy view, used by the vectorised associativity scan -------------

    @cached_property
    def _ix(self):
        mi = {m: i for i, m in enumerate(self.morphisms)}
        oi = {o: i for i, o in enumerate(self.objects)}
        n = len(self.morphisms)
        table = np.full((n, n), -1, dtype=np.int32)
        for (g, f), h in self._comp.items():
            table[mi[g], mi[f]] = mi[h]
        src = np.array([oi[self._src[m]] for m in self.morphisms], dtype=np.int32)
        tgt = np.array([oi[self._tgt[m]] for m in self.morphisms], dtype=np.int32)
        return _Index(mi, oi, table, src, tgt)

    # -- derived categories -----------------------------------------------

    def subcategory(self, objects: Iterable[str], morphisms: Iterable[str] | None = None,
                    name: str = "") -> "FinCategory":
        """Subcategory on ``objects``; full unless ``morphisms`` is given."""
        keep = set(objects)
        objs = [x for x in self.objects if x in keep]
        if morphisms is None:
            mors = [m for m in self.morphisms if self._src[m] in keep and self._tgt[m] in keep]
        else:
            chosen = set(morphisms)
            mors = [m for m in self.morphisms if m in chosen]
        mset = set(mors)
        comp = {(g, f): h for (g, f), h in self._comp.items() if g in mset and f in mset}
        return FinCategory(objs, [(m, self._src[m], self._tgt[m]) for m in mors],
                           {x: self._ident[x] for x in objs}, comp, name=name or self.name)

    def relabel(self, obj_map: Mapping[str, str], mor_map: Mapping[str, str], name: str = "") -> "FinCategory":
        return FinCategory(
            [obj_map[x] for x in self.objects],
            [(mor_map[m], obj_map[self._src[m]], obj_map[self._tgt[m]]) for m in self.morphisms],
            {obj_map[x]: mor_map[i] for x, i in self._ident.items()},
            {(mor_map[g], mor_map[f]): mor_map[h] for (g, f), h in self._comp.items()},
            name=name or self.name,
        )


@dataclass(frozen=True)
class _Index:
    mor: dict
    obj: dict
    table: np.ndarray
    src: np.ndarray
    tgt: np.ndarray


def _all_inverses(c: FinCategory) -> dict:
    out = {}
    for f in c.morphisms:
        x, y = c.src(f), c.tgt(f)
        found = [g for g in c.hom(y, x)
                 if c._comp.get((g, f)) == c.identity(x) and c._comp.get((f, g)) == c.identity(y)]
        assert len(found) <= 1, f"{f!r} has several inverses {found}; table is not a category"
        out[f] = found[0] if found else None
    return out


def category_from_group(elements: Sequence[str], mult: Mapping[tuple, str], obj: str = "*",
                        name: str = "") -> FinCategory:
    """One-object category of a monoid or group; ``mult[(a, b)] = a*b``.

    The unit is the first element.
    """
    return FinCategory([obj], [(e, obj, obj) for e in elements], {obj: elements[0]},
                       dict(mult), name=name)


# -- validation -------------------------------------------------------------

def validate_category(c: FinCategory) -> ValidationReport:
    """Check typing, totality, unit laws and associativity.

    Witnesses are ordered by morphism input order.
    """
    rep = ValidationReport(subject=c.name or "category")
    for x in c.objects:
        i = c.identity(x)
        if c.src(i) != x or c.tgt(i) != x:
            rep.add("identity-typing", (x, i))
    for g in c.morphisms:
        for f in c.morphisms:
            h = c._comp.get((g, f))
            if c.composable(g, f):
                if h is None:
                    rep.add("totality", (g, f), "composable pair has no composite")
                elif c.src(h) != c.src(f) or c.tgt(h) != c.tgt(g):
                    rep.add("typing", (g, f, h), f"composite has type {c.src(h)} -> {c.tgt(h)}")
            elif h is not None:
                rep.add("totality", (g, f), "composite given for a non-composable pair")
    for f in c.morphisms:
        left = c._comp.get((c.identity(c.tgt(f)), f))
        right = c._comp.get((f, c.identity(c.src(f))))
        if left is not None and left != f:
            rep.add("unit", (c.identity(c.tgt(f)), f), f"left unit gives {left}")
        if right is not None and right != f:
            rep.add("unit", (f, c.identity(c.src(f))), f"right unit gives {right}")
    _associativity_scan(c, rep)
    return rep


def _associativity_scan(c: FinCategory, rep: ValidationReport) -> None:
    ix = c._ix
    T, src, tgt = ix.table, ix.src, ix.tgt
    nobj = len(c.objects)
    by_tgt = [np.nonzero(tgt == o)[0] for o in range(nobj)]
    names = c.morphisms
    for h in range(len(names)):
        gs_all = by_tgt[src[h]]
        hits = []
        for b in range(nobj):
            gs = gs_all[src[gs_all] == b]
            fs = by_tgt[b]
            if not len(gs) or not len(fs):
                continue
            gf = T[np.ix_(gs, fs)]
            hg = T[h, gs]
            left = np.where(gf >= 0, T[h, np.clip(gf, 0, None)], -2)
            right = np.where(hg[:, None] >= 0, T[np.clip(hg, 0, None)[:, None], fs[None, :]], -3)
            bad = (gf >= 0) & (hg[:, None] >= 0) & (left != right)
            if bad.any():
                gi, fi = np.nonzero(bad)
                hits.extend(zip(gs[gi].tolist(), fs[fi].tolist()))
        for g, f in sorted(hits):
            rep.add("associativity", (names[h], names[g], names[f]))


def inverse_of(c: FinCategory, f: str):
    """The unique inverse of ``f``, or None."""
    if not c.has_morphism(f):
        raise StructureError(f"unknown morphism {f!r}")
    return c.inverse(f)


def is_groupoid(c: FinCategory) -> bool:
    return all(c.inverse(f) is not None for f in c.morphisms)


def core_groupoid(c: FinCategory) -> FinCategory:
    """Same objects, only the invertible morphisms."""
    return c.subcategory(c.objects, [f for f in c.morphisms if c.inverse(f) is not None],
                         name=f"core({c.name})" if c.name else "")


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(
        c.objects,
        [(m, c.tgt(m), c.src(m)) for m in c.morphisms],
        c.identities,
        {(f, g): h for (g, f), h in c._comp.items()},
        name=f"op({c.name})" if c.name else "",
    )


def disjoint_union(*parts: FinCategory, sep: str = ".") -> FinCategory:
    """Coproduct; ids are prefixed with the part index."""
    objs, mors, idents, comp = [], [], {}, {}
    for k, c in enumerate(parts):
        p = f"{k}{sep}"
        objs += [p + x for x in c.objects]
        mors += [(p + m, p + c.src(m), p + c.tgt(m)) for m in c.morphisms]
        idents.update({p + x: p + i for x, i in c.identities.items()})
        comp.update({(p + g, p + f): p + h for (g, f), h in c.table.items()})
    return FinCategory(objs, mors, idents, comp, name="+".join(c.name or "?" for c in parts))


# -- functors ---------------------------------------------------------------

@dataclass
class FinFunctor:
    """A functor given on objects and morphisms.

    A contravariant functor sends ``f: x -> y`` to ``F(f): F(y) -> F(x)`` and
    reverses composition; the opposite category is never built.
    """

    source: FinCategory
    target: FinCategory
    obj_map: dict
    mor_map: dict
    contravariant: bool = False

    def ob(self, x):
        return self.obj_map[x]

    def mor(self, f):
        return self.mor_map[f]

    def __call__(self, f):
        return self.mor_map[f]

    def check_structure(self) -> None:
        for x in self.source.objects:
            y = self.obj_map.get(x)
            if y is None or not self.target.has_object(y):
                raise StructureError(f"functor object map undefined or unresolved at {x!r}")
        for f in self.source.morphisms:
            g = self.mor_map.get(f)
            if g is None or not self.target.has_morphism(g):
                raise StructureError(f"functor morphism map undefined or unresolved at {f!r}")


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms})


def inclusion_functor(sub: FinCategory, c: FinCategory) -> FinFunctor:
    return FinFunctor(sub, c, {x: x for x in sub.objects}, {f: f for f in sub.morphisms})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G . F``; variance is the XOR of the two."""
    return FinFunctor(
        F.source, G.target,
        {x: G.obj_map[F.obj_map[x]] for x in F.source.objects},
        {f: G.mor_map[F.mor_map[f]] for f in F.source.morphisms},
        contravariant=F.contravariant != G.contravariant,
    )


def validate_functor(F: FinFunctor) -> ValidationReport:
    F.check_structure()
    C, D = F.source, F.target
    rep = ValidationReport(subject="functor")
    for f in C.morphisms:
        Ff = F.mor_map[f]
        s, t = F.obj_map[C.src(f)], F.obj_map[C.tgt(f)]
        if F.contravariant:
            s, t = t, s
        if D.src(Ff) != s or D.tgt(Ff) != t:
            rep.add("typing", (f, Ff), f"expected {s} -> {t}, got {D.src(Ff)} -> {D.tgt(Ff)}")
    for x in C.objects:
        if F.mor_map[C.identity(x)] != D.identity(F.obj_map[x]):
            rep.add("identity", (x, F.mor_map[C.identity(x)]))
    for g, f in C.composable_pairs():
        gf = C._comp.get((g, f))
        if gf is None:
            continue
        a, b = F.mor_map[g], F.mor_map[f]
        expected = D._comp.get((b, a) if F.contravariant else (a, b))
        if expected != F.mor_map[gf]:
            rep.add("composition", (g, f), f"F({gf}) = {F.mor_map[gf]} but composite of images is {expected}")
    return rep


@dataclass
class NatTransform:
    """Natural transformation ``alpha: F => G`` with components ``F(x) -> G(x)``."""

    source: FinFunctor
    target: FinFunctor
    components: dict


def identity_transform(F: FinFunctor) -> NatTransform:
    return NatTransform(F, F, {x: F.target.identity(F.obj_map[x]) for x in F.source.objects})


def check_nat_transform(alpha: NatTransform) -> ValidationReport:
    F, G = alpha.source, alpha.target
    if F.contravariant != G.contravariant:
        raise StructureError("natural transformation between functors of different variance")
    if F.source is not G.source and F.source != G.source:
        raise StructureError("natural transformation between functors with different sources")
    if F.target is not G.target and F.target != G.target:
        raise StructureError("natural transformation between functors with different targets")
    C, D = F.source, F.target
    rep = ValidationReport(subject="natural transformation")
    comps = alpha.components
    for x in C.objects:
        a = comps.get(x)
        if a is None or not D.has_morphism(a):
            raise StructureError(f"component at {x!r} missing or unresolved")
        if D.src(a) != F.obj_map[x] or D.tgt(a) != G.obj_map[x]:
            rep.add("component-typing", (x, a), f"expected {F.obj_map[x]} -> {G.obj_map[x]}")
    if not rep.ok:
        return rep
    for f in C.morphisms:
        x, y = C.src(f), C.tgt(f)
        if F.contravariant:
            lhs = D._comp.get((G.mor_map[f], comps[y]))
            rhs = D._comp.get((comps[x], F.mor_map[f]))
        else:
            lhs = D._comp.get((G.mor_map[f], comps[x]))
            rhs = D._comp.get((comps[y], F.mor_map[f]))
        if lhs != rhs:
            rep.add("naturality", (f,), f"square gives {lhs} vs {rhs}")
    return rep


def is_nat_iso(alpha: NatTransform) -> bool:
    if not check_nat_transform(alpha).ok:
        return False
    D = alpha.source.target
    return all(D.inverse(a) is not None for a in alpha.components.values())


# -- equivalences -------------------------------------------------------------

@dataclass
class EquivalenceReport:
    essentially_surjective: bool
    fully_faithful: bool
    essential_image: list
    witnesses: dict = field(default_factory=dict)

    @property
    def is_equivalence(self) -> bool:
        return self.essentially_surjective and self.fully_faithful


def equivalence_report(F: FinFunctor) -> EquivalenceReport:
    """Essential surjectivity and full faithfulness of a covariant functor.

    ``witnesses[y] = (x, u)`` with ``u: F(x) -> y`` invertible, for every y in
    the essential image.
    """
    if F.contravariant:
        raise ValueError("equivalence_report expects a covariant functor")
    C, D = F.source, F.target
    witnesses = {}
    for y in D.objects:
        for x in C.objects:
            isos = D.isos(F.obj_map[x], y)
            if isos:
                witnesses[y] = (x, isos[0])
                break
    image = [y for y in D.objects if y in witnesses]
    ff = True
    for x in C.objects:
        for y in C.objects:
            images = [F.mor_map[f] for f in C.hom(x, y)]
            if len(set(images)) != len(images) or set(images) != set(D.hom(F.obj_map[x], F.obj_map[y])):
                ff = False
                break
        if not ff:
            break
    return EquivalenceReport(len(image) == len(D.objects), ff, image, witnesses)


def isomorphic_objects(c: FinCategory, x: str, y: str):
    isos = c.isos(x, y)
    return isos[0] if isos else None


def iso_classes(c: FinCategory) -> list:
    classes = []
    for x in c.objects:
        for cls in classes:
            if c.isos(cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])
    return classes


def is_isomorphism(F: FinFunctor) -> bool:
    """Bijective on objects and morphisms, and a valid functor."""
    C, D = F.source, F.target
    return (sorted(F.obj_map[x] for x in C.objects) == sorted(D.objects)
            and sorted(F.mor_map[f] for f in C.morphisms) == sorted(D.morphisms)
            and validate_functor(F).ok)


# -- exhaustive functor search ------------------------------------------------

class SearchBudget:
    """Counts search nodes and raises once ``limit`` is passed."""

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise SearchSpaceExceeded(f"search passed its ceiling of {self.limit} candidates")


def iter_functors(C: FinCategory, D: FinCategory, contravariant: bool = False,
                  fully_faithful: bool = False, obj_map: Mapping | None = None,
                  budget: SearchBudget | None = None) -> Iterator[FinFunctor]:
    """Enumerate every functor ``C -> D`` by backtracking with propagation.

    With ``fully_faithful`` only functors bijective on each hom-set are
    produced.  ``obj_map`` pins the object part.
    """
    budget = budget or SearchBudget()
    if obj_map is not None:
        obj_maps = [dict(obj_map)]
    else:
        obj_maps = (dict(zip(C.objects, img)) for img in itertools.product(D.objects, repeat=len(C.objects)))

    def dom_hom(om, f):
        s, t = om[C.src(f)], om[C.tgt(f)]
        return (t, s) if contravariant else (s, t)

    free = [f for f in C.morphisms if not C.is_identity(f)]
    # composites touching each morphism, for propagation
    touching = {f: [] for f in C.morphisms}
    for (g, f), h in C.table.items():
        touching[g].append((g, f, h))
        touching[f].append((g, f, h))
        touching[h].append((g, f, h))

    def image_of(a, b):
        return D._comp.get((b, a) if contravariant else (a, b))

    def propagate(mm, start):
        work = list(start)
        while work:
            m = work.pop()
            for g, f, h in touching[m]:
                if g in mm and f in mm:
                    v = image_of(mm[g], mm[f])
                    if v is None:
                        return False
                    if h in mm:
                        if mm[h] != v:
                            return False
                    else:
                        mm[h] = v
                        work.append(h)
        return True

    for om in obj_maps:
        budget.tick()
        if fully_faithful:
            if any(len(C.hom(x, y)) != len(D.hom(*((om[y], om[x]) if contravariant else (om[x], om[y]))))
                   for x in C.objects for y in C.objects):
                continue
        mm = {C.identity(x): D.identity(om[x]) for x in C.objects}
        if not propagate(mm, list(mm)):
            continue
        if any(D.src(v) != dom_hom(om, f)[0] or D.tgt(v) != dom_hom(om, f)[1] for f, v in mm.items()):
            continue

        def rec(i, mm):
            while i < len(free) and free[i] in mm:
                i += 1
            if i == len(free):
                if fully_faithful and not _hom_injective(C, om, mm, contravariant):
                    return
                yield FinFunctor(C, D, dict(om), dict(mm), contravariant)
                return
            f = free[i]
            for v in D.hom(*dom_hom(om, f)):
                budget.tick()
                trial = dict(mm)
                trial[f] = v
                if not propagate(trial, [f]):
                    continue
                if any(D.src(trial[m]) != dom_hom(om, m)[0] or D.tgt(trial[m]) != dom_hom(om, m)[1]
                       for m in trial if m not in mm):
                    continue
                if fully_faithful and not _hom_injective(C, om, trial, contravariant):
                    continue
                yield from rec(i + 1, trial)

        yield from rec(0, mm)


def _hom_injective(C, om, mm, contravariant) -> bool:
    seen = {}
    for f, v in mm.items():
        key = (C.src(f), C.tgt(f))
        bucket = seen.setdefault(key, set())
        if v in bucket:
            return False
        bucket.add(v)
    return True
