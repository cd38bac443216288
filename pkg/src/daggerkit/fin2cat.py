"""Strict finite 2-categories, hom-categories and adjunctions.

``hcomp(b, a)`` is horizontal composition with ``a`` applied first:
for ``a: f => g`` in hom(x, y) and ``b: f' => g'`` in hom(y, z) it is
``b * a: f'.f => g'.g``.  Whiskering is horizontal composition with an
identity 2-cell.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .fincat import FinCategory, SearchBudget, validate_category
from .report import StructureError, ValidationReport


class Fin2Category:
    def __init__(self, objects: Sequence[str], one_cells, one_identities: Mapping, one_compose: Mapping,
                 two_cells, two_identities: Mapping, vertical: Mapping, horizontal: Mapping, name: str = ""):
        self.name = name
        self.skeleton = FinCategory(objects, one_cells, one_identities, one_compose, name=name)
        ids, s2, t2 = [], {}, {}
        for a, s, t in two_cells:
            if a in s2:
                raise StructureError(f"duplicate 2-cell id {a!r}")
            for f in (s, t):
                if not self.skeleton.has_morphism(f):
                    raise StructureError(f"2-cell {a!r} references unknown 1-cell {f!r}")
            ids.append(a)
            s2[a], t2[a] = s, t
        self.two_cells = tuple(ids)
        self._s2, self._t2 = s2, t2
        self._id2 = {}
        for f in self.skeleton.morphisms:
            if f not in two_identities:
                raise StructureError(f"1-cell {f!r} has no identity 2-cell")
            if two_identities[f] not in s2:
                raise StructureError(f"identity 2-cell of {f!r} is unknown {two_identities[f]!r}")
            self._id2[f] = two_identities[f]
        for tab_name, tab in (("vertical", vertical), ("horizontal", horizontal)):
            for (b, a), c in tab.items():
                for x in (b, a, c):
                    if x not in s2:
                        raise StructureError(f"{tab_name} table references unknown 2-cell {x!r}")
        self._v = dict(vertical)
        self._h = dict(horizontal)
        cells = {}
        for a in ids:
            cells.setdefault((s2[a], t2[a]), []).append(a)
        self._cells = {k: tuple(v) for k, v in cells.items()}
        self._hom_cache = {}

    # -- access -----------------------------------------------------------

    @property
    def objects(self):
        return self.skeleton.objects

    @property
    def one_cells(self):
        return self.skeleton.morphisms

    def src1(self, f):
        return self.skeleton.src(f)

    def tgt1(self, f):
        return self.skeleton.tgt(f)

    def c1(self, *fs):
        return self.skeleton.comp(*fs)

    def id1(self, x):
        return self.skeleton.identity(x)

    def src2(self, a):
        return self._s2[a]

    def tgt2(self, a):
        return self._t2[a]

    def id2(self, f):
        return self._id2[f]

    def vcomp(self, *cells):
        """Vertical composite, right to left."""
        out = cells[-1]
        for b in reversed(cells[:-1]):
            try:
                out = self._v[(b, out)]
            except KeyError:
                raise ValueError(f"vertical composite {b!r} o {out!r} undefined") from None
        return out

    def hcomp(self, *cells):
        """Horizontal composite, right to left."""
        out = cells[-1]
        for b in reversed(cells[:-1]):
            try:
                out = self._h[(b, out)]
            except KeyError:
                raise ValueError(f"horizontal composite {b!r} * {out!r} undefined") from None
        return out

    def whisker(self, *parts):
        """Horizontal composite where 1-cells stand for their identity 2-cells."""
        return self.hcomp(*[self._id2[p] if p in self._id2 else p for p in parts])

    def cells(self, f, g) -> tuple:
        return self._cells.get((f, g), ())

    def endpoints(self, a):
        f = self._s2[a]
        return self.skeleton.src(f), self.skeleton.tgt(f)

    @property
    def vertical_table(self):
        return dict(self._v)

    @property
    def horizontal_table(self):
        return dict(self._h)

    @property
    def two_identities(self):
        return dict(self._id2)

    def two_cell_triples(self):
        return [(a, self._s2[a], self._t2[a]) for a in self.two_cells]

    def hom(self, x, y) -> FinCategory:
        """The hom-category: 1-cells x -> y and the 2-cells between them."""
        key = (x, y)
        if key not in self._hom_cache:
            objs = self.skeleton.hom(x, y)
            oset = set(objs)
            mors = [(a, self._s2[a], self._t2[a]) for a in self.two_cells if self._s2[a] in oset]
            mset = {m[0] for m in mors}
            comp = {(b, a): c for (b, a), c in self._v.items() if b in mset and a in mset}
            self._hom_cache[key] = FinCategory(objs, mors, {f: self._id2[f] for f in objs}, comp,
                                               name=f"hom({x},{y})")
        return self._hom_cache[key]

    def vinverse(self, a):
        x, y = self.endpoints(a)
        return self.hom(x, y).inverse(a)

    def __repr__(self):
        return (f"<Fin2Category {self.name!r}: {len(self.objects)} objects, "
                f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells>")

    def __eq__(self, other):
        if not isinstance(other, Fin2Category):
            return NotImplemented
        return (self.skeleton == other.skeleton and set(self.two_cells) == set(other.two_cells)
                and self._s2 == other._s2 and self._t2 == other._t2 and self._id2 == other._id2
                and self._v == other._v and self._h == other._h)

    __hash__ = None


def hom_category(b: Fin2Category, x: str, y: str) -> FinCategory:
    return b.hom(x, y)


def full_sub_2category(b: Fin2Category, objects, name: str = "") -> Fin2Category:
    keep = set(objects)
    objs = [x for x in b.objects if x in keep]
    ones = [f for f in b.one_cells if b.src1(f) in keep and b.tgt1(f) in keep]
    oset = set(ones)
    twos = [a for a in b.two_cells if b.src2(a) in oset]
    tset = set(twos)
    return Fin2Category(
        objs, [(f, b.src1(f), b.tgt1(f)) for f in ones], {x: b.id1(x) for x in objs},
        {(g, f): h for (g, f), h in b.skeleton.table.items() if g in oset and f in oset},
        [(a, b.src2(a), b.tgt2(a)) for a in twos], {f: b.id2(f) for f in ones},
        {k: v for k, v in b.vertical_table.items() if k[0] in tset and k[1] in tset},
        {k: v for k, v in b.horizontal_table.items() if k[0] in tset and k[1] in tset},
        name=name or b.name,
    )


def locally_discrete(c: FinCategory, name: str = "") -> Fin2Category:
    """A 1-category viewed as a 2-category with only identity 2-cells."""
    def i2(f):
        return f"id2({f})"
    return Fin2Category(
        c.objects, c.morphism_triples(), c.identities, c.table,
        [(i2(f), f, f) for f in c.morphisms], {f: i2(f) for f in c.morphisms},
        {(i2(f), i2(f)): i2(f) for f in c.morphisms},
        {(i2(g), i2(f)): i2(h) for (g, f), h in c.table.items()},
        name=name or c.name,
    )


# -- validation -------------------------------------------------------------

def validate_2category(b: Fin2Category) -> ValidationReport:
    rep = ValidationReport(subject=f"2-category {b.name}".strip())
    rep.extend(validate_category(b.skeleton), prefix="1-")
    sk = b.skeleton
    for a in b.two_cells:
        f, g = b.src2(a), b.tgt2(a)
        if sk.src(f) != sk.src(g) or sk.tgt(f) != sk.tgt(g):
            rep.add("2-cell-parallel", (a,), f"{f} and {g} are not parallel")
    for f in b.one_cells:
        i = b.id2(f)
        if b.src2(i) != f or b.tgt2(i) != f:
            rep.add("identity-2-typing", (f, i))
    if not rep.ok:
        return rep
    for (x, y) in itertools.product(b.objects, repeat=2):
        rep.extend(validate_category(b.hom(x, y)), prefix="vertical-")
    for (be, al) in b.vertical_table:
        if b.tgt2(al) != b.src2(be):
            rep.add("vertical-totality", (be, al), "composite given for a non-composable pair")
    if not rep.ok:
        return rep

    h = b.horizontal_table
    by_hom = {}
    for a in b.two_cells:
        by_hom.setdefault(b.endpoints(a), []).append(a)
    composable = []  # (beta, alpha) with alpha in hom(x,y), beta in hom(y,z)
    for (x, y), alphas in by_hom.items():
        for (y2, z), betas in by_hom.items():
            if y2 == y:
                composable.extend((be, al) for be in betas for al in alphas)
    cset = set(composable)
    for key in h:
        if key not in cset:
            rep.add("horizontal-totality", key, "composite given for a non-composable pair")
    for be, al in composable:
        c = h.get((be, al))
        if c is None:
            rep.add("horizontal-totality", (be, al), "composable pair has no composite")
            continue
        want_s = sk._comp.get((b.src2(be), b.src2(al)))
        want_t = sk._comp.get((b.tgt2(be), b.tgt2(al)))
        if b.src2(c) != want_s or b.tgt2(c) != want_t:
            rep.add("horizontal-typing", (be, al, c))
    if not rep.ok:
        return rep

    for a in b.two_cells:
        x, y = b.endpoints(a)
        if h[(b.id2(b.id1(y)), a)] != a:
            rep.add("horizontal-unit", (b.id2(b.id1(y)), a))
        if h[(a, b.id2(b.id1(x)))] != a:
            rep.add("horizontal-unit", (a, b.id2(b.id1(x))))
    for (g, f), gf in sk.table.items():
        if h[(b.id2(g), b.id2(f))] != b.id2(gf):
            rep.add("horizontal-identity", (g, f))
    for ga, be in composable:
        for be2, al in composable:
            if be2 != be:
                continue
            if h[(h[(ga, be)], al)] != h[(ga, h[(be, al)])]:
                rep.add("horizontal-associativity", (ga, be, al))
    _interchange_scan(b, rep, by_hom)
    return rep


def _interchange_scan(b: Fin2Category, rep: ValidationReport, by_hom) -> None:
    v, h = b.vertical_table, b.horizontal_table
    vpairs = {}
    for (be, al), c in v.items():
        vpairs.setdefault(b.endpoints(al), []).append((be, al, c))
    for (x, y), lower in vpairs.items():
        for (y2, z), upper in vpairs.items():
            if y2 != y:
                continue
            # upper pair in hom(y,z) is applied after the lower pair in hom(x,y)
            for a2, a1, a21 in upper:
                for b2, b1, b21 in lower:
                    lhs = h[(a21, b21)]
                    rhs = v.get((h[(a2, b2)], h[(a1, b1)]))
                    if lhs != rhs:
                        rep.add("interchange", (a2, a1, b2, b1),
                                f"({a2}.{a1})*({b2}.{b1}) = {lhs} vs {rhs}")


# -- adjunctions ------------------------------------------------------------

@dataclass(frozen=True)
class Adjunction:
    """``f -| fR`` with unit ``eta: 1 => fR.f`` and counit ``eps: f.fR => 1``."""

    f: str
    fR: str
    eta: str
    eps: str


def _adjunction_typing(b: Fin2Category, adj: Adjunction):
    f, fR = adj.f, adj.fR
    x, y = b.src1(f), b.tgt1(f)
    problems = []
    if b.src1(fR) != y or b.tgt1(fR) != x:
        problems.append(f"{fR} is not a 1-cell {y} -> {x}")
    else:
        if b.src2(adj.eta) != b.id1(x) or b.tgt2(adj.eta) != b.c1(fR, f):
            problems.append(f"unit {adj.eta} is not 1_{x} => {fR}.{f}")
        if b.src2(adj.eps) != b.c1(f, fR) or b.tgt2(adj.eps) != b.id1(y):
            problems.append(f"counit {adj.eps} is not {f}.{fR} => 1_{y}")
    return problems


def check_adjunction(b: Fin2Category, adj: Adjunction) -> ValidationReport:
    problems = _adjunction_typing(b, adj)
    if problems:
        raise StructureError("; ".join(problems))
    rep = ValidationReport(subject=f"adjunction {adj.f} -| {adj.fR}")
    f, fR = adj.f, adj.fR
    z1 = b.vcomp(b.whisker(adj.eps, f), b.whisker(f, adj.eta))
    if z1 != b.id2(f):
        rep.add("zigzag-left", (f, fR, adj.eta, adj.eps), f"gives {z1}, not 1_{f}")
    z2 = b.vcomp(b.whisker(fR, adj.eps), b.whisker(adj.eta, fR))
    if z2 != b.id2(fR):
        rep.add("zigzag-right", (f, fR, adj.eta, adj.eps), f"gives {z2}, not 1_{fR}")
    return rep


def find_right_adjoints(b: Fin2Category, f: str, budget: SearchBudget | None = None) -> list:
    """Every verified adjunction ``f -| g``, by exhaustive search."""
    budget = budget or SearchBudget()
    x, y = b.src1(f), b.tgt1(f)
    found = []
    for g in b.skeleton.hom(y, x):
        etas = b.cells(b.id1(x), b.c1(g, f))
        epss = b.cells(b.c1(f, g), b.id1(y))
        for eta in etas:
            for eps in epss:
                budget.tick()
                adj = Adjunction(f, g, eta, eps)
                if check_adjunction(b, adj).ok:
                    found.append(adj)
    return found


def find_right_adjoint(b: Fin2Category, f: str, budget: SearchBudget | None = None):
    found = find_right_adjoints(b, f, budget)
    return found[0] if found else None


def find_left_adjoints(b: Fin2Category, f: str, budget: SearchBudget | None = None) -> list:
    """Every verified adjunction ``g -| f``."""
    budget = budget or SearchBudget()
    x, y = b.src1(f), b.tgt1(f)
    found = []
    for g in b.skeleton.hom(y, x):
        for eta in b.cells(b.id1(y), b.c1(f, g)):
            for eps in b.cells(b.c1(g, f), b.id1(x)):
                budget.tick()
                adj = Adjunction(g, f, eta, eps)
                if check_adjunction(b, adj).ok:
                    found.append(adj)
    return found


def find_left_adjoint(b: Fin2Category, f: str, budget: SearchBudget | None = None):
    found = find_left_adjoints(b, f, budget)
    return found[0] if found else None


def mate(b: Fin2Category, alpha: str, adj_src: Adjunction, adj_tgt: Adjunction) -> str:
    """For ``alpha: f => g`` with ``f -| fR`` and ``g -| gR``, the mate ``gR => fR``."""
    f, g = adj_src.f, adj_tgt.f
    fR, gR = adj_src.fR, adj_tgt.fR
    if b.src2(alpha) != f or b.tgt2(alpha) != g:
        raise ValueError(f"{alpha} is not a 2-cell {f} => {g}")
    return b.vcomp(b.whisker(fR, adj_tgt.eps), b.whisker(fR, alpha, gR), b.whisker(adj_src.eta, gR))


def adjoint_comparison(b: Fin2Category, adj1: Adjunction, adj2: Adjunction):
    """The canonical 2-iso ``adj1.fR => adj2.fR`` for two right adjoints of one 1-cell, or None."""
    if adj1.f != adj2.f:
        raise ValueError("adjunctions are for different 1-cells")
    f = adj1.f
    there = mate(b, b.id2(f), adj2, adj1)
    back = mate(b, b.id2(f), adj1, adj2)
    if b.vcomp(back, there) == b.id2(adj1.fR) and b.vcomp(there, back) == b.id2(adj2.fR):
        return there
    return None


def compose_adjunctions(b: Fin2Category, adj_g: Adjunction, adj_f: Adjunction) -> Adjunction:
    """``g.f -| fR.gR`` from ``g -| gR`` and ``f -| fR``."""
    f, fR, g, gR = adj_f.f, adj_f.fR, adj_g.f, adj_g.fR
    eta = b.vcomp(b.whisker(fR, adj_g.eta, f), adj_f.eta)
    eps = b.vcomp(adj_g.eps, b.whisker(g, adj_f.eps, gR))
    return Adjunction(b.c1(g, f), b.c1(fR, gR), eta, eps)


def trivial_adjunction(b: Fin2Category, x: str) -> Adjunction:
    i = b.id1(x)
    return Adjunction(i, i, b.id2(i), b.id2(i))


@dataclass
class DoubleDual:
    """f -> f^RR on 1-cells and 2-cells, with the comparison cells.

    ``comparison[(g, f)]: (g.f)^RR => g^RR . f^RR`` and
    ``unit_comparison[x]: (1_x)^RR => 1_x``.
    """

    on1: dict
    on2: dict
    comparison: dict
    unit_comparison: dict
    report: ValidationReport = field(default_factory=ValidationReport)


def _choice(adjoint_choice, f):
    try:
        return adjoint_choice[f]
    except KeyError:
        raise ValueError(f"no adjoint chosen for 1-morphism {f!r}") from None


def double_right_dual(b: Fin2Category, adjoint_choice: Mapping[str, Adjunction]) -> DoubleDual:
    rep = ValidationReport(subject="double right dual")
    for f in b.one_cells:
        adj = _choice(adjoint_choice, f)
        if adj.f != f or not check_adjunction(b, adj).ok:
            raise ValueError(f"chosen adjunction for {f!r} does not verify")
    on1 = {f: _choice(adjoint_choice, _choice(adjoint_choice, f).fR).fR for f in b.one_cells}

    def rr(alpha):
        f, g = b.src2(alpha), b.tgt2(alpha)
        af, ag = adjoint_choice[f], adjoint_choice[g]
        r = mate(b, alpha, af, ag)
        return mate(b, r, adjoint_choice[ag.fR], adjoint_choice[af.fR])

    on2 = {a: rr(a) for a in b.two_cells}
    for f in b.one_cells:
        if on2[b.id2(f)] != b.id2(on1[f]):
            rep.add("rr-identity", (f,))
    for (be, al), c in b.vertical_table.items():
        if on2[c] != b.vcomp(on2[be], on2[al]):
            rep.add("rr-vertical", (be, al))

    comparison = {}
    for (g, f), gf in b.skeleton.table.items():
        a_gf = adjoint_choice[gf]
        composite = compose_adjunctions(b, adjoint_choice[g], adjoint_choice[f])
        c = mate(b, b.id2(gf), composite, a_gf)          # (gf)^R => f^R g^R
        inner = compose_adjunctions(b, adjoint_choice[adjoint_choice[f].fR], adjoint_choice[adjoint_choice[g].fR])
        m = mate(b, c, adjoint_choice[a_gf.fR], inner)   # g^RR f^RR => (gf)^RR
        inv = b.vinverse(m)
        if inv is None:
            rep.add("rr-comparison-invertible", (g, f))
            continue
        comparison[(g, f)] = inv
    unit_comparison = {}
    for x in b.objects:
        i = b.id1(x)
        t = trivial_adjunction(b, x)
        a0 = adjoint_choice[i]
        c0 = mate(b, b.id2(i), t, a0)                      # i^R => i
        m = mate(b, c0, adjoint_choice[a0.fR], t)           # i => i^RR
        inv = b.vinverse(m)
        if inv is None:
            rep.add("rr-unit-invertible", (x,))
            continue
        unit_comparison[x] = inv
    return DoubleDual(on1, on2, comparison, unit_comparison, rep)


def is_equivalence_1cell(b: Fin2Category, f: str):
    """A pseudo-inverse ``g`` with invertible 2-cells ``g.f ~ 1`` and ``f.g ~ 1``, or None."""
    x, y = b.src1(f), b.tgt1(f)
    for g in b.skeleton.hom(y, x):
        gf, fg = b.c1(g, f), b.c1(f, g)
        u = [a for a in b.cells(gf, b.id1(x)) if b.vinverse(a) is not None]
        v = [a for a in b.cells(fg, b.id1(y)) if b.vinverse(a) is not None]
        if u and v:
            return g
    return None
