"""Bi-involutive 2-categories, their partial variants, the strictification of
coherent dagger data, and pivotal structures.

``dag2`` reverses 2-cells and is the identity on objects and 1-cells.
``dag1`` reverses 1-cells (swapping endpoints) but not 2-cells, and squares
to the identity up to ``phi_f: dag1(dag1(f)) => f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .fin2cat import (Adjunction, Fin2Category, check_adjunction, double_right_dual,
                      full_sub_2category, is_equivalence_1cell)
from .report import StructureError, ValidationReport


@dataclass
class BiInvolutive:
    base: Fin2Category
    dag2: dict
    dag1_on1: dict
    dag1_on2: dict
    phi: dict


def _resolve(b: Fin2Category, table: Mapping, keys, kind: str, values: str):
    pool = set(b.two_cells) if values == "2" else set(b.one_cells)
    for k in keys:
        v = table.get(k)
        if v is None or v not in pool:
            raise StructureError(f"{kind} undefined or unresolved at {k!r}")


def _top_checks(b: Fin2Category, dag2: Mapping, rep: ValidationReport) -> None:
    _resolve(b, dag2, b.two_cells, "dag2", "2")
    for a in b.two_cells:
        d = dag2[a]
        if b.src2(d) != b.tgt2(a) or b.tgt2(d) != b.src2(a):
            rep.add("dag2-typing", (a, d), f"{a}: {b.src2(a)} => {b.tgt2(a)} but dag2 is {b.src2(d)} => {b.tgt2(d)}")
    for f in b.one_cells:
        if dag2[b.id2(f)] != b.id2(f):
            rep.add("dag2-identity", (f,))
    for a in b.two_cells:
        if dag2[dag2[a]] != a:
            rep.add("dag2-involution", (a,), f"dag2 twice gives {dag2[dag2[a]]}")
    v, h = b.vertical_table, b.horizontal_table
    for (be, al), c in v.items():
        if dag2[c] != v.get((dag2[al], dag2[be])):
            rep.add("dag2-vertical", (be, al))
    for (be, al), c in h.items():
        if dag2[c] != h.get((dag2[be], dag2[al])):
            rep.add("dag2-horizontal", (be, al))


def _first_checks(b: Fin2Category, d1: Mapping, d12: Mapping, phi: Mapping, rep: ValidationReport) -> None:
    _resolve(b, d1, b.one_cells, "dag1", "1")
    _resolve(b, d12, b.two_cells, "dag1 on 2-cells", "2")
    _resolve(b, phi, b.one_cells, "phi", "2")
    sk = b.skeleton
    for f in b.one_cells:
        g = d1[f]
        if b.src1(g) != b.tgt1(f) or b.tgt1(g) != b.src1(f):
            rep.add("dag1-typing-1", (f, g))
    for x in b.objects:
        if d1[b.id1(x)] != b.id1(x):
            rep.add("dag1-identity-1", (x,))
    for (g, f), gf in sk.table.items():
        if d1[gf] != sk._comp.get((d1[f], d1[g])):
            rep.add("dag1-composition", (g, f))
    for a in b.two_cells:
        d = d12[a]
        if b.src2(d) != d1[b.src2(a)] or b.tgt2(d) != d1[b.tgt2(a)]:
            rep.add("dag1-typing-2", (a, d))
    for f in b.one_cells:
        if d12[b.id2(f)] != b.id2(d1[f]):
            rep.add("dag1-identity-2", (f,))
    v, h = b.vertical_table, b.horizontal_table
    for (be, al), c in v.items():
        if d12[c] != v.get((d12[be], d12[al])):
            rep.add("dag1-vertical", (be, al))
    for (be, al), c in h.items():
        if d12[c] != h.get((d12[al], d12[be])):
            rep.add("dag1-horizontal", (be, al))
    typed = True
    for f in b.one_cells:
        p = phi[f]
        if b.src2(p) != d1.get(d1[f]) or b.tgt2(p) != f:
            rep.add("phi-typing", (f, p), f"phi_f should be {d1.get(d1[f])} => {f}")
            typed = False
    if not typed:
        return
    for f in b.one_cells:
        if b.vinverse(phi[f]) is None:
            rep.add("phi-invertible", (f, phi[f]))
    for a in b.two_cells:
        f, g = b.src2(a), b.tgt2(a)
        lhs = v.get((a, phi[f]))
        rhs = v.get((phi[g], d12.get(d12[a])))
        if lhs is None or lhs != rhs:
            rep.add("phi-naturality", (a,), f"{lhs} vs {rhs}")
    for x in b.objects:
        i = b.id1(x)
        if phi[i] != b.id2(i):
            rep.add("phi-identity", (x, phi[i]))
    for (g, f), gf in sk.table.items():
        if phi[gf] != h.get((phi[g], phi[f])):
            rep.add("phi-composition", (g, f))
    for f in b.one_cells:
        if phi[d1[f]] != d12[phi[f]]:
            rep.add("phi-cubed", (f,), f"phi at dag1({f}) is {phi[d1[f]]}, dag1(phi_{f}) is {d12[phi[f]]}")


def validate_bi_involutive(v: BiInvolutive) -> ValidationReport:
    b = v.base
    rep = ValidationReport(subject="bi-involutive")
    _top_checks(b, v.dag2, rep)
    _first_checks(b, v.dag1_on1, v.dag1_on2, v.phi, rep)
    for a in b.two_cells:
        lhs = v.dag2.get(v.dag1_on2[a])
        rhs = v.dag1_on2.get(v.dag2[a])
        if lhs != rhs:
            rep.add("strong-commutation", (a,), f"dag2(dag1) = {lhs}, dag1(dag2) = {rhs}")
    for f in b.one_cells:
        p = v.phi[f]
        if b.src2(p) == v.dag1_on1.get(v.dag1_on1[f]) and b.tgt2(p) == f:
            inv = b.vinverse(p)
            if inv is None or v.dag2[p] != inv:
                rep.add("phi-unitary", (f, p), f"dag2(phi) = {v.dag2[p]}, inverse = {inv}")
    return rep


def validate_partial_dagger(b: Fin2Category, which: str, data) -> ValidationReport:
    """Check only the dag2 axioms (``which="top"``) or only the (dag1, phi) axioms (``"first"``).

    ``data`` is a BiInvolutive or a mapping with the relevant keys.
    """
    get = (lambda k: getattr(data, k)) if isinstance(data, BiInvolutive) else data.__getitem__
    rep = ValidationReport(subject=f"{which}-dagger")
    if which == "top":
        _top_checks(b, get("dag2"), rep)
    elif which == "first":
        _first_checks(b, get("dag1_on1"), get("dag1_on2"), get("phi"), rep)
    else:
        raise ValueError(f"which must be 'top' or 'first', got {which!r}")
    return rep


def hom_strict_daggers(v: BiInvolutive):
    """Each hom-category with dag2 restricted, as (x, y, StrictDagger)."""
    from .dagger1 import StrictDagger
    b = v.base
    for x in b.objects:
        for y in b.objects:
            hc = b.hom(x, y)
            yield x, y, StrictDagger(hc, {a: v.dag2[a] for a in hc.morphisms})


def dag1_adjunction(v: BiInvolutive, adj: Adjunction) -> Adjunction:
    """dag1 turns ``f -| fR`` into ``dag1(fR) -| dag1(f)``."""
    return Adjunction(v.dag1_on1[adj.fR], v.dag1_on1[adj.f], v.dag1_on2[adj.eta], v.dag1_on2[adj.eps])


# -- strictification of coherent data -------------------------------------------

@dataclass
class TwoFunctorData:
    obj: dict
    one: dict
    two: dict


@dataclass
class CoherentDagger2Input:
    """Pre-unpacked coherent dagger data on a strict 2-category.

    ``psi1`` reverses 1-cells, ``psi2`` reverses 2-cells.  ``h1[b]: psi1(b) -> b``
    and ``h2[b]: psi2(b) -> b`` are invertible 1-cells and
    ``hf[f]: h2[b'] . psi2(f) => f . h2[b]`` fills the square for ``f: b -> b'``.
    """

    base: Fin2Category
    psi1: TwoFunctorData
    psi2: TwoFunctorData
    h1: dict
    h2: dict
    hf: dict
    flagged_objects: list | None = None


def _inv1(b: Fin2Category, f):
    return b.skeleton.inverse(f)


def _check_psi(b: Fin2Category, psi: TwoFunctorData, which: int, rep: ValidationReport) -> None:
    sk = b.skeleton
    tag = f"psi{which}"
    for x in b.objects:
        if psi.obj.get(x) not in set(b.objects):
            raise StructureError(f"{tag} undefined or unresolved at object {x!r}")
    _resolve(b, psi.one, b.one_cells, f"{tag} on 1-cells", "1")
    _resolve(b, psi.two, b.two_cells, f"{tag} on 2-cells", "2")
    for f in b.one_cells:
        s, t = psi.obj[b.src1(f)], psi.obj[b.tgt1(f)]
        if which == 1:
            s, t = t, s
        g = psi.one[f]
        if b.src1(g) != s or b.tgt1(g) != t:
            rep.add(f"{tag}-typing-1", (f, g))
    for x in b.objects:
        if psi.one[b.id1(x)] != b.id1(psi.obj[x]):
            rep.add(f"{tag}-identity-1", (x,))
    for (g, f), gf in sk.table.items():
        pair = (psi.one[f], psi.one[g]) if which == 1 else (psi.one[g], psi.one[f])
        if psi.one[gf] != sk._comp.get(pair):
            rep.add(f"{tag}-composition", (g, f))
    for a in b.two_cells:
        s, t = psi.one[b.src2(a)], psi.one[b.tgt2(a)]
        if which == 2:
            s, t = t, s
        d = psi.two[a]
        if b.src2(d) != s or b.tgt2(d) != t:
            rep.add(f"{tag}-typing-2", (a, d))
    for f in b.one_cells:
        if psi.two[b.id2(f)] != b.id2(psi.one[f]):
            rep.add(f"{tag}-identity-2", (f,))
    v, h = b.vertical_table, b.horizontal_table
    for (be, al), c in v.items():
        pair = (psi.two[be], psi.two[al]) if which == 1 else (psi.two[al], psi.two[be])
        if psi.two[c] != v.get(pair):
            rep.add(f"{tag}-vertical", (be, al))
    for (be, al), c in h.items():
        pair = (psi.two[al], psi.two[be]) if which == 1 else (psi.two[be], psi.two[al])
        if psi.two[c] != h.get(pair):
            rep.add(f"{tag}-horizontal", (be, al))
    for x in b.objects:
        if psi.obj[psi.obj[x]] != x:
            rep.add(f"{tag}-involution", (x,))
    for f in b.one_cells:
        if psi.one[psi.one[f]] != f:
            rep.add(f"{tag}-involution", (f,))
    for a in b.two_cells:
        if psi.two[psi.two[a]] != a:
            rep.add(f"{tag}-involution", (a,))


def _hom_dual(c: CoherentDagger2Input, theta):
    """The contravariant involution theta -> h2 . psi2(theta) . h2^-1 on one hom-category."""
    b = c.base
    x, y = b.endpoints(theta)
    return b.whisker(c.h2[y], c.psi2.two[theta], _inv1(b, c.h2[x]))


def _k(c: CoherentDagger2Input, f):
    b = c.base
    return b.whisker(c.hf[f], _inv1(b, c.h2[b.src1(f)]))


def validate_coherent_input(c: CoherentDagger2Input) -> ValidationReport:
    """Check the strict unpacking of the coherent data that the strictification relies on."""
    b = c.base
    sk = b.skeleton
    rep = ValidationReport(subject="coherent dagger data")
    _check_psi(b, c.psi1, 1, rep)
    _check_psi(b, c.psi2, 2, rep)
    if not rep.ok:
        return rep
    for x in b.objects:
        if (c.psi1.one[c.psi2.one.get(sk.identity(x))] != c.psi2.one[c.psi1.one[sk.identity(x)]]):
            rep.add("psi-commute", (x,))
    for f in b.one_cells:
        if c.psi1.one[c.psi2.one[f]] != c.psi2.one[c.psi1.one[f]]:
            rep.add("psi-commute", (f,))
    for a in b.two_cells:
        if c.psi1.two[c.psi2.two[a]] != c.psi2.two[c.psi1.two[a]]:
            rep.add("psi-commute", (a,))
    for x in b.objects:
        for tag, h, psi in (("h1", c.h1, c.psi1), ("h2", c.h2, c.psi2)):
            u = h.get(x)
            if u is None or not sk.has_morphism(u):
                raise StructureError(f"{tag} undefined or unresolved at object {x!r}")
            if b.src1(u) != psi.obj[x] or b.tgt1(u) != x:
                rep.add(f"{tag}-typing", (x, u))
            elif _inv1(b, u) is None:
                rep.add(f"{tag}-invertible", (x, u))
    if not rep.ok:
        return rep
    for x in b.objects:
        if c.psi1.one[c.h1[x]] != c.h1[x]:
            rep.add("h1-fixed", (x,), "psi1(h1) differs from h1")
        if b.c1(c.h2[x], c.psi2.one[c.h2[x]]) != b.id1(x):
            rep.add("h2-fixed", (x,), "h2 . psi2(h2) is not the identity")
        lhs = sk._comp.get((c.h1[x], _inv1(b, c.psi1.one[c.h2[x]])))
        rhs = sk._comp.get((c.h2[x], c.psi2.one[c.h1[x]]))
        if lhs != rhs:
            rep.add("h-compatibility", (x,), f"{lhs} vs {rhs}")
    if not rep.ok:
        return rep
    for f in b.one_cells:
        k = c.hf.get(f)
        if k is None:
            continue
        if k not in set(b.two_cells):
            raise StructureError(f"hf unresolved at 1-cell {f!r}")
        x, y = b.src1(f), b.tgt1(f)
        if b.src2(k) != b.c1(c.h2[y], c.psi2.one[f]) or b.tgt2(k) != b.c1(f, c.h2[x]):
            rep.add("hf-typing", (f, k))
        elif b.vinverse(k) is None:
            rep.add("hf-invertible", (f, k))
        elif _k(c, f) != _hom_dual(c, _k(c, f)):
            rep.add("hf-fixed", (f, k), "square is not fixed by the hom-level involution")
    if not rep.ok:
        return rep
    for x in b.objects:
        i = b.id1(x)
        if i in c.hf and c.hf[i] != b.id2(c.h2[x]):
            rep.add("hf-identity", (x,))
    for (g, f), gf in sk.table.items():
        if not all(m in c.hf for m in (g, f, gf)):
            continue
        pasted = b.vcomp(b.whisker(g, c.hf[f]), b.whisker(c.hf[g], c.psi2.one[f]))
        if c.hf[gf] != pasted:
            rep.add("hf-composition", (g, f))
    for f in b.one_cells:
        fd = b.c1(c.h1[b.src1(f)], c.psi1.one[f], _inv1(b, c.h1[b.tgt1(f)]))
        if f in c.hf and fd in c.hf:
            moved = b.whisker(c.h1[b.src1(f)], c.psi1.two[_k(c, f)], _inv1(b, c.h1[b.tgt1(f)]))
            if _k(c, fd) != moved:
                rep.add("hf-dag1", (f,), "square on dag1(f) is not the transported square")
    return rep


def derive_hf(c: CoherentDagger2Input, one_cells=None) -> dict:
    """Fill in hf where exactly one invertible square is fixed by the involution."""
    b = c.base
    out = dict(c.hf)
    for f in (b.one_cells if one_cells is None else one_cells):
        if f in out:
            continue
        x, y = b.src1(f), b.tgt1(f)
        cands = []
        for k in b.cells(b.c1(c.h2[y], c.psi2.one[f]), b.c1(f, c.h2[x])):
            if b.vinverse(k) is None:
                continue
            kk = b.whisker(k, _inv1(b, c.h2[x]))
            if kk == _hom_dual(c, kk):
                cands.append(k)
        if len(cands) != 1:
            raise ValueError(f"cannot derive hf for 1-morphism {f!r}: {len(cands)} candidates {cands}")
        out[f] = cands[0]
    return out


def strictify_bicategory(c: CoherentDagger2Input, objects=None) -> BiInvolutive:
    """Build the bi-involutive 2-category on the flagged objects.

    1-cells are all 1-cells between flagged objects (each must carry hf),
    2-cells are all 2-cells between them.  dag1 is
    ``f -> h1[b] . psi1(f) . h1[b']^-1``; dag2 conjugates psi2 by the squares.
    """
    b = c.base
    objects = c.flagged_objects if objects is None else objects
    flagged = list(b.objects) if objects is None else [x for x in b.objects if x in set(objects)]
    for x in b.objects:
        if not any(x == y or _equivalent(b, y, x) for y in flagged):
            raise ValueError(f"missing flag: object {x!r} is not equivalent to a flagged object")
    rep = validate_coherent_input(c)
    if not rep.ok:
        raise ValueError(f"coherent input fails its checks:\n{rep}")
    sub = full_sub_2category(b, flagged, name=f"strict({b.name})" if b.name else "strict")
    for f in sub.one_cells:
        if f not in c.hf:
            raise ValueError(f"missing flag: 1-morphism {f!r} has no fixed-point square")
    h1inv = {x: _inv1(b, c.h1[x]) for x in flagged}
    d1 = {f: b.c1(c.h1[sub.src1(f)], c.psi1.one[f], h1inv[sub.tgt1(f)]) for f in sub.one_cells}
    d12 = {a: b.whisker(c.h1[sub.src1(sub.src2(a))], c.psi1.two[a], h1inv[sub.tgt1(sub.src2(a))])
           for a in sub.two_cells}
    dag2 = {}
    for a in sub.two_cells:
        f, g = sub.src2(a), sub.tgt2(a)
        dag2[a] = b.vcomp(_k(c, f), _hom_dual(c, a), b.vinverse(_k(c, g)))
    phi = {f: sub.id2(f) for f in sub.one_cells}
    return BiInvolutive(sub, dag2, d1, d12, phi)


def _equivalent(b: Fin2Category, x, y) -> bool:
    return any(is_equivalence_1cell(b, f) is not None for f in b.skeleton.hom(x, y))


# -- pivotal structures -----------------------------------------------------------

@dataclass
class Pivotal:
    """A trivialisation of the double right dual.

    ``theta[b]: b -> b`` and ``tau[f]: f^RR . theta[b1] => theta[b2] . f``.
    """

    base: Fin2Category
    adjoint_choice: dict
    theta: dict
    tau: dict


QUADRATIC_CONDITION = "theta-quadratic-4-cell"


def validate_pivotal(p: Pivotal) -> ValidationReport:
    b = p.base
    rep = ValidationReport(subject="pivotal")
    rep.unchecked.append(QUADRATIC_CONDITION)
    for f in b.one_cells:
        adj = p.adjoint_choice.get(f)
        if adj is None:
            raise ValueError(f"missing adjoint data for 1-morphism {f!r}")
        if adj.f != f or not check_adjunction(b, adj).ok:
            raise ValueError(f"adjoint data for 1-morphism {f!r} does not verify")
    dd = double_right_dual(b, p.adjoint_choice)
    rep.extend(dd.report)
    for x in b.objects:
        t = p.theta.get(x)
        if t is None or not b.skeleton.has_morphism(t):
            raise StructureError(f"theta undefined or unresolved at {x!r}")
        if b.src1(t) != x or b.tgt1(t) != x:
            rep.add("theta-typing", (x, t))
        elif is_equivalence_1cell(b, t) is None:
            rep.add("theta-invertible", (x, t))
    if not rep.ok:
        return rep
    typed = True
    for f in b.one_cells:
        t = p.tau.get(f)
        if t is None or t not in set(b.two_cells):
            raise StructureError(f"tau undefined or unresolved at {f!r}")
        x, y = b.src1(f), b.tgt1(f)
        s_want = b.c1(dd.on1[f], p.theta[x])
        t_want = b.c1(p.theta[y], f)
        if b.src2(t) != s_want or b.tgt2(t) != t_want:
            rep.add("tau-typing", (f, t), f"tau_f should be {s_want} => {t_want}")
            typed = False
        elif b.vinverse(t) is None:
            rep.add("tau-invertible", (f, t))
    if not typed:
        return rep
    for a in b.two_cells:
        f, g = b.src2(a), b.tgt2(a)
        x, y = b.endpoints(a)
        lhs = b.vcomp(b.whisker(p.theta[y], a), p.tau[f])
        rhs = b.vcomp(p.tau[g], b.whisker(dd.on2[a], p.theta[x]))
        if lhs != rhs:
            rep.add("tau-naturality", (a,), f"{lhs} vs {rhs}")
    for x in b.objects:
        if x in dd.unit_comparison:
            want = b.whisker(dd.unit_comparison[x], p.theta[x])
            if p.tau[b.id1(x)] != want:
                rep.add("tau-identity", (x,), f"tau at identity is {p.tau[b.id1(x)]}, expected {want}")
    for (g, f), gf in b.skeleton.table.items():
        if (g, f) not in dd.comparison:
            continue
        x = b.src1(f)
        want = b.vcomp(b.whisker(p.tau[g], f), b.whisker(dd.on1[g], p.tau[f]),
                       b.whisker(dd.comparison[(g, f)], p.theta[x]))
        if p.tau[gf] != want:
            rep.add("tau-composition", (g, f))
    return rep


def transport_pivotal(p: Pivotal, v: BiInvolutive) -> Pivotal:
    """Move the trivialisation across dag2: ``tau_f -> dag2(tau_f)^-1``."""
    b = p.base
    return Pivotal(b, p.adjoint_choice, dict(p.theta), {f: b.vinverse(v.dag2[t]) for f, t in p.tau.items()})
