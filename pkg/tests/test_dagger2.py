import pytest
from hypothesis import given, settings, strategies as st

from daggerkit import dagger1 as d1
from daggerkit import dagger2 as d2
from daggerkit import examples
from daggerkit.dagger2 import BiInvolutive, CoherentDagger2Input, Pivotal
from daggerkit.fin2cat import check_adjunction, find_right_adjoints
from daggerkit.report import StructureError


def lines(g, m, with_zero=True):
    return examples.build_graded_lines_2cat(g, m, with_zero)


def replace(v, **parts):
    kw = {n: getattr(v, n) for n in ("dag2", "dag1_on1", "dag1_on2", "phi")}
    kw.update(parts)
    return BiInvolutive(v.base, **kw)


# -- bi-involutive structures ---------------------------------------------

def test_lines_z3_structure():
    v = lines("Z/3", 3)
    assert d2.validate_bi_involutive(v).ok
    assert v.dag1_on1 == {"0": "0", "1": "2", "2": "1"}
    assert v.dag2["1/z1"] == "1/z2" and v.dag2["1/0"] == "1/0"
    assert v.dag1_on2["1/z1"] == "2/z1"
    assert all(v.phi[f] == v.base.id2(f) for f in v.base.one_cells)


def test_terminal_with_identity_daggers():
    v = lines("trivial", 1, with_zero=False)
    b = v.base
    assert len(b.one_cells) == 1 and len(b.two_cells) == 1
    assert d2.validate_bi_involutive(v).ok


def test_identity_dag2_then_non_unitary_phi():
    v = lines("Z/3", 3)
    ident = replace(v, dag2={a: a for a in v.base.two_cells})
    assert d2.validate_bi_involutive(ident).ok
    bad = replace(ident, phi=dict(ident.phi, **{"1": "1/z1"}))
    rep = d2.validate_bi_involutive(bad)
    assert "phi-unitary" in rep.axioms()
    assert rep.first("phi-unitary").witness == ("1", "1/z1")


def test_sign_character_phi_is_valid():
    # phi_g = (-1)^g is a monoidal, unitary, dag1-stable choice on lines(Z/2, 2)
    v = lines("Z/2", 2)
    alt = replace(v, phi={"0": "0/z0", "1": "1/z1"})
    assert d2.validate_bi_involutive(alt).ok


def test_phi_not_monoidal():
    v = lines("Z/3", 3)
    bad = replace(v, phi=dict(v.phi, **{"1": "1/z1"}))
    assert {"phi-composition", "phi-cubed"} <= set(d2.validate_bi_involutive(bad).axioms())


def test_non_commuting_daggers():
    v = lines("Z/3", 3)
    d12 = dict(v.dag1_on2)
    d12["1/z1"], d12["1/z2"] = "2/z2", "2/z1"
    rep = d2.validate_bi_involutive(replace(v, dag1_on2=d12))
    assert rep.axioms()


def test_unresolved_dagger_is_structural():
    v = lines("Z/2", 2)
    with pytest.raises(StructureError):
        d2.validate_bi_involutive(replace(v, dag2=dict(v.dag2, **{"0/z1": "nope"})))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_single_corruption_detected_unless_equivalent(data):
    v = lines(data.draw(st.sampled_from(["Z/3", "S3"])), 3 if data.draw(st.booleans()) else 2)
    which = data.draw(st.sampled_from(["dag2", "dag1_on2"]))
    table = dict(getattr(v, which))
    k = data.draw(st.sampled_from(sorted(table)))
    new = data.draw(st.sampled_from([c for c in v.base.two_cells if c != table[k]]))
    table[k] = new
    # changing one 2-cell entry of an involution breaks involutivity
    assert not d2.validate_bi_involutive(replace(v, **{which: table})).ok


# -- partial daggers ------------------------------------------------------

def test_partial_top_of_full_structure():
    v = lines("S3", 2)
    assert d2.validate_partial_dagger(v.base, "top", v).ok


def test_partial_first_only():
    v = lines("Z/3", 2)
    data = {"dag1_on1": v.dag1_on1, "dag1_on2": v.dag1_on2, "phi": v.phi}
    assert d2.validate_partial_dagger(v.base, "first", data).ok


def test_partial_top_mistyped():
    v = lines("Z/2", 2)
    rep = d2.validate_partial_dagger(v.base, "top", {"dag2": dict(v.dag2, **{"0/z1": "1/z1"})})
    assert "dag2-typing" in rep.axioms()
    assert rep.first("dag2-typing").witness == ("0/z1", "1/z1")


def test_partial_which():
    with pytest.raises(ValueError):
        d2.validate_partial_dagger(lines("Z/2", 2).base, "middle", {})


# -- bridge and adjunctions -----------------------------------------------

@pytest.mark.parametrize("name", sorted(examples.bi_involutive_corpus()))
def test_hom_categories_are_strict_daggers(name, bi_corpus):
    for x, y, sd in d2.hom_strict_daggers(bi_corpus[name]):
        assert d1.validate_strict_dagger(sd, check_base=True).ok


@pytest.mark.parametrize("name", sorted(examples.bi_involutive_corpus()))
def test_dag1_turns_right_adjoints_into_left(name, bi_corpus):
    v = bi_corpus[name]
    for f in v.base.one_cells:
        for adj in find_right_adjoints(v.base, f):
            moved = d2.dag1_adjunction(v, adj)
            assert moved.f == v.dag1_on1[adj.fR] and moved.fR == v.dag1_on1[f]
            assert check_adjunction(v.base, moved).ok


# -- strictification ------------------------------------------------------

def test_group_delooping_strictifies_to_inverse_dagger():
    c = examples.group_delooping("Z/3")
    out = d2.strictify_bicategory(c)
    assert d2.validate_bi_involutive(out).ok
    assert out.dag2 == {"0": "0", "1": "2", "2": "1"}
    assert out.dag1_on1 == {"*": "*"}


def test_twisted_lines_untwist():
    out = d2.strictify_bicategory(examples.twisted_lines_input())
    plain = lines("S3", 2, with_zero=False)
    assert out.base == plain.base
    for part in ("dag2", "dag1_on1", "dag1_on2", "phi"):
        assert getattr(out, part) == getattr(plain, part), part


def test_mat_delooping_dag2_is_conjugate_transpose():
    d = examples.build_mat_category(2, 1)
    out = d2.strictify_bicategory(examples.mat_delooping(2))
    assert out.dag2 == d.dag
    assert d2.validate_bi_involutive(out).ok


def test_terminal_delooping_is_terminal():
    out = d2.strictify_bicategory(examples.terminal_delooping())
    b = out.base
    assert (len(b.objects), len(b.one_cells), len(b.two_cells)) == (1, 1, 1)


@pytest.mark.parametrize("name", sorted(examples.coherent_corpus()))
def test_strictified_invariants(name, coherent_corpus):
    c = coherent_corpus[name]
    out = d2.strictify_bicategory(c)
    assert d2.validate_bi_involutive(out).ok
    for a in out.base.two_cells:
        assert out.dag2[out.dag2[a]] == a
        assert out.dag2[out.dag1_on2[a]] == out.dag1_on2[out.dag2[a]]
    for f in out.base.one_cells:
        assert out.dag1_on1[out.dag1_on1[f]] == f
    for x in out.base.objects:
        for y in out.base.objects:
            assert out.base.hom(x, y) == c.base.hom(x, y)


def test_missing_object_flag():
    c = examples.group_delooping("Z/2")
    with pytest.raises(ValueError, match="missing flag: object '\\*'"):
        d2.strictify_bicategory(c, objects=[])


def test_missing_one_cell_flag():
    c = examples.group_delooping("Z/3")
    partial = CoherentDagger2Input(c.base, c.psi1, c.psi2, c.h1, c.h2, {})
    with pytest.raises(ValueError, match="missing flag: 1-morphism"):
        d2.strictify_bicategory(partial)


def test_derive_hf():
    for c in (examples.group_delooping("Z/3"), examples.mat_delooping(2), examples.terminal_delooping()):
        stripped = CoherentDagger2Input(c.base, c.psi1, c.psi2, c.h1, c.h2, {})
        assert d2.derive_hf(stripped) == c.hf
    c = examples.group_delooping("Z/2")
    with pytest.raises(ValueError, match="2 candidates"):
        d2.derive_hf(CoherentDagger2Input(c.base, c.psi1, c.psi2, c.h1, c.h2, {}))


def test_coherent_input_corruptions():
    c = examples.group_delooping("Z/3")
    rep = d2.validate_coherent_input(CoherentDagger2Input(c.base, c.psi1, c.psi2, c.h1, c.h2, {"*": "1"}))
    assert rep.axioms() == ["hf-fixed"]
    t = examples.twisted_lines_input()
    hf = dict(t.hf, **{"102": "102/z1"})
    rep = d2.validate_coherent_input(CoherentDagger2Input(t.base, t.psi1, t.psi2, t.h1, t.h2, hf))
    assert rep.axioms() == ["hf-composition"]
    with pytest.raises(ValueError, match="fails its checks"):
        d2.strictify_bicategory(CoherentDagger2Input(c.base, c.psi1, c.psi2, c.h1, c.h2, {"*": "1"}))


# -- pivotal structures ---------------------------------------------------

def identity_pivotal(b, theta=None):
    choice = examples.adjoint_choice(b)
    theta = theta or {x: b.id1(x) for x in b.objects}
    tau = {f: b.id2(b.c1(f, theta[b.src1(f)])) for f in b.one_cells}
    return Pivotal(b, choice, theta, tau)


def test_identity_pivotal_on_lines():
    rep = d2.validate_pivotal(identity_pivotal(lines("Z/3", 3).base))
    assert rep.ok
    assert rep.unchecked == [d2.QUADRATIC_CONDITION]


def test_non_central_theta_in_s3():
    b = lines("S3", 2).base
    rep = d2.validate_pivotal(identity_pivotal(b, {"*": "102"}))
    assert rep.axioms() == ["tau-typing"]
    # exactly the elements that do not commute with the transposition
    els, mult = examples.group_table("S3")
    movers = {f for f in els if mult[(f, "102")] != mult[("102", f)]}
    assert {v.witness[0] for v in rep.violations} == movers


@pytest.mark.parametrize("g,theta", [("Z/4", "1"), ("Z/4", "3"), ("Z2xZ2", None)])
def test_group_2cat_any_theta(g, theta):
    b = examples.group_2cat(g)
    theta = theta or b.one_cells[-1]
    assert d2.validate_pivotal(identity_pivotal(b, {"*": theta})).ok


def test_tau_character_and_transport():
    v = lines("Z/3", 3)
    b = v.base
    p = identity_pivotal(b)
    chi = Pivotal(b, p.adjoint_choice, p.theta, {f: f"{f}/z{f}" for f in b.one_cells})
    assert d2.validate_pivotal(chi).ok
    broken = Pivotal(b, p.adjoint_choice, p.theta, dict(chi.tau, **{"1": "1/z2"}))
    assert "tau-composition" in d2.validate_pivotal(broken).axioms()
    moved = d2.transport_pivotal(chi, v)
    assert moved.tau == {"0": "0/z0", "1": "1/z1", "2": "2/z2"}
    assert d2.validate_pivotal(moved).ok


def test_zero_tau_not_invertible():
    b = lines("Z/3", 3).base
    p = identity_pivotal(b)
    bad = Pivotal(b, p.adjoint_choice, p.theta, dict(p.tau, **{"1": "1/0"}))
    assert "tau-invertible" in d2.validate_pivotal(bad).axioms()


def test_pivotal_missing_adjoint():
    b = lines("Z/3", 3).base
    p = identity_pivotal(b)
    del p.adjoint_choice["1"]
    with pytest.raises(ValueError, match="'1'"):
        d2.validate_pivotal(p)


@pytest.mark.parametrize("name", sorted(examples.bi_involutive_corpus()))
def test_transport_preserves_validity(name, bi_corpus):
    v = bi_corpus[name]
    p = identity_pivotal(v.base)
    assert d2.validate_pivotal(d2.transport_pivotal(p, v)).ok
