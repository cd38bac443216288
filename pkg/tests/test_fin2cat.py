import pytest
from hypothesis import given, settings, strategies as st

from daggerkit import examples
from daggerkit.fin2cat import (Adjunction, Fin2Category, adjoint_comparison, check_adjunction, compose_adjunctions,
                               double_right_dual, find_left_adjoint, find_left_adjoints, find_right_adjoint,
                               find_right_adjoints, full_sub_2category, hom_category, is_equivalence_1cell,
                               locally_discrete, mate, trivial_adjunction, validate_2category)
from daggerkit.fincat import SearchBudget, validate_category
from daggerkit.report import SearchSpaceExceeded, StructureError


def lines(g, m, with_zero=True):
    return examples.build_graded_lines_2cat(g, m, with_zero).base


def with_horizontal(b, key, value):
    h = dict(b.horizontal_table)
    h[key] = value
    sk = b.skeleton
    return Fin2Category(b.objects, sk.morphism_triples(), sk.identities, sk.table, b.two_cell_triples(),
                        b.two_identities, b.vertical_table, h)


def test_terminal_and_lines_validate():
    assert validate_2category(lines("trivial", 1, with_zero=False)).ok
    assert validate_2category(lines("Z/2", 2)).ok
    assert validate_2category(lines("S3", 2)).ok
    assert validate_2category(examples.walking_arrow_2cat()).ok


def test_corrupted_interchange_witness():
    b = lines("Z/2", 2)
    rep = validate_2category(with_horizontal(b, ("0/z1", "0/z1"), "0/z1"))
    assert "interchange" in rep.axioms()
    a2, a1, b2, b1 = rep.first("interchange").witness
    lhs = b.hcomp(b.vcomp(a2, a1), b.vcomp(b2, b1))
    rhs = b.vcomp(b.hcomp(a2, b2), b.hcomp(a1, b1))
    assert lhs == rhs  # the uncorrupted table satisfies the law at the same quadruple


def test_mistyped_horizontal_entry():
    rep = validate_2category(with_horizontal(lines("Z/2", 2), ("0/z1", "0/z1"), "1/z0"))
    assert rep.axioms() == ["horizontal-typing"]


def test_unknown_cell_is_structural():
    b = lines("Z/2", 2)
    with pytest.raises(StructureError):
        with_horizontal(b, ("0/z1", "0/z1"), "9/z9")


def test_hom_categories():
    t = hom_category(lines("trivial", 1, with_zero=False), "*", "*")
    assert len(t.objects) == 1 and len(t.morphisms) == 1
    h = hom_category(lines("Z/2", 2, with_zero=False), "*", "*")
    assert h.objects == ("0", "1")
    assert [len(h.hom(x, x)) for x in h.objects] == [2, 2]
    assert [len(hom_category(lines("Z/2", 2), "*", "*").hom(x, x)) for x in ("0", "1")] == [3, 3]
    arrow = hom_category(examples.walking_arrow_2cat(), "a", "b")
    assert arrow.objects == ("f",) and len(arrow.morphisms) == 1
    for v in examples.bi_involutive_corpus().values():
        for x in v.base.objects:
            for y in v.base.objects:
                assert validate_category(hom_category(v.base, x, y)).ok


def test_identity_adjunction():
    b = lines("Z/3", 3)
    assert check_adjunction(b, trivial_adjunction(b, "*")).ok


def test_group_inverse_adjunction_and_scalar_defect():
    b = lines("Z/3", 3)
    assert check_adjunction(b, Adjunction("1", "2", "0/z0", "0/z0")).ok
    rep = check_adjunction(b, Adjunction("1", "2", "0/z0", "0/z1"))
    assert set(rep.axioms()) == {"zigzag-left", "zigzag-right"}
    assert "gives 1/z1" in rep.first("zigzag-left").detail


def test_mistyped_adjunction():
    b = lines("Z/3", 3)
    with pytest.raises(StructureError):
        check_adjunction(b, Adjunction("1", "1", "0/z0", "0/z0"))


def test_lines_adjoints_are_group_inverses():
    b = lines("Z/3", 2)
    els, mult = examples.group_table("Z/3")
    inv = examples.group_inverses(els, mult)
    for f in b.one_cells:
        adjs = find_right_adjoints(b, f)
        assert adjs and {a.fR for a in adjs} == {inv[f]}
        # eta and eps are mutually inverse unit scalars
        assert len(adjs) == 2


def test_walking_arrow_has_no_right_adjoint():
    w = examples.walking_arrow_2cat()
    assert find_right_adjoint(w, "f") is None
    assert find_left_adjoint(w, "f") is None
    assert find_right_adjoint(w, "1a").fR == "1a"


def test_adjoint_search_budget():
    with pytest.raises(SearchSpaceExceeded):
        find_right_adjoints(lines("Z/3", 3), "1", SearchBudget(2))


@pytest.mark.parametrize("name", sorted(examples.bi_involutive_corpus()))
def test_adjoints_unique_up_to_iso(name, bi_corpus):
    b = bi_corpus[name].base
    for f in b.one_cells:
        found = find_right_adjoints(b, f)
        for x in found:
            for y in found:
                c = adjoint_comparison(b, x, y)
                assert c is not None and b.vinverse(c) is not None
        if found:
            lefts = find_left_adjoints(b, found[0].fR)
            assert any(adjoint_comparison(b, found[0], Adjunction(a.f, a.fR, a.eta, a.eps)) is not None
                       for a in lefts if a.f == f)


def test_compose_adjunctions_verify():
    b = lines("S3", 2)
    choice = examples.adjoint_choice(b)
    for g in b.one_cells:
        for f in b.one_cells:
            assert check_adjunction(b, compose_adjunctions(b, choice[g], choice[f])).ok


def test_mate_of_identity_is_identity():
    b = lines("Z/4", 4, with_zero=False)
    a = find_right_adjoint(b, "1")
    assert mate(b, b.id2("1"), a, a) == b.id2(a.fR)
    with pytest.raises(ValueError):
        mate(b, b.id2("2"), a, a)


@pytest.mark.parametrize("b", [lines("Z/3", 3), lines("S3", 2), examples.group_2cat("S3"),
                               examples.group_2cat("Z/4")], ids=["lines(Z/3,3)", "lines(S3,2)", "S3", "Z/4"])
def test_double_right_dual_is_identity_on_1cells(b):
    dd = double_right_dual(b, examples.adjoint_choice(b))
    assert dd.on1 == {f: f for f in b.one_cells}
    assert dd.report.ok
    for x in b.objects:
        assert dd.on1[b.id1(x)] == b.id1(x)
    assert set(dd.comparison) == set(b.skeleton.table)


def test_double_right_dual_needs_total_choice():
    b = lines("Z/3", 3)
    choice = examples.adjoint_choice(b)
    del choice["2"]
    with pytest.raises(ValueError, match="'2'"):
        double_right_dual(b, choice)


def test_adjoint_choice_names_missing():
    with pytest.raises(ValueError, match="'f'"):
        examples.adjoint_choice(examples.walking_arrow_2cat())


def test_equivalence_1cells():
    b = lines("S3", 2)
    assert all(is_equivalence_1cell(b, f) is not None for f in b.one_cells)
    assert is_equivalence_1cell(examples.walking_arrow_2cat(), "f") is None


def test_full_sub_and_locally_discrete():
    w = locally_discrete(examples.walking_arrow_category())
    sub = full_sub_2category(w, ["a"])
    assert sub.objects == ("a",) and validate_2category(sub).ok


def test_equality_ignores_cell_order():
    b = lines("Z/2", 2)
    sk = b.skeleton
    shuffled = Fin2Category(b.objects, sk.morphism_triples(), sk.identities, sk.table,
                            b.two_cell_triples()[::-1], b.two_identities, b.vertical_table, b.horizontal_table)
    assert shuffled == b


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_interchange_holds_on_lines(data):
    b = lines(data.draw(st.sampled_from(["Z/2", "Z/3", "S3"])), data.draw(st.integers(1, 3)))
    f, g = (data.draw(st.sampled_from(b.one_cells)) for _ in range(2))
    a1, a2 = (data.draw(st.sampled_from(b.cells(f, f))) for _ in range(2))
    b1, b2 = (data.draw(st.sampled_from(b.cells(g, g))) for _ in range(2))
    assert b.hcomp(b.vcomp(a2, a1), b.vcomp(b2, b1)) == b.vcomp(b.hcomp(a2, b2), b.hcomp(a1, b1))
