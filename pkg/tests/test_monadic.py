import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from argq import kleene
from argq.errors import InputError, ParseError, ResourceLimitError
from argq.monadic import (Box, Diamond, Exists, FiniteModel, Forall, MAnd, MImp, MNot, MOr, MTop,
                          Pred, all_type_sets, eval_model, eval_s5, normal_form,
                          normal_form_formula, normal_form_with_constants, parse_monadic,
                          propositionalize, quotient, render, s5_normal_form, to_propositional,
                          type_atom)


def all_models(n, max_size, constants=()):
    """Every model over domain 0..k-1 for k up to max_size, constants mapped every way."""
    for k in range(1, max_size + 1):
        domain = tuple(range(k))
        subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(domain, r)]
        for exts in itertools.product(subsets, repeat=n):
            for choice in itertools.product(domain, repeat=len(constants)):
                yield FiniteModel(domain, exts, dict(zip(constants, choice)))


def bodies(n, var):
    leaves = st.sampled_from([Pred(i, var) for i in range(1, n + 1)])
    return st.recursive(leaves, lambda s: st.one_of(
        st.builds(MNot, s), st.builds(MAnd, s, s), st.builds(MOr, s, s), st.builds(MImp, s, s)),
        max_leaves=3)


def sentences(n=2):
    quantified = st.one_of(st.builds(Exists, st.just("x"), bodies(n, "x")),
                           st.builds(Forall, st.just("x"), bodies(n, "x")))
    return st.recursive(quantified, lambda s: st.one_of(
        st.builds(MNot, s), st.builds(MAnd, s, s), st.builds(MOr, s, s)), max_leaves=3)


def s5_formulas(n=1):
    leaves = st.sampled_from([Pred(i, "") for i in range(1, n + 1)] + [MTop()])
    return st.recursive(leaves, lambda s: st.one_of(
        st.builds(MNot, s), st.builds(MAnd, s, s), st.builds(MOr, s, s),
        st.builds(Box, s), st.builds(Diamond, s)), max_leaves=5)


def classical(phi, v):
    return kleene.eval_formula(phi, v) == 1


# --- quotients ---------------------------------------------------------------

def test_quotient_single_type():
    m = FiniteModel(("a", "b"), [{"a", "b"}])
    assert len(quotient(m).domain) == 1


def test_quotient_two_types():
    m = FiniteModel(("a", "b", "c"), [{"a"}])
    assert len(quotient(m).domain) == 2


@given(sentences(2))
def test_quotient_preserves_truth(phi):
    for m in all_models(2, 3):
        q = quotient(m)
        assert len(q.domain) <= 4
        assert eval_model(m, phi) == eval_model(q, phi)
        assert quotient(q).types() == q.types()


def test_model_validation():
    with pytest.raises(InputError):
        FiniteModel((), [])
    with pytest.raises(InputError):
        FiniteModel(("a",), [{"b"}])


# --- normal forms -------------------------------------------------------------

def test_normal_form_of_existential():
    assert normal_form(parse_monadic("E x. P1(x)"), 1) == [frozenset({(1,)}), frozenset({(0,), (1,)})]


def test_normal_form_of_truth_is_every_type_set():
    assert len(normal_form(MTop(), 1)) == 3


@pytest.mark.parametrize("n", [1, 2])
@given(data=st.data())
def test_normal_form_is_equivalent_on_small_models(n, data):
    phi = data.draw(sentences(n))
    nf = normal_form_formula(normal_form(phi, n), n)
    for m in all_models(n, 2 ** n):
        assert eval_model(m, phi) == eval_model(m, nf)


def test_free_variables_are_rejected():
    with pytest.raises(InputError):
        normal_form(parse_monadic("P1(d)"))


def test_constant_normal_form():
    pairs = normal_form_with_constants(parse_monadic("P1(d)"), ["d"])
    assert pairs == [(frozenset({(1,)}), ((1,),)), (frozenset({(0,), (1,)}), ((1,),))]


def test_existential_against_constant():
    some_other = parse_monadic("E x. P1(x) & ~P1(d)")
    only_constant = parse_monadic("P1(d) & ~E x. P1(x)")
    assert normal_form_with_constants(some_other, ["d"])
    assert normal_form_with_constants(only_constant, ["d"]) == []


@given(bodies(1, "x"), st.sampled_from(["E", "A"]))
def test_constant_normal_form_is_equivalent(body, q):
    quant = Exists("x", body) if q == "E" else Forall("x", body)
    phi = MAnd(quant, MOr(Pred(1, "d"), MNot(Pred(1, "d"))))
    prop = to_propositional(phi, 1, ["d"])
    for m in all_models(1, 2, ("d",)):
        v = {type_atom(t): int(t in m.types()) for t in [(0,), (1,)]}
        v["P1(d)"] = int(m.constant_map["d"] in m.extensions[0])
        assert eval_model(m, phi) == classical(prop, v)


# --- propositional form ---------------------------------------------------------

def test_propositional_existential_is_classically_equivalent():
    prop = propositionalize(normal_form(parse_monadic("E x. P1(x)"), 1), 1)
    expected = kleene.parse_formula("q_1 | (q_0 & q_1)")
    assert kleene.atoms(prop) <= {"q_0", "q_1"}
    for q0, q1 in itertools.product((0, 1), repeat=2):
        v = {"q_0": q0, "q_1": q1}
        assert classical(prop, v) == classical(expected, v)


def test_single_type_set_formula():
    prop = propositionalize([frozenset({(1,)})], 1)
    assert prop == kleene.And(kleene.Not(kleene.Atom("q_0")), kleene.Atom("q_1"))


@given(sentences(2))
def test_propositional_atoms_are_type_atoms(phi):
    prop = to_propositional(phi, 2)
    assert kleene.atoms(prop) <= {"q_00", "q_01", "q_10", "q_11"}


# --- S5 -----------------------------------------------------------------------------

def test_s5_possibility():
    p = Pred(1, "")
    assert s5_normal_form(Diamond(p), 1) == [
        ((1,), frozenset({(1,)})), ((0,), frozenset({(0,), (1,)})), ((1,), frozenset({(0,), (1,)}))]


def test_s5_actual_letter():
    assert all(eps == (1,) for eps, _ in s5_normal_form(Pred(1, ""), 1))


def test_s5_box_is_dual_of_diamond():
    p = Pred(1, "")
    box, dual = Box(p), MNot(Diamond(MNot(p)))
    for gamma in all_type_sets(1):
        for eps in gamma:
            assert eval_s5(box, gamma, eps) == eval_s5(dual, gamma, eps)


@given(s5_formulas(2))
def test_s5_normal_form_matches_kripke(phi):
    nf = set(s5_normal_form(phi, 2))
    total = 0
    for gamma in all_type_sets(2):
        total += len(gamma)
        for eps in gamma:
            assert ((eps, gamma) in nf) == eval_s5(phi, gamma, eps)
    assert len(nf) <= total


# --- syntax -----------------------------------------------------------------------------

def test_parse_and_render():
    phi = parse_monadic("E x. (P1(x) | P2(x)) -> A y. ~P1(y)")
    assert isinstance(phi, MImp)
    assert render(phi) == "∃x(P1(x) ∨ P2(x)) → ∀y¬P1(y)"
    assert parse_monadic("[] p1 & <> ~p2") == MAnd(Box(Pred(1, "")), Diamond(MNot(Pred(2, ""))))


@pytest.mark.parametrize("text", ["", "P1(x) &", "(P1(x)", "P1(x))", "E x P1(x)", "P(x)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_monadic(text)


def test_predicate_limit():
    with pytest.raises(ResourceLimitError):
        normal_form(MTop(), 5)
