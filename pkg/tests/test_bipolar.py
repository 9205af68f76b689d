import pytest
from hypothesis import given
from hypothesis import strategies as st

from argq.bipolar import (ILLEGITIMATE, INDIFFERENT, STRICT, STRONGER, UNCLASSIFIED,
                          WEAKER, BipolarNet, DefeasibleTheory, DIndex, Rule, case_value,
                          cg_labellings, compare_indices, compile_theory, d_index, d_indices,
                          d_table, format_net, ground_labelling, is_cg_labelling, negate,
                          normalize_literal, pair_orders, parse_theory, priority)
from argq.errors import InputError, ParseError, ResourceLimitError
from argq.topnet import TOP
from argq.values import HALF

from conftest import read_data

SIX = compile_theory(parse_theory(read_data("joint_strict_rule.thy")))
MARRIED = compile_theory(parse_theory(read_data("married_bachelor.thy")))


def test_literal_helpers():
    assert negate("a") == "~a" and negate("~a") == "a"
    assert normalize_literal("~~~a") == "~a"
    assert normalize_literal(" b ") == "b"


def test_compiled_structure():
    assert SIX.aux == {"z[1]"}
    assert ("TOP", "~a") in SIX.strict_attacks
    assert ("a", "~b") in SIX.defeasible_attacks
    assert ("z[1]", "g") in SIX.strict_attacks
    for lit in ("~b", "~c", "~e", "~f"):
        assert (lit, "z[1]") in SIX.strict_attacks
    for x in SIX.pairs():
        assert SIX.kind(x, negate(x)) == STRICT and SIX.kind(negate(x), x) == STRICT


def test_strict_edge_subsumes_defeasible_one():
    net = compile_theory(parse_theory("fact: p\ndfact: p"))
    assert net.kind(TOP, "~p") == STRICT
    assert not net.defeasible_attacks


def test_empty_theory_is_just_truth():
    net = compile_theory(DefeasibleTheory((), ()))
    assert net.nodes == {TOP}
    assert ground_labelling(net).members() == {TOP}


def test_ground_labelling_of_joint_rule_example():
    result = ground_labelling(SIX)
    assert result.members() == {TOP, "a", "b", "c", "d", "e", "f", "g"}
    assert {n: result.index[n] for n in "abcdefg"} == {
        "a": 0, "d": 0, "g": 0, "b": 1, "e": 1, "c": 2, "f": 2}
    assert [(s.node, s.value, s.d) for s in result.rejected] == [("g", 0, 2)]


def test_lower_index_wins():
    rejected = ground_labelling(SIX).rejected[0]
    assert compare_indices(DIndex(0, 1), DIndex(rejected.d, 1)) == STRONGER


def test_tie_makes_pair_undecided():
    result = ground_labelling(MARRIED)
    assert result.labelling["hw"] == HALF and result.labelling["~hw"] == HALF
    assert [s.node for s in result.ties] == ["~hw"]
    assert result.members() == {TOP, "wr", "go", "m", "b"}


def test_case_table_labellings():
    labs = cg_labellings(SIX, project=True)
    assert len(labs) == 1
    assert all(labs[0][x] == 1 for x in "abcdefg")
    report = {}
    assert cg_labellings(MARRIED, report=report) == ()
    assert report[ILLEGITIMATE] == ["hw"]


def test_index_pairs():
    assert d_index(SIX, "z[1]") == DIndex(1, 2)
    assert d_index(SIX, "c") == DIndex(2, 1)
    assert d_index(MARRIED, "hw") == d_index(MARRIED, "~hw") == DIndex(1, 2)
    assert set(pair_orders(SIX).values()) == {INDIFFERENT}
    assert priority(SIX, "a", "c") == STRONGER


def test_index_undefined_when_unreachable():
    net = BipolarNet({TOP, "p", "~p"}, {("p", "~p"), ("~p", "p")}, set())
    assert d_index(net, "p") is None
    with pytest.raises(InputError):
        compare_indices(None, DIndex(0, 1))
    assert pair_orders(net) == {"p": None}


@pytest.mark.parametrize("left,right,expected", [
    ((0, 1), (2, 1), STRONGER),
    ((1, 3), (1, 1), STRONGER),
    ((1, 2), (1, 2), INDIFFERENT),
    ((2, 5), (1, 1), WEAKER),
])
def test_compare_indices(left, right, expected):
    assert compare_indices(DIndex(*left), DIndex(*right)) == expected


def path_net():
    strict = {(TOP, "a"), ("a", "b"), ("b", "a"), ("a", "c"), (TOP, "d"), ("d", "c"),
              (TOP, "e"), ("e", "c"), (TOP, "c")}
    return BipolarNet({TOP, "a", "b", "c", "d", "e"}, strict, set())


def test_path_length_table():
    assert d_table(path_net(), "c", max_visits=7) == {
        2: 1, 3: 3, 5: 1, 7: 1, 9: 1, 11: 1, 13: 1, 15: 1}


def test_path_length_table_default_cap_is_node_count():
    table = d_table(path_net(), "c")
    assert max(table) == 13


def test_path_limit(monkeypatch):
    monkeypatch.setenv("ARGQ_LIMITS", "paths=3")
    with pytest.raises(ResourceLimitError):
        d_table(path_net(), "c", max_visits=7)


def test_case_value_rows():
    none = {"a": [], "b": [], "c": [], "d": []}
    assert case_value({**none, "a": [1], "c": [1]}, INDIFFERENT) == ILLEGITIMATE
    assert case_value({**none, "a": [1]}, None) == 1
    assert case_value({**none, "c": [HALF]}, None) == HALF
    assert case_value({**none, "b": [1], "d": [1]}, STRONGER) == 0
    assert case_value({**none, "b": [1], "d": [1]}, WEAKER) == 1
    assert case_value({**none, "b": [1], "d": [1]}, INDIFFERENT) == HALF
    assert case_value({**none, "b": [1], "d": [1]}, None) == UNCLASSIFIED


def test_network_validation():
    with pytest.raises(InputError):
        BipolarNet({TOP, "p"}, {("p", TOP)}, set())
    with pytest.raises(InputError):
        BipolarNet({TOP, "p"}, {(TOP, "p")}, {(TOP, "p")})
    with pytest.raises(InputError):
        BipolarNet({"p"}, set(), set())


def test_rule_tuples_and_format():
    theory = DefeasibleTheory([((), "p")], [(("p",), "q")])
    net = compile_theory(theory)
    text = format_net(net)
    assert text.startswith("top TOP\n")
    assert "att TOP ~p" in text and "datt p ~q" in text
    assert isinstance(theory.rules[0], Rule)


@pytest.mark.parametrize("text", [
    "fact a", "fact: a, b", "strict: a => b", "defeasible: a -> b",
    "strict: a -> b, c", "opinion: a", "fact: TOP",
])
def test_theory_parse_errors(text):
    with pytest.raises(ParseError):
        parse_theory(text)


LITERALS = ["p", "~p", "q", "~q", "r", "~r"]


@st.composite
def theories(draw):
    def rules(max_size):
        return draw(st.lists(st.tuples(
            st.lists(st.sampled_from(LITERALS), max_size=2, unique=True),
            st.sampled_from(LITERALS)), max_size=max_size))
    strict = [(tuple(b), h) for b, h in rules(3) if h not in b and negate(h) not in b]
    defeasible = [(tuple(b), h) for b, h in rules(4) if h not in b and negate(h) not in b]
    return DefeasibleTheory(strict, defeasible)


@given(theories())
def test_ground_pairs_sum_to_one(theory):
    net = compile_theory(theory)
    lam = ground_labelling(net, project=False).labelling
    assert lam[TOP] == 1
    for x in net.pairs():
        assert lam[x] + lam[negate(x)] == 1


@given(theories())
def test_case_table_output_is_checked(theory):
    net = compile_theory(theory)
    orders = pair_orders(net)
    for lam in cg_labellings(net):
        assert is_cg_labelling(net, lam, orders)


@given(theories())
def test_indices_follow_reachability(theory):
    net = compile_theory(theory)
    for n, idx in d_indices(net).items():
        if idx is not None:
            assert idx.d2 >= 1
            assert sum(d_table(net, n, max_visits=1).values()) >= idx.d2
