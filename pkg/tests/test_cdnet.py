import itertools

import pytest
from hypothesis import given, strategies as st

from argq.cdnet import (CDNetwork, eliminate_joint_attacks, enumerate_cd_extensions,
                        is_cd_extension, joint_semantics, np_extensions, parse_cdnet,
                        rcd_expand, rcd_extensions, reduce_to_frame)
from argq.errors import ContractError, InputError, ParseError
from argq.frames import Labelling, complete_labellings, parse_frame
from argq.values import HALF

from conftest import read_data
from strategies import frames

MUTUAL = parse_cdnet(read_data("mutual_joint.cd"))
FORK = parse_cdnet(read_data("fork.cd"))


def test_mutual_joint_attack():
    assert enumerate_cd_extensions(MUTUAL) == ()
    assert rcd_extensions(MUTUAL) == (Labelling({"a": HALF, "b": HALF}),)
    assert np_extensions(MUTUAL) == (Labelling({"a": 0, "b": 1}), Labelling({"a": 1, "b": 0}))


def test_disjunctive_attack_on_self_attackers():
    assert enumerate_cd_extensions(FORK) == ()
    assert not is_cd_extension(FORK, Labelling({"x": 1, "a": HALF, "c": HALF}))
    assert rcd_extensions(FORK) == (Labelling({"x": 1, "a": HALF, "c": HALF}),)


def test_np_on_plain_disjunction():
    net = CDNetwork.build([({"w"}, {"a", "c"})])
    assert np_extensions(net) == (
        Labelling({"a": 0, "c": 1, "w": 1}),
        Labelling({"a": 1, "c": 0, "w": 1}),
    )


def test_rcd_expand():
    net = CDNetwork.build([({"x"}, {"a", "b"})])
    assert rcd_expand(net) == {(frozenset({"x", "b"}), "a"), (frozenset({"x", "a"}), "b")}


@given(frames(max_nodes=4))
def test_singleton_attacks_give_complete_labellings(frame):
    net = CDNetwork.build([({a}, {b}) for a, b in frame.attacks], nodes=frame.nodes)
    assert enumerate_cd_extensions(net) == complete_labellings(frame)


@st.composite
def joint_attacks(draw):
    nodes = ["a", "b", "c", "d"][: draw(st.integers(1, 4))]
    sources = [frozenset(s) for r in (1, 2) for s in itertools.combinations(nodes, r)]
    pairs = [(s, z) for s in sources for z in nodes]
    return nodes, draw(st.lists(st.sampled_from(pairs), unique=True, max_size=5))


@given(joint_attacks())
def test_fresh_elimination_matches_joint_semantics(case):
    nodes, attacks = case
    frame = eliminate_joint_attacks(attacks, nodes=nodes)
    got = tuple(sorted({l.restrict(nodes) for l in complete_labellings(frame)}))
    assert got == joint_semantics(nodes, attacks)


def test_fresh_elimination_puts_jointly_attacked_node_out():
    frame = parse_frame(read_data("joint_fresh.arg"))
    labs = complete_labellings(frame)
    assert len(labs) == 1 and labs[0]["g"] == 0 and labs[0]["a"] == labs[0]["b"] == 1


def test_reused_negation_admits_the_wrong_result():
    labs = complete_labellings(parse_frame(read_data("joint_reused.arg")))
    assert {l["g"] for l in labs} == {0, HALF, 1}


def test_elimination_names_and_clash():
    frame = eliminate_joint_attacks([({"a", "b"}, "c")])
    assert {"J1", "J1.1", "J1.2"} <= frame.nodes
    with pytest.raises(ContractError):
        eliminate_joint_attacks([({"a"}, "J1")])


def test_reduce_needs_single_targets():
    with pytest.raises(InputError):
        reduce_to_frame(FORK)
    frame = reduce_to_frame(CDNetwork.build([({"a", "b"}, {"c"})]))
    assert ("J1", "c") in frame.attacks


@pytest.mark.parametrize("text", ["jatt a -> b,c", "datt a,b -> c", "att a", "satt a,b", "bogus a"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_cdnet(text)
