import json
import subprocess
import sys

import pytest

from argq import bipolar, cdnet, frames, kleene, topnet
from argq.baf import baf_compose
from argq.cli import run
from argq.dot import dot_roundtrip, export_dot, parse_dot
from argq.errors import ParseError

from conftest import DATA, read_data


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def call_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_frame_extensions(capsys):
    data = call_json(capsys, "frame", "ext", DATA / "twocycle.arg")
    assert len(data["extensions"]) == 3
    data = call_json(capsys, "frame", "ext", DATA / "chain.arg", "--grounded")
    assert data["extensions"] == [{"x": 1, "y": 0, "z": 1}]


def test_text_output(capsys):
    code, out, _ = call(capsys, "frame", "ext", DATA / "chain.arg", "--grounded")
    assert code == 0
    assert out.splitlines() == ["grounded: 1", "  {x=1, y=0, z=1}"]


def test_cli_matches_library(capsys):
    net = topnet.parse_topnet(read_data("toxic_chains.top"))
    for option in ("i", "ii", "iii", "iv"):
        for policy in ("strict", "lenient"):
            data = call_json(capsys, "topnet", "ext", DATA / "toxic_chains.top",
                             "--option", option, "--policy", policy)
            want = topnet.extensions(net, option, topnet.policy_named(policy))
            assert data["extensions"] == [{k: (0.5 if v == 0.5 else v) for k, v in l.items()}
                                          for l in want]


def test_cd_commands(capsys):
    path = DATA / "mutual_joint.cd"
    assert call_json(capsys, "cd", "ext", path)["extensions"] == []
    assert call_json(capsys, "cd", "ext", path, "--rcd")["extensions"] == [{"a": 0.5, "b": 0.5}]
    assert len(call_json(capsys, "cd", "np", path)["extensions"]) == 2
    frame = call_json(capsys, "cd", "reduce", DATA / "fork.cd", "--rcd")["frame"]
    assert frames.parse_frame(frame, allow_reserved=True) == cdnet.eliminate_joint_attacks(
        cdnet.rcd_expand(cdnet.parse_cdnet(read_data("fork.cd"))),
        nodes={"x", "a", "c"})


def test_reduce_needs_single_targets(capsys):
    code, _, err = call(capsys, "cd", "reduce", DATA / "fork.cd")
    assert code == 2 and "input error" in err


def test_baf_build(capsys):
    data = call_json(capsys, "baf", "build", "p & q")
    assert data["frame"].startswith("# formula p ∧ q")
    assert data["dot"] == export_dot(baf_compose(kleene.parse_formula("p & q")).baf, name="p ∧ q")


def test_instantiation_routes(capsys):
    path = DATA / "loop_instantiated.inst"
    want = [{"x": 0.5, "y": 0.5}, {"x": 1, "y": 0}]
    for route in ("oracle", "pipeline", "equational"):
        assert call_json(capsys, "inst", route, path)["extensions"] == want
    assert len(call_json(capsys, "inst", "oracle", path)["valuations"]) == 3


def test_nonempty_flag_is_monadic_only(capsys):
    code, _, _ = call(capsys, "inst", "oracle", DATA / "loop_instantiated.inst", "--nonempty")
    assert code == 2


def test_normal_form_commands(capsys):
    data = call_json(capsys, "mpl", "nf", "E x. P1(x)")
    assert data["normal_form"] == [{"types": [[1]]}, {"types": [[0], [1]]}]
    data = call_json(capsys, "s5", "nf", "<> p1")
    assert len(data["normal_form"]) == 3


def test_defeasible_commands(capsys):
    path = DATA / "joint_strict_rule.thy"
    ground = call_json(capsys, "defeasible", "ground", path)
    assert set(ground["in"]) == {"TOP", "a", "b", "c", "d", "e", "f", "g"}
    assert ground["rejected"] == [["g", 0, 2, "attacked by z[1]"]]
    compiled = call_json(capsys, "defeasible", "compile", path)
    assert compiled["index"]["z[1]"] == [1, 2]
    ext = call_json(capsys, "defeasible", "ext", DATA / "married_bachelor.thy")
    assert ext["extensions"] == [] and ext["illegitimate"] == ["hw"]


def test_exit_codes(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "bad.arg"
    bad.write_text("att x\n")
    assert call(capsys, "frame", "ext", bad)[0] == 2
    assert call(capsys, "frame", "ext", tmp_path / "missing.arg")[0] == 2
    assert call(capsys, "frame", "nope")[0] == 2
    monkeypatch.setenv("ARGQ_LIMITS", "predicates=1")
    assert call(capsys, "mpl", "nf", "E x. P2(x)")[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "argq", "frame", "ext", str(DATA / "chain.arg"), "--grounded"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "{x=1, y=0, z=1}" in proc.stdout


# --- DOT ---------------------------------------------------------------------------------

def test_dot_is_deterministic_and_round_trips(capsys):
    for name in ("twocycle.arg", "toxic_chains.top", "fork.cd", "joint_strict_rule.thy"):
        first = call_json(capsys, "export", "dot", DATA / name)["dot"]
        second = call_json(capsys, "export", "dot", DATA / name)["dot"]
        assert first == second
        assert dot_roundtrip(first) == first


def test_dashed_edges_mark_defeasible_attacks():
    six = bipolar.compile_theory(bipolar.parse_theory(read_data("joint_strict_rule.thy")))
    _, nodes, edges, top = parse_dot(export_dot(six))
    dashed = {(a, b) for a, b, style in edges if style == "dashed"}
    assert dashed == set(six.defeasible_attacks)
    assert top == "TOP" and nodes == set(six.nodes)
    strict_only = bipolar.compile_theory(bipolar.parse_theory("fact: p\nstrict: p -> q"))
    assert "dashed" not in export_dot(strict_only)


def test_dot_junctions_for_set_attacks():
    _, nodes, edges, _ = parse_dot(export_dot(cdnet.parse_cdnet(read_data("mutual_joint.cd"))))
    assert "#1" in nodes
    assert {("a", "#1", "solid"), ("#1", "b", "solid")} <= edges


def test_dot_quotes_names():
    frame = frames.ArgFrame.build(["x"], [])
    text = export_dot(frame, name='say "hi"')
    assert parse_dot(text)[0] == 'say "hi"'


def test_dot_parse_errors():
    with pytest.raises(ParseError):
        parse_dot("")
    with pytest.raises(ParseError):
        parse_dot('digraph "G" {\n  x -> y;\n}')
