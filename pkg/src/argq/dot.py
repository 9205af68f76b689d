"""Graphviz DOT text for frames, truth-node networks, formations and bipolar networks."""

import re

from .baf import BAF
from .bipolar import DEFEASIBLE, BipolarNet
from .cdnet import CDNetwork
from .errors import InputError, ParseError
from .frames import ArgFrame
from .topnet import TopNet


def _quote(name):
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _render(name, nodes, edges, top=None):
    lines = [f"digraph {_quote(name)} {{"]
    for n in sorted(nodes):
        shape = "doublecircle" if n == top else "circle"
        lines.append(f"  {_quote(n)} [shape={shape}];")
    for a, b, style in sorted(edges):
        lines.append(f"  {_quote(a)} -> {_quote(b)} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _hyperedges(net):
    """Auxiliary junction nodes for set-to-set attacks."""
    nodes, edges = set(net.nodes), set()
    for k, (xs, ys) in enumerate(net.sorted_attacks(), 1):
        if len(xs) == 1 and len(ys) == 1:
            edges.add((next(iter(xs)), next(iter(ys)), "solid"))
            continue
        hub = f"#{k}"
        nodes.add(hub)
        edges |= {(x, hub, "solid") for x in xs}
        edges |= {(hub, y, "solid") for y in ys}
    return nodes, edges


def export_dot(obj, name="G"):
    """DOT text with strict attacks solid, defeasible attacks dashed and the truth node double-circled.

    Nodes and edges come out sorted, so the text is the same on every run.
    Set-to-set attacks are drawn through junction nodes named ``#k``.
    """
    top = None
    if isinstance(obj, BipolarNet):
        nodes = obj.nodes
        edges = {(a, b, "dashed" if kind == DEFEASIBLE else "solid") for a, b, kind in obj.edges()}
        top = obj.top
    elif isinstance(obj, TopNet):
        nodes, edges, top = obj.frame.nodes, {(a, b, "solid") for a, b in obj.frame.attacks}, obj.top
    elif isinstance(obj, BAF):
        frame = obj.frame()
        nodes, edges, top = frame.nodes, {(a, b, "solid") for a, b in frame.attacks}, obj.top
    elif isinstance(obj, ArgFrame):
        nodes, edges = obj.nodes, {(a, b, "solid") for a, b in obj.attacks}
    elif isinstance(obj, CDNetwork):
        nodes, edges = _hyperedges(obj)
    else:
        raise InputError(f"cannot draw a {type(obj).__name__}")
    return _render(name, nodes, edges, top)


_STR = r'"((?:[^"\\]|\\.)*)"'
_HEAD_RE = re.compile(r"^digraph " + _STR + r" \{$")
_NODE_RE = re.compile(r"^" + _STR + r" \[shape=(circle|doublecircle)\];$")
_EDGE_RE = re.compile(r"^" + _STR + r" -> " + _STR + r" \[style=(solid|dashed)\];$")


def _unquote(text):
    return re.sub(r"\\(.)", r"\1", text)


def parse_dot(text):
    """Read back the output of ``export_dot``.

    Returns ``(name, nodes, edges, top)`` with edges as ``(a, b, style)``.
    Only the subset of DOT written by this module is accepted.
    """
    lines = [l.strip() for l in text.strip().splitlines()]
    if not lines:
        raise ParseError("empty DOT text")
    head = _HEAD_RE.match(lines[0])
    if not head or lines[-1] != "}":
        raise ParseError("expected 'digraph \"...\" { ... }'")
    nodes, edges, top = set(), set(), None
    for lineno, line in enumerate(lines[1:-1], 2):
        m = _EDGE_RE.match(line)
        if m:
            edges.add((_unquote(m.group(1)), _unquote(m.group(2)), m.group(3)))
            continue
        m = _NODE_RE.match(line)
        if not m:
            raise ParseError(f"cannot read {line!r}", lineno)
        node = _unquote(m.group(1))
        nodes.add(node)
        if m.group(2) == "doublecircle":
            top = node
    return _unquote(head.group(1)), nodes, edges, top


def dot_roundtrip(text):
    name, nodes, edges, top = parse_dot(text)
    return _render(name, nodes, edges, top)
