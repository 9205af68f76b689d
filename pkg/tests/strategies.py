"""Hypothesis strategies and brute-force oracles shared by the tests."""

import itertools
import random

from hypothesis import strategies as st

from argq import kleene
from argq.frames import ArgFrame, Labelling
from argq.values import HALF, TRI_VALUES

NAMES = ["a", "b", "c", "d", "e"]


@st.composite
def frames(draw, max_nodes=4, names=NAMES):
    n = draw(st.integers(1, max_nodes))
    nodes = names[:n]
    pairs = [(x, y) for x in nodes for y in nodes]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return ArgFrame.build(nodes, chosen)


def formulas(atom_names=("p", "q", "r"), max_leaves=6):
    leaves = st.sampled_from([kleene.Atom(a) for a in atom_names] + [kleene.TOP, kleene.BOT])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(kleene.Not, sub),
            st.builds(kleene.And, sub, sub),
            st.builds(kleene.Or, sub, sub),
            st.builds(kleene.Imp, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def random_formula(rng, atom_names, depth):
    """Seeded formula of at most the given depth."""
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.05:
            return kleene.TOP
        if r < 0.1:
            return kleene.BOT
        return kleene.Atom(rng.choice(atom_names))
    kind = rng.choice(["not", "and", "or", "imp"])
    if kind == "not":
        return kleene.Not(random_formula(rng, atom_names, depth - 1))
    build = {"and": kleene.And, "or": kleene.Or, "imp": kleene.Imp}[kind]
    return build(random_formula(rng, atom_names, depth - 1), random_formula(rng, atom_names, depth - 1))


def brute_complete(frame):
    """Complete labellings straight from the definition, by enumeration."""
    names = frame.sorted_nodes
    out = []
    for combo in itertools.product(TRI_VALUES, repeat=len(names)):
        lam = dict(zip(names, combo))
        ok = True
        for x in names:
            atts = [lam[y] for y in frame.attackers[x]]
            if lam[x] == 1 and any(v != 0 for v in atts):
                ok = False
            elif lam[x] == 0 and not any(v == 1 for v in atts):
                ok = False
            elif lam[x] == HALF and (any(v == 1 for v in atts) or all(v == 0 for v in atts)):
                ok = False
            if not ok:
                break
        if ok:
            out.append(Labelling(lam))
    return sorted(out)


def all_frames(max_nodes):
    """Every attack relation on 1..max_nodes nodes."""
    for n in range(1, max_nodes + 1):
        nodes = ["x", "y", "z", "w"][:n]
        pairs = [(a, b) for a in nodes for b in nodes]
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            yield ArgFrame.build(nodes, [p for p, b in zip(pairs, bits) if b])


def seeded_rng(seed):
    return random.Random(seed)


ATTACKER_KINDS = ("in", "out", "und")


def attacker_patterns(max_attackers=2):
    """Every multiset of external attacker kinds up to the given size."""
    out = []
    for k in range(max_attackers + 1):
        out += list(itertools.combinations_with_replacement(ATTACKER_KINDS, k))
    return out


def formation_host(baf, pattern, top="TOP"):
    """A host network around a formation.

    Each interface atom ``q`` is paired with ``~q`` by a mutual attack, and
    one external attacker per entry of ``pattern`` hits the entry node: an
    ``in`` attacker is unattacked, an ``out`` one is attacked by an
    unattacked node and an ``und`` one attacks itself.
    """
    from argq.topnet import TopNet
    nodes = set(baf.nodes) | {top}
    attacks = set(baf.attacks)
    for q in sorted({n.lstrip("~") for n in baf.interface}):
        nodes |= {q, "~" + q}
        attacks |= {(q, "~" + q), ("~" + q, q)}
    for i, kind in enumerate(pattern):
        ext = f"ext{i}"
        nodes.add(ext)
        attacks.add((ext, baf.in_node))
        if kind == "out":
            nodes.add(ext + "h")
            attacks.add((ext + "h", ext))
        elif kind == "und":
            attacks.add((ext, ext))
    return TopNet(ArgFrame.build(nodes, attacks), top)


def forced_conjunction(n, force, selector, toxic_guard):
    """Conjunction formation with its entry attacked so that alpha takes ``force``."""
    from argq.baf import baf_conj
    f = baf_conj([f"a{i}" for i in range(1, n + 1)], prefix="c", selector=selector, toxic_guard=toxic_guard)
    extra = []
    if force == 1:
        extra = [("h", f.in_node)]
    elif force == HALF:
        extra = [("h", f.in_node), ("h", "h")]
    return f, f.topnet(extra, extra_nodes={"h"} if extra else ())
