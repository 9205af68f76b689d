"""Boolean attack formations.

A formation is a small network with an entry node ``in``, an exit node
``out`` and interface atoms.  Embedded in a larger network it behaves like
a node whose value is a formula of the interface: ``out`` carries the value
of the formula and ``in``, when attacked, forces the interface to make the
formula false.

Auxiliary nodes are named ``<prefix>.<role>`` or ``<prefix>.<role>[i]``.
Names containing a dot cannot come from user input, so auxiliary nodes
never collide with host nodes.
"""

import hashlib
from dataclasses import dataclass

from . import kleene
from .errors import ContractError, InputError
from .frames import ArgFrame
from .topnet import TOP, TopNet


def negation_node(atom):
    """Host node standing for the negation of an instantiation atom."""
    return "~" + atom


def formula_prefix(phi, salt=""):
    digest = hashlib.sha1((salt + "|" + kleene.render(phi)).encode()).hexdigest()
    return digest[:8]


@dataclass(frozen=True)
class BAF:
    """A formation: auxiliary nodes, interface atoms and internal attacks.

    ``formula`` is read over the interface node names, so a negative
    literal wired to a host negation node appears as that node's atom.
    ``top`` names the truth node the formation attacks, if any; it is not
    an auxiliary node because embeddings share a single truth node.
    """

    in_node: str
    out_node: str
    interface: tuple
    aux_nodes: frozenset
    attacks: frozenset
    formula: kleene.Formula
    top: str = None

    def __post_init__(self):
        object.__setattr__(self, "interface", tuple(self.interface))
        object.__setattr__(self, "aux_nodes", frozenset(self.aux_nodes))
        object.__setattr__(self, "attacks", frozenset(self.attacks))

    @property
    def nodes(self):
        extra = {self.top} if self.top else set()
        return self.aux_nodes | set(self.interface) | {self.in_node, self.out_node} | extra

    def frame(self):
        return ArgFrame.build(self.nodes, self.attacks)

    def topnet(self, extra_attacks=(), extra_nodes=()):
        frame = ArgFrame.build(self.nodes | {self.top or TOP} | set(extra_nodes),
                               set(self.attacks) | set(extra_attacks))
        return TopNet(frame, self.top or TOP)


def _name(prefix, role, i=None):
    return f"{prefix}.{role}" if i is None else f"{prefix}.{role}[{i}]"


def baf_atom(atom, prefix=None):
    """Chain in -> x -> atom -> y -> out."""
    prefix = prefix or formula_prefix(kleene.Atom(atom))
    n_in, x, y, out = (_name(prefix, r) for r in ("in", "x", "y", "out"))
    attacks = {(n_in, x), (x, atom), (atom, y), (y, out)}
    return BAF(n_in, out, (atom,), {n_in, x, y, out}, attacks, kleene.Atom(atom))


def baf_neg_literal(atom, prefix=None):
    """Chain in -> atom -> out, whose exit carries the negation of the atom."""
    prefix = prefix or formula_prefix(kleene.Not(kleene.Atom(atom)))
    n_in, out = _name(prefix, "in"), _name(prefix, "out")
    return BAF(n_in, out, (atom,), {n_in, out}, {(n_in, atom), (atom, out)},
               kleene.Not(kleene.Atom(atom)))


def baf_conj(interface, prefix=None, selector=False, toxic_guard=True, top=TOP, in_node=None):
    """Formation for the conjunction of the interface atoms.

    The entry node attacks ``alpha``; ``alpha`` in makes some interface atom
    out, ``alpha`` out leaves the interface free and ``w`` (the exit) then
    carries the minimum of the interface.  With ``toxic_guard`` the node
    ``e`` attacks the truth node, so an undecided ``alpha`` is toxic.

    With ``selector`` (and at least two atoms) a clique of selector nodes
    picks the single atom that ``alpha`` in pushes out; otherwise every atom
    is pushed out.  The guard node ``t`` makes the all-undecided selector
    toxic when ``toxic_guard`` is on.

    ``in_node`` lets several conjunctions share one entry node.
    """
    interface = tuple(interface)
    if not interface:
        raise InputError("a conjunction needs at least one atom")
    if len(set(interface)) != len(interface):
        raise InputError("conjunction atoms must be distinct")
    phi = kleene.conj(kleene.Atom(a) for a in interface)
    prefix = prefix or formula_prefix(phi)
    r = lambda role, i=None: _name(prefix, role, i)  # noqa: E731
    alpha, abar, abb = r("alpha"), r("alphabar"), r("alphabarbar")
    v, x, xbar, e, u, w = r("v"), r("x"), r("xbar"), r("e"), r("u"), r("w")
    own_in = in_node is None
    n_in = r("in") if own_in else in_node
    aux = {alpha, abar, abb, v, x, xbar, e, u, w}
    if own_in:
        aux.add(n_in)
    attacks = {
        (n_in, alpha), (alpha, abar), (abar, abb),
        (abb, v), (abb, x), (abar, v), (abar, xbar),
        (x, xbar), (xbar, x), (x, e), (xbar, e),
        (xbar, u), (v, u),
    }
    if toxic_guard:
        attacks.add((e, top))
    for i, a in enumerate(interface, 1):
        na, ap, b, bb = r("abar", i), r("aprime", i), r("b", i), r("bbar", i)
        aux |= {na, ap, b, bb}
        attacks |= {(u, na), (na, a), (a, ap), (ap, b), (b, bb), (bb, a), (ap, w), (abar, bb)}
    if selector and len(interface) >= 2:
        t = r("t")
        aux.add(t)
        attacks.add((abar, t))
        if toxic_guard:
            attacks.add((t, top))
        sigmas = [r("sigma", i) for i in range(1, len(interface) + 1)]
        for i, s in enumerate(sigmas, 1):
            hat = r("sigmahat", i)
            aux |= {s, hat}
            attacks |= {(s, hat), (hat, r("abar", i)), (s, t)}
            attacks |= {(s, o) for o in sigmas if o != s}
    return BAF(n_in, w, interface, aux, attacks, phi, top if toxic_guard else None)


@dataclass(frozen=True)
class Composite:
    """A formation for a whole formula together with its parts."""

    baf: BAF
    dnf: kleene.Dnf
    parts: tuple
    kind: str


def literal_node(lit):
    return lit.atom if lit.positive else negation_node(lit.atom)


def baf_compose(phi, prefix=None, selector=True, toxic_guard=False, top=TOP):
    """Formation for an arbitrary formula via its disjunctive normal form.

    Conjuncts with complementary literals are kept so the normal form has
    the same three-valued truth table as ``phi``.  Negative literals inside
    conjunctions are wired to the host negation node ``~q``.

    Special shapes: a single literal uses the atom or negation chain, a
    formula equivalent to truth enters at the truth node itself and exits
    through a two-step relay from it, and one
    equivalent to falsity is an entry node with nothing behind it and an
    exit node attacked by an unattacked node.
    """
    dnf = kleene.to_dnf(phi, keep_contradictions=True)
    prefix = prefix or formula_prefix(phi)
    if dnf.is_top():
        k, out = _name(prefix, "k"), _name(prefix, "out")
        made = BAF(top, out, (), {k, out}, {(top, k), (k, out)}, kleene.TOP, top)
        return Composite(made, dnf, (), "top")
    if dnf.is_bot():
        n_in, out, k = _name(prefix, "in"), _name(prefix, "out"), _name(prefix, "k")
        return Composite(BAF(n_in, out, (), {n_in, out, k}, {(k, out)}, kleene.BOT), dnf, (), "bot")
    if len(dnf) == 1 and len(dnf[0]) == 1:
        lit = dnf[0][0]
        made = baf_atom(lit.atom, prefix) if lit.positive else baf_neg_literal(lit.atom, prefix)
        return Composite(made, dnf, (made,), "literal")
    n_in = _name(prefix, "in")
    parts = []
    for j, conjunct in enumerate(dnf, 1):
        parts.append(baf_conj([literal_node(l) for l in conjunct], prefix=f"{prefix}.c{j}",
                              selector=selector, toxic_guard=toxic_guard, top=top, in_node=n_in))
    aux = {n_in}
    attacks = set()
    interface = []
    for p in parts:
        aux |= p.aux_nodes
        attacks |= p.attacks
        interface += [a for a in p.interface if a not in interface]
    if len(parts) == 1:
        out = parts[0].out_node
    else:
        hub, out = _name(prefix, "n"), _name(prefix, "out")
        aux |= {hub, out}
        attacks |= {(p.out_node, hub) for p in parts}
        attacks.add((hub, out))
    formula = kleene.disj(p.formula for p in parts)
    made = BAF(n_in, out, tuple(interface), aux, attacks, formula, top if toxic_guard else None)
    return Composite(made, dnf, tuple(parts), "dnf")


def embedding_violations(host, bafs, top=TOP):
    """Edges of ``host`` that break the embedding rules, as messages."""
    problems = []
    seen = {}
    for k, f in enumerate(bafs):
        for n in f.aux_nodes:
            if n in seen:
                problems.append(f"auxiliary node {n} shared by formations {seen[n]} and {k}")
            seen[n] = k
    for f in bafs:
        inside = f.aux_nodes | set(f.interface) | {f.in_node}
        for a, b in host.attacks:
            if b in f.aux_nodes and a not in inside and b != f.in_node:
                problems.append(f"edge {a}->{b} enters formation at a non-entry node")
            if a in f.aux_nodes and b not in inside and a != f.out_node and b != (f.top or top):
                problems.append(f"edge {a}->{b} leaves formation from a non-exit node")
            # a self-attack of the host node shows up as exit -> entry
            if a == f.out_node and b in f.aux_nodes and b != f.in_node:
                problems.append(f"edge {a}->{b} has the exit node attacking inside")
    return problems


def check_legitimate_embedding(host, bafs, top=TOP):
    return not embedding_violations(host, bafs, top)


def require_legitimate_embedding(host, bafs, top=TOP):
    problems = embedding_violations(host, bafs, top)
    if problems:
        raise ContractError("; ".join(problems))


def format_baf(baf):
    """Frame text for a formation, with comment lines naming its roles."""
    from .frames import format_frame
    head = [
        f"# formula {kleene.render(baf.formula)}",
        f"# in {baf.in_node}",
        f"# out {baf.out_node}",
        f"# interface {' '.join(baf.interface)}",
    ]
    return "\n".join(head) + "\n" + format_frame(baf.frame())
