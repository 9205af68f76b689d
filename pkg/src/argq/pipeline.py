"""Frames whose nodes are instantiated by formulas.

The reference semantics (``oracle_extensions``) reads every three-valued
valuation of the atoms as a labelling and keeps the legitimate ones.  The
constructive route (``pipeline_extensions``) builds a two-state frame,
replaces every node by a Boolean attack formation, wires the formations
together in a master network with a truth node and reads valuations off the
option-iv extensions of that network.
"""

import re
from dataclasses import dataclass

from . import kleene, monadic
from .baf import baf_compose, negation_node, formula_prefix, require_legitimate_embedding
from .errors import InputError, ParseError
from .frames import (ArgFrame, Labelling, check_user_name, complete_labellings,
                     is_legitimate_labelling, is_reserved)
from .topnet import LENIENT, TOP, TopNet, option_iv_extensions


def _negated(node):
    return "~" + node


@dataclass(frozen=True)
class InstantiatedFrame:
    """A frame together with a formula for every node."""

    frame: ArgFrame
    inst: dict

    def __post_init__(self):
        object.__setattr__(self, "inst", dict(self.inst))
        if set(self.inst) != set(self.frame.nodes):
            missing = sorted(set(self.frame.nodes) - set(self.inst))
            raise InputError(f"instantiation must cover every node (missing {missing})")
        clash = self.atoms() & set(self.frame.nodes)
        if clash:
            raise InputError(f"atoms {sorted(clash)} are also node names")
        for a in self.atoms():
            if is_reserved(a):
                raise InputError(f"atom name {a!r} is reserved")

    def atoms(self):
        out = set()
        for phi in self.inst.values():
            out |= kleene.atoms(phi)
        return frozenset(out)

    def sorted_atoms(self):
        return sorted(self.atoms())


@dataclass(frozen=True)
class TwoStateFrame:
    """Two-state version of an instantiated frame.

    ``partner`` maps each original node to its negation node.
    """

    frame: ArgFrame
    inst: dict
    partner: dict
    top: str = TOP


@dataclass(frozen=True)
class Extension:
    """A valuation of the atoms and the labelling it induces on the frame."""

    valuation: Labelling
    labelling: Labelling

    def sort_key(self):
        return (self.labelling.sort_key(), self.valuation.sort_key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def induced_labelling(inst, valuation):
    return Labelling({x: kleene.eval_formula(phi, valuation) for x, phi in inst.inst.items()})


def oracle_extensions(inst):
    """Valuations whose induced labelling is legitimate, with that labelling."""
    out = []
    for v in kleene.enumerate_valuations(inst.atoms()):
        lam = induced_labelling(inst, v)
        if is_legitimate_labelling(inst.frame, lam):
            out.append(Extension(Labelling(v), lam))
    return tuple(sorted(out))


def distinct_labellings(extensions):
    return tuple(sorted({e.labelling for e in extensions}))


def equational_labellings(inst):
    """Labellings induced by the solutions of the equational system."""
    sols = kleene.equational_extensions(inst.frame, inst.inst)
    return tuple(sorted({induced_labelling(inst, v) for v in sols}))


def two_state_frame(frame, top_targets="unattacked", top=TOP):
    """Add a negation node for every node and a truth node.

    Each node and its negation attack each other.  The truth node attacks
    the negation of every originally unattacked node, or of every node when
    ``top_targets`` is ``"all"``.
    """
    if top_targets not in ("unattacked", "all"):
        raise InputError(f"unknown top_targets {top_targets!r}")
    partner = {x: _negated(x) for x in frame.nodes}
    taken = set(frame.nodes)
    for n in list(partner.values()) + [top]:
        if n in taken:
            raise InputError(f"node {n!r} already exists")
        taken.add(n)
    attacks = set(frame.attacks)
    for x, nx in partner.items():
        attacks |= {(x, nx), (nx, x)}
        if top_targets == "all" or not frame.attackers[x]:
            attacks.add((top, nx))
    nodes = set(frame.nodes) | set(partner.values()) | {top}
    return ArgFrame.build(nodes, attacks), partner


def to_two_state(inst, top=TOP):
    frame, partner = two_state_frame(inst.frame, "unattacked", top)
    star = dict(inst.inst)
    for x, nx in partner.items():
        star[nx] = kleene.Not(inst.inst[x])
    star[top] = kleene.TOP
    return TwoStateFrame(frame, star, partner, top)


def pattern_attacks(ts):
    """Mutual attacks between nodes whose full normal forms share nothing."""
    names = set()
    for phi in ts.inst.values():
        names |= kleene.atoms(phi)
    over = sorted(names)
    forms = {}
    for n in ts.frame.sorted_nodes:
        if n == ts.top:
            continue
        forms[n] = set(kleene.full_dnf(ts.inst[n], over))
    out = set()
    nodes = sorted(forms)
    for i, a in enumerate(nodes):
        for b in nodes[i + 1:]:
            if not forms[a] & forms[b]:
                out |= {(a, b), (b, a)}
    return out


def dnf_pattern_network(ts):
    """The two-state frame with the pattern attacks added."""
    return ts.frame.with_attacks(added=pattern_attacks(ts))


def pattern_extensions(inst):
    """Equational solutions of the pattern network of the two-state frame."""
    ts = to_two_state(inst)
    frame = dnf_pattern_network(ts)
    return kleene.equational_extensions(frame, ts.inst)


def frame_instantiation(f1, f2, mapping):
    """Transport ``f1`` into ``f2`` along ``mapping``.

    Nodes are the image of the map.  Attacks are the images of ``f1``'s
    attacks together with ``f2``'s attacks between image nodes.
    """
    if set(mapping) != set(f1.nodes):
        raise InputError("the map must be total on the first frame")
    bad = sorted(set(mapping.values()) - f2.nodes)
    if bad:
        raise InputError(f"map targets outside the second frame: {bad}")
    image = set(mapping.values())
    attacks = {(mapping[a], mapping[b]) for a, b in f1.attacks}
    attacks |= {(a, b) for a, b in f2.attacks if a in image and b in image}
    return ArgFrame.build(image, attacks)


@dataclass(frozen=True)
class Master:
    """The assembled network and the formation chosen for each node."""

    net: TopNet
    formations: dict
    atoms: tuple


def assemble_master(ts):
    atoms = set()
    for phi in ts.inst.values():
        atoms |= kleene.atoms(phi)
    atoms = sorted(atoms)
    nodes = {ts.top}
    attacks = set()
    for q in atoms:
        nq = negation_node(q)
        nodes |= {q, nq}
        attacks |= {(q, nq), (nq, q)}
    formations = {}
    for z in ts.frame.sorted_nodes:
        prefix = formula_prefix(ts.inst[z], salt=z)
        made = baf_compose(ts.inst[z], prefix=prefix, top=ts.top)
        formations[z] = made
        nodes |= made.baf.nodes
        attacks |= made.baf.attacks
    for x, y in ts.frame.attacks:
        attacks.add((formations[x].baf.out_node, formations[y].baf.in_node))
    frame = ArgFrame.build(nodes, attacks)
    require_legitimate_embedding(frame, [f.baf for f in formations.values()], ts.top)
    return Master(TopNet(frame, ts.top), formations, tuple(atoms))


def pipeline_extensions(inst, policy=LENIENT):
    """Valuations read off the master network, filtered for legitimacy."""
    ts = to_two_state(inst)
    master = assemble_master(ts)
    wanted = inst.sorted_atoms()
    out = set()
    for lab in option_iv_extensions(master.net, policy, project=wanted):
        v = lab.restrict(wanted)
        lam = induced_labelling(inst, v)
        if is_legitimate_labelling(inst.frame, lam):
            out.add(Extension(v, lam))
    return tuple(sorted(out))


def require_nonempty_domain(extensions, n):
    """Drop valuations that make every type atom false."""
    guard = monadic.nonempty_constraint(n)
    return tuple(e for e in extensions if kleene.eval_formula(guard, _with_zero(guard, e.valuation)) != 0)


def _with_zero(phi, v):
    full = dict(v)
    for a in kleene.atoms(phi):
        full.setdefault(a, 0)
    return full


def propositional_instantiation(frame, inst, s5=False, n=None, constants=None):
    """Replace monadic or S5 formulas by their propositional normal forms."""
    if n is None:
        n = max([1] + [monadic.max_predicate(phi) for phi in inst.values()])
    out = {}
    if s5:
        for x, phi in inst.items():
            out[x] = monadic.s5_propositionalize(monadic.s5_normal_form(phi, n), n)
        return InstantiatedFrame(frame, out)
    if constants is None:
        constants = set()
        for phi in inst.values():
            constants |= monadic.free_terms(phi)
    constants = sorted(constants)
    for x, phi in inst.items():
        out[x] = monadic.to_propositional(phi, n, constants)
    return InstantiatedFrame(frame, out)


def monadic_pipeline(frame, inst, policy=LENIENT, s5=False, n=None, constants=None):
    return pipeline_extensions(propositional_instantiation(frame, inst, s5, n, constants), policy)


# --- syntactic quantifier attacks --------------------------------------------

def _constant_literal(phi):
    """(index, positive) for P_i(c) or its negation with c a constant."""
    if isinstance(phi, monadic.Pred) and phi.term:
        return phi.index, True
    if isinstance(phi, monadic.MNot) and isinstance(phi.arg, monadic.Pred) and phi.arg.term:
        return phi.arg.index, False
    return None


def _quantified(phi):
    """('none', i) for the negation of an existential of P_i, ('all', i) for a universal."""
    if (isinstance(phi, monadic.MNot) and isinstance(phi.arg, monadic.Exists)
            and isinstance(phi.arg.body, monadic.Pred) and phi.arg.body.term == phi.arg.var):
        return "none", phi.arg.body.index
    if (isinstance(phi, monadic.Forall) and isinstance(phi.body, monadic.Pred)
            and phi.body.term == phi.var):
        return "all", phi.body.index
    return None


def quantifier_pattern_network(frame, inst):
    """Two-state frame with attacks read off the shape of monadic formulas.

    Every node labelled by the negation of an existential of a predicate
    attacks every node labelled by that predicate applied to a constant;
    a universal of a predicate attacks every negated application.  Returns
    the frame and the formula carried by each node.
    """
    two, partner = two_state_frame(frame, "unattacked")
    carried = dict(inst)
    for x, nx in partner.items():
        carried[nx] = monadic.MNot(inst[x])
    carried[TOP] = monadic.MTop()
    added = set()
    for u, phi in carried.items():
        shape = _quantified(phi)
        if shape is None:
            continue
        kind, index = shape
        for w, psi in carried.items():
            lit = _constant_literal(psi)
            if lit is None or lit[0] != index:
                continue
            if (kind == "none" and lit[1]) or (kind == "all" and not lit[1]):
                added.add((u, w))
    return two.with_attacks(added=added), carried


def quantifier_pattern_extensions(frame, inst):
    net, carried = quantifier_pattern_network(frame, inst)
    return complete_labellings(net), carried


# --- text format -------------------------------------------------------------

_INST_RE = re.compile(r"^inst\s+(\S+)\s*:=\s*(.+)$")


def parse_instantiation(text, formula_parser=None):
    """Frame directives plus ``inst <node> := <formula>`` lines."""
    formula_parser = formula_parser or kleene.parse_formula
    frame_lines, inst = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        m = _INST_RE.match(line)
        if m:
            node, body = m.group(1), m.group(2)
            try:
                check_user_name(node)
                phi = formula_parser(body)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
            if node in inst:
                raise ParseError(f"node {node!r} instantiated twice", lineno)
            inst[node] = phi
            frame_lines.append(f"node {node}")
        elif line.startswith("inst"):
            raise ParseError("expected 'inst <node> := <formula>'", lineno)
        else:
            frame_lines.append(line)
    from .frames import parse_frame
    frame = parse_frame("\n".join(frame_lines))
    missing = sorted(set(frame.nodes) - set(inst))
    if missing:
        raise ParseError(f"nodes without a formula: {missing}")
    return frame, inst
