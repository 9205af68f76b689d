"""Networks whose attacks go from sets of nodes to sets of nodes.

An attack ``X -> Y`` is read conjunctively on the source side (all of X
together) and disjunctively on the target side (at least one of Y).
"""

import itertools
from dataclasses import dataclass

from . import limits
from .errors import ContractError, InputError, ParseError
from .frames import ArgFrame, Labelling, check_user_name, complete_labellings
from .values import HALF, TRI_VALUES, normalize


@dataclass(frozen=True)
class CDNetwork:
    nodes: frozenset
    set_attacks: frozenset

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        attacks = frozenset((frozenset(x), frozenset(y)) for x, y in self.set_attacks)
        object.__setattr__(self, "set_attacks", attacks)
        for x, y in attacks:
            if not x or not y:
                raise InputError("attack sides must be non-empty")
            if not (x | y) <= self.nodes:
                raise InputError("attack mentions an unknown node")

    @classmethod
    def build(cls, attacks, nodes=()):
        pairs = [(frozenset(x), frozenset(y)) for x, y in attacks]
        ns = set(nodes)
        for x, y in pairs:
            ns |= x | y
        return cls(frozenset(ns), frozenset(pairs))

    def sorted_attacks(self):
        return sorted(self.set_attacks, key=lambda a: (sorted(a[0]), sorted(a[1])))


def _set_value(lam, xs):
    return min(lam[x] for x in xs)


def _subsets(items):
    items = sorted(items)
    for r in range(1, len(items) + 1):
        yield from itertools.combinations(items, r)


def is_cd_extension(net, lam):
    """The four CD-extension clauses.

    Attacks are stored as generators; the superset closure is applied
    while checking.  Under the closure, the attacks on a set Y are the
    supersets of generator sources whose target set lies inside Y, so:
    (a) a node in no generator target set is in;
    (b) a generator source that is in has some target out;
    (c) for every Y, if all attacks on Y have an out source then Y is in;
        this reduces to singletons Y = {z};
    (d) for every Y, if all attacks on Y have a source below 1 and some has
        an undecided source, then Y has no out member and some undecided
        member.
    """
    if set(lam) != set(net.nodes):
        raise InputError("labelling must be total")
    for n in net.nodes:
        if lam[n] not in TRI_VALUES:
            raise InputError(f"bad value for {n}")
    gens = [(x, y, _set_value(lam, x)) for x, y in net.set_attacks]
    targeted = set()
    for _, y, _ in gens:
        targeted |= y
    for z in net.nodes - targeted:
        if lam[z] != 1:
            return False
    for _, y, v in gens:
        if v == 1 and not any(lam[t] == 0 for t in y):
            return False
    for z in net.nodes:
        on_z = [v for _, y, v in gens if y == {z}]
        if all(v == 0 for v in on_z) and lam[z] != 1:
            return False
    for ys in _subsets(targeted):
        yset = set(ys)
        on_y = [v for _, y, v in gens if y <= yset]
        if on_y and all(v < 1 for v in on_y) and any(v == HALF for v in on_y):
            if any(lam[t] == 0 for t in ys) or not any(lam[t] == HALF for t in ys):
                return False
    return True


def enumerate_cd_extensions(net):
    limits.check("brute_force_nodes", len(net.nodes), "CD brute force")
    names = sorted(net.nodes)
    out = []
    for combo in itertools.product(TRI_VALUES, repeat=len(names)):
        lam = Labelling(zip(names, combo))
        if is_cd_extension(net, lam):
            out.append(lam)
    return tuple(sorted(out))


def joint_semantics(nodes, attacks):
    """Complete labellings of a joint-attack network computed directly.

    ``attacks`` holds pairs ``(X, z)``.  A node is out when some attacking
    set is in, in when every attacking set is out, otherwise undecided.
    """
    names = sorted(nodes)
    limits.check("brute_force_nodes", len(names), "joint-attack brute force")
    aimed = {n: [] for n in names}
    for xs, z in attacks:
        aimed[z].append(frozenset(xs))
    out = []
    for combo in itertools.product(TRI_VALUES, repeat=len(names)):
        lam = dict(zip(names, combo))
        ok = True
        for n in names:
            strongest = max((min(lam[x] for x in xs) for xs in aimed[n]), default=0)
            if lam[n] != normalize(1 - strongest):
                ok = False
                break
        if ok:
            out.append(Labelling(lam))
    return tuple(sorted(out))


def eliminate_joint_attacks(attacks, nodes=(), base_attacks=()):
    """Replace each joint attack by fresh auxiliary nodes.

    For attack number k, ``{x_1..x_n} -> z`` becomes ``x_i -> y_i`` and
    ``y_i -> y`` and ``y -> z`` where ``y_i`` is the node named
    ``J<k>.<i>`` and ``y`` is ``J<k>``.  Plain attacks in ``base_attacks``
    are kept as they are.
    """
    ns = set(nodes)
    plain = set(tuple(a) for a in base_attacks)
    for a, b in plain:
        ns |= {a, b}
    ordered = sorted((tuple(sorted(xs)), z) for xs, z in attacks)
    for xs, z in ordered:
        ns |= set(xs) | {z}
    base = frozenset(ns)
    edges = set(plain)
    minted = set()
    for k, (xs, z) in enumerate(ordered, 1):
        hub = f"J{k}"
        names = [f"{hub}.{i}" for i in range(1, len(xs) + 1)]
        for name in [hub] + names:
            if name in base or name in minted:
                raise ContractError(f"auxiliary name {name!r} is already in use")
            minted.add(name)
        for x, y in zip(xs, names):
            edges.add((x, y))
            edges.add((y, hub))
        edges.add((hub, z))
    return ArgFrame.build(base | minted, edges)


def rcd_expand(net):
    """Every ``X -> {y_1..y_k}`` becomes ``X + {y_j | j != i} -> y_i``."""
    out = set()
    for xs, ys in net.set_attacks:
        for y in ys:
            out.add((frozenset(xs | (ys - {y})), y))
    return frozenset(out)


def rcd_extensions(net):
    """Labellings of the joint network produced by rcd_expand."""
    frame = eliminate_joint_attacks(rcd_expand(net), nodes=net.nodes)
    return tuple(sorted({l.restrict(net.nodes) for l in complete_labellings(frame, project=sorted(net.nodes))}))


def _np_joint(xs, z):
    # X -> z with z in X says that X minus z puts z out; when the target is
    # left as a source the attack can only ever make z undecided
    rest = xs - {z}
    return (rest if rest else xs), z


def np_extensions(net):
    """Union over choice functions picking one target per disjunctive attack.

    A chosen attack ``X -> z`` whose source contains ``z`` is read as
    ``X - {z} -> z``.
    """
    attacks = net.sorted_attacks()
    disjunctive = [a for a in attacks if len(a[1]) > 1]
    limits.check("np_attacks", len(disjunctive), "NP choice functions")
    options = [sorted(y) for _, y in attacks]
    found = set()
    for choice in itertools.product(*options):
        joint = [_np_joint(x, z) for (x, _), z in zip(attacks, choice)]
        frame = eliminate_joint_attacks(joint, nodes=net.nodes)
        for lab in complete_labellings(frame, project=sorted(net.nodes)):
            found.add(lab)
    return tuple(sorted(found))


def reduce_to_frame(net):
    """The plain frame of a network whose targets are all singletons."""
    joint = []
    for xs, ys in net.set_attacks:
        if len(ys) != 1:
            raise InputError("reduce needs single-target attacks; expand disjunctions first")
        joint.append((xs, next(iter(ys))))
    return eliminate_joint_attacks(joint, nodes=net.nodes)


def parse_cdnet(text):
    """``node n``, ``att a b``, ``jatt a,b -> c``, ``datt a -> b,c`` and ``satt a,b -> c,d``."""
    nodes, attacks = set(), set()

    def names(chunk, lineno):
        out = [n.strip() for n in chunk.split(",") if n.strip()]
        if not out:
            raise ParseError("empty node list", lineno)
        for n in out:
            try:
                check_user_name(n)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
        return out

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, _, rest = line.partition(" ")
        if kw == "node":
            nodes |= set(names(rest, lineno))
        elif kw == "att":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("att needs two nodes", lineno)
            names(",".join(parts), lineno)
            attacks.add((frozenset([parts[0]]), frozenset([parts[1]])))
        elif kw in ("jatt", "datt", "satt"):
            lhs, sep, rhs = rest.partition("->")
            if not sep:
                raise ParseError(f"{kw} needs '->'", lineno)
            xs, ys = names(lhs, lineno), names(rhs, lineno)
            if kw == "jatt" and len(ys) != 1:
                raise ParseError("jatt has a single target", lineno)
            if kw == "datt" and len(xs) != 1:
                raise ParseError("datt has a single source", lineno)
            attacks.add((frozenset(xs), frozenset(ys)))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno)
        for x, y in attacks:
            nodes |= x | y
    if not nodes:
        raise ParseError("no nodes declared")
    return CDNetwork(frozenset(nodes), frozenset(attacks))
