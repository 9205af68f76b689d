"""Argumentation frames, Caminada labellings and complete extensions."""

import re
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ContractError, InputError, ParseError
from .solver import LabellingSolver
from .values import HALF, normalize, word

RESERVED = ("TOP", "TAU", "STAR", "INF")
_RESERVED_RE = re.compile(r"^(TOP|TAU|STAR|INF)\d*$")
_NAME_RE = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_()',\-]*$")


def is_reserved(name):
    return bool(_RESERVED_RE.match(name))


def check_user_name(name):
    """Validate a node name coming from user input."""
    if not name:
        raise InputError("empty node name")
    if is_reserved(name):
        raise InputError(f"node name {name!r} is reserved")
    if not _NAME_RE.match(name):
        raise InputError(f"invalid node name {name!r}")
    return name


def fresh_name(base, taken):
    """Return ``base`` or ``base<k>`` for the smallest k that is not taken."""
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


class Labelling(Mapping):
    """Immutable map from node names to 0, 1/2 or 1.

    Labellings hash and compare by content.  Sorting a collection of
    labellings gives the canonical order: node names lexicographically,
    values ordered 0 < 1/2 < 1.
    """

    __slots__ = ("_items", "_map")

    def __init__(self, values=()):
        if isinstance(values, Mapping):
            values = values.items()
        items = tuple(sorted((str(k), normalize(v)) for k, v in values))
        self._items = items
        self._map = dict(items)

    def __getitem__(self, key):
        return self._map[key]

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, Labelling):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self._map == dict(other)
        return NotImplemented

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return self._items

    def __repr__(self):
        body = ", ".join(f"{k}={_short(v)}" for k, v in self._items)
        return f"Labelling({body})"

    def restrict(self, names):
        return Labelling((n, self._map[n]) for n in names)

    def updated(self, **changes):
        merged = dict(self._map)
        merged.update(changes)
        return Labelling(merged)

    def with_values(self, mapping):
        merged = dict(self._map)
        merged.update(mapping)
        return Labelling(merged)

    def members(self, value=1):
        return frozenset(k for k, v in self._items if v == value)

    def as_records(self):
        return [{"node": k, "value": word(v)} for k, v in self._items]


def _short(v):
    return "1/2" if v == HALF else str(v)


@dataclass(frozen=True)
class ArgFrame:
    """A finite attack graph ``(nodes, attacks)``."""

    nodes: frozenset
    attacks: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "attacks", frozenset(tuple(a) for a in self.attacks))
        if not self.nodes:
            raise InputError("a frame needs at least one node")
        for a, b in self.attacks:
            if a not in self.nodes or b not in self.nodes:
                raise InputError(f"attack {a}->{b} mentions an unknown node")

    @classmethod
    def build(cls, nodes=(), attacks=()):
        """Convenience constructor; endpoints of attacks are added as nodes."""
        attacks = [tuple(a) for a in attacks]
        ns = set(nodes)
        for a, b in attacks:
            ns.update((a, b))
        return cls(frozenset(ns), frozenset(attacks))

    @cached_property
    def attackers(self):
        table = {n: [] for n in self.nodes}
        for a, b in self.attacks:
            table[b].append(a)
        return {n: tuple(sorted(v)) for n, v in table.items()}

    @cached_property
    def targets(self):
        table = {n: [] for n in self.nodes}
        for a, b in self.attacks:
            table[a].append(b)
        return {n: tuple(sorted(v)) for n, v in table.items()}

    @cached_property
    def sorted_nodes(self):
        return tuple(sorted(self.nodes))

    @cached_property
    def solver(self):
        return LabellingSolver(self.sorted_nodes, sorted(self.attacks))

    def unattacked(self):
        return frozenset(n for n in self.nodes if not self.attackers[n])

    def with_attacks(self, added=(), removed=()):
        attacks = (set(self.attacks) | set(added)) - set(removed)
        return ArgFrame.build(self.nodes, attacks)

    def with_nodes(self, added):
        return ArgFrame(self.nodes | frozenset(added), self.attacks)

    def restricted(self, keep):
        keep = frozenset(keep)
        return ArgFrame(keep, frozenset((a, b) for a, b in self.attacks if a in keep and b in keep))

    def renamed(self, mapping):
        def r(n):
            return mapping.get(n, n)
        return ArgFrame.build({r(n) for n in self.nodes}, {(r(a), r(b)) for a, b in self.attacks})


@dataclass(frozen=True)
class Extension:
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))


@dataclass(frozen=True)
class SccPartition:
    components: tuple
    dag_edges: frozenset

    def component_of(self):
        return {n: i for i, comp in enumerate(self.components) for n in comp}


@dataclass(frozen=True, order=True)
class Level:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise ContractError(f"invalid level ({self.k},{self.n})")


def _members(frame, e):
    members = e.members if isinstance(e, Extension) else frozenset(e)
    unknown = members - frame.nodes
    if unknown:
        raise InputError(f"unknown nodes in extension: {sorted(unknown)}")
    return members


def protects(frame, members, x):
    """True when every attacker of x is attacked by some member."""
    return all(any((m, y) in frame.attacks for m in members) for y in frame.attackers[x])


def is_conflict_free(frame, e):
    members = _members(frame, e)
    return not any(a in members and b in members for a, b in frame.attacks)


def is_complete_extension(frame, e):
    members = _members(frame, e)
    if not is_conflict_free(frame, members):
        return False
    defended = {x for x in frame.nodes if protects(frame, members, x)}
    return defended == set(members)


def _check_total(frame, lam):
    if set(lam) != set(frame.nodes):
        missing = sorted(set(frame.nodes) - set(lam))
        extra = sorted(set(lam) - set(frame.nodes))
        raise InputError(f"labelling is not total on the frame (missing {missing}, extra {extra})")


def is_legitimate_labelling(frame, lam):
    """Check the four Caminada clauses on a total labelling."""
    _check_total(frame, lam)
    for x in frame.nodes:
        if lam[x] not in (0, HALF, 1):
            raise InputError(f"bad value for {x}: {lam[x]!r}")
        strongest = max((lam[y] for y in frame.attackers[x]), default=0)
        if normalize(1 - strongest) != normalize(lam[x]):
            return False
    return True


def complete_labellings(frame, fixed=None, project=None):
    """Complete labellings, optionally pinned and restricted to ``project``.

    ``fixed`` maps node names to a value or a set of allowed values.  When
    ``project`` is given, the distinct restrictions of the matching complete
    labellings to those nodes are returned.  Output is canonically sorted.
    """
    found = {Labelling(v) for v in frame.solver.labellings(fixed, project)}
    return tuple(sorted(found))


def enumerate_complete_labellings(frame):
    return complete_labellings(frame)


def has_complete_labelling(frame, fixed=None):
    return frame.solver.exists(fixed)


def grounded_labelling(frame):
    """Least fixpoint: iterate the in/out rules from the empty labelling."""
    lam = {}
    changed = True
    while changed:
        changed = False
        for x in frame.sorted_nodes:
            if x in lam:
                continue
            atts = frame.attackers[x]
            if all(lam.get(y) == 0 for y in atts):
                lam[x] = 1
                changed = True
            elif any(lam.get(y) == 1 for y in atts):
                lam[x] = 0
                changed = True
    return Labelling({x: lam.get(x, HALF) for x in frame.nodes})


def extension_of(lam, frame=None):
    if frame is not None and not is_legitimate_labelling(frame, lam):
        raise ContractError("extension_of needs a legitimate labelling")
    return Extension(frozenset(n for n, v in lam.items() if v == 1))


def labelling_of(frame, e):
    members = _members(frame, e)
    if not is_complete_extension(frame, members):
        raise ContractError("labelling_of needs a complete extension")
    values = {}
    for x in frame.nodes:
        if x in members:
            values[x] = 1
        elif any(y in members for y in frame.attackers[x]):
            values[x] = 0
        else:
            values[x] = HALF
    return Labelling(values)


def scc_decompose(frame):
    """Tarjan's algorithm, iterative; components listed in sorted order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in frame.sorted_nodes:
        if root in index:
            continue
        work = [(root, iter(frame.targets[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(frame.targets[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == node:
                        break
                comps.append(frozenset(comp))
    comps.sort(key=lambda c: sorted(c))
    where = {n: i for i, c in enumerate(comps) for n in c}
    dag = frozenset((where[a], where[b]) for a, b in frame.attacks if where[a] != where[b])
    part = SccPartition(tuple(comps), dag)
    _assert_acyclic(len(comps), dag)
    return part


def _assert_acyclic(size, edges):
    indeg = [0] * size
    succ = [[] for _ in range(size)]
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [i for i in range(size) if indeg[i] == 0]
    seen = 0
    while ready:
        i = ready.pop()
        seen += 1
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if seen != size:
        raise ContractError("condensation is not acyclic")


def scc_levels(frame):
    """Level (k, n) of every node from the condensation of the frame.

    Source components are (1, 1); any other component gets one plus the
    minimum and one plus the maximum over the levels of the components
    attacking it.
    """
    part = scc_decompose(frame)
    preds = {i: set() for i in range(len(part.components))}
    for a, b in part.dag_edges:
        preds[b].add(a)
    memo = {}

    def level(i):
        if i in memo:
            return memo[i]
        if not preds[i]:
            memo[i] = Level(1, 1)
        else:
            ls = [level(j) for j in preds[i]]
            memo[i] = Level(1 + min(l.k for l in ls), 1 + max(l.n for l in ls))
        return memo[i]

    # iterate in topological order to keep recursion shallow
    order = _topological(len(part.components), part.dag_edges)
    for i in order:
        level(i)
    return {n: memo[i] for i, comp in enumerate(part.components) for n in comp}


def _topological(size, edges):
    indeg = [0] * size
    succ = [[] for _ in range(size)]
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = sorted(i for i in range(size) if indeg[i] == 0)
    out = []
    while ready:
        i = ready.pop(0)
        out.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return out


def parse_frame(text, allow_reserved=False):
    """Read ``node <name>`` and ``att <from> <to>`` directives."""
    nodes, attacks = set(), set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "node" and len(parts) == 2:
            names = parts[1:]
        elif kw == "att" and len(parts) == 3:
            names = parts[1:]
        else:
            raise ParseError(f"cannot read directive {line!r}", lineno)
        for n in names:
            try:
                if not allow_reserved:
                    check_user_name(n)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
        nodes.update(names)
        if kw == "att":
            attacks.add((parts[1], parts[2]))
    if not nodes:
        raise ParseError("no nodes declared")
    return ArgFrame(frozenset(nodes), frozenset(attacks))


def format_frame(frame):
    lines = [f"node {n}" for n in frame.sorted_nodes]
    lines += [f"att {a} {b}" for a, b in sorted(frame.attacks)]
    return "\n".join(lines) + "\n"
