"""Two-state networks with strict and defeasible attacks.

A node ``a`` stands for a literal and ``~a`` for its negation.  Defeasible
theories compile into such networks; extensions are computed either by
propagating values from the truth node (``ground_labelling``) or by
checking every candidate against the case table of ``cg_labellings``.
"""

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field

from . import limits
from .errors import InputError, ParseError
from .frames import Labelling, check_user_name, is_reserved
from .topnet import TOP
from .values import HALF, TRI_VALUES

STRICT = "strict"
DEFEASIBLE = "defeasible"

STRONGER = "stronger"
WEAKER = "weaker"
INDIFFERENT = "indifferent"


def negate(literal):
    """``~b`` for ``b`` and ``b`` for ``~b``."""
    return literal[1:] if literal.startswith("~") else "~" + literal


def atom_of(literal):
    return literal.lstrip("~")


def normalize_literal(literal):
    literal = literal.strip()
    bare = literal.lstrip("~")
    return bare if (len(literal) - len(bare)) % 2 == 0 else "~" + bare


@dataclass(frozen=True)
class BipolarNet:
    """Nodes, strict attacks and defeasible attacks around a truth node.

    ``aux`` lists the auxiliary nodes added for rules with several
    premises; they are projected out of user-facing labellings.
    """

    nodes: frozenset
    strict_attacks: frozenset
    defeasible_attacks: frozenset
    top: str = TOP
    aux: frozenset = frozenset()

    def __post_init__(self):
        for name in ("nodes", "strict_attacks", "defeasible_attacks", "aux"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.top not in self.nodes:
            raise InputError(f"truth node {self.top!r} is not a node")
        edges = self.strict_attacks | self.defeasible_attacks
        for a, b in edges:
            if a not in self.nodes or b not in self.nodes:
                raise InputError(f"attack {a}->{b} mentions an unknown node")
            if b == self.top:
                raise InputError("nothing may attack the truth node")
        both = self.strict_attacks & self.defeasible_attacks
        if both:
            raise InputError(f"attacks both strict and defeasible: {sorted(both)}")
        for n in self.nodes:
            partner = negate(n)
            if n != self.top and partner in self.nodes:
                if (n, partner) not in self.strict_attacks:
                    raise InputError(f"{n} and {partner} must attack each other strictly")

    @property
    def sorted_nodes(self):
        return sorted(self.nodes)

    def kind(self, a, b):
        if (a, b) in self.strict_attacks:
            return STRICT
        if (a, b) in self.defeasible_attacks:
            return DEFEASIBLE
        return None

    def attackers(self, node):
        """``(attacker, kind)`` pairs in canonical order."""
        out = [(a, STRICT) for a, b in self.strict_attacks if b == node]
        out += [(a, DEFEASIBLE) for a, b in self.defeasible_attacks if b == node]
        return sorted(out)

    def edges(self):
        """All attacks as ``(source, target, kind)`` in canonical order."""
        out = [(a, b, STRICT) for a, b in self.strict_attacks]
        out += [(a, b, DEFEASIBLE) for a, b in self.defeasible_attacks]
        return sorted(out)

    def pairs(self):
        """Positive members of the complementary pairs."""
        return sorted(n for n in self.nodes
                      if n != self.top and not n.startswith("~") and negate(n) in self.nodes)

    def literals(self):
        return sorted(self.nodes - self.aux - {self.top} - {negate(a) for a in self.aux})


@dataclass(frozen=True)
class Rule:
    body: tuple
    head: str
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(normalize_literal(b) for b in self.body))
        object.__setattr__(self, "head", normalize_literal(self.head))
        if self.kind not in (STRICT, DEFEASIBLE):
            raise InputError(f"unknown rule kind {self.kind!r}")

    def __str__(self):
        arrow = "->" if self.kind == STRICT else "=>"
        return f"{', '.join(self.body)} {arrow} {self.head}".strip()


@dataclass(frozen=True)
class DefeasibleTheory:
    """Strict and defeasible rules; a rule with an empty body is a fact."""

    strict_rules: tuple = ()
    defeasible_rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "strict_rules", tuple(self._rules(self.strict_rules, STRICT)))
        object.__setattr__(self, "defeasible_rules",
                           tuple(self._rules(self.defeasible_rules, DEFEASIBLE)))

    @staticmethod
    def _rules(rules, kind):
        out = []
        for r in rules:
            if not isinstance(r, Rule):
                body, head = r
                r = Rule(tuple(body), head, kind)
            elif r.kind != kind:
                raise InputError(f"rule {r} filed under the wrong kind")
            out.append(r)
        return out

    @property
    def rules(self):
        return self.strict_rules + self.defeasible_rules

    def atoms(self):
        out = set()
        for r in self.rules:
            out |= {atom_of(x) for x in r.body + (r.head,)}
        return out


def compile_theory(theory, top=TOP):
    """The network of a theory.

    Every atom gets a pair of mutually attacking nodes.  A fact attacks
    the negation of its head from the truth node and a rule with one
    premise attacks the negated head from the premise, with the rule's
    kind.  A rule with several premises gets an auxiliary pair ``z[k]`` /
    ``~z[k]``: each negated premise attacks ``z[k]`` and ``z[k]`` attacks
    the negated head, all with the rule's kind.  An edge produced by
    both kinds of rule is kept as strict.
    """
    atoms = theory.atoms()
    for a in sorted(atoms):
        try:
            check_user_name(a)
        except InputError as exc:
            raise InputError(f"literal {a!r}: {exc}") from None
    nodes = {top}
    strict, defeasible = set(), set()
    for a in atoms:
        nodes |= {a, negate(a)}
        strict |= {(a, negate(a)), (negate(a), a)}
    aux = set()
    joint = 0
    for r in theory.rules:
        bucket = strict if r.kind == STRICT else defeasible
        target = negate(r.head)
        if not r.body:
            bucket.add((top, target))
        elif len(r.body) == 1:
            bucket.add((r.body[0], target))
        else:
            joint += 1
            z = f"z[{joint}]"
            nodes |= {z, negate(z)}
            aux.add(z)
            strict |= {(z, negate(z)), (negate(z), z)}
            for x in r.body:
                bucket.add((negate(x), z))
            bucket.add((z, target))
    # a strict link makes a defeasible one over the same edge redundant
    defeasible -= strict
    return BipolarNet(nodes, strict, defeasible, top, aux)


def _split_literals(text):
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [normalize_literal(x) for x in out if x.strip()]


def parse_theory(text):
    """Read ``strict: a, b -> c``, ``defeasible: a => b``, ``fact: a``, ``dfact: a``."""
    strict, defeasible = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kw, sep, rest = line.partition(":")
        kw = kw.strip()
        if not sep:
            raise ParseError("expected '<kind>: <rule>'", lineno)
        if kw in ("fact", "dfact"):
            body, head = [], _split_literals(rest)
            if len(head) != 1:
                raise ParseError(f"{kw} takes one literal", lineno)
            head = head[0]
        elif kw in ("strict", "defeasible"):
            arrow = "->" if kw == "strict" else "=>"
            lhs, found, rhs = rest.partition(arrow)
            if not found:
                raise ParseError(f"{kw} rule needs '{arrow}'", lineno)
            body, heads = _split_literals(lhs), _split_literals(rhs)
            if len(heads) != 1:
                raise ParseError("a rule has exactly one head", lineno)
            head = heads[0]
        else:
            raise ParseError(f"unknown rule kind {kw!r}", lineno)
        for lit in body + [head]:
            bare = atom_of(lit)
            if is_reserved(bare) or not bare:
                raise ParseError(f"literal {lit!r} is reserved or empty", lineno)
            try:
                check_user_name(bare)
            except InputError as exc:
                raise ParseError(str(exc), lineno) from None
        rule = (tuple(body), head)
        (strict if kw in ("strict", "fact") else defeasible).append(rule)
    return DefeasibleTheory(tuple(strict), tuple(defeasible))


def format_net(net):
    """Directive text for a network: ``node``, ``att`` and ``datt`` lines."""
    lines = [f"top {net.top}"]
    lines += [f"node {n}" for n in net.sorted_nodes if n != net.top]
    for a, b, kind in net.edges():
        lines.append(f"{'att' if kind == STRICT else 'datt'} {a} {b}")
    return "\n".join(lines) + "\n"


# --- defeasibility index -----------------------------------------------------

@dataclass(frozen=True, order=True)
class DIndex:
    """Fewest defeasible links on a path from the truth node, and how many paths achieve it."""

    d1: int
    d2: int

    def __str__(self):
        return f"({self.d1},{self.d2})"


def _min_links(net):
    """Fewest defeasible links from the truth node to every reachable node."""
    out_edges = {}
    for a, b, kind in net.edges():
        out_edges.setdefault(a, []).append((b, 1 if kind == DEFEASIBLE else 0))
    dist = {net.top: 0}
    queue = deque([net.top])
    while queue:
        u = queue.popleft()
        for v, w in out_edges.get(u, ()):
            d = dist[u] + w
            if d < dist.get(v, d + 1):
                dist[v] = d
                if w:
                    queue.append(v)
                else:
                    queue.appendleft(v)
    return dist


def _walk_paths(net, x, max_visits, keep):
    """Walk the paths from ``x`` back to the truth node.

    ``keep(node, links)`` prunes partial paths; complete paths are
    yielded as ``(length_in_nodes, defeasible_links)``.
    """
    cap = limits.get("paths")
    seen = 0
    visits = {x: 1}

    def step(node, links, length):
        nonlocal seen
        if node == net.top:
            seen += 1
            if seen > cap:
                limits.check("paths", seen, "path enumeration")
            yield length, links
            return
        for a, kind in net.attackers(node):
            extra = links + (1 if kind == DEFEASIBLE else 0)
            if visits.get(a, 0) >= max_visits or not keep(a, extra):
                continue
            visits[a] = visits.get(a, 0) + 1
            yield from step(a, extra, length + 1)
            visits[a] -= 1

    yield from step(x, 0, 1)


def d_index(net, x, max_visits=1):
    """The pair (fewest defeasible links, number of paths with that many).

    Paths run from ``x`` back to the truth node along attacks, with each
    node appearing at most ``max_visits`` times.  Returns ``None`` when the
    truth node does not reach ``x``.
    """
    if x not in net.nodes:
        raise InputError(f"unknown node {x!r}")
    if max_visits < 1:
        raise InputError("max_visits must be at least 1")
    dist = _min_links(net)
    if x not in dist:
        return None
    best = dist[x]
    count = sum(1 for _ in _walk_paths(net, x, max_visits,
                                       lambda a, links: a in dist and links + dist[a] <= best))
    return DIndex(best, count)


def d_indices(net, max_visits=1):
    return {n: d_index(net, n, max_visits) for n in net.sorted_nodes}


def d_table(net, x, max_visits=None):
    """Number of paths from the truth node to ``x`` of each length (in nodes).

    ``max_visits`` defaults to the node count.
    """
    if max_visits is None:
        max_visits = len(net.nodes)
    reach = _min_links(net)
    table = {}
    for length, _ in _walk_paths(net, x, max_visits, lambda a, links: a in reach):
        table[length] = table.get(length, 0) + 1
    return dict(sorted(table.items()))


def compare_indices(left, right):
    """Lexicographic priority: fewer defeasible links first, then more paths."""
    if left is None or right is None:
        raise InputError("cannot compare an undefined index")
    if left.d1 != right.d1:
        return STRONGER if left.d1 < right.d1 else WEAKER
    if left.d2 != right.d2:
        return STRONGER if left.d2 > right.d2 else WEAKER
    return INDIFFERENT


def priority(net, x, y, max_visits=1):
    return compare_indices(d_index(net, x, max_visits), d_index(net, y, max_visits))


# --- case-table labellings ---------------------------------------------------

ILLEGITIMATE = "illegitimate"
UNCLASSIFIED = "unclassified"


def _roles(net, x):
    """Attackers of the pair (x, ~x), excluding the pair's own attacks."""
    nx = negate(x)
    roles = {"a": [], "b": [], "c": [], "d": []}
    for y, kind in net.attackers(nx):
        if y != x:
            roles["a" if kind == STRICT else "b"].append(y)
    for y, kind in net.attackers(x):
        if y != nx:
            roles["c" if kind == STRICT else "d"].append(y)
    return roles


def _prioritized(b, d, order):
    """Value of x once all strict attackers are out."""
    if order == WEAKER:
        return 1 - _prioritized(d, b, STRONGER)
    if order == STRONGER:
        if 1 in d:
            return 0
        if HALF in d:
            return HALF
        if 1 in b:
            return 1
        return HALF
    if 1 in b and 1 not in d:
        return 1
    if 1 in d and 1 not in b:
        return 0
    return HALF


def case_value(values, order):
    """Value the case table assigns to x.

    ``values`` maps each role to the values of its attackers; ``order``
    compares x with ~x and may be ``None`` when either index is undefined.
    Returns a value, ``ILLEGITIMATE`` or ``UNCLASSIFIED``.
    """
    a, b, c, d = (values[k] for k in "abcd")
    if 1 in a and 1 in c:
        return ILLEGITIMATE
    if 1 in a:
        return 1
    if 1 in c:
        return 0
    if HALF in a or HALF in c:
        return HALF
    if order is not None:
        return _prioritized(b, d, order)
    readings = {_prioritized(b, d, o) for o in (STRONGER, WEAKER, INDIFFERENT)}
    return readings.pop() if len(readings) == 1 else UNCLASSIFIED


def pair_orders(net, max_visits=1):
    """Priority of x over ~x for every pair, ``None`` when undefined."""
    out = {}
    for x in net.pairs():
        left, right = d_index(net, x, max_visits), d_index(net, negate(x), max_visits)
        out[x] = None if left is None or right is None else compare_indices(left, right)
    return out


def is_cg_labelling(net, lam, orders=None, report=None):
    """Check a total labelling against the case table."""
    orders = pair_orders(net) if orders is None else orders
    if lam[net.top] != 1:
        return False
    for x in net.pairs():
        if lam[x] + lam[negate(x)] != 1:
            return False
    for n in net.nodes:
        if n != net.top and negate(n) not in net.nodes:
            raise InputError(f"node {n!r} has no complementary node")
    for x in net.pairs():
        roles = _roles(net, x)
        values = {k: [lam[y] for y in ys] for k, ys in roles.items()}
        want = case_value(values, orders[x])
        if want in (ILLEGITIMATE, UNCLASSIFIED):
            if report is not None:
                report.setdefault(want, set()).add(x)
            return False
        if lam[x] != want:
            return False
    return True


def cg_labellings(net, max_visits=1, project=False, report=None):
    """All labellings that satisfy the case table, by generate and filter.

    ``report`` (a dict) collects the pairs that made some candidate
    illegitimate or fell outside the table.
    """
    pairs = net.pairs()
    limits.check("cg_pairs", len(pairs), "case-table enumeration")
    orders = pair_orders(net, max_visits)
    out = set()
    for combo in itertools.product(TRI_VALUES, repeat=len(pairs)):
        values = {net.top: 1}
        for x, v in zip(pairs, combo):
            values[x] = v
            values[negate(x)] = 1 - v
        lam = Labelling(values)
        if is_cg_labelling(net, lam, orders, report):
            out.add(lam.restrict(net.literals() + [net.top]) if project else lam)
    if report is not None:
        for key in (ILLEGITIMATE, UNCLASSIFIED):
            if key in report:
                report[key] = sorted(report[key])
    return tuple(sorted(out))


# --- propagation from the truth node -----------------------------------------

@dataclass(frozen=True)
class Step:
    node: str
    value: object
    d: int
    reason: str


@dataclass
class GroundResult:
    labelling: Labelling
    index: dict
    trace: list = field(default_factory=list)
    rejected: list = field(default_factory=list)
    ties: list = field(default_factory=list)

    def members(self):
        return self.labelling.members()


def ground_labelling(net, project=True):
    """Propagate values from the truth node, cheapest first.

    The value of a node carries an index: the number of defeasible links
    behind it.  An in node puts its targets out, adding one for a
    defeasible attack; an out node puts its partner in; a node whose
    attackers outside its pair are all out comes in.  A node keeps the
    value with the lower index, and a clash at the same index makes the
    pair undecided.  Pairs left with both members out, and nodes never
    reached, end undecided.
    """
    value, index = {}, {}
    trace, rejected, ties = [], [], []
    tied = set()
    queue = []
    counter = itertools.count()

    def push(node, v, d, reason):
        heapq.heappush(queue, (d, next(counter), node, v, reason))

    push(net.top, 1, 0, "truth")
    while queue:
        d, _, node, v, reason = heapq.heappop(queue)
        if node in tied:
            continue
        if node in value:
            if value[node] == v:
                continue
            if index[node] < d:
                rejected.append(Step(node, v, d, reason))
                continue
            ties.append(Step(node, v, d, reason))
            for n in (node, negate(node)):
                if n in net.nodes:
                    value[n], index[n] = HALF, d
                    tied.add(n)
            continue
        value[node], index[node] = v, d
        trace.append(Step(node, v, d, reason))
        if v == 1:
            for b, kind in [(b, k) for a, b, k in net.edges() if a == node]:
                push(b, 0, d + (1 if kind == DEFEASIBLE else 0), f"attacked by {node}")
        else:
            partner = negate(node)
            if partner in net.nodes:
                push(partner, 1, d, f"partner {node} out")
            for a, b, _ in net.edges():
                if a != node or b == negate(node) or b in value:
                    continue
                others = [y for y, _ in net.attackers(b) if y != negate(b)]
                if others and all(value.get(y) == 0 and y not in tied for y in others):
                    push(b, 1, max(index[y] for y in others), "all attackers out")
    for x in net.pairs():
        nx = negate(x)
        if value.get(x) == 0 and value.get(nx) == 0:
            value[x] = value[nx] = HALF
    lam = Labelling({n: value.get(n, HALF) for n in net.nodes})
    if project:
        lam = lam.restrict(net.literals() + [net.top])
    return GroundResult(lam, dict(sorted(index.items())), trace, rejected, ties)
