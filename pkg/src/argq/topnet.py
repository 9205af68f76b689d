"""Networks with a truth node and the four ways of giving them semantics."""

from dataclasses import dataclass

from .errors import InputError
from .frames import ArgFrame, Labelling, complete_labellings, fresh_name, scc_levels
from .values import HALF

TOP = "TOP"


@dataclass(frozen=True)
class TopNet:
    frame: ArgFrame
    top: str = TOP

    def __post_init__(self):
        if self.top not in self.frame.nodes:
            raise InputError(f"truth node {self.top!r} is not in the frame")
        if (self.top, self.top) in self.frame.attacks:
            raise InputError("the truth node may not attack itself")

    @classmethod
    def build(cls, attacks=(), nodes=(), top=TOP):
        return cls(ArgFrame.build(set(nodes) | {top}, attacks), top)

    def top_attackers(self):
        return self.frame.attackers[self.top]


@dataclass(frozen=True)
class Policy:
    """``give_up_on_in_attacker`` True is the strict reading of step 5."""

    give_up_on_in_attacker: bool = False


STRICT = Policy(True)
LENIENT = Policy(False)


def policy_named(name):
    if name == "strict":
        return STRICT
    if name == "lenient":
        return LENIENT
    raise InputError(f"unknown policy {name!r}")


def _restrict(labs, project):
    if project is None:
        return tuple(labs)
    return tuple(sorted({l.restrict(project) for l in labs}))


def option_i_extensions(net, project=None):
    """Complete labellings that put the truth node in."""
    return complete_labellings(net.frame, fixed={net.top: 1}, project=project)


def option_ii_extensions(net, project=None):
    """Every attacker of the truth node is attacked back by it."""
    back = {(net.top, z) for z in net.top_attackers()}
    frame = net.frame.with_attacks(added=back)
    return complete_labellings(frame, fixed={net.top: 1}, project=project)


def star_network(net):
    """Replace the truth node by a fresh node attacking its whole neighbourhood."""
    frame = net.frame
    star = fresh_name("STAR", frame.nodes)
    touched = {y for (a, y) in frame.attacks if a == net.top} | set(net.top_attackers())
    touched.discard(net.top)
    keep = frame.nodes - {net.top}
    attacks = {(a, b) for a, b in frame.attacks if a != net.top and b != net.top}
    attacks |= {(star, y) for y in touched}
    return ArgFrame.build(keep | {star}, attacks), star


def option_iii_extensions(net, project=None):
    """Extensions of the star network, read back with the truth node in."""
    frame, star = star_network(net)
    out = set()
    for lab in complete_labellings(frame):
        values = {k: v for k, v in lab.items() if k != star}
        values[net.top] = 1
        out.add(Labelling(values))
    return _restrict(sorted(out), project)


def _neutralized(net):
    """Step 4: a fresh unattacked node takes over the truth node's attacks."""
    frame = net.frame
    outgoing = {(a, b) for a, b in frame.attacks if a == net.top}
    if not outgoing:
        return frame, None
    inf = fresh_name("INF", frame.nodes)
    attacks = (set(frame.attacks) - outgoing) | {(inf, b) for _, b in outgoing}
    return ArgFrame.build(frame.nodes | {inf}, attacks), inf


def option_iv_extensions(net, policy=LENIENT, project=None, report=None):
    """Maximal non-toxic extensions.

    If some complete labelling puts the truth node in, those are the
    answer.  Otherwise the truth node's outgoing attacks are handed to a
    fresh unattacked node, every complete labelling of the result becomes a
    candidate, and the attacks on the truth node from its undecided (and,
    under the lenient policy, its in) attackers are disconnected.  Winners
    disconnect the fewest attackers; ties go to the candidate whose
    disconnected attackers reach the highest maximal level.

    ``project`` restricts the work and the output to some nodes; the truth
    node's attackers are then added internally because the choice of
    winners depends on them.  ``report`` (a dict) receives the step taken
    and, for candidates, the disconnected attacker sets.
    """
    top = net.top
    step3 = option_i_extensions(net, project)
    if step3:
        if report is not None:
            report["step"] = "truth"
        return step3
    frame, inf = _neutralized(net)
    attackers = tuple(sorted(net.top_attackers()))
    if project is None:
        inner = None
    else:
        inner = sorted(set(project) | set(attackers) | {top})
    levels = scc_levels(frame)
    candidates = []
    for lab in complete_labellings(frame, project=inner):
        ones = [y for y in attackers if lab[y] == 1]
        halves = [y for y in attackers if lab[y] == HALF]
        if policy.give_up_on_in_attacker and ones:
            continue
        cut = tuple(sorted(halves + ones))
        height = max((levels[y].n for y in cut), default=0)
        candidates.append(((len(cut), -height), cut, lab))
    if report is not None:
        report["step"] = "intervention"
        report["candidates"] = [(cut, lab) for _, cut, lab in candidates]
    if not candidates:
        return ()
    best = min(c[0] for c in candidates)
    out = set()
    for key, cut, lab in candidates:
        if key != best:
            continue
        values = {k: v for k, v in lab.items() if k != inf}
        values[top] = 1
        out.add(Labelling(values))
    if report is not None:
        report["winners"] = sorted({c[1] for c in candidates if c[0] == best})
    return _restrict(sorted(out), project)


def extensions(net, option, policy=LENIENT, project=None):
    option = str(option).lower()
    if option in ("i", "1"):
        return option_i_extensions(net, project)
    if option in ("ii", "2"):
        return option_ii_extensions(net, project)
    if option in ("iii", "3"):
        return option_iii_extensions(net, project)
    if option in ("iv", "4"):
        return option_iv_extensions(net, policy, project)
    raise InputError(f"unknown option {option!r}")


def intervene(frame, node, target, top=TOP):
    """Force ``node`` out, undecided or in with a fresh helper node.

    Out and undecided return an ``ArgFrame``; in needs the truth node and
    returns a ``TopNet``.
    """
    if node not in frame.nodes:
        raise InputError(f"unknown node {node!r}")
    helper = fresh_name(f"{node}.force", frame.nodes)
    if target == 0:
        return ArgFrame.build(frame.nodes | {helper}, set(frame.attacks) | {(helper, node)})
    if target == HALF:
        return ArgFrame.build(frame.nodes | {helper},
                              set(frame.attacks) | {(helper, node), (helper, helper)})
    if target == 1:
        nodes = frame.nodes | {helper, top}
        attacks = set(frame.attacks) | {(node, helper), (helper, top)}
        return TopNet(ArgFrame.build(nodes, attacks), top)
    raise InputError(f"bad target value {target!r}")


def parse_topnet(text):
    from .errors import ParseError
    from .frames import check_user_name, parse_frame

    lines = []
    top = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("top "):
            top = line.split()[1]
            continue
        lines.append(raw)
    frame = parse_frame("\n".join(lines), allow_reserved=True)
    if top is None:
        top = TOP
    for n in frame.nodes:
        if n != top:
            try:
                check_user_name(n)
            except InputError as exc:
                raise ParseError(str(exc)) from None
    if top not in frame.nodes:
        frame = frame.with_nodes({top})
    return TopNet(frame, top)
