"""Constraint propagation search for complete labellings.

A labelling is complete exactly when every node satisfies
``value(x) = 1 - max(value(y) for y attacking x)`` with the maximum of no
attackers taken as 0.  The solver keeps a bitmask domain per node (bit 0 for
0, bit 1 for 1/2, bit 2 for 1) and enforces that equation by propagation
before each branching step.  It can enumerate the distinct restrictions of
the complete labellings to a chosen subset of nodes, checking that each
restriction extends to a full labelling; this is what makes large generated
networks tractable when only a handful of nodes matter.
"""

from .values import HALF

LEVEL_VALUE = (0, HALF, 1)
FULL = 0b111
_LOW = [None] + [min(i for i in range(3) if m >> i & 1) for m in range(1, 8)]
_HIGH = [None] + [max(i for i in range(3) if m >> i & 1) for m in range(1, 8)]
_SIZE = [bin(m).count("1") for m in range(8)]
# masks of levels <= k and >= k
_LE = (0b001, 0b011, 0b111)
_GE = (0b111, 0b110, 0b100)


def _reflect(mask):
    """Swap bits 0 and 2: the mask of ``2 - level`` for each level in mask."""
    return (mask & 0b010) | (mask >> 2 & 1) | ((mask & 1) << 2)


_REFLECT = [_reflect(m) for m in range(8)]


def mask_of(value):
    if value == 0:
        return 0b001
    if value == 1:
        return 0b100
    return 0b010


class LabellingSolver:
    """Search engine over a fixed attack graph.

    ``nodes`` is a sequence of names and ``attacks`` an iterable of
    ``(attacker, target)`` pairs.  Instances are reusable and keep no search
    state between calls.
    """

    def __init__(self, nodes, attacks):
        self.names = list(nodes)
        self.index = {n: i for i, n in enumerate(self.names)}
        size = len(self.names)
        self.attackers = [[] for _ in range(size)]
        self.targets = [[] for _ in range(size)]
        for a, b in attacks:
            ia, ib = self.index[a], self.index[b]
            self.attackers[ib].append(ia)
            self.targets[ia].append(ib)
        self.degree = [len(self.attackers[i]) + len(self.targets[i]) for i in range(size)]

    def initial(self, fixed=None):
        dom = [FULL] * len(self.names)
        for name, allowed in (fixed or {}).items():
            if isinstance(allowed, (set, frozenset, tuple, list)):
                m = 0
                for v in allowed:
                    m |= mask_of(v)
            else:
                m = mask_of(allowed)
            dom[self.index[name]] &= m
            if dom[self.index[name]] == 0:
                return None
        if not self.propagate(dom, range(len(dom))):
            return None
        return dom

    def propagate(self, dom, start):
        attackers, targets = self.attackers, self.targets
        low, high, reflect, le, ge = _LOW, _HIGH, _REFLECT, _LE, _GE
        pending = set(start)
        queue = list(pending)
        while queue:
            x = queue.pop()
            pending.discard(x)
            atts = attackers[x]
            changed = []
            if not atts:
                new = dom[x] & 0b100
                if new == 0:
                    return False
                if new != dom[x]:
                    dom[x] = new
                    changed.append(x)
            else:
                lo = 0
                union = 0
                for y in atts:
                    d = dom[y]
                    if low[d] > lo:
                        lo = low[d]
                    union |= d
                possible_max = union & ge[lo]
                if possible_max == 0:
                    return False
                new = dom[x] & reflect[possible_max]
                if new == 0:
                    return False
                if new != dom[x]:
                    dom[x] = new
                    changed.append(x)
                allowed_max = reflect[new] & possible_max
                top = high[allowed_max]
                bottom = low[allowed_max]
                keep = le[top]
                support = None
                count = 0
                for y in atts:
                    d = dom[y]
                    nd = d & keep
                    if nd == 0:
                        return False
                    if nd != d:
                        dom[y] = nd
                        changed.append(y)
                    if high[nd] >= bottom:
                        count += 1
                        support = y
                if count == 0:
                    return False
                if count == 1 and bottom > 0:
                    d = dom[support]
                    nd = d & ge[bottom]
                    if nd == 0:
                        return False
                    if nd != d:
                        dom[support] = nd
                        changed.append(support)
            for n in changed:
                if n not in pending:
                    pending.add(n)
                    queue.append(n)
                for t in targets[n]:
                    if t not in pending:
                        pending.add(t)
                        queue.append(t)
        return True

    def _pick(self, dom, candidates):
        best = None
        best_key = None
        for i in candidates:
            s = _SIZE[dom[i]]
            if s > 1:
                key = (s, -self.degree[i])
                if best_key is None or key < best_key:
                    best, best_key = i, key
        return best

    def _branch(self, dom, var, order):
        for level in order:
            bit = 1 << level
            if dom[var] & bit:
                nd = list(dom)
                nd[var] = bit
                if self.propagate(nd, [var, *self.targets[var]]):
                    yield nd

    def complete(self, dom):
        """Return one fully decided domain vector extending ``dom`` or None."""
        everything = range(len(dom))
        stack = [dom]
        while stack:
            d = stack.pop()
            var = self._pick(d, everything)
            if var is None:
                return d
            # the undecided value is tried first: it is closest to grounded
            children = list(self._branch(d, var, (1, 0, 2)))
            stack.extend(reversed(children))
        return None

    def search(self, fixed=None, project=None):
        """Yield domain vectors, one per distinct restriction to ``project``.

        With ``project`` None every complete labelling is produced.  Each
        yielded vector is fully decided and witnesses its restriction.
        """
        dom = self.initial(fixed)
        if dom is None:
            return
        if project is None:
            proj = list(range(len(dom)))
        else:
            proj = [self.index[n] for n in project]
        stack = [dom]
        while stack:
            d = stack.pop()
            var = self._pick(d, proj)
            if var is None:
                full = self.complete(d)
                if full is not None:
                    yield full
                continue
            children = list(self._branch(d, var, (0, 1, 2)))
            stack.extend(reversed(children))

    def labellings(self, fixed=None, project=None):
        names = self.names if project is None else list(project)
        idx = [self.index[n] for n in names]
        for d in self.search(fixed, project):
            yield {names[k]: LEVEL_VALUE[_LOW[d[i]]] for k, i in enumerate(idx)}

    def exists(self, fixed=None):
        dom = self.initial(fixed)
        return dom is not None and self.complete(dom) is not None
