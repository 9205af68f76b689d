"""Three-valued Kleene propositional logic.

Formulas are small immutable trees.  Negation is ``1 - v``, conjunction
``min``, disjunction ``max`` and implication ``max(1 - p, q)``.
"""

import itertools
import re
from dataclasses import dataclass

from . import limits
from .errors import InputError, ParseError
from .values import HALF, TRI_VALUES, normalize


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


TOP = Top()
BOT = Bot()


def conj(parts):
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts):
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def atoms(phi):
    found = set()
    stack = [phi]
    while stack:
        f = stack.pop()
        if isinstance(f, Atom):
            found.add(f.name)
        elif isinstance(f, Not):
            stack.append(f.arg)
        elif isinstance(f, (And, Or, Imp)):
            stack.extend((f.left, f.right))
    return frozenset(found)


def depth(phi):
    if isinstance(phi, (Atom, Top, Bot)):
        return 0
    if isinstance(phi, Not):
        return 1 + depth(phi.arg)
    return 1 + max(depth(phi.left), depth(phi.right))


def eval_formula(phi, v):
    """Kleene value of ``phi`` under valuation ``v`` (a mapping)."""
    if isinstance(phi, Atom):
        try:
            return normalize(v[phi.name])
        except KeyError:
            raise InputError(f"valuation does not cover atom {phi.name!r}") from None
    if isinstance(phi, Not):
        return normalize(1 - eval_formula(phi.arg, v))
    if isinstance(phi, And):
        return min(eval_formula(phi.left, v), eval_formula(phi.right, v))
    if isinstance(phi, Or):
        return max(eval_formula(phi.left, v), eval_formula(phi.right, v))
    if isinstance(phi, Imp):
        return max(normalize(1 - eval_formula(phi.left, v)), eval_formula(phi.right, v))
    if isinstance(phi, Top):
        return 1
    if isinstance(phi, Bot):
        return 0
    raise InputError(f"not a formula: {phi!r}")


# 'eval' mirrors the operation name used throughout the docs
eval = eval_formula  # noqa: A001


def substitute(phi, mapping):
    """Replace atoms by formulas; atoms missing from mapping stay put."""
    if isinstance(phi, Atom):
        return mapping.get(phi.name, phi)
    if isinstance(phi, Not):
        return Not(substitute(phi.arg, mapping))
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    return phi


# --- valuations -----------------------------------------------------------

def enumerate_valuations(names, domain=TRI_VALUES):
    """All valuations over ``names`` in canonical order (names sorted)."""
    names = sorted(names)
    for combo in itertools.product(domain, repeat=len(names)):
        yield dict(zip(names, combo))


def valuation_key(v):
    return tuple(sorted(v.items()))


TWO_VALUED = "two_valued"
THREE_VALUED = "three_valued"


def _domain(domain):
    if domain in (TWO_VALUED, 2):
        return (0, 1)
    if domain in (THREE_VALUED, 3):
        return TRI_VALUES
    raise InputError(f"unknown domain {domain!r}")


def solve_equations(system, domain=THREE_VALUED):
    """All valuations making both sides of every equation equal."""
    system = list(system)
    names = set()
    for lhs, rhs in system:
        names |= atoms(lhs) | atoms(rhs)
    out = []
    for v in enumerate_valuations(names, _domain(domain)):
        if all(eval_formula(l, v) == eval_formula(r, v) for l, r in system):
            out.append(v)
    return out


def equation_system(frame, inst):
    """Eq(x): I(x) == AND of not I(y) over attackers y (TOP if unattacked)."""
    system = []
    for x in frame.sorted_nodes:
        atts = frame.attackers[x]
        rhs = conj(Not(inst[y]) for y in atts) if atts else TOP
        system.append((inst[x], rhs))
    return system


def equational_extensions(frame, inst):
    """Solutions of the equational system of an instantiated frame."""
    if set(inst) != set(frame.nodes):
        raise InputError("instantiation must cover every node")
    return solve_equations(equation_system(frame, inst), THREE_VALUED)


def adf_models(conditions):
    """Two-valued models of ``s == C_s`` over the nodes."""
    system = [(Atom(s), c) for s, c in sorted(conditions.items())]
    return solve_equations(system, TWO_VALUED)


def di_models(inst, conditions, domain=THREE_VALUED):
    """Valuations solving I(s) = C_s with each node y replaced by I(y)."""
    system = []
    for s in sorted(conditions):
        system.append((inst[s], substitute(conditions[s], inst)))
    return solve_equations(system, domain)


# --- disjunctive normal form ---------------------------------------------

@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    positive: bool = True

    def negated(self):
        return Literal(self.atom, not self.positive)

    def formula(self):
        return Atom(self.atom) if self.positive else Not(Atom(self.atom))

    def __str__(self):
        return self.atom if self.positive else "¬" + self.atom


def _lit_key(l):
    return (l.atom, not l.positive)


class Dnf(tuple):
    """Tuple of conjuncts; each conjunct is a sorted tuple of literals.

    The empty tuple denotes falsity, a tuple holding the empty conjunct
    denotes truth.
    """

    def formula(self):
        return disj(conj(l.formula() for l in c) for c in self)

    def is_top(self):
        return () in self

    def is_bot(self):
        return len(self) == 0

    def __str__(self):
        if not self:
            return "⊥"
        parts = []
        for c in self:
            if not c:
                parts.append("⊤")
            elif len(c) == 1:
                parts.append(str(c[0]))
            else:
                parts.append("(" + " ∧ ".join(str(l) for l in c) + ")")
        return " ∨ ".join(parts)


def _nnf(phi, positive=True):
    """Push negations to atoms; returns a nested ('and'|'or'|lit|const) tree."""
    if isinstance(phi, Atom):
        return ("lit", Literal(phi.name, positive))
    if isinstance(phi, Not):
        return _nnf(phi.arg, not positive)
    if isinstance(phi, Imp):
        return _nnf(Or(Not(phi.left), phi.right), positive)
    if isinstance(phi, Top):
        return ("const", positive)
    if isinstance(phi, Bot):
        return ("const", not positive)
    if isinstance(phi, And):
        op = "and" if positive else "or"
    elif isinstance(phi, Or):
        op = "or" if positive else "and"
    else:
        raise InputError(f"not a formula: {phi!r}")
    return (op, _nnf(phi.left, positive), _nnf(phi.right, positive))


def _dnf_sets(tree, keep_contradictions):
    kind = tree[0]
    if kind == "lit":
        return {frozenset([tree[1]])}
    if kind == "const":
        return {frozenset()} if tree[1] else set()
    left = _dnf_sets(tree[1], keep_contradictions)
    right = _dnf_sets(tree[2], keep_contradictions)
    if kind == "or":
        out = left | right
    else:
        out = set()
        for a in left:
            for b in right:
                c = a | b
                if not keep_contradictions and any(l.negated() in c for l in c):
                    continue
                out.add(c)
    return _absorb(out)


def _absorb(conjuncts):
    """Drop conjuncts that strictly contain another conjunct."""
    ordered = sorted(conjuncts, key=len)
    kept = []
    for c in ordered:
        if not any(k <= c for k in kept):
            kept.append(c)
    return set(kept)


def to_dnf(phi, keep_contradictions=False):
    """Disjunctive normal form with canonical literal and conjunct order.

    By default conjuncts containing complementary literals are dropped,
    which preserves classical but not three-valued equivalence.  With
    ``keep_contradictions=True`` they are kept; every remaining step
    (De Morgan, distribution, absorption) is valid in Kleene logic, so the
    result then has the same three-valued truth table as ``phi``.
    """
    names = atoms(phi)
    limits.check("dnf_atoms", len(names), "DNF conversion")
    sets = _dnf_sets(_nnf(phi), keep_contradictions)
    conjuncts = sorted(
        (tuple(sorted(c, key=_lit_key)) for c in sets),
        key=lambda c: (len(c), [_lit_key(l) for l in c]),
    )
    return Dnf(conjuncts)


def full_dnf(phi, over=None):
    """Classical DNF in which every conjunct mentions every atom."""
    names = sorted(over if over is not None else atoms(phi))
    limits.check("dnf_atoms", len(names), "DNF conversion")
    out = []
    for bits in itertools.product((1, 0), repeat=len(names)):
        v = dict(zip(names, bits))
        if eval_formula(phi, v) == 1:
            out.append(tuple(Literal(n, bool(b)) for n, b in zip(names, bits)))
    return Dnf(out)


# --- text syntax ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<imp>->|→|=>)|(?P<and>&|∧|/\\)|(?P<or>\||∨|\\/)|(?P<not>¬|~|!)"
    r"|(?P<lp>\()|(?P<rp>\))|(?P<top>⊤)|(?P<bot>⊥)"
    r"|(?P<atom>[A-Za-z][A-Za-z0-9_]*(?:\([A-Za-z0-9_,]*\))?)"
    r")"
)
_KEYWORDS = {"TRUE": "top", "FALSE": "bot", "not": "not", "and": "and", "or": "or"}


def tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at column {pos + 1}")
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "atom" and value in _KEYWORDS:
            kind = _KEYWORDS[value]
        out.append((kind, value))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, atom_factory):
        self.tokens = tokens
        self.i = 0
        self.atom_factory = atom_factory

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind):
        if self.peek() != kind:
            got = self.tokens[self.i][1] if self.i < len(self.tokens) else "end of input"
            raise ParseError(f"expected {kind}, found {got!r}")
        self.i += 1
        return self.tokens[self.i - 1][1]

    def parse(self):
        phi = self.implication()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input {self.tokens[self.i][1]!r}")
        return phi

    def implication(self):
        left = self.disjunction()
        if self.peek() == "imp":
            self.take("imp")
            return Imp(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "or":
            self.take("or")
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "and":
            self.take("and")
            left = And(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()
        if kind == "not":
            self.take("not")
            return Not(self.unary())
        if kind == "lp":
            self.take("lp")
            phi = self.implication()
            self.take("rp")
            return phi
        if kind == "top":
            self.take("top")
            return TOP
        if kind == "bot":
            self.take("bot")
            return BOT
        if kind == "atom":
            return self.atom_factory(self.take("atom"))
        got = self.tokens[self.i][1] if self.i < len(self.tokens) else "end of input"
        raise ParseError(f"unexpected {got!r}")


def parse_formula(text):
    """Parse infix syntax; precedence is not > and > or > implies."""
    if not text.strip():
        raise ParseError("empty formula")
    return _Parser(tokenize(text), Atom).parse()


def parse_equations(text):
    system = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("==")
        if not sep:
            raise ParseError("expected 'lhs == rhs'", lineno)
        try:
            system.append((parse_formula(lhs), parse_formula(rhs)))
        except ParseError as exc:
            raise ParseError(str(exc), lineno) from None
    return system


_PREC = {Imp: 1, Or: 2, And: 3, Not: 4}


def render(phi, parent=0):
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Top):
        return "⊤"
    if isinstance(phi, Bot):
        return "⊥"
    if isinstance(phi, Not):
        return "¬" + render(phi.arg, 4)
    prec = _PREC[type(phi)]
    sym = {And: " ∧ ", Or: " ∨ ", Imp: " → "}[type(phi)]
    if isinstance(phi, Imp):
        text = render(phi.left, prec + 1) + sym + render(phi.right, prec)
    else:
        text = render(phi.left, prec) + sym + render(phi.right, prec + 1)
    return f"({text})" if prec < parent else text


def show_valuation(v):
    parts = []
    for k in sorted(v):
        val = v[k]
        parts.append(f"{k}={'1/2' if val == HALF else val}")
    return "{" + ", ".join(parts) + "}"
