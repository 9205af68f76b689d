"""Monadic predicate logic without equality, and modal S5.

A closed monadic formula over predicates P1..Pn is determined, up to
equivalence, by the set of element types its models realise.  The normal
form is computed semantically: each non-empty type set is turned into its
canonical model (one element per type) and the formula is checked there.
"""

import itertools
import re
from dataclasses import dataclass, field

from . import kleene, limits
from .errors import ContractError, InputError, ParseError


class MFormula:
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Pred(MFormula):
    index: int
    term: str


@dataclass(frozen=True)
class MNot(MFormula):
    arg: MFormula


@dataclass(frozen=True)
class MAnd(MFormula):
    left: MFormula
    right: MFormula


@dataclass(frozen=True)
class MOr(MFormula):
    left: MFormula
    right: MFormula


@dataclass(frozen=True)
class MImp(MFormula):
    left: MFormula
    right: MFormula


@dataclass(frozen=True)
class Exists(MFormula):
    var: str
    body: MFormula


@dataclass(frozen=True)
class Forall(MFormula):
    var: str
    body: MFormula


@dataclass(frozen=True)
class MTop(MFormula):
    pass


@dataclass(frozen=True)
class MBot(MFormula):
    pass


# modal formulas reuse the connectives; Pred(i, "") is the letter p_i
@dataclass(frozen=True)
class Box(MFormula):
    body: MFormula


@dataclass(frozen=True)
class Diamond(MFormula):
    body: MFormula


def max_predicate(phi):
    if isinstance(phi, Pred):
        return phi.index
    if isinstance(phi, (MNot, Exists, Forall, Box, Diamond)):
        return max_predicate(phi.arg if isinstance(phi, MNot) else phi.body)
    if isinstance(phi, (MAnd, MOr, MImp)):
        return max(max_predicate(phi.left), max_predicate(phi.right))
    return 0


def free_terms(phi, bound=frozenset()):
    """Terms that are not bound by a quantifier (constants or free variables)."""
    if isinstance(phi, Pred):
        return set() if phi.term in bound or phi.term == "" else {phi.term}
    if isinstance(phi, MNot):
        return free_terms(phi.arg, bound)
    if isinstance(phi, (MAnd, MOr, MImp)):
        return free_terms(phi.left, bound) | free_terms(phi.right, bound)
    if isinstance(phi, (Exists, Forall)):
        return free_terms(phi.body, bound | {phi.var})
    if isinstance(phi, (Box, Diamond)):
        return free_terms(phi.body, bound)
    return set()


# --- models ----------------------------------------------------------------

@dataclass(frozen=True)
class FiniteModel:
    """Domain, one extension per predicate (index 1..n) and constant map."""

    domain: tuple
    extensions: tuple
    constant_map: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "extensions", tuple(frozenset(e) for e in self.extensions))
        object.__setattr__(self, "constant_map", dict(self.constant_map))
        if not self.domain:
            raise InputError("a model needs a non-empty domain")
        dom = set(self.domain)
        for ext in self.extensions:
            if not ext <= dom:
                raise InputError("predicate extension outside the domain")
        for c, e in self.constant_map.items():
            if e not in dom:
                raise InputError(f"constant {c} mapped outside the domain")

    @property
    def n(self):
        return len(self.extensions)

    def type_of(self, element):
        return tuple(int(element in ext) for ext in self.extensions)

    def types(self):
        return frozenset(self.type_of(d) for d in self.domain)


def eval_model(m, phi, env=None):
    """Classical truth of a closed formula (constants via the model's map)."""
    env = env or {}
    if isinstance(phi, Pred):
        if phi.index < 1 or phi.index > m.n:
            raise InputError(f"predicate P{phi.index} not interpreted by the model")
        if phi.term in env:
            elem = env[phi.term]
        elif phi.term in m.constant_map:
            elem = m.constant_map[phi.term]
        else:
            raise InputError(f"unmapped constant or free variable {phi.term!r}")
        return elem in m.extensions[phi.index - 1]
    if isinstance(phi, MNot):
        return not eval_model(m, phi.arg, env)
    if isinstance(phi, MAnd):
        return eval_model(m, phi.left, env) and eval_model(m, phi.right, env)
    if isinstance(phi, MOr):
        return eval_model(m, phi.left, env) or eval_model(m, phi.right, env)
    if isinstance(phi, MImp):
        return (not eval_model(m, phi.left, env)) or eval_model(m, phi.right, env)
    if isinstance(phi, Exists):
        return any(eval_model(m, phi.body, {**env, phi.var: d}) for d in m.domain)
    if isinstance(phi, Forall):
        return all(eval_model(m, phi.body, {**env, phi.var: d}) for d in m.domain)
    if isinstance(phi, MTop):
        return True
    if isinstance(phi, MBot):
        return False
    raise InputError(f"cannot evaluate {phi!r} in a first-order model")


def quotient(m):
    """Collapse elements of the same type; constants follow their element."""
    reps = {}
    for d in m.domain:
        reps.setdefault(m.type_of(d), d)
    domain = tuple(reps[t] for t in sorted(reps))
    exts = [frozenset(d for d in domain if d in ext) for ext in m.extensions]
    cmap = {c: reps[m.type_of(e)] for c, e in m.constant_map.items()}
    return FiniteModel(domain, exts, cmap)


def all_types(n):
    return [tuple(bits) for bits in itertools.product((0, 1), repeat=n)]


def all_type_sets(n):
    types = all_types(n)
    out = []
    for r in range(1, len(types) + 1):
        for combo in itertools.combinations(types, r):
            out.append(frozenset(combo))
    return out


def canonical_model(gamma, n, constants=None):
    """The model whose elements are exactly the types in gamma."""
    domain = tuple(sorted(gamma))
    exts = [frozenset(t for t in domain if t[i] == 1) for i in range(n)]
    return FiniteModel(domain, exts, constants or {})


def type_set_key(gamma):
    return (len(gamma), sorted(gamma))


def _check_n(n):
    limits.check("predicates", n, "monadic predicate count")


def normal_form(phi, n=None):
    """The type sets whose canonical models satisfy ``phi``."""
    n = max_predicate(phi) if n is None else n
    _check_n(n)
    if free_terms(phi):
        raise InputError(f"formula has free terms {sorted(free_terms(phi))}; use normal_form_with_constants")
    result = [g for g in all_type_sets(n) if eval_model(canonical_model(g, n), phi)]
    return sorted(result, key=type_set_key)


def normal_form_with_constants(phi, constants, n=None):
    """Pairs (type set, constant types) for which ``phi`` holds.

    The constant part maps each constant to the type of the element it
    names, which must belong to the type set.
    """
    n = max_predicate(phi) if n is None else n
    _check_n(n)
    constants = sorted(constants)
    extra = free_terms(phi) - set(constants)
    if extra:
        raise InputError(f"undeclared free terms {sorted(extra)}")
    out = []
    for gamma in all_type_sets(n):
        ordered = sorted(gamma)
        for choice in itertools.product(ordered, repeat=len(constants)):
            cmap = dict(zip(constants, choice))
            if eval_model(canonical_model(gamma, n, cmap), phi):
                out.append((gamma, tuple(choice)))
    return sorted(out, key=lambda p: (type_set_key(p[0]), p[1]))


def type_formula(eps, var="x"):
    """alpha_eps(x): the conjunction fixing every predicate of an element."""
    out = None
    for i, bit in enumerate(eps, 1):
        lit = Pred(i, var) if bit else MNot(Pred(i, var))
        out = lit if out is None else MAnd(out, lit)
    return out if out is not None else MTop()


def phi_gamma(gamma, n, var="x"):
    """The sentence saying that exactly the types in gamma are realised."""
    parts = []
    for eps in all_types(n):
        ex = Exists(var, type_formula(eps, var))
        parts.append(ex if eps in gamma else MNot(ex))
    out = parts[0]
    for p in parts[1:]:
        out = MAnd(out, p)
    return out


def normal_form_formula(gammas, n):
    """Disjunction of phi_gamma over the given type sets (MBot if none)."""
    if not gammas:
        return MBot()
    out = phi_gamma(gammas[0], n)
    for g in gammas[1:]:
        out = MOr(out, phi_gamma(g, n))
    return out


# --- propositional atoms -------------------------------------------------------

def type_atom(eps):
    return "q_" + "".join(str(b) for b in eps)


def constant_atom(index, constant):
    """Atom for P_index(constant)."""
    return f"P{index}({constant})"


def gamma_formula(gamma, n):
    """Phi_gamma with each existential replaced by its type atom."""
    return kleene.conj(
        kleene.Atom(type_atom(e)) if e in gamma else kleene.Not(kleene.Atom(type_atom(e)))
        for e in all_types(n)
    )


def constant_formula(constants, choice):
    parts = []
    for c, eps in zip(constants, choice):
        for i, bit in enumerate(eps, 1):
            a = kleene.Atom(constant_atom(i, c))
            parts.append(a if bit else kleene.Not(a))
    return kleene.conj(parts)


def propositionalize(nf, n, constants=()):
    """Turn a normal-form list into a propositional formula.

    ``nf`` is a list of type sets, or of (type set, constant types) pairs
    when constants are present.
    """
    constants = sorted(constants)
    disjuncts = []
    for item in nf:
        if constants:
            gamma, choice = item
            disjuncts.append(kleene.And(gamma_formula(gamma, n), constant_formula(constants, choice)))
        else:
            gamma = item[0] if isinstance(item, tuple) and item and isinstance(item[0], frozenset) else item
            disjuncts.append(gamma_formula(gamma, n))
    return kleene.disj(disjuncts)


def to_propositional(phi, n=None, constants=None):
    """Normal form followed by propositionalization."""
    if constants is None:
        constants = sorted(free_terms(phi))
    n = max(max_predicate(phi), 1) if n is None else n
    if constants:
        return propositionalize(normal_form_with_constants(phi, constants, n), n, constants)
    return propositionalize(normal_form(phi, n), n)


def nonempty_constraint(n):
    """Disjunction of all type atoms: the domain realises some type."""
    return kleene.disj(kleene.Atom(type_atom(e)) for e in all_types(n))


# --- S5 ------------------------------------------------------------------

def eval_s5(phi, worlds, actual):
    """Truth in the S5 model whose worlds are the valuations in ``worlds``."""
    if isinstance(phi, Pred):
        return actual[phi.index - 1] == 1
    if isinstance(phi, MNot):
        return not eval_s5(phi.arg, worlds, actual)
    if isinstance(phi, MAnd):
        return eval_s5(phi.left, worlds, actual) and eval_s5(phi.right, worlds, actual)
    if isinstance(phi, MOr):
        return eval_s5(phi.left, worlds, actual) or eval_s5(phi.right, worlds, actual)
    if isinstance(phi, MImp):
        return (not eval_s5(phi.left, worlds, actual)) or eval_s5(phi.right, worlds, actual)
    if isinstance(phi, Diamond):
        return any(eval_s5(phi.body, worlds, w) for w in worlds)
    if isinstance(phi, Box):
        return all(eval_s5(phi.body, worlds, w) for w in worlds)
    if isinstance(phi, MTop):
        return True
    if isinstance(phi, MBot):
        return False
    raise InputError(f"not an S5 formula: {phi!r}")


def s5_normal_form(phi, n=None):
    """Pairs (actual world, world set) satisfying ``phi``."""
    n = max(max_predicate(phi), 1) if n is None else n
    _check_n(n)
    out = []
    for gamma in all_type_sets(n):
        for eps in sorted(gamma):
            if eps not in gamma:
                raise ContractError("actual world outside its world set")
            if eval_s5(phi, gamma, eps):
                out.append((eps, gamma))
    return sorted(out, key=lambda p: (type_set_key(p[1]), p[0]))


def actual_atom(i):
    return f"p{i}"


def s5_propositionalize(nf, n):
    """Actual-world letters p_i plus world-type atoms q_eps."""
    disjuncts = []
    for eps, gamma in nf:
        lits = [kleene.Atom(actual_atom(i)) if b else kleene.Not(kleene.Atom(actual_atom(i)))
                for i, b in enumerate(eps, 1)]
        disjuncts.append(kleene.And(kleene.conj(lits), gamma_formula(gamma, n)))
    return kleene.disj(disjuncts)


# --- text syntax -----------------------------------------------------------------

_TOK = re.compile(
    r"\s*(?:(?P<q>[EA])\s+(?P<var>[a-z][A-Za-z0-9_]*)\s*\.|(?P<box>□|\[\])|(?P<dia>◇|<>)"
    r"|(?P<imp>->|→)|(?P<and>&|∧)|(?P<or>\||∨)|(?P<not>¬|~|!)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<top>⊤)|(?P<bot>⊥)"
    r"|(?P<pred>P(?P<idx>\d+)\s*\(\s*(?P<term>[a-z][A-Za-z0-9_]*)\s*\))"
    r"|(?P<letter>p(?P<lidx>\d+)))"
)


def _tokens(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos + 1}: {text[pos:pos + 10]!r}")
        if m.group("q"):
            out.append(("quant", (m.group("q"), m.group("var"))))
        elif m.group("pred"):
            out.append(("atom", Pred(int(m.group("idx")), m.group("term"))))
        elif m.group("letter"):
            out.append(("atom", Pred(int(m.group("lidx")), "")))
        else:
            kind = next(k for k in ("box", "dia", "imp", "and", "or", "not", "lp", "rp", "top", "bot") if m.group(k))
            out.append((kind, None))
        pos = m.end()
    return out


class _MParser:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self):
        self.i += 1
        return self.toks[self.i - 1]

    def parse(self):
        f = self.imp()
        if self.i != len(self.toks):
            raise ParseError("trailing input in formula")
        return f

    def imp(self):
        left = self.disj()
        if self.peek() == "imp":
            self.next()
            return MImp(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "or":
            self.next()
            left = MOr(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "and":
            self.next()
            left = MAnd(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()
        if kind is None:
            raise ParseError("unexpected end of formula")
        if kind == "not":
            self.next()
            return MNot(self.unary())
        if kind == "quant":
            _, (q, var) = self.next()
            body = self.unary()
            return Exists(var, body) if q == "E" else Forall(var, body)
        if kind == "box":
            self.next()
            return Box(self.unary())
        if kind == "dia":
            self.next()
            return Diamond(self.unary())
        if kind == "lp":
            self.next()
            f = self.imp()
            if self.peek() != "rp":
                raise ParseError("missing ')'")
            self.next()
            return f
        if kind == "top":
            self.next()
            return MTop()
        if kind == "bot":
            self.next()
            return MBot()
        if kind == "atom":
            return self.next()[1]
        raise ParseError(f"unexpected token {kind}")


def parse_monadic(text):
    """Parse e.g. ``E x. P1(x) & ~P1(d)``; a quantifier scopes over one unary
    formula, so write ``E x. (P1(x) | P2(x))`` for wider bodies."""
    if not text.strip():
        raise ParseError("empty formula")
    return _MParser(_tokens(text)).parse()


def render(phi):
    if isinstance(phi, Pred):
        return f"P{phi.index}({phi.term})" if phi.term else f"p{phi.index}"
    if isinstance(phi, MNot):
        return "¬" + _wrap(phi.arg)
    if isinstance(phi, Exists):
        return f"∃{phi.var}" + _wrap(phi.body)
    if isinstance(phi, Forall):
        return f"∀{phi.var}" + _wrap(phi.body)
    if isinstance(phi, Box):
        return "□" + _wrap(phi.body)
    if isinstance(phi, Diamond):
        return "◇" + _wrap(phi.body)
    if isinstance(phi, MTop):
        return "⊤"
    if isinstance(phi, MBot):
        return "⊥"
    sym = {MAnd: " ∧ ", MOr: " ∨ ", MImp: " → "}[type(phi)]
    return _wrap(phi.left) + sym + _wrap(phi.right)


def _wrap(phi):
    text = render(phi)
    if isinstance(phi, (MAnd, MOr, MImp)):
        return f"({text})"
    return text
