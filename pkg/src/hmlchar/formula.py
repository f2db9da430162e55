"""Modal formulae: AST, parsing, printing, fragments, negation, DNF, metrics and
equation systems.

Formula nodes are interned, so structurally equal formulae are the same object.
Equality and hashing are identity-based and cheap, which the rewriting
pipelines and memo tables rely on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .lts import deep


class FormulaError(ValueError):
    pass


class CyclicSystemError(FormulaError):
    pass


_TABLE: dict = {}


def _intern(cls, args):
    key = (cls,) + args
    obj = _TABLE.get(key)
    if obj is None:
        obj = object.__new__(cls)
        for name, value in zip(cls.__slots__, args):
            object.__setattr__(obj, name, value)
        obj = _TABLE.setdefault(key, obj)
    return obj


class Formula:
    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError("formulae are immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, s) for s in self.__slots__))

    def __repr__(self):
        return f"{type(self).__name__}({format_formula(self)!r})"

    def __str__(self):
        return format_formula(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Neg(self)


class Tt(Formula):
    __slots__ = ()

    def __new__(cls):
        return _intern(cls, ())


class Ff(Formula):
    __slots__ = ()

    def __new__(cls):
        return _intern(cls, ())


class Dia(Formula):
    __slots__ = ("a", "f")
    __match_args__ = ("a", "f")

    def __new__(cls, a: str, f: Formula):
        return _intern(cls, (a, f))


class Box(Formula):
    __slots__ = ("a", "f")
    __match_args__ = ("a", "f")

    def __new__(cls, a: str, f: Formula):
        return _intern(cls, (a, f))


class And(Formula):
    __slots__ = ("l", "r")
    __match_args__ = ("l", "r")

    def __new__(cls, l: Formula, r: Formula):
        return _intern(cls, (l, r))


class Or(Formula):
    __slots__ = ("l", "r")
    __match_args__ = ("l", "r")

    def __new__(cls, l: Formula, r: Formula):
        return _intern(cls, (l, r))


class Neg(Formula):
    __slots__ = ("f",)
    __match_args__ = ("f",)

    def __new__(cls, f: Formula):
        return _intern(cls, (f,))


class Var(Formula):
    """Reference to an equation variable; only appears inside equation systems."""

    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __new__(cls, name: str):
        return _intern(cls, (name,))


class Zero(Formula):
    """The deadlock formula: the conjunction of [a]ff over ``actions``."""

    __slots__ = ("actions",)
    __match_args__ = ("actions",)

    def __new__(cls, actions: Iterable[str]):
        return _intern(cls, (tuple(sorted(set(actions))),))


TT = Tt()
FF = Ff()


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is tt."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return TT if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is ff."""
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return FF if out is None else out


def zero_formula(alphabet: Iterable[str]) -> Formula:
    return conj(Box(a, FF) for a in sorted(set(alphabet)))


def children(f: Formula) -> tuple:
    if isinstance(f, (Dia, Box)):
        return (f.f,)
    if isinstance(f, (And, Or)):
        return (f.l, f.r)
    if isinstance(f, Neg):
        return (f.f,)
    return ()


def flatten(f: Formula, cls) -> list[Formula]:
    """Operands of a maximal ``cls`` (And/Or) block, left to right."""
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, cls):
            stack.append(g.r)
            stack.append(g.l)
        else:
            out.append(g)
    return out


def subformulae(f: Formula) -> list[Formula]:
    """Distinct subformulae, children before parents."""
    seen = set()
    order = []
    stack = [(f, False)]
    while stack:
        g, done = stack.pop()
        if done:
            order.append(g)
            continue
        if g in seen:
            continue
        seen.add(g)
        stack.append((g, True))
        for c in reversed(children(g)):
            if c not in seen:
                stack.append((c, False))
    return order


def actions_in(f: Formula) -> set:
    out = set()
    for g in subformulae(f):
        if isinstance(g, (Dia, Box)):
            out.add(g.a)
        elif isinstance(g, Zero):
            out.update(g.actions)
    return out


def modal_depth(f: Formula) -> int:
    md = {}
    for g in subformulae(f):
        if isinstance(g, (Dia, Box)):
            md[g] = md[g.f] + 1
        elif isinstance(g, Zero):
            md[g] = 1 if g.actions else 0
        else:
            md[g] = max((md[c] for c in children(g)), default=0)
    return md[f]


def count_diamonds(f: Formula) -> int:
    """Number of diamond occurrences in the explicit tree."""
    cnt = {}
    for g in subformulae(f):
        own = 1 if isinstance(g, Dia) else 0
        cnt[g] = own + sum(cnt[c] for c in children(g))
    return cnt[f]


# ---------------------------------------------------------------- text


_TOKEN = re.compile(r"\s*(?:(<)\s*([A-Za-z][A-Za-z0-9_]*)\s*>|(\[)\s*([A-Za-z][A-Za-z0-9_]*)\s*\]|([A-Za-z][A-Za-z0-9_]*)|(0)|([!&|()~]))")


def _tokens(text: str):
    pos = 0
    out = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return out
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaError(f"unexpected character {text[pos]!r} at position {pos}")
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            out.append(("dia", m.group(2), start))
        elif m.group(3):
            out.append(("box", m.group(4), start))
        elif m.group(5):
            out.append(("id", m.group(5), start))
        elif m.group(6):
            out.append(("0", None, start))
        else:
            out.append((m.group(7), None, start))
        pos = m.end()


def parse_formula(text: str, alphabet: Iterable[str] | None = None, variables: bool = False) -> Formula:
    """Parse ``F ::= tt | ff | 0 | <a>F | [a]F | !F | F & F | F | F | (F)``.

    ``0`` expands to the conjunction of ``[a]ff`` over the alphabet, so it
    needs one.  With ``variables=True`` other identifiers become ``Var`` nodes.
    """
    acts = set(alphabet) if alphabet is not None else None
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None, len(text))

    def fail(msg):
        raise FormulaError(f"{msg} at position {peek()[2]}")

    def check_action(a, at):
        if acts is not None and a not in acts:
            raise FormulaError(f"unknown action {a!r} at position {at}")

    def atom():
        ops = []  # unary prefixes are collected iteratively so deep nesting does not recurse
        while peek()[0] in ("dia", "box", "!", "~"):
            kind, val, at = peek()
            if kind != "!" and kind != "~":
                check_action(val, at)
            ops.append((kind, val))
            advance()
        g = base()
        for kind, val in reversed(ops):
            g = Dia(val, g) if kind == "dia" else Box(val, g) if kind == "box" else Neg(g)
        return g

    def advance():
        nonlocal pos
        pos += 1

    def base():
        nonlocal pos
        kind, val, at = peek()
        if kind is None:
            fail("unexpected end of input")
        pos += 1
        if kind == "(":
            inner = disjunction()
            if peek()[0] != ")":
                fail("expected ')'")
            pos += 1
            return inner
        if kind == "0":
            if acts is None:
                raise FormulaError(f"'0' at position {at} needs an explicit alphabet")
            return zero_formula(acts)
        if kind == "id":
            if val == "tt":
                return TT
            if val == "ff":
                return FF
            if variables:
                return Var(val)
            raise FormulaError(f"unexpected identifier {val!r} at position {at}")
        pos -= 1
        fail(f"unexpected {kind!r}")

    def conjunction():
        nonlocal pos
        left = atom()
        while peek()[0] == "&":
            pos += 1
            left = And(left, atom())
        return left

    def disjunction():
        nonlocal pos
        left = conjunction()
        while peek()[0] == "|":
            pos += 1
            left = Or(left, conjunction())
        return left

    result = disjunction()
    if pos != len(toks):
        fail(f"trailing input {peek()[0]!r}")
    return result


_PREC = {Or: 1, And: 2}


def format_formula(f: Formula, ascii_only: bool = True) -> str:
    memo: dict = {}

    def prec(g):
        return _PREC.get(type(g), 3)

    for g in subformulae(f):  # children before parents
        if isinstance(g, Tt):
            s = "tt"
        elif isinstance(g, Ff):
            s = "ff"
        elif isinstance(g, Zero):
            s = "0"
        elif isinstance(g, Var):
            s = g.name
        elif isinstance(g, (Dia, Box, Neg)):
            inner = memo[g.f]
            if prec(g.f) < 3:
                inner = f"({inner})"
            s = f"<{g.a}>{inner}" if isinstance(g, Dia) else f"[{g.a}]{inner}" if isinstance(g, Box) else f"!{inner}"
        else:
            op = " & " if isinstance(g, And) else " | "
            p = prec(g)
            left = memo[g.l]
            right = memo[g.r]
            if prec(g.l) < p:
                left = f"({left})"
            if prec(g.r) <= p:
                right = f"({right})"
            s = left + op + right
        memo[g] = s
    return memo[f]


# ---------------------------------------------------------------- fragments


class Fragment(str, Enum):
    S = "S"
    CS = "CS"
    RS = "RS"
    TS = "TS"
    S2 = "2S"
    S3 = "3S"
    BS = "BS"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Fragment":
        for frag in cls:
            if frag.value.upper() == text.strip().upper():
                return frag
        raise FormulaError(f"unknown fragment {text!r}")


FRAGMENT_ORDER = (Fragment.S, Fragment.CS, Fragment.RS, Fragment.TS, Fragment.S2, Fragment.S3, Fragment.BS)


def _is_zero_block(f: Formula, alphabet) -> bool:
    if isinstance(f, Zero):
        return alphabet is None or set(f.actions) == set(alphabet)
    if alphabet is None or not isinstance(f, (And, Box)):
        return False
    leaves = flatten(f, And)
    if not all(isinstance(x, Box) and isinstance(x.f, Ff) for x in leaves):
        return False
    return {x.a for x in leaves} == set(alphabet)


@deep
def fragment_of(f: Formula, alphabet: Iterable[str] | None = None) -> frozenset:
    """Every fragment whose grammar generates ``f``.

    Deadlock subformulae count for CS when they are ``Zero`` nodes, or, given
    an alphabet, conjunction blocks of ``[a]ff`` covering it exactly.
    """
    alpha = tuple(alphabet) if alphabet is not None else None
    memo: dict = {}

    def classes(g) -> frozenset:
        if g in memo:
            return memo[g]
        F = Fragment
        if isinstance(g, (Tt, Ff)):
            res = set(FRAGMENT_ORDER)
            res.add("B")
        elif isinstance(g, Var):
            res = set()
        elif isinstance(g, Zero):
            res = {F.CS, F.RS, F.TS, F.S2, F.S3, F.BS, "B"}
            if alpha is not None and set(g.actions) != set(alpha):
                res.discard(F.CS)
        elif isinstance(g, Dia):
            c = classes(g.f)
            res = {x for x in FRAGMENT_ORDER if x in c}
        elif isinstance(g, Box):
            c = classes(g.f)
            res = set()
            if F.BS in c:
                res.add(F.BS)
            if isinstance(g.f, Ff):
                res |= {F.RS}
            if isinstance(g.f, Ff) or "TSBOX" in c:
                res |= {F.TS, "TSBOX"}
            if "B" in c:
                res |= {F.S2, F.S3, "B"}
            if _is_zero_block(g, alpha):
                res.add(F.CS)
        elif isinstance(g, Neg):
            c = classes(g.f)
            res = set()
            if F.BS in c:
                res.add(F.BS)
            if F.S in c:
                res |= {F.S2, F.S3}
            if F.S2 in c:
                res.add(F.S3)
        else:
            res = set(classes(g.l) & classes(g.r))
            res.discard("TSBOX")
            if isinstance(g, And) and _is_zero_block(g, alpha):
                res.add(F.CS)
        memo[g] = frozenset(res)
        return memo[g]

    for g in subformulae(f):
        classes(g)
    return frozenset(x for x in classes(f) if isinstance(x, Fragment))


def in_fragment(X: Fragment, f: Formula, alphabet=None) -> bool:
    return Fragment(X) in fragment_of(f, alphabet)


def smallest_fragment(f: Formula, alphabet=None) -> Fragment | None:
    frags = fragment_of(f, alphabet)
    for x in FRAGMENT_ORDER:
        if x in frags:
            return x
    return None


# ---------------------------------------------------------------- negation


@deep
def dual(f: Formula) -> Formula:
    """A negation-free formula satisfied exactly by the processes refuting ``f``."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            r = FF
        elif isinstance(g, Ff):
            r = TT
        elif isinstance(g, Dia):
            r = Box(g.a, memo[g.f])
        elif isinstance(g, Box):
            r = Dia(g.a, memo[g.f])
        elif isinstance(g, And):
            r = Or(memo[g.l], memo[g.r])
        elif isinstance(g, Or):
            r = And(memo[g.l], memo[g.r])
        elif isinstance(g, Neg):
            r = nnf(g.f)
        elif isinstance(g, Zero):
            r = disj(Dia(a, TT) for a in g.actions)
        else:
            raise FormulaError(f"cannot negate {g!r}")
        memo[g] = r
    return memo[f]


@deep
def nnf(f: Formula) -> Formula:
    """Push negations inward until none remain."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Neg):
            r = dual(memo[g.f])
        elif isinstance(g, Dia):
            r = Dia(g.a, memo[g.f])
        elif isinstance(g, Box):
            r = Box(g.a, memo[g.f])
        elif isinstance(g, And):
            r = And(memo[g.l], memo[g.r])
        elif isinstance(g, Or):
            r = Or(memo[g.l], memo[g.r])
        else:
            r = g
        memo[g] = r
    return memo[f]


@deep
def unfold_zero(f: Formula) -> Formula:
    """Replace every ``Zero`` node by its conjunction of boxes."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Zero):
            r = zero_formula(g.actions) if g.actions else TT
        else:
            r = _rebuild(g, memo)
        memo[g] = r
    return memo[f]


@deep
def fold_zero(f: Formula, alphabet: Iterable[str]) -> Formula:
    """Replace maximal ``[a]ff`` conjunction blocks covering ``alphabet`` by ``Zero``."""
    alpha = tuple(sorted(set(alphabet)))
    z = Zero(alpha)
    memo: dict = {}

    def go(g):
        if g in memo:
            return memo[g]
        if isinstance(g, Zero):
            r = z if set(g.actions) == set(alpha) else g
        elif _is_zero_block(g, alpha):
            r = z
        elif isinstance(g, And):
            r = And(go(g.l), go(g.r))
        elif isinstance(g, Or):
            r = Or(go(g.l), go(g.r))
        elif isinstance(g, Dia):
            r = Dia(g.a, go(g.f))
        elif isinstance(g, Box):
            r = Box(g.a, go(g.f))
        elif isinstance(g, Neg):
            r = Neg(go(g.f))
        else:
            r = g
        memo[g] = r
        return r

    for g in subformulae(f):
        go(g)
    return go(f)


def _rebuild(g: Formula, memo: dict) -> Formula:
    if isinstance(g, Dia):
        return Dia(g.a, memo[g.f])
    if isinstance(g, Box):
        return Box(g.a, memo[g.f])
    if isinstance(g, And):
        return And(memo[g.l], memo[g.r])
    if isinstance(g, Or):
        return Or(memo[g.l], memo[g.r])
    if isinstance(g, Neg):
        return Neg(memo[g.f])
    return g


@deep
def substitute(f: Formula, mapping: dict) -> Formula:
    """Replace subformulae (by identity) according to ``mapping``, outermost first."""
    memo: dict = {}

    def go(g):
        if g in mapping:
            return mapping[g]
        if g in memo:
            return memo[g]
        if isinstance(g, Dia):
            r = Dia(g.a, go(g.f))
        elif isinstance(g, Box):
            r = Box(g.a, go(g.f))
        elif isinstance(g, And):
            r = And(go(g.l), go(g.r))
        elif isinstance(g, Or):
            r = Or(go(g.l), go(g.r))
        elif isinstance(g, Neg):
            r = Neg(go(g.f))
        else:
            r = g
        memo[g] = r
        return r

    return go(f)


# ---------------------------------------------------------------- DNF


def dnf_disjuncts(f: Formula) -> Iterator[Formula]:
    """Lazily yield the disjuncts of the DNF of ``f``.

    Diamonds and boxes distribute over the disjuncts of their body, conjunction
    takes the cross product.  Negations and ``Zero`` are treated as atoms.
    """
    if isinstance(f, Or):
        yield from dnf_disjuncts(f.l)
        yield from dnf_disjuncts(f.r)
    elif isinstance(f, And):
        for left in dnf_disjuncts(f.l):
            for right in dnf_disjuncts(f.r):
                yield And(left, right)
    elif isinstance(f, Dia):
        for d in dnf_disjuncts(f.f):
            yield Dia(f.a, d)
    elif isinstance(f, Box):
        for d in dnf_disjuncts(f.f):
            yield Box(f.a, d)
    else:
        yield f


def dnf_count(f: Formula) -> int:
    """Number of disjuncts ``dnf_disjuncts`` will produce, without producing them."""
    cnt: dict = {}
    for g in subformulae(f):
        if isinstance(g, Or):
            cnt[g] = cnt[g.l] + cnt[g.r]
        elif isinstance(g, And):
            cnt[g] = cnt[g.l] * cnt[g.r]
        elif isinstance(g, (Dia, Box)):
            cnt[g] = cnt[g.f]
        else:
            cnt[g] = 1
    return cnt[f]


@deep
def to_dnf(f: Formula) -> Formula:
    return disj(dnf_disjuncts(f))


def is_disjunction_free(f: Formula) -> bool:
    return not any(isinstance(g, Or) for g in subformulae(f))


# ---------------------------------------------------------------- equation systems


@dataclass
class EquationSystem:
    """Acyclic system of equations ``Xi = F``; right-hand sides may mention ``Var``."""

    equations: list
    root: str
    alphabet: tuple | None = None

    def __post_init__(self):
        names = [v for v, _ in self.equations]
        if len(set(names)) != len(names):
            raise FormulaError("variable defined twice")
        defined = set(names)
        if self.root not in defined:
            raise FormulaError(f"root {self.root} is not defined")
        for _, rhs in self.equations:
            for g in subformulae(rhs):
                if isinstance(g, Var) and g.name not in defined:
                    raise FormulaError(f"undefined variable {g.name}")
        self._check_acyclic()

    def as_dict(self) -> dict:
        return dict(self.equations)

    def _check_acyclic(self):
        eqs = self.as_dict()
        state: dict = {}
        for start in eqs:
            if start in state:
                continue
            stack = [(start, iter(_vars(eqs[start])))]
            state[start] = 1
            while stack:
                v, it = stack[-1]
                w = next(it, None)
                if w is None:
                    state[v] = 2
                    stack.pop()
                elif state.get(w) == 1:
                    raise CyclicSystemError(f"equation system is cyclic through {w}")
                elif w not in state:
                    state[w] = 1
                    stack.append((w, iter(_vars(eqs[w]))))

    def topological(self) -> list[str]:
        """Variables ordered so that each comes after everything it references."""
        eqs = self.as_dict()
        order: list = []
        seen: set = set()

        def visit(v):
            stack = [(v, iter(_vars(eqs[v])))]
            seen.add(v)
            while stack:
                x, it = stack[-1]
                w = next(it, None)
                if w is None:
                    order.append(x)
                    stack.pop()
                elif w not in seen:
                    seen.add(w)
                    stack.append((w, iter(_vars(eqs[w]))))

        for v, _ in self.equations:
            if v not in seen:
                visit(v)
        return order

    def __str__(self):
        return format_system(self)


def _vars(f: Formula) -> list[str]:
    return sorted({g.name for g in subformulae(f) if isinstance(g, Var)})


@deep
def es_expand(es: EquationSystem) -> Formula:
    eqs = es.as_dict()
    closed: dict = {}
    for v in es.topological():
        closed[Var(v)] = substitute(eqs[v], closed)
    return closed[Var(es.root)]


@deep
def es_build(f: Formula, alphabet=None) -> EquationSystem:
    """Declarative form by value numbering: shared compound subformulae get a variable.

    A subformula is shared when the formula DAG references it from two or more
    places; leaves (tt, ff, 0) are never named.  The root is ``X0``.
    """
    refs: dict = {}
    order = subformulae(f)
    for g in order:
        for c in children(g):
            refs[c] = refs.get(c, 0) + 1
    named = [g for g in reversed(order) if g is f or (refs.get(g, 0) >= 2 and children(g))]
    names = {g: f"X{i}" for i, g in enumerate(named)}
    memo: dict = {}

    def body(g, top):
        if not top and g in names:
            return Var(names[g])
        key = g
        if key in memo:
            return memo[key]
        if isinstance(g, Dia):
            r = Dia(g.a, body(g.f, False))
        elif isinstance(g, Box):
            r = Box(g.a, body(g.f, False))
        elif isinstance(g, And):
            r = And(body(g.l, False), body(g.r, False))
        elif isinstance(g, Or):
            r = Or(body(g.l, False), body(g.r, False))
        elif isinstance(g, Neg):
            r = Neg(body(g.f, False))
        else:
            r = g
        memo[key] = r
        return r

    eqs = [(names[g], body(g, True)) for g in named]
    return EquationSystem(eqs, "X0", tuple(alphabet) if alphabet else None)


def format_system(es: EquationSystem) -> str:
    lines = []
    if es.alphabet:
        lines.append("alphabet " + " ".join(es.alphabet))
    lines.append(f"root {es.root}")
    lines += [f"{v} = {format_formula(rhs)}" for v, rhs in es.equations]
    return "\n".join(lines) + "\n"


def parse_system(text: str, alphabet: Iterable[str] | None = None) -> EquationSystem:
    alpha = tuple(alphabet) if alphabet is not None else None
    root = None
    raw_eqs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet "):
            if alpha is None:
                alpha = tuple(line.split()[1:])
        elif line.startswith("root "):
            root = line.split()[1]
        elif "=" in line:
            lhs, rhs = line.split("=", 1)
            raw_eqs.append((lineno, lhs.strip(), rhs))
        else:
            raise FormulaError(f"line {lineno}: cannot parse {raw!r}")
    eqs = []
    for lineno, lhs, rhs in raw_eqs:
        try:
            eqs.append((lhs, parse_formula(rhs, alpha, variables=True)))
        except FormulaError as exc:
            raise FormulaError(f"line {lineno}: {exc}") from exc
    if not eqs:
        raise FormulaError("no equations")
    return EquationSystem(eqs, root or eqs[0][0], alpha)


# ---------------------------------------------------------------- metrics


@dataclass(frozen=True)
class Metrics:
    explicit_size: int
    decl_size: int
    eq_length: int
    modal_depth: int
    sub_count: int = 0


def _own_symbols(g: Formula) -> int:
    if isinstance(g, Zero):
        n = len(g.actions)
        return 3 * n - 1 if n else 1
    return 1


def _count_symbols(f: Formula, resolve=None) -> int:
    """Symbols of the tree ``f``; ``resolve`` maps a Var to its expanded size."""
    cnt: dict = {}
    for g in subformulae(f):
        if isinstance(g, Var) and resolve is not None:
            cnt[g] = resolve(g)
        else:
            cnt[g] = _own_symbols(g) + sum(cnt[c] for c in children(g))
    return cnt[f]


@deep
def metrics(obj) -> Metrics:
    """|f| (explicit size), decl, eqlen and modal depth of a formula or a system.

    Every tt, ff, <a>, [a], &, |, ! and variable reference counts one symbol;
    parentheses and left-hand sides count nothing.
    """
    if isinstance(obj, EquationSystem):
        es = obj
    else:
        es = es_build(obj)
    eqs = es.as_dict()
    expanded_size: dict = {}
    depth_of: dict = {}
    for v in es.topological():
        expanded_size[v] = _count_symbols(eqs[v], lambda x: expanded_size[x.name])
        depth_of[v] = _depth_with_vars(eqs[v], depth_of)
    eqlen = max(_count_symbols(rhs) for rhs in eqs.values())
    if isinstance(obj, EquationSystem):
        sub = len({g for rhs in eqs.values() for g in subformulae(rhs) if not isinstance(g, Var)})
    else:
        sub = len(subformulae(obj))
    return Metrics(expanded_size[es.root], len(es.equations), eqlen, depth_of[es.root], sub)


def _depth_with_vars(f: Formula, known: dict) -> int:
    md: dict = {}
    for g in subformulae(f):
        if isinstance(g, Var):
            md[g] = known[g.name]
        elif isinstance(g, (Dia, Box)):
            md[g] = md[g.f] + 1
        elif isinstance(g, Zero):
            md[g] = 1 if g.actions else 0
        else:
            md[g] = max((md[c] for c in children(g)), default=0)
    return md[f]


def formula_size(f: Formula) -> int:
    return _count_symbols(f)
