"""Finite loop-free processes: terms, canonical nodes and explicit transition systems.

Two representations are used throughout the package:

* ``ProcessTerm`` (``Nil`` / ``Prefix`` / ``Sum``) is the syntax tree a user writes.
* ``Node`` is a canonical value: a frozenset of ``(action, Node)`` pairs.  Two
  terms map to the same node exactly when they are equal modulo associativity,
  commutativity and idempotence of ``+``.  For finite trees this coincides with
  bisimilarity, and it is what the decision procedures work on.
"""
from __future__ import annotations

import functools
import re
import sys
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Union

Node = frozenset  # frozenset[tuple[str, Node]]
NIL: Node = frozenset()

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class ProcessError(ValueError):
    """Raised on malformed process text, unknown actions or cyclic systems."""


class CycleError(ProcessError):
    pass


def make_alphabet(actions: Iterable[str]) -> tuple[str, ...]:
    acts = tuple(sorted(set(actions)))
    if not acts:
        raise ProcessError("alphabet must be nonempty")
    for a in acts:
        if not _IDENT.fullmatch(a):
            raise ProcessError(f"bad action name {a!r}")
    return acts


def parse_alphabet(text: str) -> tuple[str, ...]:
    return make_alphabet(x for x in re.split(r"[,\s]+", text.strip()) if x)


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Nil:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "ProcessTerm"

    def __str__(self):
        return format_process(self)


@dataclass(frozen=True)
class Sum:
    left: "ProcessTerm"
    right: "ProcessTerm"

    def __str__(self):
        return format_process(self)


ProcessTerm = Union[Nil, Prefix, Sum]


def with_stack(fn, *args):
    """Run a recursive walker with room for a few thousand nested levels."""
    limit = sys.getrecursionlimit()
    if limit < 20000:
        sys.setrecursionlimit(20000)
    try:
        return fn(*args)
    finally:
        sys.setrecursionlimit(limit)


def deep(fn):
    """Decorator form of ``with_stack``."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        return with_stack(lambda: fn(*args, **kwargs))
    return wrapper


def format_process(p: ProcessTerm) -> str:
    return with_stack(_format, p)


def _format(p: ProcessTerm) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, Prefix):
        body = _format(p.body)
        if isinstance(p.body, Sum):
            body = f"({body})"
        return f"{p.action}.{body}"
    left = _format(p.left)
    right = _format(p.right)
    if isinstance(p.right, Sum):
        right = f"({right})"
    return f"{left} + {right}"


def parse_process(text: str, alphabet: Iterable[str] | None = None) -> ProcessTerm:
    """Parse ``P ::= 0 | ident '.' P | P '+' P | '(' P ')'``."""
    toks = _tokenize(text)
    pos = 0
    allowed = set(alphabet) if alphabet is not None else None

    def peek():
        return toks[pos] if pos < len(toks) else (None, len(text))

    def take(kind):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] is None else repr(tok[0])
            raise ProcessError(f"expected {kind!r} at position {tok[1]}, found {found}")
        pos += 1
        return tok

    def summand():
        nonlocal pos
        prefixes = []  # read a.b.c. iteratively so long chains do not recurse
        while True:
            tok = peek()
            if tok[0] is None or not _IDENT.fullmatch(tok[0]):
                break
            pos += 1
            if allowed is not None and tok[0] not in allowed:
                raise ProcessError(f"unknown action {tok[0]!r} at position {tok[1]}")
            take(".")
            prefixes.append(tok[0])
        if tok[0] == "0":
            pos += 1
            body = Nil()
        elif tok[0] == "(":
            pos += 1
            body = expr()
            take(")")
        else:
            found = "end of input" if tok[0] is None else repr(tok[0])
            raise ProcessError(f"unexpected {found} at position {tok[1]}")
        for a in reversed(prefixes):
            body = Prefix(a, body)
        return body

    def expr():
        nonlocal pos
        left = summand()
        while peek()[0] == "+":
            pos += 1
            left = Sum(left, summand())
        return left

    result = expr()
    if pos != len(toks):
        tok = toks[pos]
        raise ProcessError(f"trailing input {tok[0]!r} at position {tok[1]}")
    return result


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "().+":
            toks.append((c, i))
            i += 1
        elif c == "0":
            toks.append(("0", i))
            i += 1
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise ProcessError(f"unexpected character {c!r} at position {i}")
            toks.append((m.group(), i))
            i = m.end()
    return toks


# ---------------------------------------------------------------- canonical nodes


def prefix(a: str, n: Node) -> Node:
    return frozenset({(a, n)})


def plus(*nodes: Node) -> Node:
    return frozenset().union(*nodes)


def as_node(p) -> Node:
    """Accept a Node, a ProcessTerm, an Lts or process text."""
    if isinstance(p, frozenset):
        return p
    if isinstance(p, str):
        p = parse_process(p)
    if isinstance(p, Lts):
        return lts_to_node(p)
    return with_stack(_term_node, p)


def _term_node(p: ProcessTerm) -> Node:
    if isinstance(p, Nil):
        return NIL
    if isinstance(p, Prefix):
        return frozenset({(p.action, _term_node(p.body))})
    return _term_node(p.left) | _term_node(p.right)


def node_to_term(n: Node) -> ProcessTerm:
    """Canonical term for a node: summands sorted by their printed form."""
    return with_stack(_node_term, n)


def _node_term(n: Node) -> ProcessTerm:
    if not n:
        return Nil()
    parts = sorted((Prefix(a, _node_term(m)) for a, m in n), key=_format)
    out = parts[0]
    for s in parts[1:]:
        out = Sum(out, s)
    return out


def show(n: Node) -> str:
    return format_process(node_to_term(n))


@lru_cache(maxsize=1 << 16)
def initials(n: Node) -> frozenset:
    return frozenset(a for a, _ in n)


@lru_cache(maxsize=1 << 16)
def depth(n: Node) -> int:
    return max((1 + depth(m) for _, m in n), default=0)


@lru_cache(maxsize=1 << 14)
def traces(n: Node) -> frozenset:
    out = {()}
    for a, m in n:
        out.update((a,) + t for t in traces(m))
    return frozenset(out)


def successors(n: Node, a: str):
    return [m for b, m in n if b == a]


def subprocesses(n: Node) -> list[Node]:
    """All nodes reachable from n, children before parents."""
    seen = set()
    order = []

    def visit(x):
        if x in seen:
            return
        seen.add(x)
        for _, m in x:
            visit(m)
        order.append(x)

    visit(n)
    return order


def actions_of(n: Node) -> set:
    return {a for x in subprocesses(n) for a, _ in x}


# ---------------------------------------------------------------- observables


@dataclass(frozen=True)
class Observables:
    initials: frozenset
    traces: frozenset
    depth: int
    size: int


def term_size(p: ProcessTerm) -> int:
    """|reach| + |transitions| of the tree transition system of the term."""
    lts = term_to_lts(p)
    return len(lts.states) + len(lts.transitions)


def observables(p) -> Observables:
    term = p if not isinstance(p, (frozenset, str)) else None
    if isinstance(p, str):
        term = parse_process(p)
    n = as_node(p)
    size = term_size(term if term is not None else node_to_term(n))
    return Observables(initials(n), traces(n), depth(n), size)


# ---------------------------------------------------------------- explicit systems


@dataclass
class Lts:
    states: set = field(default_factory=set)
    transitions: set = field(default_factory=set)
    root: int = 0

    def __post_init__(self):
        if self.root not in self.states:
            raise ProcessError(f"root {self.root} is not a state")
        for s, a, t in self.transitions:
            if s not in self.states or t not in self.states:
                raise ProcessError(f"transition ({s}, {a}, {t}) references a missing state")

    def successors(self, s):
        return sorted((a, t) for (u, a, t) in self.transitions if u == s)

    def check_acyclic(self):
        out = {}
        for s, a, t in self.transitions:
            out.setdefault(s, []).append(t)
        colour = {}
        for start in self.states:
            if start in colour:
                continue
            stack = [(start, iter(out.get(start, ())))]
            colour[start] = 1
            while stack:
                s, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    colour[s] = 2
                    stack.pop()
                elif colour.get(nxt) == 1:
                    raise CycleError(f"cycle through state {nxt}")
                elif nxt not in colour:
                    colour[nxt] = 1
                    stack.append((nxt, iter(out.get(nxt, ()))))


def term_to_lts(p: ProcessTerm) -> Lts:
    """Tree system: the root plus one state per prefix body."""
    states = {0}
    trans = set()
    counter = [1]

    def build(term, s):
        if isinstance(term, Prefix):
            t = counter[0]
            counter[0] += 1
            states.add(t)
            trans.add((s, term.action, t))
            build(term.body, t)
        elif isinstance(term, Sum):
            build(term.left, s)
            build(term.right, s)

    build(p, 0)
    return Lts(states, trans, 0)


def lts_to_node(lts: Lts) -> Node:
    lts.check_acyclic()
    memo = {}
    out = {}
    for s, a, t in lts.transitions:
        out.setdefault(s, []).append((a, t))

    def go(s):
        if s not in memo:
            memo[s] = frozenset((a, go(t)) for a, t in out.get(s, ()))
        return memo[s]

    return with_stack(go, lts.root)


def lts_to_term(lts: Lts) -> ProcessTerm:
    """Unfold an acyclic system into a term; shared states are duplicated."""
    lts.check_acyclic()
    out = {}
    for s, a, t in lts.transitions:
        out.setdefault(s, []).append((a, t))

    def go(s):
        parts = [Prefix(a, go(t)) for a, t in sorted(out.get(s, ()))]
        if not parts:
            return Nil()
        term = parts[0]
        for x in parts[1:]:
            term = Sum(term, x)
        return term

    return with_stack(go, lts.root)


def parse_lts(text: str) -> Lts:
    """Read ``states N`` / ``root i`` / ``i a j`` lines; ``#`` starts a comment."""
    n = None
    root = 0
    trans = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "states" and len(parts) == 2:
                n = int(parts[1])
            elif parts[0] == "root" and len(parts) == 2:
                root = int(parts[1])
            elif len(parts) == 3:
                if not _IDENT.fullmatch(parts[1]):
                    raise ValueError(parts[1])
                trans.add((int(parts[0]), parts[1], int(parts[2])))
            else:
                raise ValueError(line)
        except ValueError as exc:
            raise ProcessError(f"line {lineno}: cannot parse {raw!r}") from exc
    if n is None:
        raise ProcessError("missing 'states N' line")
    return Lts(set(range(n)), trans, root)


def format_lts(lts: Lts) -> str:
    lines = [f"states {len(lts.states)}", f"root {lts.root}"]
    lines += [f"{s} {a} {t}" for s, a, t in sorted(lts.transitions, key=lambda x: (x[0], x[1], x[2]))]
    return "\n".join(lines) + "\n"


def read_process(text: str):
    """Process text or Lts text, whichever the input looks like."""
    stripped = text.lstrip()
    if stripped.startswith("states") and "\n" in stripped:
        return parse_lts(text)
    return parse_process(text)
