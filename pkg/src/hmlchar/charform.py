"""Characteristic formulae: deciding them and synthesising them.

``chi`` builds the characteristic formula of a loop-free process as an
acyclic equation system with one variable per (family, subprocess).  The
"bar" families describe the processes *below* p and are needed for the
nested simulations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import oracle
from .formula import (FF, TT, And, Box, Dia, EquationSystem, Formula, Fragment, Neg, Var, Zero,
                      conj, disj, es_expand, flatten, metrics, modal_depth, subformulae,
                      unfold_zero)
from .lts import NIL, Node, as_node, deep, initials, make_alphabet, traces
from .primality import BOUNDED, EXACT, decide_prime
from .preorders import PreorderKind
from .satisfiability import _alphabet, _require, sat

EXPLICIT_SIZE_CAP = 100_000


@dataclass(frozen=True)
class CharVerdict:
    is_characteristic: bool
    witness: Node | None = None
    confidence: str = EXACT
    note: str = ""

    def __bool__(self):
        return self.is_characteristic


@deep
def decide_characteristic(X, f: Formula, alphabet=None, **opts) -> CharVerdict:
    """f is characteristic within L_X iff it is satisfiable and prime."""
    X = Fragment.parse(X) if not isinstance(X, Fragment) else X
    alpha = _alphabet(f, alphabet)
    _require(X, f, alpha)
    if not sat(X, f, alpha):
        return CharVerdict(False, note="unsatisfiable")
    v = decide_prime(X, f, alpha, **opts)
    if not v.prime:
        return CharVerdict(False, confidence=v.confidence, note=v.method)
    return CharVerdict(True, v.witness, v.confidence, v.method)


# ---------------------------------------------------------------- synthesis


def _numbering(p: Node) -> list:
    """Subprocesses of p in breadth-first order from p, so p gets index 0."""
    order = [p]
    seen = {p}
    queue = deque([p])
    while queue:
        x = queue.popleft()
        for _, y in sorted(x, key=lambda t: (t[0], len(t[1]))):
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _moves(x: Node, ids: dict) -> list:
    """Transitions of x in canonical order: action, then target id."""
    return sorted(((a, ids[y]) for a, y in x), key=lambda t: (t[0], t[1]))


@deep
def exc_traces(p, alphabet) -> Formula:
    """Conjunction of [a1]...[ak]ff over the minimal traces p cannot perform."""
    p = as_node(p)
    alpha = make_alphabet(alphabet)
    tr = traces(p)
    chains = sorted((t + (a,) for t in tr for a in alpha if t + (a,) not in tr),
                    key=lambda s: (len(s), s))
    out = []
    for chain in chains:
        g = FF
        for a in reversed(chain):
            g = Box(a, g)
        out.append(g)
    return conj(out)


@deep
def chi(X, p, alphabet=None) -> EquationSystem:
    """Characteristic formula of p within L_X as an equation system rooted at X0."""
    kind = PreorderKind.parse(X)
    p = as_node(p)
    alpha = make_alphabet(alphabet) if alphabet is not None else make_alphabet(
        a for x in _numbering(p) for a, _ in x)
    if not alpha:
        alpha = ("a",)
    nodes = _numbering(p)
    ids = {x: i for i, x in enumerate(nodes)}
    eqs = []
    name = kind.name
    if name in ("S", "CS", "RS", "TS", "BS"):
        for i, x in enumerate(nodes):
            mv = _moves(x, ids)
            parts = [Dia(a, Var(f"X{j}")) for a, j in mv]
            if name == "CS" and not x:
                rhs = Zero(alpha)
            elif name == "RS":
                rhs = conj(parts + [Box(b, FF) for b in alpha if b not in initials(x)])
            elif name == "TS":
                rhs = conj(parts + _conjuncts(exc_traces(x, alpha)))
            elif name == "BS":
                boxes = [Box(b, disj(Var(f"X{j}") for a, j in mv if a == b)) for b in alpha]
                rhs = conj(parts + boxes)
            else:
                rhs = conj(parts)
            eqs.append((f"X{i}", rhs))
        return EquationSystem(eqs, "X0", alpha)
    return _chi_nested(kind.n, nodes, ids, alpha)


def _conjuncts(f: Formula) -> list:
    return [] if f is TT else flatten(f, And)


def _chi_nested(n: int, nodes: list, ids: dict, alpha: tuple) -> EquationSystem:
    """nS for n >= 2: chi_k(p) = bar_{k-1}(p) & <a>chi_k(p'),
    bar_k(p) = [a](| bar_k(p')) & chi_{k-1}(p), with chi_1 the simulation formula."""
    def chi_name(k, i):
        return f"X{i}" if k == n else f"C{k}_{i}"

    def bar_name(k, i):
        return f"B{k}_{i}"

    eqs = []
    for i, x in enumerate(nodes):
        mv = _moves(x, ids)
        for k in range(n, 0, -1):
            parts = [Dia(a, Var(chi_name(k, j))) for a, j in mv]
            if k >= 2:
                parts = [Var(bar_name(k - 1, i))] + parts
            eqs.append((chi_name(k, i), conj(parts)))
        for k in range(n - 1, 0, -1):
            boxes = [Box(b, disj(Var(bar_name(k, j)) for a, j in mv if a == b)) for b in alpha]
            if k >= 2:
                boxes.append(Var(chi_name(k - 1, i)))
            eqs.append((bar_name(k, i), conj(boxes)))
    # keep only what the root needs
    defs = dict(eqs)
    seen = set()
    stack = ["X0"]
    while stack:
        v = stack.pop()
        if v not in seen:
            seen.add(v)
            stack.extend(g.name for g in subformulae(defs[v]) if isinstance(g, Var))
    order = sorted((v for v, _ in eqs if v in seen), key=lambda v: v != "X0")
    return EquationSystem([(v, defs[v]) for v in order], "X0", alpha)


def chi_ts(p, alphabet=None) -> EquationSystem:
    return chi("TS", p, alphabet)


@deep
def chi_formula(X, p, alphabet=None, size_cap: int = EXPLICIT_SIZE_CAP) -> Formula:
    """chi in explicit form, refusing when the expansion is larger than ``size_cap``."""
    es = chi(X, p, alphabet)
    size = metrics(es).explicit_size
    if size > size_cap:
        raise oracle.BudgetExceeded(f"explicit form has {size} symbols, cap is {size_cap}")
    return es_expand(es)


# ---------------------------------------------------------------- modulo the kernel


@deep
def char_mod_kernel_bounded(X, f: Formula, alphabet=None, depth_budget: int | None = None,
                            width_budget: int = 2, cap: int = oracle.DEFAULT_CAP) -> CharVerdict:
    """Is f satisfied exactly by the processes X-equivalent to some p?

    No L_S formula is; an L_CS or L_RS formula is iff it is equivalent to the
    deadlock formula.  Other preorders are checked on a bounded universe.
    """
    kind = PreorderKind.parse(X)
    alpha = _alphabet(f, alphabet)
    if kind.name == "S":
        return CharVerdict(False, note="no L_S formula is characteristic modulo the kernel")
    if kind.name in ("CS", "RS"):
        g = unfold_zero(f)
        dead_ok = not sat(None, And(unfold_zero(Zero(alpha)), Neg(g)), alpha)
        only_dead = not sat(None, And(g, disj(Dia(a, TT) for a in alpha)), alpha)
        if dead_ok and only_dead:
            return CharVerdict(True, NIL, note="equivalent to the deadlock formula")
        return CharVerdict(False, note="not equivalent to the deadlock formula")
    d = modal_depth(f) + 1 if depth_budget is None else depth_budget
    u = oracle.Universe(alpha, d, width_budget, cap)
    p = oracle.brute_characteristic_mod_kernel(kind, f, u)
    return CharVerdict(p is not None, p, BOUNDED, "bounded universe")


__all__ = ["CharVerdict", "decide_characteristic", "chi", "chi_ts", "chi_formula", "exc_traces",
           "char_mod_kernel_bounded"]
