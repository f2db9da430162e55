"""The satisfaction relation, locally for one process and globally over a family."""
from __future__ import annotations

from .formula import (And, Box, Dia, EquationSystem, Ff, Formula, FormulaError, Neg, Or,
                      Tt, Var, Zero, children, es_expand)
from .lts import Node, as_node, subprocesses, with_stack


def _check(n: Node, f: Formula, eqs: dict | None, memo: dict) -> bool:
    key = (n, f)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(f, Tt):
        r = True
    elif isinstance(f, Ff):
        r = False
    elif isinstance(f, Dia):
        r = any(a == f.a and _check(m, f.f, eqs, memo) for a, m in n)
    elif isinstance(f, Box):
        r = all(a != f.a or _check(m, f.f, eqs, memo) for a, m in n)
    elif isinstance(f, And):
        r = _check(n, f.l, eqs, memo) and _check(n, f.r, eqs, memo)
    elif isinstance(f, Or):
        r = _check(n, f.l, eqs, memo) or _check(n, f.r, eqs, memo)
    elif isinstance(f, Neg):
        r = not _check(n, f.f, eqs, memo)
    elif isinstance(f, Zero):
        r = not any(a in f.actions for a, _ in n)
    elif isinstance(f, Var):
        if eqs is None or f.name not in eqs:
            raise FormulaError(f"unbound variable {f.name}")
        r = _check(n, eqs[f.name], eqs, memo)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = r
    return r


def satisfies(p, f: Formula, memo: dict | None = None) -> bool:
    """p |= f, memoised over (subprocess, subformula) pairs."""
    return with_stack(_check, as_node(p), f, None, {} if memo is None else memo)


def satisfies_decl(p, es: EquationSystem) -> bool:
    """p |= es without expanding the system."""
    return with_stack(_check, as_node(p), Var(es.root), es.as_dict(), {})


class Family:
    """A successor-closed set of processes with satisfaction computed as bitmasks.

    Bit ``i`` of a mask stands for ``self.nodes[i]``.  Masks of subformulae are
    cached, so checking many formulae that share structure is cheap.
    """

    def __init__(self, processes):
        roots = [as_node(p) for p in processes]
        seen: dict = {}
        nodes: list = []
        for r in roots:
            for x in subprocesses(r):
                if x not in seen:
                    seen[x] = len(nodes)
                    nodes.append(x)
        self.nodes = nodes
        self.index = seen
        self.roots = [seen[r] for r in roots]
        self.full = (1 << len(nodes)) - 1
        self._parents: dict = {}
        child_mask = 0
        for i, x in enumerate(nodes):
            for a, m in x:
                j = seen[m]
                child_mask |= 1 << j
                self._parents.setdefault(a, {})
                self._parents[a][j] = self._parents[a].get(j, 0) | (1 << i)
        self.child_mask = child_mask
        self.has = {a: 0 for a in self._parents}
        for a, table in self._parents.items():
            for mask in table.values():
                self.has[a] |= mask
        self.root_mask = 0
        for i in self.roots:
            self.root_mask |= 1 << i
        self._memo: dict = {}

    def pre(self, a: str, mask: int) -> int:
        """Nodes with an a-successor in ``mask``."""
        table = self._parents.get(a)
        if not table:
            return 0
        out = 0
        m = mask & self.child_mask
        while m:
            low = m & -m
            j = low.bit_length() - 1
            out |= table.get(j, 0)
            m ^= low
        return out

    def mask(self, f: Formula) -> int:
        memo = self._memo
        if f in memo:
            return memo[f]
        full = self.full
        for g in self._pending(f):
            if isinstance(g, Tt):
                r = full
            elif isinstance(g, Ff):
                r = 0
            elif isinstance(g, Dia):
                r = self.pre(g.a, memo[g.f])
            elif isinstance(g, Box):
                r = full & ~self.pre(g.a, full & ~memo[g.f])
            elif isinstance(g, And):
                r = memo[g.l] & memo[g.r]
            elif isinstance(g, Or):
                r = memo[g.l] | memo[g.r]
            elif isinstance(g, Neg):
                r = full & ~memo[g.f]
            elif isinstance(g, Zero):
                r = full
                for a in g.actions:
                    r &= ~self.has.get(a, 0)
            elif isinstance(g, Var):
                raise FormulaError(f"unbound variable {g.name}; expand the system first")
            else:
                raise TypeError(f"not a formula: {g!r}")
            memo[g] = r
        return memo[f]

    def _pending(self, f: Formula) -> list:
        """Subformulae of f without a cached mask, children first."""
        memo = self._memo
        seen = set()
        order = []
        stack = [(f, False)]
        while stack:
            g, done = stack.pop()
            if done:
                order.append(g)
            elif g not in seen and g not in memo:
                seen.add(g)
                stack.append((g, True))
                stack.extend((c, False) for c in reversed(children(g)))
        return order

    def mask_system(self, es: EquationSystem) -> int:
        return self.mask(es_expand(es))

    def satisfying(self, f: Formula) -> list:
        m = self.mask(f)
        return [self.nodes[i] for i in range(len(self.nodes)) if m >> i & 1]

    def bits(self, nodes) -> int:
        out = 0
        for n in nodes:
            out |= 1 << self.index[as_node(n)]
        return out

    def holds(self, p, f: Formula) -> bool:
        return bool(self.mask(f) >> self.index[as_node(p)] & 1)
