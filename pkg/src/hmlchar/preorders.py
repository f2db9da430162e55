"""Simulation-based preorders on finite loop-free processes.

``relation`` computes the greatest relation between the subprocesses of two
processes by pair elimination; ``preorder`` reads one pair off it.
``preorder_matrix`` computes a whole preorder over a process family at once,
using bitmask rows, and is what the universe-wide checks use.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .formula import Fragment
from .lts import Node, as_node, depth, initials, subprocesses, traces
from .modelcheck import Family


@dataclass(frozen=True)
class PreorderKind:
    name: str  # S, CS, RS, TS, NS, BS
    n: int = 0

    def __post_init__(self):
        if self.name not in ("S", "CS", "RS", "TS", "NS", "BS"):
            raise ValueError(f"unknown preorder {self.name!r}")
        if self.name == "NS" and self.n < 1:
            raise ValueError("NS needs n >= 1")

    def __str__(self):
        return f"{self.n}S" if self.name == "NS" else self.name

    @classmethod
    def parse(cls, text) -> "PreorderKind":
        if isinstance(text, PreorderKind):
            return text
        if isinstance(text, Fragment):
            text = text.value
        t = str(text).strip().upper()
        if t in ("S", "CS", "RS", "TS", "BS"):
            return cls(t)
        if t.endswith("S") and t[:-1].isdigit():
            return NS(int(t[:-1]))
        if t.startswith("NS(") and t.endswith(")"):
            return NS(int(t[3:-1]))
        raise ValueError(f"unknown preorder {text!r}")


def NS(n: int) -> PreorderKind:
    return PreorderKind("S") if n == 1 else PreorderKind("NS", n)


SIM = PreorderKind("S")
COMPLETE = PreorderKind("CS")
READY = PreorderKind("RS")
TRACE = PreorderKind("TS")
BISIM = PreorderKind("BS")

# The hierarchy from finest to coarsest.
CHAIN = (BISIM, NS(3), NS(2), TRACE, READY, COMPLETE, SIM)


def _static(kind: PreorderKind, x: Node, y: Node) -> bool:
    if kind.name == "CS":
        return (not x) == (not y)
    if kind.name == "RS":
        return initials(x) == initials(y)
    if kind.name == "TS":
        return traces(x) == traces(y)
    return True


def _eliminate(xs, ys, ok, symmetric=False) -> set:
    """Greatest relation R within ``ok`` closed under the move-matching clause."""
    rel = {(x, y) for x in xs for y in ys if ok(x, y)}
    parents_x: dict = {}
    parents_y: dict = {}
    for x in xs:
        for _, m in x:
            parents_x.setdefault(m, set()).add(x)
    for y in ys:
        for _, m in y:
            parents_y.setdefault(m, set()).add(y)

    def matched(x, y):
        for a, x1 in x:
            if not any(b == a and (x1, y1) in rel for b, y1 in y):
                return False
        if symmetric:
            for b, y1 in y:
                if not any(a == b and (x1, y1) in rel for a, x1 in x):
                    return False
        return True

    queue = deque(sorted(rel, key=lambda pr: (depth(pr[0]), depth(pr[1]))))
    queued = set(rel)
    while queue:
        pair = queue.popleft()
        queued.discard(pair)
        if pair not in rel or matched(*pair):
            continue
        rel.discard(pair)
        x, y = pair
        for px in parents_x.get(x, ()):
            for py in parents_y.get(y, ()):
                if (px, py) in rel and (px, py) not in queued:
                    queued.add((px, py))
                    queue.append((px, py))
    return rel


def relation(kind, p, q) -> set:
    """The preorder restricted to subprocesses of p (left) and q (right)."""
    kind = PreorderKind.parse(kind)
    p, q = as_node(p), as_node(q)
    xs, ys = subprocesses(p), subprocesses(q)
    if kind.name == "TS":
        return {(x, y) for x in xs for y in ys if _ts(x, y)}
    if kind.name == "NS":
        return _ns_left(kind.n, depth(p) + depth(q) + 2, p, q)
    return _eliminate(xs, ys, lambda x, y: _static(kind, x, y), symmetric=kind.name == "BS")


def _ns_left(n, cap, p, q) -> set:
    """nS between subprocesses of p and q, computed with both orientations kept."""
    xs, ys = subprocesses(p), subprocesses(q)
    n = min(n, cap)
    fwd = _eliminate(xs, ys, lambda x, y: True)
    bwd = _eliminate(ys, xs, lambda y, x: True)
    for _ in range(2, n + 1):
        fwd, bwd = (_eliminate(xs, ys, lambda x, y, b=bwd: (y, x) in b),
                    _eliminate(ys, xs, lambda y, x, f=fwd: (x, y) in f))
    return fwd


@lru_cache(maxsize=1 << 16)
def _ts(x: Node, y: Node) -> bool:
    if traces(x) != traces(y):
        return False
    return all(any(b == a and _ts(x1, y1) for b, y1 in y) for a, x1 in x)


def preorder(kind, p, q) -> bool:
    """p is below q in the given preorder."""
    kind = PreorderKind.parse(kind)
    p, q = as_node(p), as_node(q)
    if kind.name == "TS":
        return _ts(p, q)
    if kind.name == "NS":
        return (p, q) in _ns_left(kind.n, depth(p) + depth(q) + 2, p, q)
    return (p, q) in relation(kind, p, q)


def kernel_equiv(kind, p, q) -> bool:
    return preorder(kind, p, q) and preorder(kind, q, p)


def trace_equiv(p, q) -> bool:
    return traces(as_node(p)) == traces(as_node(q))


def bisimilar(p, q) -> bool:
    return preorder(BISIM, p, q)


# ---------------------------------------------------------------- whole-family matrices


def _class_masks(fam: Family, key) -> list:
    groups: dict = {}
    for i, x in enumerate(fam.nodes):
        groups[key(x)] = groups.get(key(x), 0) | (1 << i)
    return [groups[key(x)] for x in fam.nodes]


def _rows(fam: Family, local) -> list:
    rows = [0] * len(fam.nodes)
    for i, x in enumerate(fam.nodes):
        r = local[i]
        for a, m in x:
            if not r:
                break
            r &= fam.pre(a, rows[fam.index[m]])
        rows[i] = r
    return rows


def transpose(rows: list) -> list:
    cols = [0] * len(rows)
    for j, r in enumerate(rows):
        bit = 1 << j
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= bit
            r ^= low
    return cols


def preorder_matrix(kind, fam: Family) -> list:
    """Row i is the bitmask of j with fam.nodes[i] below fam.nodes[j].

    Family nodes are stored children first, so each row only needs rows of
    successors computed earlier.  Bisimilarity on canonical nodes is identity.
    """
    kind = PreorderKind.parse(kind)
    size = len(fam.nodes)
    if kind.name == "BS":
        return [1 << i for i in range(size)]
    if kind.name == "S":
        return _rows(fam, [fam.full] * size)
    if kind.name == "CS":
        return _rows(fam, _class_masks(fam, lambda x: not x))
    if kind.name == "RS":
        return _rows(fam, _class_masks(fam, initials))
    if kind.name == "TS":
        return _rows(fam, _class_masks(fam, traces))
    cap = 2 * max((depth(x) for x in fam.nodes), default=0) + 2
    rows = _rows(fam, [fam.full] * size)
    for _ in range(2, min(kind.n, cap) + 1):
        rows = _rows(fam, transpose(rows))
    return rows
