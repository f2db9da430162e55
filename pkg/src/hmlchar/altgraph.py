"""Alternating graphs and alternating reachability.

A vertex is existential or universal.  The target is reachable from an
existential vertex if it is reachable from some successor, and from a universal
vertex if the vertex has at least one successor and it is reachable from all of
them.  ``reach_a`` solves this backwards in time linear in the graph size.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

EXISTS = "E"
FORALL = "A"


@dataclass
class AltGraph:
    labels: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    keys: list = field(default_factory=list)
    info: list = field(default_factory=list)
    source: int = 0
    target: int = 0
    _ids: dict = field(default_factory=dict, repr=False)

    def vertex(self, key, label: str = EXISTS, info=None) -> tuple[int, bool]:
        """Id of the vertex with content ``key``, creating it if needed.

        Returns (id, created).
        """
        vid = self._ids.get(key)
        if vid is not None:
            return vid, False
        vid = len(self.labels)
        self._ids[key] = vid
        self.labels.append(label)
        self.edges.append([])
        self.keys.append(key)
        self.info.append(info)
        return vid, True

    def add_edge(self, u: int, v: int):
        self.edges[u].append(v)

    def __len__(self):
        return len(self.labels)

    def edge_count(self) -> int:
        return sum(len(e) for e in self.edges)


def _solve(g: AltGraph):
    n = len(g.labels)
    preds: list = [[] for _ in range(n)]
    for u, outs in enumerate(g.edges):
        for v in outs:
            preds[v].append(u)
    remaining = [len(outs) for outs in g.edges]
    won = [False] * n
    choice: list = [None] * n
    won[g.target] = True
    queue = deque([g.target])
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if won[u]:
                continue
            if g.labels[u] == EXISTS:
                won[u] = True
                choice[u] = v
                queue.append(u)
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    won[u] = True
                    queue.append(u)
    return won, choice


def winning_vertices(g: AltGraph) -> list:
    won, _ = _solve(_unique_edges(g))
    return won


def _unique_edges(g: AltGraph) -> AltGraph:
    if all(len(set(e)) == len(e) for e in g.edges):
        return g
    return AltGraph(list(g.labels), [list(dict.fromkeys(e)) for e in g.edges], list(g.keys),
                    list(g.info), g.source, g.target)


def reach_a(g: AltGraph) -> bool:
    won, _ = _solve(_unique_edges(g))
    return won[g.source]


def reach_a_naive(g: AltGraph) -> bool:
    """Forward least-fixpoint iteration; quadratic, used as a cross-check."""
    won = {g.target}
    changed = True
    while changed:
        changed = False
        for v, outs in enumerate(g.edges):
            if v in won:
                continue
            if g.labels[v] == EXISTS:
                ok = any(w in won for w in outs)
            else:
                ok = bool(outs) and all(w in won for w in outs)
            if ok:
                won.add(v)
                changed = True
    return g.source in won


def winning_subgraph(g: AltGraph) -> dict:
    """Strategy from the source: one successor per existential vertex, all for universal ones.

    Only vertices reached from the source under the strategy appear; the target
    has no entry.
    """
    h = _unique_edges(g)
    won, choice = _solve(h)
    if not won[h.source]:
        raise ValueError("the target is not alternating-reachable from the source")
    out: dict = {}
    stack = [h.source]
    while stack:
        v = stack.pop()
        if v in out or v == h.target:
            continue
        succ = [choice[v]] if h.labels[v] == EXISTS else list(h.edges[v])
        out[v] = succ
        stack.extend(succ)
    return out


def to_dot(g: AltGraph, show=str, highlight: dict | None = None) -> str:
    """DOT text: existential vertices as ellipses, universal ones as boxes."""
    lines = ["digraph G {", "  rankdir=TB;"]
    for v, key in enumerate(g.keys):
        shape = "ellipse" if g.labels[v] == EXISTS else "box"
        text = "TRUE" if v == g.target else show(key)
        text = text.replace("\\", "\\\\").replace('"', '\\"')
        extra = ", penwidth=2" if v == g.source else ""
        lines.append(f'  v{v} [label="{text}", shape={shape}{extra}];')
    for u, outs in enumerate(g.edges):
        for v in outs:
            bold = highlight is not None and v in highlight.get(u, ())
            lines.append(f"  v{u} -> v{v}{' [color=red]' if bold else ''};")
    lines.append("}")
    return "\n".join(lines) + "\n"
