"""Brute-force ground truth for small instances.

Everything here is exhaustive over a bounded universe of processes (depth and
width limits) and is meant as a reference for the real deciders, not as a
decision procedure in its own right.  Budgets abort with ``BudgetExceeded``
instead of silently truncating.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .formula import (FF, TT, And, Box, Dia, Ff, Formula, FormulaError, Fragment, Neg, Or, Tt, Var,
                      Zero, actions_in, conj, count_diamonds, disj, formula_size, fragment_of,
                      modal_depth, nnf, subformulae, unfold_zero)
from .lts import NIL, Node, depth, make_alphabet, plus, prefix
from .modelcheck import Family
from .preorders import PreorderKind, preorder_matrix, transpose

DEFAULT_CAP = 200_000
BIT_ACTIONS = ("b0", "b1")


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------- universes


def universe_size(n_actions: int, max_depth: int, max_width: int) -> int:
    """Number of canonical processes with the given bounds."""
    count = 1
    for _ in range(max_depth):
        pairs = n_actions * count
        count = sum(math.comb(pairs, i) for i in range(min(max_width, pairs) + 1))
    return count


@dataclass
class Universe:
    """All processes over ``alphabet`` up to the depth and width bounds.

    Processes are canonical nodes, so sums are taken modulo associativity,
    commutativity and idempotence.
    """

    alphabet: tuple
    max_depth: int
    max_width: int
    cap: int = DEFAULT_CAP
    _matrices: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.alphabet = make_alphabet(self.alphabet)

    @cached_property
    def processes(self) -> list:
        return _enumerate(self.alphabet, self.max_depth, self.max_width, self.cap)

    @cached_property
    def family(self) -> Family:
        return Family(self.processes)

    def matrix(self, kind) -> list:
        """Preorder rows over ``family.nodes``, cached per kind."""
        kind = PreorderKind.parse(kind)
        if kind not in self._matrices:
            self._matrices[kind] = preorder_matrix(kind, self.family)
        return self._matrices[kind]

    def kernel(self, kind) -> list:
        key = ("kernel", PreorderKind.parse(kind))
        if key not in self._matrices:
            rows = self.matrix(kind)
            cols = transpose(rows)
            self._matrices[key] = [r & c for r, c in zip(rows, cols)]
        return self._matrices[key]

    def __len__(self):
        return len(self.processes)


def _enumerate(alphabet, max_depth, max_width, cap) -> list:
    size = universe_size(len(alphabet), max_depth, max_width)
    if size > cap:
        raise BudgetExceeded(f"universe has {size} processes, cap is {cap}")
    level = [NIL]
    for _ in range(max_depth):
        pairs = [(a, n) for n in level for a in alphabet]
        nxt = []
        for k in range(min(max_width, len(pairs)) + 1):
            nxt.extend(frozenset(c) for c in itertools.combinations(pairs, k))
        level = nxt
    level.sort(key=lambda n: (depth(n), len(n)))
    return level


def enum_processes(u: Universe) -> list:
    return list(u.processes)


def random_process(seed, u: Universe) -> Node:
    """A random process within the bounds of ``u``; does not enumerate ``u``."""
    rng = random.Random(seed)

    def gen(d):
        if d == 0:
            return NIL
        width = rng.randint(0, u.max_width)
        return plus(*(prefix(rng.choice(u.alphabet), gen(rng.randint(0, d - 1))) for _ in range(width)))

    return gen(rng.randint(0, u.max_depth))


# ---------------------------------------------------------------- satisfiability by types


class _Types:
    """Truth vectors ("types") of all subformulae of f realisable by bounded processes.

    A process's type depends only on the set of (action, child type) pairs, and
    through a bitmask ``summary`` over the modal subformulae: which diamonds
    are witnessed, which boxes are violated, which deadlock blocks are broken.
    """

    def __init__(self, f: Formula, summary_cap: int = 1 << 16):
        self.f = f
        self.subs = subformulae(f)
        self.pos = {g: i for i, g in enumerate(self.subs)}
        self.modal = [g for g in self.subs if isinstance(g, (Dia, Box, Zero))]
        self.mpos = {g: i for i, g in enumerate(self.modal)}
        self.actions = sorted(actions_in(f)) or ["a"]
        self.summary_cap = summary_cap
        for g in self.subs:
            if isinstance(g, Var):
                raise FormulaError("expand equation systems before calling the oracle")

    def contribution(self, a: str, t: int) -> int:
        m = 0
        for j, g in enumerate(self.modal):
            if isinstance(g, Dia):
                hit = g.a == a and t >> self.pos[g.f] & 1
            elif isinstance(g, Box):
                hit = g.a == a and not t >> self.pos[g.f] & 1
            else:
                hit = a in g.actions
            if hit:
                m |= 1 << j
        return m

    def type_of(self, summary: int) -> int:
        t = 0
        val: dict = {}
        for i, g in enumerate(self.subs):
            if isinstance(g, Tt):
                v = True
            elif isinstance(g, Ff):
                v = False
            elif isinstance(g, Dia):
                v = bool(summary >> self.mpos[g] & 1)
            elif isinstance(g, (Box, Zero)):
                v = not summary >> self.mpos[g] & 1
            elif isinstance(g, And):
                v = val[g.l] and val[g.r]
            elif isinstance(g, Or):
                v = val[g.l] or val[g.r]
            else:
                v = not val[g.f]
            val[g] = v
            if v:
                t |= 1 << i
        return t

    def closure(self, max_depth: int, max_width: int) -> dict:
        """Map each realisable type to a representative process."""
        types = {self.type_of(0): NIL}
        for _ in range(max_depth):
            contribs: dict = {}
            for t, rep in types.items():
                for a in self.actions:
                    m = self.contribution(a, t)
                    if m not in contribs:
                        contribs[m] = prefix(a, rep)
            summaries = {0: NIL}
            for _ in range(max_width):
                new = dict(summaries)
                for s, rep in summaries.items():
                    for m, node in contribs.items():
                        if s | m not in new:
                            new[s | m] = rep | node
                if len(new) > self.summary_cap:
                    raise BudgetExceeded("too many distinct summaries")
                if len(new) == len(summaries):
                    break
                summaries = new
            nxt = dict(types)
            for s, rep in summaries.items():
                nxt.setdefault(self.type_of(s), rep)
            if len(nxt) == len(types):
                break
            types = nxt
        return types


def small_model_bounds(f: Formula) -> tuple:
    """(depth, width) of the universe that brute_sat exhausts."""
    g = nnf(unfold_zero(f))
    return modal_depth(g), max(1, count_diamonds(g))


def brute_model(f: Formula, max_depth: int | None = None, max_width: int | None = None) -> Node | None:
    """Some model of f within the small-model bounds, or None."""
    d, w = small_model_bounds(f)
    d = d if max_depth is None else max_depth
    w = w if max_width is None else max_width
    tys = _Types(f)
    bit = 1 << tys.pos[f]
    for t, rep in tys.closure(d, w).items():
        if t & bit:
            return rep
    return None


def brute_sat(f: Formula, max_depth: int | None = None, max_width: int | None = None) -> bool:
    return brute_model(f, max_depth, max_width) is not None


def brute_entails(f: Formula, g: Formula, u: Universe) -> bool:
    fam = u.family
    return fam.mask(f) & ~fam.mask(g) & fam.full == 0


def brute_equivalent(f: Formula, g: Formula, u: Universe) -> bool:
    fam = u.family
    return fam.mask(f) == fam.mask(g)


# ---------------------------------------------------------------- characteristic formulae


def brute_characteristic(X, f: Formula, u: Universe, max_depth: int | None = None) -> Node | None:
    """A process p with depth <= md(f) such that, over u, q |= f iff p is below q."""
    kind = PreorderKind.parse(X)
    fam = u.family
    rows = u.matrix(kind)
    models = fam.mask(f)
    limit = modal_depth(f) if max_depth is None else max_depth
    m = models
    while m:
        low = m & -m
        i = low.bit_length() - 1
        m ^= low
        if depth(fam.nodes[i]) <= limit and rows[i] == models:
            return fam.nodes[i]
    return None


def brute_characteristic_mod_kernel(X, f: Formula, u: Universe) -> Node | None:
    """A process p in u such that, over u, q |= f iff p and q are X-equivalent."""
    fam = u.family
    rows = u.kernel(X)
    models = fam.mask(f)
    m = models
    while m:
        low = m & -m
        i = low.bit_length() - 1
        m ^= low
        if rows[i] == models:
            return fam.nodes[i]
    return None


def brute_prime(f: Formula, u: Universe, candidates: Iterable[Formula]) -> bool:
    """Primality evidence: f entails one of any two candidate formulae it entails the disjunction of."""
    fam = u.family
    fm = fam.mask(f)
    masks = [fam.mask(g) for g in candidates]
    for i, gi in enumerate(masks):
        for gj in masks[i:]:
            if fm & ~(gi | gj) == 0 and fm & ~gi and fm & ~gj:
                return False
    return True


# ---------------------------------------------------------------- generators


def encode_cnf(target, cnf) -> Formula:
    """Encode a CNF (clauses of nonzero ints, DIMACS style) as an L_RS or L_TS formula.

    RS: literal x_i becomes <a_i>tt and -x_i becomes [a_i]ff.  TS: variable i
    is a binary path over two actions; x_i asks for the path, -x_i forbids it.
    """
    target = Fragment(target) if not isinstance(target, Fragment) else target
    clauses = [list(c) for c in cnf]
    n = max((abs(l) for c in clauses for l in c), default=0)
    if target == Fragment.RS:
        def lit(l):
            a = f"a{abs(l)}"
            return Dia(a, TT) if l > 0 else Box(a, FF)
    elif target == Fragment.TS:
        bits = max(1, math.ceil(math.log2(n))) if n > 1 else 1

        def path(i):
            return [BIT_ACTIONS[(i - 1) >> k & 1] for k in reversed(range(bits))]

        def lit(l):
            acts = path(abs(l))
            g = TT if l > 0 else FF
            for a in reversed(acts):
                g = Dia(a, g) if l > 0 else Box(a, g)
            return g
    else:
        raise ValueError("encode_cnf targets RS or TS")
    return conj(disj(lit(l) for l in c) for c in clauses)


def cnf_satisfiable(cnf) -> bool:
    """Truth-table check of a CNF."""
    clauses = [list(c) for c in cnf]
    n = max((abs(l) for c in clauses for l in c), default=0)
    for bits in itertools.product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def random_cnf(seed, n_vars: int, n_clauses: int, k: int = 3) -> list:
    rng = random.Random(seed)
    out = []
    for _ in range(n_clauses):
        vs = rng.sample(range(1, n_vars + 1), k)
        out.append([v if rng.random() < 0.5 else -v for v in vs])
    return out


def encode_dnf_tautology(dnf, n_vars: int | None = None) -> tuple:
    """Processes (p0, q) over two actions: the DNF is a tautology iff their traces agree.

    p0 has one path per clause; q has all binary strings of length n as traces.
    """
    clauses = [list(c) for c in dnf]
    n = n_vars if n_vars is not None else max((abs(l) for c in clauses for l in c), default=0)
    zero, one = BIT_ACTIONS
    p0 = NIL
    for c in clauses:
        lits = {abs(l): l > 0 for l in c}
        node = NIL
        for j in range(n, 0, -1):
            if j not in lits:
                node = frozenset({(zero, node), (one, node)})
            else:
                node = prefix(one if lits[j] else zero, node)
        p0 = p0 | node
    q = NIL
    for _ in range(n):
        q = frozenset({(zero, q), (one, q)})
    return p0, q


def dnf_tautology(dnf, n_vars: int | None = None) -> bool:
    clauses = [list(c) for c in dnf]
    n = n_vars if n_vars is not None else max((abs(l) for c in clauses for l in c), default=0)
    for bits in itertools.product((False, True), repeat=n):
        if not any(all(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return False
    return True


class _Gen:
    def __init__(self, rng, fragment: Fragment, alphabet: tuple):
        self.rng = rng
        self.X = fragment
        self.alpha = alphabet

    def act(self):
        return self.rng.choice(self.alpha)

    def leaf(self, X):
        r = self.rng.random()
        if X == Fragment.CS and r < 0.5:
            return Zero(self.alpha)
        if X in (Fragment.RS, Fragment.TS) and r < 0.5:
            return Box(self.act(), FF)
        return FF if r > 0.93 else TT

    def chain(self, n):
        g = FF
        for _ in range(max(0, n // 2)):
            g = Box(self.act(), g)
        return g

    def boxy(self, n):
        """Formulae built from tt, ff, &, | and boxes."""
        if n <= 1:
            return TT if self.rng.random() < 0.6 else FF
        r = self.rng.random()
        if r < 0.4 or n == 2:
            return Box(self.act(), self.boxy(n - 1))
        k = self.rng.randint(1, n - 2)
        op = And if r < 0.7 else Or
        return op(self.boxy(k), self.boxy(n - 1 - k))

    def pinned(self, n):
        """A conjunction fixing the initial actions, sometimes with one conjunct dropped."""
        rng = self.rng
        S = [a for a in self.alpha if rng.random() < 0.5]
        budget = max(1, (n - 2 * (len(self.alpha) - len(S))) // max(1, len(S)) - 2)
        parts = [Dia(a, self.gen(Fragment.RS, rng.randint(1, budget))) for a in S]
        parts += [Box(b, FF) for b in self.alpha if b not in S]
        if len(parts) > 1 and rng.random() < 0.2:
            parts.pop(rng.randrange(len(parts)))
        return conj(parts)

    def gen(self, X, n):
        rng = self.rng
        if n <= 1:
            return self.leaf(X)
        if n == 2:
            if X in (Fragment.RS, Fragment.TS) and rng.random() < 0.3:
                return Box(self.act(), FF)
            return Dia(self.act(), self.leaf(X))
        r = rng.random()
        if X == Fragment.RS and r < 0.35:
            return self.pinned(n)
        if X == Fragment.TS and r < 0.15:
            return Box(self.act(), self.chain(n - 1))
        if X in (Fragment.S2, Fragment.S3, Fragment.BS) and r < 0.15:
            inner = {Fragment.S2: Fragment.S, Fragment.S3: Fragment.S2}.get(X, X)
            return Neg(self.gen(inner, n - 1))
        if X in (Fragment.S2, Fragment.S3) and r < 0.25:
            return Box(self.act(), self.boxy(n - 1))
        if X == Fragment.BS and r < 0.3:
            return Box(self.act(), self.gen(X, n - 1))
        if r < 0.45 or (n < 5 and r < 0.7):
            return Dia(self.act(), self.gen(X, n - 1))
        k = rng.randint(1, n - 2)
        op = And if r < (0.8 if X in (Fragment.CS, Fragment.RS) else 0.75) else Or
        return op(self.gen(X, k), self.gen(X, n - 1 - k))


def random_instances(seed, fragment, size: int, count: int, alphabet=("a", "b")) -> list:
    """``count`` random formulae of ``fragment`` with at most ``size`` symbols."""
    X = Fragment.parse(fragment) if not isinstance(fragment, Fragment) else fragment
    alpha = make_alphabet(alphabet)
    rng = random.Random(seed)
    g = _Gen(rng, X, alpha)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * count:
            raise BudgetExceeded("could not generate enough formulae")
        f = g.gen(X, rng.randint(max(1, size // 3), size))
        if formula_size(f) <= size and X in fragment_of(f, alpha):
            out.append(f)
    return out


def constructor_counts(formulas: Iterable[Formula]) -> dict:
    counts: dict = {}
    for f in formulas:
        for g in subformulae(f):
            name = type(g).__name__
            counts[name] = counts.get(name, 0) + 1
    return counts


__all__ = [
    "BudgetExceeded", "Universe", "universe_size", "enum_processes", "random_process",
    "brute_sat", "brute_model", "brute_entails", "brute_equivalent", "brute_characteristic",
    "brute_characteristic_mod_kernel", "brute_prime", "small_model_bounds", "encode_cnf",
    "cnf_satisfiable", "random_cnf", "encode_dnf_tautology", "dnf_tautology",
    "random_instances", "constructor_counts", "BIT_ACTIONS",
]
