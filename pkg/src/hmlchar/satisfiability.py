"""Satisfiability and validity for the modal fragments, and unsat pruning.

Deciders, cheapest first:

* S:  K-classes (is there a model at all), linear time.
* CS: J-classes (deadlocked and/or live models), linear time.
* RS: initial-action sets I(f) as bitmasks over subsets of the alphabet;
      for large alphabets, DNF disjuncts with a clash check.
* TS: DNF disjuncts with required/forbidden trace sets.
* 2S, 3S, BS: a backtracking tableau.
"""
from __future__ import annotations

from enum import IntFlag
from functools import lru_cache
from typing import Iterable

from .formula import (FF, And, Box, Dia, Ff, Formula, FormulaError, Fragment, Or, Tt, Zero,
                      actions_in, dnf_disjuncts, dual, flatten, fold_zero, fragment_of, nnf,
                      subformulae, unfold_zero)
from .lts import Node, deep

RS_BITMASK_LIMIT = 12


class FragmentViolation(FormulaError):
    pass


class SatClass(IntFlag):
    """Which kinds of models a formula has: deadlocked (0) and/or live (some move)."""

    NONE = 0
    DEAD = 1
    LIVE = 2


def _alphabet(f: Formula, alphabet) -> tuple:
    acts = set(actions_in(f))
    if alphabet is None:
        return tuple(sorted(acts)) or ("a",)
    alpha = tuple(sorted(set(alphabet)))
    missing = acts - set(alpha)
    if missing:
        raise FormulaError(f"actions {sorted(missing)} are not in the alphabet")
    return alpha


def _require(X: Fragment, f: Formula, alphabet) -> frozenset:
    frags = fragment_of(f, alphabet)
    if X is not None and Fragment(X) not in frags:
        raise FragmentViolation(f"formula is not in L_{Fragment(X).value}: {f}")
    return frags


# ---------------------------------------------------------------- K and J


@deep
def class_K(f: Formula) -> SatClass:
    """LIVE when f (in L_S) has a model, NONE otherwise."""
    return _k_map(f)[f]


def _j_map(f: Formula) -> dict:
    val: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            v = SatClass.DEAD | SatClass.LIVE
        elif isinstance(g, Ff):
            v = SatClass.NONE
        elif isinstance(g, Zero):
            v = SatClass.DEAD
        elif isinstance(g, Dia):
            v = SatClass.LIVE if val[g.f] else SatClass.NONE
        elif isinstance(g, And):
            v = val[g.l] & val[g.r]
        elif isinstance(g, Or):
            v = val[g.l] | val[g.r]
        else:
            raise FragmentViolation(f"not in L_CS: {g}")
        val[g] = v
    return val


@deep
def class_J(f: Formula, alphabet=None) -> SatClass:
    """Subset of {DEAD, LIVE}: whether f (in L_CS) has deadlocked and/or live models."""
    g = fold_zero(f, alphabet) if alphabet is not None else f
    return _j_map(g)[g]


# ---------------------------------------------------------------- initial sets


class _Subsets:
    """Subsets of an alphabet as bit positions; families of subsets as ints."""

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        k = len(self.alphabet)
        self.count = 1 << k
        self.full = (1 << self.count) - 1
        self.has = {}
        for i, a in enumerate(self.alphabet):
            m = 0
            for s in range(self.count):
                if s >> i & 1:
                    m |= 1 << s
            self.has[a] = m

    def decode(self, mask: int) -> frozenset:
        out = []
        for s in range(self.count):
            if mask >> s & 1:
                out.append(frozenset(a for i, a in enumerate(self.alphabet) if s >> i & 1))
        return frozenset(out)


@lru_cache(maxsize=64)
def _subsets(alphabet: tuple) -> _Subsets:
    return _Subsets(alphabet)


def _i_map(f: Formula, alphabet: tuple) -> dict:
    sub = _subsets(alphabet)
    val: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            v = sub.full
        elif isinstance(g, Ff):
            v = 0
        elif isinstance(g, Zero):
            v = sub.full
            for a in g.actions:
                v &= ~sub.has[a]
        elif isinstance(g, Box):
            if not isinstance(g.f, Ff):
                raise FragmentViolation(f"not in L_RS: {g}")
            v = sub.full & ~sub.has[g.a]
        elif isinstance(g, Dia):
            v = sub.has[g.a] if val[g.f] else 0
        elif isinstance(g, And):
            v = val[g.l] & val[g.r]
        elif isinstance(g, Or):
            v = val[g.l] | val[g.r]
        else:
            raise FragmentViolation(f"not in L_RS: {g}")
        val[g] = v
    return val


def initial_sets_mask(f: Formula, alphabet) -> int:
    alpha = tuple(sorted(set(alphabet)))
    return _i_map(f, alpha)[f]


@deep
def initial_sets(f: Formula, alphabet) -> frozenset:
    """I(f): the possible sets of initial actions of models of f (f in L_RS)."""
    alpha = _alphabet(f, alphabet)
    return _subsets(alpha).decode(_i_map(f, alpha)[f])


# ---------------------------------------------------------------- DNF based


def _ff_rewrite(f: Formula) -> Formula:
    """<a>ff -> ff and ff & g -> ff (both orders), bottom-up; boxes left alone."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Dia):
            body = memo[g.f]
            r = FF if isinstance(body, Ff) else Dia(g.a, body)
        elif isinstance(g, And):
            l, r_ = memo[g.l], memo[g.r]
            r = FF if isinstance(l, Ff) or isinstance(r_, Ff) else And(l, r_)
        elif isinstance(g, Or):
            r = Or(memo[g.l], memo[g.r])
        else:
            r = g
        memo[g] = r
    return memo[f]


def _rs_conj_sat(f: Formula) -> bool:
    """Disjunction-free L_RS formula: no ff conjunct, no <a>/[a]ff clash, bodies satisfiable."""
    parts = flatten(f, And)
    boxed = set()
    diamonds = []
    for g in parts:
        if isinstance(g, Ff):
            return False
        if isinstance(g, Box):
            boxed.add(g.a)
        elif isinstance(g, Zero):
            boxed.update(g.actions)
        elif isinstance(g, Dia):
            diamonds.append(g)
    for d in diamonds:
        if d.a in boxed or not _rs_conj_sat(d.f):
            return False
    return True


def _trace_tables(f: Formula, stop_on_clash: bool):
    req: dict = {}
    forb: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            req[g], forb[g] = frozenset({()}), frozenset()
        elif isinstance(g, Ff):
            req[g], forb[g] = frozenset(), frozenset({()})
        elif isinstance(g, Zero):
            req[g], forb[g] = frozenset({()}), frozenset((a,) for a in g.actions)
        elif isinstance(g, Box):
            req[g] = frozenset({()})
            forb[g] = frozenset((g.a,) + t for t in forb[g.f])
        elif isinstance(g, Dia):
            req[g] = frozenset((g.a,) + t for t in req[g.f]) | {()}
            forb[g] = frozenset()
        elif isinstance(g, And):
            req[g] = req[g.l] | req[g.r]
            forb[g] = forb[g.l] | forb[g.r]
            if stop_on_clash and req[g] & forb[g]:
                return None
        else:
            raise FormulaError(f"expected a disjunction-free L_TS formula, found {g}")
    return req[f], forb[f]


@deep
def ts_required_forbidden(f: Formula) -> tuple:
    """(required traces, forbidden traces) of a disjunction-free L_TS formula."""
    req, forb = _trace_tables(f, False)
    return set(req), set(forb)


def _ts_conj_sat(f: Formula) -> bool:
    """Disjunction-free L_TS: after the ff-rules, no conjunction requires a forbidden trace."""
    f = _ff_rewrite(f)
    if isinstance(f, Ff):
        return False
    return _trace_tables(f, True) is not None


# ---------------------------------------------------------------- tableau


@deep
def sat_tableau(f: Formula) -> bool:
    return tableau_model(f) is not None


@deep
def tableau_model(f: Formula) -> Node | None:
    """A finite tree model of f, or None when f is unsatisfiable."""
    g = nnf(unfold_zero(f))
    memo: dict = {}
    return _tableau(frozenset([g]), memo)


def _tableau(gamma: frozenset, memo: dict) -> Node | None:
    if gamma in memo:
        return memo[gamma]
    memo[gamma] = None
    todo = list(gamma)
    lits = set()
    result = None
    while todo:
        g = todo.pop()
        if isinstance(g, Tt):
            continue
        if isinstance(g, Ff):
            return None
        if isinstance(g, And):
            todo.extend((g.r, g.l))
            continue
        if isinstance(g, Or):
            rest = frozenset(todo) | lits
            result = _tableau(rest | {g.l}, memo)
            if result is None:
                result = _tableau(rest | {g.r}, memo)
            memo[gamma] = result
            return result
        if isinstance(g, (Dia, Box)):
            lits.add(g)
            continue
        raise FormulaError(f"unexpected node in tableau: {g}")
    kids = []
    for d in sorted((x for x in lits if isinstance(x, Dia)), key=str):
        succ = {d.f} | {b.f for b in lits if isinstance(b, Box) and b.a == d.a}
        m = _tableau(frozenset(succ), memo)
        if m is None:
            return None
        kids.append((d.a, m))
    result = frozenset(kids)
    memo[gamma] = result
    return result


# ---------------------------------------------------------------- dispatch


def decider_for(f: Formula, alphabet=None) -> str:
    frags = fragment_of(f, alphabet)
    if Fragment.S in frags:
        return "K"
    if Fragment.CS in frags:
        return "J"
    if Fragment.RS in frags:
        n = len(alphabet) if alphabet is not None else len(actions_in(f))
        return "I" if n <= RS_BITMASK_LIMIT else "DNF-RS"
    if Fragment.TS in frags:
        return "DNF-TS"
    return "tableau"


@deep
def sat(X, f: Formula, alphabet: Iterable[str] | None = None) -> bool:
    """Is f satisfiable?  f must belong to L_X (X=None skips the membership check)."""
    alpha = _alphabet(f, alphabet)
    _require(X, f, alpha)
    how = decider_for(f, alpha)
    if how == "K":
        return bool(class_K(f))
    if how == "J":
        return bool(class_J(f, alpha))
    if how == "I":
        return bool(_i_map(f, alpha)[f])
    if how == "DNF-RS":
        return any(_rs_conj_sat(_ff_rewrite(d)) for d in dnf_disjuncts(f))
    if how == "DNF-TS":
        return any(_ts_conj_sat(d) for d in dnf_disjuncts(f))
    return sat_tableau(f)


@deep
def valid(X, f: Formula, alphabet: Iterable[str] | None = None) -> bool:
    """Every process satisfies f: the negation of f has no model."""
    alpha = _alphabet(f, alphabet)
    if X is not None:
        _require(X, f, alpha)
    g = dual(f)
    return not sat(None, g, alpha)


# ---------------------------------------------------------------- pruning


def _sat_map(X: Fragment, f: Formula, alpha: tuple) -> dict:
    if X == Fragment.S:
        return {g: bool(v) for g, v in _k_map(f).items()}
    if X == Fragment.CS:
        return {g: bool(v) for g, v in _j_map(f).items()}
    if X == Fragment.RS and len(alpha) <= RS_BITMASK_LIMIT:
        return {g: bool(v) for g, v in _i_map(f, alpha).items()}
    return {g: sat(None, g, alpha) for g in subformulae(f)}


def _k_map(f: Formula) -> dict:
    val: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            v = SatClass.LIVE
        elif isinstance(g, Ff):
            v = SatClass.NONE
        elif isinstance(g, Dia):
            v = val[g.f]
        elif isinstance(g, And):
            v = val[g.l] & val[g.r]
        elif isinstance(g, Or):
            v = val[g.l] | val[g.r]
        else:
            raise FragmentViolation(f"not in L_S: {g}")
        val[g] = v
    return val


@deep
def prune_unsat(X, f: Formula, alphabet: Iterable[str] | None = None) -> Formula:
    """An equivalent formula whose only unsatisfiable subformulae are ff under a box.

    Unsatisfiable subformulae become ff and the ff-rules (<a>ff -> ff,
    ff & g -> ff, ff | g -> g) are applied.  For CS the result uses ``Zero``
    nodes for deadlock blocks.
    """
    X = Fragment(X)
    alpha = _alphabet(f, alphabet)
    _require(X, f, alpha)
    if X == Fragment.CS:
        f = fold_zero(f, alpha)
    ok = _sat_map(X, f, alpha)
    if not ok[f]:
        raise FormulaError("prune_unsat needs a satisfiable formula")
    memo: dict = {}

    def go(g):
        if g in memo:
            return memo[g]
        if not ok[g]:
            r = FF
        elif isinstance(g, Box) and isinstance(g.f, Ff):
            r = g
        elif isinstance(g, Box):
            r = Box(g.a, go(g.f)) if ok[g.f] else Box(g.a, FF)
        elif isinstance(g, Dia):
            r = Dia(g.a, go(g.f))
        elif isinstance(g, And):
            r = And(go(g.l), go(g.r))
        elif isinstance(g, Or):
            l, r_ = go(g.l), go(g.r)
            r = r_ if isinstance(l, Ff) else l if isinstance(r_, Ff) else Or(l, r_)
        else:
            r = g
        memo[g] = r
        return r

    for g in subformulae(f):
        go(g)
    return go(f)


@deep
def has_unsat_subformula(X, f: Formula, alphabet=None) -> bool:
    """True when some subformula other than ff-under-a-box is unsatisfiable."""
    alpha = _alphabet(f, alphabet)
    under_box = set()
    for g in subformulae(f):
        if isinstance(g, Box) and isinstance(g.f, Ff):
            under_box.add(g.f)
    ok = _sat_map(Fragment(X), fold_zero(f, alpha) if Fragment(X) == Fragment.CS else f, alpha)
    return any(not v and not (isinstance(g, Ff) and g in under_box) for g, v in ok.items())
