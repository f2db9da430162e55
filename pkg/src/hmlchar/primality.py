"""Primality of formulae in the simulation-based logics.

A formula is prime when, whenever it entails a disjunction, it entails one of
the disjuncts.  For L_S, L_CS and L_RS primality reduces to alternating
reachability in a graph of sequents ``l1, l2 => r`` built by the rules below.
Each fragment first rewrites its input into a shape the rules are complete on:

* S:  drop unsatisfiable subformulae.
* CS: drop unsatisfiable subformulae, apply the tt-rules, the zero normal
      form and the diamond rule, giving ``f_dia``; then check ``f_dia`` is prime
      and that its characteristic process satisfies f.
* RS: saturate (every nested diamond body pins down its initial actions);
      then the same check with the ready-simulation rules.

TS uses a bounded enumeration; 2S, 3S and BS get bounded-universe evidence
only.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement

from . import oracle
from .altgraph import EXISTS, FORALL, AltGraph, reach_a, to_dot, winning_subgraph
from .formula import (TT, And, Box, Dia, Ff, Formula, FormulaError, Fragment, Or, Tt, Zero, conj,
                      disj, dnf_count, dnf_disjuncts, flatten, fold_zero, format_formula,
                      modal_depth, subformulae, unfold_zero)
from .lts import NIL, Node, deep, make_alphabet, plus, prefix
from .modelcheck import satisfies
from .preorders import TRACE
from .satisfiability import (RS_BITMASK_LIMIT, FragmentViolation, _alphabet, _require,
                             _rs_conj_sat, _ff_rewrite, initial_sets_mask, prune_unsat, sat)

EXACT = "exact"
BOUNDED = "bounded-evidence"
TRUE_SINK = "TRUE"


class RuleSet(str, Enum):
    SIM = "SIM"
    CSIM = "CSIM"
    RSIM = "RSIM"


@dataclass(frozen=True)
class PrimeVerdict:
    prime: bool
    confidence: str = EXACT
    witness: Node | None = None
    method: str = ""
    note: str = ""

    def __bool__(self):
        return self.prime


# ---------------------------------------------------------------- sequent graphs


def _is_empty_box(f: Formula) -> bool:
    return isinstance(f, Box) and isinstance(f.f, Ff)


def _expand(key, rules: RuleSet, tt_axiom: bool):
    """Apply the first matching rule to a sequent: (label, rule name, children)."""
    l1, l2, r = key
    if isinstance(r, And):
        return FORALL, "R&", [(l1, l2, r.l), (l1, l2, r.r)]
    if isinstance(r, Or):
        return EXISTS, "R|", [(l1, l2, r.l), (l1, l2, r.r)]
    if rules == RuleSet.SIM or tt_axiom:
        if isinstance(r, Tt):
            return EXISTS, "tt", [TRUE_SINK]
    if rules == RuleSet.CSIM:
        if isinstance(r, Zero) and l1 is r and l2 is r:
            return EXISTS, "0", [TRUE_SINK]
    if rules == RuleSet.RSIM:
        if _is_empty_box(r) and l1 is r and l2 is r:
            return EXISTS, "[]", [TRUE_SINK]
    if isinstance(l1, Or):
        return FORALL, "L|1", [(l1.l, l2, r), (l1.r, l2, r)]
    if isinstance(l2, Or):
        return FORALL, "L|2", [(l2.l, l1, r), (l2.r, l1, r)]
    conj_ok = isinstance(r, Dia) or (rules == RuleSet.RSIM and _is_empty_box(r))
    if conj_ok and isinstance(l1, And):
        return EXISTS, "L&1", [(l1.l, l2, r), (l1.r, l2, r)]
    if conj_ok and isinstance(l2, And):
        return EXISTS, "L&2", [(l2.l, l1, r), (l2.r, l1, r)]
    if (isinstance(r, Dia) and isinstance(l1, Dia) and isinstance(l2, Dia)
            and l1.a == r.a and l2.a == r.a):
        return EXISTS, "<>", [(l1.f, l2.f, r.f)]
    return EXISTS, None, []


@deep
def build_sequent_graph(f: Formula, rules=RuleSet.SIM, left: tuple | None = None,
                        tt_axiom: bool = False) -> AltGraph:
    """The graph of sequents reachable from ``(f, f => f)``.

    ``left`` replaces the two left formulae of the source (used by the
    pairwise ready-simulation check); ``tt_axiom`` keeps the tt axiom in the
    CS/RS rule sets for right-hand sides that may contain tt.
    """
    rules = RuleSet(rules)
    _check_rule_input(f, rules, left is None)
    g = AltGraph()
    sink, _ = g.vertex(TRUE_SINK, EXISTS, "TRUE")
    g.target = sink
    l1, l2 = left if left is not None else (f, f)
    src, _ = g.vertex((l1, l2, f))
    g.source = src
    stack = [src]
    while stack:
        v = stack.pop()
        label, rule, kids = _expand(g.keys[v], rules, tt_axiom)
        g.labels[v] = label if len(kids) > 1 else EXISTS
        g.info[v] = rule
        for k in kids:
            w, created = g.vertex(k)
            g.add_edge(v, w)
            if created:
                stack.append(w)
    return g


def _check_rule_input(f: Formula, rules: RuleSet, strict: bool):
    for g in subformulae(f):
        if isinstance(g, Ff) and rules == RuleSet.SIM:
            raise FormulaError("the simulation rules need an ff-free formula")
        if isinstance(g, Box) and not _is_empty_box(g):
            raise FormulaError(f"unexpected box in sequent input: {g}")
        if isinstance(g, Tt) and strict and rules != RuleSet.SIM:
            raise FormulaError("tt must be rewritten away before building this graph")


def sequent_dot(g: AltGraph, highlight: dict | None = None) -> str:
    def show(key):
        if key == TRUE_SINK:
            return "TRUE"
        l1, l2, r = key
        return f"{format_formula(l1)}, {format_formula(l2)} => {format_formula(r)}"
    return to_dot(g, show, highlight)


def graph_witness(g: AltGraph) -> Node:
    """Process read off a winning strategy: axioms give 0, diamonds prefix, R& sums."""
    strat = winning_subgraph(g)
    memo: dict = {g.target: NIL}

    order = []
    seen = set()
    stack = [(g.source, False)]
    while stack:
        v, done = stack.pop()
        if done:
            order.append(v)
            continue
        if v in seen or v == g.target:
            continue
        seen.add(v)
        stack.append((v, True))
        for w in strat[v]:
            stack.append((w, False))
    for v in order:
        kids = [memo[w] for w in strat[v]]
        rule = g.info[v]
        if rule in ("tt", "0", "[]"):
            p = NIL
        elif rule == "<>":
            p = prefix(g.keys[v][2].a, kids[0])
        elif rule == "R&":
            p = plus(*kids)
        else:
            p = kids[0]
        memo[v] = p
    return memo[g.source]


# ---------------------------------------------------------------- rewriting


@deep
def rewrite_tt(f: Formula) -> Formula:
    """Normal form under tt | g -> tt and tt & g -> g (modulo commutativity)."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, And):
            l, r = memo[g.l], memo[g.r]
            out = r if isinstance(l, Tt) else l if isinstance(r, Tt) else And(l, r)
        elif isinstance(g, Or):
            l, r = memo[g.l], memo[g.r]
            out = TT if isinstance(l, Tt) or isinstance(r, Tt) else Or(l, r)
        elif isinstance(g, Dia):
            out = Dia(g.a, memo[g.f])
        elif isinstance(g, Box):
            out = Box(g.a, memo[g.f])
        else:
            out = g
        memo[g] = out
    return memo[f]


@deep
def rewrite_diamond(f: Formula) -> Formula:
    """Normal form under <a>tt -> tt together with the tt-rules."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Dia):
            body = memo[g.f]
            out = TT if isinstance(body, Tt) else Dia(g.a, body)
        elif isinstance(g, And):
            l, r = memo[g.l], memo[g.r]
            out = r if isinstance(l, Tt) else l if isinstance(r, Tt) else And(l, r)
        elif isinstance(g, Or):
            l, r = memo[g.l], memo[g.r]
            out = TT if isinstance(l, Tt) or isinstance(r, Tt) else Or(l, r)
        elif isinstance(g, Box):
            out = Box(g.a, memo[g.f])
        else:
            out = g
        memo[g] = out
    return memo[f]


def _zero_split(g: Formula):
    """For ``0 | rest`` return rest; otherwise None."""
    if isinstance(g, Or) and isinstance(g.l, Zero):
        return g.r
    return None


@deep
def zero_normal_form(f: Formula, alphabet=None) -> Formula:
    """Normalise the placement of the deadlock formula 0, innermost first.

    Rules, modulo associativity and commutativity:
    0|0 -> 0, 0&g -> 0, (0|g1)&g2 -> g1&g2 when g2 is neither 0 nor 0|..., and
    (0|g1)&(0|g2) -> 0|(g1&g2).  A formula satisfied by 0 ends up as 0 or 0|g.
    Deadlock blocks of [a]ff are folded into ``Zero`` when an alphabet is given.
    """
    if alphabet is not None:
        f = fold_zero(f, alphabet)
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, Dia):
            out = Dia(g.a, memo[g.f])
        elif isinstance(g, Or):
            parts = []
            zero = None
            for h in flatten(Or(memo[g.l], memo[g.r]), Or):
                if isinstance(h, Zero):
                    zero = h
                else:
                    parts.append(h)
            if zero is None:
                out = disj(parts)
            elif parts:
                out = Or(zero, disj(parts))
            else:
                out = zero
        elif isinstance(g, And):
            parts = flatten(And(memo[g.l], memo[g.r]), And)
            zeros = [h for h in parts if isinstance(h, Zero)]
            if zeros:
                out = zeros[0]
            else:
                rests = [_zero_split(h) for h in parts]
                plain = [h for h, r in zip(parts, rests) if r is None]
                stripped = [r for r in rests if r is not None]
                if plain or not stripped:
                    out = conj(_flat_conj(plain + stripped))
                else:
                    out = Or(_zero_of(parts), conj(_flat_conj(stripped)))
        else:
            out = g
        memo[g] = out
    return memo[f]


def _zero_of(parts) -> Zero:
    for h in parts:
        if isinstance(h, Or) and isinstance(h.l, Zero):
            return h.l
    raise AssertionError("no zero disjunct")


def _flat_conj(parts):
    out = []
    for h in parts:
        out.extend(flatten(h, And))
    return out


@deep
def cs_diamond_form(f: Formula, alphabet) -> Formula:
    """The CS pipeline: prune, tt-rules, zero normal form, diamond rule."""
    alpha = make_alphabet(alphabet)
    g = prune_unsat(Fragment.CS, f, alpha)
    g = rewrite_tt(g)
    g = zero_normal_form(g)
    return rewrite_diamond(g)


# ---------------------------------------------------------------- saturation (RS)


@dataclass(frozen=True)
class SaturationResult:
    formula: Formula
    is_tt: bool


class _Initials:
    """Singleton initial-action sets, via bitmasks or structurally for conjunctions."""

    def __init__(self, alphabet: tuple):
        self.alpha = alphabet
        self.bitmask = len(alphabet) <= RS_BITMASK_LIMIT
        self.memo: dict = {}

    def singleton(self, f: Formula):
        if f in self.memo:
            return self.memo[f]
        if isinstance(f, Tt):
            out = None
        elif self.bitmask:
            mask = initial_sets_mask(f, self.alpha)
            if mask and mask & (mask - 1) == 0:
                idx = mask.bit_length() - 1
                out = frozenset(a for k, a in enumerate(self.alpha) if idx >> k & 1)
            else:
                out = None
        else:
            out = self._structural(f)
        self.memo[f] = out
        return out

    def _structural(self, f: Formula):
        dias, boxes = set(), set()
        for h in flatten(f, And):
            if isinstance(h, Dia):
                dias.add(h.a)
            elif _is_empty_box(h):
                boxes.add(h.a)
            elif isinstance(h, Tt):
                continue
            else:
                raise FormulaError("large alphabets need disjunction-free input for saturation")
        if dias & boxes or (dias | boxes) != set(self.alpha):
            return None
        return frozenset(dias)


_FALSE = object()


@deep
def simpl(f: Formula, S) -> Formula:
    """Drop top-level [a]ff with a in S and <a>g with a not in S, propagating falsity."""
    S = frozenset(S)

    def go(g):
        if isinstance(g, And):
            l, r = go(g.l), go(g.r)
            if l is _FALSE or r is _FALSE:
                return _FALSE
            return And(l, r)
        if isinstance(g, Or):
            l, r = go(g.l), go(g.r)
            if l is _FALSE:
                return r
            if r is _FALSE:
                return l
            return Or(l, r)
        if _is_empty_box(g) and g.a in S:
            return _FALSE
        if isinstance(g, Dia) and g.a not in S:
            return _FALSE
        return g

    out = go(f)
    if out is _FALSE:
        raise FormulaError("simpl removed everything; the initial set does not fit the formula")
    return out


def _map_top_diamonds(f: Formula, fn) -> Formula:
    if isinstance(f, And):
        return And(_map_top_diamonds(f.l, fn), _map_top_diamonds(f.r, fn))
    if isinstance(f, Or):
        return Or(_map_top_diamonds(f.l, fn), _map_top_diamonds(f.r, fn))
    if isinstance(f, Dia):
        return fn(f)
    return f


@deep
def satur(f: Formula, alphabet) -> SaturationResult:
    """Saturate an L_RS formula whose only unsatisfiable subformulae are ff under boxes.

    Returns tt, or an equivalent-or-stronger formula that is saturated,
    simplified, tt-free and whose diamond bodies are all saturated.
    """
    alpha = make_alphabet(alphabet)
    ini = _Initials(alpha)
    memo: dict = {}
    out = _satur(unfold_zero(f), ini, memo)
    return SaturationResult(out, isinstance(out, Tt))


def _satur(f: Formula, ini: _Initials, memo: dict) -> Formula:
    if f in memo:
        return memo[f]
    phi = f
    while True:
        prev = phi
        phi = rewrite_tt(phi)
        S = ini.singleton(phi)
        phi = TT if S is None else simpl(phi, S)

        def sub(d):
            T = ini.singleton(d.f)
            if T is None:
                return TT
            return Dia(d.a, _satur(simpl(d.f, T), ini, memo))

        phi = _map_top_diamonds(phi, sub)
        if phi is prev:
            break
    if not isinstance(phi, Tt):
        phi = simpl(phi, ini.singleton(phi))
    memo[f] = phi
    return phi


@deep
def is_saturated(f: Formula, alphabet) -> bool:
    return _Initials(make_alphabet(alphabet)).singleton(unfold_zero(f)) is not None


# ---------------------------------------------------------------- associated processes


@deep
def associated_process(f: Formula) -> Node:
    """p_tt = p_0 = p_[a]ff = 0, p_<a>g = a.p_g, p_(g & h) = p_g + p_h."""
    memo: dict = {}
    for g in subformulae(f):
        if isinstance(g, (Tt, Zero)) or _is_empty_box(g):
            p = NIL
        elif isinstance(g, Ff):
            continue
        elif isinstance(g, Dia):
            p = prefix(g.a, memo[g.f])
        elif isinstance(g, And):
            p = plus(memo[g.l], memo[g.r])
        else:
            raise FormulaError(f"associated_process needs a disjunction-free formula, got {g}")
        memo[g] = p
    if f not in memo:
        raise FormulaError("associated_process: unexpected ff")
    return memo[f]


@deep
def trace_depth(f: Formula) -> int:
    """td(tt)=0, td(<a>g)=1+td(g), td(g|h)=min, td(g&h)=max."""
    td: dict = {}
    for g in subformulae(f):
        if isinstance(g, Tt):
            td[g] = 0
        elif isinstance(g, Dia):
            td[g] = 1 + td[g.f]
        elif isinstance(g, Or):
            td[g] = min(td[g.l], td[g.r])
        elif isinstance(g, And):
            td[g] = max(td[g.l], td[g.r])
        else:
            raise FormulaError(f"trace_depth needs an ff-free L_S formula, got {g}")
    return td[f]


# ---------------------------------------------------------------- deciders


def _prime_graph(f: Formula, rules: RuleSet, dot: list | None):
    g = build_sequent_graph(f, rules)
    if dot is not None:
        dot.append(sequent_dot(g))
    if not reach_a(g):
        return False, None
    return True, graph_witness(g)


def prime_s(f: Formula, alphabet=None, dot: list | None = None) -> PrimeVerdict:
    alpha = _alphabet(f, alphabet)
    if not sat(Fragment.S, f, alpha):
        return PrimeVerdict(True, method="unsat")
    g = prune_unsat(Fragment.S, f, alpha)
    ok, p = _prime_graph(g, RuleSet.SIM, dot)
    return PrimeVerdict(ok, witness=p, method="SIM graph")


def prime_cs(f: Formula, alphabet=None, dot: list | None = None) -> PrimeVerdict:
    alpha = _alphabet(f, alphabet)
    if not sat(Fragment.CS, f, alpha):
        return PrimeVerdict(True, method="unsat")
    d = cs_diamond_form(f, alpha)
    if isinstance(d, Tt):
        return PrimeVerdict(False, method="diamond form is tt")
    ok, p = _prime_graph(d, RuleSet.CSIM, dot)
    if not ok:
        return PrimeVerdict(False, method="CSIM graph")
    if not satisfies(p, f):
        return PrimeVerdict(False, method="witness of the diamond form fails f")
    return PrimeVerdict(True, witness=p, method="CSIM graph")


def prime_rs(f: Formula, alphabet=None, dot: list | None = None,
             bounded: bool | None = None, max_pairs: int = 20_000) -> PrimeVerdict:
    alpha = _alphabet(f, alphabet)
    f = unfold_zero(f)
    if not sat(Fragment.RS, f, alpha):
        return PrimeVerdict(True, method="unsat")
    if bounded is None:
        bounded = len(alpha) <= RS_BITMASK_LIMIT
    g = prune_unsat(Fragment.RS, f, alpha)
    if not bounded:
        return _prime_rs_pairs(f, g, alpha, dot, max_pairs)
    s = satur(g, alpha)
    if s.is_tt:
        return PrimeVerdict(False, method="saturation is tt")
    ok, p = _prime_graph(s.formula, RuleSet.RSIM, dot)
    if not ok:
        return PrimeVerdict(False, method="RSIM graph")
    if not satisfies(p, f):
        return PrimeVerdict(False, method="witness of the saturation fails f")
    return PrimeVerdict(True, witness=p, method="RSIM graph")


def _prime_rs_pairs(f, g, alpha, dot, max_pairs) -> PrimeVerdict:
    """Pairwise check over the DNF disjuncts of g (for alphabets too large for bitmasks)."""
    n = dnf_count(g)
    if n * (n + 1) // 2 > max_pairs:
        raise oracle.BudgetExceeded(f"{n} DNF disjuncts exceed the pair budget")
    ini = _Initials(alpha)
    ini.bitmask = False
    memo: dict = {}
    sats = []
    for d in dict.fromkeys(dnf_disjuncts(g)):
        if not _rs_conj_sat(_ff_rewrite(d)):
            continue
        s = _satur(d, ini, memo)
        if isinstance(s, Tt):
            return PrimeVerdict(False, method="a disjunct saturates to tt")
        sats.append(s)
    sats = list(dict.fromkeys(sats))
    for si, sj in combinations_with_replacement(sats, 2):
        graph = build_sequent_graph(g, RuleSet.RSIM, left=(si, sj), tt_axiom=True)
        if dot is not None:
            dot.append(sequent_dot(graph))
        if not reach_a(graph):
            return PrimeVerdict(False, method="pairwise RSIM graph")
    procs = [associated_process(s) for s in sats]
    from .preorders import READY, preorder
    for p in procs:
        if satisfies(p, f) and all(preorder(READY, p, q) for q in procs):
            return PrimeVerdict(True, witness=p, method="pairwise RSIM graphs")
    return PrimeVerdict(True, method="pairwise RSIM graphs", note="no minimal witness found")


def prime_ts_bounded(f: Formula, alphabet=None, width: int = 2,
                     cap: int = oracle.DEFAULT_CAP) -> PrimeVerdict:
    """Search p of depth <= md(f) below every model of depth <= md(f)+1 in trace simulation.

    The depth bound is complete for L_TS; the width bound is not, so the
    verdict is exact only when the width covers every distinct summand.
    """
    alpha = _alphabet(f, alphabet)
    d = modal_depth(f)
    u = oracle.Universe(alpha, d + 1, width, cap)
    fam = u.family
    models = fam.mask(f)
    if not models:
        return PrimeVerdict(True, confidence=_ts_confidence(len(alpha), d, width),
                            method="no model in the universe")
    p = oracle.brute_characteristic(TRACE, f, u, max_depth=d)
    return PrimeVerdict(p is not None, confidence=_ts_confidence(len(alpha), d, width),
                        witness=p, method="bounded enumeration")


def _ts_confidence(n_actions: int, d: int, width: int) -> str:
    # the width never binds when it reaches the number of distinct (action, child) pairs
    need = n_actions * oracle.universe_size(n_actions, d, 10 ** 9) if d < 3 else None
    return EXACT if need is not None and width >= need else BOUNDED


def prime_bounded(X, f: Formula, alphabet=None, depth: int | None = None, width: int = 2,
                  cap: int = oracle.DEFAULT_CAP) -> PrimeVerdict:
    """Bounded-universe evidence: satisfiable f is reported prime when it has a characteristic process."""
    alpha = _alphabet(f, alphabet)
    d = modal_depth(f) + 1 if depth is None else depth
    u = oracle.Universe(alpha, d, width, cap)
    if not u.family.mask(f):
        if not sat(None, f, alpha):
            return PrimeVerdict(True, method="unsat")
        return PrimeVerdict(False, confidence=BOUNDED, method="no model in the universe")
    p = oracle.brute_characteristic(X, f, u, max_depth=d)
    return PrimeVerdict(p is not None, confidence=BOUNDED, witness=p, method="bounded universe")


@deep
def decide_prime(X, f: Formula, alphabet=None, dot: list | None = None, **opts) -> PrimeVerdict:
    X = Fragment.parse(X) if not isinstance(X, Fragment) else X
    alpha = _alphabet(f, alphabet)
    _require(X, f, alpha)
    if X == Fragment.S:
        return prime_s(f, alpha, dot)
    if X == Fragment.CS:
        return prime_cs(f, alpha, dot)
    if X == Fragment.RS:
        return prime_rs(f, alpha, dot, bounded=opts.get("bounded"))
    if X == Fragment.TS:
        if not sat(Fragment.TS, f, alpha):
            return PrimeVerdict(True, method="unsat")
        return prime_ts_bounded(f, alpha, width=opts.get("width", 2))
    if not sat(X, f, alpha):
        return PrimeVerdict(True, method="unsat")
    return prime_bounded(X, f, alpha, depth=opts.get("depth"), width=opts.get("width", 2))


def prime(X, f: Formula, alphabet=None, **opts) -> bool:
    return decide_prime(X, f, alphabet, **opts).prime


def witness(X, f: Formula, alphabet=None) -> Node:
    """A process for which a satisfiable prime f is characteristic."""
    v = decide_prime(X, f, alphabet)
    if not v.prime or v.witness is None:
        raise FormulaError("witness needs a satisfiable prime formula")
    return v.witness


__all__ = [
    "RuleSet", "PrimeVerdict", "SaturationResult", "build_sequent_graph", "sequent_dot",
    "graph_witness", "rewrite_tt", "rewrite_diamond", "zero_normal_form", "cs_diamond_form",
    "satur", "simpl", "is_saturated", "associated_process", "trace_depth", "prime_s", "prime_cs",
    "prime_rs", "prime_ts_bounded", "prime_bounded", "decide_prime", "prime", "witness",
    "EXACT", "BOUNDED", "FragmentViolation",
]
