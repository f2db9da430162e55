from hypothesis import assume, given

from hmlchar.formula import TT, fold_zero, modal_depth, parse_formula, unfold_zero
from hmlchar.lts import as_node, parse_process
from hmlchar.modelcheck import satisfies
from hmlchar.oracle import Universe, brute_characteristic
from hmlchar.preorders import preorder
from hmlchar.primality import (BOUNDED, EXACT, RuleSet, associated_process, build_sequent_graph,
                               cs_diamond_form, decide_prime, is_saturated, prime, prime_ts_bounded,
                               rewrite_diamond, rewrite_tt, satur, simpl, trace_depth, witness,
                               zero_normal_form)
from hmlchar.altgraph import reach_a
from hmlchar.satisfiability import sat

from strategies import cs_formulas, rs_formulas, s_formulas

AB = ("a", "b")
U = Universe(AB, 3, 2)
PHI_A = "<a>([a]ff & [b]ff) & [b]ff & [a][a]ff & [a][b]ff"


def F(text, alpha=AB):
    return parse_formula(text, alpha)


def Z(text):
    """Parsed with 0 kept as a single node."""
    return fold_zero(F(text), AB)


def P(text):
    return as_node(parse_process(text))


def test_prime_examples():
    assert prime("S", F("<a>tt"), AB)
    assert not prime("S", F("<a>tt | <b>tt"))
    assert prime("S", F("<a>tt | <a><b>tt"))
    assert not prime("CS", F("<a>tt", "a"), "a")
    assert not prime("RS", F("<a>0"), AB)


def test_sequent_graphs():
    assert reach_a(build_sequent_graph(TT, RuleSet.SIM))
    assert not reach_a(build_sequent_graph(F("<a>tt | <b>tt"), RuleSet.SIM))
    assert reach_a(build_sequent_graph(F("<a>tt | <a><b>tt"), RuleSet.SIM))


def test_rewrites():
    assert rewrite_tt(F("tt & <a>tt")) == F("<a>tt")
    assert cs_diamond_form(F("<a><a>tt & <a>0"), AB) == Z("<a>0")
    # equivalent to <a>tt, which is not prime: the rules collapse it to tt
    psi = F("(<a>tt & <a>0) | <a>tt")
    assert cs_diamond_form(psi, AB) == TT and not prime("CS", psi, AB)
    assert prime("CS", F("(<a>tt & <a>0) | <a>0"), AB)
    assert rewrite_diamond(F("<a>tt & <b><a>tt")) == TT
    assert rewrite_diamond(Z("<a>0 & <b><a>tt")) == Z("<a>0")


def test_zero_normal_form():
    assert zero_normal_form(F("0 | 0"), AB) == Z("0")
    assert zero_normal_form(F("(0 | <a>0) & <a>tt"), AB) == Z("<a>tt & <a>0")
    f = F("(<a>tt | <b>tt) & (0 | <a>0)")
    g = zero_normal_form(f, AB)
    assert satisfies(P("a.0"), g) and not satisfies(P("0"), g)


def test_saturation():
    assert satur(F("<a>0"), AB).is_tt
    assert is_saturated(F("<a>0 & [b]ff"), AB)
    assert not satur(F("<a>0 & [b]ff"), AB).is_tt
    assert simpl(F("<a>tt & [b]ff"), {"a"}) == F("<a>tt & [b]ff")


def test_associated_process():
    assert associated_process(TT) == P("0")
    assert associated_process(F("<a>tt & <b>tt")) == P("a.0 + b.0")
    assert associated_process(F("<a>(<a>tt & <b>tt) & <b>(<a>tt & <b>tt)")) == P(
        "a.(a.0+b.0)+b.(a.0+b.0)")


def test_witness_examples():
    assert witness("S", F("<a>tt")) == P("a.0")
    assert witness("CS", F("0"), AB) == P("0")
    assert witness("RS", F("<a>0 & [b]ff"), AB) == P("a.0")


def test_ts_bounded():
    v = prime_ts_bounded(F("[a]ff & [b]ff"), AB)
    assert v.prime and v.witness == P("0")
    v = prime_ts_bounded(F(PHI_A), AB)
    assert v.prime and v.witness == P("a.0") and v.confidence == BOUNDED
    assert not prime_ts_bounded(F("<a>tt"), AB).prime


def test_trace_depth():
    assert trace_depth(TT) == 0
    assert trace_depth(F("<a>tt | <a><a>tt")) == 1
    assert trace_depth(F("<a>tt & <a><a>tt")) == 2


def test_rs_paths_agree():
    for text in ["<a>0", "<a>0 & [b]ff", "(<a>tt & [b]ff) | (<a>tt & <b>tt)", "[a]ff & [b]ff"]:
        f = F(text)
        assert prime("RS", f, AB, bounded=True) == prime("RS", f, AB, bounded=False), text


def check_against_oracle(X, f):
    assume(sat(X, f, AB))
    md = max(1, _md(f))
    assume(md <= 2)
    v = decide_prime(X, f, AB)
    assert v.confidence == EXACT
    expected = brute_characteristic(X, f, U)
    assert v.prime == (expected is not None)
    if v.prime:
        assert satisfies(v.witness, f)
        assert preorder(X, v.witness, expected) and preorder(X, expected, v.witness)


def _md(f):
    return modal_depth(unfold_zero(f))


@given(s_formulas())
def test_s_matches_oracle(f):
    check_against_oracle("S", f)


@given(cs_formulas())
def test_cs_matches_oracle(f):
    check_against_oracle("CS", f)


@given(rs_formulas())
def test_rs_matches_oracle(f):
    check_against_oracle("RS", f)
