import pytest
from hypothesis import given

from hmlchar.formula import (FF, TT, And, Box, Dia, EquationSystem, FormulaError, Fragment, Var,
                             CyclicSystemError, dnf_count, dnf_disjuncts, dual, es_build,
                             es_expand, format_formula, format_system, fragment_of, metrics, nnf,
                             parse_formula, parse_system, to_dnf, unfold_zero)
from hmlchar.modelcheck import satisfies

from strategies import hml_formulas, nodes

AB = ("a", "b")
PHI = "<a>(<a>tt & <b>tt) & <b>(<a>tt & <b>tt)"
ALL = frozenset(Fragment)


def test_parse_examples():
    assert parse_formula("<a>tt", AB) == Dia("a", TT)
    assert unfold_zero(parse_formula("0", AB)) == And(Box("a", FF), Box("b", FF))
    phi = parse_formula(PHI)
    assert phi == And(Dia("a", And(Dia("a", TT), Dia("b", TT))), Dia("b", And(Dia("a", TT), Dia("b", TT))))


def test_zero_needs_alphabet():
    with pytest.raises(FormulaError):
        parse_formula("0")


def test_fragment_of():
    assert fragment_of(parse_formula("<a>tt")) == ALL
    assert fragment_of(parse_formula("[a]ff")) == ALL - {Fragment.S, Fragment.CS}
    assert fragment_of(parse_formula("[a]<b>tt")) == {Fragment.BS}
    assert Fragment.CS in fragment_of(parse_formula("0 | <a>0", AB), AB)


def test_dual():
    assert dual(TT) == FF
    assert dual(parse_formula("<a>tt")) == parse_formula("[a]ff")
    phi = parse_formula(PHI)
    assert dual(dual(phi)) == phi


def test_metrics_example():
    m = metrics(parse_formula(PHI))
    assert (m.explicit_size, m.decl_size, m.eq_length) == (13, 2, 5)
    m = metrics(es_build(parse_formula(PHI)))
    assert (m.explicit_size, m.decl_size, m.eq_length) == (13, 2, 5)
    assert metrics(parse_formula("<a>[b]ff")).modal_depth == 2


def test_dnf():
    f = parse_formula("<a>(<a>tt | <b>tt)")
    assert set(dnf_disjuncts(f)) == {parse_formula("<a><a>tt"), parse_formula("<a><b>tt")}
    phi = parse_formula(PHI)
    assert to_dnf(phi) == phi and list(dnf_disjuncts(phi)) == [phi]
    g = parse_formula("(<a>tt | <b>tt) & ([a]ff | <a><a>tt)")
    assert dnf_count(g) == 4 == len(list(dnf_disjuncts(g)))


def test_es_build_and_expand():
    es = es_build(parse_formula(PHI))
    assert len(es.equations) == 2
    assert es_expand(es) == parse_formula(PHI)
    es = es_build(TT)
    assert es.equations == [("X0", TT)]


def test_system_text_roundtrip():
    es = es_build(parse_formula(PHI))
    assert es_expand(parse_system(format_system(es))) == parse_formula(PHI)


def test_cyclic_system_rejected():
    with pytest.raises(CyclicSystemError):
        EquationSystem([("X", Dia("a", Var("Y"))), ("Y", Dia("a", Var("X")))], "X")


@given(hml_formulas())
def test_print_parse_roundtrip(f):
    assert parse_formula(format_formula(f)) == f


@given(hml_formulas(), nodes(2, 2))
def test_semantic_identities(f, p):
    v = satisfies(p, f)
    assert satisfies(p, dual(f)) == (not v)
    assert satisfies(p, nnf(f)) == v
    assert satisfies(p, to_dnf(nnf(f))) == v
    assert satisfies(p, es_expand(es_build(f))) == v
