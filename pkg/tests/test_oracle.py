import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmlchar.formula import Dia, Fragment, fragment_of, parse_formula
from hmlchar.lts import as_node, parse_process, show
from hmlchar.oracle import (BudgetExceeded, Universe, brute_characteristic, brute_entails,
                            brute_sat, cnf_satisfiable, constructor_counts, encode_cnf,
                            encode_dnf_tautology, dnf_tautology, enum_processes, random_cnf,
                            random_instances, random_process, universe_size)
from hmlchar.preorders import trace_equiv
from hmlchar.satisfiability import sat

from strategies import s_formulas

AB = ("a", "b")


def F(text, alpha=AB):
    return parse_formula(text, alpha)


def test_enumeration():
    assert {show(p) for p in enum_processes(Universe(("a",), 1, 1))} == {"0", "a.0"}
    assert {show(p) for p in enum_processes(Universe(AB, 1, 2))} == {"0", "a.0", "b.0", "a.0 + b.0"}
    for d in range(4):
        assert len(enum_processes(Universe(AB, d, 2))) == universe_size(2, d, 2)
    assert universe_size(2, 2, 2) == 37


def test_budget():
    with pytest.raises(BudgetExceeded):
        enum_processes(Universe(AB, 4, 3, cap=1000))


def test_brute_checks(u2):
    assert not brute_sat(F("<a>tt & [a]ff"))
    assert brute_entails(F("<a>0"), F("(<a>0 & [b]ff) | (<a>0 & <b>tt)"), u2)
    assert brute_characteristic("TS", F("<a>([a]ff & [b]ff) & [b]ff & [a][a]ff & [a][b]ff"), u2) \
        == as_node(parse_process("a.0"))
    assert brute_characteristic("S", F("<a>tt"), u2) == as_node(parse_process("a.0"))
    assert brute_characteristic("S", F("<a>tt | <b>tt"), u2) is None


def test_reductions():
    assert encode_cnf("RS", [[1]]) == F("<a1>tt", None)
    assert not sat("RS", encode_cnf("RS", [[1], [-1]]))
    p0, q = encode_dnf_tautology([[1], [-1]])
    assert trace_equiv(p0, q)
    p0, q = encode_dnf_tautology([[1, 2], [-1]])
    assert not trace_equiv(p0, q) and not dnf_tautology([[1, 2], [-1]])


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_ts_encoding(seed):
    cnf = random_cnf(seed, 4, 6)
    assert sat("TS", encode_cnf("TS", cnf)) == cnf_satisfiable(cnf)


def test_generators_deterministic_and_in_fragment():
    for X in Fragment:
        a = random_instances(7, X, 10, 30)
        assert a == random_instances(7, X, 10, 30)
        assert all(X in fragment_of(f, AB) for f in a)
    u = Universe(AB, 3, 2)
    assert random_process(3, u) == random_process(3, u)


def test_generator_covers_constructors():
    want = {"S": {"Tt", "Ff", "Dia", "And", "Or"}, "CS": {"Zero", "Dia", "And", "Or"},
            "RS": {"Box", "Dia", "And", "Or"}, "BS": {"Box", "Dia", "Neg"}}
    for X, names in want.items():
        counts = constructor_counts(random_instances(1, X, 12, 200))
        assert names <= set(counts), X


U1, U2 = Universe(AB, 1, 2), Universe(AB, 2, 2)


@given(s_formulas(), s_formulas())
def test_diamond_lemma(f, g):
    # the a-children of U2 are exactly the processes of U1
    assert brute_entails(Dia("a", f), Dia("a", g), U2) == brute_entails(f, g, U1)
