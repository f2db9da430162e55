from hypothesis import given

from hmlchar.charform import chi
from hmlchar.formula import TT, EquationSystem, es_expand, parse_formula
from hmlchar.lts import as_node, parse_process
from hmlchar.modelcheck import satisfies, satisfies_decl
from hmlchar.preorders import SIM, preorder

from strategies import hml_formulas, nodes

P2 = parse_process("a.(a.0+b.0)+b.(a.0+b.0)")


def test_satisfies_examples():
    assert satisfies(parse_process("0"), TT)
    assert satisfies(parse_process("a.0"), parse_formula("<a>tt"))
    assert not satisfies(parse_process("0"), parse_formula("<a>tt | <b>tt"))


def test_satisfies_decl_examples():
    es = chi("S", P2, "ab")
    assert satisfies_decl(P2, es)
    assert satisfies_decl(parse_process("0"), EquationSystem([("X0", TT)], "X0"))
    assert not satisfies_decl(parse_process("a.0"), es)
    assert not preorder(SIM, P2, as_node(parse_process("a.0")))


def test_deep_process_does_not_overflow():
    p = "0"
    for _ in range(3000):
        p = f"a.{p}"
    f = "tt"
    for _ in range(3000):
        f = f"<a>{f}"
    assert satisfies(parse_process(p), parse_formula(f))


@given(nodes(), nodes(2, 2))
def test_decl_agrees_with_expanded(p, q):
    es = chi("BS", p, "ab")
    assert satisfies_decl(q, es) == satisfies(q, es_expand(es))


@given(hml_formulas(), nodes(2, 2))
def test_negation(f, p):
    from hmlchar.formula import Neg
    assert satisfies(p, Neg(f)) != satisfies(p, f)
