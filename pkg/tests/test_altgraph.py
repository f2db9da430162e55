from hypothesis import given
from hypothesis import strategies as st

from hmlchar.altgraph import EXISTS, FORALL, AltGraph, reach_a, reach_a_naive, to_dot, winning_subgraph
from hmlchar.formula import parse_formula
from hmlchar.primality import TRUE_SINK, RuleSet, build_sequent_graph


def graph(labels, edges, source=0, target=None):
    g = AltGraph()
    for i, lab in enumerate(labels):
        g.vertex(i, lab)
    for u, v in edges:
        g.add_edge(u, v)
    g.source = source
    g.target = len(labels) - 1 if target is None else target
    return g


def example():
    # 0 = exists, 1 = forall a, 2 = forall b, 3 = dead end, 4 = target
    return graph([EXISTS, FORALL, FORALL, EXISTS, EXISTS], [(0, 1), (0, 2), (1, 4), (2, 4), (2, 3)])


def test_source_is_target():
    g = graph([EXISTS], [], 0, 0)
    assert reach_a(g)
    assert winning_subgraph(g) == {}


def test_forall_without_edges_fails():
    assert not reach_a(graph([FORALL, EXISTS], []))


def test_exists_forall_example():
    g = example()
    assert reach_a(g) and reach_a_naive(g)
    assert winning_subgraph(g) == {0: [1], 1: [4]}


def test_dot_output():
    text = to_dot(example())
    assert text.startswith("digraph") and "shape=box" in text


def test_sequent_graph_picks_first_disjunct():
    g = build_sequent_graph(parse_formula("<a>tt | <a><b>tt"), RuleSet.SIM)
    assert reach_a(g)
    win = winning_subgraph(g)
    rights = {g.keys[v][2] for v in win if g.keys[v] != TRUE_SINK}
    assert parse_formula("<a>tt") in rights
    assert not reach_a(build_sequent_graph(parse_formula("<a>tt | <b>tt"), RuleSet.SIM))


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 9))
    labels = draw(st.lists(st.sampled_from([EXISTS, FORALL]), min_size=n, max_size=n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    return graph(labels, edges, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))


@given(random_graphs())
def test_linear_solver_matches_fixpoint(g):
    assert reach_a(g) == reach_a_naive(g)


@given(random_graphs())
def test_strategy_is_consistent(g):
    if not reach_a(g):
        return
    win = winning_subgraph(g)
    for v, succ in win.items():
        if g.labels[v] == FORALL:
            assert set(succ) == set(g.edges[v]) and succ
        else:
            assert len(succ) == 1 and succ[0] in g.edges[v]
