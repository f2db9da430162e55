"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from hmlchar.formula import FF, TT, And, Box, Dia, Neg, Or, Zero
from hmlchar.lts import NIL, plus, prefix

AB = ("a", "b")
actions = st.sampled_from(AB)


def nodes(max_depth=3, max_width=2):
    """Loop-free processes over {a, b} as canonical nodes."""
    leaf = st.just(NIL)

    def extend(children):
        return st.lists(st.tuples(actions, children), max_size=max_width).map(
            lambda ts: plus(*[prefix(a, c) for a, c in ts]) if ts else NIL)

    return st.recursive(leaf, extend, max_leaves=max_width ** max_depth).filter(
        lambda n: _depth(n) <= max_depth)


def _depth(n):
    return 1 + max((_depth(m) for _, m in n), default=-1) if n else 0


def s_formulas():
    return st.recursive(st.sampled_from([TT, FF]),
                        lambda c: st.one_of(st.builds(Dia, actions, c), st.builds(And, c, c),
                                            st.builds(Or, c, c)),
                        max_leaves=6)


def cs_formulas():
    return st.recursive(st.sampled_from([TT, FF, Zero(AB)]),
                        lambda c: st.one_of(st.builds(Dia, actions, c), st.builds(And, c, c),
                                            st.builds(Or, c, c)),
                        max_leaves=6)


def rs_formulas():
    box = st.builds(lambda a: Box(a, FF), actions)
    return st.recursive(st.one_of(st.sampled_from([TT, FF]), box),
                        lambda c: st.one_of(st.builds(Dia, actions, c), st.builds(And, c, c),
                                            st.builds(Or, c, c)),
                        max_leaves=6)


def hml_formulas():
    return st.recursive(st.sampled_from([TT, FF]),
                        lambda c: st.one_of(st.builds(Dia, actions, c), st.builds(Box, actions, c),
                                            st.builds(And, c, c), st.builds(Or, c, c),
                                            st.builds(Neg, c)),
                        max_leaves=6)
