"""Characteristic formulae and primality for fragments of Hennessy-Milner logic
over finite, loop-free processes."""

from .lts import (Lts, Nil, Node, Prefix, Sum, as_node, format_process, parse_lts, parse_process,
                  read_process, show, traces)
from .formula import (FF, TT, And, Box, Dia, EquationSystem, Fragment, Neg, Or, Var, Zero,
                      es_build, es_expand, format_formula, format_system, fragment_of, metrics,
                      parse_formula, parse_system, to_dnf)
from .modelcheck import satisfies, satisfies_decl
from .preorders import NS, PreorderKind, kernel_equiv, preorder
from .satisfiability import FragmentViolation, prune_unsat, sat, valid
from .altgraph import AltGraph, reach_a
from .primality import PrimeVerdict, decide_prime, prime, satur, witness
from .charform import CharVerdict, char_mod_kernel_bounded, chi, chi_ts, decide_characteristic, exc_traces
from .oracle import BudgetExceeded, Universe

__version__ = "0.1.0"

__all__ = [
    "Lts", "Nil", "Node", "Prefix", "Sum", "as_node", "format_process", "parse_lts",
    "parse_process", "read_process", "show", "traces", "FF", "TT", "And", "Box", "Dia",
    "EquationSystem", "Fragment", "Neg", "Or", "Var", "Zero", "es_build", "es_expand",
    "format_formula", "format_system", "fragment_of", "metrics", "parse_formula",
    "parse_system", "to_dnf", "satisfies", "satisfies_decl", "NS", "PreorderKind",
    "kernel_equiv", "preorder", "FragmentViolation", "prune_unsat", "sat", "valid", "AltGraph",
    "reach_a", "PrimeVerdict", "decide_prime", "prime", "satur", "witness", "CharVerdict",
    "char_mod_kernel_bounded", "chi", "chi_ts", "decide_characteristic", "exc_traces",
    "BudgetExceeded", "Universe",
]
