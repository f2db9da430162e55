"""Growth measurements.

* characteristic formulae: decl and eqlen of chi_X over a family of processes
  whose explicit size blows up;
* deciders: time of sat and prime on encoded 3-CNFs as the number of
  variables grows.
"""
import argparse
import time

from hmlchar.charform import chi
from hmlchar.formula import metrics
from hmlchar.lts import NIL, plus, prefix
from hmlchar.oracle import cnf_satisfiable, encode_cnf, random_cnf
from hmlchar.primality import decide_prime
from hmlchar.satisfiability import sat


def ladder(n):
    """p_0 = 0, p_{k+1} = a.p_k + b.p_k: linear DAG, exponential tree."""
    p = NIL
    for _ in range(n):
        p = plus(prefix("a", p), prefix("b", p))
    return p


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-vars", type=int, default=10)
    args = ap.parse_args()
    print("chi metrics on the ladder processes")
    print(f"{'n':>3} {'X':3} {'decl':>5} {'eqlen':>6} {'explicit':>12}")
    for n in range(1, args.max_n + 1):
        for X in ("S", "RS", "TS", "2S", "BS"):
            m = metrics(chi(X, ladder(n), ("a", "b")))
            print(f"{n:3} {X:3} {m.decl_size:5} {m.eq_length:6} {m.explicit_size:12}")
    print()
    print("encoded 3-CNF (clause ratio 4.2): sat and prime in L_RS")
    print(f"{'vars':>4} {'sat':>5} {'truth':>5} {'sat ms':>8} {'prime ms':>9}")
    for n in range(3, args.max_vars + 1):
        cnf = random_cnf(n, n, round(4.2 * n))
        f = encode_cnf("RS", cnf)
        t = time.perf_counter()
        s = sat("RS", f)
        t_sat = time.perf_counter() - t
        t = time.perf_counter()
        decide_prime("RS", f)
        t_prime = time.perf_counter() - t
        print(f"{n:4} {s!s:>5} {cnf_satisfiable(cnf)!s:>5} {1000 * t_sat:8.2f} {1000 * t_prime:9.2f}")


if __name__ == "__main__":
    main()
