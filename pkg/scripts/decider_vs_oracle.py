"""Compare the exact deciders with brute force on random corpora.

Usage: python3 scripts/decider_vs_oracle.py [--count 500] [--size 12] [--seed 0]
"""
import argparse
import time

from hmlchar.charform import decide_characteristic
from hmlchar.formula import format_formula, modal_depth, unfold_zero
from hmlchar.oracle import Universe, brute_characteristic, brute_sat, random_instances
from hmlchar.satisfiability import sat

UNIVERSES = [(("a",), 5, 2), (("a", "b"), 3, 2), (("a", "b", "c"), 2, 3)]


def run(alpha, depth, width, X, count, size, seed):
    u = Universe(alpha, depth, width)
    fs, s = [], seed
    while len(fs) < count:
        fs += [f for f in random_instances(s, X, size, count, alpha) if modal_depth(unfold_zero(f)) < depth]
        s += 1
    fs = fs[:count]
    sat_bad, char_bad, chars = [], [], 0
    for f in fs:
        if sat(X, f, alpha) != brute_sat(unfold_zero(f)):
            sat_bad.append(f)
            continue
        v = bool(decide_characteristic(X, f, alpha))
        chars += v
        if v != (brute_characteristic(X, f, u) is not None):
            char_bad.append(f)
    return len(u.processes), chars, sat_bad, char_bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--size", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'alphabet':10} {'universe':>8} {'X':3} {'n':>5} {'char':>5} {'sat-bad':>7} {'char-bad':>8} {'sec':>6}")
    for alpha, depth, width in UNIVERSES:
        for X in ("S", "CS", "RS"):
            t = time.perf_counter()
            n_u, chars, sb, cb = run(alpha, depth, width, X, args.count, args.size, args.seed)
            print(f"{''.join(alpha):10} {n_u:8} {X:3} {args.count:5} {chars:5} {len(sb):7} {len(cb):8} "
                  f"{time.perf_counter() - t:6.1f}")
            for f in sb + cb:
                print("   ", format_formula(f))


if __name__ == "__main__":
    main()
