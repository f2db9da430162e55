"""Print, for each adjacent pair in the preorder chain, the smallest pair of
processes related by the coarser preorder but not by the finer one."""
import argparse

from hmlchar.lts import depth, show
from hmlchar.oracle import Universe
from hmlchar.preorders import CHAIN


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--width", type=int, default=2)
    args = ap.parse_args()
    u = Universe(("a", "b"), args.depth, args.width)
    nodes = u.family.nodes
    size = [depth(p) + len(show(p)) for p in nodes]
    rows = [u.matrix(k) for k in CHAIN]
    for k, (finer, coarser) in enumerate(zip(rows, rows[1:])):
        best = None
        for i, (r, s) in enumerate(zip(finer, coarser)):
            diff = s & ~r
            while diff:
                low = diff & -diff
                j = low.bit_length() - 1
                diff ^= low
                cost = size[i] + size[j]
                if best is None or cost < best[0]:
                    best = (cost, i, j)
        name = f"{CHAIN[k + 1]} \\ {CHAIN[k]}"
        if best is None:
            print(f"{name:10} no witness in this universe")
        else:
            print(f"{name:10} {show(nodes[best[1]])}  <=  {show(nodes[best[2]])}")


if __name__ == "__main__":
    main()
