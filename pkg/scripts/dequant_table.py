"""Print how w1 (+)_h w2 approaches max(w1, w2) as h shrinks."""
import argparse

from maxplus import convergence_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--w", nargs=2, type=float, default=(3.0, 5.0))
    ap.add_argument("--h", nargs="+", type=float, default=[1.0, 0.5, 0.1, 0.01, 0.001])
    args = ap.parse_args()
    print(f"{'h':>8} {'value':>14} {'gap':>12} {'h ln 2':>12}")
    for h, v, gap, bound in convergence_table(*args.w, args.h):
        print(f"{h:>8g} {v:>14.10f} {gap:>12.3e} {bound:>12.3e}")


if __name__ == "__main__":
    main()
