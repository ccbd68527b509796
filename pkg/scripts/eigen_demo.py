"""Eigenvalue methods side by side on random irreducible max-plus matrices."""
import argparse
import random
import time
from fractions import Fraction as Q

from maxplus import Matrix, RMax, eigenvalue, eigenvector, mat_mul
from maxplus.matrix import scale
from maxplus.spectral import normalize

NEG = float("-inf")


def random_irreducible(rng, n, density=0.4):
    rows = [[Q(rng.randint(-12, 12), 4) if rng.random() < density else NEG for _ in range(n)] for _ in range(n)]
    for i in range(n):
        rows[i][(i + 1) % n] = Q(rng.randint(-12, 12), 4)
    return Matrix.from_rows(RMax(), rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for t in range(args.trials):
        A = random_irreducible(rng, args.n)
        timings = {}
        values = set()
        for method in ("karp", "cycles", "invariant"):
            t0 = time.perf_counter()
            values.add(eigenvalue(A, method=method))
            timings[method] = time.perf_counter() - t0
        (lam,) = values
        V = normalize(eigenvector(A, lam))
        assert mat_mul(A, V) == scale(lam, V)
        cost = " ".join(f"{m}={s * 1e3:.2f}ms" for m, s in timings.items())
        print(f"trial {t}: lambda={lam}  v={[str(r[0]) for r in V.entries]}  {cost}")


if __name__ == "__main__":
    main()
