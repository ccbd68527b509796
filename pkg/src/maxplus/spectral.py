"""Irreducibility, block-triangular form and eigen theory of semiring matrices.

For ``RMax`` the eigenvalue of an irreducible matrix is its maximum cycle
mean (``RMin``: minimum cycle mean).  Three independent routes compute it:

* :func:`karp_cycle_mean` - Karp's recurrence over walks from one node;
* :func:`cycle_eigenvalue` - enumeration of elementary cycles with an
  ``n``-th root of each cycle weight (any algebraically closed semiring);
* :func:`cycle_invariant_eigenvalue` - the lcm-power formula over all closed
  walks, exact mode only, used as a correctness oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import (
    MissingCapability,
    NotEigenvalue,
    NotSemidefinite,
    NotSquare,
    OrderViolation,
    Reducible,
    SemiringMismatch,
)
from .interval import Interval, IntervalSemiring
from .matrix import Matrix, closure, join, mat_add, mat_leq, mat_mul, scale, split, upper
from .semiring import NEG_INF, POS_INF, NumericMode, Semiring, SemiringId


def _size(A: Matrix) -> int:
    if not A.is_square:
        raise NotSquare(f"expected a square matrix, got {A.shape}")
    return A.rows


def _successors(A: Matrix) -> list:
    s = A.semiring
    n = A.rows
    return [[j for j in range(n) if not s.is_zero(A[i, j])] for i in range(n)]


def strongly_connected_components(succ: list) -> list:
    """Tarjan's algorithm, iterative.  Components come out sinks first."""
    n = len(succ)
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack, out = [], []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            if pos < len(succ[v]):
                work[-1] = (v, pos + 1)
                w = succ[v][pos]
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def is_irreducible(A: Matrix) -> bool:
    """Every node reaches every other through nonzero path products.

    A 1x1 matrix counts as irreducible, even ``[[0]]``.
    """
    n = _size(A)
    if n == 1:
        return True
    s = A.semiring
    if s.flags.zero_divisor_free:
        return len(strongly_connected_components(_successors(A))) == 1
    # zero divisors: a path of nonzero arcs may still have a zero product
    P, acc = A, A
    for _ in range(n - 1):
        P = mat_mul(P, A)
        acc = mat_add(acc, P)
    return not any(s.is_zero(x) for r in acc.entries for x in r)


@dataclass(frozen=True)
class BlockForm:
    """Symmetric permutation of a matrix into upper block-triangular form.

    ``permutation[p]`` is the original index placed at position ``p``.
    Arcs only run from earlier blocks to later ones, so everything below
    the diagonal blocks is zero.
    """

    permutation: tuple
    blocks: tuple
    block_matrices: tuple
    source: Matrix

    def permuted(self) -> Matrix:
        p = self.permutation
        return self.source.submatrix(p, p)

    def reconstruct(self) -> Matrix:
        B = self.permuted()
        n = len(self.permutation)
        pos = [0] * n
        for q, i in enumerate(self.permutation):
            pos[i] = q
        return B.submatrix(pos, pos)


def block_form(A: Matrix) -> BlockForm:
    _size(A)
    comps = strongly_connected_components(_successors(A))
    comps.reverse()
    perm = tuple(i for c in comps for i in c)
    mats = tuple(A.submatrix(c, c) for c in comps)
    return BlockForm(perm, tuple(tuple(c) for c in comps), mats, A)


def is_zero_matrix(A: Matrix) -> bool:
    s = A.semiring
    return all(s.is_zero(x) for r in A.entries for x in r)


# -- eigenvalues ----------------------------------------------------------------

_EIGEN_FLAGS = ("commutative", "algebraically_closed", "cancellative", "stabilizing")


def _require_eigen_flags(s: Semiring) -> None:
    missing = [f for f in _EIGEN_FLAGS if not getattr(s.flags, f)]
    if missing or not (s.flags.has_zero and s.flags.has_unity):
        raise MissingCapability(f"{s.name} lacks {', '.join(missing) or 'zero/unity'} for eigen theory")


def karp_cycle_mean(A: Matrix, maximize: bool = True):
    """Maximum (or minimum) cycle mean of a strongly connected real matrix.

    ``-inf`` (resp. ``+inf``) entries are missing arcs.  Returns the
    matching infinity when the graph has no cycle at all.
    """
    n = _size(A)
    sign = 1 if maximize else -1
    absent = NEG_INF if maximize else POS_INF
    w = [[NEG_INF if x == absent else sign * x for x in r] for r in A.entries]
    D = [[NEG_INF] * n for _ in range(n + 1)]
    D[0][0] = 0
    for k in range(1, n + 1):
        prev, cur = D[k - 1], D[k]
        for v in range(n):
            best = NEG_INF
            for u in range(n):
                if prev[u] != NEG_INF and w[u][v] != NEG_INF:
                    c = prev[u] + w[u][v]
                    if c > best:
                        best = c
            cur[v] = best
    result = NEG_INF
    for v in range(n):
        if D[n][v] == NEG_INF:
            continue
        worst = None
        for k in range(n):
            if D[k][v] != NEG_INF:
                m = (D[n][v] - D[k][v]) / (n - k)
                if worst is None or m < worst:
                    worst = m
        if worst is not None and worst > result:
            result = worst
    if result == NEG_INF:
        return absent
    return sign * result


def elementary_cycles(A: Matrix) -> list:
    """Elementary cycles as node lists, each starting at its smallest node."""
    n = _size(A)
    succ = _successors(A)
    cycles = []

    def extend(start, path, on_path):
        v = path[-1]
        for w in succ[v]:
            if w == start:
                cycles.append(list(path))
            elif w > start and w not in on_path:
                on_path.add(w)
                path.append(w)
                extend(start, path, on_path)
                path.pop()
                on_path.discard(w)

    for start in range(n):
        extend(start, [start], {start})
    return cycles


def cycle_weight(A: Matrix, cycle: list):
    s = A.semiring
    w = s.one
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        w = s.mul(w, A[a, b])
    return w


def cycle_eigenvalue(A: Matrix):
    """Sum over elementary cycles of the ``length``-th root of the cycle weight."""
    s = A.semiring
    return s.big_sum(s.nth_root(cycle_weight(A, c), len(c)) for c in elementary_cycles(A))


def cycle_invariant_eigenvalue(A: Matrix):
    """Eigenvalue from ``lam^L = sum over closed walks of weight^(L/len)``, ``L = lcm(1..n)``.

    Enumerates all ``n + n^2 + ... + n^n`` closed walks, so keep ``n`` small.
    Exact mode only: the powers overflow floats quickly.
    """
    n = _size(A)
    s = A.semiring
    if s.mode is not NumericMode.EXACT:
        raise MissingCapability("the cycle-invariant formula is evaluated in exact mode only")
    L = math.lcm(*range(1, n + 1))
    total = s.zero
    for length in range(1, n + 1):
        for walk in itertools.product(range(n), repeat=length):
            w = cycle_weight(A, list(walk))
            if not s.is_zero(w):
                total = s.add(total, s.power(w, L // length))
    return s.nth_root(total, L)


def eigenvalue(A: Matrix, method: str = "auto"):
    """Unique eigenvalue of an irreducible matrix.

    ``method``: ``"auto"`` (Karp for RMax/RMin, cycle enumeration otherwise),
    ``"karp"``, ``"cycles"`` or ``"invariant"``.  Interval matrices get the
    interval of the lower and upper eigenvalues.
    """
    n = _size(A)
    s = A.semiring
    if isinstance(s, IntervalSemiring):
        L, U = split(A)
        return Interval(eigenvalue(L, method), eigenvalue(U, method))
    _require_eigen_flags(s)
    if not is_irreducible(A):
        raise Reducible("eigenvalue is unique only for irreducible matrices; use block_form")
    if n == 1:
        return A[0, 0]
    if method == "auto":
        method = "karp" if s.id in (SemiringId.RMAX, SemiringId.RMIN) else "cycles"
    if method == "karp":
        if s.id not in (SemiringId.RMAX, SemiringId.RMIN):
            raise MissingCapability("Karp's recurrence needs RMax or RMin")
        return s.check(karp_cycle_mean(A, maximize=s.id is SemiringId.RMAX))
    if method == "cycles":
        return cycle_eigenvalue(A)
    if method == "invariant":
        return cycle_invariant_eigenvalue(A)
    raise ValueError(f"unknown method {method!r}")


# -- eigenvectors ---------------------------------------------------------------

def critical_columns(A: Matrix, lam) -> list:
    """Columns of ``(lam^-1 A)*`` whose index lies on a critical cycle."""
    n = _size(A)
    s = A.semiring
    if n == 1:
        return [Matrix(s, ((s.one,),))]
    if s.is_zero(lam):
        raise NotEigenvalue("zero is not the eigenvalue of an irreducible matrix with n > 1")
    B = scale(s.inv(lam), A)
    try:
        Bstar = closure(B)
    except NotSemidefinite as exc:
        raise NotEigenvalue(f"{s.format(lam)} is below the eigenvalue") from exc
    Bplus = mat_mul(B, Bstar)
    return [Bstar.col(j) for j in range(n) if s.eq(Bplus[j, j], s.one)]


def eigenvector(A: Matrix, lam) -> Matrix:
    """A nonzero column ``V`` with ``A V = lam V``, verified before returning."""
    s = A.semiring
    _size(A)
    if not s.is_semifield():
        raise MissingCapability(f"eigenvectors need inverses in {s.name}")
    for V in critical_columns(A, lam):
        if mat_mul(A, V) == scale(lam, V):
            return V
    raise NotEigenvalue(f"{s.format(lam)} is not an eigenvalue of the matrix")


def normalize(V: Matrix) -> Matrix:
    """Scale ``V`` so that its largest coordinate is the unity."""
    s = V.semiring
    top = s.big_sum(x for r in V.entries for x in r)
    return scale(s.inv(top), V)


@dataclass(frozen=True)
class EigenPair:
    value: object
    vector: Matrix


def eigen_interval(A: Matrix) -> EigenPair:
    """Interval eigenpair built from the eigenpairs of the lower and upper matrices.

    Critical columns of both matrices are normalised and paired until one
    pair is ordered; if none is, OrderViolation is raised instead of
    forcing an order.
    """
    I = A.semiring
    if not isinstance(I, IntervalSemiring):
        raise SemiringMismatch("eigen_interval needs an interval matrix")
    L, U = split(A)
    if not is_irreducible(U):
        raise Reducible("interval matrix is reducible")
    lam_lo, lam_hi = eigenvalue(L), eigenvalue(U)
    lam = I.check(Interval(lam_lo, lam_hi))
    lows = [normalize(V) for V in critical_columns(L, lam_lo)]
    highs = [normalize(V) for V in critical_columns(U, lam_hi)]
    for Vl in lows:
        for Vh in highs:
            if mat_leq(Vl, Vh):
                V = join(Vl, Vh, strong=I.strong)
                if mat_mul(A, V) != scale(lam, V):
                    raise NotEigenvalue("interval eigen equation failed verification")
                return EigenPair(lam, V)
    raise OrderViolation("normalised lower eigenvector is not below the upper one")


def rho(A: Matrix):
    """Sum of the eigenvalues of the irreducible diagonal blocks of the upper matrix."""
    U = upper(A)
    s = U.semiring
    total = s.zero
    for B in block_form(U).block_matrices:
        if is_zero_matrix(B):
            continue
        total = s.add(total, eigenvalue(B))
    return total
