"""Dense matrices over an idempotent semiring and the algebraic path problem.

Matrices are immutable and generic: the same code runs over scalar
semirings and over :class:`~maxplus.interval.IntervalSemiring`, where sum
and product reduce to separate lower and upper computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    BadNodeId,
    DimensionMismatch,
    Diverged,
    DuplicateArc,
    NotSemidefinite,
    NotSquare,
    NoUnity,
    OrderViolation,
    SemiringMismatch,
)
from .interval import Interval, IntervalSemiring
from .semiring import Flags, Semiring, SemiringId


@dataclass(frozen=True, eq=False)
class Matrix:
    semiring: Semiring
    entries: tuple

    @classmethod
    def from_rows(cls, s: Semiring, rows: Iterable[Sequence], check: bool = True) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices need at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatch("ragged rows")
        conv = s.check if check else (lambda x: x)
        return cls(s, tuple(tuple(conv(x) for x in r) for r in rows))

    @classmethod
    def zeros(cls, s: Semiring, rows: int, cols: int) -> "Matrix":
        return cls(s, tuple(tuple(s.zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, s: Semiring, n: int) -> "Matrix":
        if s.one is None:
            raise NoUnity(f"{s.name} has no unity")
        z, e = s.zero, s.one
        return cls(s, tuple(tuple(e if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, s: Semiring, values: Sequence, check: bool = True) -> "Matrix":
        return cls.from_rows(s, [[v] for v in values], check=check)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.semiring != other.semiring or self.shape != other.shape:
            return False
        eq = self.semiring.eq
        return all(eq(a, b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash((self.semiring.name, self.entries))

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def map(self, f, semiring: Optional[Semiring] = None) -> "Matrix":
        return Matrix(semiring or self.semiring, tuple(tuple(f(x) for x in r) for r in self.entries))

    def col(self, j: int) -> "Matrix":
        return Matrix(self.semiring, tuple((r[j],) for r in self.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.semiring, tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def __repr__(self):
        f = self.semiring.format
        body = "; ".join(" ".join(f(x) for x in r) for r in self.entries)
        return f"Matrix<{self.semiring.name}>[{body}]"


def _same_semiring(A: Matrix, B: Matrix) -> Semiring:
    if A.semiring != B.semiring:
        raise SemiringMismatch(f"{A.semiring.name} vs {B.semiring.name}")
    return A.semiring


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    s = _same_semiring(A, B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"cannot add {A.shape} and {B.shape}")
    add = s.add
    return Matrix(s, tuple(tuple(add(a, b) for a, b in zip(ra, rb))
                           for ra, rb in zip(A.entries, B.entries)))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    s = _same_semiring(A, B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    bcols = list(zip(*B.entries))
    if s.id is SemiringId.RMAX:
        # +inf is not an element, so native + never sees inf - inf
        out = tuple(tuple(max(a + b for a, b in zip(r, c)) for c in bcols) for r in A.entries)
    elif s.id is SemiringId.RMIN:
        out = tuple(tuple(min(a + b for a, b in zip(r, c)) for c in bcols) for r in A.entries)
    else:
        add, mul = s.add, s.mul
        rows = []
        for r in A.entries:
            row = []
            for c in bcols:
                acc = mul(r[0], c[0])
                for a, b in zip(r[1:], c[1:]):
                    acc = add(acc, mul(a, b))
                row.append(acc)
            rows.append(tuple(row))
        out = tuple(rows)
    return Matrix(s, out)


def scale(c, A: Matrix) -> Matrix:
    """``c * A`` entrywise, with ``c`` on the left."""
    mul = A.semiring.mul
    return A.map(lambda x: mul(c, x))


def mat_leq(A: Matrix, B: Matrix) -> bool:
    s = _same_semiring(A, B)
    return all(s.leq(a, b) for ra, rb in zip(A.entries, B.entries) for a, b in zip(ra, rb))


def _square(A: Matrix) -> int:
    if not A.is_square:
        raise NotSquare(f"expected a square matrix, got {A.shape}")
    return A.rows


def mat_pow(A: Matrix, k: int) -> Matrix:
    n = _square(A)
    if k < 0:
        raise ValueError("negative matrix power")
    result = Matrix.identity(A.semiring, n)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def partial_sum(A: Matrix, k: int) -> Matrix:
    """``E + A + ... + A^k``."""
    n = _square(A)
    E = Matrix.identity(A.semiring, n)
    acc = E
    for _ in range(k):
        acc = mat_add(E, mat_mul(A, acc))
    return acc


def partial_sums(A: Matrix, k_max: int) -> list:
    """``[E, E + A, ..., E + A + ... + A^k_max]``."""
    n = _square(A)
    E = Matrix.identity(A.semiring, n)
    out = [E]
    for _ in range(k_max):
        out.append(mat_add(E, mat_mul(A, out[-1])))
    return out


# -- definiteness -------------------------------------------------------------

def _maximal(s: Semiring, xs: list) -> list:
    out = []
    for x in xs:
        if any(s.leq(x, y) for y in out):
            continue
        out = [y for y in out if not s.leq(y, x)]
        out.append(x)
    return out


def closed_walk_maxima(A: Matrix) -> list:
    """Maximal weights (an antichain) among closed walks of length 1..n.

    A dominated walk stays dominated after extension by monotonicity, so
    pruning to the antichain at every step loses nothing.
    """
    n = _square(A)
    s = A.semiring
    found = []
    for start in range(n):
        # frontier[j] = antichain of weights of walks start -> j
        frontier = [_maximal(s, [A[start, j]]) if not s.is_zero(A[start, j]) else [] for j in range(n)]
        for length in range(1, n + 1):
            found.extend(frontier[start])
            if length == n:
                break
            nxt = [[] for _ in range(n)]
            for j in range(n):
                for w in frontier[j]:
                    for t in range(n):
                        a = A[j, t]
                        if not s.is_zero(a):
                            nxt[t].append(s.mul(w, a))
            frontier = [_maximal(s, ws) for ws in nxt]
    return _maximal(s, found)


def _diagonal_sup(A: Matrix) -> list:
    n = _square(A)
    P = A
    acc = A
    for _ in range(n - 1):
        P = mat_mul(P, A)
        acc = mat_add(acc, P)
    return [acc[i, i] for i in range(n)]


def is_semidefinite(A: Matrix) -> bool:
    """Every closed path has weight below the unity.

    Closed paths of length at most ``n`` dominate the longer ones, so the
    diagonal of ``A + A^2 + ... + A^n`` decides the question.
    """
    s = A.semiring
    if s.one is None:
        raise NoUnity(f"{s.name} has no unity")
    one = s.one
    return all(s.leq(d, one) for d in _diagonal_sup(A))


def is_definite(A: Matrix) -> bool:
    """Every closed path has weight strictly below the unity.

    In a partial order a supremum of elements strictly below the unity may
    equal it, so each maximal closed-walk weight is tested separately.
    """
    s = A.semiring
    if s.one is None:
        raise NoUnity(f"{s.name} has no unity")
    one = s.one
    if s.flags.totally_ordered:
        return all(s.lt(d, one) for d in _diagonal_sup(A))
    return all(s.lt(w, one) for w in closed_walk_maxima(A))


# -- closure ---------------------------------------------------------------

def _closure_squaring(A: Matrix) -> Matrix:
    n = A.rows
    M = mat_add(Matrix.identity(A.semiring, n), A)
    power = 1
    while power < n - 1:
        M = mat_mul(M, M)
        power *= 2
    return M


def _closure_kleene(A: Matrix) -> Matrix:
    """Floyd-Warshall-Kleene elimination; assumes every pivot star is the unity."""
    s = A.semiring
    n = A.rows
    add, mul = s.add, s.mul
    d = [list(r) for r in A.entries]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if s.is_zero(dik):
                continue
            di = d[i]
            for j in range(n):
                di[j] = add(di[j], mul(dik, dk[j]))
    for i in range(n):
        d[i][i] = add(d[i][i], s.one)
    return Matrix(s, tuple(tuple(r) for r in d))


def _closure_unchecked(A: Matrix) -> Matrix:
    n = A.rows
    E = Matrix.identity(A.semiring, n)
    acc = E
    for _ in range(2 * n):
        nxt = mat_add(E, mat_mul(A, acc))
        if nxt == acc:
            return acc
        acc = nxt
    raise Diverged(f"partial sums of the closure did not stabilize within {2 * n} terms")


def closure(A: Matrix, backend: str = "squaring", allow_unchecked: bool = False) -> Matrix:
    """``A* = E + A + ... + A^(n-1)`` for a semi-definite ``A``.

    ``backend`` is ``"squaring"`` (repeated squaring of ``E + A``) or
    ``"kleene"`` (single elimination pass).  With ``allow_unchecked`` the
    semi-definiteness test is skipped and the partial sums are iterated
    until two consecutive ones agree, failing with Diverged after ``2n``
    terms.
    """
    _square(A)
    if A.semiring.one is None:
        raise NoUnity(f"{A.semiring.name} has no unity")
    if allow_unchecked:
        return _closure_unchecked(A)
    if not is_semidefinite(A):
        raise NotSemidefinite("matrix has a closed path of weight above the unity")
    if backend == "squaring":
        return _closure_squaring(A)
    if backend == "kleene":
        return _closure_kleene(A)
    raise ValueError(f"unknown closure backend {backend!r}")


# -- graphs ----------------------------------------------------------------

@dataclass(frozen=True)
class GraphSpec:
    """Weighted digraph on nodes ``0 .. node_count-1``; arcs are ``(u, v, w)``."""

    node_count: int
    arcs: tuple = ()

    def __post_init__(self):
        if self.node_count < 1:
            raise BadNodeId("a graph needs at least one node")
        arcs = tuple(tuple(a) for a in self.arcs)
        seen = set()
        for u, v, _ in arcs:
            for node in (u, v):
                if not isinstance(node, int) or not 0 <= node < self.node_count:
                    raise BadNodeId(f"node id {node!r} outside 0..{self.node_count - 1}")
            if (u, v) in seen:
                raise DuplicateArc(f"second arc {u}->{v}")
            seen.add((u, v))
        object.__setattr__(self, "arcs", arcs)

    def canonical(self) -> "GraphSpec":
        return GraphSpec(self.node_count, tuple(sorted(self.arcs, key=lambda a: (a[0], a[1]))))


def from_graph(g: GraphSpec, s: Semiring) -> Matrix:
    """Arc ``u -> v`` of weight ``w`` becomes entry ``(u, v)``; missing arcs are zero."""
    rows = [[s.zero] * g.node_count for _ in range(g.node_count)]
    for u, v, w in g.arcs:
        rows[u][v] = s.check(w)
    return Matrix(s, tuple(tuple(r) for r in rows))


def to_graph(A: Matrix) -> GraphSpec:
    n = _square(A)
    s = A.semiring
    arcs = tuple((i, j, A[i, j]) for i in range(n) for j in range(n) if not s.is_zero(A[i, j]))
    return GraphSpec(n, arcs)


# -- interval matrices --------------------------------------------------------

def split(A: Matrix) -> tuple:
    """Lower and upper matrices of an interval matrix."""
    I = A.semiring
    if not isinstance(I, IntervalSemiring):
        raise SemiringMismatch("split needs an interval matrix")
    L = Matrix(I.base, tuple(tuple(x.lo for x in r) for r in A.entries))
    U = Matrix(I.base, tuple(tuple(x.hi for x in r) for r in A.entries))
    return L, U


def join(L: Matrix, U: Matrix, strong: bool = False) -> Matrix:
    """Interval matrix with the given lower and upper matrices."""
    s = _same_semiring(L, U)
    if L.shape != U.shape:
        raise DimensionMismatch(f"{L.shape} vs {U.shape}")
    I = IntervalSemiring(s, strong=strong)
    rows = []
    for i, (rl, ru) in enumerate(zip(L.entries, U.entries)):
        row = []
        for j, (lo, hi) in enumerate(zip(rl, ru)):
            if not s.leq(lo, hi):
                raise OrderViolation(f"entry ({i},{j}): {s.format(lo)} is not below {s.format(hi)}")
            row.append(I.check(Interval(lo, hi)))
        rows.append(tuple(row))
    return Matrix(I, tuple(rows))


def upper(A: Matrix) -> Matrix:
    """The upper matrix of an interval matrix; scalar matrices are returned as is."""
    return split(A)[1] if isinstance(A.semiring, IntervalSemiring) else A


# -- Mat_nn(S) as a semiring (for the axiom harness) -----------------------------

@dataclass(frozen=True)
class MatrixSemiring(Semiring):
    base: Semiring
    n: int = 2

    id = SemiringId.MATRIX

    @property
    def mode(self):
        return self.base.mode

    @property
    def name(self) -> str:
        return f"mat{self.n}:{self.base.name}"

    @property
    def flags(self) -> Flags:
        b = self.base.flags
        return Flags(commutative=b.commutative and self.n == 1, has_zero=b.has_zero,
                     has_unity=b.has_unity, a_complete=b.a_complete, b_complete=b.b_complete)

    @property
    def zero(self):
        return None if self.base.zero is None else Matrix.zeros(self.base, self.n, self.n)

    @property
    def one(self):
        return None if self.base.one is None else Matrix.identity(self.base, self.n)

    def add(self, A, B):
        return mat_add(A, B)

    def mul(self, A, B):
        return mat_mul(A, B)

    def check(self, A):
        if not isinstance(A, Matrix) or A.shape != (self.n, self.n) or A.semiring != self.base:
            raise SemiringMismatch(f"not a {self.n}x{self.n} matrix over {self.base.name}")
        return A

    def random_element(self, rng: random.Random):
        b = self.base
        return Matrix(b, tuple(tuple(b.random_element(rng) for _ in range(self.n))
                               for _ in range(self.n)))
