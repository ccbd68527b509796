"""Discrete stationary Bellman equation ``X = A X + B``.

:func:`solve` runs the iteration ``X_{k+1} = A X_k + B`` from ``X_0 = O``
until two consecutive iterates are equal.  For a semi-definite ``A`` (or an
interval ``A`` whose spectral bound ``rho`` is below the unity) this takes at
most ``n`` steps and lands on the minimal solution ``A* B``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import (
    DimensionMismatch,
    MissingCapability,
    NotASolution,
    NotStabilized,
    PrecheckFailed,
)
from .interval import IntervalSemiring
from .matrix import Matrix, closure, is_semidefinite, mat_add, mat_leq, mat_mul
from .spectral import rho


class Precheck(enum.Enum):
    SEMIDEFINITE_OK = "SemidefiniteOk"
    RHO_OK = "RhoOk"
    SKIPPED = "Skipped"


@dataclass(frozen=True)
class SolveReport:
    solution: Matrix
    iterations_used: int
    stabilized: bool
    precheck: Precheck
    residual_ok: bool


def _conform(A: Matrix, B: Matrix) -> None:
    if not A.is_square:
        raise DimensionMismatch(f"A must be square, got {A.shape}")
    if B.rows != A.rows:
        raise DimensionMismatch(f"B has {B.rows} rows, A has {A.rows}")


def step(A: Matrix, X: Matrix, B: Matrix) -> Matrix:
    return mat_add(mat_mul(A, X), B)


def iterate(A: Matrix, B: Matrix, X0: Optional[Matrix] = None) -> Iterator[Matrix]:
    """Yield ``X_0, X_1, ...`` forever; the caller decides when to stop."""
    _conform(A, B)
    X = X0 if X0 is not None else Matrix.zeros(A.semiring, B.rows, B.cols)
    while True:
        yield X
        X = step(A, X, B)


def precheck(A: Matrix) -> tuple:
    """``(ok, kind)``: semi-definiteness for scalar A, ``rho(A) <= 1`` for interval A."""
    s = A.semiring
    if isinstance(s, IntervalSemiring):
        base = s.base
        return base.leq(rho(A), base.one), Precheck.RHO_OK
    return is_semidefinite(A), Precheck.SEMIDEFINITE_OK


def solve(A: Matrix, B: Matrix, X0: Optional[Matrix] = None,
          max_iter: Optional[int] = None, force: bool = False) -> SolveReport:
    """Iterate to the fixed point.

    Raises PrecheckFailed when the convergence criterion fails (unless
    ``force``), NotStabilized when ``max_iter`` updates (default ``2n + 1``)
    do not reach a fixed point.  ``iterations_used`` is the first ``k`` with
    ``X_k = X_{k+1}``.
    """
    _conform(A, B)
    n = A.rows
    if max_iter is None:
        max_iter = 2 * n + 1
    if force:
        kind = Precheck.SKIPPED
    else:
        try:
            ok, kind = precheck(A)
        except MissingCapability as exc:
            raise PrecheckFailed(f"cannot evaluate the convergence criterion: {exc}") from exc
        if not ok:
            what = "rho(A) is above the unity" if kind is Precheck.RHO_OK else "A is not semi-definite"
            raise PrecheckFailed(what)
    it = iterate(A, B, X0)
    X = next(it)
    for k in range(max_iter):
        nxt = next(it)
        if nxt == X:
            return SolveReport(X, k, True, kind, verify(A, B, X))
        X = nxt
    raise NotStabilized(f"no fixed point after {max_iter} iterations", last=X, iterations=max_iter)


def verify(A: Matrix, B: Matrix, X: Matrix) -> bool:
    """Exact residual check ``A X + B == X``."""
    _conform(A, B)
    if X.shape != B.shape:
        raise DimensionMismatch(f"X is {X.shape}, B is {B.shape}")
    return step(A, X, B) == X


def minimal_solution(A: Matrix, B: Matrix) -> Matrix:
    return mat_mul(closure(A), B)


def minimality_check(A: Matrix, B: Matrix, X: Matrix) -> bool:
    """True iff ``A* B`` lies below the solution ``X`` entrywise."""
    if not verify(A, B, X):
        raise NotASolution("candidate does not satisfy X = AX + B")
    return mat_leq(minimal_solution(A, B), X)
