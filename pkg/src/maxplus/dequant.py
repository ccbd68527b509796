"""Dequantization and idempotent calculus on finite grids.

The change of variables ``w = h ln u`` carries ``(+, *)`` on the nonnegative
reals to ``(oplus_h, +)`` with ``w1 oplus_h w2 = h ln(e^{w1/h} + e^{w2/h})``,
which tends to ``max`` as ``h -> 0``.  Integrals, measures, scalar products
and kernel operators over a finite grid become suprema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyGrid,
    GridMismatch,
    NegativeInput,
    NonpositiveH,
)
from .matrix import Matrix, mat_mul
from .semiring import NEG_INF, NumericMode, RMax, Semiring, SemiringId


@dataclass(frozen=True)
class DequantParams:
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise NonpositiveH(f"h must be positive, got {self.h!r}")


def oplus_h(w1: float, w2: float, p: DequantParams) -> float:
    """Smoothed maximum, in the form ``max + h ln(1 + e^{-|w1 - w2|/h})``."""
    if w1 == NEG_INF:
        return float(w2)
    if w2 == NEG_INF:
        return float(w1)
    hi = max(w1, w2)
    gap = abs(w1 - w2)
    return hi + p.h * math.log1p(math.exp(-gap / p.h))


def dequantize(u: float, p: DequantParams) -> float:
    if u < 0:
        raise NegativeInput(f"dequantize needs u >= 0, got {u!r}")
    if u == 0:
        return NEG_INF
    return p.h * math.log(u)


def quantize(w: float, p: DequantParams) -> float:
    if w == NEG_INF:
        return 0.0
    return math.exp(w / p.h)


def convergence_table(w1: float, w2: float, hs: Sequence[float]) -> list:
    """Rows ``(h, w1 oplus_h w2, gap to max, h ln 2)`` for the demo command."""
    rows = []
    top = max(w1, w2)
    for h in hs:
        v = oplus_h(w1, w2, DequantParams(h))
        rows.append((h, v, v - top, h * math.log(2)))
    return rows


# -- grid functions ----------------------------------------------------------

@dataclass(frozen=True)
class GridFunction:
    points: tuple
    values: tuple
    semiring: Semiring = RMax(mode=NumericMode.FLOAT64)

    def __post_init__(self):
        pts = tuple(tuple(float(c) for c in np.atleast_1d(p)) for p in self.points)
        vals = tuple(self.semiring.check(v) for v in self.values)
        if len(pts) != len(vals):
            raise GridMismatch(f"{len(pts)} points but {len(vals)} values")
        if len(set(pts)) != len(pts):
            raise GridMismatch("grid points must be distinct")
        if pts and len({len(p) for p in pts}) != 1:
            raise DimensionMismatch("grid points of different dimensions")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)

    def add(self, other: "GridFunction") -> "GridFunction":
        _same_grid(self, other)
        s = self.semiring
        return GridFunction(self.points, tuple(s.add(a, b) for a, b in zip(self.values, other.values)), s)

    def scale(self, c) -> "GridFunction":
        s = self.semiring
        return GridFunction(self.points, tuple(s.mul(c, v) for v in self.values), s)


def _same_grid(f: GridFunction, g: GridFunction) -> None:
    if f.points != g.points or f.semiring != g.semiring:
        raise GridMismatch("functions live on different grids or semirings")


def idempotent_integral(f: GridFunction):
    if not f.values:
        raise EmptyGrid("integral over an empty grid")
    return f.semiring.big_sum(f.values)


def measure(f: GridFunction, subset: Iterable[int]):
    """Sup of ``f`` over the points with the given indices; the empty set has measure zero."""
    idx = list(subset)
    for i in idx:
        if not 0 <= i < len(f):
            raise IndexError(f"point index {i} out of range")
    return f.semiring.big_sum(f.values[i] for i in idx)


def scalar_product(f: GridFunction, g: GridFunction):
    _same_grid(f, g)
    s = f.semiring
    return s.big_sum(s.mul(a, b) for a, b in zip(f.values, g.values))


def legendre(f: GridFunction, xis: Sequence) -> GridFunction:
    """``xi -> sup_x (xi . x + f(x))`` over the grid, for every ``xi`` given.

    This is the sign convention of the max-plus Fourier transform; the
    classical conjugate of ``g`` is ``legendre`` applied to ``-g``.
    """
    if f.semiring.id is not SemiringId.RMAX:
        raise ValueError("legendre works over RMax")
    if not f.values:
        raise EmptyGrid("transform of an empty grid function")
    X = np.asarray(f.points, dtype=float)
    v = np.asarray([float(x) for x in f.values])
    Xi = np.atleast_2d(np.asarray(xis, dtype=float))
    if Xi.shape[0] == 1 and X.shape[1] == 1 and len(xis) != 1:
        Xi = Xi.T
    if Xi.shape[1] != X.shape[1]:
        raise DimensionMismatch(f"xi has dimension {Xi.shape[1]}, grid points {X.shape[1]}")
    with np.errstate(invalid="ignore"):
        vals = (Xi @ X.T + v[None, :]).max(axis=1)
    out = RMax(mode=f.semiring.mode)
    return GridFunction(tuple(map(tuple, Xi)), tuple(float(x) for x in vals), out)


def kernel_apply(K: Matrix, f: GridFunction, points: Optional[Sequence] = None) -> GridFunction:
    """``(K f)(x_i) = sup_j K[i, j] * f(y_j)``; output points default to ``(i,)``."""
    if K.cols != len(f):
        raise DimensionMismatch(f"kernel has {K.cols} columns, function has {len(f)} points")
    if K.semiring != f.semiring:
        raise GridMismatch("kernel and function use different semirings")
    col = Matrix(f.semiring, tuple((v,) for v in f.values))
    out = mat_mul(K, col)
    if points is None:
        points = [(i,) for i in range(K.rows)]
    return GridFunction(tuple(points), tuple(r[0] for r in out.entries), f.semiring)
