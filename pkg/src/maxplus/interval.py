"""Interval extensions of an idempotent semiring.

An interval ``[lo, hi]`` is the order interval ``{t : lo <= t <= hi}``.  The
hull operations act boundwise, ``[a, b] * [c, d] = [a * c, b * d]``, which is
the least interval containing the elementwise image.  ``IntervalSemiring``
packages them as a semiring so that matrices, closures and the Bellman
solver run unchanged on interval data.

The weak extension allows any interval; the strong one (``strong=True``)
only ``[0, 0]`` and intervals whose lower bound is nonzero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .errors import (
    EmptyNoZero,
    InvalidElement,
    NotAlgebraicallyClosed,
    OrderViolation,
    ParseError,
    StrongModeViolation,
)
from .semiring import Flags, Semiring, SemiringId, _split_top_level, big_meet


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def embed(x) -> Interval:
    """The degenerate interval ``[x, x]``."""
    return Interval(x, x)


def strong_valid(s: Semiring, x: Interval) -> bool:
    """True iff ``x`` belongs to the strong extension over ``s``."""
    zero = s.zero
    if s.eq(x.lo, zero):
        return s.eq(x.hi, zero)
    return True


def interval(s: Semiring, lo, hi, strong: bool = False) -> Interval:
    """Validated constructor: rejects ``lo`` not below ``hi`` instead of swapping."""
    lo, hi = s.check(lo), s.check(hi)
    if not s.leq(lo, hi):
        raise OrderViolation(f"[{s.format(lo)}, {s.format(hi)}]: lower bound is not below upper bound")
    x = Interval(lo, hi)
    if strong and not strong_valid(s, x):
        raise InvalidElement(f"{x!r} straddles zero and is not in the strong extension")
    return x


@dataclass(frozen=True)
class IntervalSemiring(Semiring):
    """The weak (default) or strong interval extension of ``base``."""

    base: Semiring
    strong: bool = False

    id = SemiringId.INTERVAL

    def __post_init__(self):
        if self.strong and self.base.zero is None:
            raise ValueError("the strong extension needs a semiring with zero")

    @property
    def mode(self):
        return self.base.mode

    @property
    def name(self) -> str:
        return ("strong-interval:" if self.strong else "interval:") + self.base.name

    @property
    def flags(self) -> Flags:
        b = self.base.flags
        power_law = b.commutative and (b.cancellative or b.totally_ordered)
        return Flags(
            commutative=b.commutative,
            has_zero=b.has_zero,
            has_unity=b.has_unity,
            a_complete=b.a_complete,
            b_complete=b.b_complete,
            # the weak extension loses both through [0, z]
            cancellative=self.strong and b.cancellative,
            stabilizing=self.strong and b.stabilizing,
            algebraically_closed=b.algebraically_closed and power_law,
            zero_divisor_free=b.zero_divisor_free,
            totally_ordered=False,
        )

    @property
    def zero(self):
        z = self.base.zero
        return None if z is None else Interval(z, z)

    @property
    def one(self):
        e = self.base.one
        return None if e is None else Interval(e, e)

    @property
    def top(self):
        t = self.base.top
        return None if t is None else Interval(t, t)

    def add(self, x, y):
        b = self.base
        return Interval(b.add(x.lo, y.lo), b.add(x.hi, y.hi))

    def mul(self, x, y):
        b = self.base
        r = Interval(b.mul(x.lo, y.lo), b.mul(x.hi, y.hi))
        if self.strong and not b.flags.zero_divisor_free and not strong_valid(b, r):
            raise StrongModeViolation(f"{x!r} * {y!r} = {r!r} leaves the strong extension")
        return r

    hull_add = add
    hull_mul = mul

    def nth_root(self, y, n):
        return interval_nth_root(self, y, n)

    def check(self, x):
        if not isinstance(x, Interval):
            x = embed(x)
        return interval(self.base, x.lo, x.hi, strong=self.strong)

    def random_element(self, rng: random.Random):
        b = self.base
        lo = b.random_element(rng)
        hi = b.add(lo, b.random_element(rng))
        if self.strong and b.is_zero(lo):
            return Interval(lo, lo)
        return Interval(lo, hi)

    def parse(self, token: str):
        t = token.strip()
        if t.startswith("["):
            if not t.endswith("]"):
                raise ParseError(f"unterminated interval literal {token!r}")
            parts = _split_top_level(t[1:-1])
            if len(parts) != 2:
                raise ParseError(f"interval literal needs two bounds: {token!r}")
            lo, hi = (self.base.parse(p) for p in parts)
        else:
            lo = hi = self.base.parse(t)
        try:
            return interval(self.base, lo, hi, strong=self.strong)
        except InvalidElement as exc:
            raise ParseError(str(exc)) from exc

    def format(self, x) -> str:
        f = self.base.format
        return f"[{f(x.lo)},{f(x.hi)}]"


def hull_add(I: IntervalSemiring, x, y) -> Interval:
    return I.add(I.check(x), I.check(y))


def hull_mul(I: IntervalSemiring, x, y) -> Interval:
    return I.mul(I.check(x), I.check(y))


def big_hull_sum(I: IntervalSemiring, xs: Iterable) -> Interval:
    xs = [I.check(x) for x in xs]
    if not xs:
        if I.zero is None:
            raise EmptyNoZero("empty hull sum over a semiring without zero")
        return I.zero
    b = I.base
    return Interval(b.big_sum(x.lo for x in xs), b.big_sum(x.hi for x in xs))


def interval_nth_root(I: IntervalSemiring, y, n: int) -> Interval:
    """Solve ``z^n = y`` boundwise.

    The upper root is replaced by ``lo_root + hi_root`` so the result is a
    well-formed interval even when the two roots were chosen out of order.
    """
    if not I.flags.algebraically_closed:
        raise NotAlgebraicallyClosed(f"{I.name} is not algebraically closed")
    y = I.check(y)
    b = I.base
    lo = b.nth_root(y.lo, n)
    hi = b.add(lo, b.nth_root(y.hi, n))
    return Interval(lo, hi)


# -- finite-set arithmetic -----------------------------------------------------

def _operation(s: Semiring, op: Union[str, Callable]) -> Callable:
    if callable(op):
        return op
    if op == "add":
        return s.add
    if op == "mul":
        return s.mul
    raise ValueError(f"unknown operation {op!r}")


def set_star(s: Semiring, X: Iterable, Y: Iterable, op: Union[str, Callable]) -> frozenset:
    """Exact elementwise image ``{x * y : x in X, y in Y}``."""
    f = _operation(s, op)
    X, Y = list(X), list(Y)
    if not X or not Y:
        raise ValueError("set_star needs nonempty sets")
    return frozenset(f(x, y) for x in X for y in Y)


def interval_hull(s: Semiring, X: Iterable) -> Interval:
    """Least interval ``[inf X, sup X]`` containing a finite nonempty set."""
    X = list(X)
    if not X:
        raise ValueError("hull of the empty set")
    return Interval(big_meet(s, X), s.big_sum(X))


def contains(s: Semiring, x: Interval, t) -> bool:
    return s.leq(x.lo, t) and s.leq(t, x.hi)


@dataclass(frozen=True)
class SetAlgebra(Semiring):
    """Finite subsets of ``base`` under the naive elementwise operations.

    This is *not* an idempotent semiring; it exists so the axiom harness can
    exhibit where it breaks.
    """

    base: Semiring
    max_size: int = 3

    id = SemiringId.OTHER

    @property
    def name(self) -> str:
        return "naive-sets:" + self.base.name

    @property
    def flags(self) -> Flags:
        b = self.base.flags
        return Flags(commutative=b.commutative, has_zero=b.has_zero, has_unity=b.has_unity)

    @property
    def zero(self):
        return None if self.base.zero is None else frozenset({self.base.zero})

    @property
    def one(self):
        return None if self.base.one is None else frozenset({self.base.one})

    def add(self, X, Y):
        return set_star(self.base, X, Y, "add")

    def mul(self, X, Y):
        return set_star(self.base, X, Y, "mul")

    def check(self, X):
        return frozenset(self.base.check(x) for x in X)

    def random_element(self, rng):
        k = rng.randint(1, self.max_size)
        return frozenset(self.base.random_element(rng) for _ in range(k))
