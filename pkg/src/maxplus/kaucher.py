"""Semifield of fractions and idempotent Kaucher-style generalized intervals.

A cancellative commutative semiring with zero embeds into the semifield of
formal quotients ``num / den``.  Applied to the strong interval extension,
the quotient semifield is isomorphic to pairs ``(a, b)`` of nonzero
elements of the base quotient semifield, with no order required between
``a`` and ``b`` (plus a zero).  :func:`phi` is that isomorphism and
:func:`phi_preimage` its explicit inverse construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidElement, InverseOfZero, MissingCapability, ZeroDenominator
from .interval import Interval, IntervalSemiring, interval
from .semiring import Flags, Semiring, SemiringId


@dataclass(frozen=True)
class Fraction:
    """Unreduced quotient; compare with :func:`frac_equiv`, not ``==``."""

    num: object
    den: object


@dataclass(frozen=True)
class FractionSemifield(Semiring):
    base: Semiring

    id = SemiringId.OTHER

    def __post_init__(self):
        f = self.base.flags
        if not (f.commutative and f.cancellative and f.has_zero and f.has_unity):
            raise MissingCapability(
                f"fractions need a commutative cancellative semiring with zero and unity, "
                f"got {self.base.name}")

    @property
    def mode(self):
        return self.base.mode

    @property
    def name(self) -> str:
        return "frac:" + self.base.name

    @property
    def flags(self) -> Flags:
        return Flags(commutative=True, has_zero=True, has_unity=True, cancellative=True,
                     zero_divisor_free=True, totally_ordered=self.base.flags.totally_ordered)

    @property
    def zero(self):
        return Fraction(self.base.zero, self.base.one)

    @property
    def one(self):
        return Fraction(self.base.one, self.base.one)

    def is_semifield(self) -> bool:
        return True

    def frac(self, num, den) -> Fraction:
        num, den = self.base.check(num), self.base.check(den)
        if self.base.is_zero(den):
            raise ZeroDenominator(f"zero denominator in {num!r}/{den!r}")
        return Fraction(num, den)

    def embed(self, x) -> Fraction:
        return Fraction(x, self.base.one)

    def add(self, p, q):
        b = self.base
        return Fraction(b.add(b.mul(p.num, q.den), b.mul(p.den, q.num)), b.mul(p.den, q.den))

    def mul(self, p, q):
        b = self.base
        return Fraction(b.mul(p.num, q.num), b.mul(p.den, q.den))

    def eq(self, p, q) -> bool:
        b = self.base
        return b.eq(b.mul(p.num, q.den), b.mul(p.den, q.num))

    def is_zero(self, p) -> bool:
        return self.base.is_zero(p.num)

    def inv(self, p):
        if self.base.is_zero(p.num):
            raise InverseOfZero("the zero fraction has no inverse")
        return Fraction(p.den, p.num)

    def check(self, p):
        if not isinstance(p, Fraction):
            raise InvalidElement(f"{p!r} is not a fraction")
        return self.frac(p.num, p.den)

    def random_element(self, rng: random.Random):
        b = self.base
        den = b.random_element(rng)
        while b.is_zero(den):
            den = b.random_element(rng)
        return Fraction(b.random_element(rng), den)

    def format(self, p) -> str:
        return f"({self.base.format(p.num)})/({self.base.format(p.den)})"


def frac_add(F: FractionSemifield, p, q) -> Fraction:
    return F.add(F.check(p), F.check(q))


def frac_mul(F: FractionSemifield, p, q) -> Fraction:
    return F.mul(F.check(p), F.check(q))


def frac_equiv(F: FractionSemifield, p, q) -> bool:
    return F.eq(F.check(p), F.check(q))


def frac_inv(F: FractionSemifield, p) -> Fraction:
    return F.inv(F.check(p))


@dataclass(frozen=True)
class GeneralizedInterval:
    """A pair ``(a, b)`` with no order constraint; ``b`` below ``a`` is a quasi-interval."""

    a: object
    b: object


@dataclass(frozen=True)
class KaucherSemifield(Semiring):
    """``(T \\ {0})^2 + {0}`` with componentwise operations, ``T`` a semifield."""

    base: Semiring

    id = SemiringId.OTHER

    def __post_init__(self):
        if not self.base.is_semifield():
            raise MissingCapability(f"{self.base.name} is not a semifield")

    @property
    def mode(self):
        return self.base.mode

    @property
    def name(self) -> str:
        return "kaucher:" + self.base.name

    @property
    def flags(self) -> Flags:
        return Flags(commutative=True, has_zero=True, has_unity=True, cancellative=True,
                     zero_divisor_free=True)

    @property
    def zero(self):
        return GeneralizedInterval(self.base.zero, self.base.zero)

    @property
    def one(self):
        return GeneralizedInterval(self.base.one, self.base.one)

    def is_semifield(self) -> bool:
        return True

    def add(self, x, y):
        t = self.base
        return GeneralizedInterval(t.add(x.a, y.a), t.add(x.b, y.b))

    def mul(self, x, y):
        t = self.base
        return GeneralizedInterval(t.mul(x.a, y.a), t.mul(x.b, y.b))

    def eq(self, x, y) -> bool:
        return self.base.eq(x.a, y.a) and self.base.eq(x.b, y.b)

    def is_zero(self, x) -> bool:
        return self.base.is_zero(x.a)

    def inv(self, x):
        if self.is_zero(x):
            raise InverseOfZero("zero has no inverse")
        return GeneralizedInterval(self.base.inv(x.a), self.base.inv(x.b))

    def check(self, x):
        if not isinstance(x, GeneralizedInterval):
            raise InvalidElement(f"{x!r} is not a generalized interval")
        t = self.base
        a, b = t.check(x.a), t.check(x.b)
        if t.is_zero(a) != t.is_zero(b):
            raise InvalidElement(f"{x!r}: exactly one coordinate is zero")
        return GeneralizedInterval(a, b)

    def random_element(self, rng):
        t = self.base
        if rng.random() < 0.1:
            return self.zero
        out = []
        for _ in range(2):
            c = t.random_element(rng)
            while t.is_zero(c):
                c = t.random_element(rng)
            out.append(c)
        return GeneralizedInterval(*out)


def _interval_base(F: FractionSemifield) -> Semiring:
    I = F.base
    if not isinstance(I, IntervalSemiring) or not I.strong:
        raise MissingCapability("phi is defined on fractions over a strong interval extension")
    return I.base


def kaucher_target(F: FractionSemifield) -> KaucherSemifield:
    """The semifield that :func:`phi` maps ``F`` onto."""
    S = _interval_base(F)
    return KaucherSemifield(S if S.is_semifield() else FractionSemifield(S))


def phi(F: FractionSemifield, p: Fraction) -> GeneralizedInterval:
    """Map a fraction of strong intervals to ``(lo_num / lo_den, hi_num / hi_den)``."""
    S = _interval_base(F)
    p = F.check(p)
    x, y = p.num, p.den
    if S.is_semifield():
        if S.is_zero(x.lo):
            return GeneralizedInterval(S.zero, S.zero)
        return GeneralizedInterval(S.mul(x.lo, S.inv(y.lo)), S.mul(x.hi, S.inv(y.hi)))
    if S.is_zero(x.lo):
        return kaucher_target(F).zero
    return GeneralizedInterval(Fraction(x.lo, y.lo), Fraction(x.hi, y.hi))


def phi_preimage(F: FractionSemifield, g: GeneralizedInterval) -> Fraction:
    """Build a fraction ``(x, y)`` of strong intervals with ``phi((x, y)) == g``.

    Writing ``a = a1/a2`` and ``b = b1/b2``, take
    ``x = [a1 b1 b2, a1 b1 b2 + a2 b1^2]`` and ``y = [a2 b1 b2, a1 b2^2 + a2 b1 b2]``;
    both are intervals because each upper bound adds a term to the lower one.
    """
    S = _interval_base(F)
    I = F.base
    target = kaucher_target(F)
    g = target.check(g)
    if target.is_zero(g):
        return Fraction(I.zero, I.one)
    if S.is_semifield():
        a1, a2, b1, b2 = g.a, S.one, g.b, S.one
    else:
        a1, a2, b1, b2 = g.a.num, g.a.den, g.b.num, g.b.den
    m, add = S.mul, S.add
    x_lo = m(m(a1, b1), b2)
    x_hi = add(x_lo, m(a2, m(b1, b1)))
    y_lo = m(m(a2, b1), b2)
    y_hi = add(m(a1, m(b2, b2)), y_lo)
    return Fraction(interval(S, x_lo, x_hi, strong=True), interval(S, y_lo, y_hi, strong=True))
