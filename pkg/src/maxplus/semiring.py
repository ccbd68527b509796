"""Idempotent semirings: the abstraction, its canonical order and the shipped instances.

Every semiring object carries its capability flags, a numeric mode and
the two basic operations.  Elements are plain Python values:

* ``RMax``/``RMin``/``RMaxComplete``/``MaxMin``: ``float`` in float64 mode,
  :class:`fractions.Fraction` in exact mode; the infinities are always the
  IEEE floats ``-inf``/``+inf``.
* ``BoolSemiring``: ``bool``.
* ``Product``: tuples of factor elements.

The methods on a semiring (``s.add``, ``s.mul``, ...) skip validation and are
what the matrix code calls in its inner loops.  The module-level functions
(:func:`add`, :func:`mul`, :func:`leq`, ...) validate their arguments first.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .errors import (
    EmptyNoZero,
    InvalidElement,
    InverseOfZero,
    MissingCapability,
    NoHull,
    NotAlgebraicallyClosed,
    NoUnity,
    ParseError,
)

NEG_INF = float("-inf")
POS_INF = float("inf")

Element = Any


class SemiringId(enum.Enum):
    RMAX = "rmax"
    RMIN = "rmin"
    RMAX_COMPLETE = "rmax-complete"
    BOOL = "bool"
    MAXMIN = "maxmin"
    PRODUCT = "prod"
    # derived structures built by other modules
    INTERVAL = "interval"
    MATRIX = "matrix"
    OTHER = "other"


class NumericMode(enum.Enum):
    FLOAT64 = "float64"
    EXACT = "exact"


@dataclass(frozen=True)
class Flags:
    commutative: bool = False
    has_zero: bool = False
    has_unity: bool = False
    a_complete: bool = False
    b_complete: bool = False
    cancellative: bool = False
    stabilizing: bool = False
    algebraically_closed: bool = False
    zero_divisor_free: bool = False
    totally_ordered: bool = False


class Semiring:
    """Common interface of every idempotent semiring in the package.

    Subclasses provide ``add``, ``mul``, ``check``, ``random_element`` and the
    ``zero``/``one`` attributes (``None`` when the element does not exist).
    Everything order-related is derived from ``add`` and ``eq``.
    """

    id: SemiringId = SemiringId.OTHER
    flags: Flags = Flags()
    mode: NumericMode = NumericMode.EXACT
    zero: Element = None
    one: Element = None
    top: Element = None

    @property
    def name(self) -> str:
        return self.id.value

    @property
    def numeric_mode(self) -> NumericMode:
        return self.mode

    # -- the two operations -------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    # -- order --------------------------------------------------------------
    def leq(self, a, b) -> bool:
        return self.eq(self.add(a, b), b)

    def lt(self, a, b) -> bool:
        return self.leq(a, b) and not self.eq(a, b)

    def is_zero(self, a) -> bool:
        return self.zero is not None and self.eq(a, self.zero)

    def meet(self, a, b):
        """Greatest lower bound of ``a`` and ``b`` in the canonical order."""
        raise NoHull(f"{self.name}: no infimum operation available")

    # -- derived operations -------------------------------------------------
    def power(self, x, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        if n == 0:
            if self.one is None:
                raise NoUnity(f"{self.name} has no unity")
            return self.one
        result = None
        base = x
        while n:
            if n & 1:
                result = base if result is None else self.mul(result, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return result

    def big_sum(self, xs: Iterable):
        result = None
        for x in xs:
            result = x if result is None else self.add(result, x)
        if result is None:
            if self.zero is None:
                raise EmptyNoZero(f"empty sum in {self.name}, which has no zero")
            return self.zero
        return result

    def nth_root(self, y, n: int):
        raise NotAlgebraicallyClosed(f"{self.name} is not algebraically closed")

    def inv(self, x):
        raise MissingCapability(f"{self.name} is not a semifield")

    def is_semifield(self) -> bool:
        """True when every nonzero element has a multiplicative inverse."""
        return False

    # -- elements -----------------------------------------------------------
    def check(self, x):
        """Return ``x`` coerced to this semiring or raise InvalidElement."""
        return x

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def parse(self, token: str):
        raise ParseError(f"{self.name} has no literal syntax")

    def format(self, x) -> str:
        return str(x)


def _root_check(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"root index must be a positive integer, got {n!r}")


@dataclass(frozen=True)
class _Numeric(Semiring):
    """Shared machinery of the real-valued instances."""

    mode: NumericMode = NumericMode.EXACT
    # infinities allowed as elements of this carrier
    _allowed_inf: tuple = field(default=(), init=False, repr=False, compare=False)

    @property
    def name(self) -> str:
        suffix = "@exact" if self.mode is NumericMode.EXACT else ""
        return self.id.value + suffix

    def number(self, v):
        if isinstance(v, bool):
            raise InvalidElement(f"{v!r} is a boolean, not an element of {self.name}")
        if isinstance(v, float) and v != v:
            raise InvalidElement(f"NaN is not an element of {self.name}")
        if isinstance(v, float) and v in (NEG_INF, POS_INF):
            return v
        if self.mode is NumericMode.EXACT:
            try:
                return Fraction(v)
            except (TypeError, ValueError) as exc:
                raise InvalidElement(f"{v!r} is not an element of {self.name}") from exc
        try:
            return float(v)
        except (TypeError, ValueError) as exc:
            raise InvalidElement(f"{v!r} is not an element of {self.name}") from exc

    def check(self, x):
        if isinstance(x, tuple):
            raise InvalidElement(f"{x!r} is a tuple, not an element of {self.name}")
        v = self.number(x)
        if isinstance(v, float) and v in (NEG_INF, POS_INF) and v not in self._allowed_inf:
            raise InvalidElement(f"{v!r} is not an element of {self.name}")
        if self.mode is NumericMode.FLOAT64 and isinstance(x, Fraction):
            raise InvalidElement(f"{x!r}: rational given to a float64 semiring")
        return v

    def _random_finite(self, rng):
        if self.mode is NumericMode.EXACT:
            return Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3, 4)))
        # quarter-integers keep float addition exact
        return rng.randint(-24, 24) / 4

    def parse(self, token: str):
        t = token.strip().lower()
        if t in ("-inf", "-infinity"):
            v = NEG_INF
        elif t in ("+inf", "inf", "+infinity", "infinity"):
            v = POS_INF
        else:
            try:
                v = Fraction(t)
            except ValueError as exc:
                raise ParseError(f"bad number {token!r}") from exc
            if self.mode is NumericMode.FLOAT64:
                v = float(t) if "/" not in t else float(v)
        try:
            return self.check(v)
        except InvalidElement as exc:
            raise ParseError(str(exc)) from exc

    def format(self, x) -> str:
        if x == NEG_INF:
            return "-inf"
        if x == POS_INF:
            return "+inf"
        if isinstance(x, Fraction):
            return str(x)
        return repr(float(x))


@dataclass(frozen=True)
class RMax(_Numeric):
    """Reals with ``max`` as sum and ``+`` as product; zero is ``-inf``."""

    id = SemiringId.RMAX
    flags = Flags(
        commutative=True, has_zero=True, has_unity=True, a_complete=False,
        b_complete=True, cancellative=True, stabilizing=True,
        algebraically_closed=True, zero_divisor_free=True, totally_ordered=True,
    )

    def __post_init__(self):
        object.__setattr__(self, "_allowed_inf", (NEG_INF,))

    @property
    def zero(self):
        return NEG_INF

    @property
    def one(self):
        return self.number(0)

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        if a == NEG_INF or b == NEG_INF:
            return NEG_INF
        return a + b

    def meet(self, a, b):
        return a if a <= b else b

    def nth_root(self, y, n):
        _root_check(n)
        if y == NEG_INF:
            return NEG_INF
        return y / n

    def inv(self, x):
        if x == NEG_INF:
            raise InverseOfZero("zero has no inverse")
        return -x

    def is_semifield(self) -> bool:
        return True

    def random_element(self, rng):
        if rng.random() < 0.1:
            return NEG_INF
        return self._random_finite(rng)


@dataclass(frozen=True)
class RMin(_Numeric):
    """Reals with ``min`` as sum and ``+`` as product; zero is ``+inf``."""

    id = SemiringId.RMIN
    flags = RMax.flags

    def __post_init__(self):
        object.__setattr__(self, "_allowed_inf", (POS_INF,))

    @property
    def zero(self):
        return POS_INF

    @property
    def one(self):
        return self.number(0)

    def add(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        if a == POS_INF or b == POS_INF:
            return POS_INF
        return a + b

    def meet(self, a, b):
        return a if a >= b else b

    def nth_root(self, y, n):
        _root_check(n)
        if y == POS_INF:
            return POS_INF
        return y / n

    def inv(self, x):
        if x == POS_INF:
            raise InverseOfZero("zero has no inverse")
        return -x

    def is_semifield(self) -> bool:
        return True

    def random_element(self, rng):
        if rng.random() < 0.1:
            return POS_INF
        return self._random_finite(rng)


@dataclass(frozen=True)
class RMaxComplete(_Numeric):
    """``RMax`` with a greatest element ``+inf``; ``inf * zero = zero``."""

    id = SemiringId.RMAX_COMPLETE
    flags = Flags(
        commutative=True, has_zero=True, has_unity=True, a_complete=True,
        b_complete=True, cancellative=False, stabilizing=True,
        algebraically_closed=True, zero_divisor_free=True, totally_ordered=True,
    )

    def __post_init__(self):
        object.__setattr__(self, "_allowed_inf", (NEG_INF, POS_INF))

    @property
    def zero(self):
        return NEG_INF

    @property
    def one(self):
        return self.number(0)

    @property
    def top(self):
        return POS_INF

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        if a == NEG_INF or b == NEG_INF:
            return NEG_INF
        if a == POS_INF or b == POS_INF:
            return POS_INF
        return a + b

    def meet(self, a, b):
        return a if a <= b else b

    def nth_root(self, y, n):
        _root_check(n)
        if y in (NEG_INF, POS_INF):
            return y
        return y / n

    def random_element(self, rng):
        r = rng.random()
        if r < 0.1:
            return NEG_INF
        if r < 0.2:
            return POS_INF
        return self._random_finite(rng)


@dataclass(frozen=True)
class MaxMin(_Numeric):
    """Extended reals with ``max`` as sum and ``min`` as product."""

    id = SemiringId.MAXMIN
    flags = Flags(
        commutative=True, has_zero=True, has_unity=True, a_complete=True,
        b_complete=True, cancellative=False, stabilizing=True,
        algebraically_closed=True, zero_divisor_free=True, totally_ordered=True,
    )

    def __post_init__(self):
        object.__setattr__(self, "_allowed_inf", (NEG_INF, POS_INF))

    @property
    def zero(self):
        return NEG_INF

    @property
    def one(self):
        return POS_INF

    @property
    def top(self):
        return POS_INF

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a if a <= b else b

    def meet(self, a, b):
        return a if a <= b else b

    def nth_root(self, y, n):
        _root_check(n)
        return y

    def random_element(self, rng):
        r = rng.random()
        if r < 0.1:
            return NEG_INF
        if r < 0.2:
            return POS_INF
        return self._random_finite(rng)


@dataclass(frozen=True)
class BoolSemiring(Semiring):
    """The two-element semiring ``({False, True}, or, and)``."""

    mode: NumericMode = NumericMode.EXACT

    id = SemiringId.BOOL
    flags = Flags(
        commutative=True, has_zero=True, has_unity=True, a_complete=True,
        b_complete=True, cancellative=True, stabilizing=True,
        algebraically_closed=True, zero_divisor_free=True, totally_ordered=True,
    )
    zero = False
    one = True
    top = True

    @property
    def name(self) -> str:
        return "bool"

    def is_semifield(self) -> bool:
        return True

    def inv(self, x):
        if not x:
            raise InverseOfZero("the zero of bool has no inverse")
        return True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def meet(self, a, b):
        return a and b

    def nth_root(self, y, n):
        _root_check(n)
        return y

    def check(self, x):
        if isinstance(x, bool):
            return x
        raise InvalidElement(f"{x!r} is not a boolean")

    def random_element(self, rng):
        return rng.random() < 0.5

    def parse(self, token: str):
        t = token.strip().lower()
        if t in ("0b", "false"):
            return False
        if t in ("1b", "true"):
            return True
        raise ParseError(f"bad boolean literal {token!r}")

    def format(self, x) -> str:
        return "1b" if x else "0b"


def _split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


@dataclass(frozen=True)
class Product(Semiring):
    """Componentwise product of semirings.

    By default the carrier is the full product of the factors.  With
    ``strict=True`` it is the punctured product: every coordinate nonzero,
    plus the all-zero tuple.
    """

    factors: tuple = ()
    strict: bool = False

    id = SemiringId.PRODUCT

    def __post_init__(self):
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("a product needs at least one factor (the empty product has 0 = 1)")
        object.__setattr__(self, "factors", factors)

    @property
    def mode(self):
        modes = {f.mode for f in self.factors}
        return modes.pop() if len(modes) == 1 else NumericMode.FLOAT64

    @property
    def name(self) -> str:
        head = "sprod:" if self.strict else "prod:"
        inner = ",".join(f.name.split("@")[0] for f in self.factors)
        suffix = "@exact" if all(f.mode is NumericMode.EXACT for f in self.factors) else ""
        return head + inner + suffix

    @property
    def flags(self) -> Flags:
        fs = [f.flags for f in self.factors]
        several = len(self.factors) >= 2
        # a zero coordinate in an otherwise nonzero tuple breaks these in the full product
        punctured_ok = self.strict or not several
        return Flags(
            commutative=all(f.commutative for f in fs),
            has_zero=all(f.has_zero for f in fs),
            has_unity=all(f.has_unity for f in fs),
            a_complete=all(f.a_complete for f in fs) and not self.strict,
            b_complete=all(f.b_complete for f in fs),
            cancellative=all(f.cancellative for f in fs) and punctured_ok,
            stabilizing=all(f.stabilizing for f in fs) and punctured_ok,
            algebraically_closed=all(f.algebraically_closed for f in fs),
            zero_divisor_free=all(f.zero_divisor_free for f in fs) and punctured_ok,
            totally_ordered=all(f.totally_ordered for f in fs) and not several,
        )

    @property
    def zero(self):
        if any(f.zero is None for f in self.factors):
            return None
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        if any(f.one is None for f in self.factors):
            return None
        return tuple(f.one for f in self.factors)

    @property
    def top(self):
        if self.strict or any(f.top is None for f in self.factors):
            return None
        return tuple(f.top for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        r = tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))
        if self.strict and any(f.is_zero(x) for f, x in zip(self.factors, r)):
            return self.zero
        return r

    def meet(self, a, b):
        return tuple(f.meet(x, y) for f, x, y in zip(self.factors, a, b))

    def nth_root(self, y, n):
        _root_check(n)
        return tuple(f.nth_root(x, n) for f, x in zip(self.factors, y))

    def inv(self, x):
        if self.is_zero(x):
            raise InverseOfZero("zero has no inverse")
        return tuple(f.inv(c) for f, c in zip(self.factors, x))

    def is_semifield(self) -> bool:
        return (self.strict or len(self.factors) == 1) and all(f.is_semifield() for f in self.factors)

    def check(self, x):
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            raise InvalidElement(f"{x!r} is not a {len(self.factors)}-tuple")
        r = tuple(f.check(c) for f, c in zip(self.factors, x))
        if self.strict:
            zeros = [f.is_zero(c) for f, c in zip(self.factors, r)]
            if any(zeros) and not all(zeros):
                raise InvalidElement(f"{x!r} mixes zero and nonzero coordinates")
        return r

    def random_element(self, rng):
        if self.strict:
            if rng.random() < 0.1:
                return self.zero
            out = []
            for f in self.factors:
                c = f.random_element(rng)
                while f.is_zero(c):
                    c = f.random_element(rng)
                out.append(c)
            return tuple(out)
        return tuple(f.random_element(rng) for f in self.factors)

    def parse(self, token: str):
        t = token.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ParseError(f"product literal must be parenthesised: {token!r}")
        parts = _split_top_level(t[1:-1])
        if len(parts) != len(self.factors):
            raise ParseError(f"expected {len(self.factors)} coordinates in {token!r}")
        value = tuple(f.parse(p) for f, p in zip(self.factors, parts))
        try:
            return self.check(value)
        except InvalidElement as exc:
            raise ParseError(str(exc)) from exc

    def format(self, x) -> str:
        return "(" + ",".join(f.format(c) for f, c in zip(self.factors, x)) + ")"


_BASIC = {
    "rmax": RMax,
    "rmin": RMin,
    "rmax-complete": RMaxComplete,
    "maxmin": MaxMin,
}


def semiring_from_string(text: str) -> Semiring:
    """Build a semiring from a selection string such as ``prod:rmax,rmax@exact``."""
    t = text.strip().lower()
    mode = NumericMode.FLOAT64
    if "@" in t:
        t, _, suffix = t.partition("@")
        if suffix == "exact":
            mode = NumericMode.EXACT
        elif suffix not in ("float", "float64"):
            raise ValueError(f"unknown numeric mode {suffix!r}")
    if t == "bool":
        return BoolSemiring()
    if t in _BASIC:
        return _BASIC[t](mode=mode)
    for head, strict in (("prod:", False), ("sprod:", True)):
        if t.startswith(head):
            names = [n for n in t[len(head):].split(",") if n]
            return Product(tuple(semiring_from_string(n + ("@exact" if mode is NumericMode.EXACT else "")) for n in names), strict=strict)
    raise ValueError(f"unknown semiring {text!r}")


def instances(mode: NumericMode = NumericMode.EXACT) -> list[Semiring]:
    """One of each shipped instance, products built from two ``RMax`` factors."""
    return [
        RMax(mode=mode),
        RMin(mode=mode),
        RMaxComplete(mode=mode),
        BoolSemiring(),
        MaxMin(mode=mode),
        Product((RMax(mode=mode), RMax(mode=mode))),
    ]


# -- validated operations ----------------------------------------------------

def add(s: Semiring, a, b):
    return s.add(s.check(a), s.check(b))


def mul(s: Semiring, a, b):
    return s.mul(s.check(a), s.check(b))


def leq(s: Semiring, a, b) -> bool:
    return s.leq(s.check(a), s.check(b))


def lt(s: Semiring, a, b) -> bool:
    return s.lt(s.check(a), s.check(b))


def power(s: Semiring, x, n: int):
    return s.power(s.check(x), n)


def nth_root(s: Semiring, y, n: int):
    """Solve ``x^n = y``; raises NotAlgebraicallyClosed when the flag is unset."""
    if not s.flags.algebraically_closed:
        raise NotAlgebraicallyClosed(f"{s.name} is not algebraically closed")
    return s.nth_root(s.check(y), n)


def big_sum(s: Semiring, xs: Iterable):
    return s.big_sum([s.check(x) for x in xs])


def big_meet(s: Semiring, xs: Sequence):
    xs = list(xs)
    if not xs:
        raise NoHull("infimum of the empty set")
    r = xs[0]
    for x in xs[1:]:
        r = s.meet(r, x)
    return r
