"""Randomised check of the idempotent-semiring laws.

Works on anything implementing the :class:`~maxplus.semiring.Semiring`
interface, including interval extensions, matrix semirings and the naive
set algebra used as a counterexample.  Failures are returned as data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Optional

from .semiring import Semiring

LAWS = (
    "add_idempotent",
    "add_commutative",
    "add_associative",
    "mul_associative",
    "left_distributive",
    "right_distributive",
    "zero_identity",
    "zero_annihilates",
    "unity_identity",
    "order_consistent",
    "mul_commutative",
)


@dataclass
class LawResult:
    checked: int = 0
    failures: int = 0
    counterexample: Optional[tuple] = None


@dataclass
class AxiomReport:
    semiring: str
    samples: int
    seed: int
    laws: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.failures == 0 for r in self.laws.values())

    @property
    def failed_laws(self) -> list[str]:
        return [name for name, r in self.laws.items() if r.failures]

    def first_counterexample(self) -> Optional[tuple]:
        for name, r in self.laws.items():
            if r.failures:
                return (name,) + r.counterexample
        return None

    def summary(self) -> str:
        lines = [f"check-axioms {self.semiring}: samples={self.samples} seed={self.seed} "
                 f"{'PASS' if self.passed else 'FAIL'}"]
        for name, r in self.laws.items():
            status = "ok" if not r.failures else f"FAILED {r.failures}/{r.checked}"
            lines.append(f"  {name:<20} {status}")
            if r.failures:
                lines.append(f"    first counterexample: {r.counterexample!r}")
        return "\n".join(lines)


def check_axioms(s: Semiring, sample_count: int = 1000, rng_seed: int = 0) -> AxiomReport:
    """Draw ``sample_count`` random triples and test every semiring law on them.

    Order consistency is tested on the pair ``(x, x + y)``, which is always
    comparable, so the law is exercised even in partially ordered carriers.
    ``mul_commutative`` is only checked when the commutative flag is set.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be at least 1")
    rng = random.Random(rng_seed)
    laws = {name: LawResult() for name in LAWS}
    eq, add, mul = s.eq, s.add, s.mul
    zero, one = s.zero, s.one
    commutative = s.flags.commutative

    def record(name, ok, *witness):
        r = laws[name]
        r.checked += 1
        if not ok:
            r.failures += 1
            if r.counterexample is None:
                r.counterexample = witness

    for _ in range(sample_count):
        x = s.random_element(rng)
        y = s.random_element(rng)
        z = s.random_element(rng)
        record("add_idempotent", eq(add(x, x), x), x)
        record("add_commutative", eq(add(x, y), add(y, x)), x, y)
        record("add_associative", eq(add(add(x, y), z), add(x, add(y, z))), x, y, z)
        record("mul_associative", eq(mul(mul(x, y), z), mul(x, mul(y, z))), x, y, z)
        record("left_distributive", eq(mul(x, add(y, z)), add(mul(x, y), mul(x, z))), x, y, z)
        record("right_distributive", eq(mul(add(x, y), z), add(mul(x, z), mul(y, z))), x, y, z)
        if zero is not None:
            record("zero_identity", eq(add(zero, x), x), x)
            record("zero_annihilates", eq(mul(zero, x), zero) and eq(mul(x, zero), zero), x)
        if one is not None:
            record("unity_identity", eq(mul(one, x), x) and eq(mul(x, one), x), x)
        upper = add(x, y)
        ok = (s.leq(add(x, z), add(upper, z)) and s.leq(mul(x, z), mul(upper, z))
              and s.leq(mul(z, x), mul(z, upper)))
        record("order_consistent", ok, x, upper, z)
        if commutative:
            record("mul_commutative", eq(mul(x, y), mul(y, x)), x, y)

    return AxiomReport(s.name, sample_count, rng_seed,
                       {k: v for k, v in laws.items() if v.checked})
