import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from maxplus import (
    NEG_INF,
    BoolSemiring,
    FractionSemifield,
    GeneralizedInterval,
    Interval,
    IntervalSemiring,
    KaucherSemifield,
    Product,
    RMax,
    frac_add,
    frac_equiv,
    frac_inv,
    frac_mul,
    phi,
    phi_preimage,
)
from maxplus.errors import InverseOfZero, MissingCapability, ZeroDenominator
from maxplus.kaucher import Fraction, kaucher_target

RMAX = RMax()
F = FractionSemifield(RMAX)
SI = IntervalSemiring(RMAX, strong=True)
FI = FractionSemifield(SI)


def iv(lo, hi):
    return Interval(Q(lo), Q(hi))


class TestFractionSemifield:
    def test_equivalence(self):
        assert frac_equiv(F, F.frac(Q(3), Q(1)), F.frac(Q(5), Q(3)))
        assert not frac_equiv(F, F.frac(Q(3), Q(1)), F.frac(Q(5), Q(2)))

    def test_sum_reduces(self):
        s = frac_add(F, F.frac(Q(0), Q(0)), F.frac(Q(1), Q(0)))
        assert frac_equiv(F, s, F.frac(Q(1), Q(0)))

    def test_inverse_gives_unity_class(self):
        p = F.frac(Q(7, 2), Q(-1))
        assert frac_equiv(F, frac_mul(F, p, frac_inv(F, p)), F.frac(Q(4), Q(4)))

    def test_errors(self):
        with pytest.raises(ZeroDenominator):
            F.frac(Q(1), NEG_INF)
        with pytest.raises(InverseOfZero):
            frac_inv(F, F.frac(NEG_INF, Q(0)))
        with pytest.raises(MissingCapability):
            FractionSemifield(Product((RMax(), RMax())))

    def test_embedding_is_injective_homomorphism(self):
        rng = random.Random(0)
        for _ in range(100):
            a, b = RMAX.random_element(rng), RMAX.random_element(rng)
            assert frac_equiv(F, F.add(F.embed(a), F.embed(b)), F.embed(RMAX.add(a, b)))
            assert frac_equiv(F, F.mul(F.embed(a), F.embed(b)), F.embed(RMAX.mul(a, b)))
            assert frac_equiv(F, F.embed(a), F.embed(b)) == (a == b)

    def test_laws_on_random_fractions(self):
        rng = random.Random(1)
        for _ in range(300):
            p, q, r = (F.random_element(rng) for _ in range(3))
            assert frac_equiv(F, F.add(p, p), p)
            assert frac_equiv(F, F.mul(p, F.add(q, r)), F.add(F.mul(p, q), F.mul(p, r)))
            if not F.is_zero(p):
                assert frac_equiv(F, F.mul(p, frac_inv(F, p)), F.one)

    def test_fractions_over_the_strong_extension(self):
        """Strong intervals over RMax are cancellative, so their fractions form a semifield."""
        p = FI.frac(iv(0, 1), iv(2, 2))
        assert frac_equiv(FI, FI.mul(p, frac_inv(FI, p)), FI.one)


class TestPhi:
    def test_examples(self):
        assert phi(FI, FI.frac(iv(2, 3), iv(1, 1))) == GeneralizedInterval(1, 2)
        assert phi(FI, FI.frac(iv(1, 1), iv(2, 2))) == GeneralizedInterval(-1, -1)

    def test_reversed_gap_target(self):
        g = GeneralizedInterval(Q(1), Q(-2))
        p = phi_preimage(FI, g)
        assert phi(FI, p) == g
        assert RMAX.leq(p.num.lo, p.num.hi) and RMAX.leq(p.den.lo, p.den.hi)

    def test_target_is_kaucher(self):
        K = kaucher_target(FI)
        assert isinstance(K, KaucherSemifield)
        x = GeneralizedInterval(Q(3), Q(-1))
        assert K.mul(x, K.inv(x)) == K.one

    def test_requires_strong_intervals(self):
        with pytest.raises(MissingCapability):
            phi(F, F.frac(Q(1), Q(1)))

    def test_bool_base_is_a_semifield(self):
        FB = FractionSemifield(IntervalSemiring(BoolSemiring(), strong=True))
        one = Interval(True, True)
        assert phi(FB, FB.frac(one, one)) == GeneralizedInterval(True, True)


class NaturalMax(RMax):
    """Nonnegative integers under (max, +): cancellative, yet without inverses."""

    def is_semifield(self):
        return False

    def inv(self, x):
        raise MissingCapability("no inverses among the naturals")

    def random_element(self, rng):
        return NEG_INF if rng.random() < 0.1 else Q(rng.randint(0, 9))


class TestNonSemifieldBase:
    N = NaturalMax()
    FN = FractionSemifield(IntervalSemiring(NaturalMax(), strong=True))

    def test_coordinates_are_fractions(self):
        g = phi(self.FN, self.FN.frac(Interval(Q(2), Q(3)), Interval(Q(1), Q(1))))
        assert isinstance(g.a, Fraction) and isinstance(g.b, Fraction)
        base = FractionSemifield(self.N)
        assert frac_equiv(base, g.a, base.frac(Q(1), Q(0)))
        assert frac_equiv(base, g.b, base.frac(Q(2), Q(0)))

    def test_round_trip_with_reversed_gap(self):
        rng = random.Random(3)
        K = kaucher_target(self.FN)
        base = FractionSemifield(self.N)
        for _ in range(100):
            g = K.random_element(rng)
            back = phi(self.FN, phi_preimage(self.FN, g))
            assert frac_equiv(base, back.a, g.a) and frac_equiv(base, back.b, g.b)


finite = st.integers(-20, 20).map(lambda k: Q(k, 2))


@st.composite
def strong_fractions(draw):
    lo1, lo2 = draw(finite), draw(finite)
    return FI.frac(Interval(lo1, lo1 + draw(st.integers(0, 6))), Interval(lo2, lo2 + draw(st.integers(0, 6))))


@given(strong_fractions(), strong_fractions())
def test_phi_is_a_homomorphism(p, q):
    K = kaucher_target(FI)
    assert phi(FI, FI.add(p, q)) == K.add(phi(FI, p), phi(FI, q))
    assert phi(FI, FI.mul(p, q)) == K.mul(phi(FI, p), phi(FI, q))


@given(strong_fractions(), strong_fractions())
def test_phi_respects_equivalence(p, q):
    if frac_equiv(FI, p, q):
        assert phi(FI, p) == phi(FI, q)


@given(finite, finite)
def test_surjectivity_recipe(a, b):
    g = GeneralizedInterval(a, b)
    assert phi(FI, phi_preimage(FI, g)) == g
