import random
from fractions import Fraction as Q

import pytest

from maxplus import (
    NEG_INF,
    POS_INF,
    IntervalSemiring,
    Matrix,
    Precheck,
    RMax,
    RMin,
    closure,
    join,
    mat_leq,
    mat_mul,
    minimality_check,
    rho,
    solve,
    split,
    verify,
)
from maxplus.bellman import iterate
from maxplus.errors import NotASolution, NotStabilized, PrecheckFailed

import gen

RMAX, RMIN = RMax(), RMin()


def test_zero_matrix_returns_b_after_one_update():
    B = Matrix.from_rows(RMAX, [[1], [2]])
    rep = solve(Matrix.zeros(RMAX, 2, 2), B)
    assert rep.solution == B
    assert rep.iterations_used == 1
    assert rep.stabilized and rep.residual_ok


def test_distances_to_target():
    A = Matrix.from_rows(RMIN, [[POS_INF, 1, 5], [POS_INF, POS_INF, 2], [POS_INF, POS_INF, POS_INF]])
    B = Matrix.from_rows(RMIN, [[POS_INF], [POS_INF], [0]])
    rep = solve(A, B)
    assert rep.solution == Matrix.from_rows(RMIN, [[3], [2], [0]])
    assert rep.precheck is Precheck.SEMIDEFINITE_OK
    assert rep.iterations_used <= 3


def test_precheck_and_divergence():
    A = Matrix.from_rows(RMAX, [[0, 2], [1, 0]])
    B = Matrix.from_rows(RMAX, [[0], [0]])
    with pytest.raises(PrecheckFailed):
        solve(A, B)
    with pytest.raises(NotStabilized) as info:
        solve(A, B, force=True)
    assert info.value.iterations == 5
    assert info.value.last is not None


def test_divergence_witness_grows_strictly():
    A = Matrix.from_rows(RMAX, [[Q(1, 2), NEG_INF], [1, -1]])
    B = Matrix.from_rows(RMAX, [[0], [0]])
    xs = [X for X, _ in zip(iterate(A, B), range(2 * 2 + 2))]
    firsts = [X[0, 0] for X in xs[1:]]
    assert all(a < b for a, b in zip(firsts, firsts[1:]))


def test_verify():
    rng = random.Random(0)
    A = gen.semidefinite_rmax(rng, 4)
    B = gen.random_column(rng, RMAX, 4)
    assert verify(A, B, mat_mul(closure(A), B))
    assert verify(Matrix.zeros(RMAX, 4, 4), B, B)
    A2 = Matrix.from_rows(RMAX, [[NEG_INF, 0], [NEG_INF, NEG_INF]])
    B2 = Matrix.from_rows(RMAX, [[NEG_INF], [0]])
    assert not verify(A2, B2, B2)


def test_minimality():
    A = Matrix.from_rows(RMAX, [[0, NEG_INF], [NEG_INF, -1]])  # loop of weight 1 at node 0
    B = Matrix.from_rows(RMAX, [[0], [0]])
    least = mat_mul(closure(A), B)
    assert minimality_check(A, B, least)
    bigger = Matrix.from_rows(RMAX, [[5], [0]])
    assert verify(A, B, bigger)
    assert minimality_check(A, B, bigger)
    assert mat_leq(least, bigger) and least != bigger
    below = Matrix.from_rows(RMAX, [[-1], [0]])
    with pytest.raises(NotASolution):
        minimality_check(A, B, below)


@pytest.mark.parametrize("s_id", ["rmax", "rmin"])
def test_random_systems(s_id):
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 8)
        A = gen.semidefinite(rng, s_id, n)
        B = gen.random_column(rng, A.semiring, n)
        rep = solve(A, B)
        assert rep.iterations_used <= n
        assert rep.solution == mat_mul(closure(A), B)
        assert rep.residual_ok


def test_monotone_from_below():
    rng = random.Random(2)
    for _ in range(30):
        n = rng.randint(1, 6)
        A = gen.semidefinite_rmax(rng, n)
        B = gen.random_column(rng, RMAX, n)
        xs = [X for X, _ in zip(iterate(A, B), range(n + 2))]
        assert all(mat_leq(a, b) for a, b in zip(xs, xs[1:]))


def test_warm_start_below_the_solution():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 6)
        A = gen.semidefinite_rmax(rng, n)
        B = gen.random_column(rng, RMAX, n)
        rep = solve(A, B, X0=B)
        assert rep.solution == mat_mul(closure(A), B)


def test_interval_system_splits():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 6)
        A = gen.interval_from_upper(rng, gen.semidefinite_rmax(rng, n), strong=rng.random() < 0.5)
        I = A.semiring
        Bl = gen.random_column(rng, RMAX, n)
        B = join(Bl, Matrix.from_rows(RMAX, [[x if x == NEG_INF else x + 1] for (x,) in Bl.entries]),
                 strong=I.strong)
        assert rho(A) <= 0
        rep = solve(A, B)
        assert rep.precheck is Precheck.RHO_OK
        assert rep.iterations_used <= n
        (LA, UA), (LB, UB) = split(A), split(B)
        assert split(rep.solution) == (solve(LA, LB).solution, solve(UA, UB).solution)


def test_interval_example_with_negative_rho():
    I = IntervalSemiring(RMAX)
    L = Matrix.from_rows(RMAX, [[-2, -1], [-1, -3]])
    U = Matrix.from_rows(RMAX, [[Q(-1, 2), -1], [-1, -1]])
    A = join(L, U)
    assert rho(A) == Q(-1, 2)
    B = join(Matrix.from_rows(RMAX, [[0], [NEG_INF]]), Matrix.from_rows(RMAX, [[1], [0]]))
    rep = solve(A, B)
    assert rep.iterations_used <= 2
    assert rep.solution.semiring == I
