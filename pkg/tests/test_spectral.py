import itertools
import random
from fractions import Fraction as Q

import networkx as nx
import pytest

from maxplus import (
    NEG_INF,
    BoolSemiring,
    Interval,
    IntervalSemiring,
    Matrix,
    MaxMin,
    RMax,
    RMaxComplete,
    RMin,
    block_form,
    eigen_interval,
    eigenvalue,
    eigenvector,
    is_irreducible,
    is_semidefinite,
    join,
    karp_cycle_mean,
    mat_mul,
    rho,
    split,
)
from maxplus.errors import MissingCapability, NotEigenvalue, OrderViolation, Reducible
from maxplus.matrix import scale
from maxplus.spectral import (
    critical_columns,
    cycle_invariant_eigenvalue,
    elementary_cycles,
    normalize,
    strongly_connected_components,
)

import gen

RMAX = RMax()
RUNNING = Matrix.from_rows(RMAX, [[0, 2], [1, 0]])


def circulant(weights):
    n = len(weights)
    rows = [[NEG_INF] * n for _ in range(n)]
    for i, w in enumerate(weights):
        rows[i][(i + 1) % n] = w
    return Matrix.from_rows(RMAX, rows)


class TestIrreducibility:
    def test_examples(self):
        assert is_irreducible(Matrix.from_rows(RMAX, [[NEG_INF, 1], [2, NEG_INF]]))
        assert not is_irreducible(Matrix.from_rows(RMAX, [[0, 1], [NEG_INF, 0]]))
        assert is_irreducible(Matrix.from_rows(RMAX, [[NEG_INF]]))

    def test_scc_against_networkx(self):
        rng = random.Random(0)
        for _ in range(50):
            n = rng.randint(1, 9)
            succ = [[j for j in range(n) if rng.random() < 0.2] for _ in range(n)]
            G = nx.DiGraph()
            G.add_nodes_from(range(n))
            G.add_edges_from((i, j) for i in range(n) for j in succ[i])
            ours = {frozenset(c) for c in strongly_connected_components(succ)}
            assert ours == {frozenset(c) for c in nx.strongly_connected_components(G)}


class TestBlockForm:
    def test_irreducible_is_one_block(self):
        bf = block_form(RUNNING)
        assert len(bf.blocks) == 1

    def test_triangular_two_by_two(self):
        A = Matrix.from_rows(RMAX, [[1, 5], [NEG_INF, 2]])
        bf = block_form(A)
        assert bf.blocks == ((0,), (1,))
        assert bf.reconstruct() == A

    def test_random_dags_of_components(self):
        rng = random.Random(3)
        for _ in range(40):
            sizes = [2, 2, 2]
            nodes = list(range(6))
            rng.shuffle(nodes)
            groups = [nodes[0:2], nodes[2:4], nodes[4:6]]
            rows = [[NEG_INF] * 6 for _ in range(6)]
            for g in groups:
                rows[g[0]][g[1]] = gen.quarter(rng, -3, 3)
                rows[g[1]][g[0]] = gen.quarter(rng, -3, 3)
            # forward arcs between groups only, so the condensation is a DAG
            for a, b in itertools.combinations(range(3), 2):
                if rng.random() < 0.7:
                    rows[rng.choice(groups[a])][rng.choice(groups[b])] = gen.quarter(rng, -3, 3)
            A = Matrix.from_rows(RMAX, rows)
            bf = block_form(A)
            assert sorted(map(len, bf.blocks)) == sizes
            assert bf.reconstruct() == A
            P = bf.permuted()
            pos = {v: k for k, blk in enumerate(bf.blocks) for v in blk}
            order = bf.permutation
            for i, j in itertools.product(range(6), repeat=2):
                if P[i, j] != NEG_INF:
                    assert pos[order[i]] <= pos[order[j]], "block form is not upper triangular"


class TestEigenvalue:
    def test_running_example(self):
        for method in ("auto", "karp", "cycles", "invariant"):
            assert eigenvalue(RUNNING, method=method) == Q(3, 2)

    def test_one_by_one(self):
        assert eigenvalue(Matrix.from_rows(RMAX, [[Q(7)]])) == 7

    def test_circulant(self):
        assert eigenvalue(circulant([Q(1), Q(2), Q(3)])) == 2

    def test_rmin_minimum_cycle_mean(self):
        A = Matrix.from_rows(RMin(), [[4, 1], [2, 5]])
        assert eigenvalue(A) == Q(3, 2)
        assert karp_cycle_mean(Matrix.from_rows(RMAX, [[4, 1], [2, 5]]), maximize=False) == Q(3, 2)

    def test_reducible(self):
        with pytest.raises(Reducible):
            eigenvalue(Matrix.from_rows(RMAX, [[0, 1], [NEG_INF, 0]]))

    @pytest.mark.parametrize("s", [MaxMin(), RMaxComplete()], ids=lambda s: s.name)
    def test_missing_capabilities(self, s):
        A = Matrix.from_rows(s, [[0, 1], [1, 0]])
        with pytest.raises(MissingCapability):
            eigenvalue(A)

    def test_bool(self):
        B = BoolSemiring()
        A = Matrix.from_rows(B, [[False, True], [True, False]])
        assert eigenvalue(A) is True
        V = eigenvector(A, True)
        assert mat_mul(A, V) == V

    def test_methods_agree_with_brute_force(self):
        rng = random.Random(12)
        for _ in range(60):
            n = rng.randint(1, 4)
            A = gen.irreducible_rmax(rng, n)
            expected = gen.max_cycle_mean(A)
            assert eigenvalue(A, "karp") == expected
            assert eigenvalue(A, "cycles") == expected
            assert cycle_invariant_eigenvalue(A) == expected

    def test_elementary_cycles_match_networkx(self):
        rng = random.Random(13)
        for _ in range(20):
            A = gen.irreducible_rmax(rng, rng.randint(1, 5))
            ours = {_canonical(c) for c in elementary_cycles(A)}
            theirs = {_canonical(c) for c in nx.simple_cycles(gen.to_nx(A))}
            assert ours == theirs


def _canonical(cycle):
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


class TestEigenvector:
    def test_running_example(self):
        V = eigenvector(RUNNING, Q(3, 2))
        assert normalize(V) == Matrix.from_rows(RMAX, [[0], [Q(-1, 2)]])

    def test_one_by_one(self):
        assert eigenvector(Matrix.from_rows(RMAX, [[Q(5)]]), Q(5)) == Matrix.from_rows(RMAX, [[0]])

    def test_circulant(self):
        A = circulant([Q(1), Q(2), Q(3)])
        V = eigenvector(A, Q(2))
        assert mat_mul(A, V) == scale(Q(2), V)

    def test_wrong_value(self):
        with pytest.raises(NotEigenvalue):
            eigenvector(RUNNING, Q(1))

    def test_random(self):
        rng = random.Random(14)
        for _ in range(50):
            A = gen.irreducible_rmax(rng, rng.randint(1, 5))
            lam = eigenvalue(A)
            V = eigenvector(A, lam)
            assert mat_mul(A, V) == scale(lam, V)
            assert critical_columns(A, lam)


class TestIntervalEigen:
    I = IntervalSemiring(RMAX, strong=True)

    def test_example(self):
        A = Matrix.from_rows(self.I, [[Interval(0, 0), Interval(1, 2)], [Interval(0, 1), Interval(0, 0)]])
        pair = eigen_interval(A)
        assert pair.value == Interval(Q(1, 2), Q(3, 2))
        assert mat_mul(A, pair.vector) == scale(pair.value, pair.vector)

    def test_degenerate(self):
        A = join(RUNNING, RUNNING, strong=True)
        pair = eigen_interval(A)
        assert pair.value == Interval(Q(3, 2), Q(3, 2))
        L, U = split(pair.vector)
        assert L == U == normalize(eigenvector(RUNNING, Q(3, 2)))

    def test_one_by_one(self):
        A = Matrix.from_rows(self.I, [[Interval(Q(1), Q(4))]])
        assert eigen_interval(A).value == Interval(1, 4)

    def test_unordered_normalisations_are_reported(self):
        # lower eigenpair (-5/8, [-3/8, 0]), upper eigenpair (7/8, [0, -1/8])
        L = Matrix.from_rows(RMAX, [[Q(-3, 2), -1], [Q(-1, 4), -5]])
        U = Matrix.from_rows(RMAX, [[Q(-1, 2), 1], [Q(3, 4), Q(-9, 4)]])
        assert normalize(eigenvector(L, eigenvalue(L))) == Matrix.from_rows(RMAX, [[Q(-3, 8)], [0]])
        assert normalize(eigenvector(U, eigenvalue(U))) == Matrix.from_rows(RMAX, [[0], [Q(-1, 8)]])
        with pytest.raises(OrderViolation):
            eigen_interval(join(L, U, strong=True))


class TestRho:
    def test_examples(self):
        I = IntervalSemiring(RMAX)
        A = join(Matrix.from_rows(RMAX, [[-1, 0], [0, -1]]), RUNNING)
        assert rho(A) == Q(3, 2)
        assert rho(Matrix.zeros(I, 2, 2)) == NEG_INF

    def test_rho_below_unity_iff_upper_semidefinite(self):
        rng = random.Random(15)
        for _ in range(60):
            n = rng.randint(1, 5)
            U = Matrix.from_rows(RMAX, [[gen.quarter(rng, -3, 1) if rng.random() < 0.4 else NEG_INF
                                         for _ in range(n)] for _ in range(n)])
            A = gen.interval_from_upper(rng, U, strong=False)
            assert (rho(A) <= 0) == is_semidefinite(U)
