import math

import numpy as np
import pytest

from exptree.analysis import (
    core_entropy,
    expansivity_report,
    same_map,
    spectral_radius_exact,
    spectral_radius_power,
    transition_matrix,
    tree_equivalent,
)
from exptree.errors import NotExpansiveError, PeriodicBaseError
from exptree.partition import Plain, PreSingular
from exptree.sequences import canonicalize
from exptree.treebuild import build_tree

from oracles import numpy_spectral_radius


def addr(pre, per):
    return canonicalize(pre, per)


def plain(pre, per):
    return Plain(canonicalize(pre, per))


class TestTreeEquivalent:
    def test_reflexive(self, P_a, tree_a):
        assert tree_equivalent(tree_a, build_tree(P_a))

    def test_different_trees(self, tree_a, tree_b):
        assert not tree_equivalent(tree_a, tree_b)

    def test_reversed_cyclic_order_detected(self, tree_b):
        ids = tree_b.vertex_by_itinerary()
        w = ids[plain([], [0])]
        flipped = list(tree_b.cyclic_order)
        flipped[w] = tuple(reversed(flipped[w]))
        other = tree_b.__class__(
            partition=tree_b.partition,
            vertices=tree_b.vertices,
            edges=tree_b.edges,
            dynamics=tree_b.dynamics,
            singular_point=tree_b.singular_point,
            sectors=tree_b.sectors,
            cyclic_order=tuple(flipped),
        )
        assert not tree_equivalent(tree_b, other)


class TestSameMap:
    def test_examples(self, P_a, P_b):
        assert same_map(P_a.base, P_a.base)
        assert same_map(P_b.base, P_b.base)

    def test_different_itinerary(self, P_a):
        with pytest.raises(PeriodicBaseError):
            same_map(P_a.base, addr([], [1]))
        assert not same_map(P_a.base, addr([0, 2], [1]))

    def test_presingular_second_base(self, P_a):
        # 0,0(1) maps onto the partition boundary: itinerary *nu, not nu.
        assert not same_map(P_a.base, P_a.base.prepend(0))


class TestExpansivity:
    def test_examples(self, tree_a, tree_b):
        ids_a = tree_a.vertex_by_itinerary()
        rep_a = expansivity_report(tree_a)
        pair = tuple(sorted((ids_a[plain([0], [1])], ids_a[plain([], [1])])))
        assert rep_a.depths[pair] == 0
        ids_b = tree_b.vertex_by_itinerary()
        rep_b = expansivity_report(tree_b)
        pair = tuple(sorted((ids_b[plain([], [0])], ids_b[plain([0], [0, 1])])))
        assert rep_b.depths[pair] == 2
        assert all(i < j for i, j in rep_b.depths)

    def test_not_expansive_detected(self, tree_a):
        clone = tree_a.__class__(
            partition=tree_a.partition,
            vertices=(
                tree_a.vertices[0],
                tree_a.vertices[1],
                tree_a.vertices[1].__class__(
                    2, tree_a.vertices[1].itinerary, tree_a.vertices[1].kind
                ),
            ),
            edges=tree_a.edges,
            dynamics=tree_a.dynamics,
            singular_point=tree_a.singular_point,
            sectors=tree_a.sectors,
            cyclic_order=tree_a.cyclic_order,
        )
        with pytest.raises(NotExpansiveError):
            expansivity_report(clone)


class TestTransitionMatrix:
    def test_golden_a(self, tree_a):
        tm = transition_matrix(tree_a)
        assert tm.matrix.tolist() == [[1, 1], [1, 1]]

    def test_golden_b_row_map(self, tree_b):
        ids = tree_b.vertex_by_itinerary()
        v_t = ids[PreSingular(())]
        w = ids[plain([], [0])]
        nu = ids[plain([0], [0, 1])]
        s1 = ids[plain([], [0, 1])]
        s2 = ids[plain([], [1, 0])]
        e = lambda a, b: tuple(sorted((a, b)))
        rows = transition_matrix(tree_b).row_map()
        assert rows[e(nu, w)] == {e(s1, w)}
        assert rows[e(s1, w)] == {e(v_t, w), e(s2, v_t)}
        assert rows[e(v_t, w)] == {e(nu, w)}
        assert rows[e(s2, v_t)] == {e(nu, w), e(s1, w)}

    def test_row_sums_are_path_lengths(self, acceptance_corpus):
        # Path lengths recomputed through an independent graph library.
        import networkx as nx

        for tree in acceptance_corpus.trees[:15]:
            G = nx.Graph(tree.edges)
            tm = transition_matrix(tree)
            for i, (u, v) in enumerate(tm.edges):
                want = nx.shortest_path_length(
                    G, tree.dynamics[u], tree.dynamics[v]
                )
                assert tm.matrix[i].sum() == want

    def test_fixed_edge_row(self, acceptance_corpus):
        # An edge whose endpoints are both fixed covers exactly itself.
        for tree in acceptance_corpus.trees:
            tm = transition_matrix(tree)
            for i, (u, v) in enumerate(tm.edges):
                if tree.dynamics[u] == u and tree.dynamics[v] == v:
                    row = tm.matrix[i]
                    assert row.sum() == 1 and row[i] == 1


class TestEntropy:
    def test_golden_a(self, tree_a):
        assert abs(core_entropy(tree_a) - math.log(2)) < 1e-9

    def test_golden_b_against_cubic_root(self, tree_b):
        # Spectral radius is the real root of x^3 = x + 2.
        import sympy

        x = sympy.Symbol("x")
        root = max(sympy.real_roots(x**3 - x - 2))
        want = float(sympy.log(root).evalf(30))
        assert abs(core_entropy(tree_b) - want) < 1e-9
        assert abs(want - 0.4196) < 1e-3

    def test_permutation_matrix_entropy_zero(self):
        A = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
        assert spectral_radius_power(A) == pytest.approx(1.0, abs=1e-12)

    def test_power_handles_oscillation(self):
        A = np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]])
        assert spectral_radius_power(A) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_three_routes_agree(self, acceptance_corpus):
        for tree in acceptance_corpus.trees[:25]:
            A = transition_matrix(tree).matrix
            rho_p = spectral_radius_power(A)
            rho_e = spectral_radius_exact(A)
            rho_n = numpy_spectral_radius(A)
            assert abs(rho_p - rho_e) < 1e-9
            assert abs(rho_e - rho_n) < 1e-7
            assert core_entropy(tree) >= 0.0

    def test_bad_tolerance(self, tree_a):
        with pytest.raises(ValueError):
            core_entropy(tree_a, tol=0.0)
