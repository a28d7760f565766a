"""Oracle validation against an independent pruning-free enumerator."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brutes import all_capacity_maps, connected_graphs_upto, dumb_sigma
from maxec import (
    Graph,
    OracleLimitError,
    ValidityProfile,
    is_two_factor,
    sigma_exact,
    sigma_threshold,
    verify_coloring,
)

# expected values computed by the naive enumerator and checked by hand
# where feasible (cycles reach n, paths reach m, stars cap at 2)
FROZEN = {
    "single_edge": (2, [(0, 1)], 1),
    "path3": (3, [(0, 1), (1, 2)], 2),
    "path4": (4, [(0, 1), (1, 2), (2, 3)], 3),
    "path5": (5, [(0, 1), (1, 2), (2, 3), (3, 4)], 4),
    "triangle": (3, [(0, 1), (1, 2), (0, 2)], 3),
    "c4": (4, [(0, 1), (1, 2), (2, 3), (0, 3)], 4),
    "c5": (5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], 5),
    "star3": (4, [(0, 1), (0, 2), (0, 3)], 2),
    "star4": (5, [(0, 1), (0, 2), (0, 3), (0, 4)], 2),
    "k4": (4, list(combinations(range(4), 2)), 3),
    "k5": (5, list(combinations(range(5), 2)), 3),
    "k23": (5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], 4),
    "paw": (4, [(0, 1), (1, 2), (0, 2), (2, 3)], 3),
    "bull": (5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)], 3),
    "butterfly": (5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], 4),
    "two_triangles": (6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)], 6),
    "cube": (
        8,
        [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7),
         (0, 4), (1, 5), (2, 6), (3, 7)],
        6,
    ),
    "k33": (6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5),
                (2, 3), (2, 4), (2, 5)], 4),
    "empty": (3, [], 0),
    "path_and_edge": (5, [(0, 1), (1, 2), (3, 4)], 3),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_values(name):
    n, edges, expected = FROZEN[name]
    g = Graph(n, edges)
    res = sigma_exact(g, edge_limit=None)
    assert res.sigma == expected
    check = verify_coloring(g, res.witness)
    assert check.valid
    assert check.colors_used == expected


def test_matches_naive_enumeration_exhaustively():
    for g in connected_graphs_upto(5):
        res = sigma_exact(g, edge_limit=None)
        assert res.sigma == dumb_sigma(g), g.edges
        assert verify_coloring(g, res.witness).valid
    for g in connected_graphs_upto(6):
        if g.n == 6 and g.m <= 9:
            res = sigma_exact(g, edge_limit=None)
            assert res.sigma == dumb_sigma(g), g.edges
            assert verify_coloring(g, res.witness).valid


def test_threshold_agrees_with_exact():
    for g in connected_graphs_upto(5):
        s = sigma_exact(g, edge_limit=None).sigma
        for k in range(-1, g.n + 2):
            assert sigma_threshold(g, k, edge_limit=None) == (s >= k), (g.edges, k)


def test_threshold_on_disconnected_graphs():
    g = Graph(9, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7)])
    s = sigma_exact(g, edge_limit=None).sigma
    assert s == 7
    for k in range(0, 10):
        assert sigma_threshold(g, k, edge_limit=None) == (s >= k)


def test_capacity_profiles_exhaustively():
    for g in connected_graphs_upto(4):
        for caps in all_capacity_maps(g.n):
            profile = ValidityProfile(f=caps)
            res = sigma_exact(g, profile=profile, edge_limit=None)
            assert res.sigma == dumb_sigma(g, list(caps)), (g.edges, caps)
            check = verify_coloring(g, res.witness, profile)
            assert check.valid
            assert check.colors_used == res.sigma


def test_all_capacity_one_forces_single_color_per_component():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    profile = ValidityProfile(f=(1,) * 6)
    assert sigma_exact(g, profile=profile, edge_limit=None).sigma == 2


def test_two_factors_reach_vertex_count():
    cycles = Graph(7, [(0, 1), (1, 2), (0, 2),
                       (3, 4), (4, 5), (5, 6), (3, 6)])
    assert is_two_factor(cycles)
    assert sigma_exact(cycles, edge_limit=None).sigma == 7


def test_component_additivity():
    left = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    right = Graph(4, list(combinations(range(4), 2)))
    both = Graph(8, list(left.edges) + [(u + 4, v + 4) for u, v in right.edges])
    s = sigma_exact(both, edge_limit=None).sigma
    assert s == sigma_exact(left).sigma + sigma_exact(right).sigma


def test_edge_limit_refusal():
    g = Graph(14, [(i, i + 1) for i in range(13)])
    with pytest.raises(OracleLimitError):
        sigma_exact(g)
    with pytest.raises(OracleLimitError):
        sigma_threshold(g, 3)
    with pytest.raises(OracleLimitError):
        sigma_exact(g, edge_limit=5)
    assert sigma_exact(g, edge_limit=None).sigma == 13
    assert sigma_exact(g, edge_limit=13).sigma == 13


def test_trivial_thresholds():
    g = Graph(2, [(0, 1)])
    assert sigma_threshold(g, 0)
    assert sigma_threshold(g, -3)
    assert sigma_threshold(Graph(1, []), 0)
    assert not sigma_threshold(Graph(1, []), 1)
    assert not sigma_threshold(g, 2)


@st.composite
def random_graphs(draw, max_n=7, max_m=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    if not pairs:
        return Graph(n, [])
    edges = draw(
        st.sets(st.sampled_from(pairs), max_size=min(max_m, len(pairs)))
    )
    return Graph(n, sorted(edges))


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_oracle_matches_naive_on_random_graphs(g):
    res = sigma_exact(g, edge_limit=None)
    assert res.sigma == dumb_sigma(g)
    assert verify_coloring(g, res.witness).valid
    assert sigma_threshold(g, res.sigma, edge_limit=None)
    assert not sigma_threshold(g, res.sigma + 1, edge_limit=None)


@settings(max_examples=40, deadline=None)
@given(random_graphs(max_n=5, max_m=7), st.data())
def test_oracle_matches_naive_under_capacities(g, data):
    caps = tuple(
        data.draw(st.integers(min_value=1, max_value=2)) for _ in range(g.n)
    )
    profile = ValidityProfile(f=caps)
    res = sigma_exact(g, profile=profile, edge_limit=None)
    assert res.sigma == dumb_sigma(g, list(caps))
    assert verify_coloring(g, res.witness, profile).valid


def test_pendant_folding_matches_plain_search():
    for n in range(1, 5):
        pairs = list(combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            g = Graph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])
            for caps in all_capacity_maps(n):
                profile = ValidityProfile(f=caps)
                plain = sigma_exact(g, profile=profile, edge_limit=None)
                folded = sigma_exact(
                    g, profile=profile, edge_limit=None, fold_pendants=True
                )
                assert folded.sigma == plain.sigma, (g.edges, caps)
                check = verify_coloring(g, folded.witness, profile)
                assert check.valid and check.colors_used == folded.sigma
                for k in (plain.sigma, plain.sigma + 1):
                    assert sigma_threshold(
                        g, k, profile, edge_limit=None, fold_pendants=True
                    ) == (plain.sigma >= k)


def test_pendant_folding_collapses_trees():
    # trees always keep a degree-1 vertex, so folding alone finishes them
    star = Graph(5, [(0, i) for i in range(1, 5)])
    assert sigma_exact(star, fold_pendants=True).sigma == 2
    path6 = Graph(6, [(i, i + 1) for i in range(5)])
    assert sigma_exact(path6, fold_pendants=True).sigma == 5
    pinned_path3 = Graph(3, [(0, 1), (1, 2)])
    profile = ValidityProfile(f=(1, 1, 1))
    assert sigma_exact(pinned_path3, profile, fold_pendants=True).sigma == 1


def test_pendant_folding_scales_to_a_big_tree():
    tree = Graph(60, [((i * 7 + 3) % i, i) for i in range(1, 60)])
    res = sigma_exact(tree, edge_limit=None, fold_pendants=True)
    check = verify_coloring(tree, res.witness)
    assert check.valid and check.colors_used == res.sigma
    assert sigma_threshold(tree, res.sigma, edge_limit=None, fold_pendants=True)
    assert not sigma_threshold(
        tree, res.sigma + 1, edge_limit=None, fold_pendants=True
    )
