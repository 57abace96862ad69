"""Brute-force ground truth: covers, matching, nullity, enumeration."""

import math

import pytest

from tricotree import (
    Membership,
    TooLarge,
    enumerate_min_covers,
    enumerate_plane_trees,
    max_matching,
    nullity_exact,
    tree_from_outdegrees,
)

IN_ALL, IN_SOME, IN_NONE = Membership.IN_ALL, Membership.IN_SOME, Membership.IN_NONE


def _catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def test_cover_single_edge():
    report = enumerate_min_covers(tree_from_outdegrees([1, 0]))
    assert report.cover_size == 1
    assert report.membership == (IN_SOME, IN_SOME)
    assert report.num_min_covers == 2


def test_cover_three_path():
    report = enumerate_min_covers(tree_from_outdegrees([1, 1, 0]))
    assert report.cover_size == 1
    assert report.membership == (IN_NONE, IN_ALL, IN_NONE)
    assert report.num_min_covers == 1


def test_cover_single_vertex():
    report = enumerate_min_covers(tree_from_outdegrees([0]))
    assert report.cover_size == 0
    assert report.membership == (IN_NONE,)
    assert report.num_min_covers == 1


def test_cover_too_large():
    path = [1] * 24 + [0]
    with pytest.raises(TooLarge):
        enumerate_min_covers(tree_from_outdegrees(path))


def test_matching_examples():
    assert max_matching(tree_from_outdegrees([1, 0])) == 1
    assert max_matching(tree_from_outdegrees([1, 1, 1, 0])) == 2
    assert max_matching(tree_from_outdegrees([3, 0, 0, 0])) == 1
    assert max_matching(tree_from_outdegrees([0])) == 0


def test_nullity_examples():
    assert nullity_exact(tree_from_outdegrees([0])) == 1
    assert nullity_exact(tree_from_outdegrees([1, 0])) == 0
    assert nullity_exact(tree_from_outdegrees([1, 1, 0])) == 1
    assert nullity_exact(tree_from_outdegrees([1, 1, 1, 0])) == 0
    # star: adjacency rank 2 regardless of leaf count
    assert nullity_exact(tree_from_outdegrees([4, 0, 0, 0, 0])) == 3


def test_nullity_too_large():
    path = [1] * 512 + [0]
    with pytest.raises(TooLarge):
        nullity_exact(tree_from_outdegrees(path))


def test_enumeration_counts_match_catalan():
    for n in range(1, 13):
        assert sum(1 for _ in enumerate_plane_trees(n)) == _catalan(n - 1)


def test_enumeration_distinct_and_valid():
    seen = set()
    for t in enumerate_plane_trees(6):
        assert t.n == 6
        assert t.outdeg not in seen
        seen.add(t.outdeg)
    assert len(seen) == _catalan(5)


def test_enumeration_cap():
    with pytest.raises(TooLarge):
        next(enumerate_plane_trees(13))
    with pytest.raises(TooLarge):
        next(enumerate_plane_trees(0))


def test_koenig_and_forest_nullity_identities():
    # trees are bipartite: min cover = max matching; nullity = n - 2 matching
    for n in range(1, 9):
        for t in enumerate_plane_trees(n):
            matching = max_matching(t)
            assert enumerate_min_covers(t).cover_size == matching
            assert nullity_exact(t) == n - 2 * matching
