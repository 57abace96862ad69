"""Shared test utilities: rerooting, tree joining, and random tree sources."""

from __future__ import annotations

import random

from tricotree import (
    Geometric,
    PlaneTree,
    Poisson,
    SamplerConfig,
    neighbors,
    sample_conditioned,
    tree_from_outdegrees,
)

BIG_BUDGET = 10**6  # retry budget for tests drawing many trees


def reroot(t: PlaneTree, new_root: int) -> tuple[PlaneTree, list[int]]:
    """Same unrooted tree rooted at new_root, plus the old->new index map.

    Children of each vertex keep the deterministic neighbour order of the
    original tree, minus the new DFS parent.
    """
    parent_of = {new_root: -1}
    position = [-1] * t.n
    outdeg_new = []
    stack = [new_root]
    while stack:
        v = stack.pop()
        position[v] = len(outdeg_new)
        kids = [u for u in neighbors(t, v) if u != parent_of[v]]
        outdeg_new.append(len(kids))
        for u in kids:
            parent_of[u] = v
        stack.extend(reversed(kids))
    return tree_from_outdegrees(outdeg_new), position


def join_trees(
    t1: PlaneTree, v1: int, t2: PlaneTree, v2: int
) -> tuple[PlaneTree, list[int], list[int]]:
    """Tree obtained by drawing an edge between v1 of t1 and v2 of t2.

    Rooted at t1's root; the t2 side hangs below v1 as its new last child,
    rerooted at v2.  Returns the joined tree and both index maps.
    """
    t2r, pos2 = reroot(t2, v2)
    insert_at = v1 + t1.subtree_size[v1]
    outdeg = list(t1.outdeg)
    outdeg[v1] += 1
    outdeg[insert_at:insert_at] = list(t2r.outdeg)
    joined = tree_from_outdegrees(outdeg)
    map1 = [i if i < insert_at else i + t2.n for i in range(t1.n)]
    map2 = [insert_at + pos2[j] for j in range(t2.n)]
    return joined, map1, map2


def uniform_tree(n: int, seed: int) -> PlaneTree:
    """Uniform random plane tree with n vertices (geometric weights)."""
    cfg = SamplerConfig(n=n, seed=seed, max_rejection_tries=BIG_BUDGET)
    return sample_conditioned(Geometric(0.5), cfg)


def poisson_tree(n: int, seed: int) -> PlaneTree:
    cfg = SamplerConfig(n=n, seed=seed, max_rejection_tries=BIG_BUDGET)
    return sample_conditioned(Poisson(1.0), cfg)


def random_step_sequence(rng: random.Random, n: int) -> list[int]:
    """Random degree-minus-one steps summing to -1 (not an excursion in general)."""
    while True:
        degs = [rng.choice([0, 0, 0, 1, 1, 2, 3]) for _ in range(n)]
        total = sum(degs)
        if total >= n - 1:
            # trim surplus from positive entries
            surplus = total - (n - 1)
            for i in range(n):
                if surplus == 0:
                    break
                take = min(surplus, degs[i])
                degs[i] -= take
                surplus -= take
            if sum(degs) == n - 1:
                return [d - 1 for d in degs]
