"""Trusted-slow ground truth: exhaustive covers, matching, nullity, enumeration.

Everything here is deliberately independent of the linear-time colouring:
minimum vertex covers come from a popcount-ordered subset scan, matching
from the classical leaf-pruning greedy, nullity from fraction-free integer
elimination, and small plane trees from exhaustive excursion enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator

from .colouring import Colour
from .errors import TooLarge
from .tree import PlaneTree, tree_from_outdegrees

__all__ = [
    "Membership",
    "CoverReport",
    "enumerate_min_covers",
    "max_matching",
    "nullity_exact",
    "enumerate_plane_trees",
]

_COVER_CAP = 24
_NULLITY_CAP = 512
_ENUM_CAP = 12


class Membership(Enum):
    """Vertex status across all minimum vertex covers."""

    IN_ALL = "in_all"
    IN_SOME = "in_some"
    IN_NONE = "in_none"

    @property
    def colour(self) -> Colour:
        if self is Membership.IN_ALL:
            return Colour.GREEN
        if self is Membership.IN_NONE:
            return Colour.RED
        return Colour.ORANGE


@dataclass(frozen=True)
class CoverReport:
    cover_size: int
    membership: tuple[Membership, ...]
    num_min_covers: int

    def colours(self) -> tuple[Colour, ...]:
        return tuple(m.colour for m in self.membership)


def enumerate_min_covers(t: PlaneTree) -> CoverReport:
    """Scan all vertex subsets by increasing size; classify vertex membership.

    The first size admitting a cover is the minimum, so the scan stops
    there after folding every cover of that size into AND/OR masks.
    """
    n = t.n
    if n > _COVER_CAP:
        raise TooLarge(f"subset scan capped at {_COVER_CAP} vertices, got {n}")
    edge_masks = [(1 << v) | (1 << t.parent[v]) for v in range(1, n)]

    for size in range(n + 1):
        found = 0
        mask_and = (1 << n) - 1
        mask_or = 0
        for subset in combinations(range(n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            for em in edge_masks:
                if not mask & em:
                    break
            else:
                found += 1
                mask_and &= mask
                mask_or |= mask
        if found:
            membership = []
            for v in range(n):
                bit = 1 << v
                if mask_and & bit:
                    membership.append(Membership.IN_ALL)
                elif mask_or & bit:
                    membership.append(Membership.IN_SOME)
                else:
                    membership.append(Membership.IN_NONE)
            return CoverReport(
                cover_size=size,
                membership=tuple(membership),
                num_min_covers=found,
            )
    raise AssertionError("the full vertex set always covers")


def max_matching(t: PlaneTree) -> int:
    """Maximum matching size via leaf pruning: match a deepest unmatched
    vertex to its parent and delete both; optimal on trees."""
    matched = [False] * t.n
    size = 0
    for v in range(t.n - 1, 0, -1):
        if not matched[v] and not matched[t.parent[v]]:
            matched[v] = True
            matched[t.parent[v]] = True
            size += 1
    return size


def nullity_exact(t: PlaneTree) -> int:
    """n minus the exact integer rank of the adjacency matrix.

    Fraction-free (Bareiss) elimination keeps every intermediate value an
    integer, so the rank is bit-exact regardless of conditioning.
    """
    n = t.n
    if n > _NULLITY_CAP:
        raise TooLarge(f"exact elimination capped at {_NULLITY_CAP} vertices, got {n}")
    a = [[0] * n for _ in range(n)]
    for v in range(1, n):
        a[v][t.parent[v]] = 1
        a[t.parent[v]][v] = 1

    rank = 0
    prev_pivot = 1
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, n) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        pivot = a[row][col]
        for r in range(row + 1, n):
            factor = a[r][col]
            ar, arow = a[r], a[row]
            for c in range(col, n):
                ar[c] = (ar[c] * pivot - factor * arow[c]) // prev_pivot
        prev_pivot = pivot
        rank += 1
        row += 1
        if row == n:
            break
    return n - rank


def enumerate_plane_trees(n: int) -> Iterator[PlaneTree]:
    """All plane trees with n vertices, exactly once; Catalan(n-1) of them."""
    if not 1 <= n <= _ENUM_CAP:
        raise TooLarge(f"enumeration supports 1 <= n <= {_ENUM_CAP}, got {n}")

    prefix = [0] * n

    def rec(i: int, walk: int) -> Iterator[PlaneTree]:
        # walk = partial sum of (outdeg - 1) over prefix[:i]; stays >= 0
        # strictly before the final vertex and ends at -1
        if i == n - 1:
            if walk == 0:
                prefix[i] = 0
                yield tree_from_outdegrees(prefix)
            return
        for d in range(max(0, 1 - walk), n - i - walk):
            prefix[i] = d
            yield from rec(i + 1, walk + d - 1)

    if n == 1:
        yield tree_from_outdegrees([0])
    else:
        yield from rec(0, 0)
