"""Finite plane trees in canonical depth-first layout.

A plane tree with n vertices is stored as its DFS outdegree sequence:
``outdeg[i]`` is the number of children of the i-th vertex in depth-first
(lexicographic) order.  Vertex identity throughout the package is the
0-based DFS rank; vertex 0 is the root.  The sequence is exactly the
increment list of the tree's Lukasiewicz walk shifted by one: step k of
the walk is ``outdeg[k] - 1``, and a sequence encodes a tree if and only
if the walk's partial sums stay nonnegative before the final index and
hit -1 exactly there.

Trees are immutable after construction and may be shared freely across
threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import NotAnExcursion

__all__ = [
    "PlaneTree",
    "LukasiewiczWalk",
    "tree_from_outdegrees",
    "outdegrees_from_tree",
    "neighbors",
    "walk_from_tree",
    "tree_from_walk",
    "is_excursion",
    "format_outdeg_line",
    "parse_outdeg_lines",
]


@dataclass(frozen=True)
class PlaneTree:
    """Rooted ordered tree: DFS outdegree sequence plus derived parent table.

    ``parent[v]`` is the DFS rank of v's parent; ``parent[0] == -1`` marks
    the root.  Construct through :func:`tree_from_outdegrees`, which
    validates the excursion property; the dataclass itself trusts its
    inputs.
    """

    outdeg: tuple[int, ...]
    parent: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.outdeg)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        """Children of each vertex in DFS order (derived cache)."""
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(1, self.n):
            kids[self.parent[v]].append(v)
        return tuple(tuple(k) for k in kids)

    def is_leaf(self, v: int) -> bool:
        return self.outdeg[v] == 0

    @cached_property
    def subtree_size(self) -> tuple[int, ...]:
        """Number of vertices in the subtree rooted at each vertex."""
        size = [1] * self.n
        for v in range(self.n - 1, 0, -1):
            size[self.parent[v]] += size[v]
        return tuple(size)

    def __repr__(self) -> str:  # keep reprs short for test output
        return f"PlaneTree({list(self.outdeg)})"


@dataclass(frozen=True)
class LukasiewiczWalk:
    """Integer walk with steps >= -1; step k is outdeg of DFS vertex k minus 1."""

    steps: tuple[int, ...]

    def partial_sums(self) -> list[int]:
        sums = []
        s = 0
        for x in self.steps:
            s += x
            sums.append(s)
        return sums

    def is_excursion(self) -> bool:
        return is_excursion(self.steps)


def is_excursion(steps: Sequence[int]) -> bool:
    """Independent scan: sums stay >= 0 strictly before the end, finish at -1."""
    n = len(steps)
    if n == 0:
        return False
    s = 0
    for k, x in enumerate(steps):
        if x < -1:
            return False
        s += x
        if k < n - 1 and s < 0:
            return False
    return s == -1


def tree_from_outdegrees(seq: Sequence[int]) -> PlaneTree:
    """Decode a DFS outdegree sequence into the unique plane tree it encodes.

    Raises :class:`NotAnExcursion` if the sequence is empty, does not sum
    to n - 1, or the walk of (outdeg - 1) steps drops below 0 before the
    final index.
    """
    outdeg = tuple(int(d) for d in seq)
    n = len(outdeg)
    if n == 0:
        raise NotAnExcursion("empty outdegree sequence")
    if any(d < 0 for d in outdeg):
        raise NotAnExcursion("negative outdegree")
    if sum(outdeg) != n - 1:
        raise NotAnExcursion(f"outdegrees sum to {sum(outdeg)}, expected {n - 1}")

    parent = [-1] * n
    # Stack of [vertex, children still unassigned]; emptying early means the
    # walk hit -1 before the last vertex.
    stack: list[list[int]] = []
    if outdeg[0] > 0:
        stack.append([0, outdeg[0]])
    for v in range(1, n):
        if not stack:
            raise NotAnExcursion(f"walk hits -1 at index {v}, before the end")
        top = stack[-1]
        parent[v] = top[0]
        top[1] -= 1
        if top[1] == 0:
            stack.pop()
        if outdeg[v] > 0:
            stack.append([v, outdeg[v]])
    if stack:
        # cannot happen when the sum check passed, kept as a guard
        raise NotAnExcursion("unassigned children remain")
    return PlaneTree(outdeg=outdeg, parent=tuple(parent))


def outdegrees_from_tree(t: PlaneTree) -> list[int]:
    """DFS outdegree sequence of ``t`` (inverse of :func:`tree_from_outdegrees`)."""
    return list(t.outdeg)


def neighbors(t: PlaneTree, v: int) -> list[int]:
    """Parent (if any) followed by children, in deterministic order."""
    if not 0 <= v < t.n:
        raise IndexError(f"vertex {v} out of range for tree with {t.n} vertices")
    out = [] if v == 0 else [t.parent[v]]
    out.extend(t.children[v])
    return out


def walk_from_tree(t: PlaneTree) -> LukasiewiczWalk:
    return LukasiewiczWalk(steps=tuple(d - 1 for d in t.outdeg))


def tree_from_walk(w: LukasiewiczWalk) -> PlaneTree:
    return tree_from_outdegrees([x + 1 for x in w.steps])


# --- the "outdeg-line" text format -----------------------------------------
#
# One tree per line, whitespace-separated decimal outdegrees in DFS order.
# Blank lines and lines starting with '#' are ignored.  Used by every CLI
# subcommand; the encoding is bit-exact.


def format_outdeg_line(t: PlaneTree) -> str:
    return " ".join(str(d) for d in t.outdeg)


def parse_outdeg_lines(lines: Iterable[str]) -> Iterator[PlaneTree]:
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield tree_from_outdegrees([int(tok) for tok in line.split()])
