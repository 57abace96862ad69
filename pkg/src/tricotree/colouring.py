"""Canonical tricolouring of a finite tree and the derived statistics.

Every vertex of a tree is green, orange or red according to whether it
belongs to every, some-but-not-all, or no minimum vertex cover.  The
colouring is a property of the unrooted tree, and it obeys a local join
rule: a root whose child subtrees contain zero red roots is red, exactly
one red child root makes it orange, and two or more make it green.

The rule yields a linear two-pass algorithm.  Pass 1 colours every rooted
subtree bottom-up.  Pass 2 reroots on the fly: for each vertex v it
derives the colour of the "upward" component (the tree hanging at
parent(v) once the edge to v is cut) from the parent's other components,
then applies the join rule at v over all incident components.  Only the
number of red components matters, so the upward colour needs one counter
per vertex and the whole pass is O(n) even at condensation vertices of
near-linear degree.

The counts determine the classical statistics: the independence number is
n_red + n_orange / 2, the matching number (= minimum cover size) is
n_green + n_orange / 2, and the adjacency nullity is n_red - n_green.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .errors import ParityViolation
from .tree import PlaneTree

__all__ = ["Colour", "Tricolouring", "colour_subtrees", "tricolour", "derived_stats"]


class Colour(IntEnum):
    """Serialisation order is fixed: GREEN < ORANGE < RED."""

    GREEN = 0
    ORANGE = 1
    RED = 2

    @property
    def letter(self) -> str:
        return "GOR"[self]


def _join(red_components: int) -> Colour:
    # join rule: 0 red components -> red, 1 -> orange, >= 2 -> green
    if red_components == 0:
        return Colour.RED
    if red_components == 1:
        return Colour.ORANGE
    return Colour.GREEN


@dataclass(frozen=True)
class Tricolouring:
    """Per-vertex colours (DFS order) and the three colour counts."""

    colours: tuple[Colour, ...]
    n_g: int
    n_o: int
    n_r: int

    @property
    def n(self) -> int:
        return len(self.colours)

    @property
    def independence_number(self) -> int:
        return derived_stats(self)[0]

    @property
    def matching_number(self) -> int:
        return derived_stats(self)[1]

    @property
    def nullity(self) -> int:
        return derived_stats(self)[2]

    def colour_string(self) -> str:
        return "".join(c.letter for c in self.colours)


def colour_subtrees(t: PlaneTree) -> list[Colour]:
    """Colour of the rooted subtree hanging at each vertex (bottom-up pass).

    A leaf is red; an internal vertex is coloured by the join rule over
    its children's subtree colours.  The root's entry is its colour in
    the tricolouring of t.
    """
    colours, _ = _downward_pass(t)
    return colours


def _downward_pass(t: PlaneTree) -> tuple[list[Colour], list[int]]:
    """Subtree colours plus the per-vertex count of red child subtrees.

    Vertices are in DFS preorder, so children always carry larger indices
    and a single reverse sweep suffices.
    """
    n = t.n
    parent = t.parent
    down: list[Colour] = [Colour.RED] * n
    red_children = [0] * n
    for v in range(n - 1, -1, -1):
        colour = _join(red_children[v])
        down[v] = colour
        if v > 0 and colour is Colour.RED:
            red_children[parent[v]] += 1
    return down, red_children


def tricolour(t: PlaneTree) -> Tricolouring:
    """Tricolour all vertices of t in O(n) time.

    Pass 1 computes subtree colours.  Pass 2 walks top-down computing, for
    each non-root v, the colour of the component containing parent(v)
    after deleting the edge {v, parent(v)}: apply the join rule at the
    parent over its other red components (red child subtrees minus v's
    contribution, plus the parent's own upward component if red).  The
    final colour of v joins red counts over all components incident to v.
    """
    n = t.n
    parent = t.parent
    down, red_children = _downward_pass(t)

    up_is_red = [False] * n  # vertex 0 has no upward component
    counts = [0, 0, 0]
    colours: list[Colour] = [Colour.RED] * n
    for v in range(n):
        if v > 0:
            p = parent[v]
            reds_at_parent = red_children[p] - (down[v] is Colour.RED)
            if p > 0 and up_is_red[p]:
                reds_at_parent += 1
            up_is_red[v] = _join(reds_at_parent) is Colour.RED
        final = _join(red_children[v] + (v > 0 and up_is_red[v]))
        colours[v] = final
        counts[final] += 1

    return Tricolouring(
        colours=tuple(colours), n_g=counts[0], n_o=counts[1], n_r=counts[2]
    )


def derived_stats(tc: Tricolouring) -> tuple[int, int, int]:
    """(independence number, matching number, nullity) from the colour counts.

    All three are integers because the orange count of a valid colouring
    is even; an odd count signals a bug in the colouring itself.
    """
    if tc.n_o % 2 != 0:
        raise ParityViolation(f"odd orange count {tc.n_o}")
    half = tc.n_o // 2
    return (tc.n_r + half, tc.n_g + half, tc.n_r - tc.n_g)
