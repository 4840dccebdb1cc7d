"""Built-in chain sequences with divergent mass/boundary behaviour.

Two families on the square [-1, 1]^2, indexed by n >= 1:

* horizontal_dashes(n): 2n short unit-weight dashes of length 1/n^2 spaced
  1/n apart along the x-axis. Mass 2/n shrinks to zero while the boundary
  mass 4n blows up (for n = 1 the dashes touch at the origin and the two
  middle endpoint atoms cancel, leaving boundary mass 2).
* square_annulus_loops(n): the square loop at radius 1 with weight n minus
  the loop at radius alpha = 1 - 1/n^2 with weight n. Boundaryless for all
  n, masses 8n(1 + alpha) blow up, yet an annulus filling of area
  4(1 - alpha^2) shows the loops cancel in the flat norm.
"""

from __future__ import annotations

from .geometry import PolyChain1


def horizontal_dashes(n: int) -> PolyChain1:
    """2n unit-weight dashes [(k/n, 0), (k/n + 1/n^2, 0)] for k = -n..n-1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    items = []
    for k in range(-n, n):
        x0 = k / n
        x1 = k / n + 1 / n**2
        items.append(((x0, 0.0), (x1, 0.0), 1.0))
    return PolyChain1.from_pairs(2, items)


def square_loop(half_side: float, weight: float) -> PolyChain1:
    """Counterclockwise square loop through (+-half_side, +-half_side)."""
    s = half_side
    corners = [(s, s), (-s, s), (-s, -s), (s, -s)]
    items = [
        (corners[i], corners[(i + 1) % 4], weight) for i in range(4)
    ]
    return PolyChain1.from_pairs(2, items)


def square_annulus_loops(n: int) -> PolyChain1:
    """Outer unit square loop with weight n minus the inner loop at 1 - 1/n^2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha = 1 - 1 / n**2
    chain = square_loop(1.0, float(n))
    # inner loop degenerates to a point when alpha = 0 (n = 1)
    if alpha > 0:
        chain = chain + square_loop(alpha, -float(n))
    return chain


def annulus_alpha(n: int) -> float:
    return 1 - 1 / n**2


def annulus_filling_bound(n: int) -> float:
    """Mass of the flat annulus filling between the two loops: 4n(1 - alpha^2)."""
    a = annulus_alpha(n)
    return 4 * n * (1 - a * a)
