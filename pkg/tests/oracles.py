"""Independent oracles used to derive expected values for the test suite.

Each oracle deliberately avoids the library code path it checks: interval
sweeps for overlap splitting, exhaustive partition enumeration for
envelopes, exhaustive matchings for transport, and plain LPs for flow
questions.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linprog


def overlap_split_1d(intervals: list[tuple[float, float, float]]):
    """Split collinear weighted intervals at all endpoints and sum weights.

    Input: (lo, hi, mult) with lo < hi on a common axis. Output: sorted
    list of (lo, hi, total_mult) pieces with nonzero total weight.
    """
    cuts = sorted({x for lo, hi, _ in intervals for x in (lo, hi)})
    pieces = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        total = sum(m for lo, hi, m in intervals if lo <= a and b <= hi)
        if total != 0:
            pieces.append((a, b, total))
    return pieces


def envelope_by_enumeration(psi: np.ndarray, max_parts: int = 8) -> np.ndarray:
    """Subadditive envelope on a grid by exhaustive split enumeration.

    For each grid index i, minimize sum(psi[parts]) over all multisets of
    positive indices summing to i with at most max_parts parts. Recursive
    enumeration, no reuse of previously minimized values.
    """
    n = len(psi)

    def best(i: int, parts_left: int, min_part: int) -> float:
        if i == 0:
            return 0.0
        if parts_left == 0:
            return math.inf
        out = math.inf
        for p in range(min_part, i + 1):
            tail = best(i - p, parts_left - 1, p)
            cand = psi[p] + tail
            if cand < out:
                out = cand
        return out

    return np.array([0.0] + [best(i, max_parts, 1) for i in range(1, n)])


def w1_by_matching(pos: list[tuple[tuple, float]], neg: list[tuple[tuple, float]]) -> float:
    """Wasserstein-1 by brute force over unit-expanded assignments.

    Works for small instances whose weights are integer multiples of a
    common quantum; expands each atom into unit tokens and minimizes over
    permutations.
    """
    quanta = [w for _, w in pos] + [w for _, w in neg]
    g = min(quanta)
    for w in quanta:
        k = w / g
        assert abs(k - round(k)) < 1e-9, "weights must share a quantum"
    sources = []
    for p, w in pos:
        sources.extend([p] * int(round(w / g)))
    sinks = []
    for q, w in neg:
        sinks.extend([q] * int(round(w / g)))
    assert len(sources) == len(sinks)
    best = math.inf
    for perm in itertools.permutations(range(len(sinks))):
        cost = sum(
            math.dist(sources[i], sinks[j]) * g for i, j in enumerate(perm)
        )
        best = min(best, cost)
    return best


def flat0_dipole(x: tuple, y: tuple, drop: float = 1.0) -> float:
    """Closed form atomic flat norm of a unit dipole: min(distance, 2*drop)."""
    return min(math.dist(x, y), 2 * drop)


def min_mass_same_boundary_lp(
    arcs: list[tuple[int, int, float, float]], n_nodes: int
) -> float:
    """Minimum sign-consistent mass with the same boundary on a fixed arc set.

    Arcs are (tail, head, length, mult) with mult > 0; the LP reduces each
    arc's flow within [0, mult] while keeping every node's divergence, and
    returns the minimal total |flow|*length.
    """
    m = len(arcs)
    div = np.zeros(n_nodes)
    for t, h, _, mult in arcs:
        div[h] += mult
        div[t] -= mult
    A = np.zeros((n_nodes, m))
    for j, (t, h, _, _) in enumerate(arcs):
        A[h, j] += 1
        A[t, j] -= 1
    c = np.array([ln for _, _, ln, _ in arcs])
    bounds = [(0, mult) for _, _, _, mult in arcs]
    res = linprog(c, A_eq=A, b_eq=div, bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return float(res.fun)


def max_circulation_value_lp(
    arcs: list[tuple[int, int, float, float]], n_nodes: int
) -> float:
    """Largest mass removable as a boundaryless sign-consistent part.

    Maximizes sum(y*length) over circulations 0 <= y <= mult; zero iff the
    positive-multiplicity digraph has no directed cycle.
    """
    m = len(arcs)
    A = np.zeros((n_nodes, m))
    for j, (t, h, _, _) in enumerate(arcs):
        A[h, j] += 1
        A[t, j] -= 1
    c = -np.array([ln for _, _, ln, _ in arcs])
    bounds = [(0, mult) for _, _, _, mult in arcs]
    res = linprog(c, A_eq=A, b_eq=np.zeros(n_nodes), bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return float(-res.fun)
