"""Transportation costs and their subadditive envelopes.

A transportation cost is a subadditive, nondecreasing, lower
semi-continuous function h on [0, inf) with h(0) = 0; it prices carrying
multiplicity m per unit length. Built-in families: power m^alpha,
affine a*m + b (with a jump b at 0+), capped min(base, cap), and
tabulated samples on a uniform grid with linear interpolation.

The envelope operators build the largest grid-subadditive function below a
sampled objective. Two derived constructions are provided: the superlinear
envelope of h constrained to multiplicities <= M, and the linear-capped
envelope of min(h, N*m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class CostError(ValueError):
    """Raised for invalid cost parameters or evaluations."""


@dataclass(frozen=True)
class TransportCost:
    """Value oracle for a transportation cost plus declared structural facts.

    h_prime_0 is the right derivative at zero (math.inf when the cost jumps
    at 0+ or has unbounded slope); for tabulated costs it is the first grid
    slope and flagged as grid-estimated. `concave` declares concavity on
    (0, inf), which the exact solver uses as its certification class.
    """

    family: str
    params: tuple = ()
    h_prime_0: float = math.inf
    h_prime_0_estimated: bool = False
    concave: bool = True
    admissible: bool | None = None  # user-asserted, never computed

    def __call__(self, m: float) -> float:
        if m < 0:
            raise CostError(f"cost evaluated at negative multiplicity {m}")
        return float(self.eval_array(np.asarray([m], dtype=float))[0])

    def eval_array(self, m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=float)
        if np.any(m < 0):
            raise CostError("cost evaluated at negative multiplicity")
        if self.family == "power":
            (alpha,) = self.params
            return np.power(m, alpha)
        if self.family == "affine":
            a, b = self.params
            out = a * m + b
            out[m == 0] = 0.0
            return out
        if self.family == "capped":
            base, cap = self.params
            return np.minimum(base.eval_array(m), cap)
        if self.family == "tabulated":
            delta, values = self.params
            grid_max = delta * (len(values) - 1)
            if np.any(m > grid_max * (1 + 1e-12) + 1e-300):
                raise CostError(
                    f"tabulated cost evaluated beyond grid maximum {grid_max:g}"
                )
            mm = np.minimum(m, grid_max)
            return np.interp(mm, delta * np.arange(len(values)), values)
        raise CostError(f"unknown cost family {self.family!r}")

    def to_json(self) -> dict:
        if self.family == "power":
            return {"family": "power", "alpha": self.params[0]}
        if self.family == "affine":
            return {"family": "affine", "a": self.params[0], "b": self.params[1]}
        if self.family == "capped":
            base, cap = self.params
            return {"family": "capped", "base": base.to_json(), "cap": cap}
        delta, values = self.params
        return {"family": "tabulated", "delta": delta, "values": list(values)}

    @classmethod
    def from_json(cls, obj: dict) -> "TransportCost":
        fam = obj["family"]
        if fam == "power":
            return power_cost(obj["alpha"])
        if fam == "affine":
            return affine_cost(obj["a"], obj["b"])
        if fam == "capped":
            return capped_cost(cls.from_json(obj["base"]), obj["cap"])
        if fam == "tabulated":
            return tabulated_cost(obj["values"], obj["delta"])
        raise CostError(f"unknown cost family {fam!r}")


def power_cost(alpha: float) -> TransportCost:
    """h(m) = m^alpha with alpha in (0, 1]."""
    if not 0 < alpha <= 1:
        raise CostError("power exponent must lie in (0, 1]")
    return TransportCost(
        "power", (float(alpha),), h_prime_0=1.0 if alpha == 1 else math.inf
    )


def affine_cost(a: float, b: float) -> TransportCost:
    """h(m) = a*m + b for m > 0, h(0) = 0.

    With b > 0 the right derivative at zero is recorded as +inf: the jump
    at 0+ dominates any linear rate.
    """
    if a <= 0 or b < 0:
        raise CostError("affine cost needs a > 0, b >= 0")
    return TransportCost(
        "affine", (float(a), float(b)), h_prime_0=float(a) if b == 0 else math.inf
    )


def capped_cost(base: TransportCost, cap: float) -> TransportCost:
    """h(m) = min(base(m), cap)."""
    if cap <= 0:
        raise CostError("cap must be positive")
    return TransportCost(
        "capped",
        (base, float(cap)),
        h_prime_0=base.h_prime_0,
        h_prime_0_estimated=base.h_prime_0_estimated,
        concave=base.concave,
    )


def identity_cost() -> TransportCost:
    return power_cost(1.0)


def tabulated_cost(
    values, delta: float, validate: bool = True, eps: float = 1e-9
) -> TransportCost:
    """Linear interpolation of samples values[k] = h(k*delta).

    Validates h(0) = 0 and, on the grid, monotonicity and subadditivity
    within eps. Concavity is detected from second differences; the zero
    slope is the first grid slope, flagged as grid-estimated.
    """
    vals = tuple(float(v) for v in values)
    if delta <= 0 or len(vals) < 2:
        raise CostError("tabulated cost needs delta > 0 and at least two samples")
    if validate:
        arr = np.asarray(vals)
        if abs(arr[0]) > eps:
            raise CostError("tabulated cost must have h(0) = 0")
        if np.any(np.diff(arr) < -eps):
            raise CostError("tabulated cost not nondecreasing on grid")
        _check_grid_subadditive(arr, eps)
    arr = np.asarray(vals)
    concave = bool(np.all(np.diff(arr, 2) <= 1e-10 * max(1.0, float(arr.max()))))
    return TransportCost(
        "tabulated",
        (float(delta), vals),
        h_prime_0=vals[1] / delta,
        h_prime_0_estimated=True,
        concave=concave,
    )


def _check_grid_subadditive(vals: np.ndarray, eps: float) -> None:
    n = len(vals)
    for i in range(2, n):
        j = np.arange(1, i // 2 + 1)
        if np.any(vals[i] > vals[j] + vals[i - j] + eps):
            raise CostError(f"tabulated cost not subadditive at grid index {i}")


# ---------------------------------------------------------------------------
# envelopes


def subadditive_lsc_envelope(
    psi_samples, delta: float
) -> TransportCost:
    """Largest grid-subadditive function below psi, as a tabulated cost.

    psi is sampled on the uniform grid {0, delta, 2*delta, ...} and may
    contain +inf. The envelope is the minimum of sum(psi(parts)) over all
    decompositions of each grid point into smaller grid points; a single
    increasing pass over pair splits realizes the fixpoint because every
    multi-part split factors into pairs. A final right-continuity sweep at
    points left infinite stands in for lower semi-continuity on the grid
    (a no-op whenever every point admits a finite decomposition).
    """
    psi = np.asarray(psi_samples, dtype=float)
    if psi.ndim != 1 or len(psi) < 2:
        raise CostError("need a 1-d grid of at least two samples")
    if not psi[0] == 0.0:
        raise CostError("psi(0) must be 0")
    if np.any(np.isnan(psi)) or np.any(psi < 0):
        raise CostError("psi must be nonnegative and not NaN")
    g = psi.copy()
    n = len(g)
    for i in range(2, n):
        k = i // 2
        best = np.min(g[1 : k + 1] + g[i - 1 : i - k - 1 : -1])
        if best < g[i]:
            g[i] = best
    # right-continuity adjustment where psi left no finite value (grid artifact)
    for i in range(n - 2, 0, -1):
        if not np.isfinite(g[i]) and np.isfinite(g[i + 1]):
            g[i] = g[i + 1]
    if not np.all(np.isfinite(g)):
        raise CostError("envelope not finite on grid; objective too restrictive")
    return tabulated_cost(g, delta, validate=False)


@dataclass(frozen=True)
class EnvelopeResult:
    """A superlinear envelope cost with its certified linear lower bound."""

    cost: TransportCost
    alpha: float
    M: float


def la62_alpha(h: TransportCost, M: float, delta: float | None = None) -> float:
    """Certified linear lower bound: the grid infimum of h(m)/m over (M/2, M].

    Subadditivity propagates the bound down by doubling, so h(m) >= alpha*m
    for every grid m in (0, M]; this is checked on the grid and a violation
    (a cost that is not actually subadditive) is rejected.
    """
    if M <= 0:
        raise CostError("M must be positive")
    if delta is None:
        delta = M / 2048
    ms = np.arange(delta, M + delta / 2, delta)
    vals = h.eval_array(ms)
    window = ms > M / 2
    if np.any(vals[window] <= 0):
        raise CostError("cost vanishes on (M/2, M]; no positive linear bound")
    alpha = float(np.min(vals[window] / ms[window]))
    slack = 1e-9 * max(1.0, alpha * M)
    bad = vals < alpha * ms - slack
    if np.any(bad):
        m_bad = float(ms[bad][0])
        raise CostError(
            f"linear bound alpha={alpha:g} fails at m={m_bad:g}; cost not subadditive"
        )
    return alpha


def make_h_M(
    h: TransportCost,
    M: float,
    delta: float | None = None,
    m_max: float | None = None,
) -> EnvelopeResult:
    """Superlinear envelope: the subadditive envelope of h plus the
    indicator forcing multiplicities <= M.

    The result agrees with h on [0, M], dominates h everywhere, grows at
    most linearly with slope 2 h(M)/M beyond M, and is bounded below by
    alpha*m with alpha from la62_alpha.
    """
    if M <= 0:
        raise CostError("M must be positive")
    if m_max is None:
        m_max = 2 * M
    if m_max < 2 * M:
        raise CostError("grid must extend to at least 2*M")
    if delta is None:
        delta = m_max / 4096
    n = int(round(m_max / delta)) + 1
    ms = delta * np.arange(n)
    k_M = int(round(M / delta))
    if abs(k_M * delta - M) > 1e-12 * max(1.0, M) or not 0 < k_M < n:
        raise CostError("M must lie on the envelope grid")
    psi = h.eval_array(ms)
    psi[k_M + 1 :] = math.inf
    cost = subadditive_lsc_envelope(psi, delta)
    alpha = la62_alpha(h, M, delta=delta)
    return EnvelopeResult(cost=cost, alpha=alpha, M=float(M))


def make_h_N(
    h: TransportCost,
    N: float,
    delta: float | None = None,
    m_max: float = 4.0,
) -> TransportCost:
    """Linear-capped envelope: the subadditive envelope of min(h, N*m).

    The result is below h everywhere with right derivative at zero at
    most N, and increases pointwise to h as N grows.
    """
    if N <= 0:
        raise CostError("N must be positive")
    if delta is None:
        delta = m_max / 4096
    n = int(round(m_max / delta)) + 1
    ms = delta * np.arange(n)
    psi = np.minimum(h.eval_array(ms), N * ms)
    return subadditive_lsc_envelope(psi, delta)
