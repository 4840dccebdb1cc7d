"""Polyhedral 1-chains and 0-chains in R^d.

A 1-chain is a finite list of weighted oriented segments; read as a vector
measure it is the corresponding polyhedral flux, and the two views share one
data type. A 0-chain is a finite signed atomic measure. Canonicalization
reduces any input to a unique representative: near-coincident endpoints
snapped, collinear overlaps split and merged, interior crossings split,
zero weights dropped, segments sorted. All types are immutable value
objects and every operation is a pure function, so results are safe to
share across threads and comparable structurally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, ...]


class GeometryError(ValueError):
    """Raised for malformed or guard-violating geometric input."""


def _sub(p: Point, q: Point) -> tuple[float, ...]:
    return tuple(a - b for a, b in zip(p, q))


def _dot(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    return sum(a * b for a, b in zip(u, v))


def _dist(p: Point, q: Point) -> float:
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))


def _lerp(a: Point, b: Point, t: float) -> Point:
    return tuple(x + t * (y - x) for x, y in zip(a, b))


@dataclass(frozen=True)
class Tolerance:
    """Numeric slack: eps_point for point identification, eps_mass for weights."""

    eps_point: float = 1e-9
    eps_mass: float = 1e-12

    def __post_init__(self) -> None:
        if self.eps_point < 0 or self.eps_mass < 0:
            raise GeometryError("tolerances must be nonnegative")

    def validate_for(self, chain: "PolyChain1") -> None:
        """Reject inputs whose feature size does not dominate eps_point."""
        for i, ws in enumerate(chain.segments):
            if ws.seg.length() <= self.eps_point:
                raise GeometryError(
                    f"segment {i} has length {ws.seg.length():g} <= eps_point"
                )


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Segment:
    """Oriented segment from tail a to head b, with positive length."""

    a: Point
    b: Point

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise GeometryError("endpoint dimensions differ")
        if not all(math.isfinite(c) for c in self.a + self.b):
            raise GeometryError("non-finite coordinate")
        if self.a == self.b:
            raise GeometryError(f"degenerate segment at {self.a}")

    @property
    def dim(self) -> int:
        return len(self.a)

    def length(self) -> float:
        return _dist(self.a, self.b)

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


@dataclass(frozen=True)
class WeightedSegment:
    seg: Segment
    mult: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mult):
            raise GeometryError("non-finite multiplicity")


@dataclass(frozen=True)
class PolyChain1:
    """Finite weighted sum of oriented segments in R^dim."""

    dim: int
    segments: tuple[WeightedSegment, ...]

    def __post_init__(self) -> None:
        for ws in self.segments:
            if ws.seg.dim != self.dim:
                raise GeometryError(
                    f"segment dimension {ws.seg.dim} != chain dimension {self.dim}"
                )

    @classmethod
    def from_pairs(
        cls, dim: int, items: list[tuple[Point, Point, float]]
    ) -> "PolyChain1":
        return cls(
            dim,
            tuple(
                WeightedSegment(Segment(tuple(map(float, a)), tuple(map(float, b))), float(m))
                for a, b, m in items
            ),
        )

    @classmethod
    def empty(cls, dim: int) -> "PolyChain1":
        return cls(dim, ())

    def __neg__(self) -> "PolyChain1":
        return PolyChain1(
            self.dim, tuple(WeightedSegment(w.seg, -w.mult) for w in self.segments)
        )

    def __add__(self, other: "PolyChain1") -> "PolyChain1":
        if other.dim != self.dim:
            raise GeometryError("dimension mismatch in chain sum")
        return PolyChain1(self.dim, self.segments + other.segments)

    def scaled(self, c: float) -> "PolyChain1":
        return PolyChain1(
            self.dim, tuple(WeightedSegment(w.seg, c * w.mult) for w in self.segments)
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "segments": [
                {"a": list(w.seg.a), "b": list(w.seg.b), "mult": w.mult}
                for w in self.segments
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PolyChain1":
        return cls.from_pairs(
            int(obj["dim"]),
            [(tuple(s["a"]), tuple(s["b"]), s["mult"]) for s in obj["segments"]],
        )


@dataclass(frozen=True)
class Chain0:
    """Finite signed atomic measure: weighted points in R^dim."""

    dim: int
    atoms: tuple[tuple[Point, float], ...]

    def __post_init__(self) -> None:
        for p, w in self.atoms:
            if len(p) != self.dim:
                raise GeometryError("atom dimension mismatch")
            if not all(math.isfinite(c) for c in p) or not math.isfinite(w):
                raise GeometryError("non-finite atom")

    @classmethod
    def from_pairs(cls, dim: int, items: list[tuple[Point, float]]) -> "Chain0":
        return cls(dim, tuple((tuple(map(float, p)), float(w)) for p, w in items))

    @classmethod
    def empty(cls, dim: int) -> "Chain0":
        return cls(dim, ())

    def __neg__(self) -> "Chain0":
        return Chain0(self.dim, tuple((p, -w) for p, w in self.atoms))

    def __add__(self, other: "Chain0") -> "Chain0":
        if other.dim != self.dim:
            raise GeometryError("dimension mismatch in 0-chain sum")
        return Chain0(self.dim, self.atoms + other.atoms)

    def merged(self, tol: Tolerance = DEFAULT_TOL) -> "Chain0":
        """Merge atoms within eps_point, drop weights below eps_mass, sort."""
        pts = [p for p, _ in self.atoms]
        reps = _snap_points(pts, tol.eps_point)
        acc: dict[Point, float] = {}
        for (p, w) in self.atoms:
            r = reps[p]
            acc[r] = acc.get(r, 0.0) + w
        items = sorted(
            (p, w) for p, w in acc.items() if abs(w) > tol.eps_mass
        )
        return Chain0(self.dim, tuple(items))

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "atoms": [{"x": list(p), "w": w} for p, w in self.atoms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Chain0":
        return cls.from_pairs(
            int(obj["dim"]), [(tuple(a["x"]), a["w"]) for a in obj["atoms"]]
        )


def mass(chain: PolyChain1) -> float:
    """Total variation: sum of |multiplicity| * segment length."""
    return sum(abs(w.mult) * w.seg.length() for w in chain.segments)


def mass0(m: Chain0) -> float:
    """Total variation of an atomic measure: sum of |weight|."""
    return sum(abs(w) for _, w in m.atoms)


def h_mass(chain: PolyChain1, h) -> float:
    """Cost-weighted length: sum of h(|multiplicity|) * segment length.

    `h` is any callable on nonnegative reals (typically a transport cost).
    Only meaningful on canonicalized chains; equals mass() when h is the
    identity.
    """
    return sum(h(abs(w.mult)) * w.seg.length() for w in chain.segments)


# ---------------------------------------------------------------------------
# point snapping


def _snap_points(points: list[Point], eps: float) -> dict[Point, Point]:
    """Union-find over a spatial hash; representative is the lex-smallest member."""
    uniq = sorted(set(points))
    n = len(uniq)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            # keep the smaller index (lex-smaller point) as root
            if rj < ri:
                ri, rj = rj, ri
            parent[rj] = ri

    if eps > 0 and n > 1:
        cell = eps
        buckets: dict[tuple[int, ...], list[int]] = {}
        for i, p in enumerate(uniq):
            key = tuple(math.floor(c / cell) for c in p)
            buckets.setdefault(key, []).append(i)
        dim = len(uniq[0])
        offsets = [(0,) * dim]
        # neighbor cells: full 3^d stencil
        from itertools import product

        offsets = list(product((-1, 0, 1), repeat=dim))
        for key, idxs in buckets.items():
            for off in offsets:
                nkey = tuple(k + o for k, o in zip(key, off))
                if nkey < key:
                    continue
                other = buckets.get(nkey)
                if not other:
                    continue
                for i in idxs:
                    for j in other:
                        if i < j and _dist(uniq[i], uniq[j]) <= eps:
                            union(i, j)

    return {p: uniq[find(i)] for i, p in enumerate(uniq)}


# ---------------------------------------------------------------------------
# canonicalization


def _line_params(seg: Segment, p: Point) -> tuple[float, float]:
    """Project p onto the line through seg; return (param t, distance to line)."""
    u = _sub(seg.b, seg.a)
    uu = _dot(u, u)
    t = _dot(_sub(p, seg.a), u) / uu
    foot = _lerp(seg.a, seg.b, t)
    return t, _dist(foot, p)


def _pair_cuts(
    s1: Segment, s2: Segment, eps: float
) -> tuple[list[Point], list[Point]]:
    """Cut points induced on s1 and s2 by their mutual intersection.

    Collinear overlaps are cut at the other segment's endpoints; transversal
    interior crossings produce one shared cut point for both segments.
    """
    l1, l2 = s1.length(), s2.length()
    # bounding-box prefilter
    for i in range(s1.dim):
        lo1, hi1 = sorted((s1.a[i], s1.b[i]))
        lo2, hi2 = sorted((s2.a[i], s2.b[i]))
        if lo1 > hi2 + eps or lo2 > hi1 + eps:
            return [], []

    t2a, d2a = _line_params(s1, s2.a)
    t2b, d2b = _line_params(s1, s2.b)
    if d2a <= eps and d2b <= eps:
        # collinear: cut each segment at the other's interior endpoints
        cuts1: list[Point] = []
        cuts2: list[Point] = []
        tp1 = eps / l1
        for t, p in ((t2a, s2.a), (t2b, s2.b)):
            if tp1 < t < 1 - tp1:
                cuts1.append(p)
        tp2 = eps / l2
        for p in (s1.a, s1.b):
            t, _ = _line_params(s2, p)
            if tp2 < t < 1 - tp2:
                cuts2.append(p)
        return cuts1, cuts2

    u = _sub(s1.b, s1.a)
    v = _sub(s2.b, s2.a)
    w = _sub(s2.a, s1.a)
    # solve a + t u = c + s v in the least-squares sense (exact when coplanar)
    uu, vv, uv = _dot(u, u), _dot(v, v), _dot(u, v)
    det = uu * vv - uv * uv
    if det <= (1e-14) * uu * vv:
        return [], []  # parallel, not collinear
    wu, wv = _dot(w, u), _dot(w, v)
    t = (wu * vv - wv * uv) / det
    s = (wu * uv - wv * uu) / det
    p1 = _lerp(s1.a, s1.b, t)
    p2 = _lerp(s2.a, s2.b, s)
    if _dist(p1, p2) > eps:
        return [], []  # skew in d >= 3
    tp1, tp2 = eps / l1, eps / l2
    if t < -tp1 or t > 1 + tp1 or s < -tp2 or s > 1 + tp2:
        return [], []
    # shared cut point; prefer an existing endpoint when the crossing touches one
    if t <= tp1:
        pt: Point = s1.a
    elif t >= 1 - tp1:
        pt = s1.b
    elif s <= tp2:
        pt = s2.a
    elif s >= 1 - tp2:
        pt = s2.b
    else:
        pt = tuple((x + y) / 2 for x, y in zip(p1, p2))
    cuts1 = [pt] if tp1 < t < 1 - tp1 else []
    cuts2 = [pt] if tp2 < s < 1 - tp2 else []
    return cuts1, cuts2


def canonicalize(chain: PolyChain1, tol: Tolerance = DEFAULT_TOL) -> PolyChain1:
    """Reduce a chain to its unique non-overlapping sorted representative.

    Endpoints within eps_point are snapped together; collinear overlapping
    segments are split at all endpoints and their multiplicities summed;
    transversal interior crossings are split at the crossing point. Pieces
    with |multiplicity| < eps_mass are dropped and the rest sorted
    lexicographically by (tail, head). Inputs that put two distinct split
    points within eps_point of each other are rejected rather than merged.
    """
    eps = tol.eps_point
    if not chain.segments:
        return chain

    # snap endpoints
    pts = [w.seg.a for w in chain.segments] + [w.seg.b for w in chain.segments]
    reps = _snap_points(pts, eps)
    snapped: list[tuple[Segment, float]] = []
    for w in chain.segments:
        a, b = reps[w.seg.a], reps[w.seg.b]
        if a == b:
            raise GeometryError(f"segment {w.seg.a}->{w.seg.b} degenerate after snapping")
        snapped.append((Segment(a, b), w.mult))

    tol.validate_for(PolyChain1(chain.dim, tuple(WeightedSegment(s, m) for s, m in snapped)))

    # collect pairwise cut points
    cuts: list[list[Point]] = [[] for _ in snapped]
    n = len(snapped)
    for i in range(n):
        for j in range(i + 1, n):
            ci, cj = _pair_cuts(snapped[i][0], snapped[j][0], eps)
            cuts[i].extend(ci)
            cuts[j].extend(cj)

    # split and accumulate oriented pieces
    acc: dict[tuple[Point, Point], float] = {}
    for (seg, mult), cutpts in zip(snapped, cuts):
        params: dict[Point, float] = {}
        for p in cutpts:
            t, _ = _line_params(seg, p)
            params.setdefault(p, t)
        stops = sorted(params.items(), key=lambda kv: kv[1])
        # guard: distinct cut points too close to each other or to an endpoint
        prev_p, prev_t = seg.a, 0.0
        seq = stops + [(seg.b, 1.0)]
        length = seg.length()
        for p, t in seq:
            if p != prev_p and (t - prev_t) * length <= eps:
                raise GeometryError(
                    f"split points {prev_p} and {p} closer than eps_point; input rejected"
                )
            prev_p, prev_t = p, t
        points = [seg.a] + [p for p, _ in stops] + [seg.b]
        for a, b in zip(points[:-1], points[1:]):
            key, m = ((a, b), mult) if a < b else ((b, a), -mult)
            acc[key] = acc.get(key, 0.0) + m

    kept = sorted(
        (key, m) for key, m in acc.items() if abs(m) > tol.eps_mass
    )
    return PolyChain1(
        chain.dim,
        tuple(WeightedSegment(Segment(a, b), m) for (a, b), m in kept),
    )


def boundary(chain: PolyChain1, tol: Tolerance = DEFAULT_TOL) -> Chain0:
    """Signed endpoint measure: +mult at each head, -mult at each tail.

    Atoms within eps_point are merged and zero weights dropped, so closed
    loops have empty boundary.
    """
    atoms: list[tuple[Point, float]] = []
    for w in chain.segments:
        atoms.append((w.seg.b, w.mult))
        atoms.append((w.seg.a, -w.mult))
    return Chain0(chain.dim, tuple(atoms)).merged(tol)


def refine_against(
    chain: PolyChain1, other: PolyChain1, tol: Tolerance = DEFAULT_TOL
) -> list[tuple[Segment, float, float]]:
    """Common refinement of two canonicalized chains.

    Returns pieces (segment, mult_in_chain, mult_in_other) covering the
    union of both supports, split so that each piece carries a single
    multiplicity from each chain.
    """
    marked = chain.scaled(1.0) + other.scaled(1.0)
    # canonicalize the union to get the joint split structure, then read
    # each chain's multiplicity off the pieces
    joint = canonicalize(
        PolyChain1(
            chain.dim,
            tuple(
                WeightedSegment(w.seg, 1.0) for w in marked.segments
            ),
        ),
        tol,
    )
    out = []
    for piece in joint.segments:
        midpoint = _lerp(piece.seg.a, piece.seg.b, 0.5)
        m1 = _mult_at(chain, midpoint, piece.seg, tol)
        m2 = _mult_at(other, midpoint, piece.seg, tol)
        if abs(m1) > tol.eps_mass or abs(m2) > tol.eps_mass:
            out.append((piece.seg, m1, m2))
    return out


def _mult_at(chain: PolyChain1, p: Point, along: Segment, tol: Tolerance) -> float:
    """Signed multiplicity of `chain` at point p, oriented along `along`."""
    total = 0.0
    for w in chain.segments:
        t, d = _line_params(w.seg, p)
        if d <= tol.eps_point and -1e-12 <= t <= 1 + 1e-12:
            u = _sub(w.seg.b, w.seg.a)
            v = _sub(along.b, along.a)
            sign = 1.0 if _dot(u, v) > 0 else -1.0
            total += sign * w.mult
    return total


def weak_distance_report(
    seq: list[PolyChain1],
    limit: PolyChain1,
    tol: Tolerance = DEFAULT_TOL,
    flat_resolution: float | None = None,
) -> list[dict]:
    """Per-index convergence diagnostics of a chain sequence against a limit.

    Records the mass of the difference, the boundary-mass of the difference,
    the mass and boundary mass of each term, the atomic flat norm of the
    boundary difference, and (for rectilinear 2-d inputs, when
    flat_resolution is given) the grid flat norm of the difference.
    """
    from . import flatnorm  # local import to avoid a module cycle

    limit_c = canonicalize(limit, tol)
    b_limit = boundary(limit_c, tol)
    records = []
    for idx, ch in enumerate(seq):
        ch_c = canonicalize(ch, tol)
        diff = canonicalize(ch_c + (-limit_c), tol)
        b_ch = boundary(ch_c, tol)
        b_diff = (b_ch + (-b_limit)).merged(tol)
        rec = {
            "index": idx,
            "mass": mass(ch_c),
            "boundary_mass": mass0(b_ch),
            "mass_gap": mass(diff),
            "boundary_mass_gap": mass0(b_diff),
            "boundary_flat_gap": flatnorm.flat_norm_0(b_diff).value,
        }
        if flat_resolution is not None and limit.dim == 2:
            try:
                cx = flatnorm.build_complex_for(diff, flat_resolution)
                rec["flat_gap"] = flatnorm.flat_norm_1_grid(diff, cx).value
            except flatnorm.FlatNormError:
                rec["flat_gap"] = None
        records.append(rec)
    return records


def validate_chain(obj: dict) -> list[str]:
    """Structural validation of a chain JSON object; returns violation messages."""
    errors = []
    if "segments" in obj:
        dim = obj.get("dim")
        for i, s in enumerate(obj.get("segments", [])):
            a, b = s.get("a"), s.get("b")
            if a is None or b is None or len(a) != dim or len(b) != dim:
                errors.append(f"segment {i}: bad endpoints for dim {dim}")
                continue
            if not all(math.isfinite(float(c)) for c in a + b):
                errors.append(f"segment {i}: non-finite coordinate")
            elif list(a) == list(b):
                errors.append(f"segment {i}: zero length")
            if not math.isfinite(float(s.get("mult", math.nan))):
                errors.append(f"segment {i}: bad multiplicity")
    elif "atoms" in obj:
        dim = obj.get("dim")
        for i, a in enumerate(obj.get("atoms", [])):
            x = a.get("x")
            if x is None or len(x) != dim:
                errors.append(f"atom {i}: bad point for dim {dim}")
            elif not all(math.isfinite(float(c)) for c in x):
                errors.append(f"atom {i}: non-finite coordinate")
            if not math.isfinite(float(a.get("w", math.nan))):
                errors.append(f"atom {i}: bad weight")
    else:
        errors.append("object is neither a 1-chain nor a 0-chain")
    return errors
