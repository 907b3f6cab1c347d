"""Exact Farey-graph oracle.

Vertices are reduced slopes p/q (with 1/0 for infinity); two slopes span an
edge when |ps - qr| = 1.  This is the curve graph of the once-punctured
torus (minimal intersection 1) and, with doubled intersection numbers, of
the four-punctured sphere (minimal intersection 2).  Common-neighbor
queries over the infinite vertex set are answered exactly by solving the
pair of unimodular constraints with smallest coefficients and filtering
with the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .oracles import INFINITE, Answer, LinkOracle, finite
from .simplicial import SimplicialGraph


class FareyError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    """Reduced fraction p/q in canonical form; ordering key is (q, p)."""

    q: int
    p: int

    @classmethod
    def of(cls, p: int, q: int) -> "Slope":
        if p == 0 and q == 0:
            raise FareyError("0/0 is not a slope")
        g = math.gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        return cls(q, p)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        try:
            ps, qs = text.strip().split("/")
            return cls.of(int(ps), int(qs))
        except (ValueError, TypeError) as exc:
            raise FareyError(f"bad slope {text!r}") from exc

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def det(self, other: "Slope") -> int:
        return self.p * other.q - self.q * other.p


TORUS = "torus"
SPHERE = "sphere"
_MIN_INTERSECTION = {TORUS: 1, SPHERE: 2}


def minimal_intersection(mode: str) -> int:
    if mode not in _MIN_INTERSECTION:
        raise FareyError(f"unknown Farey mode {mode!r}")
    return _MIN_INTERSECTION[mode]


def farey_intersection(a: Slope, b: Slope, mode: str = TORUS) -> int:
    """Geometric intersection of the slope curves: |det| (doubled on the sphere)."""
    return abs(a.det(b)) * minimal_intersection(mode)


def farey_adjacent(a: Slope, b: Slope, mode: str = TORUS) -> bool:
    return farey_intersection(a, b, mode) == minimal_intersection(mode)


def farey_common_neighbors(B: Iterable[Slope]) -> Answer:
    """Exact common-neighbor set of B in the Farey graph.

    A single slope has infinite link.  For two or more distinct slopes the
    two constraints |p*q_i - q*p_i| = 1 with smallest coefficients give at
    most four sign systems, hence at most two canonical candidates, which
    the remaining constraints filter.
    """
    slopes = sorted(set(B), key=lambda s: (max(abs(s.p), s.q), s.q, s.p))
    if not slopes:
        raise FareyError("common neighbors of empty slope set")
    if len(slopes) == 1:
        return INFINITE
    a, b = slopes[0], slopes[1]
    D = a.det(b)
    assert D != 0, "distinct canonical slopes have nonzero determinant"
    candidates = set()
    for e1 in (1, -1):
        for e2 in (1, -1):
            # Solve q_a p - p_a q = e1, q_b p - p_b q = e2 by Cramer's rule.
            num_p = e2 * a.p - e1 * b.p
            num_q = e2 * a.q - e1 * b.q
            if num_p % D or num_q % D:
                continue
            p, q = num_p // D, num_q // D
            if p == 0 and q == 0:
                continue
            if math.gcd(abs(p), abs(q)) != 1:
                continue
            candidates.add(Slope.of(p, q))
    result = {
        c
        for c in candidates
        if c not in set(slopes) and all(abs(c.det(w)) == 1 for w in slopes)
    }
    return finite(result)


def neighbor_enumerator(v: Slope) -> Iterator[Slope]:
    """Enumerate the (infinite) link of v, nearest slopes first."""
    # One particular solution of |p*v.q - q*v.p| = 1 via the extended gcd.
    g, x, y = _extended_gcd(v.q, -v.p)
    assert g == 1
    base = (x, y)
    k = 0
    while True:
        for kk in ((0,) if k == 0 else (k, -k)):
            p = base[0] + kk * v.p
            q = base[1] + kk * v.q
            yield Slope.of(p, q)
        k += 1


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


class FareyOracle(LinkOracle):
    """LinkOracle over the full infinite Farey graph."""

    def __init__(self, mode: str = TORUS):
        minimal_intersection(mode)
        self.mode = mode

    def has_vertex(self, v) -> bool:
        return isinstance(v, Slope)

    def adjacent(self, u: Slope, v: Slope) -> bool:
        return farey_adjacent(u, v, self.mode)

    def neighbors_of(self, v: Slope) -> Answer:
        return INFINITE

    def common_neighbors(self, B) -> Answer:
        return farey_common_neighbors(B)

    def expansion_candidates(self, Y) -> Iterable[Slope]:
        """Candidates from all pairs; complete because a determined vertex is
        adjacent to at least two members (singleton witnesses have infinite
        links here)."""
        ys = sorted(set(Y))
        out = set()
        for i, a in enumerate(ys):
            for b in ys[i + 1 :]:
                ans = farey_common_neighbors([a, b])
                if ans is INFINITE:
                    continue
                out.update(ans.members)
        return sorted(out - set(ys))


def ball_slopes(depth: int, max_depth: int = 12) -> list[Slope]:
    """Slopes of Stern-Brocot depth <= depth, with 1/0, 0/1 and negatives."""
    if depth > max_depth:
        raise FareyError(f"ball depth {depth} exceeds limit {max_depth}")
    slopes = {Slope.of(1, 0), Slope.of(0, 1)}
    # Positive tree between 0/1 and 1/0; mirror for negatives.
    frontier = [((0, 1), (1, 0))]
    for _ in range(depth):
        nxt = []
        for (p1, q1), (p2, q2) in frontier:
            m = (p1 + p2, q1 + q2)
            slopes.add(Slope.of(*m))
            slopes.add(Slope.of(-m[0], m[1]))
            nxt.append(((p1, q1), m))
            nxt.append((m, (p2, q2)))
        frontier = nxt
    return sorted(slopes)


def stern_brocot_ball(depth: int, max_depth: int = 12) -> SimplicialGraph:
    """Finite Farey-graph slice on the depth-d Stern-Brocot ball.

    Vertex identifiers are slope strings; adjacency is |det| = 1.
    """
    slopes = ball_slopes(depth, max_depth)
    edges = []
    for i, a in enumerate(slopes):
        for b in slopes[i + 1 :]:
            if abs(a.det(b)) == 1:
                edges.append((str(a), str(b)))
    return SimplicialGraph([str(s) for s in slopes], edges)
