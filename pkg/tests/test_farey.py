"""Farey oracle tests, cross-checked against integer brute force."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidlab.farey import (
    SPHERE,
    TORUS,
    FareyError,
    FareyOracle,
    Slope,
    ball_slopes,
    farey_adjacent,
    farey_common_neighbors,
    farey_intersection,
    neighbor_enumerator,
    stern_brocot_ball,
)
from rigidlab.oracles import INFINITE, Finite
from rigidlab.simplicial import (
    FiniteGraphOracle,
    SimplicialGraph,
    VertexSubset,
    rigid_expansion,
    uniquely_determined,
)

S = Slope.parse


def brute_common_in_range(B, bound=30):
    """Integer search for all slopes adjacent to every member of B."""
    out = set()
    for q in range(0, bound + 1):
        for p in range(-bound, bound + 1):
            try:
                s = Slope.of(p, q)
            except FareyError:
                continue
            if s != Slope.of(*((p, q))):
                continue
            if (s.p, s.q) != (p, q):
                continue
            if s in B:
                continue
            if all(abs(s.det(w)) == 1 for w in B):
                out.add(s)
    return out


slope_strategy = st.tuples(
    st.integers(-12, 12), st.integers(-12, 12)
).filter(lambda t: t != (0, 0)).map(lambda t: Slope.of(*t))


class TestSlope:
    def test_parse_and_canonical(self):
        assert S("-3/2") == Slope.of(-3, 2)
        assert S("1/0") == Slope.of(-2, 0)
        assert S("2/4") == S("1/2")
        assert str(S("-6/-4")) == "3/2"

    def test_zero_rejected(self):
        with pytest.raises(FareyError):
            Slope.of(0, 0)

    def test_order_by_q_then_p(self):
        assert sorted([S("1/1"), S("1/0"), S("0/1"), S("-1/1")]) == [
            S("1/0"),
            S("-1/1"),
            S("0/1"),
            S("1/1"),
        ]


class TestIntersection:
    def test_modes(self):
        assert farey_intersection(S("0/1"), S("1/0"), TORUS) == 1
        assert farey_intersection(S("0/1"), S("1/0"), SPHERE) == 2
        assert farey_intersection(S("1/2"), S("1/3"), TORUS) == 1

    def test_self_zero(self):
        assert farey_intersection(S("3/5"), S("3/5"), TORUS) == 0

    def test_adjacency(self):
        assert farey_adjacent(S("0/1"), S("1/0"), TORUS)
        assert farey_adjacent(S("0/1"), S("1/0"), SPHERE)
        assert not farey_adjacent(S("0/1"), S("2/1"), TORUS)
        # Determinant 2 means intersection 4 on the sphere, not minimal:
        # adjacency is |det| = 1 in both modes.
        assert farey_intersection(S("0/1"), S("2/1"), SPHERE) == 4
        assert not farey_adjacent(S("0/1"), S("2/1"), SPHERE)
        assert not farey_adjacent(S("1/1"), S("1/1"), TORUS)

    @given(slope_strategy, slope_strategy)
    def test_symmetric(self, a, b):
        assert farey_intersection(a, b) == farey_intersection(b, a)
        assert (farey_intersection(a, b) == 0) == (a == b)


class TestCommonNeighbors:
    def test_singleton_infinite(self):
        assert farey_common_neighbors([S("0/1")]) is INFINITE

    def test_edge_pair(self):
        ans = farey_common_neighbors([S("0/1"), S("1/0")])
        assert isinstance(ans, Finite)
        assert set(ans.members) == {S("1/1"), S("-1/1")}
        assert set(ans.members) == brute_common_in_range({S("0/1"), S("1/0")})

    def test_triple_some(self):
        ans = farey_common_neighbors([S("0/1"), S("1/0"), S("2/1")])
        assert set(ans.members) == {S("1/1")}

    def test_triangle_empty(self):
        ans = farey_common_neighbors([S("0/1"), S("1/0"), S("1/1")])
        assert set(ans.members) == set()

    def test_link_line_identities(self):
        det = uniquely_determined(FareyOracle(), [S("1/0"), S("0/1"), S("1/2")])
        assert det.is_some and det.vertex == S("1/1")
        det = uniquely_determined(FareyOracle(), [S("1/1"), S("0/1"), S("1/3")])
        assert det.is_some and det.vertex == S("1/2")

    @given(st.sets(slope_strategy, min_size=2, max_size=4))
    @settings(max_examples=80, deadline=None)
    def test_matches_brute_force(self, B):
        ans = farey_common_neighbors(B)
        assert isinstance(ans, Finite)
        expected = brute_common_in_range(B, bound=40)
        got = set(ans.members)
        # The brute force window is big enough for these slope sizes: each
        # solution solves a 2x2 unimodular system with |entries| <= 12.
        assert got == expected

    @given(slope_strategy, slope_strategy)
    @settings(max_examples=60, deadline=None)
    def test_edges_have_two_common_neighbors(self, a, b):
        if a == b or abs(a.det(b)) != 1:
            return
        ans = farey_common_neighbors([a, b])
        assert len(ans.members) == 2

    @given(st.sets(slope_strategy, min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_no_k4(self, tri):
        tri = list(tri)
        if len(tri) != 3:
            return
        pairs = list(itertools.combinations(tri, 2))
        if not all(abs(a.det(b)) == 1 for a, b in pairs):
            return
        assert set(farey_common_neighbors(tri).members) == set()


class TestNeighborEnumerator:
    def test_first_neighbors_adjacent(self):
        for base in [S("0/1"), S("1/0"), S("2/5"), S("-3/4")]:
            gen = neighbor_enumerator(base)
            for _ in range(10):
                nb = next(gen)
                assert farey_adjacent(base, nb)


class TestBall:
    def test_depth_zero(self):
        G = stern_brocot_ball(0)
        assert set(G.vertices) == {"1/0", "0/1"}
        assert G.edges == (("0/1", "1/0"),)

    def test_depth_one(self):
        G = stern_brocot_ball(1)
        assert set(G.vertices) == {"1/0", "0/1", "1/1", "-1/1"}
        for u, v in itertools.combinations(G.vertices, 2):
            assert G.adjacent(u, v) == (abs(S(u).det(S(v))) == 1)

    def test_depth_limit(self):
        with pytest.raises(FareyError):
            stern_brocot_ball(20)

    def test_edges_match_oracle(self):
        G = stern_brocot_ball(3)
        for u, v in itertools.combinations(G.vertices, 2):
            assert G.adjacent(u, v) == farey_adjacent(S(u), S(v))

    def test_ball_counts_grow(self):
        sizes = [len(ball_slopes(d)) for d in range(5)]
        assert sizes == sorted(sizes)
        assert sizes[0] == 2 and sizes[1] == 4

    def test_oracle_agrees_with_ball_brute_force(self):
        """Within a ball, solver answers restricted to the ball match the
        finite graph's common neighbors whenever the true answer lies inside."""
        G = stern_brocot_ball(4)
        fin = FiniteGraphOracle(G)
        slopes = [S(v) for v in G.vertices]
        ball = set(slopes)
        for a, b in itertools.combinations(slopes, 2):
            ans = farey_common_neighbors([a, b])
            got = set(ans.members)
            if got <= ball:
                brute = set(fin.common_neighbors([str(a), str(b)]).members)
                assert {str(s) for s in got} == brute


class TestExpansionOnFarey:
    def test_expansion_step_adds_determined_slope(self):
        oracle = FareyOracle()
        Y = VertexSubset.of(oracle, [S("1/1"), S("0/1"), S("1/3"), S("1/0")])
        res = rigid_expansion(oracle, Y, steps=1)
        added = {c.vertex for c in res.certificates}
        assert S("1/2") in added
        for cert in res.certificates:
            det = uniquely_determined(oracle, cert.witness)
            assert det.is_some and det.vertex == cert.vertex

    def test_seed_quad_is_fixpoint(self):
        # Every pair of this quad determines only vertices already present
        # (or fails uniqueness), so the first expansion is a fixpoint.
        oracle = FareyOracle()
        Y = VertexSubset.of(oracle, [S("1/0"), S("0/1"), S("1/2"), S("1/1")])
        res = rigid_expansion(oracle, Y, steps=1)
        assert set(res.subset.members) == set(Y.members)
        assert res.final
