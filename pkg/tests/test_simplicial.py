"""Graph-core tests.

Expected values tagged as derived in the contract are recomputed here by
independent brute force (exhaustive subset enumeration, permutation search)
rather than hardcoded.
"""

import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidlab.oracles import INFINITE, UNKNOWN, Finite
from rigidlab.simplicial import (
    Automorphism,
    Conflict,
    FiniteGraphOracle,
    SimplicialGraph,
    SimplicialGraphError,
    VertexMap,
    VertexSubset,
    automorphism_group,
    is_locally_injective,
    is_rigid,
    pointwise_stabilizer,
    propagate_edge_preserving,
    rigid_expansion,
    rigid_expansion_step,
    uniquely_determined,
)


def path4():
    return SimplicialGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d")])


def cycle(n):
    return SimplicialGraph(range(n), [(i, (i + 1) % n) for i in range(n)])


def brute_common_neighbors(G, B):
    acc = set(G.vertices)
    for w in B:
        acc &= set(G.link(w))
    return acc


def brute_expansion_step(G, members):
    """Exhaustive over all nonempty subsets B of the member set."""
    added = {}
    ms = sorted(members)
    for r in range(1, len(ms) + 1):
        for B in itertools.combinations(ms, r):
            common = brute_common_neighbors(G, B)
            if len(common) == 1:
                v = next(iter(common))
                if v not in members:
                    added.setdefault(v, B)
    return set(members) | set(added), added


def brute_automorphisms(G):
    vs = G.vertices
    out = []
    for perm in itertools.permutations(vs):
        f = dict(zip(vs, perm))
        if all(G.adjacent(f[u], f[v]) == G.adjacent(u, v) for u, v in itertools.combinations(vs, 2)):
            out.append(f)
    return out


def random_graph(n, density_bits):
    pairs = list(itertools.combinations(range(n), 2))
    edges = [p for p, b in zip(pairs, density_bits) if b]
    return SimplicialGraph(range(n), edges)


graph_strategy = st.integers(2, 7).flatmap(
    lambda n: st.tuples(
        st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2)
    )
).map(lambda t: random_graph(t[0], t[1]))


class TestGraphBasics:
    def test_link_path(self):
        G = path4()
        assert G.link("b") == ("a", "c")

    def test_link_cycle(self):
        G = cycle(5)
        assert G.link(2) == (1, 3)

    def test_link_isolated(self):
        G = SimplicialGraph(["a", "b"], [])
        assert G.link("a") == ()

    def test_no_self_loops(self):
        with pytest.raises(SimplicialGraphError):
            SimplicialGraph("ab", [("a", "a")])

    def test_unknown_vertex(self):
        with pytest.raises(SimplicialGraphError):
            path4().link("z")

    def test_edge_endpoint_listed(self):
        with pytest.raises(SimplicialGraphError):
            SimplicialGraph("ab", [("a", "c")])

    def test_json_roundtrip_and_determinism(self):
        G = SimplicialGraph("dcba", [("d", "c"), ("a", "b")])
        text = G.to_json()
        assert text == SimplicialGraph.from_json(text).to_json()
        assert json.loads(text)["vertices"] == ["a", "b", "c", "d"]

    def test_dot_export(self):
        dot = path4().to_dot(step_of={"b": 1})
        assert '"a" -- "b";' in dot
        assert "step 1" in dot


class TestUniqueDetermination:
    def test_path_pair_determines_middle(self):
        G = path4()
        oracle = FiniteGraphOracle(G)
        expected = brute_common_neighbors(G, ["a", "c"])
        assert expected == {"b"}
        det = uniquely_determined(oracle, ["a", "c"])
        assert det.is_some and det.vertex == "b"

    def test_square_diagonal_not_determined(self):
        G = cycle(4)
        oracle = FiniteGraphOracle(G)
        expected = brute_common_neighbors(G, [0, 2])
        assert expected == {1, 3}
        det = uniquely_determined(oracle, [0, 2])
        assert det.status == "none"
        assert set(det.candidates) == expected

    def test_empty_witness_rejected(self):
        with pytest.raises(SimplicialGraphError):
            uniquely_determined(FiniteGraphOracle(path4()), [])


class TestExpansion:
    def test_five_cycle_step(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, [0, 1, 3])
        expected, witnesses = brute_expansion_step(G, {0, 1, 3})
        assert expected == {0, 1, 2, 3, 4}
        res = rigid_expansion_step(oracle, Y)
        assert set(res.subset.members) == expected
        by_vertex = {c.vertex: set(c.witness) for c in res.certificates}
        assert by_vertex == {2: {1, 3}, 4: {0, 3}}

    def test_path_step_then_fixpoint(self):
        G = path4()
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, ["a", "c"])
        expected, _ = brute_expansion_step(G, {"a", "c"})
        assert expected == {"a", "b", "c"}
        res = rigid_expansion(oracle, Y)
        assert set(res.subset.members) == expected
        assert res.final
        again = rigid_expansion_step(oracle, res.subset)
        assert set(again.subset.members) == expected

    def test_full_vertex_set_is_fixpoint(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, range(5))
        res = rigid_expansion(oracle, Y)
        assert set(res.subset.members) == set(range(5))
        assert res.final and not res.certificates

    def test_five_cycle_pair_fixpoint(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, [1, 3])
        res = rigid_expansion(oracle, Y)
        assert set(res.subset.members) == {1, 2, 3}

    def test_empty_rejected(self):
        oracle = FiniteGraphOracle(path4())
        with pytest.raises(SimplicialGraphError):
            rigid_expansion_step(oracle, VertexSubset.of(oracle, []))

    @given(graph_strategy, st.data())
    @settings(max_examples=60, deadline=None)
    def test_step_matches_brute_force(self, G, data):
        members = data.draw(
            st.sets(st.sampled_from(list(G.vertices)), min_size=1, max_size=len(G))
        )
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, members)
        res = rigid_expansion_step(oracle, Y)
        expected, _ = brute_expansion_step(G, set(members))
        assert set(res.subset.members) == expected
        # Certificate soundness: the witness re-determines the vertex.
        for cert in res.certificates:
            det = uniquely_determined(oracle, cert.witness)
            assert det.is_some and det.vertex == cert.vertex

    @given(graph_strategy, st.data())
    @settings(max_examples=40, deadline=None)
    def test_monotone_and_idempotent(self, G, data):
        members = data.draw(
            st.sets(st.sampled_from(list(G.vertices)), min_size=1, max_size=len(G))
        )
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, members)
        res = rigid_expansion(oracle, Y)
        assert set(members) <= set(res.subset.members)
        assert res.final
        res2 = rigid_expansion_step(oracle, res.subset)
        assert set(res2.subset.members) == set(res.subset.members)


class TestAutomorphisms:
    def test_five_cycle_dihedral(self):
        G = cycle(5)
        expected = brute_automorphisms(G)
        autos = automorphism_group(G)
        assert len(autos) == len(expected) == 10
        assert {a.mapping for a in autos} == {tuple(sorted(f.items())) for f in expected}

    def test_path_two(self):
        G = path4()
        expected = brute_automorphisms(G)
        autos = automorphism_group(G)
        assert len(autos) == len(expected) == 2

    def test_single_vertex(self):
        G = SimplicialGraph(["a"], [])
        autos = automorphism_group(G)
        assert len(autos) == 1 and autos[0].is_identity()

    def test_vertex_limit(self):
        G = SimplicialGraph(range(5), [])
        with pytest.raises(SimplicialGraphError):
            automorphism_group(G, max_vertices=3)

    def test_compose_inverse(self):
        G = cycle(5)
        autos = automorphism_group(G)
        for a in autos:
            assert a.compose(a.inverse()).is_identity()

    def test_stabilizer_examples(self):
        G = cycle(5)
        stab_edge = pointwise_stabilizer(G, [0, 1])
        assert len(stab_edge) == 1 and stab_edge[0].is_identity()
        stab_vertex = pointwise_stabilizer(G, [0])
        expected = [f for f in brute_automorphisms(G) if f[0] == 0]
        assert len(stab_vertex) == len(expected) == 2
        stab_empty = pointwise_stabilizer(G, [])
        assert len(stab_empty) == 10

    @given(graph_strategy, st.data())
    @settings(max_examples=30, deadline=None)
    def test_stabilizer_chain(self, G, data):
        members = data.draw(
            st.sets(st.sampled_from(list(G.vertices)), min_size=1, max_size=len(G))
        )
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, members)
        res = rigid_expansion(oracle, Y)
        s0 = {a.mapping for a in pointwise_stabilizer(G, members)}
        s1 = {a.mapping for a in pointwise_stabilizer(G, res.subset.members)}
        assert s0 == s1

    @given(graph_strategy, st.data())
    @settings(max_examples=30, deadline=None)
    def test_equivariance(self, G, data):
        B = data.draw(st.sets(st.sampled_from(list(G.vertices)), min_size=1, max_size=3))
        oracle = FiniteGraphOracle(G)
        det = uniquely_determined(oracle, B)
        for phi in automorphism_group(G):
            det2 = uniquely_determined(oracle, [phi(b) for b in B])
            if det.is_some:
                assert det2.is_some and det2.vertex == phi(det.vertex)
            else:
                assert not det2.is_some


class TestPropagation:
    def test_rotation_forced(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        rot = Automorphism.from_dict({i: (i + 1) % 5 for i in range(5)})
        Y = VertexSubset.of(oracle, [1, 3])
        res = rigid_expansion(oracle, Y)
        f = VertexMap.of(Y, {1: rot(1), 3: rot(3)}, oracle)
        ext = propagate_edge_preserving(oracle, Y, f, res.certificates)
        assert isinstance(ext, VertexMap)
        assert ext(2) == rot(2) == 3

    def test_identity_propagates_to_identity(self):
        G = path4()
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, ["a", "c"])
        res = rigid_expansion(oracle, Y)
        f = VertexMap.of(Y, {"a": "a", "c": "c"}, oracle)
        ext = propagate_edge_preserving(oracle, Y, f, res.certificates)
        assert isinstance(ext, VertexMap)
        assert all(ext(v) == v for v in ext.domain)

    def test_conflict_reported(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, [0, 1, 3])
        res = rigid_expansion_step(oracle, Y)
        # Map 0,1,3 to 0,1,3 but corrupt: send 3 to 4 (still edge-preserving
        # on Y: edge {0,1} is the only edge of Y).
        f = VertexMap.of(Y, {0: 0, 1: 1, 3: 4}, oracle)
        out = propagate_edge_preserving(oracle, Y, f, res.certificates)
        assert isinstance(out, Conflict)

    def test_not_edge_preserving_rejected(self):
        G = path4()
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, ["a", "b"])
        f = VertexMap.of(Y, {"a": "a", "b": "a"}, oracle)
        with pytest.raises(SimplicialGraphError):
            propagate_edge_preserving(oracle, Y, f, [])

    @given(graph_strategy, st.data())
    @settings(max_examples=30, deadline=None)
    def test_automorphism_restrictions_propagate(self, G, data):
        members = data.draw(
            st.sets(st.sampled_from(list(G.vertices)), min_size=1, max_size=len(G))
        )
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, members)
        res = rigid_expansion(oracle, Y)
        for phi in automorphism_group(G)[:6]:
            f = VertexMap.of(Y, {y: phi(y) for y in Y}, oracle)
            ext = propagate_edge_preserving(oracle, Y, f, res.certificates)
            assert isinstance(ext, VertexMap)
            assert all(ext(v) == phi(v) for v in ext.domain)


class TestLocalInjectivityAndRigidity:
    def test_disjoint_stars_allow_collision(self):
        G = path4()
        assert is_locally_injective(G, ["a", "d"], {"a": "a", "d": "a"})

    def test_adjacent_collision_rejected(self):
        G = SimplicialGraph("ab", [("a", "b")])
        assert not is_locally_injective(G, ["a", "b"], {"a": "a", "b": "a"})

    def test_injective_always_ok(self):
        G = cycle(5)
        assert is_locally_injective(G, [0, 1, 2], {0: 3, 1: 4, 2: 0})

    def test_edge_of_five_cycle_rigid(self):
        G = cycle(5)
        verdict = is_rigid([0, 1], G)
        assert verdict.status == "rigid"

    def test_path_endpoints_not_rigid(self):
        G = path4()
        verdict = is_rigid(["a", "d"], G)
        assert verdict.status == "not_rigid"
        f = verdict.witness
        assert f["a"] == f["d"]

    def test_whole_five_cycle_rigid(self):
        G = cycle(5)
        verdict = is_rigid(list(range(5)), G)
        assert verdict.status == "rigid"

    def test_rigid_implies_expansion_rigid(self):
        G = cycle(5)
        oracle = FiniteGraphOracle(G)
        Y = VertexSubset.of(oracle, [0, 1])
        assert is_rigid([0, 1], G).status == "rigid"
        res = rigid_expansion(oracle, Y)
        assert is_rigid(res.subset.members, G).status == "rigid"
