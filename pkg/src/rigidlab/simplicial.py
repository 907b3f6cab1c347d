"""Simplicial graphs, rigid expansions, automorphisms and rigidity checks.

The vertex set of a graph is an arbitrary collection of hashable, mutually
comparable identifiers.  All outputs are canonically sorted so serialized
artifacts are byte-identical across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .oracles import INFINITE, UNKNOWN, Answer, Finite, LinkOracle, finite

Vertex = Hashable


class SimplicialGraphError(ValueError):
    pass


class SimplicialGraph:
    """Finite undirected graph without loops or parallel edges."""

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[tuple]):
        vs = sorted(set(vertices))
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise SimplicialGraphError(f"self-loop at {u!r}")
            es.add((u, v) if self._lt(u, v) else (v, u))
        self._vertices = tuple(vs)
        vset = set(vs)
        for u, v in es:
            if u not in vset or v not in vset:
                raise SimplicialGraphError(f"edge ({u!r},{v!r}) has unlisted endpoint")
        self._edges = tuple(sorted(es))
        adj: dict[Vertex, set] = {v: set() for v in vs}
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @staticmethod
    def _lt(u, v):
        return u < v

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def edges(self) -> tuple:
        return self._edges

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def adjacent(self, u, v) -> bool:
        self._require(u)
        self._require(v)
        return v in self._adj[u] and u != v

    def link(self, v) -> tuple:
        """All vertices adjacent to v, excluding v itself."""
        self._require(v)
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self.link(v))

    def _require(self, v):
        if v not in self._adj:
            raise SimplicialGraphError(f"unknown vertex {v!r}")

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            for w in self._adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._vertices)

    def subset_connected(self, members: Iterable[Vertex]) -> bool:
        """Connectivity of the full subgraph spanned by ``members``."""
        ms = set(members)
        if not ms:
            return True
        start = next(iter(sorted(ms)))
        seen = {start}
        stack = [start]
        while stack:
            for w in self._adj[stack.pop()]:
                if w in ms and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(ms)

    def distances_from(self, v) -> dict:
        self._require(v)
        dist = {v: 0}
        frontier = [v]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self._adj[u]:
                    if w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        return dist

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": list(self._vertices), "edges": [list(e) for e in self._edges]},
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialGraph":
        data = json.loads(text)
        return cls(data["vertices"], [tuple(e) for e in data["edges"]])

    def to_dot(self, step_of: Mapping[Vertex, int] | None = None) -> str:
        """DOT export; vertices with a recorded expansion step are annotated."""
        lines = ["graph G {"]
        for v in self._vertices:
            if step_of and v in step_of:
                lines.append(f'  "{v}" [label="{v}\\nstep {step_of[v]}"];')
            else:
                lines.append(f'  "{v}";')
        for u, v in self._edges:
            lines.append(f'  "{u}" -- "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"SimplicialGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


class FiniteGraphOracle(LinkOracle):
    """Exact oracle backed by a finite SimplicialGraph."""

    def __init__(self, graph: SimplicialGraph):
        self.graph = graph

    def has_vertex(self, v) -> bool:
        return v in self.graph

    def adjacent(self, u, v) -> bool:
        return self.graph.adjacent(u, v)

    def neighbors_of(self, v) -> Answer:
        return finite(self.graph.link(v))

    def common_neighbors(self, B) -> Answer:
        B = list(B)
        if not B:
            raise SimplicialGraphError("common_neighbors of empty set")
        acc = set(self.graph.link(B[0]))
        for w in B[1:]:
            acc &= set(self.graph.link(w))
        return finite(acc)

    def expansion_candidates(self, Y) -> Iterable:
        ys = set(Y)
        out = set()
        for y in ys:
            out.update(self.graph.link(y))
        return sorted(out - ys)


@dataclass(frozen=True)
class VertexSubset:
    """A full subgraph of the oracle's graph, recorded by its vertex set."""

    host: LinkOracle
    members: tuple

    @classmethod
    def of(cls, host: LinkOracle, members: Iterable[Vertex]) -> "VertexSubset":
        ms = tuple(sorted(set(members)))
        for m in ms:
            if not host.has_vertex(m):
                raise SimplicialGraphError(f"subset member {m!r} unknown to host")
        return cls(host, ms)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in set(self.members)

    def with_added(self, extra: Iterable[Vertex]) -> "VertexSubset":
        return VertexSubset.of(self.host, set(self.members) | set(extra))


@dataclass(frozen=True)
class ExpansionCertificate:
    """Witness that ``vertex`` is the unique common neighbor of ``witness``."""

    step: int
    vertex: Vertex
    witness: tuple

    def to_dict(self) -> dict:
        return {"step": self.step, "vertex": self.vertex, "witness": list(self.witness)}


@dataclass(frozen=True)
class Determination:
    status: str  # "some" | "none" | "infinite" | "inconclusive"
    vertex: Vertex | None = None
    candidates: tuple = ()

    @property
    def is_some(self) -> bool:
        return self.status == "some"


def uniquely_determined(oracle: LinkOracle, B: Iterable[Vertex]) -> Determination:
    """Evaluate whether the links of B intersect in exactly one vertex."""
    B = sorted(set(B))
    if not B:
        raise SimplicialGraphError("witness set must be nonempty")
    ans = oracle.common_neighbors(B)
    if ans is UNKNOWN:
        return Determination("inconclusive")
    if ans is INFINITE:
        return Determination("infinite")
    assert isinstance(ans, Finite)
    mem = ans.sorted_members()
    if len(mem) == 1:
        return Determination("some", vertex=mem[0])
    return Determination("none", candidates=tuple(mem))


@dataclass
class ExpansionResult:
    subset: VertexSubset
    certificates: list[ExpansionCertificate]
    diagnostics: list[str] = field(default_factory=list)
    final: bool = True
    steps_done: int = 0

    def step_of(self) -> dict:
        return {c.vertex: c.step for c in self.certificates}


def rigid_expansion_step(
    oracle: LinkOracle, Y: VertexSubset, step_index: int = 1
) -> ExpansionResult:
    """One expansion: adjoin every vertex uniquely determined by a subset of Y.

    Candidates come from the oracle; for each candidate v the maximal witness
    ``B = lk(v) & Y`` decides membership, which is equivalent to testing all
    subsets of Y (any successful witness is contained in the maximal one and
    determines a superset of its common neighbors).
    """
    if len(Y) == 0:
        raise SimplicialGraphError("rigid expansion of an empty subset")
    added: list[ExpansionCertificate] = []
    diagnostics: list[str] = []
    ymembers = set(Y.members)
    for v in oracle.expansion_candidates(Y):
        if v in ymembers:
            continue
        B = tuple(sorted(y for y in Y.members if oracle.adjacent(v, y)))
        if not B:
            continue
        det = uniquely_determined(oracle, B)
        if det.status == "inconclusive":
            diagnostics.append(f"inconclusive witness {B!r} for candidate {v!r}")
            continue
        if det.is_some and det.vertex == v:
            added.append(ExpansionCertificate(step_index, v, B))
    added.sort(key=lambda c: (c.step, c.vertex))
    new_subset = Y.with_added([c.vertex for c in added])
    return ExpansionResult(new_subset, added, diagnostics, final=not added, steps_done=1)


def rigid_expansion(
    oracle: LinkOracle,
    Y: VertexSubset,
    steps: int | None = None,
    max_vertices: int = 10000,
    max_steps: int = 64,
) -> ExpansionResult:
    """Iterated expansion up to ``steps`` (None: until a fixpoint).

    The result is monotone over Y and every added vertex carries a
    certificate chain back to Y.  If the budget is exhausted first, the
    result is flagged non-final.
    """
    if len(Y) == 0:
        raise SimplicialGraphError("rigid expansion of an empty subset")
    current = Y
    certs: list[ExpansionCertificate] = []
    diagnostics: list[str] = []
    k = 0
    limit = steps if steps is not None else max_steps
    while k < limit:
        k += 1
        res = rigid_expansion_step(oracle, current, step_index=k)
        certs.extend(res.certificates)
        diagnostics.extend(res.diagnostics)
        current = res.subset
        if res.final:
            return ExpansionResult(current, certs, diagnostics, final=True, steps_done=k)
        if len(current) > max_vertices:
            diagnostics.append(f"vertex budget {max_vertices} exhausted at step {k}")
            return ExpansionResult(current, certs, diagnostics, final=False, steps_done=k)
    if steps is not None:
        # Requested number of steps completed; finality means fixpoint reached.
        res = rigid_expansion_step(oracle, current, step_index=k + 1)
        return ExpansionResult(current, certs, diagnostics, final=res.final, steps_done=k)
    diagnostics.append(f"step budget {max_steps} exhausted before fixpoint")
    return ExpansionResult(current, certs, diagnostics, final=False, steps_done=k)


@dataclass(frozen=True)
class Automorphism:
    """Adjacency-preserving permutation of a graph's vertices."""

    mapping: tuple  # sorted tuple of (vertex, image)

    @classmethod
    def from_dict(cls, d: Mapping) -> "Automorphism":
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict:
        return dict(self.mapping)

    def __call__(self, v):
        return dict(self.mapping)[v]

    def apply(self, vs: Iterable) -> tuple:
        d = dict(self.mapping)
        return tuple(sorted(d[v] for v in vs))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: (self*other)(v) = self(other(v))."""
        d, e = dict(self.mapping), dict(other.mapping)
        return Automorphism.from_dict({v: d[e[v]] for v in e})

    def inverse(self) -> "Automorphism":
        return Automorphism.from_dict({img: v for v, img in self.mapping})

    def is_identity(self) -> bool:
        return all(v == img for v, img in self.mapping)


class AutomorphismLimitError(SimplicialGraphError):
    pass


def _refined_colors(G: SimplicialGraph) -> dict:
    """Stable vertex coloring: degree refined by neighbor multisets, then
    distance profiles per color class."""
    color = {v: G.degree(v) for v in G.vertices}
    while True:
        sig = {
            v: (color[v], tuple(sorted(color[w] for w in G.link(v))))
            for v in G.vertices
        }
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: palette[sig[v]] for v in G.vertices}
        if new == color:
            break
        color = new
    # Distance-profile refinement: multiset of (color, distance) pairs.
    dist = {v: G.distances_from(v) for v in G.vertices}
    sig2 = {}
    for v in G.vertices:
        prof = sorted((color[w], dist[v].get(w, -1)) for w in G.vertices)
        sig2[v] = (color[v], tuple(prof))
    palette = {s: i for i, s in enumerate(sorted(set(sig2.values())))}
    return {v: palette[sig2[v]] for v in G.vertices}


def _automorphism_search(
    G: SimplicialGraph,
    pinned: Mapping[Vertex, Vertex] | None = None,
    max_vertices: int = 64,
    max_count: int | None = None,
    stop_after: int | None = None,
) -> list[Automorphism]:
    if len(G) > max_vertices:
        raise AutomorphismLimitError(
            f"graph has {len(G)} vertices; automorphism search limited to {max_vertices}"
        )
    color = _refined_colors(G)
    order = sorted(G.vertices, key=lambda v: (color[v], v))
    pinned = dict(pinned or {})
    out: list[Automorphism] = []
    assignment: dict = {}
    used: set = set()

    def ok(v, img) -> bool:
        if color[v] != color[img]:
            return False
        for w, wimg in assignment.items():
            a = G.adjacent(v, w)
            if a != G.adjacent(img, wimg):
                return False
        return True

    def backtrack(i: int):
        if stop_after is not None and len(out) >= stop_after:
            return
        if max_count is not None and len(out) > max_count:
            return
        if i == len(order):
            out.append(Automorphism.from_dict(dict(assignment)))
            return
        v = order[i]
        if v in pinned:
            candidates = [pinned[v]]
        else:
            candidates = [u for u in G.vertices if u not in used]
        for img in sorted(candidates):
            if img in used or not ok(v, img):
                continue
            assignment[v] = img
            used.add(img)
            backtrack(i + 1)
            del assignment[v]
            used.discard(img)

    backtrack(0)
    if max_count is not None and len(out) > max_count:
        raise AutomorphismLimitError(f"more than {max_count} automorphisms")
    return sorted(out, key=lambda a: a.mapping)


def automorphism_group(
    G: SimplicialGraph, max_vertices: int = 64, max_count: int | None = 1000000
) -> list[Automorphism]:
    """The full automorphism group, deterministically ordered."""
    return _automorphism_search(G, None, max_vertices, max_count)


def pointwise_stabilizer(
    G: SimplicialGraph, Y: Iterable[Vertex], max_vertices: int = 64
) -> list[Automorphism]:
    """All automorphisms fixing every member of Y."""
    pins = {y: y for y in Y}
    return _automorphism_search(G, pins, max_vertices)


@dataclass(frozen=True)
class VertexMap:
    """A map from a vertex subset into the codomain oracle's graph."""

    domain: VertexSubset
    assignment: tuple  # sorted (vertex, image) pairs
    codomain: LinkOracle

    @classmethod
    def of(cls, domain: VertexSubset, mapping: Mapping, codomain: LinkOracle) -> "VertexMap":
        missing = [v for v in domain if v not in mapping]
        if missing:
            raise SimplicialGraphError(f"map not total on domain: missing {missing}")
        pairs = tuple(sorted((v, mapping[v]) for v in domain))
        return cls(domain, pairs, codomain)

    def __call__(self, v):
        return dict(self.assignment)[v]

    def as_dict(self) -> dict:
        return dict(self.assignment)

    def is_edge_preserving(self) -> bool:
        d = dict(self.assignment)
        ms = list(self.domain)
        for i, u in enumerate(ms):
            for v in ms[i + 1 :]:
                if self.domain.host.adjacent(u, v):
                    if d[u] == d[v] or not self.codomain.adjacent(d[u], d[v]):
                        return False
        return True


@dataclass(frozen=True)
class Conflict:
    vertex: Vertex
    witness: tuple
    reason: str
    details: tuple = ()


def propagate_edge_preserving(
    codomain: LinkOracle,
    Y: VertexSubset,
    f: VertexMap,
    certificates: Sequence[ExpansionCertificate],
) -> VertexMap | Conflict:
    """Forced extension of an edge-preserving map along expansion certificates.

    For each certificate ``v = <B>`` the image is the unique common neighbor
    of ``f(B)`` in the codomain; anything other than a singleton answer is a
    conflict naming v and B.
    """
    if not f.is_edge_preserving():
        raise SimplicialGraphError("map is not edge-preserving on its domain")
    images = f.as_dict()
    dom = set(Y.members)
    for cert in sorted(certificates, key=lambda c: (c.step, c.vertex)):
        if cert.vertex in images:
            continue
        missing = [b for b in cert.witness if b not in images]
        if missing:
            return Conflict(cert.vertex, cert.witness, "witness not yet mapped", tuple(missing))
        fB = sorted({images[b] for b in cert.witness})
        det = uniquely_determined(codomain, fB)
        if det.status == "inconclusive":
            return Conflict(cert.vertex, cert.witness, "inconclusive", tuple(fB))
        if det.status == "infinite":
            return Conflict(cert.vertex, cert.witness, "infinite image intersection", tuple(fB))
        if det.status == "none":
            return Conflict(cert.vertex, cert.witness, "image not uniquely determined", det.candidates)
        images[cert.vertex] = det.vertex
        dom.add(cert.vertex)
    newdom = VertexSubset.of(f.domain.host, dom)
    return VertexMap.of(newdom, images, codomain)


def is_locally_injective(G: SimplicialGraph, Y: Iterable[Vertex], f: Mapping) -> bool:
    """True iff f is injective on star(v) & Y for every v in Y."""
    ys = sorted(set(Y))
    yset = set(ys)
    for v in ys:
        if v not in f:
            raise SimplicialGraphError(f"map not total on Y: missing {v!r}")
    for v in ys:
        star = [v] + [w for w in G.link(v) if w in yset]
        images = [f[w] for w in star]
        if len(set(images)) != len(images):
            return False
    return True


def _simplicial_locally_injective_maps(
    G: SimplicialGraph, Y: Sequence[Vertex], budget: int
):
    """Yield all locally injective simplicial maps Y -> G (as dicts)."""
    ys = sorted(Y)
    yset = set(ys)
    # Order by component BFS for early constraint propagation.
    order: list = []
    seen: set = set()
    for start in ys:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in G.link(u):
                if w in yset and w not in seen:
                    seen.add(w)
                    queue.append(w)
    nodes = 0
    assignment: dict = {}

    def consistent(v, img) -> bool:
        for w, wimg in assignment.items():
            if G.adjacent(v, w):
                # Simplicial and locally injective: edges map to edges.
                if img == wimg or not G.adjacent(img, wimg):
                    return False
            elif img == wimg:
                # Local injectivity: a shared star point forbids collisions.
                if set(G.link(v)) & set(G.link(w)) & yset:
                    return False
        # Injectivity on star(v) & Y is rechecked globally at the end.
        return True

    results: list[dict] = []

    def backtrack(i: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return
        if i == len(order):
            cand = dict(assignment)
            if is_locally_injective(G, ys, cand):
                results.append(cand)
            return
        v = order[i]
        for img in G.vertices:
            if consistent(v, img):
                assignment[v] = img
                backtrack(i + 1)
                del assignment[v]

    backtrack(0)
    return results, nodes > budget


@dataclass
class RigidityVerdict:
    status: str  # "rigid" | "not_rigid" | "budget_exceeded"
    witness: dict | None = None
    maps_checked: int = 0


def is_rigid(
    Y: Iterable[Vertex], G: SimplicialGraph, budget: int = 200000
) -> RigidityVerdict:
    """Decide whether Y is a rigid set of G by exhaustive map enumeration.

    Rigid means every locally injective simplicial map Y -> G extends to an
    automorphism of G (uniqueness up to the pointwise stabilizer is then
    automatic, since two extensions agreeing on Y differ by a stabilizer
    element).
    """
    ys = sorted(set(Y))
    if not ys:
        raise SimplicialGraphError("rigidity of the empty set is not defined")
    maps, exceeded = _simplicial_locally_injective_maps(G, ys, budget)
    if exceeded:
        return RigidityVerdict("budget_exceeded", maps_checked=len(maps))
    for f in maps:
        ext = _automorphism_search(G, pinned=f, stop_after=1)
        if not ext:
            return RigidityVerdict("not_rigid", witness=f, maps_checked=len(maps))
    return RigidityVerdict("rigid", maps_checked=len(maps))
