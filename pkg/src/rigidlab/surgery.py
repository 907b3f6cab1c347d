"""Cut-and-classify machinery for curve systems.

All operations run on taut overlays: cutting a surface along a system
yields the complement regions with exact topological data (genus, boundary
circles, punctures), each boundary circle readable as an ambient curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .curves import Curve, CurveError, curve, intersection_number, tighten
from .overlay import Overlay, Region
from .oracles import INFINITE, Answer, finite
from .rose import SurfaceModel, SurfaceType, Word


class SurgeryError(ValueError):
    pass


def _model_of(curves: Sequence[Curve]) -> SurfaceModel:
    if not curves:
        raise SurgeryError("empty curve system")
    model = curves[0].model
    for c in curves:
        if c.model is not model:
            raise SurgeryError("curves on different surfaces")
    return model


def system_overlay(curves: Sequence[Curve]) -> Overlay:
    model = _model_of(curves)
    cache = getattr(model, "_rigidlab_sys_cache", None)
    if cache is None:
        cache = {}
        model._rigidlab_sys_cache = cache
    key = tuple(c.word for c in curves)
    if key not in cache:
        cache[key] = tighten(model, list(key))
    return cache[key]


def boundary_class(model: SurfaceModel, word: Word) -> Curve | None:
    """Ambient class of a region boundary circle; None if inessential."""
    w = model.reduce(word)
    if not w or model.is_peripheral(w):
        return None
    return curve(model, w)


@dataclass
class CutComponent:
    surface: SurfaceType
    boundary_classes: list  # Curve or None per boundary circle
    boundary_sources: list  # frozenset of cut-curve indices per circle
    punctures: tuple
    contains: frozenset
    region: Region


@dataclass
class CutResult:
    model: SurfaceModel
    curves: list
    components: list

    def euler_total(self) -> int:
        return sum(c.region.chi for c in self.components)

    def component_types(self) -> list:
        return sorted(
            (c.surface.g, c.surface.b, c.surface.n) for c in self.components
        )


def is_multicurve(curves: Sequence[Curve]) -> bool:
    for i, a in enumerate(curves):
        for b in curves[i + 1 :]:
            if a.word == b.word or intersection_number(a, b) != 0:
                return False
    return True


def cut_along(curves: Sequence[Curve], require_multicurve: bool = True) -> CutResult:
    """Complement components of the union, classified by (g, b, n)."""
    model = _model_of(curves)
    if require_multicurve and not is_multicurve(curves):
        raise SurgeryError("cut system is not a multicurve")
    ov = system_overlay(curves)
    comps = []
    for region in ov.regions(set(range(len(curves)))):
        classes = []
        sources = []
        for circ in region.boundary:
            classes.append(boundary_class(model, circ.word))
            sources.append(circ.curves)
        comps.append(
            CutComponent(
                surface=region.surface_type(),
                boundary_classes=classes,
                boundary_sources=sources,
                punctures=region.punctures,
                contains=region.contains_curves,
                region=region,
            )
        )
    return CutResult(model, list(curves), comps)


def classify_curve(c: Curve) -> str:
    """nonseparating | outer | nonouter-separating, by cutting."""
    cache = getattr(c.model, "_rigidlab_class_cache", None)
    if cache is None:
        cache = {}
        c.model._rigidlab_class_cache = cache
    if c.word in cache:
        return cache[c.word]
    res = cut_along([c])
    if len(res.components) == 1:
        out = "nonseparating"
    else:
        assert len(res.components) == 2
        kinds = [(k.surface.g, k.surface.b, k.surface.n) for k in res.components]
        out = "outer" if (0, 1, 2) in kinds else "nonouter-separating"
    cache[c.word] = out
    return out


def is_separating(c: Curve) -> bool:
    return classify_curve(c) != "nonseparating"


def fills(curves: Sequence[Curve]) -> bool:
    """True iff the complement is all discs and once-punctured discs."""
    ov = system_overlay(curves)
    for region in ov.regions(set(range(len(curves)))):
        if not (
            region.genus == 0
            and region.boundary_count == 1
            and region.puncture_count <= 1
        ):
            return False
    return True


def regular_neighborhood_boundary(
    curves: Sequence[Curve], with_diagnostics: bool = False
):
    """Essential boundary classes of a closed regular neighborhood."""
    model = _model_of(curves)
    ov = system_overlay(curves)
    out = []
    dropped = 0
    for region in ov.regions(set(range(len(curves)))):
        for circ in region.boundary:
            cls = boundary_class(model, circ.word)
            if cls is None:
                dropped += 1
            else:
                out.append(cls)
    dedup = sorted(set(out))
    if with_diagnostics:
        return dedup, {"inessential_dropped": dropped, "raw": len(out)}
    return dedup


def neighborhood_type(curves: Sequence[Curve]) -> SurfaceType:
    """Type of the filled neighborhood: N(union) with trivial complement
    pieces (discs, once-punctured discs) capped in."""
    model = _model_of(curves)
    ov = system_overlay(curves)
    regs = ov.regions(set(range(len(curves))))
    chi = model.surface.euler_characteristic() - sum(r.chi for r in regs)
    b = sum(r.boundary_count for r in regs)
    n = 0
    for r in regs:
        if r.genus == 0 and r.boundary_count == 1:
            if r.puncture_count == 0:
                chi += 1
                b -= 1
            elif r.puncture_count == 1:
                chi += 0
                b -= 1
                n += 1
    g2 = 2 - chi - b - n
    assert g2 % 2 == 0 and g2 >= 0
    return SurfaceType(g2 // 2, n, b)


def farey_neighbor_type(a: Curve, b: Curve) -> str | None:
    """'toroidal' or 'spherical' when the pair fills a complexity-one piece."""
    i = intersection_number(a, b)
    if i not in (1, 2):
        return None
    t = neighborhood_type([a, b])
    if t.complexity != 1:
        return None
    if i == 1 and t.g == 1:
        return "toroidal"
    if i == 2 and t.g == 0:
        return "spherical"
    return None


def is_chain(seq: Sequence[Curve]) -> tuple[str, int]:
    """Checks the chain intersection pattern; returns (kind, length)."""
    n = len(seq)
    if n < 2:
        return ("neither", n)
    if len({c.word for c in seq}) != n:
        return ("neither", n)
    mat = {}
    for i in range(n):
        for j in range(i + 1, n):
            mat[(i, j)] = intersection_number(seq[i], seq[j])
    def entry(i, j):
        i, j = min(i, j), max(i, j)
        return mat[(i, j)]
    open_ok = all(
        entry(i, j) == (1 if j - i == 1 else 0)
        for i in range(n)
        for j in range(i + 1, n)
    )
    closed_ok = n >= 3 and all(
        entry(i, j) == (1 if (j - i == 1 or (i == 0 and j == n - 1)) else 0)
        for i in range(n)
        for j in range(i + 1, n)
    )
    if closed_ok:
        return ("closed-chain", n)
    if open_ok:
        return ("chain", n)
    return ("neither", n)


def pants_decomposition_check(curves: Sequence[Curve]) -> bool:
    model = _model_of(curves)
    if len(curves) != model.surface.complexity:
        return False
    if not is_multicurve(curves):
        return False
    res = cut_along(curves)
    return all(
        c.surface.g == 0 and c.surface.b + c.surface.n == 3 and c.surface.b >= 1
        for c in res.components
    )


def adjacency_graph(curves: Sequence[Curve], labels: Sequence[str] | None = None):
    """Adjacency graph of a pants decomposition: edges join curves bounding
    a common induced pair of pants."""
    from .simplicial import SimplicialGraph

    if not pants_decomposition_check(curves):
        raise SurgeryError("not a pants decomposition")
    if labels is None:
        labels = [c.label or f"c{i}" for i, c in enumerate(curves)]
    if len(set(labels)) != len(labels):
        raise SurgeryError("ambiguous curve labels")
    res = cut_along(curves)
    edges = set()
    for comp in res.components:
        idxs = sorted({i for src in comp.boundary_sources for i in src})
        for x in range(len(idxs)):
            for y in range(x + 1, len(idxs)):
                edges.add((labels[idxs[x]], labels[idxs[y]]))
    graph = SimplicialGraph(labels, sorted(edges))
    return graph, dict(zip(labels, curves))


def pants_relations(a: Curve, b: Curve, c: Curve | None = None) -> dict:
    """Peripheral-pair and bounds-a-pants predicates for disjoint curves."""
    out = {}
    system = [a, b] + ([c] if c is not None else [])
    if not is_multicurve(system):
        raise SurgeryError("curves must be pairwise disjoint and distinct")
    res2 = cut_along([a, b])
    peripheral = False
    if classify_curve(a) == "nonseparating" and classify_curve(b) == "nonseparating":
        for comp in res2.components:
            if (
                comp.surface.g == 0
                and comp.surface.b == 2
                and comp.surface.n == 1
                and {frozenset(s) for s in comp.boundary_sources} == {frozenset({0}), frozenset({1})}
            ):
                peripheral = True
    out["peripheral_pair"] = peripheral
    if c is not None:
        res3 = cut_along([a, b, c])
        bounds = False
        for comp in res3.components:
            if comp.surface.g == 0 and comp.surface.b == 3 and comp.surface.n == 0:
                srcs = sorted(min(s) for s in comp.boundary_sources if s)
                if srcs == [0, 1, 2]:
                    bounds = True
        out["bounds_pants"] = bounds
    return out


def bounds_pants(a: Curve, b: Curve, c: Curve) -> bool:
    return pants_relations(a, b, c)["bounds_pants"]


def exact_common_disjoint(B: Sequence[Curve]) -> Answer:
    """All essential curves disjoint from every member of B, decided by
    cutting: infinite when a complement region has complexity at least one,
    else the essential boundary classes of the regions minus B itself."""
    model = _model_of(B)
    dedup: dict[Word, Curve] = {c.word: c for c in B}
    system = sorted(dedup.values())
    ov = system_overlay(system)
    regs = ov.regions(set(range(len(system))))
    for r in regs:
        if r.complexity >= 1:
            return INFINITE
    found = {}
    for r in regs:
        for circ in r.boundary:
            cls = boundary_class(model, circ.word)
            if cls is not None and cls.word not in dedup:
                found[cls.word] = cls
    return finite(found.values())


def region_containing(ov_curves: Sequence[Curve], cut_idx: Iterable[int], member_idx: int):
    """Region of the cut that contains the drawing of another system curve."""
    ov = system_overlay(ov_curves)
    for region in ov.regions(set(cut_idx)):
        if member_idx in region.contains_curves:
            return region
    raise SurgeryError("curve not found in any region")


def irmak_configuration_check(
    curves7: Sequence[Curve], pattern: dict | None
) -> bool:
    """Seven-curve certificate for intersection number one.

    `pattern` maps index pairs (i, j), 1-based, to 0 (disjoint) or 1
    (intersecting once); missing pairs are unconstrained.  The fixed part
    of the test: all curves distinct and nonseparating, removing curves 5
    and 6 leaves a genus-one component with two boundary circles containing
    curves 1 and 2, and {1,3,5} and {1,3,6} bound pants.
    """
    if len(curves7) != 7:
        raise SurgeryError("need exactly seven curves")
    if len({c.word for c in curves7}) != 7:
        return False
    if any(classify_curve(c) != "nonseparating" for c in curves7):
        return False
    if pattern:
        for (i, j), want in sorted(pattern.items()):
            got = intersection_number(curves7[i - 1], curves7[j - 1])
            if want == 0 and got != 0:
                return False
            if want == 1 and got != 1:
                return False
    c1, c2, c3, c4, c5, c6, c7 = curves7
    if intersection_number(c5, c6) != 0 or c5.word == c6.word:
        return False
    ov_curves = [c5, c6, c1, c2]
    try:
        ov = system_overlay(ov_curves)
    except Exception:
        return False
    regs = ov.regions({0, 1})
    if len(regs) < 2:
        return False
    good = False
    for r in regs:
        if (
            r.genus == 1
            and r.boundary_count == 2
            and r.puncture_count == 0
            and {2, 3} <= set(r.contains_curves)
        ):
            good = True
    if not good:
        return False
    try:
        if not bounds_pants(c1, c3, c5):
            return False
        if not bounds_pants(c1, c3, c6):
            return False
    except SurgeryError:
        return False
    return True
