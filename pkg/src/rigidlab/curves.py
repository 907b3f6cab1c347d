"""Curves on a modeled surface: validation, intersections, twists.

A Curve is an isotopy class of essential simple closed curves, named by a
canonical cyclic word on the surface's rose.  On punctured surfaces the
reduced cyclic word is a complete invariant.  On closed surfaces the word
lives on the marked model; crossing counts computed there may exceed the
true geometric intersection by bigons containing the marked point, so all
geometric queries first tighten drawings by dissolving marked bigons
(homotopies across the marked disc, which do not change closed-surface
classes).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .overlay import Overlay, OverlayError, Region
from .rose import SurfaceModel, Word, cyclic_reduce, inverse_word

MAX_TIGHTEN_ROUNDS = 400


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    model: SurfaceModel
    word: Word  # canonical unoriented form
    label: str | None = None

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and self.model is other.model
            and self.word == other.word
        )

    def __hash__(self):
        return hash((id(self.model), self.word))

    def __lt__(self, other):
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __repr__(self):
        tag = self.label or "curve"
        return f"{tag}{list(self.word)}"

    def relabel(self, label: str) -> "Curve":
        return Curve(self.model, self.word, label)

    def to_dict(self) -> dict:
        return {
            "surface": {"g": self.model.g, "n": self.model.n},
            "cellulation": self.model.cellulation_id,
            "coords": list(self.word),
            "label": self.label,
        }


def curve(model: SurfaceModel, word: Sequence[int], label: str | None = None) -> Curve:
    """Validate and canonicalize an essential simple closed curve."""
    w = model.reduce(word)
    if not w:
        raise CurveError(f"word {tuple(word)!r} is null-homotopic")
    if model.is_peripheral(w):
        raise CurveError(f"word {tuple(word)!r} is puncture-parallel")
    if not model.is_primitive(w):
        raise CurveError(f"word {tuple(word)!r} is a proper power")
    if tighten(model, [w]).self_crossings(0) != 0:
        raise CurveError(f"word {tuple(word)!r} is not a simple closed curve")
    return Curve(model, model.canonical(w), label)


def _scan_bigons(ov: Overlay) -> tuple:
    """Locate an empty bigon (order surgery) or a marked bigon (rewrite)."""
    plain = None
    marked = None
    for region in ov.regions(set(range(len(ov.words)))):
        if not (
            region.chi == 1
            and region.boundary_count == 1
            and region.boundary[0].corners == 2
            and region.puncture_count == 0
        ):
            continue
        if region.marked:
            if marked is None:
                marked = region
        elif plain is None:
            plain = region
    return plain, marked


def _bigon_order_surgery(ov: Overlay, region: Region) -> dict:
    """Dissolve an empty bigon by swapping the two parallel sides' strands."""
    trail = region.boundary[0].trail
    run1, run2 = _runs_between_corners(trail, ov.crossing_nodes)
    s1 = [t[2] for t in run1 if t[0] == "strand"]
    s2 = [t[2] for t in run2 if t[0] == "strand"]
    if len(s1) != len(s2):
        raise OverlayError(f"bigon sides traverse {len(s1)} vs {len(s2)} bands")
    orders = {p: list(lst) for p, lst in ov.band_order.items()}
    for a, b in zip(s1, reversed(s2)):
        pa = abs(ov.words[a[0]][a[1]]) - 1
        pb = abs(ov.words[b[0]][b[1]]) - 1
        if pa != pb:
            raise OverlayError("bigon sides traverse different bands")
        lst = orders[pa]
        ia, ib = lst.index(a), lst.index(b)
        if abs(ia - ib) != 1:
            raise OverlayError("bigon sides not adjacent in band")
        lst[ia], lst[ib] = lst[ib], lst[ia]
    return orders


def _runs_between_corners(trail: tuple, crossing_nodes: set) -> list[list]:
    n = len(trail)
    corner_after = [
        a
        for a in range(n)
        if trail[a][4] in crossing_nodes and trail[a][2] != trail[(a + 1) % n][2]
    ]
    assert len(corner_after) == 2, corner_after
    a, b = corner_after
    run1 = [trail[(a + 1 + i) % n] for i in range((b - a) % n)]
    run2 = [trail[(b + 1 + i) % n] for i in range((a - b) % n)]
    return [run1, run2]


def _bigon_rewrite_data(ov: Overlay, region: Region) -> tuple:
    trail = region.boundary[0].trail
    run1, run2 = _runs_between_corners(trail, ov.crossing_nodes)
    alpha_run, beta_run = run1, run2
    beta_curve = beta_run[0][1]
    assert all(t[1] == beta_curve for t in beta_run)
    alpha_path = tuple(t[3] for t in alpha_run if t[3] is not None)
    beta_letters = [(t[2][1], t[3]) for t in beta_run if t[3] is not None]
    return (beta_curve, beta_letters, alpha_path, beta_run)


def _apply_bigon_rewrite(ov: Overlay, data: tuple) -> list[Word]:
    """Push the beta side of a marked bigon across the marked disc."""
    model = ov.model
    words = list(ov.words)
    beta_curve, beta_letters, alpha_path, beta_run = data
    w = words[beta_curve]
    replacement = inverse_word(alpha_path)
    if not beta_letters:
        # The beta side stays inside the disc within a single visit (i,k):
        # insert the replacement after letter k.
        visit = beta_run[0][2]
        k = visit[1]
        new = w[: k + 1] + replacement + w[k + 1 :]
    else:
        positions = [k for (k, _) in beta_letters]
        dirn = 1 if beta_letters[0][1] == w[positions[0]] else -1
        if dirn == -1:
            # Re-read the word against its orientation so the beta run is
            # forward; the replacement path is frame independent.
            m = len(w)
            w = inverse_word(w)
            positions = [m - 1 - k for k in reversed(positions)]
        start, m = positions[0], len(w)
        length = len(positions)
        expected = [(start + i) % m for i in range(length)]
        if positions != expected:
            raise OverlayError(f"bigon run positions not consecutive: {positions}")
        rest = [w[(start + length + i) % m] for i in range(m - length)]
        new = replacement + tuple(rest)
    out = model.reduce(new)
    if not out:
        raise OverlayError("bigon rewrite collapsed a curve")
    words[beta_curve] = out
    return words


def tighten(model: SurfaceModel, words: Sequence[Word]) -> Overlay:
    """Overlay the words and dissolve all bigons.

    Empty bigons are drawing artifacts and are removed by swapping the two
    parallel sides in their shared bands; bigons containing the marked
    point of a closed surface are removed by pushing one side across the
    marked disc, which rewrites a word without changing its class on the
    closed surface.  The result has no bigons at all, hence is a minimal
    position of the system, pairwise.
    """
    words = [model.reduce(w) for w in words]
    ov = Overlay(model, words)
    crossings = ov.total_crossings()
    for _ in range(MAX_TIGHTEN_ROUNDS):
        plain, marked = _scan_bigons(ov)
        if plain is not None:
            orders = _bigon_order_surgery(ov, plain)
            ov = Overlay(model, ov.words, band_orders=orders)
        elif marked is not None:
            data = _bigon_rewrite_data(ov, marked)
            new_words = _apply_bigon_rewrite(ov, data)
            ov = Overlay(model, new_words)
        else:
            return ov
        now = ov.total_crossings()
        if now > crossings - 2:
            raise OverlayError("bigon dissolution failed to make progress")
        crossings = now
    raise OverlayError("tightening did not terminate")


def _tighten(model: SurfaceModel, words: Sequence[Word]) -> list[Word]:
    return list(tighten(model, words).words)


def taut_overlay(curves: Sequence[Curve], labels_words: Sequence[Word] | None = None) -> Overlay:
    """A pairwise-taut overlay of the given curves (shared model)."""
    model = curves[0].model
    for c in curves:
        if c.model is not model:
            raise CurveError("curves live on different surface models")
    words = list(labels_words) if labels_words is not None else [c.word for c in curves]
    return tighten(model, words)


def intersection_number(a: Curve, b: Curve) -> int:
    if a.model is not b.model:
        raise CurveError("curves on different surfaces")
    if a.word == b.word:
        return 0
    key = ("i", a.word, b.word) if a.word <= b.word else ("i", b.word, a.word)
    cache = _model_cache(a.model)
    if key not in cache:
        ov = taut_overlay([a, b])
        cache[key] = ov.crossings_between(0, 1)
    return cache[key]


def disjoint(a: Curve, b: Curve) -> bool:
    return a.word != b.word and intersection_number(a, b) == 0


def _model_cache(model: SurfaceModel) -> dict:
    cache = getattr(model, "_rigidlab_cache", None)
    if cache is None:
        cache = {}
        model._rigidlab_cache = cache
    return cache


def dehn_twist(alpha: Curve, beta: Curve, k: int = 1) -> Curve:
    """Canonical form of the k-fold twist of beta along alpha."""
    if k == 0:
        return beta
    model = alpha.model
    if beta.model is not model:
        raise CurveError("curves on different surfaces")
    if alpha.word == beta.word:
        return beta
    cache = _model_cache(model)
    key = ("tw", alpha.word, beta.word, k)
    if key in cache:
        return Curve(model, cache[key], beta.label)
    ov = taut_overlay([alpha, beta])
    wa, wb = ov.words
    if ov.crossings_between(0, 1) == 0:
        cache[key] = beta.word
        return beta

    # Each crossing inserts a rotated copy of alpha into beta, with the
    # direction set by the local crossing sign.
    insertions: dict[int, list] = {}
    chord_of = {v: idx for idx, (x, y, v) in enumerate(ov.chords)}
    for (ci, cj), data in sorted(ov.crossings.items()):
        v1, v2 = data["visits"]
        if v1[0] == v2[0]:
            continue
        (va, vb) = (v1, v2) if v1[0] == 0 else (v2, v1)
        ca_idx, cb_idx = chord_of[va], chord_of[vb]
        a1, b1, _ = ov.chords[ca_idx]
        a2, b2, _ = ov.chords[cb_idx]
        pa1, pb1 = ov.node_pts[a1], ov.node_pts[b1]
        pa2, pb2 = ov.node_pts[a2], ov.node_pts[b2]
        da = (pb1[0] - pa1[0], pb1[1] - pa1[1])
        db = (pb2[0] - pa2[0], pb2[1] - pa2[1])
        cross = db[0] * da[1] - db[1] * da[0]  # beta direction vs alpha direction
        assert cross != 0
        sign = 1 if cross > 0 else -1
        node = data["node"]
        pt = ov.node_pts[node]
        if pb2[0] != pa2[0]:
            t = (pt[0] - pa2[0]) / (pb2[0] - pa2[0])
        else:
            t = (pt[1] - pa2[1]) / (pb2[1] - pa2[1])
        rotated = wa[va[1] + 1 :] + wa[: va[1] + 1]
        ins = rotated if sign * k > 0 else inverse_word(rotated)
        insertions.setdefault(vb[1], []).append((t, ins))

    reps = abs(k)
    pieces: list[int] = []
    for pos in range(len(wb)):
        pieces.append(wb[pos])
        for t, ins in sorted(insertions.get(pos, []), key=lambda x: x[0]):
            pieces.extend(list(ins) * reps)
    result = model.reduce(tuple(pieces))
    if not result:
        raise CurveError("twist produced a trivial word")
    out = curve(model, result, beta.label)
    cache[key] = out.word
    return out


def twist_word(pairs: Sequence[tuple[Curve, int]], target: Curve) -> Curve:
    """Apply a composition of twists (leftmost acts last) to a curve."""
    out = target
    for alpha, k in reversed(list(pairs)):
        out = dehn_twist(alpha, out, k)
    return out
