"""Standard surface models with their chain and fan curve systems.

The curve words below were found by constrained search over the rose
models and are frozen as the standard embedding; every builder re-validates
the defining intersection pattern at construction time, so a wrong
constant cannot survive silently.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .curves import Curve, curve, intersection_number
from .rose import SurfaceModel, SurfaceType, Word, inverse_word, rotations
from .surgery import SurgeryError, cut_along, is_chain


class BuildError(ValueError):
    pass


@lru_cache(maxsize=None)
def standard_model(g: int, n: int) -> SurfaceModel:
    return SurfaceModel(g, n)


def closed_chain_words(g: int) -> list[Word]:
    """The maximal closed chain alpha_0..alpha_{2g+1} on S_{g,0}."""
    if g < 2:
        raise BuildError("closed chains need genus >= 2")
    words: list[Word] = [(1,), (2,)]
    for i in range(1, g):
        words.append((-3, -1) if i == 1 else (-(2 * i + 1), -(2 * i), 2 * i - 1, 2 * i))
        words.append((2 * i + 2,))
    words.append((2 * g - 1,))
    words.append(tuple(-(2 * k) for k in range(g, 1, -1)) + (1, 2, -1))
    return words


def open_chain_words(g: int) -> list[Word]:
    """The chain alpha_1..alpha_{2g+1} shared by all punctured models."""
    return closed_chain_words(g)[:-1]


def _closing_word(g: int) -> Word:
    return closed_chain_words(g)[-1]


def closed_chain(model: SurfaceModel) -> list[Curve]:
    """Validated maximal closed chain on a closed surface."""
    if not model.closed:
        raise BuildError("closed chain requested on a punctured model")
    chain = [
        curve(model, w, f"alpha_{i}")
        for i, w in enumerate(closed_chain_words(model.g))
    ]
    kind, length = is_chain(chain)
    if kind != "closed-chain" or length != 2 * model.g + 2:
        raise BuildError(f"chain constants invalid for g={model.g}: {kind}/{length}")
    return chain


def _fan_condition(chain: Sequence[Curve], c: Curve) -> bool:
    if intersection_number(c, chain[0]) != 1:
        return False
    if intersection_number(c, chain[-1]) != 1:
        return False
    return all(intersection_number(c, mid) == 0 for mid in chain[1:-1])


def _fan_candidates(model: SurfaceModel, chain: Sequence[Curve]) -> list[Curve]:
    """Closing curves of the punctured chain, one per puncture corridor.

    The fan consists of the base closing word, its parallel pushes across
    the small-face punctures (prepending a puncture-petal letter), and one
    push across the big-face puncture found by splicing a boundary-word
    rotation into the base.
    """
    from .curves import CurveError
    from .overlay import OverlayError

    g, n = model.g, model.n
    base = _closing_word(g)
    fan: list[Curve] = [curve(model, base)]
    for j in range(1, n):
        fan.append(curve(model, (-(2 * g + j),) + base))
    for c in fan:
        if not _fan_condition(chain, c):
            raise BuildError(f"fan constant {c.word} fails the closing pattern")

    def disjoint_from_all(c: Curve) -> bool:
        return all(
            c.word != o.word and intersection_number(c, o) == 0 for o in fan
        )

    R = model.relator
    push = None
    for rot_w in rotations(base):
        for rot_r in list(rotations(R)) + list(rotations(inverse_word(R))):
            for cut in range(len(rot_w) + 1):
                cand = rot_w[:cut] + rot_r + rot_w[cut:]
                try:
                    c = curve(model, cand)
                except (CurveError, OverlayError):
                    continue
                if _fan_condition(chain, c) and disjoint_from_all(c):
                    push = c
                    break
            if push is not None:
                break
        if push is not None:
            break
    if push is None:
        raise BuildError("no big-face push completes the fan")
    return fan + [push]


def _order_fan(model: SurfaceModel, fans: list[Curve]) -> list[Curve]:
    """Linear order of the fan by the once-punctured corridor components."""
    if len(fans) == 1:
        return fans
    res = cut_along(fans)
    adjacency: dict[int, set] = {i: set() for i in range(len(fans))}
    for comp in res.components:
        if (
            comp.surface.g == 0
            and comp.surface.b == 2
            and comp.surface.n == 1
        ):
            idxs = sorted({i for src in comp.boundary_sources for i in src})
            if len(idxs) == 2:
                adjacency[idxs[0]].add(idxs[1])
                adjacency[idxs[1]].add(idxs[0])
    ends = sorted(i for i, nb in adjacency.items() if len(nb) == 1)
    if len(ends) != 2:
        raise BuildError(f"fan corridor structure broken: ends {ends}")
    start = min(ends, key=lambda i: fans[i].word)
    order = [start]
    while len(order) < len(fans):
        nxt = [j for j in adjacency[order[-1]] if j not in order]
        if len(nxt) != 1:
            raise BuildError("fan corridor is not a path")
        order.append(nxt[0])
    return [fans[i] for i in order]


def punctured_chain(model: SurfaceModel) -> tuple[list[Curve], list[Curve]]:
    """The chain C_0 = alpha_1..alpha_{2g+1} and the ordered fan
    alpha_0^0..alpha_0^n closing it through the puncture corridors."""
    if model.closed:
        raise BuildError("punctured chain requested on a closed model")
    g, n = model.g, model.n
    chain = [
        curve(model, w, f"alpha_{i + 1}")
        for i, w in enumerate(open_chain_words(g))
    ]
    kind, length = is_chain(chain)
    if kind != "chain" or length != 2 * g + 1:
        raise BuildError(f"open chain constants invalid: {kind}/{length}")
    chosen = _fan_candidates(model, chain)
    if len(chosen) != n + 1 or not all(
        intersection_number(x, y) == 0
        for i, x in enumerate(chosen)
        for y in chosen[i + 1 :]
    ):
        raise BuildError(
            f"could not assemble a fan of {n + 1} disjoint closing curves"
        )
    ordered = _order_fan(model, chosen)
    fan = [c.relabel(f"alpha_0^{i}") for i, c in enumerate(ordered)]
    for f in fan:
        ck, cl = is_chain([f] + chain)
        if ck != "closed-chain":
            raise BuildError(f"fan curve {f.label} does not close the chain")
    return chain, fan
