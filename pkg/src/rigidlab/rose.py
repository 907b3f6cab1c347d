"""One-vertex ribbon-graph models of surfaces and cyclic-word calculus.

A surface S_{g,n} is presented by a rose with r petals and a cyclic order
(rotation) of the 2r petal ends around the single vertex.  Petal k is
traversed by the letters +(k+1) and -(k+1).  The complement of a thickened
rose is a disjoint union of discs, one per boundary word of the ribbon
structure: for punctured surfaces these discs carry the punctures, for a
closed surface the unique disc carries a marked point and its boundary word
is the defining relator.

Essential curves are cyclically reduced cyclic words: conjugacy classes in
the free group for punctured surfaces, and relator-reduced classes for
closed surfaces (two reduced cyclic words name the same curve exactly when
related by rotations and half-relator exchanges).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Word = tuple[int, ...]


class RoseError(ValueError):
    pass


def inv(letter: int) -> int:
    return -letter


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def min_rotation(w: Sequence[int]) -> Word:
    return min(rotations(w)) if w else ()


class Rose:
    """Ribbon rose: petal count plus the rotation of petal-end ports.

    Port 2k is the departure end of letter +(k+1) (and arrival of -(k+1));
    port 2k+1 is the arrival end of +(k+1) (departure of -(k+1)).
    """

    def __init__(self, petals: int, rotation: Sequence[int]):
        if sorted(rotation) != list(range(2 * petals)):
            raise RoseError("rotation must be a permutation of the 2r ports")
        self.petals = petals
        self.rotation = tuple(rotation)
        self._pos = {p: i for i, p in enumerate(self.rotation)}
        self.faces = self._trace_faces()

    @staticmethod
    def departure_port(letter: int) -> int:
        return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1

    @staticmethod
    def arrival_port(letter: int) -> int:
        return 2 * (letter - 1) + 1 if letter > 0 else 2 * (-letter - 1)

    @staticmethod
    def letter_departing(port: int) -> int:
        return port // 2 + 1 if port % 2 == 0 else -(port // 2 + 1)

    def port_position(self, port: int) -> int:
        return self._pos[port]

    def ccw_from(self, base_port: int, port: int) -> int:
        """Cyclic distance from base_port to port around the vertex."""
        n = 2 * self.petals
        return (self._pos[port] - self._pos[base_port]) % n

    def _trace_faces(self) -> list[Word]:
        n = 2 * self.petals
        letters = [k + 1 for k in range(self.petals)] + [-(k + 1) for k in range(self.petals)]
        nxt = {}
        for ell in letters:
            a = self.arrival_port(ell)
            succ = self.rotation[(self._pos[a] + 1) % n]
            nxt[ell] = self.letter_departing(succ)
        faces = []
        seen = set()
        for start in sorted(letters):
            if start in seen:
                continue
            cyc = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = nxt[cur]
            faces.append(tuple(cyc))
        return faces

    def euler_characteristic(self) -> int:
        return 1 - self.petals


@dataclass(frozen=True)
class SurfaceType:
    """Topological type (genus, punctures, boundary components)."""

    g: int
    n: int
    b: int = 0

    @property
    def complexity(self) -> int:
        return 3 * self.g - 3 + self.n + self.b

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g - self.n - self.b

    def __str__(self):
        if self.b:
            return f"S_{{{self.g},{self.n}}}+{self.b}b"
        return f"S_{{{self.g},{self.n}}}"


def complexity(s: SurfaceType) -> int:
    return s.complexity


class SurfaceModel:
    """A rose presentation of S_{g,n} with puncture/marking bookkeeping."""

    def __init__(self, g: int, n: int):
        if g < 0 or n < 0:
            raise RoseError("invalid surface signature")
        if g == 0 and n < 3:
            raise RoseError("genus-zero models need at least three punctures")
        if g == 1 and n == 0:
            raise RoseError("the closed torus is out of modeling range")
        if g >= 2 or (g == 1 and n >= 1) or (g == 0 and n >= 3):
            pass
        self.surface = SurfaceType(g, n)
        self.g, self.n = g, n
        r = 2 * g + max(n - 1, 0)
        rotation: list[int] = []
        for i in range(g):
            a, b = 2 * i, 2 * i + 1
            rotation += [2 * a, 2 * b, 2 * a + 1, 2 * b + 1]
        for j in range(max(n - 1, 0)):
            c = 2 * g + j
            rotation += [2 * c, 2 * c + 1]
        self.rose = Rose(r, rotation)
        faces = self.rose.faces
        expected_faces = 1 if n == 0 else n
        if len(faces) != expected_faces:
            raise RoseError(
                f"rotation yields {len(faces)} boundary words, expected {expected_faces}"
            )
        self.closed = n == 0
        # Face bookkeeping: small faces are single puncture-petal letters,
        # the big face is the remaining boundary word.
        small = {f for f in faces if len(f) == 1}
        big = [f for f in faces if len(f) > 1]
        assert len(big) == 1
        self.relator: Word = big[0]
        self.face_words = faces
        if self.closed:
            self.puncture_of_face = {faces.index(self.relator): None}  # marked face
            self.marked_face_index = faces.index(self.relator)
        else:
            self.puncture_of_face = {}
            self.marked_face_index = None
            # Puncture 0 lives on the big face; petal c_j small face is 1+j.
            for idx, f in enumerate(faces):
                if f == self.relator:
                    self.puncture_of_face[idx] = 0
                else:
                    petal = abs(f[0]) - 1
                    self.puncture_of_face[idx] = petal - 2 * self.g + 1

    @property
    def cellulation_id(self) -> str:
        return f"rose-g{self.g}n{self.n}-v1"

    # --- word calculus -------------------------------------------------

    def reduce(self, w: Sequence[int]) -> Word:
        w = cyclic_reduce(w)
        if self.closed:
            w = self._dehn_reduce(w)
        return w

    def _relator_family(self) -> list[Word]:
        R = self.relator
        fam = []
        for base in (R, inverse_word(R)):
            fam.extend(rotations(base))
        return fam

    def _dehn_reduce(self, w: Word) -> Word:
        L = len(self.relator)
        half = L // 2
        changed = True
        while changed:
            changed = False
            w = cyclic_reduce(w)
            if len(w) < half + 1:
                break
            doubled = w + w
            for rel in self._relator_family():
                for size in range(min(L - 1, len(w)), half, -1):
                    for i in range(len(w)):
                        seg = doubled[i : i + size]
                        for j in range(L - size + 1):
                            if rel[j : j + size] == seg:
                                # seg * tail = rel (cyclically); replace seg
                                # by inverse(tail), which is shorter.
                                tail = rel[j + size :] + rel[:j]
                                repl = inverse_word(tail)
                                w = cyclic_reduce(repl + doubled[i + size : i + len(w)])
                                changed = True
                                break
                        if changed:
                            break
                    if changed:
                        break
                if changed:
                    break
        return cyclic_reduce(w)

    def _half_swaps(self, w: Word) -> list[Word]:
        """Length-preserving exchanges of exactly-half relator subwords."""
        L = len(self.relator)
        half = L // 2
        out = []
        if len(w) < half:
            return out
        doubled = w + w
        for rel in self._relator_family():
            for i in range(len(w)):
                seg = doubled[i : i + half]
                for j in range(L - half + 1):
                    if rel[j : j + half] == seg:
                        tail = rel[j + half :] + rel[:j]
                        repl = inverse_word(tail)
                        cand = cyclic_reduce(repl + doubled[i + half : i + len(w)])
                        if len(cand) == len(w):
                            out.append(cand)
        return out

    def geodesic_class(self, w: Sequence[int]) -> frozenset[Word]:
        """All minimal cyclic representatives of the oriented class of w."""
        w = self.reduce(w)
        seen = {min_rotation(w)}
        queue = [w]
        while queue:
            cur = queue.pop()
            for nxt in self._half_swaps(cur) if self.closed else ():
                key = min_rotation(nxt)
                if key not in seen:
                    seen.add(key)
                    queue.append(nxt)
        return frozenset(seen)

    def canonical(self, w: Sequence[int]) -> Word:
        """Canonical form of the unoriented curve class of w."""
        w = self.reduce(w)
        if not w:
            return ()
        reps = set(self.geodesic_class(w)) | set(self.geodesic_class(inverse_word(w)))
        return min(reps)

    def same_class_oriented(self, u: Sequence[int], v: Sequence[int]) -> bool:
        u, v = self.reduce(u), self.reduce(v)
        if len(u) != len(v):
            return False
        return min(self.geodesic_class(u)) == min(self.geodesic_class(v))

    def same_class(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.canonical(u) == self.canonical(v)

    def is_trivial(self, w: Sequence[int]) -> bool:
        return len(self.reduce(w)) == 0

    def is_peripheral(self, w: Sequence[int]) -> bool:
        """True iff w is freely homotopic to a puncture loop (never for closed)."""
        if self.closed:
            return False
        w = self.reduce(w)
        if not w:
            return False
        for f in self.face_words:
            for power in (f, inverse_word(f)):
                if min_rotation(cyclic_reduce(power)) == min_rotation(w):
                    return True
        return False

    def is_primitive(self, w: Sequence[int]) -> bool:
        w = cyclic_reduce(w)
        m = len(w)
        if m == 0:
            return False
        for d in range(1, m):
            if m % d == 0 and w == (w[:d] * (m // d)):
                return False
        return True
