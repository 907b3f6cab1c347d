"""Link oracles: neighborhood queries over possibly infinite graphs.

An oracle answers two kinds of questions about a graph it models:
``neighbors_of(v)`` and ``common_neighbors(B)``.  Answers are exact.  A
``Finite`` answer is never a truncation; ``INFINITE`` certifies the set is
infinite; ``UNKNOWN`` is only legal for oracles documented as bounded, and
callers must treat it as inconclusive rather than empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable


@dataclass(frozen=True)
class Finite:
    """An exactly-known finite vertex set."""

    members: frozenset

    def sorted_members(self) -> list:
        return sorted(self.members)

    def __iter__(self):
        return iter(self.sorted_members())

    def __len__(self):
        return len(self.members)


class _Infinite:
    def __repr__(self):
        return "INFINITE"


class _Unknown:
    def __repr__(self):
        return "UNKNOWN"


INFINITE = _Infinite()
UNKNOWN = _Unknown()

Answer = Finite | _Infinite | _Unknown


def finite(members: Iterable[Hashable]) -> Finite:
    return Finite(frozenset(members))


class LinkOracle:
    """Interface for neighborhood queries.

    Implementations must be symmetric (``u in lk(v)`` iff ``v in lk(u)``)
    and irreflexive (``v not in lk(v)``).
    """

    def has_vertex(self, v) -> bool:
        raise NotImplementedError

    def adjacent(self, u, v) -> bool:
        raise NotImplementedError

    def neighbors_of(self, v) -> Answer:
        raise NotImplementedError

    def common_neighbors(self, B) -> Answer:
        """Exact intersection of the links of all members of B."""
        raise NotImplementedError

    def expansion_candidates(self, Y) -> Iterable:
        """Vertices that could be uniquely determined by subsets of Y.

        Any vertex v with ``{v} = common_neighbors(B)`` for some ``B`` a
        subset of Y must be produced.  The default raises; each oracle
        supplies a complete strategy for its own graph.
        """
        raise NotImplementedError
