"""
Exact maximum clique by branch and bound over bitsets

The search runs in two passes. The first finds the clique number by orbital
branching: each node groups its pool into orbits of the symmetries that fix
the vertices chosen so far, then either takes the lowest vertex of an orbit
or drops the whole orbit. A greedy colouring of the pool bounds every node.
The second pass rebuilds the lexicographically first clique of that size one
vertex at a time, asking the same search whether each prefix still extends
to an optimum.
"""

import logging
import sys
from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from typing import Any, Protocol

logger = logging.getLogger(__name__)


@dataclass
class CliqueResult:
    """Best clique found (ascending vertex indices) and the node counter."""

    vertices: tuple[int, ...]
    nodes: int


class Symmetry(Protocol):
    """
    Orbit oracle for a group of graph automorphisms.

    ``refine`` must return a state whose group fixes the given vertex, and
    two vertices with equal ``orbit_key`` under a state must lie in one orbit
    of that state's group.
    """

    def root(self) -> Any: ...

    def refine(self, state: Any, vertex: int) -> Any: ...

    def orbit_key(self, state: Any, vertex: int) -> Hashable: ...


class NoSymmetry:
    """The trivial group: every vertex is its own orbit."""

    def root(self) -> None:
        return None

    def refine(self, state: None, vertex: int) -> None:
        return None

    def orbit_key(self, state: None, vertex: int) -> Hashable:
        return vertex


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def colour_bound(adjacency: Sequence[int], pool: int) -> int:
    """Colours used by a greedy colouring of pool, lowest vertex first."""
    colours = 0
    uncoloured = pool
    while uncoloured:
        colours += 1
        available = uncoloured
        while available:
            low = available & -available
            uncoloured ^= low
            available &= ~adjacency[low.bit_length() - 1]
            available ^= low
    return colours


class _OrbitalSearch:
    def __init__(self, adjacency: Sequence[int], symmetry: Symmetry):
        self.adjacency = adjacency
        self.symmetry = symmetry
        self.nodes = 0
        self.best_size = 0
        self.best: tuple[int, ...] | None = None
        self.stop_at: int | None = None

    def run(
        self,
        chosen: list[int],
        pool: int,
        state: Any,
        beat: int,
        stop_at: int | None = None,
    ) -> tuple[int, ...] | None:
        """
        A clique of more than ``beat`` vertices containing ``chosen``, or None.

        Every vertex of pool must be adjacent to every chosen vertex. With
        ``stop_at`` set the search ends at the first clique that large.
        """
        self.best_size = beat
        self.best = None
        self.stop_at = stop_at
        self._grow(list(chosen), pool, state)
        return self.best

    def _orbits(self, pool: int, state: Any) -> list[int]:
        groups: dict[Hashable, int] = {}
        rest = pool
        while rest:
            low = rest & -rest
            rest ^= low
            key = self.symmetry.orbit_key(state, low.bit_length() - 1)
            groups[key] = groups.get(key, 0) | low
        adjacency = self.adjacency
        # fewest neighbours first, then lowest representative
        return sorted(
            groups.values(),
            key=lambda orbit: ((adjacency[_lowest(orbit)] & pool).bit_count(), orbit & -orbit),
        )

    def _grow(self, chosen: list[int], pool: int, state: Any) -> None:
        self.nodes += 1
        for orbit in self._orbits(pool, state):
            if len(chosen) + colour_bound(self.adjacency, pool) <= self.best_size:
                return
            v = _lowest(orbit)
            chosen.append(v)
            self._grow(chosen, pool & self.adjacency[v], self.symmetry.refine(state, v))
            chosen.pop()
            if self.stop_at is not None and self.best_size >= self.stop_at:
                return
            pool &= ~orbit
        if len(chosen) > self.best_size:
            self.best_size = len(chosen)
            self.best = tuple(sorted(chosen))


def _is_clique(adjacency: Sequence[int], candidates: int, vertices: Sequence[int]) -> bool:
    for index, v in enumerate(vertices):
        if not candidates >> v & 1:
            return False
        for u in vertices[index + 1 :]:
            if not adjacency[v] >> u & 1:
                return False
    return True


def _lex_first(
    search: _OrbitalSearch,
    candidates: int,
    size: int,
    known: list[frozenset[int]],
) -> tuple[int, ...]:
    adjacency = search.adjacency
    symmetry = search.symmetry
    chosen: list[int] = []
    state = symmetry.root()
    pool = candidates
    known = [clique for clique in known if len(clique) == size]
    while len(chosen) < size:
        while True:
            v = _lowest(pool)
            trial = {*chosen, v}
            if any(trial <= clique for clique in known):
                break
            witness = search.run(
                [*chosen, v], pool & adjacency[v], symmetry.refine(state, v), size - 1, size
            )
            if witness is not None:
                known.append(frozenset(witness))
                break
            # no optimum holds chosen + v, nor any longer prefix, so the pool
            # may drop v even though that breaks its invariance: an optimum
            # moved by a symmetry fixing the prefix never meets a dropped vertex
            pool &= ~(1 << v)
        chosen.append(v)
        state = symmetry.refine(state, v)
        pool &= adjacency[v]
    return tuple(chosen)


def max_clique(
    adjacency: Sequence[int],
    candidates: int,
    floor: int = 0,
    symmetry: Symmetry | None = None,
    hints: Sequence[Sequence[int]] = (),
) -> CliqueResult:
    """
    Lexicographically first maximum clique among the candidate vertices.

    Args:
        adjacency: Neighbour bitset per vertex (symmetric, no self-loops)
        candidates: Bitset of vertices allowed in the clique
        floor: Cliques smaller than this are never reported
        symmetry: Automorphisms of the graph that map candidates onto
            themselves; the trivial group when omitted
        hints: Cliques already known; the largest seeds the search and all
            of them shortcut the witness rebuild. Entries that are not
            cliques among the candidates are ignored.

    Returns:
        CliqueResult; vertices is empty when no clique of size >= floor exists
    """
    sys.setrecursionlimit(max(sys.getrecursionlimit(), len(adjacency) + 1000))
    symmetry = symmetry or NoSymmetry()
    search = _OrbitalSearch(adjacency, symmetry)

    known = [
        frozenset(hint)
        for hint in hints
        if hint and _is_clique(adjacency, candidates, sorted(set(hint)))
    ]
    seeded = max((len(clique) for clique in known), default=0)
    found = search.run([], candidates, symmetry.root(), max(seeded, floor - 1, 0))
    if found is not None:
        known.append(frozenset(found))
    size = len(found) if found is not None else seeded
    if size == 0 or size < floor:
        logger.debug(f"max_clique: nothing reaches floor {floor}, nodes={search.nodes}")
        return CliqueResult(vertices=(), nodes=search.nodes)

    optimum_nodes = search.nodes
    vertices = _lex_first(search, candidates, size, known)
    logger.debug(
        f"max_clique: size={size} nodes={optimum_nodes} "
        f"(+{search.nodes - optimum_nodes} rebuilding the first witness)"
    )
    return CliqueResult(vertices=vertices, nodes=search.nodes)
