"""
Small graphs, independent sets and the depth-two claw T_n

T_n has the fixed vertex layout x_0 -> 1, x_i -> 1 + i, y_i -> 1 + n + i, so
X_n = {x_1..x_n} is the contiguous mask of bits 1..n.
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from ..exceptions import DomainError, SizeLimitError
from .labeled import LabeledUniverse, enumerate_lnk
from .sets import MAX_ENUMERATION, MAX_GROUND_SIZE, Family, SetMask, binom, elements_of

logger = logging.getLogger(__name__)

MAX_CLAW_N = 30
MU_MAX_VERTICES = 24


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; adjacency[v] is the neighbour mask of vertex v + 1."""

    vertex_count: int
    adjacency: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.vertex_count <= MAX_GROUND_SIZE:
            raise SizeLimitError(
                "Graph too large", limit=MAX_GROUND_SIZE, requested=self.vertex_count
            )
        if len(self.adjacency) != self.vertex_count:
            raise DomainError("Adjacency list length must equal vertex_count")
        for v, neighbours in enumerate(self.adjacency):
            if neighbours >> self.vertex_count or neighbours < 0:
                raise DomainError(f"Vertex {v + 1} has a neighbour outside the graph")
            if neighbours >> v & 1:
                raise DomainError(f"Self-loop at vertex {v + 1}")
            for u in elements_of(neighbours):
                if not self.adjacency[u - 1] >> v & 1:
                    raise DomainError(f"Adjacency is not symmetric at {v + 1}-{u}")

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from 1-based edges."""
        adjacency = [0] * vertex_count
        for u, v in edges:
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise DomainError(f"Edge {u} {v} outside [{vertex_count}]")
            if u == v:
                raise DomainError(f"Self-loop at vertex {u}")
            adjacency[u - 1] |= 1 << (v - 1)
            adjacency[v - 1] |= 1 << (u - 1)
        return cls(vertex_count, tuple(adjacency))

    def edges(self) -> list[tuple[int, int]]:
        """1-based edges (u, v) with u < v, sorted."""
        return [
            (v + 1, u)
            for v, neighbours in enumerate(self.adjacency)
            for u in elements_of(neighbours >> (v + 1) << (v + 1))
        ]

    def neighbours(self, vertex: int) -> int:
        return self.adjacency[vertex - 1]

    def degree(self, vertex: int) -> int:
        return self.adjacency[vertex - 1].bit_count()

    def is_independent(self, bits: int) -> bool:
        rest = bits
        while rest:
            low = rest & -rest
            if self.adjacency[low.bit_length() - 1] & bits:
                return False
            rest ^= low
        return True


def independent_sets(graph: Graph, r: int, limit: int = MAX_ENUMERATION) -> Family:
    """
    All r-element independent sets, by backtracking in vertex order.

    Chosen vertices forbid their neighbours; branches that cannot reach r
    vertices are cut.

    Raises:
        DomainError: If r is negative
        SizeLimitError: If more than limit sets would be produced
    """
    if r < 0:
        raise DomainError(f"Set size must be non-negative, got {r}")

    found: list[int] = []
    m = graph.vertex_count
    adjacency = graph.adjacency

    def extend(chosen: int, size: int, start: int, forbidden: int) -> None:
        if size == r:
            if len(found) >= limit:
                raise SizeLimitError("Independent-set enumeration exceeds the guard", limit=limit)
            found.append(chosen)
            return
        for v in range(start, m):
            if m - v < r - size:
                return
            if forbidden >> v & 1:
                continue
            extend(chosen | (1 << v), size + 1, v + 1, forbidden | adjacency[v])

    extend(0, 0, 0, 0)
    return Family.from_masks(m, found)


def _complement_neighbours(graph: Graph) -> list[int]:
    everyone = (1 << graph.vertex_count) - 1
    return [everyone & ~adj & ~(1 << v) for v, adj in enumerate(graph.adjacency)]


def maximal_independent_sets(graph: Graph) -> Iterator[int]:
    """
    Yield every maximal independent set as a mask.

    Bron-Kerbosch with pivoting, run on the complement graph (maximal cliques
    of the complement are the maximal independent sets).
    """
    others = _complement_neighbours(graph)

    def expand(clique: int, candidates: int, excluded: int) -> Iterator[int]:
        if not candidates and not excluded:
            yield clique
            return
        pool = candidates | excluded
        pivot = max(elements_of(pool), key=lambda u: (candidates & others[u - 1]).bit_count())
        rest = candidates & ~others[pivot - 1]
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            yield from expand(clique | low, candidates & others[v], excluded & others[v])
            candidates ^= low
            excluded |= low
            rest ^= low

    yield from expand(0, (1 << graph.vertex_count) - 1, 0)


def mu(graph: Graph, max_vertices: int = MU_MAX_VERTICES) -> int:
    """
    Size of a smallest maximal independent set.

    Raises:
        SizeLimitError: If the graph has more than max_vertices vertices
    """
    if graph.vertex_count > max_vertices:
        raise SizeLimitError(
            "mu() sweep over maximal independent sets too large",
            limit=max_vertices,
            requested=graph.vertex_count,
        )
    return min(bits.bit_count() for bits in maximal_independent_sets(graph))


@dataclass(frozen=True)
class ClawLayout:
    """Vertex layout of T_n over the ground set [2n + 1]."""

    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_CLAW_N:
            raise SizeLimitError("Claw size out of range", limit=MAX_CLAW_N, requested=self.n)

    @property
    def ground_size(self) -> int:
        return 2 * self.n + 1

    @property
    def x0(self) -> int:
        return 1

    def x(self, i: int) -> int:
        self._check_leaf(i)
        return 1 + i

    def y(self, i: int) -> int:
        self._check_leaf(i)
        return 1 + self.n + i

    @property
    def x0_bit(self) -> int:
        return 1

    def x_bit(self, i: int) -> int:
        return 1 << (self.x(i) - 1)

    def y_bit(self, i: int) -> int:
        return 1 << (self.y(i) - 1)

    @property
    def x_layer(self) -> int:
        """Mask of X_n = {x_1, ..., x_n}."""
        return ((1 << self.n) - 1) << 1

    def _check_leaf(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise DomainError(f"Leaf index {i} outside [{self.n}]")

    def name(self, element: int) -> str:
        """Symbolic vertex name: x0, x1..xn, y1..yn."""
        if element == 1:
            return "x0"
        if 2 <= element <= self.n + 1:
            return f"x{element - 1}"
        if self.n + 2 <= element <= self.ground_size:
            return f"y{element - self.n - 1}"
        raise DomainError(f"Element {element} outside [{self.ground_size}]")

    def names(self) -> list[str]:
        return [self.name(element) for element in range(1, self.ground_size + 1)]

    def element_of(self, name: str) -> int:
        try:
            return self.names().index(name) + 1
        except ValueError:
            raise DomainError(f"Unknown claw vertex name {name!r}") from None

    def labeled_universe(self) -> LabeledUniverse:
        return LabeledUniverse(self.n, 2)

    def to_labeled(self, bits: int) -> int:
        """
        Map an x_0-free set onto L_{n,2}: x_i -> (i, 1), y_i -> (i, 2).

        Raises:
            DomainError: If the set contains x_0
        """
        if bits & self.x0_bit:
            raise DomainError("Sets containing x0 have no labeled counterpart")
        out = 0
        for i in range(1, self.n + 1):
            if bits >> i & 1:
                out |= 1 << (2 * (i - 1))
            if bits >> (self.n + i) & 1:
                out |= 1 << (2 * (i - 1) + 1)
        return out

    def from_labeled(self, bits: int) -> int:
        """Inverse of to_labeled."""
        out = 0
        for i in range(1, self.n + 1):
            if bits >> (2 * (i - 1)) & 1:
                out |= 1 << i
            if bits >> (2 * (i - 1) + 1) & 1:
                out |= 1 << (self.n + i)
        return out

    def to_labeled_family(self, family: Family) -> Family:
        return Family.from_masks(2 * self.n, (self.to_labeled(bits) for bits in family))


def build_tn(n: int) -> tuple[Graph, ClawLayout]:
    """
    The depth-two claw: edges x_iy_i and x_0y_i for every leaf i.

    Raises:
        SizeLimitError: If n is outside [1, 30]
    """
    layout = ClawLayout(n)
    edges = []
    for i in range(1, n + 1):
        edges.append((layout.x(i), layout.y(i)))
        edges.append((layout.x0, layout.y(i)))
    return Graph.from_edges(layout.ground_size, edges), layout


def enumerate_itn(n: int, r: int, limit: int = MAX_ENUMERATION) -> Family:
    """
    I_{T_n}^(r) built from its two parts: L_{n,2}^(r) and {x_0} u (X_n choose r - 1).

    Empty for r > n + 1.

    Raises:
        DomainError: If r is negative
        SizeLimitError: If n is outside [1, 30] or the family exceeds limit
    """
    layout = ClawLayout(n)
    if r < 0:
        raise DomainError(f"Set size must be non-negative, got {r}")
    if r > n + 1:
        return Family.empty(layout.ground_size)

    count = itn_size(n, r)
    if count > limit:
        raise SizeLimitError("I_{T_n}^(r) exceeds the guard", limit=limit, requested=count)

    labeled = enumerate_lnk(layout.labeled_universe(), r, limit=limit)
    masks = [layout.from_labeled(bits) for bits in labeled]
    if r >= 1:
        for leaves in combinations(range(1, n + 1), r - 1):
            bits = layout.x0_bit
            for i in leaves:
                bits |= layout.x_bit(i)
            masks.append(bits)
    return Family.from_masks(layout.ground_size, masks)


def itn_size(n: int, r: int) -> int:
    """|I_{T_n}^(r)| = C(n, r) 2^r + C(n, r - 1)."""
    if r < 0:
        return 0
    return binom(n, r) * 2**r + binom(n, r - 1)


def x1_star_size(n: int, r: int) -> int:
    """Size of the x_1 star of I_{T_n}^(r): C(n-1, r-1) 2^(r-1) + C(n-1, r-2)."""
    if r < 1:
        return 0
    return binom(n - 1, r - 1) * 2 ** (r - 1) + binom(n - 1, r - 2)


def _check_claw_members(layout: ClawLayout, family: Family) -> int | None:
    """Validate F against I_{T_n}^(r) and return the common size r."""
    if family.ground_size != layout.ground_size:
        raise DomainError(
            f"Family ground size {family.ground_size} does not match T_{layout.n}"
        )
    graph, _ = build_tn(layout.n)
    sizes = {bits.bit_count() for bits in family.members}
    if len(sizes) > 1:
        raise DomainError(f"Family mixes set sizes {sorted(sizes)}")
    for bits in family.members:
        if not graph.is_independent(bits):
            raise DomainError(f"{elements_of(bits)} is not independent in T_{layout.n}")
    return sizes.pop() if sizes else None


def _gamma_bits(layout: ClawLayout, bits: int) -> int:
    # the image stays independent iff x_1 is absent
    y1 = layout.y_bit(1)
    if bits & layout.x0_bit and not bits & y1 and not bits & layout.x_bit(1):
        return (bits ^ layout.x0_bit) | y1
    return bits


def gamma(layout: ClawLayout, member: SetMask | int, ambient: Family) -> SetMask | int:
    """
    gamma(A): move x_0 to y_1 when x_0 in A, y_1 not in A and the image lies in R.

    Args:
        layout: Claw layout
        member: A, as SetMask or bits
        ambient: R = I_{T_n}^(r)

    Raises:
        DomainError: If A is not a member of R
    """
    bits = member.bits if isinstance(member, SetMask) else member
    if bits not in ambient:
        raise DomainError(f"{elements_of(bits)} is not a member of R")
    image = bits
    y1 = layout.y_bit(1)
    if bits & layout.x0_bit and not bits & y1:
        candidate = (bits ^ layout.x0_bit) | y1
        if candidate in ambient:
            image = candidate
    if isinstance(member, SetMask):
        return SetMask(image, layout.ground_size)
    return image


def gamma_compress(layout: ClawLayout, family: Family) -> Family:
    """
    Gamma(F) = {gamma(A) : A in F} u {A in F : gamma(A) in F}.

    Raises:
        DomainError: If F is not contained in one slice I_{T_n}^(r)
    """
    _check_claw_members(layout, family)
    present = set(family.members)
    compressed = []
    for bits in family.members:
        image = _gamma_bits(layout, bits)
        compressed.append(bits if image in present else image)
    return Family.from_masks(family.ground_size, compressed)


def split_x0(layout: ClawLayout, family: Family) -> tuple[Family, Family, Family]:
    """
    Split H into H_0 (no x_0), H_1 (with x_0) and H_1' = {H - x_0 : H in H_1}.

    H_1' lives over the ground set [n] with x_i -> i.
    """
    h0 = []
    h1 = []
    for bits in family.members:
        (h1 if bits & layout.x0_bit else h0).append(bits)
    h1_prime = Family.from_masks(layout.n, ((bits ^ layout.x0_bit) >> 1 for bits in h1))
    return (
        Family(family.ground_size, tuple(h0)),
        Family(family.ground_size, tuple(h1)),
        h1_prime,
    )
