"""
Labeled universe [n] x [k] and the label compressions

The labeled element (i, j) is stored as element encode(i, j) = (i - 1) * k + j
of a ground set of size n * k. The label-1 layer {(i, 1)} is X_n.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from ..exceptions import DomainError, SizeLimitError
from .sets import MAX_ENUMERATION, MAX_GROUND_SIZE, Family, SetMask, is_intersecting

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledUniverse:
    """Indices 1..n, labels 1..k, encoded index-major."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.k < 1:
            raise DomainError(f"Invalid labeled universe n={self.n} k={self.k}")
        if self.n * self.k > MAX_GROUND_SIZE:
            raise SizeLimitError(
                "Labeled universe too large", limit=MAX_GROUND_SIZE, requested=self.n * self.k
            )

    @property
    def ground_size(self) -> int:
        return self.n * self.k

    def encode(self, i: int, j: int) -> int:
        """1-based ground element of (i, j)."""
        if not (1 <= i <= self.n and 1 <= j <= self.k):
            raise DomainError(f"({i},{j}) outside [{self.n}] x [{self.k}]")
        return (i - 1) * self.k + j

    def decode(self, element: int) -> tuple[int, int]:
        if not 1 <= element <= self.ground_size:
            raise DomainError(f"Element {element} outside [{self.ground_size}]")
        index, label = divmod(element - 1, self.k)
        return index + 1, label + 1

    def bit(self, i: int, j: int) -> int:
        return 1 << (self.encode(i, j) - 1)

    def index_mask(self, i: int) -> int:
        """All labels of index i."""
        return ((1 << self.k) - 1) << ((i - 1) * self.k)

    @property
    def x_layer(self) -> int:
        """Mask of X_n, the label-1 layer."""
        layer = 0
        for i in range(self.n):
            layer |= 1 << (i * self.k)
        return layer

    def has_distinct_indices(self, bits: int) -> bool:
        if bits >> self.ground_size:
            return False
        return all((bits & self.index_mask(i)).bit_count() <= 1 for i in range(1, self.n + 1))

    def pairs(self, bits: int) -> list[tuple[int, int]]:
        """The (i, j) pairs of a labeled set, by increasing index."""
        out = []
        while bits:
            low = bits & -bits
            out.append(self.decode(low.bit_length()))
            bits ^= low
        return out

    def mask_of_pairs(self, pairs: Iterable[tuple[int, int]]) -> int:
        bits = 0
        for i, j in pairs:
            bits |= self.bit(i, j)
        return bits

    def default_order(self) -> list[tuple[int, int]]:
        """Delta factors first-to-last: ascending index, then ascending label."""
        return [(i, j) for i in range(1, self.n + 1) for j in range(2, self.k + 1)]


def enumerate_lnk(universe: LabeledUniverse, r: int, limit: int = MAX_ENUMERATION) -> Family:
    """
    The r-element members of L_{n,k}: labeled sets with pairwise distinct indices.

    Raises:
        DomainError: If r is negative
        SizeLimitError: If C(n, r) * k^r exceeds limit
    """
    if r < 0:
        raise DomainError(f"Set size must be non-negative, got {r}")
    if r > universe.n:
        return Family.empty(universe.ground_size)

    count = comb(universe.n, r) * universe.k**r
    if count > limit:
        raise SizeLimitError("L_{n,k} slice exceeds the guard", limit=limit, requested=count)

    masks = []
    labels = range(1, universe.k + 1)
    for indices in combinations(range(1, universe.n + 1), r):
        for chosen in product(labels, repeat=r):
            masks.append(universe.mask_of_pairs(zip(indices, chosen)))
    return Family.from_masks(universe.ground_size, masks)


def _check_factor(universe: LabeledUniverse, i: int, j: int) -> None:
    if not 1 <= i <= universe.n:
        raise DomainError(f"Index {i} outside [{universe.n}]")
    if not 2 <= j <= universe.k:
        raise DomainError(f"Label {j} outside [2, {universe.k}]")


def _delta_bits(universe: LabeledUniverse, i: int, j: int, bits: int) -> int:
    source = universe.bit(i, j)
    if bits & source:
        return (bits ^ source) | universe.bit(i, 1)
    return bits


def delta(universe: LabeledUniverse, i: int, j: int, member: SetMask | int) -> SetMask | int:
    """
    delta_{i,j}: swap (i, j) for (i, 1) when present.

    Accepts and returns either a SetMask or raw bits.

    Raises:
        DomainError: If the member repeats an index or (i, j) is not a valid factor
    """
    _check_factor(universe, i, j)
    bits = member.bits if isinstance(member, SetMask) else member
    if not universe.has_distinct_indices(bits):
        raise DomainError(f"Labeled set {universe.pairs(bits)} repeats an index")
    image = _delta_bits(universe, i, j, bits)
    if isinstance(member, SetMask):
        return SetMask(image, universe.ground_size)
    return image


def _check_uniform_labeled(universe: LabeledUniverse, family: Family) -> None:
    if family.ground_size != universe.ground_size:
        raise DomainError(
            f"Family ground size {family.ground_size} does not match universe "
            f"{universe.n}x{universe.k}"
        )
    sizes = {bits.bit_count() for bits in family.members}
    if len(sizes) > 1:
        raise DomainError(f"Family mixes set sizes {sorted(sizes)}")
    for bits in family.members:
        if not universe.has_distinct_indices(bits):
            raise DomainError(f"Labeled set {universe.pairs(bits)} repeats an index")


def _compress(universe: LabeledUniverse, i: int, j: int, family: Family) -> Family:
    present = set(family.members)
    compressed = []
    for bits in family.members:
        image = _delta_bits(universe, i, j, bits)
        compressed.append(bits if image in present else image)
    return Family.from_masks(family.ground_size, compressed)


def compress_family(universe: LabeledUniverse, i: int, j: int, family: Family) -> Family:
    """
    Delta_{i,j}(F) = {delta(A) : A in F} u {A in F : delta(A) in F}.

    Each member moves to its image unless the image is already a member.

    Raises:
        DomainError: If F is not contained in one slice of L_{n,k}
    """
    _check_factor(universe, i, j)
    _check_uniform_labeled(universe, family)
    return _compress(universe, i, j, family)


def full_compress(
    universe: LabeledUniverse,
    family: Family,
    order: Sequence[tuple[int, int]] | None = None,
) -> Family:
    """
    Apply every Delta_{i,j} in turn, Delta_{1,2} first and Delta_{n,k} last.

    Args:
        universe: Labeled universe of the family
        family: Intersecting subfamily of one slice of L_{n,k}
        order: Optional permutation of the factors, applied first-to-last

    Raises:
        DomainError: If the family is not intersecting, not uniform, or the
            order is not a permutation of the factors
    """
    _check_uniform_labeled(universe, family)
    if not is_intersecting(family):
        raise DomainError("full_compress requires an intersecting family")

    factors = universe.default_order()
    if order is not None:
        order = [tuple(factor) for factor in order]
        if sorted(order) != factors:
            raise DomainError(f"Order is not a permutation of the Delta factors: {order}")
        factors = order

    compressed = family
    for i, j in factors:
        compressed = _compress(universe, i, j, compressed)
    logger.debug(f"full_compress n={universe.n} k={universe.k}: {len(family)} members")
    return compressed


def x_trace(universe: LabeledUniverse, bits: int) -> int:
    """E n X_n as a subset of [n], element i standing for (i, 1)."""
    trace = 0
    for i in range(universe.n):
        if bits >> (i * universe.k) & 1:
            trace |= 1 << i
    return trace


def trace_xn(universe: LabeledUniverse, family: Family) -> Family:
    """
    {E n X_n : E in F} over the ground set [n].

    Duplicates collapse.
    """
    return Family.from_masks(universe.n, (x_trace(universe, bits) for bits in family.members))


def meets_x_layer_pairwise(universe: LabeledUniverse, family: Family) -> bool:
    """True iff |A n B n X_n| >= 1 for all members A, B (A = B included)."""
    layer = universe.x_layer
    members = [bits & layer for bits in family.members]
    for index, first in enumerate(members):
        if not first:
            return False
        for second in members[index + 1 :]:
            if not first & second:
                return False
    return True
