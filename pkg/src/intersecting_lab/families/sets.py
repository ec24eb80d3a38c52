"""
Set and Family kernel

Subsets of [n] are machine words of bits: element e of [n] lives at bit
e - 1. A Family is an immutable tuple of such words kept strictly increasing
in numeric (canonical) order, together with its ground size n.
"""

import logging
from bisect import bisect_left
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from math import comb

from ..exceptions import DomainError, SizeLimitError

logger = logging.getLogger(__name__)

MAX_GROUND_SIZE = 62
MAX_POWER_SET_N = 20
MAX_ENUMERATION = 10**7


def binom(n: int, k: int) -> int:
    """Binomial coefficient, 0 whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def mask_of(elements: Iterable[int]) -> int:
    """Encode 1-based elements as a bit mask."""
    bits = 0
    for element in elements:
        if element < 1:
            raise DomainError(f"Elements are 1-based, got {element}")
        bits |= 1 << (element - 1)
    return bits


def elements_of(bits: int) -> tuple[int, ...]:
    """Decode a bit mask into its increasing 1-based elements."""
    elements = []
    while bits:
        low = bits & -bits
        elements.append(low.bit_length())
        bits ^= low
    return tuple(elements)


def _check_ground_size(ground_size: int) -> None:
    if not 0 <= ground_size <= MAX_GROUND_SIZE:
        raise SizeLimitError(
            "Ground size out of range", limit=MAX_GROUND_SIZE, requested=ground_size
        )


@dataclass(frozen=True)
class SetMask:
    """A subset of [ground_size] stored as bits."""

    bits: int
    ground_size: int

    def __post_init__(self) -> None:
        _check_ground_size(self.ground_size)
        if self.bits < 0 or self.bits >> self.ground_size:
            raise DomainError(
                f"Set {elements_of(abs(self.bits))} is not a subset of [{self.ground_size}]"
            )

    @classmethod
    def from_elements(cls, elements: Iterable[int], ground_size: int) -> "SetMask":
        return cls(mask_of(elements), ground_size)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    @property
    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __contains__(self, element: int) -> bool:
        return 1 <= element <= self.ground_size and bool(self.bits >> (element - 1) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True)
class Family:
    """
    Immutable, duplicate-free, canonically ordered family of subsets of [n].

    members holds the raw bit masks in strictly increasing numeric order;
    iteration yields those integers.
    """

    ground_size: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_ground_size(self.ground_size)
        members = self.members
        if not isinstance(members, tuple):
            members = tuple(members)
            object.__setattr__(self, "members", members)
        previous = -1
        for bits in members:
            if bits <= previous:
                raise DomainError("Family members must be strictly increasing (canonical order)")
            previous = bits
        if members and members[-1] >> self.ground_size:
            raise DomainError(f"Family member exceeds ground set [{self.ground_size}]")

    @classmethod
    def from_masks(cls, ground_size: int, masks: Iterable[int]) -> "Family":
        """Build a family from masks in any order, dropping duplicates."""
        return cls(ground_size, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, ground_size: int, sets: Iterable[Iterable[int]]) -> "Family":
        """Build a family from 1-based element collections."""
        return cls.from_masks(ground_size, (mask_of(s) for s in sets))

    @classmethod
    def empty(cls, ground_size: int) -> "Family":
        return cls(ground_size, ())

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, SetMask):
            if item.ground_size != self.ground_size:
                return False
            item = item.bits
        if not isinstance(item, int):
            return False
        index = bisect_left(self.members, item)
        return index < len(self.members) and self.members[index] == item

    def __bool__(self) -> bool:
        return bool(self.members)

    @property
    def union_bits(self) -> int:
        union = 0
        for bits in self.members:
            union |= bits
        return union

    def sets(self) -> list[tuple[int, ...]]:
        """Members as tuples of 1-based elements, in canonical order."""
        return [elements_of(bits) for bits in self.members]

    def is_subfamily_of(self, other: "Family") -> bool:
        return self.ground_size == other.ground_size and all(m in other for m in self.members)


def power_set(n: int, max_n: int = MAX_POWER_SET_N) -> Family:
    """
    All 2^n subsets of [n] in canonical order.

    Raises:
        SizeLimitError: If n is negative or above the guard
    """
    if not 0 <= n <= max_n:
        raise SizeLimitError("power_set ground size out of range", limit=max_n, requested=n)
    return Family(n, tuple(range(1 << n)))


def k_subsets(n: int, r: int, limit: int = MAX_ENUMERATION) -> Family:
    """
    The r-element subsets of [n] in canonical order.

    Subsets are produced with Gosper's next-combination step, which walks
    the r-bit words in increasing numeric order.

    Raises:
        DomainError: If r is negative
        SizeLimitError: If n exceeds the ground-size cap or C(n, r) exceeds limit
    """
    _check_ground_size(n)
    if r < 0:
        raise DomainError(f"Subset size must be non-negative, got {r}")
    if r > n:
        return Family.empty(n)

    count = comb(n, r)
    if count > limit:
        raise SizeLimitError(f"C({n},{r}) subsets exceed the guard", limit=limit, requested=count)

    if r == 0:
        return Family(n, (0,))

    members = []
    bits = (1 << r) - 1
    ceiling = 1 << n
    while bits < ceiling:
        members.append(bits)
        low = bits & -bits
        ripple = bits + low
        bits = (((ripple ^ bits) >> 2) // low) | ripple
    return Family(n, tuple(members))


def slice_family(family: Family, r: int) -> Family:
    """The members of size r (the r-th layer of the family)."""
    return Family(family.ground_size, tuple(m for m in family.members if m.bit_count() == r))


def star(family: Family, x: int) -> Family:
    """
    The star F(x): members containing element x.

    Raises:
        DomainError: If x is not an element of [n]
    """
    if not 1 <= x <= family.ground_size:
        raise DomainError(f"Element {x} outside [{family.ground_size}]")
    bit = 1 << (x - 1)
    return Family(family.ground_size, tuple(m for m in family.members if m & bit))


def member_incidence(family: Family) -> list[int]:
    """
    Per-element membership bitsets.

    Entry e - 1 has bit i set iff the i-th member (canonical order) contains
    element e.
    """
    incidence = [0] * family.ground_size
    for index, bits in enumerate(family.members):
        marker = 1 << index
        while bits:
            low = bits & -bits
            incidence[low.bit_length() - 1] |= marker
            bits ^= low
    return incidence


def meeting_members(incidence: Sequence[int], bits: int) -> int:
    """Bitset of members (per incidence) that intersect the set bits."""
    reach = 0
    while bits:
        low = bits & -bits
        reach |= incidence[low.bit_length() - 1]
        bits ^= low
    return reach


def is_intersecting(family: Family) -> bool:
    """
    True iff every two members, a member with itself included, intersect.

    A family containing the empty set is never intersecting.
    """
    if not family.members:
        return True
    if family.members[0] == 0:
        return False

    incidence = member_incidence(family)
    everyone = (1 << len(family)) - 1
    return all(meeting_members(incidence, bits) == everyone for bits in family.members)


def intersecting_subfamilies(family: Family, max_size: int) -> Iterator[Family]:
    """
    Every non-empty intersecting subfamily with at most max_size members.

    Subfamilies come out depth first, members added in canonical order.

    Raises:
        DomainError: If max_size is negative
    """
    if max_size < 0:
        raise DomainError(f"max_size must be non-negative, got {max_size}")
    members = family.members
    incidence = member_incidence(family)
    reach = [meeting_members(incidence, bits) for bits in members]
    chosen: list[int] = []

    def extend(pool: int) -> Iterator[Family]:
        while pool:
            low = pool & -pool
            pool ^= low
            index = low.bit_length() - 1
            chosen.append(index)
            yield Family(family.ground_size, tuple(members[i] for i in chosen))
            if len(chosen) < max_size:
                yield from extend(pool & reach[index])
            chosen.pop()

    if max_size == 0:
        return
    nonempty = 0
    for index, bits in enumerate(members):
        if bits:
            nonempty |= 1 << index
    yield from extend(nonempty)


def are_cross_intersecting(first: Family, second: Family) -> bool:
    """
    True iff each member of first intersects each member of second.

    Vacuously true when either family is empty.

    Raises:
        DomainError: If the ground sizes differ
    """
    if first.ground_size != second.ground_size:
        raise DomainError(
            f"Ground size mismatch: {first.ground_size} vs {second.ground_size}"
        )
    if not first.members or not second.members:
        return True

    incidence = member_incidence(second)
    everyone = (1 << len(second)) - 1
    return all(meeting_members(incidence, bits) == everyone for bits in first.members)


def relabel(family: Family, permutation: Sequence[int]) -> Family:
    """
    Apply a permutation of [n] to every member.

    Args:
        family: Family over [n]
        permutation: permutation[e - 1] is the image of element e (1-based values)

    Raises:
        DomainError: If permutation is not a permutation of [n]
    """
    n = family.ground_size
    if sorted(permutation) != list(range(1, n + 1)):
        raise DomainError(f"Not a permutation of [{n}]: {list(permutation)}")
    images = [1 << (target - 1) for target in permutation]

    def image(bits: int) -> int:
        out = 0
        while bits:
            low = bits & -bits
            out |= images[low.bit_length() - 1]
            bits ^= low
        return out

    return Family.from_masks(n, (image(bits) for bits in family.members))

