"""
SplitMix64: the only source of randomness in the lab

Contract (identical on every platform):

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
    z <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
    output z xor (z >> 31)

below(m) draws by rejection: outputs >= 2^64 - (2^64 mod m) are discarded and
the first accepted output is reduced mod m.
"""

from collections.abc import MutableSequence, Sequence
from fractions import Fraction
from typing import TypeVar

from ..exceptions import DomainError
from ..families.sets import Family, meeting_members, member_incidence

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB


class SplitMix64:
    """Deterministic 64-bit generator seeded by a single integer."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.state = self.seed

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_1) & MASK64
        z = ((z ^ (z >> 27)) * MIX_2) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        if bound <= 0:
            raise DomainError(f"below() needs a positive bound, got {bound}")
        ceiling = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < ceiling:
                return value % bound

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.below(len(items))]

    def shuffle(self, items: MutableSequence[T]) -> None:
        """In-place Fisher-Yates, last position first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def fraction(self, max_numerator: int, max_denominator: int) -> Fraction:
        """p/q with p uniform in [0, max_numerator] and q uniform in [1, max_denominator]."""
        numerator = self.below(max_numerator + 1)
        denominator = 1 + self.below(max_denominator)
        return Fraction(numerator, denominator)

    def spawn(self) -> "SplitMix64":
        """Independent child stream seeded from the next output."""
        return SplitMix64(self.next_u64())


def random_intersecting_subfamily(family: Family, rng: SplitMix64) -> Family:
    """
    A random non-empty intersecting subfamily of F.

    Members are visited in shuffled order and kept when they meet every kept
    member; a random-length prefix of the kept list is returned. Empty only
    when F has no non-empty member.
    """
    order = [index for index, bits in enumerate(family.members) if bits]
    if not order:
        return Family.empty(family.ground_size)
    rng.shuffle(order)

    incidence = member_incidence(family)
    kept: list[int] = []
    allowed = -1
    for index in order:
        if allowed >> index & 1:
            kept.append(index)
            allowed &= meeting_members(incidence, family.members[index])
    length = 1 + rng.below(len(kept))
    return Family.from_masks(family.ground_size, (family.members[i] for i in kept[:length]))


def random_cross_pair(n: int, rng: SplitMix64) -> tuple[Family, Family]:
    """
    A random pair (A, B) of non-empty families over [n] with A intersecting
    and A, B cross-intersecting.

    B keeps each set compatible with A on a coin flip; [n] itself is always
    compatible and stands in when every flip fails.
    """
    if n < 1:
        raise DomainError("Cross-intersecting pairs need n >= 1")
    nonempty = Family(n, tuple(range(1, 1 << n)))
    first = random_intersecting_subfamily(nonempty, rng)

    compatible = [
        bits for bits in nonempty.members if all(bits & member for member in first.members)
    ]
    second = [bits for bits in compatible if rng.coin()]
    if not second:
        second = [(1 << n) - 1]
    return first, Family.from_masks(n, second)
