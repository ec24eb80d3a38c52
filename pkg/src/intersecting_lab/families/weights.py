"""
Exact rational weights indexed by set size

All arithmetic goes through fractions.Fraction; no comparison in this module
involves rounding.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from ..exceptions import DomainError
from .sets import Family, binom

if TYPE_CHECKING:
    from ..search.rng import SplitMix64

logger = logging.getLogger(__name__)

RationalLike = int | str | Fraction


def to_fraction(value: RationalLike) -> Fraction:
    """
    Exact conversion of an int, Fraction or "p/q" string.

    Raises:
        DomainError: For floats and unparsable values
    """
    if isinstance(value, float):
        raise DomainError(f"Weights must be exact rationals, got float {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise DomainError(f"Not a rational number: {value!r}") from e


def format_rational(value: Fraction) -> str | int:
    """Integers stay integers, everything else becomes "p/q"."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class WeightVector:
    """Non-negative rationals w_0..w_n."""

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        values = tuple(to_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if self.n < 0:
            raise DomainError(f"Ground size must be non-negative, got {self.n}")
        if len(values) != self.n + 1:
            raise DomainError(f"Expected {self.n + 1} weights for n={self.n}, got {len(values)}")
        for index, value in enumerate(values):
            if value < 0:
                raise DomainError(f"Weight w_{index} = {value} is negative")

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> "WeightVector":
        values = tuple(values)
        return cls(len(values) - 1, values)

    @classmethod
    def zeros(cls, n: int) -> "WeightVector":
        return cls(n, (Fraction(0),) * (n + 1))

    def scaled(self, factor: RationalLike) -> "WeightVector":
        factor = to_fraction(factor)
        if factor <= 0:
            raise DomainError(f"Scale factor must be positive, got {factor}")
        return WeightVector(self.n, tuple(v * factor for v in self.values))

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)

    def as_strings(self) -> list[str]:
        return [str(v) for v in self.values]


def _check_pair(a: WeightVector, b: WeightVector) -> int:
    if a.n != b.n:
        raise DomainError(f"Weight vectors disagree on n: {a.n} vs {b.n}")
    return a.n


def thm2_condition_failures(a: WeightVector, b: WeightVector) -> list[str]:
    """
    Each violated inequality of the weighted cross-intersecting hypothesis.

    For every integer i with 0 <= i <= n/2 both a_i + b_i >= a_{n-i} + b_{n-i}
    and a_{n-i} >= b_i must hold.
    """
    n = _check_pair(a, b)
    failures = []
    for i in range(n // 2 + 1):
        j = n - i
        if a[i] + b[i] < a[j] + b[j]:
            failures.append(f"a_{i} + b_{i} >= a_{j} + b_{j}")
        if a[j] < b[i]:
            failures.append(f"a_{j} >= b_{i}")
    return failures


def check_thm2_conditions(a: WeightVector, b: WeightVector) -> bool:
    return not thm2_condition_failures(a, b)


def weighted_sum(family: Family, weights: WeightVector) -> Fraction:
    """Sum of w_{|A|} over the members of F."""
    if family.ground_size != weights.n:
        raise DomainError(
            f"Family ground size {family.ground_size} does not match weights n={weights.n}"
        )
    total = Fraction(0)
    for bits in family.members:
        total += weights[bits.bit_count()]
    return total


def star_rhs(a: WeightVector, b: WeightVector) -> Fraction:
    """Weighted value of A = B = S_n: sum over i of C(n-1, i-1)(a_i + b_i)."""
    n = _check_pair(a, b)
    return sum(
        (binom(n - 1, i - 1) * (a[i] + b[i]) for i in range(1, n + 1)),
        start=Fraction(0),
    )


def star_rhs_parts(a: WeightVector, b: WeightVector) -> tuple[Fraction, Fraction]:
    """The a-part and the b-part of star_rhs."""
    n = _check_pair(a, b)
    a_part = sum((binom(n - 1, i - 1) * a[i] for i in range(1, n + 1)), start=Fraction(0))
    b_part = sum((binom(n - 1, i - 1) * b[i] for i in range(1, n + 1)), start=Fraction(0))
    return a_part, b_part


def _fibre_weights(n: int, r: int) -> tuple[WeightVector, WeightVector]:
    a = [Fraction(binom(n - i, r - i)) if i <= r else Fraction(0) for i in range(n + 1)]
    b = [Fraction(1) if i == r - 1 else Fraction(0) for i in range(n + 1)]
    return WeightVector(n, tuple(a)), WeightVector(n, tuple(b))


def proof_weights(n: int, r: int) -> tuple[WeightVector, WeightVector]:
    """
    a_i = C(n - i, r - i) for i <= r (zero past r) and b_{r-1} = 1.

    The pair satisfies the weighted hypothesis exactly when n <= 2r - 1:
    past that a_{n-r+1} = 0 < b_{r-1}. The n <= 2r - 3 replay and its
    n = 2r - 2 variant both sit inside that range.

    Raises:
        DomainError: Unless 2 <= r <= n - 1 and n <= 2r - 1
    """
    if not (2 <= r <= n - 1 and n <= 2 * r - 1):
        raise DomainError(
            f"proof_weights needs 2 <= r <= n - 1 and n <= 2r - 1, got n={n} r={r}"
        )
    return _fibre_weights(n, r)


def random_valid_weights(
    n: int, rng: "SplitMix64", max_numerator: int = 9, max_denominator: int = 6
) -> tuple[WeightVector, WeightVector]:
    """
    A random pair (a, b) satisfying the hypothesis by construction.

    For each i < n - i the outer weights a_{n-i}, b_{n-i} are drawn first, then
    b_i <= a_{n-i} and a_i >= a_{n-i} + b_{n-i} - b_i. The middle index of an
    even n only needs a_i >= b_i.
    """
    a = [Fraction(0)] * (n + 1)
    b = [Fraction(0)] * (n + 1)

    def draw() -> Fraction:
        return rng.fraction(max_numerator, max_denominator)

    for i in range(n // 2 + 1):
        j = n - i
        if i == j:
            b[i] = draw()
            a[i] = b[i] + draw()
            continue
        a[j] = draw()
        b[j] = draw()
        b[i] = a[j] * rng.fraction(1, max_denominator)
        a[i] = max(Fraction(0), a[j] + b[j] - b[i]) + draw()

    return WeightVector(n, tuple(a)), WeightVector(n, tuple(b))
