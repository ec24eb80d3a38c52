"""
Block symmetries of set families

A block symmetry names equal-length blocks of ground elements; any
permutation of the blocks, applied position by position, is assumed to map
the family onto itself. ``FamilyOrbits`` turns one into the orbit oracle the
clique search branches on: the state is a partition of the blocks into
cells, and two members lie in the same orbit of the cell-wise permutations
when they agree outside the cells and show the same multiset of block
patterns inside each cell.
"""

from collections.abc import Hashable, Sequence
from dataclasses import dataclass

from ..exceptions import DomainError
from ..families.claw import ClawLayout
from ..families.labeled import LabeledUniverse
from ..families.sets import Family, relabel


@dataclass(frozen=True)
class BlockSymmetry:
    """Equal-length blocks of 1-based ground elements, permuted as units."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise DomainError("A block symmetry needs at least one block")
        width = len(self.blocks[0])
        if width == 0 or any(len(block) != width for block in self.blocks):
            raise DomainError(f"Blocks must be non-empty and equally long: {self.blocks}")
        elements = [e for block in self.blocks for e in block]
        if len(set(elements)) != len(elements) or min(elements) < 1:
            raise DomainError(f"Blocks must hold distinct positive elements: {self.blocks}")

    @classmethod
    def points(cls, n: int) -> "BlockSymmetry":
        """Every permutation of [n]."""
        return cls(tuple((e,) for e in range(1, n + 1)))

    @classmethod
    def claw_branches(cls, layout: ClawLayout) -> "BlockSymmetry":
        """Permutations of the branches x_i - y_i of T_n, fixing x_0."""
        return cls(tuple((layout.x(i), layout.y(i)) for i in range(1, layout.n + 1)))

    @classmethod
    def labeled_indices(cls, universe: LabeledUniverse) -> "BlockSymmetry":
        """Permutations of the indices of [n] x [k], labels kept."""
        return cls(
            tuple(
                tuple(universe.encode(i, j) for j in range(1, universe.k + 1))
                for i in range(1, universe.n + 1)
            )
        )

    @property
    def mask(self) -> int:
        bits = 0
        for block in self.blocks:
            for e in block:
                bits |= 1 << (e - 1)
        return bits

    def _permutation(self, ground_size: int, images: Sequence[int]) -> list[int]:
        # images[b] is the block that block b is sent to
        permutation = list(range(1, ground_size + 1))
        for source, target in enumerate(images):
            for e, f in zip(self.blocks[source], self.blocks[target]):
                permutation[e - 1] = f
        return permutation

    def generators(self, ground_size: int) -> list[list[int]]:
        """A transposition and a full cycle of the blocks, as permutations of [ground_size]."""
        if self.mask >> ground_size:
            raise DomainError(f"Blocks leave the ground set [{ground_size}]")
        m = len(self.blocks)
        if m < 2:
            return []
        swap = [1, 0, *range(2, m)]
        cycle = [*range(1, m), 0]
        return [self._permutation(ground_size, swap), self._permutation(ground_size, cycle)]

    def preserves(self, family: Family) -> bool:
        """True iff both generators map the family onto itself."""
        return all(
            relabel(family, permutation) == family
            for permutation in self.generators(family.ground_size)
        )


@dataclass(frozen=True)
class CellState:
    """Cells of two or more blocks still free to move, and the fixed elements."""

    cells: tuple[tuple[int, ...], ...]
    fixed: int


class FamilyOrbits:
    """Orbit oracle over the members of a family (vertex i is member i)."""

    def __init__(self, symmetry: BlockSymmetry, members: Sequence[int], ground_size: int):
        self.symmetry = symmetry
        self.members = members
        self.ground = (1 << ground_size) - 1
        self._patterns = [self._pattern_row(bits) for bits in members]
        self._block_masks = []
        for block in symmetry.blocks:
            bits = 0
            for e in block:
                bits |= 1 << (e - 1)
            self._block_masks.append(bits)

    def _pattern_row(self, bits: int) -> tuple[int, ...]:
        row = []
        for block in self.symmetry.blocks:
            pattern = 0
            for position, e in enumerate(block):
                if bits >> (e - 1) & 1:
                    pattern |= 1 << position
            row.append(pattern)
        return tuple(row)

    def root(self) -> CellState:
        blocks = tuple(range(len(self.symmetry.blocks)))
        if len(blocks) < 2:
            return CellState((), self.ground)
        return CellState((blocks,), self.ground & ~self.symmetry.mask)

    def refine(self, state: CellState, vertex: int) -> CellState:
        """Split every cell by the block patterns of the member just chosen."""
        row = self._patterns[vertex]
        cells = []
        fixed = state.fixed
        for cell in state.cells:
            parts: dict[int, list[int]] = {}
            for block in cell:
                parts.setdefault(row[block], []).append(block)
            for part in parts.values():
                if len(part) > 1:
                    cells.append(tuple(part))
                else:
                    fixed |= self._block_masks[part[0]]
        cells.sort()
        return CellState(tuple(cells), fixed)

    def orbit_key(self, state: CellState, vertex: int) -> Hashable:
        row = self._patterns[vertex]
        return (
            self.members[vertex] & state.fixed,
            tuple(tuple(sorted(row[block] for block in cell)) for cell in state.cells),
        )
