"""Search verdicts shared by the extremal and weighted searches"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..families.sets import Family
from ..reports import family_document, to_jsonable

Witness = Family | tuple[Family, Family] | None


@dataclass
class SearchVerdict:
    """
    Result of an exact (or sampled) search.

    star_property is derived: "holds" exactly when the optimum equals the
    largest star value.
    """

    optimum: int | Fraction
    witness: Witness
    largest_star_value: int | Fraction
    star_element: int | None
    nodes_explored: int = 0
    seed: int | None = None
    annotations: dict[str, Any] = field(default_factory=dict)
    optima: list[Witness] | None = None

    @property
    def star_property(self) -> str:
        return "holds" if self.optimum == self.largest_star_value else "fails"

    def to_dict(self) -> dict[str, Any]:
        """The verdict JSON document."""
        document: dict[str, Any] = {
            "optimum": to_jsonable(self.optimum),
            "witness": _witness_document(self.witness),
            "largest_star": {
                "element": self.star_element,
                "size": to_jsonable(self.largest_star_value),
            },
            "star_property": self.star_property,
            "nodes": self.nodes_explored,
            "seed": self.seed,
        }
        if self.annotations:
            document["details"] = to_jsonable(self.annotations)
        if self.optima is not None:
            document["optima"] = [_witness_document(optimum) for optimum in self.optima]
        return document


def _witness_document(witness: Witness) -> Any:
    if witness is None:
        return None
    if isinstance(witness, tuple):
        first, second = witness
        return {"A": family_document(first), "B": family_document(second)}
    return family_document(witness)
