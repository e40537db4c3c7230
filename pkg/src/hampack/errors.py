"""Shared exception types and the tagged failure value.

Exceptions signal misuse (bad dimensions, malformed inputs, out-of-range
parameters).  Algorithmic dead ends are not exceptional: procedures that can
run out of random edges return a :class:`Failure` value tagged with the stage
that stalled, and callers record it as data.
"""

from dataclasses import dataclass, field
from typing import Any

__all__ = [
    "DimensionError",
    "InvalidInputError",
    "ParameterRangeError",
    "SizeError",
    "Failure",
]


class DimensionError(ValueError):
    """Mismatched sizes between objects that must share a ground set."""


class InvalidInputError(ValueError):
    """Structurally malformed input (duplicate edges, loops, non-bijections)."""


class ParameterRangeError(ValueError):
    """A probability or size parameter lies outside the permitted range."""


class SizeError(ValueError):
    """Input exceeds the size bound an exhaustive routine can handle."""


@dataclass(frozen=True)
class Failure:
    """Tagged outcome for a procedure that stalled.

    stage identifies where (e.g. "step2", "rotate.left", "factor[3].step5");
    detail carries whatever context the stage can attach (witness sets,
    retry counts).  Failures compare by stage and detail, so reports built
    from them replay identically.
    """

    stage: str
    detail: dict[str, Any] = field(default_factory=dict)

    def tagged(self, prefix: str) -> "Failure":
        """Return the same failure with a context prefix on its stage."""
        return Failure(f"{prefix}.{self.stage}", dict(self.detail))
