from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome of a combinatorial test, with the violations that decided it.

    Each witness is ``(element, degree, offending dimension)``.
    """

    result: bool
    witnesses: tuple[tuple[Hashable, int, int], ...] = field(default=())

    def __post_init__(self):
        if self.result == bool(self.witnesses):
            raise ValueError("a verdict is false exactly when it has witnesses")

    def __bool__(self) -> bool:
        return self.result

    @classmethod
    def from_witnesses(cls, witnesses) -> "Verdict":
        w = tuple(witnesses)
        return cls(not w, w)

    def to_json(self, encode=lambda x: x) -> dict[str, Any]:
        return {
            "result": self.result,
            "witnesses": [
                {"element": encode(e), "degree": p, "dim": d} for e, p, d in self.witnesses
            ],
        }
