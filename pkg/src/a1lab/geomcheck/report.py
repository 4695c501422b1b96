from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from ..exactalg.fields import FieldSpec
from ..exactalg.literals import point_to_literal

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
LIST_LIMIT = 1024


@dataclass
class CheckReport:
    """Outcome of a sampling or enumeration check.

    ``solutions`` is only kept when there are at most 1024 of them.  A failing
    report always carries a ``witness`` point.
    """

    verdict: str
    field: FieldSpec | None = None
    points_examined: int = 0
    solutions_found: int = 0
    solutions: list[tuple] | None = None
    dimension_estimate: int | None = None
    codim_observed: int | None = None
    seed: int | None = None
    wall_time_ms: float = 0.0
    witness: tuple | None = None
    message: str = ""
    details: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness point")
        if self.solutions is not None and len(self.solutions) > LIST_LIMIT:
            self.solutions = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json(self, include_timing: bool = False) -> dict:
        def pt(p):
            return point_to_literal(self.field, p) if self.field is not None else list(p)

        out = {
            "verdict": self.verdict,
            "points_examined": self.points_examined,
            "solutions_found": self.solutions_found,
            "solutions": None if self.solutions is None else [pt(s) for s in self.solutions],
            "dimension_estimate": self.dimension_estimate,
            "codim_observed": self.codim_observed,
            "seed": self.seed,
            "witness": None if self.witness is None else pt(self.witness),
            "message": self.message,
            "details": self.details,
        }
        if include_timing:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out
