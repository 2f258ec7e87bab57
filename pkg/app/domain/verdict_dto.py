from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from app.domain.code_dto import RankProfile


class VerdictStatus(str, Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    TRUNCATED = "truncated"


"""
    Outcome of a super-regularity check.

    Attributes
    ----------
    status : VerdictStatus
        certified  - every minor up to the full side was checked,
        refuted    - a minor with a non-trivial determinant is singular,
        truncated  - nothing refuted but only minors up to max_minor were checked.
    rows, cols : Tuple[int, ...]
        Witness index sets of the singular minor (empty unless refuted).
    minors_checked : int
        Number of minors with a non-trivial determinant that were evaluated.
"""


@dataclass(frozen=True)
class SuperRegularVerdict:
    status: VerdictStatus
    rows: Tuple[int, ...] = ()
    cols: Tuple[int, ...] = ()
    minors_checked: int = 0

    @property
    def witness(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}

    def to_json(self) -> dict:
        payload = {"status": self.status.value, "minors_checked": self.minors_checked}
        if self.status == VerdictStatus.REFUTED:
            payload["witness"] = self.witness
        return payload


"""
    Outcome of the extended-generator MSR test at depth j.

    A counterexample names the rank profile and, for each shot, the index of
    the canonical subspace representative (enumerate_subspaces order) whose
    block-diagonal product with G^EX_j is singular.
"""


@dataclass(frozen=True)
class MsrVerdict:
    verified: bool
    depth: int
    determinants_checked: int
    profile: RankProfile | None = None
    subspace_indices: Tuple[int, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        payload = {
            "verified": self.verified,
            "depth": self.depth,
            "determinants_checked": self.determinants_checked,
        }
        if not self.verified:
            payload["counterexample"] = {
                "profile": list(self.profile.rhos),
                "subspace_indices": list(self.subspace_indices),
            }
        return payload
