from typing import Any, Dict, List, Optional, Sequence
from pydantic import BaseModel, ConfigDict, model_validator

# Claim identifiers in canonical report order.
CLAIMS = [
    "example",
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "thm1",
    "thm6",
    "ideal_chain",
    "oracle",
]


class VerdictReport(BaseModel):
    """Outcome of a single check.

    A false verdict always carries a witness, a true one never does. Witness
    values are plain JSON data (integers, lists, serialized partitions and
    instances) so that a failure can be replayed from the report alone.
    """
    model_config = ConfigDict(frozen=True)

    claim_id: str
    instance_descriptor: str = ""
    verdict: bool
    witness: Optional[Dict[str, Any]] = None
    stats: Dict[str, int] = {}

    @model_validator(mode="after")
    def _witness_iff_false(self):
        if self.verdict and self.witness is not None:
            raise ValueError("A passing verdict cannot carry a witness.")
        if not self.verdict and self.witness is None:
            raise ValueError("A failing verdict needs a witness.")
        return self

    def __bool__(self):
        return self.verdict

    def accept(self, visitor, **kwargs):
        return visitor.verdict(self, **kwargs)


class ClaimTotals(BaseModel):
    run: int = 0
    passed: int = 0
    failed: int = 0


class SuiteSummary(BaseModel):
    totals: Dict[str, ClaimTotals] = {}
    reports: List[VerdictReport] = []

    @model_validator(mode="after")
    def _totals_add_up(self):
        for claim, totals in self.totals.items():
            if totals.run != totals.passed + totals.failed:
                raise ValueError(f"Totals of '{claim}' do not add up.")
        if sum(t.run for t in self.totals.values()) != len(self.reports):
            raise ValueError("Totals disagree with the number of reports.")
        return self

    @classmethod
    def collect(cls, reports: Sequence[VerdictReport]) -> "SuiteSummary":
        # Reports must already be in canonical order.
        totals: Dict[str, ClaimTotals] = {}
        for report in reports:
            entry = totals.setdefault(report.claim_id, ClaimTotals())
            entry.run += 1
            if report.verdict:
                entry.passed += 1
            else:
                entry.failed += 1
        ordered = {c: totals[c] for c in CLAIMS if c in totals}
        return cls(totals=ordered, reports=list(reports))

    @property
    def failures(self) -> List[VerdictReport]:
        return [r for r in self.reports if not r.verdict]

    @property
    def passed(self) -> bool:
        return len(self.failures) == 0

    def accept(self, visitor, **kwargs):
        return visitor.summary(self, **kwargs)
