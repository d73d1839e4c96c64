"""The verification record shared by the closed-form checks and the sweep."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .fp_arith import FieldElement

CHECK_IDS = (
    "T-A",
    "T-B",
    "T-C",
    "T-D",
    "T-E",
    "THM2.2",
    "SUN-PRIOR",
    "S-MATRIX",
    "EXTENDED",
    "REMARK",
    "AUX",
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# "eq": observed == predicted; "ne": observed != predicted.
RELATIONS = ("eq", "ne")


@dataclass(frozen=True)
class TheoremReport:
    check_id: str
    claim: str
    p: int | None
    d: int | None = None
    m: int | None = None
    relation: str = "eq"
    kind: str = "field"  # field | symbol | int
    predicted: int | None = None
    observed: int | None = None
    status: str = PASS
    reason: str | None = None
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def sort_key(self) -> tuple:
        return (
            self.p or 0,
            CHECK_IDS.index(self.check_id),
            -1 if self.d is None else self.d,
            -1 if self.m is None else self.m,
            self.claim,
        )

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check_id, "claim": self.claim}
        for key in ("p", "d", "m"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        out["status"] = self.status
        if self.status != SKIPPED:
            out["relation"] = self.relation
            out["kind"] = self.kind
            out["predicted"] = self.predicted
            out["observed"] = self.observed
            if self.kind == "field":
                out["modulus"] = self.p
        if self.reason is not None:
            out["reason"] = self.reason
        if self.witness:
            out["witness"] = self.witness
        return out


def _plain(v: FieldElement | int | bool) -> int:
    if isinstance(v, FieldElement):
        return v.value
    return int(v)


def judge(
    check_id: str,
    claim: str,
    predicted: FieldElement | int,
    observed: FieldElement | int,
    *,
    p: int | None,
    d: int | None = None,
    m: int | None = None,
    relation: str = "eq",
    kind: str = "field",
    reason: str | None = None,
    witness: dict[str, Any] | None = None,
) -> TheoremReport:
    """Build a report whose status follows from comparing the two values."""
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    pv, ov = _plain(predicted), _plain(observed)
    ok = (pv == ov) if relation == "eq" else (pv != ov)
    return TheoremReport(
        check_id=check_id,
        claim=claim,
        p=p,
        d=d,
        m=m,
        relation=relation,
        kind=kind,
        predicted=pv,
        observed=ov,
        status=PASS if ok else FAIL,
        reason=reason,
        witness=witness or {},
    )


def skipped(
    check_id: str,
    claim: str,
    reason: str,
    *,
    p: int | None,
    d: int | None = None,
    m: int | None = None,
) -> TheoremReport:
    return TheoremReport(check_id, claim, p, d, m, status=SKIPPED, reason=reason)
