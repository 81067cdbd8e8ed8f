"""Verification result record shared by every checking routine."""

from __future__ import annotations

from dataclasses import dataclass, field

VERIFIED = "verified"
FAILED = "failed"
DISCREPANCY = "discrepancy-expected"


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one identity over one parameter cell.

    ``status`` is ``verified`` or ``failed`` for asserted identities and
    ``discrepancy-expected`` for printed forms that are known not to hold.
    A failed report always carries a ``witness``.  ``discrepancies`` lists
    findings about printed variants that are reported but never asserted.
    """

    identity: str
    params: str
    status: str
    witness: str = ""
    discrepancies: tuple = field(default=())
    detail: str = ""

    def __post_init__(self):
        if self.status == FAILED and not self.witness:
            raise ValueError("a failed report needs a witness")

    @property
    def ok(self) -> bool:
        return self.status != FAILED

    def line(self) -> str:
        out = f"{self.status:<21} {self.identity:<28} {self.params}"
        if self.witness:
            out += f"  witness: {self.witness}"
        if self.detail:
            out += f"  [{self.detail}]"
        for d in self.discrepancies:
            out += f"\n{'':<21} printed-form discrepancy: {d}"
        return out

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "discrepancies": list(self.discrepancies),
            "detail": self.detail,
        }


def check(identity: str, params: str, ok: bool, witness: str = "", **kw) -> VerificationReport:
    if ok:
        return VerificationReport(identity, params, VERIFIED, **kw)
    return VerificationReport(identity, params, FAILED, witness or "mismatch", **kw)
