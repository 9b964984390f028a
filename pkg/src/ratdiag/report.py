"""Uniform pass/fail record returned by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import errors


@dataclass
class CheckReport:
    name: str
    holds: bool
    order: int | None = None
    first_mismatch: int | None = None
    details: dict[str, Any] = field(default_factory=dict)
    error: type[errors.RatDiagError] = errors.ResidualNonzero

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "holds": self.holds}
        if self.order is not None:
            out["order"] = self.order
        if self.first_mismatch is not None:
            out["first_mismatch_exponent"] = self.first_mismatch
        if self.details:
            out["details"] = self.details
        return out

    def raise_if_failed(self) -> "CheckReport":
        if not self.holds:
            msg = f"{self.name} fails"
            if self.first_mismatch is not None:
                msg += f" at exponent {self.first_mismatch}"
            if self.error is errors.ResidualNonzero:
                raise errors.ResidualNonzero(msg, self.first_mismatch)
            raise self.error(msg)
        return self


def series_report(name: str, residual, order: int | None = None, **details) -> CheckReport:
    """Report for 'residual == 0' where residual is a TruncatedSeries."""
    v = residual.valuation()
    checked = residual.order if order is None else min(order, residual.order)
    bad = v if v < checked else None
    return CheckReport(name, bad is None, checked, bad, dict(details))
