"""Named pass/fail records shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Check:
    name: str
    ok: bool
    anchor: str = ""
    detail: str = ""

    def line(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        anchor = f"  [{self.anchor}]" if self.anchor else ""
        return f"{status} {self.name}{anchor}{extra}"


def all_ok(checks) -> bool:
    return all(c.ok for c in checks)
