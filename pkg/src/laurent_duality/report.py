"""Verification reports: per-assertion records rendered as text and JSON."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


@dataclass
class Assertion:
    id: str
    anchor: str
    status: str
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    suite: str
    assertions: List[Assertion] = field(default_factory=list)
    inputs: Dict[str, str] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    def add(self, id: str, anchor: str, ok, witness=None) -> Assertion:
        if isinstance(ok, str):
            status = ok
        else:
            status = PASS if ok else FAIL
        a = Assertion(id, anchor, status, witness or {})
        self.assertions.append(a)
        return a

    def extend(self, other: "Report", prefix: str = "") -> None:
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.id, a.anchor, a.status, a.witness))
        self.inputs.update(other.inputs)

    @property
    def passed(self) -> bool:
        return all(a.status == PASS for a in self.assertions)

    def ok(self, allow_undetermined: bool = False) -> bool:
        allowed = {PASS, UNDETERMINED} if allow_undetermined else {PASS}
        return all(a.status in allowed for a in self.assertions)

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNDETERMINED: 0}
        for a in self.assertions:
            out[a.status] += 1
        return out

    def to_dict(self) -> dict:
        # timing is kept out so identical runs give identical documents
        return {
            "suite": self.suite,
            "inputs": dict(sorted(self.inputs.items())),
            "assertions": [a.to_dict() for a in sorted(self.assertions, key=lambda a: a.id)],
            "summary": self.counts(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"suite {self.suite}"]
        for a in sorted(self.assertions, key=lambda a: a.id):
            extra = ""
            if a.witness:
                brief = {k: v for k, v in a.witness.items() if not isinstance(v, (list, dict))}
                if brief:
                    extra = "  " + " ".join(f"{k}={v}" for k, v in sorted(brief.items()))
            lines.append(f"  [{a.status:>12}] {a.id} ({a.anchor}){extra}")
        c = self.counts()
        lines.append(f"  {c[PASS]} passed, {c[FAIL]} failed, {c[UNDETERMINED]} undetermined")
        for k, v in sorted(self.timing.items()):
            lines.append(f"  time {k}: {v:.3f}s")
        return "\n".join(lines)
