"""Check records and reports (JSON and text renderings)."""

import json
from dataclasses import dataclass, field

STATUSES = ("pass", "advisory", "fail")


@dataclass
class Check:
    name: str
    kind: str
    expected: object
    computed: object
    status: str
    millis: int = 0
    detail: dict = field(default_factory=dict)

    def to_json(self, timing=True):
        return {"name": self.name, "kind": self.kind, "expected": self.expected,
                "computed": self.computed, "status": self.status,
                "millis": self.millis if timing else 0}


@dataclass
class Report:
    scenario: str
    config: dict
    checks: list = field(default_factory=list)

    @property
    def verdict(self):
        """``pass`` iff every non-advisory check passed."""
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    def advisory(self):
        return [c for c in self.checks if c.status == "advisory"]

    def to_json(self, timing=True):
        return {"scenario": self.scenario, "config": self.config,
                "checks": [c.to_json(timing) for c in self.checks], "verdict": self.verdict}

    def dumps(self, timing=True):
        return json.dumps(self.to_json(timing), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    def text(self):
        cfg = self.config
        lines = [f"scenario: {self.scenario}",
                 f"config: field={cfg['field']} maxDegree={cfg['maxDegree']} "
                 f"maxRes={cfg['maxRes']} seed={cfg['seed']}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"  {c.status.upper():8} {c.name.ljust(width)}  [{c.kind}] "
                         f"expected={_show(c.expected)} computed={_show(c.computed)} ({c.millis} ms)")
        adv = self.advisory()
        if adv:
            lines.append(f"advisory (not counted as pass): {len(adv)}")
        n_pass = sum(c.status == "pass" for c in self.checks)
        lines.append(f"verdict: {self.verdict.upper()} ({n_pass}/{len(self.checks)} pass)")
        return "\n".join(lines) + "\n"


def _show(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return json.dumps(v, ensure_ascii=False)
    return "null" if v is None else str(v)
