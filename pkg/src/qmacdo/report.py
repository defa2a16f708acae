"""Check records and their line/table renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    """One verified identity instance; it passes iff ``residual == "0"``."""

    suite: str
    instance: str
    index: str
    residual: str
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.residual == "0"

    def record(self, timings: bool = False) -> dict:
        out = {"suite": self.suite, "instance": self.instance, "index": self.index, "residual": self.residual}
        if self.extra:
            out.update(self.extra)
        if timings:
            out["elapsed"] = round(self.elapsed, 4)
        return out


def render_lines(header: dict, checks: list[Check], timings: bool = False) -> str:
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(c.record(timings), sort_keys=True) for c in checks]
    failed = sum(not c.ok for c in checks)
    lines.append(json.dumps({"summary": {"suite": header.get("suite"), "checks": len(checks), "failed": failed}}, sort_keys=True))
    return "\n".join(lines) + "\n"


def _clip(text: str, width: int) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."


def render_table(header: dict, checks: list[Check], timings: bool = False) -> str:
    rows = [("status", "instance", "index", "residual") + (("seconds",) if timings else ())]
    for c in checks:
        row = ("PASS" if c.ok else "FAIL", c.instance, c.index, _clip(c.residual, 40))
        if timings:
            row += (f"{c.elapsed:.3f}",)
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = [f"# {header['suite']}: {header['identity']}"]
    for r in rows:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    failed = sum(not c.ok for c in checks)
    out.append(f"# {len(checks) - failed}/{len(checks)} checks passed")
    return "\n".join(out) + "\n"
