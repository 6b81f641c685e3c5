"""Deterministic text reports with fenced ``key = value`` blocks."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

__all__ = ["Section", "Report", "digest", "parse_machine"]

FENCE = "```"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _one_line(value) -> str:
    return " ".join(str(value).split())


@dataclass
class Section:
    title: str
    lines: list = field(default_factory=list)
    data: list = field(default_factory=list)
    failed: bool = False

    def say(self, text: str = ""):
        self.lines.append(text)

    def put(self, key: str, value):
        self.data.append((key, _one_line(value)))

    @property
    def status(self) -> str:
        return "FAILED" if self.failed else "OK"


@dataclass
class Report:
    header: list = field(default_factory=list)
    sections: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(s.failed for s in self.sections)

    def render(self, fmt: str = "text") -> str:
        if fmt not in ("text", "machine"):
            raise ValueError(f"unknown report format {fmt!r}")
        out = []
        if fmt == "text":
            out.append("# liext report")
            out.append("")
        out.append(FENCE + "machine")
        out.extend(f"{k} = {v}" for k, v in self.header)
        out.append(FENCE)
        for i, s in enumerate(self.sections, 1):
            out.append("")
            if fmt == "text":
                out.append(f"## {i}. {s.title} [{s.status}]")
                out.append("")
                out.extend(s.lines)
                if s.lines:
                    out.append("")
            out.append(FENCE + "machine")
            out.append(f"section = {i}")
            out.append(f"status = {s.status}")
            out.extend(f"{k} = {v}" for k, v in s.data)
            out.append(FENCE)
        return "\n".join(out) + "\n"


def parse_machine(text: str) -> list[dict]:
    """Read the fenced blocks back as one dict per block (header first)."""
    blocks = []
    cur = None
    for line in text.splitlines():
        if line == FENCE + "machine":
            cur = {}
        elif line == FENCE and cur is not None:
            blocks.append(cur)
            cur = None
        elif cur is not None:
            k, _, v = line.partition(" = ")
            cur[k] = v
    return blocks
