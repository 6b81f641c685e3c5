"""Problem-spec language.

Grammar version 1::

    spec  := header? decl* task*
    header:= 'problem' id ';'
    decl  := 'vars' idlist ';' | 'deps' id '(' idlist ')' (',' id '(' idlist ')')* ';'
           | 'aux' id ';' | 'param' idlist ';' | 'op' id '=' opexpr ';'
    task  := 'task' taskname param* ';'
    param := value | id '=' value
    value := integer | id | string | '{' item (',' item)* '}'
           | 'poly' '(' idlist ';' 'deg' ('<='|'==') integer ')' ('*' '{' expr, ... '}')?
           | 'span' '{' expr, ... '}'
    item  := value | id ':' value

``opexpr`` is any expression in which ``d/d<var>`` appears linearly, for
example ``t*(d/dx + R*d/dR) + x*d/dt``.  ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .expr import Expr, as_expr, var
from .parsing import ParseError, parse
from .vector_field import VectorField

__all__ = ["SpecError", "ProblemSpec", "Task", "AnsatzText", "parse_spec", "parse_operator", "GRAMMAR_VERSION"]

GRAMMAR_VERSION = 1

KNOWN_TASKS = {
    "check_algebra", "determining", "extend", "verify_extension", "prolong", "verify_adi",
    "verify_rdi", "solve_adi", "extract_rdi", "independence", "pushforward", "audit",
}


class SpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class AnsatzText:
    """Unparsed ansatz value; interpreted by the runner once the chart is known."""

    text: str

    def __str__(self):
        return self.text


@dataclass
class Task:
    name: str
    args: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    line: int = 0


@dataclass
class ProblemSpec:
    name: str = "problem"
    independent: tuple = ()
    dependent: dict = field(default_factory=dict)
    ancillary: tuple = ()
    params: tuple = ()
    ops: dict = field(default_factory=dict)
    op_text: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)
    source: str = ""


_DIFF = re.compile(r"\bd\s*/\s*d([A-Za-z][A-Za-z0-9_]*)")


def parse_operator(text: str, aliases=None) -> VectorField:
    """``t*d/dx + x*d/dt`` -> :class:`VectorField`."""
    names = {}

    def repl(m):
        target = m.group(1)
        target = (aliases or {}).get(target, target)
        key = f"DDD{len(names)}"
        for k, v in names.items():
            if v == target:
                key = k
                break
        names[key] = target
        return key

    body = _DIFF.sub(repl, text)
    if not names:
        raise ValueError(f"operator has no d/d<var> term: {text!r}")
    e = parse(body, aliases)
    coeffs = {}
    rest = e
    for key, target in names.items():
        c = e.diff(key)
        if any(k in c.variables() for k in names):
            raise ValueError(f"operator is not first order / linear in derivatives: {text!r}")
        coeffs[target] = coeffs.get(target, Expr(0)) + c
        rest = rest - c * var(key)
    if not rest.is_zero():
        raise ValueError(f"operator has a term without d/d<var>: {rest}")
    return VectorField(coeffs)


def _strip_comments(text: str) -> str:
    out = []
    for line in text.split("\n"):
        in_str = False
        for i, ch in enumerate(line):
            if ch == '"':
                in_str = not in_str
            elif ch == "#" and not in_str:
                line = line[:i]
                break
        out.append(line)
    return "\n".join(out)


def _statements(text: str):
    """Split on top-level ``;``; yields ``(statement, line_number)``."""
    depth = 0
    in_str = False
    start = 0
    line = 1
    start_line = 1
    for i, ch in enumerate(text):
        if ch == "\n":
            line += 1
        if in_str:
            if ch == '"':
                in_str = False
            continue
        if ch == '"':
            in_str = True
        elif ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == ";" and depth == 0:
            stmt = text[start:i]
            lead = len(stmt) - len(stmt.lstrip())
            yield stmt.strip(), start_line + stmt[:lead].count("\n")
            start = i + 1
            start_line = line
    tail = text[start:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        raise SpecError("missing ';' after final statement", start_line + tail[:lead].count("\n"))
    if in_str:
        raise SpecError("unterminated string", line)


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


class _ArgScanner:
    def __init__(self, text: str, line: int):
        self.s = text
        self.i = 0
        self.line = line

    def error(self, msg):
        raise SpecError(f"{msg} (near {self.s[self.i:self.i + 20]!r})", self.line)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def done(self):
        self.ws()
        return self.i >= len(self.s)

    def peek(self, n=1):
        self.ws()
        return self.s[self.i:self.i + n]

    def ident(self):
        self.ws()
        m = _IDENT.match(self.s, self.i)
        if not m:
            self.error("expected identifier")
        self.i = m.end()
        return m.group(0)

    def string(self):
        self.ws()
        j = self.s.index('"', self.i + 1)
        out = self.s[self.i + 1:j]
        self.i = j + 1
        return out

    def balanced(self, open_ch, close_ch):
        """Raw text between matching brackets (the scanner sits on ``open_ch``)."""
        self.ws()
        assert self.s[self.i] == open_ch
        depth = 0
        in_str = False
        for j in range(self.i, len(self.s)):
            ch = self.s[j]
            if in_str:
                in_str = ch != '"'
                continue
            if ch == '"':
                in_str = True
            elif ch == open_ch:
                depth += 1
            elif ch == close_ch:
                depth -= 1
                if depth == 0:
                    out = self.s[self.i + 1:j]
                    self.i = j + 1
                    return out
        self.error(f"unbalanced {open_ch!r}")

    def value(self):
        self.ws()
        ch = self.peek()
        if ch == '"':
            return self.string()
        if ch == "{":
            return _braced(self.balanced("{", "}"), self.line)
        m = re.compile(r"[-+]?\d+").match(self.s, self.i)
        if m:
            self.i = m.end()
            return int(m.group(0))
        start = self.i
        name = self.ident()
        if name == "poly" and self.peek() == "(":
            self.balanced("(", ")")
            if self.peek() == "*":
                self.i += 1
                if self.peek() != "{":
                    self.error("expected '{' after '*' in ansatz")
                self.balanced("{", "}")
            return AnsatzText(self.s[start:self.i].strip())
        if name == "span" and self.peek() == "{":
            self.balanced("{", "}")
            return AnsatzText(self.s[start:self.i].strip())
        return name


def _split_top(text: str, sep: str = ","):
    parts, depth, in_str, cur = [], 0, False, []
    for ch in text:
        if in_str:
            cur.append(ch)
            in_str = ch != '"'
            continue
        if ch == '"':
            in_str = True
        elif ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts]


def _item(text: str):
    text = text.strip()
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return text[1:-1]
    return text


def _braced(body: str, line: int):
    items = _split_top(body)
    if items and all(len(_split_top(it, ":")) == 2 for it in items):
        out = {}
        for it in items:
            parts = _split_top(it, ":")
            if len(parts) != 2:
                raise SpecError(f"bad map entry {it!r}", line)
            out[_item(parts[0])] = _item(parts[1])
        return out
    return [_item(it) for it in items]


def _parse_task(body: str, line: int) -> Task:
    sc = _ArgScanner(body, line)
    name = sc.ident()
    if name not in KNOWN_TASKS:
        raise SpecError(f"unknown task {name!r}", line)
    task = Task(name, line=line)
    while not sc.done():
        save = sc.i
        if _IDENT.match(sc.s, sc.i + (len(sc.s[sc.i:]) - len(sc.s[sc.i:].lstrip()))):
            key = sc.ident()
            if sc.peek() == "=" and sc.peek(2) != "==":
                sc.i += 1
                task.params[key] = sc.value()
                continue
            sc.i = save
        task.args.append(sc.value())
    return task


def parse_spec(text: str) -> ProblemSpec:
    """Parse and validate a problem spec; :class:`SpecError` carries the line number."""
    spec = ProblemSpec(source=text)
    seen_task = False
    declared = set()
    for stmt, line in _statements(_strip_comments(text)):
        if not stmt:
            continue
        head, _, rest = stmt.partition(" ")
        head = head.strip()
        rest = rest.strip()
        if head in ("problem", "name"):
            spec.name = rest
        elif head == "task":
            seen_task = True
            spec.tasks.append(_parse_task(rest, line))
        elif seen_task:
            raise SpecError(f"declaration {head!r} after the first task", line)
        elif head == "vars":
            names = _idlist(rest, line)
            _declare(declared, names, line)
            spec.independent += tuple(names)
        elif head == "deps":
            for item in _split_top(rest):
                m = re.fullmatch(r"([A-Za-z][A-Za-z0-9]*)\s*\((.*)\)", item, re.S)
                if not m:
                    raise SpecError(f"bad dependency declaration {item!r}", line)
                dep, args = m.group(1), _idlist(m.group(2), line)
                for a in args:
                    if a not in spec.independent:
                        raise SpecError(f"{dep} depends on undeclared variable {a!r}", line)
                _declare(declared, [dep], line)
                spec.dependent[dep] = tuple(args)
        elif head == "aux":
            names = _idlist(rest, line)
            _declare(declared, names, line)
            spec.ancillary += tuple(names)
            if len(spec.ancillary) > 1:
                raise SpecError("at most one ancillary variable is supported", line)
        elif head == "param":
            names = _idlist(rest, line)
            _declare(declared, names, line)
            spec.params += tuple(names)
        elif head == "op":
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)\s*=\s*(.+)", rest, re.S)
            if not m:
                raise SpecError("expected 'op NAME = expression'", line)
            name, body = m.group(1), m.group(2)
            if name in spec.ops:
                raise SpecError(f"operator {name!r} declared twice", line)
            try:
                Q = parse_operator(body)
            except (ValueError, ParseError) as err:
                raise SpecError(f"operator {name}: {err}", line) from None
            allowed = set(spec.independent) | set(spec.dependent) | set(spec.ancillary) | set(spec.params)
            used = set(Q.support())
            for c in Q.coefficients.values():
                used |= c.variables()
            bad = sorted(used - allowed)
            if bad:
                raise SpecError(f"operator {name} uses undeclared identifiers {bad}", line)
            spec.ops[name] = Q
            spec.op_text[name] = " ".join(body.split())
        else:
            raise SpecError(f"unknown statement {head!r}", line)
    if not spec.independent and not spec.dependent:
        raise SpecError("no variables declared")
    for t in spec.tasks:
        for key in ("op",):
            if key in t.params and t.params[key] not in spec.ops:
                raise SpecError(f"task {t.name} references undeclared operator {t.params[key]!r}", t.line)
        ops = t.params.get("ops")
        if isinstance(ops, list):
            for o in ops:
                if o not in spec.ops:
                    raise SpecError(f"task {t.name} references undeclared operator {o!r}", t.line)
    return spec


def _idlist(text: str, line: int):
    names = [p.strip() for p in text.split(",")]
    for n in names:
        if not _IDENT.fullmatch(n):
            raise SpecError(f"bad identifier {n!r}", line)
    return names


def _declare(declared: set, names, line):
    for n in names:
        if n in declared:
            raise SpecError(f"{n!r} declared twice", line)
        if n in ("exp", "d", "poly", "span"):
            raise SpecError(f"{n!r} is reserved", line)
        declared.add(n)
