"""Execute the tasks of a problem spec and assemble a :class:`Report`."""
from __future__ import annotations

import re

from . import __version__
from .audit import FAILED, VERDICTS, audit, summarize
from .dsl import ProblemSpec, SpecError, Task, parse_spec
from .extension import (
    Ansatz,
    determining_equations,
    solve_extensions,
    verify_extension,
)
from .invariants import extract_rdi, functional_independence, solve_adi, verify_adi, verify_rdi
from .report import Report, Section, digest
from .sampling import DEFAULT_SEED
from .vector_field import pushforward
from .workspace import Workspace

__all__ = ["run", "run_text", "parse_ansatz", "TaskFailed"]


class TaskFailed(Exception):
    """Raised inside a handler to mark the section FAILED with a message."""


def _tuple(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def parse_ansatz(value, ws: Workspace) -> Ansatz:
    """``poly(vars; deg<=N) [* {m1, ...}]`` or ``span{e1, ...}``."""
    text = str(value).strip()
    m = re.fullmatch(r"poly\s*\(([^;]*);\s*deg\s*(<=|==|=)\s*(\d+)\s*\)\s*(?:\*\s*\{(.*)\})?", text, re.S)
    if m:
        names = [v.strip() for v in m.group(1).split(",") if v.strip()]
        for n in names:
            ws.parse(n)
        mults = ("1",)
        if m.group(4) is not None:
            mults = tuple(ws.parse(x.strip()) for x in _split(m.group(4)))
        return Ansatz.poly(names, int(m.group(3)), exact=m.group(2) != "<=", multipliers=mults)
    m = re.fullmatch(r"span\s*\{(.*)\}", text, re.S)
    if m:
        return Ansatz.span([ws.parse(x.strip()) for x in _split(m.group(1))])
    raise SpecError(f"cannot read ansatz {text!r}")


def _split(body: str):
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch in "({"
        depth -= ch in ")}"
        cur += ch
    parts.append(cur)
    return [p.strip().strip('"') for p in parts if p.strip()]


def _as_list(v):
    if v is None:
        return None
    return v if isinstance(v, list) else [v]


def _exprs(task: Task):
    out = []
    for a in task.args:
        out.extend(_as_list(a))
    return out


# -- handlers ---------------------------------------------------------------

def _check_algebra(ws, task, sec):
    c = ws.structure()
    for i in range(c.dim):
        for j in range(i + 1, c.dim):
            line = c.format_bracket(i, j)
            sec.say(line)
            sec.put(f"bracket.{ws.names[i]}.{ws.names[j]}", line.split(" = ", 1)[1])
    sec.put("antisymmetric", str(c.is_antisymmetric()).lower())
    sec.put("jacobi", str(c.satisfies_jacobi()).lower())


def _determining(ws, task, sec):
    args = _as_list(task.params.get("args"))
    eqs = determining_equations(ws.unextended(), ws.structure(), args)
    for k, e in enumerate(eqs, 1):
        sec.say(f"[{ws.names[e.m]}, {ws.names[e.n]}]: {e}")
        sec.put(f"equation.{k}", e)


def _extend(ws, task, sec):
    ansatz = parse_ansatz(task.params.get("ansatz") or task.args[0], ws)
    fam = solve_extensions(ws.unextended(), ws.structure(), ansatz,
                           require_invariant=task.params.get("strict", 1) != 0)
    sec.say(f"ansatz {ansatz} ({len(ansatz)} functions)")
    sec.say(f"family dimension {fam.dimension}")
    sec.put("ansatz", ansatz)
    sec.put("dimension", fam.dimension)
    for k, mem in enumerate(fam.members, 1):
        sec.say(f"  member {k}: a = {_tuple(mem)}")
        sec.put(f"member.{k}", _tuple(mem))
    sec.say(fam.normalization_note())


def _verify_extension(ws, task, sec):
    a = [ws.parse(x) for x in _as_list(task.params.get("a") or task.args[0])]
    chk = verify_extension(ws.unextended(), ws.structure(), a)
    sec.say(f"a = {_tuple(a)}: {'satisfies' if chk.ok else 'violates'} the determining equations")
    sec.put("a", _tuple(a))
    sec.put("valid", str(chk.ok).lower())
    for (m, n), r in chk.residuals:
        if not r.is_zero():
            sec.say(f"  residual [{ws.names[m]}, {ws.names[n]}]: {r}")
            sec.put(f"residual.{ws.names[m]}.{ws.names[n]}", r)
    if not chk.ok:
        sec.failed = True


def _ops_for(ws, task, order):
    ext = _as_list(task.params.get("ext"))
    names = _as_list(task.params.get("ops"))
    return ws.op_names(names), ws.operators(names, ext, order)


def _prolong(ws, task, sec):
    order = int(task.params.get("order", 1))
    names, ops = _ops_for(ws, task, order)
    if "op" in task.params:
        keep = [names.index(task.params["op"])]
        names, ops = [names[keep[0]]], [ops[keep[0]]]
    for n, Q in zip(names, ops):
        sec.say(f"{n}^({order}) = {Q}")
        sec.put(f"prolonged.{n}", Q)


def _verify(kind):
    def handler(ws, task, sec):
        exprs = [ws.parse(e) for e in _exprs(task)]
        if not exprs:
            raise TaskFailed("no expressions given")
        order = int(task.params.get("order", ws.order_of(*exprs)))
        names, ops = _ops_for(ws, task, order)
        if kind == "rdi" and ws.ancillary:
            ops = [Q.without([ws.ancillary]) for Q in ops]
        for k, e in enumerate(exprs, 1):
            rep = verify_adi(ops, e) if kind == "adi" else verify_rdi(ops, e)
            ok = rep.is_adi if kind == "adi" else rep.is_rdi
            if ok and kind == "rdi":
                mult = ", ".join(f"{n}: {lam}" for n, lam in zip(names, rep.multipliers))
                sec.say(f"{e}: {'proper RDI' if rep.is_proper else 'ADI'} ({mult})")
                sec.put(f"multipliers.{k}", _tuple(rep.multipliers))
            elif ok:
                sec.say(f"{e}: ADI")
            else:
                sec.say(f"{e}: not an {kind.upper()}; {names[rep.failed_op]} gives {rep.residual}")
                sec.failed = True
            sec.put(f"expr.{k}", e)
            sec.put(f"verdict.{k}", rep.verdict if ok else FAILED)
    return handler


def _solve_adi(ws, task, sec):
    ansatz = parse_ansatz(task.params.get("ansatz") or task.args[0], ws)
    kmin, kmax = int(task.params.get("kmin", 0)), int(task.params.get("kmax", 0))
    order = int(task.params.get("order", ws.order_of(*ansatz.basis)))
    _, ops = _ops_for(ws, task, order)
    cands = solve_adi(ops, ansatz, (kmin, kmax), ancillary=ws.ancillary,
                      require_invariant=task.params.get("strict", 1) != 0)
    sec.say(f"ansatz {ansatz}, K in [{kmin}, {kmax}]: {len(cands)} solutions")
    sec.put("count", len(cands))
    for k, c in enumerate(cands, 1):
        sec.say(f"  K = {c.k}: {c.expr}")
        sec.put(f"adi.{k}", c.expr)
        sec.put(f"k.{k}", c.k)


def _extract_rdi(ws, task, sec):
    theta = ws.parse(_exprs(task)[0])
    order = int(task.params.get("order", ws.order_of(theta)))
    names, ops = _ops_for(ws, task, order)
    res = extract_rdi(theta, ops, ws.ancillary)
    sec.say(f"{theta} -> {res.factor}")
    sec.say(f"  multipliers {_tuple(res.multipliers)}, predicted {_tuple(res.expected)}")
    sec.put("factor", res.factor)
    sec.put("multipliers", _tuple(res.multipliers))
    sec.put("predicted", _tuple(res.expected))
    sec.put("consistent", str(res.consistent).lower())
    if not verify_adi(ops, theta).is_adi:
        sec.say("  the input is not an ADI of these operators")
        sec.failed = True
    elif not res.consistent:
        sec.failed = True


def _independence(ws, task, sec):
    exprs = [ws.parse(e) for e in _exprs(task)]
    order = max(1, ws.order_of(*exprs)) if ws.spec.dependent else 0
    chart = ws.jet(order).chart if ws.spec.dependent else ws.chart
    res = functional_independence(exprs, chart, seed=ws.seed)
    sec.say(f"Jacobian rank {res.rank} of {res.count}: {'independent' if res.independent else 'dependent'}")
    sec.put("rank", res.rank)
    sec.put("count", res.count)
    sec.put("independent", str(res.independent).lower())
    if "rank" in task.params and int(task.params["rank"]) != res.rank:
        sec.failed = True


def _pushforward(ws, task, sec):
    name = task.params.get("op")
    if name is None:
        raise TaskFailed("pushforward needs op=NAME")
    ext = _as_list(task.params.get("ext"))
    Q = ws.operators([name], ext, 0)[0]
    fwd = {k: ws.parse(v) for k, v in task.params.get("fwd", {}).items()}
    inv = {k: ws.parse(v) for k, v in task.params.get("inv", {}).items()}
    out = pushforward(Q, fwd, inv, seed=ws.seed)
    sec.say(f"{Q}  ->  {out}")
    sec.put("source", Q)
    sec.put("image", out)
    if "expect" in task.params and ws.parse_op(task.params["expect"]) != out:
        sec.failed = True


def _audit(ws, task, sec):
    from .corpus import CASES

    cid = task.params.get("corpus") or (task.args[0] if task.args else None)
    if cid not in CASES:
        raise TaskFailed(f"unknown corpus case {cid!r}")
    findings = audit(CASES[cid].claims, ws)
    for f in findings:
        sec.say(f"[{f.verdict}] {f.tag} ({f.klass})")
        sec.say(f"    claim:  {f.claim}")
        sec.say(f"    result: {f.result}")
        for d in f.details:
            sec.say(f"    - {d}")
        sec.put(f"{f.tag}.verdict", f.verdict)
        for k, v in f.data:
            sec.put(f"{f.tag}.{k}", v)
    counts = summarize(findings)
    sec.say("summary: " + ", ".join(f"{v} {counts[v]}" for v in VERDICTS))
    for v in VERDICTS:
        sec.put(f"summary.{v}", counts[v])
    sec.failed = counts[FAILED] > 0


HANDLERS = {
    "check_algebra": _check_algebra,
    "determining": _determining,
    "extend": _extend,
    "verify_extension": _verify_extension,
    "prolong": _prolong,
    "verify_adi": _verify("adi"),
    "verify_rdi": _verify("rdi"),
    "solve_adi": _solve_adi,
    "extract_rdi": _extract_rdi,
    "independence": _independence,
    "pushforward": _pushforward,
    "audit": _audit,
}


def _title(task: Task) -> str:
    bits = [task.name]
    bits += [f'"{a}"' if isinstance(a, str) else str(a) for a in task.args if not isinstance(a, list)]
    bits += [f"{k}={v}" for k, v in task.params.items() if not isinstance(v, (list, dict))]
    return " ".join(bits)


def run(spec: ProblemSpec, seed: int = DEFAULT_SEED) -> Report:
    """Run every task in order; handler exceptions become FAILED sections."""
    report = Report(header=[
        ("tool", "liext"),
        ("version", __version__),
        ("seed", str(seed)),
        ("spec", spec.name),
        ("spec_sha256", digest(spec.source)),
    ])
    try:
        ws = Workspace(spec, seed)
    except Exception as err:
        sec = Section("setup", failed=True)
        sec.say(f"error: {type(err).__name__}: {err}")
        sec.put("error", f"{type(err).__name__}: {err}")
        report.sections.append(sec)
        return report
    for task in spec.tasks:
        sec = Section(_title(task))
        sec.put("task", task.name)
        sec.put("line", task.line)
        try:
            HANDLERS[task.name](ws, task, sec)
        except Exception as err:  # module errors map to a FAILED section
            sec.failed = True
            sec.say(f"error: {type(err).__name__}: {err}")
            sec.put("error", f"{type(err).__name__}: {err}")
        report.sections.append(sec)
    return report


def run_text(text: str, seed: int = DEFAULT_SEED) -> Report:
    return run(parse_spec(text), seed)

