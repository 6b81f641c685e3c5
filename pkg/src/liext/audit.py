"""Re-verification of published claims.

Each claim is recomputed from scratch.  A claim of class ``CONFIRM`` is
expected to hold; any disagreement is ``FAILED``.  A claim of class ``AUDIT``
is known to be doubtful: when it does not hold as stated the auditor searches
for the nearest statement that does (another power of ``R``, another
extension, a neighbouring element of the same span) and reports it as
``CORRECTED``, or ``FLAGGED`` for manual review when nothing unique is found.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import ZERO, Expr, var
from .extension import Ansatz, determining_equations, verify_extension
from .invariants import (
    functional_independence,
    split_ancillary,
    solve_adi,
    verify_adi,
    verify_rdi,
)
from .vector_field import pushforward
from .workspace import Workspace

__all__ = [
    "CONFIRM", "AUDIT", "CONFIRMED", "CORRECTED", "FLAGGED", "FAILED", "VERDICTS",
    "Finding", "Claim", "StructureClaim", "DeterminingClaim", "ExtensionClaim", "OperatorClaim",
    "InvariantClaim", "ProductClaim", "IndependenceClaim", "PushforwardClaim", "ExtractionClaim",
    "audit", "summarize",
]

CONFIRM, AUDIT = "CONFIRM", "AUDIT"
CONFIRMED, CORRECTED, FLAGGED, FAILED = "CONFIRMED", "CORRECTED", "FLAGGED", "FAILED"
VERDICTS = (CONFIRMED, CORRECTED, FLAGGED, FAILED)


@dataclass(frozen=True)
class Finding:
    tag: str
    klass: str
    verdict: str
    claim: str
    result: str
    details: tuple = ()
    data: tuple = ()

    @property
    def failed(self) -> bool:
        return self.verdict == FAILED


def _tuple(xs) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


@dataclass(frozen=True)
class Claim:
    tag: str
    klass: str = CONFIRM

    def statement(self) -> str:
        raise NotImplementedError

    def evaluate(self, ws: Workspace) -> tuple:
        """``(verdict, result, details, data)``; verdicts other than CONFIRMED are proposals."""
        raise NotImplementedError

    def check(self, ws: Workspace) -> Finding:
        try:
            verdict, result, details, data = self.evaluate(ws)
        except Exception as err:  # every module error becomes a FAILED finding
            return Finding(self.tag, self.klass, FAILED, self._safe_statement(),
                           f"error: {type(err).__name__}: {err}")
        if self.klass == CONFIRM and verdict != CONFIRMED:
            details = (f"expected to hold; auditor proposes {verdict}",) + tuple(details)
            verdict = FAILED
        return Finding(self.tag, self.klass, verdict, self.statement(), result, tuple(details), tuple(data))

    def _safe_statement(self):
        try:
            return self.statement()
        except Exception:
            return self.tag


@dataclass(frozen=True)
class StructureClaim(Claim):
    """``brackets`` maps ``(m, n)`` operator names to ``{k: coefficient}``; unlisted pairs commute."""

    brackets: tuple = ()

    def statement(self):
        def term(k, c):
            return k if c == 1 else f"-{k}" if c == -1 else f"{c}*{k}"

        return "; ".join(f"[{m}, {n}] = " + (" + ".join(term(k, c) for k, c in rhs) or "0")
                         for (m, n), rhs in self.brackets) or "all brackets vanish"

    def evaluate(self, ws):
        c = ws.structure()
        names = list(ws.names)
        declared = {(m, n): dict(rhs) for (m, n), rhs in self.brackets}
        bad = []
        lines = []
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                want = declared.get((names[i], names[j]))
                if want is None and (names[j], names[i]) in declared:
                    want = {k: -Fraction(v) for k, v in declared[(names[j], names[i])].items()}
                want = {names.index(k): Fraction(v) for k, v in (want or {}).items()}
                got = c.bracket(i, j)
                lines.append(c.format_bracket(i, j))
                if want != got:
                    bad.append(c.format_bracket(i, j))
        verdict = CONFIRMED if not bad else CORRECTED
        data = [("jacobi", str(c.satisfies_jacobi()).lower())]
        return verdict, "; ".join(lines), tuple(f"differs: {b}" for b in bad), data


@dataclass(frozen=True)
class DeterminingClaim(Claim):
    """Printed determining equations ``"lhs = rhs"`` in the unknowns ``a1(args), a2(args), ...``."""

    equations: tuple = ()
    args: tuple = ()

    def statement(self):
        return "; ".join(self.equations)

    def evaluate(self, ws):
        eqs = determining_equations(ws.unextended(), ws.structure(), self.args or None)
        computed = [e.residual for e in eqs]
        declared = []
        for text in self.equations:
            lhs, _, rhs = text.partition("=")
            declared.append(ws.parse(lhs) - ws.parse(rhs))
        unmatched = [d for d in declared if not any(d == r or d == -r for r in computed)]
        missing = [r for r in computed if not r.is_zero() and not any(d == r or d == -r for d in declared)]
        result = "; ".join(str(e) for e in eqs)
        details = [f"printed equation not implied: {d} = 0" for d in unmatched]
        details += [f"computed equation not printed: {r} = 0" for r in missing]
        return (CONFIRMED if not details else CORRECTED), result, details, ()


@dataclass(frozen=True)
class ExtensionClaim(Claim):
    """``coefficients`` solve the determining equations; ``candidates`` are fallbacks to try."""

    coefficients: tuple = ()
    candidates: tuple = ()

    def statement(self):
        return "a = " + _tuple(self.coefficients)

    def evaluate(self, ws):
        base, c = ws.unextended(), ws.structure()
        check = verify_extension(base, c, [ws.parse(a) for a in self.coefficients])
        if check.ok:
            return CONFIRMED, "satisfies the determining equations", (), ()
        details = [f"residual {ws.names[m]},{ws.names[n]}: {r}" for (m, n), r in check.residuals if not r.is_zero()]
        for label, coeffs in self.candidates:
            alt = [ws.parse(a) for a in coeffs]
            if verify_extension(base, c, alt).ok:
                return CORRECTED, f"a = {_tuple(alt)} ({label}) satisfies the determining equations", details, (
                    ("corrected", _tuple(alt)),)
            details.append(f"candidate {label} a = {_tuple(alt)} also fails")
        return FLAGGED, "violates the determining equations", details, ()


@dataclass(frozen=True)
class OperatorClaim(Claim):
    """Printed (extended, prolonged) operator versus the recomputed one.

    ``sign`` and ``restrict`` compare only part of the operator, e.g. the
    terms that survive in a determining equation for ``F(u_tt, u_tx, u_xx, R)``.
    """

    op: str = ""
    printed: str = ""
    extension: tuple | None = None
    order: int = 2
    sign: int = 1
    restrict: tuple = ()

    def statement(self):
        return self.printed

    def evaluate(self, ws):
        i = ws.select([self.op])[0]
        Q = ws.operators(None, self.extension, self.order)[i].scale(self.sign)
        if self.restrict:
            Q = Q.restrict(_canon_name(ws, v) for v in self.restrict)
        printed = ws.parse_op(self.printed)
        names = dict.fromkeys(Q.support() + printed.support())
        diffs = [(s, printed.coefficient(s), Q.coefficient(s)) for s in names
                 if printed.coefficient(s) != Q.coefficient(s)]
        if not diffs:
            return CONFIRMED, str(Q), (), ()
        details = [f"d/d{s}: printed {p}, computed {q}" for s, p, q in diffs]
        return CORRECTED, str(Q), details, (("corrected", str(Q)),)


def _canon_name(ws, v):
    e = ws.parse(v)
    (name,) = e.variables()
    return name


def _matching_power(lams, a):
    """Integer ``k`` with ``lam_m + k*a_m == 0`` for all ``m``; ``"any"`` if every ``a_m`` and ``lam_m`` vanish."""
    k = None
    for lam, am in zip(lams, a):
        if am.is_zero():
            if not lam.is_zero():
                return None
            continue
        q = -lam / am
        if not q.is_constant() or q.constant_value().denominator != 1:
            return None
        q = int(q.constant_value())
        if k is not None and k != q:
            return None
        k = q
    return "any" if k is None else k


def _with_power(F: Expr, R: str, k: int) -> Expr:
    return F * var(R) ** k if k else F


@dataclass(frozen=True)
class InvariantClaim(Claim):
    """``expr`` is an ADI (of the extended operators) or an RDI (of the unextended ones).

    ``alternatives`` lists ``(label, coefficients)`` extensions tried when the
    printed one does not work; ``witnesses`` are further extensions that only
    enter the ``holds_under`` data. ``proper`` and ``multipliers`` are optional
    extra statements for RDIs.
    """

    expr: str = ""
    kind: str = "ADI"
    ops: tuple = ()
    extension: tuple | None = None
    alternatives: tuple = ()
    witnesses: tuple = ()
    proper: bool | None = None
    multipliers: tuple | None = None

    def statement(self):
        s = f"{self.expr} is an {self.kind}"
        if self.extension is not None:
            s += f" under a = {_tuple(self.extension)}"
        return s

    def evaluate(self, ws):
        theta = ws.parse(self.expr)
        order = ws.order_of(theta)
        if self.kind == "ADI":
            return self._adi(ws, theta, order)
        return self._rdi(ws, theta, order)

    def _adi(self, ws, theta, order):
        names = ws.op_names(self.ops)
        ops = ws.operators(self.ops, self.extension, order)
        rep = verify_adi(ops, theta)
        holds = self._holds_under(ws, theta, order)
        if rep.is_adi:
            return CONFIRMED, f"{theta} is an ADI", (), holds
        details = [f"{names[rep.failed_op]} maps it to {rep.residual}"]
        R = ws.ancillary
        F, K = (split_ancillary(theta, R) or (theta, 0)) if R else (theta, 0)
        base = [Q.without([R]) if R else Q for Q in ws.operators(self.ops, None, order)]
        rdi = verify_rdi(base, F)
        if not rdi.is_rdi:
            return self._span_search(ws, theta, F, K, ops, details)
        lams = rdi.multipliers
        details.append(f"{F}: multipliers {_tuple(lams)} under the unextended operators")
        c = ws.structure()
        options = [("printed", self.extension)] + list(self.alternatives)
        found = []
        for label, ext in options:
            a = [ws.parse(x) for x in ext] if ext is not None else [ZERO] * len(base)
            valid = verify_extension(ws.unextended(self.ops), c, a).ok if not self.ops else True
            k = _matching_power(lams, a)
            k = K if k == "any" else k
            tag = "" if valid else " (violates the determining equations)"
            if k is None:
                details.append(f"{label} a = {_tuple(a)}{tag}: no power of {R} works")
            else:
                details.append(f"{label} a = {_tuple(a)}{tag}: ADI is {_with_power(F, R, k)}")
            found.append((label, a, k, valid))
        label, a, k, valid = found[0]
        if k is not None:
            fixed = _with_power(F, R, k)
            return CORRECTED, f"{fixed} under {label} a = {_tuple(a)}", details, (("corrected", str(fixed)),) + holds
        ranked = [x for x in found[1:] if x[2] == K and x[3]] + [x for x in found[1:] if x[2] is not None and x[3]]
        if ranked:
            label, a, k, _ = ranked[0]
            fixed = _with_power(F, R, k)
            return CORRECTED, f"{fixed} under {label} a = {_tuple(a)}", details, (
                ("corrected", str(fixed)), ("extension", _tuple(a))) + holds
        if K:
            implied = [-lam / K for lam in lams]
            ok = verify_extension(ws.unextended(self.ops), c, implied).ok if not self.ops else False
            details.append(f"implied extension a = {_tuple(implied)}"
                           + (" satisfies" if ok else " violates") + " the determining equations")
            if ok:
                return CORRECTED, f"{theta} under a = {_tuple(implied)}", details, (
                    ("corrected", str(theta)), ("extension", _tuple(implied))) + holds
        return FLAGGED, "no consistent reading found", details, holds

    def _holds_under(self, ws, theta, order):
        """``holds_under`` data: the labelled extensions for which ``theta`` itself is an ADI."""
        if not self.alternatives:
            return ()
        ok = []
        for label, ext in [("printed", self.extension)] + list(self.alternatives) + list(self.witnesses):
            if verify_adi(ws.operators(self.ops, ext, order), theta).is_adi:
                ok.append(label)
        return (("holds_under", ", ".join(ok) or "none"),)

    def _span_search(self, ws, theta, F, K, ops, details):
        basis = [m for _, m in F.numerator().terms()]
        details.append(f"{F} is not an RDI; searching span{_tuple(basis).replace('(', '{').replace(')', '}')}")
        if not F.denominator().is_constant() or len(basis) < 2:
            return FLAGGED, "not invariant", details, ()
        cands = solve_adi(ops, Ansatz.span(basis), (K, K), require_invariant=False)
        if len(cands) == 1:
            fixed = cands[0].expr / F.denominator() if not F.denominator().is_constant() else cands[0].expr
            return CORRECTED, f"{fixed} is an ADI", details, (("corrected", str(fixed)),)
        details.append(f"{len(cands)} invariant combinations in that span")
        return FLAGGED, "not invariant", details, ()

    def _rdi(self, ws, theta, order):
        names = ws.op_names(self.ops)
        base = [Q.without([ws.ancillary]) if ws.ancillary else Q for Q in ws.operators(self.ops, None, order)]
        rep = verify_rdi(base, theta)
        if not rep.is_rdi:
            details = [f"{names[rep.failed_op]} maps it to {rep.residual}"] + list(rep.notes)
            return self._span_search(ws, theta, theta, 0, base, details)
        lams = rep.multipliers
        mult = ", ".join(f"{n}: {lam}" for n, lam in zip(names, lams))
        result = f"{'proper RDI' if rep.is_proper else 'ADI'} with multipliers {mult}"
        data = [("multipliers", _tuple(lams)), ("proper", str(rep.is_proper).lower())]
        details = []
        if self.proper is not None and self.proper != rep.is_proper:
            details.append(f"stated {'proper' if self.proper else 'absolute'}, computed "
                           f"{'proper' if rep.is_proper else 'absolute'}")
        if self.multipliers is not None:
            want = [ws.parse(x) for x in self.multipliers]
            if want != list(lams):
                details.append(f"stated multipliers {_tuple(want)}, computed {_tuple(lams)}")
        return (CORRECTED if details else CONFIRMED), result, details, data


@dataclass(frozen=True)
class ProductClaim(Claim):
    """``product == prod(f**n)`` and its multipliers are the weighted sums of the factors' multipliers."""

    product: str = ""
    factors: tuple = ()
    absolute: bool = True

    def statement(self):
        return f"{self.product} = " + " * ".join(f"({f})^{n}" for f, n in self.factors)

    def evaluate(self, ws):
        P = ws.parse(self.product)
        rebuilt = Expr(1)
        for f, n in self.factors:
            rebuilt = rebuilt * ws.parse(f) ** n
        order = ws.order_of(P)
        ops = ws.unextended() if order == 0 else [Q.without([ws.ancillary]) if ws.ancillary else Q
                                                  for Q in ws.operators(None, None, order)]
        details = []
        if rebuilt != P:
            details.append(f"factorisation differs: {rebuilt}")
        total = [ZERO] * len(ops)
        for f, n in self.factors:
            rep = verify_rdi(ops, ws.parse(f))
            if not rep.is_rdi:
                details.append(f"factor {f} is not an RDI")
                continue
            total = [t + n * lam for t, lam in zip(total, rep.multipliers)]
        direct = verify_rdi(ops, P)
        if direct.is_rdi and list(direct.multipliers) != total:
            details.append(f"summed multipliers {_tuple(total)} differ from direct {_tuple(direct.multipliers)}")
        if self.absolute and not all(t.is_zero() for t in total):
            details.append(f"summed multipliers {_tuple(total)} do not vanish")
        data = (("summed_multipliers", _tuple(total)),)
        return (CORRECTED if details else CONFIRMED), f"summed multipliers {_tuple(total)}", details, data


@dataclass(frozen=True)
class IndependenceClaim(Claim):
    exprs: tuple = ()
    rank: int = 0

    def statement(self):
        return f"rank {self.rank}: {{{', '.join(self.exprs)}}}"

    def evaluate(self, ws):
        es = [ws.parse(e) for e in self.exprs]
        order = max(1, ws.order_of(*es)) if ws.spec.dependent else 0
        chart = ws.jet(order).chart if ws.spec.dependent else ws.chart
        res = functional_independence(es, chart, seed=ws.seed)
        data = (("rank", str(res.rank)), ("count", str(res.count)))
        if res.rank == self.rank:
            return CONFIRMED, f"rank {res.rank} of {res.count}", (), data
        return CORRECTED, f"rank {res.rank} of {res.count}", (f"stated rank {self.rank}",), data


@dataclass(frozen=True)
class PushforwardClaim(Claim):
    """Under ``fwd``/``inv`` the operator ``source`` becomes ``target``."""

    source: str = ""
    target: str = ""
    fwd: tuple = ()
    inv: tuple = ()

    def statement(self):
        return f"{self.source} -> {self.target}"

    def evaluate(self, ws):
        Q = ws.parse_op(self.source)
        got = pushforward(Q, {k: ws.parse(v) for k, v in self.fwd}, {k: ws.parse(v) for k, v in self.inv},
                          seed=ws.seed)
        want = ws.parse_op(self.target)
        if got == want:
            return CONFIRMED, str(got), (), ()
        return CORRECTED, str(got), (f"stated {want}",), (("corrected", str(got)),)


@dataclass(frozen=True)
class ExtractionClaim(Claim):
    """The RDI printed next to an ADI is what dropping ``R`` from the ADI gives."""

    adi: str = ""
    rdi: str = ""
    extension: tuple = ()

    def statement(self):
        return f"{self.adi} yields {self.rdi}"

    def evaluate(self, ws):
        theta = ws.parse(self.adi)
        order = ws.order_of(theta)
        F, K = split_ancillary(theta, ws.ancillary)
        adi_ok = verify_adi(ws.operators(None, self.extension, order), theta).is_adi
        base = [Q.without([ws.ancillary]) for Q in ws.operators(None, None, order)]
        a = verify_rdi(base, F)
        printed = ws.parse(self.rdi)
        b = verify_rdi(base, printed)
        details = [
            f"{theta}: {'ADI' if adi_ok else 'not an ADI'} under a = {_tuple(self.extension)}",
            f"extracted {F}: {a.verdict}" + (f" multipliers {_tuple(a.multipliers)}" if a.is_rdi else ""),
            f"printed {printed}: {b.verdict}" + (f" multipliers {_tuple(b.multipliers)}" if b.is_rdi else ""),
        ]
        if F == printed and adi_ok:
            return CONFIRMED, str(F), details, ()
        return FLAGGED, f"extracted {F}, printed {printed}", details, (
            ("extracted", str(F)), ("extracted_verdict", a.verdict), ("printed_verdict", b.verdict))


def audit(claims, ws: Workspace) -> list[Finding]:
    """Check every claim; tags must be unique.  Output order follows input order."""
    tags = [c.tag for c in claims]
    if len(set(tags)) != len(tags):
        dup = sorted({t for t in tags if tags.count(t) > 1})
        raise ValueError(f"duplicate claim tags: {dup}")
    return [c.check(ws) for c in claims]


def summarize(findings) -> dict:
    out = {v: 0 for v in VERDICTS}
    for f in findings:
        out[f.verdict] += 1
    return out
