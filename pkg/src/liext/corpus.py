"""Bundled regression cases: published claims about extended realisations, re-derived.

Every claim carries a unique location tag.  ``CONFIRM`` claims must hold as
printed; ``AUDIT`` claims were found doubtful and are reported with the
auditor's correction.
"""
from __future__ import annotations

from dataclasses import dataclass

from .audit import (
    AUDIT,
    CONFIRM,
    DeterminingClaim,
    ExtensionClaim,
    ExtractionClaim,
    IndependenceClaim,
    InvariantClaim,
    OperatorClaim,
    ProductClaim,
    PushforwardClaim,
    StructureClaim,
)

__all__ = ["CorpusCase", "CASES", "case_ids", "all_tags"]


@dataclass(frozen=True)
class CorpusCase:
    id: str
    title: str
    spec: str
    claims: tuple


def _adi(tag, expr, ext=None, klass=CONFIRM, alternatives=(), witnesses=()):
    return InvariantClaim(f"{tag}/{expr}", klass, expr=expr, kind="ADI", extension=ext, alternatives=alternatives,
                          witnesses=witnesses)


def _rdi(tag, expr, proper=None, multipliers=None, klass=CONFIRM):
    return InvariantClaim(f"{tag}/{expr}", klass, expr=expr, kind="RDI", proper=proper, multipliers=multipliers)


# -- one translation operator --------------------------------------------------

T1_SPEC = """\
problem T1;
vars x;
aux R;
op Q = d/dx;

task check_algebra;
task verify_extension a={"a(x)"};
task solve_adi ansatz=span{exp(x), exp(-x), 1, x} kmin=-2 kmax=2 ext={1};
task extract_rdi "exp(x)/R" ext={1};
task verify_rdi "exp(x)";
task pushforward op=Q ext={1} fwd={x: "x", R: "R*exp(-x)"} inv={x: "x", R: "R*exp(x)"} expect="d/dx";
task audit corpus=T1;
"""

T1_CLAIMS = (
    ExtensionClaim("translation/arbitrary-extension", coefficients=("a(x)",)),
    PushforwardClaim("translation/local-equivalence", source="d/dx + R*d/dR", target="d/dx",
                     fwd=(("x", "x"), ("R", "R*exp(-x)")), inv=(("x", "x"), ("R", "R*exp(x)"))),
    _adi("translation/extended-adi", "exp(x)/R", ext=("1",)),
    _rdi("translation/rdi", "exp(x)", proper=True, multipliers=("1",)),
    ExtractionClaim("translation/extraction", adi="exp(x)/R", rdi="exp(x)", extension=("1",)),
)


# -- two-dimensional algebras --------------------------------------------------

def _two_dim_spec(cid, q2):
    return f"""\
problem {cid};
vars x, y;
deps u(x, y);
aux R;
param eps;
op Q1 = d/dx;
op Q2 = {q2};

task check_algebra;
task determining args={{x, y}};
task extend ansatz=poly(x, y; deg<=2);
task prolong order=2;
task audit corpus={cid};
"""


_CONSISTENT = (("consistent", ("0", "1")),)
_PRINTED = ("1", "1")


def _row_invariants(row, adis, rdis, rdi_props):
    out = []
    for e in adis:
        klass = AUDIT if ("R" in e or e.startswith("u_xy^2")) else CONFIRM
        out.append(_adi(f"inv-table/{row}/adi", e, ext=_PRINTED, klass=klass, alternatives=_CONSISTENT))
    for e, (proper, mult) in zip(rdis, rdi_props):
        klass = AUDIT if e.startswith("u_xy^2") else CONFIRM
        out.append(_rdi(f"inv-table/{row}/rdi", e, proper=proper, multipliers=mult, klass=klass))
    out.append(IndependenceClaim(f"inv-table/{row}/adi-independence", exprs=tuple(adis), rank=len(adis)))
    out.append(IndependenceClaim(f"inv-table/{row}/rdi-independence", exprs=tuple(rdis), rank=len(rdis)))
    return out


_ABS = (False, ("0", "0"))

A1_CLAIMS = tuple([
    StructureClaim("two-dim/alg1/commutator", brackets=((("Q1", "Q2"), (("Q1", 1),)),)),
    DeterminingClaim("two-dim/alg1/determining", equations=("a2_x(x,y) - x*a1_x(x,y) = a1(x,y)",), args=("x", "y")),
    ExtensionClaim("ext-table/row1/general", coefficients=("a(x,y)", "x*a(x,y) + phi(y)")),
    ExtensionClaim("ext-table/row1/inequivalent", coefficients=("1", "x + eps")),
    ExtensionClaim("inv-table/row1/extension", AUDIT, coefficients=_PRINTED, candidates=_CONSISTENT),
    OperatorClaim("inv-table/row1/op1", op="Q1", printed="d/dx + R*d/dR", extension=_PRINTED),
    OperatorClaim("inv-table/row1/op2", AUDIT, op="Q2", extension=_PRINTED,
                  printed="x*d/dx - u_x*d/du_x - u_xx*d/du_xx - u_xy*d/du_xy + R*d/dR"),
] + _row_invariants(
    "row1",
    ["y", "u", "u_y", "u_yy", "u_x*R", "u_xx*R", "u_xy*R"],
    ["y", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"],
    [_ABS, _ABS, _ABS, _ABS, (True, ("0", "-1")), (True, ("0", "-2")), (True, ("0", "-1"))],
))

A2_CLAIMS = tuple([
    StructureClaim("two-dim/alg2/commutator", brackets=()),
    DeterminingClaim("two-dim/alg2/determining", equations=("a2_x(x,y) - y*a1_x(x,y) = 0",), args=("x", "y")),
    ExtensionClaim("ext-table/row2/general", coefficients=("a(x,y)", "y*a(x,y) + phi(y)")),
    ExtensionClaim("ext-table/row2/inequivalent", coefficients=("1", "y + eps")),
    ExtensionClaim("inv-table/row2/extension", coefficients=_PRINTED),
    OperatorClaim("inv-table/row2/op1", op="Q1", printed="d/dx + R*d/dR", extension=_PRINTED),
    OperatorClaim("inv-table/row2/op2", AUDIT, op="Q2", extension=_PRINTED,
                  printed="y*d/dx - u_x*d/du_y - u_xx*d/du_xy - u_xy*d/du_yy + R*d/dR"),
    ExtractionClaim("inv-table/row2/exp-cross-check", AUDIT, adi="exp(u_y/u_x)*R", rdi="exp(u_y)",
                    extension=("0", "1")),
] + _row_invariants(
    "row2",
    ["y", "u", "u_x", "u_xx", "exp(u_y/u_x)*R", "u_x*u_xy - u_y*u_xx", "u_xy^2 - 2*u_xx*u_yy"],
    ["y", "u", "u_x", "u_xx", "exp(u_y)", "u_x*u_xy - u_y*u_xx", "u_xy^2 - 2*u_xx*u_yy"],
    [_ABS, _ABS, _ABS, _ABS, (True, ("0", "-u_x")), _ABS, _ABS],
))

_ROW3_FIX = (("sign-corrected", ("Phi_x(x,y)", "Phi_y(x,y) + x*Phi_x(x,y)")),)

A3_CLAIMS = tuple([
    StructureClaim("two-dim/alg3/commutator", brackets=((("Q1", "Q2"), (("Q1", 1),)),)),
    DeterminingClaim("two-dim/alg3/determining",
                     equations=("a2_x(x,y) - x*a1_x(x,y) - a1_y(x,y) = a1(x,y)",), args=("x", "y")),
    ExtensionClaim("ext-table/row3/general", AUDIT,
                   coefficients=("Phi_x(x,y)", "Phi_y(x,y) - x*Phi_x(x,y)"), candidates=_ROW3_FIX),
    ExtensionClaim("ext-table/row3/inequivalent", AUDIT,
                   coefficients=("Phi_x(x,y)", "Phi_y(x,y) - x*Phi_x(x,y)"), candidates=_ROW3_FIX),
    ExtensionClaim("inv-table/row3/extension", AUDIT, coefficients=_PRINTED, candidates=_CONSISTENT),
    OperatorClaim("inv-table/row3/op1", op="Q1", printed="d/dx + R*d/dR", extension=_PRINTED),
    OperatorClaim("inv-table/row3/op2", AUDIT, op="Q2", extension=_PRINTED,
                  printed="x*d/dx + d/dy - u_x*d/du_x - u_xx*d/du_xx - u_xy*d/du_xy + R*d/dR"),
] + _row_invariants(
    "row3",
    ["exp(y)/R", "u", "u_y", "u_yy", "u_x*R", "u_xx*R", "u_xy*R"],
    ["exp(y)", "u", "u_y", "u_yy", "u_x", "u_xx", "u_xy"],
    [(True, ("0", "1")), _ABS, _ABS, _ABS, (True, ("0", "-1")), (True, ("0", "-2")), (True, ("0", "-1"))],
))


# -- Poincare algebra in 1+1 dimensions ----------------------------------------

P1_SPEC = """\
problem P1;
vars t, x;
deps u(t, x);
aux R;
param eps, C;
op P_t = d/dt;
op P_x = d/dx;
op J = t*d/dx + x*d/dt;

task check_algebra;
task determining args={t, x};
task extend ansatz=poly(t, x; deg<=2);
task prolong order=2 op=J ext={1, 1, "t + x + eps"};
task verify_adi "u" "u_t^2 - u_x^2" "u_tt - u_xx"
    "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)" "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)";
task verify_rdi "u_t - u_x" "u_t + u_x" "u_tt + 2*u_tx + u_xx" "u_tt - 2*u_tx + u_xx" "exp(t)" "exp(x)";
task independence {"u", "u_t^2 - u_x^2", "u_tt - u_xx",
    "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)", "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"} rank=5;
task solve_adi ansatz=poly(u_tt, u_tx, u_xx; deg<=2) order=2;
task audit corpus=P1;
"""

P2_SPEC = """\
problem P2;
vars t, x;
deps u(t, x);
aux R;
param eps, C;
op P_t = d/dt;
op P_x = d/dx;
op J = t*d/dx + x*d/dt + u*d/du;

task check_algebra;
task determining;
task prolong order=2 op=J ext={1, 1, "t + x + eps"};
task verify_adi "u_t + u_x" "(u_t - u_x)/u^2" "(u_tt - u_xx)/u"
    "(u_tt + 2*u_tx + u_xx)*u" "(u_tt - 2*u_tx + u_xx)/u^3";
task verify_rdi "u" "u_t + u_x" "u_t - u_x" "u_tt - u_xx" "u_tt + 2*u_tx + u_xx" "u_tt - 2*u_tx + u_xx";
task independence {"u_t + u_x", "(u_t - u_x)/u^2", "(u_tt - u_xx)/u",
    "(u_tt + 2*u_tx + u_xx)*u", "(u_tt - 2*u_tx + u_xx)/u^3"} rank=5;
task audit corpus=P2;
"""

_POINCARE_BRACKETS = ((("P_t", "P_x"), ()), (("P_t", "J"), (("P_x", 1),)), (("P_x", "J"), (("P_t", 1),)))
_EPS0 = ("1", "1", "t + x")
_EPS1 = ("1", "1", "t + x + 1")
_EPS_ONLY = (("epsilon-only", ("0", "0", "1")),)
# R -> 1/R flips the sign of every a_m
_EPS_NEG = (("epsilon-only-inverted", ("0", "0", "-1")),)

_J_PRINTED = ("t*(d/dx + R*d/dR) + x*(d/dt + R*d/dR) - u_t*d/du_x - u_x*d/du_t - u_tt*d/du_xt"
              " - 2*u_xt*(d/du_xx + d/du_tt) - u_xx*d/du_xt + eps*R*d/dR")

P1_CLAIMS = (
    StructureClaim("poincare/commutators", brackets=_POINCARE_BRACKETS),
    DeterminingClaim("poincare/determining", args=("t", "x"), equations=(
        "a1_x(t,x) = a2_t(t,x)",
        "a3_t(t,x) - t*a1_x(t,x) - x*a1_t(t,x) = a2(t,x)",
        "a3_x(t,x) - t*a2_x(t,x) - x*a2_t(t,x) = a1(t,x)")),
    ExtensionClaim("poincare/extension-family",
                   coefficients=("Phi_t(t,x)", "Phi_x(t,x)", "t*Phi_x(t,x) + x*Phi_t(t,x) + C")),
    ExtensionClaim("poincare/inequivalent-extension", coefficients=("1", "1", "t + x + eps")),
    _adi("poincare/exp-adi", "exp(t)/R", ext=_EPS0, klass=AUDIT, alternatives=_EPS_ONLY),
    _adi("poincare/exp-adi", "exp(x)/R", ext=_EPS0, klass=AUDIT, alternatives=_EPS_ONLY),
    _rdi("poincare/exp-rdi", "exp(t)", proper=True, multipliers=("1", "0", "x")),
    _rdi("poincare/exp-rdi", "exp(x)", proper=True, multipliers=("0", "1", "t")),
    OperatorClaim("poincare/extended-prolongation/P_t", op="P_t", printed="d/dt + R*d/dR",
                  extension=("1", "1", "t + x + eps")),
    OperatorClaim("poincare/extended-prolongation/P_x", op="P_x", printed="d/dx + R*d/dR",
                  extension=("1", "1", "t + x + eps")),
    OperatorClaim("poincare/extended-prolongation/J", op="J", printed=_J_PRINTED,
                  extension=("1", "1", "t + x + eps")),
    _adi("poincare/first-order-adi", "(u_t + u_x)/R", ext=_EPS1, klass=AUDIT,
         alternatives=_EPS_ONLY, witnesses=_EPS_NEG),
    _adi("poincare/first-order-adi", "(u_t - u_x)*R", ext=_EPS1, klass=AUDIT,
         alternatives=_EPS_ONLY, witnesses=_EPS_NEG),
    _rdi("poincare/first-order-rdi", "u_t + u_x", proper=True),
    _rdi("poincare/first-order-rdi", "u_t - u_x", proper=True),
    OperatorClaim("poincare/second-order-determining", AUDIT, op="J", extension=("0", "0", "1"), sign=-1,
                  restrict=("u_tt", "u_tx", "u_xx", "R"),
                  printed="2*u_xt*(d/du_xx + d/du_tt) + (u_xx + u_tt)*d/du_xt + R*d/dR"),
    _adi("poincare/second-order-adi", "u_tt - u_xx", ext=_EPS1, alternatives=_EPS_ONLY, witnesses=_EPS_NEG),
    _adi("poincare/second-order-adi", "(u_tt + 2*u_tx + u_xx)/R^2", ext=_EPS1, klass=AUDIT,
         alternatives=_EPS_ONLY, witnesses=_EPS_NEG),
    _adi("poincare/second-order-adi", "(u_tt - 2*u_tx + u_xx)*R^2", ext=_EPS1, klass=AUDIT,
         alternatives=_EPS_ONLY, witnesses=_EPS_NEG),
    _rdi("poincare/second-order-rdi", "u_tt + 2*u_tx + u_xx", proper=True),
    _rdi("poincare/second-order-rdi", "u_tt - 2*u_tx + u_xx", proper=True),
    _rdi("poincare/wave-operator-absolute", "u_tt - u_xx", proper=False),
    _adi("poincare/adi-basis", "u"),
    _adi("poincare/adi-basis", "u_t^2 - u_x^2"),
    _adi("poincare/adi-basis", "u_tt - u_xx"),
    _adi("poincare/adi-basis", "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)"),
    _adi("poincare/adi-basis", "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)"),
    IndependenceClaim("poincare/adi-independence", rank=5, exprs=(
        "u", "u_t^2 - u_x^2", "u_tt - u_xx",
        "(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)", "(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)")),
    _rdi("poincare/rdi-basis", "u_t - u_x", proper=True, multipliers=("0", "0", "1")),
    _rdi("poincare/rdi-basis", "u_t + u_x", proper=True, multipliers=("0", "0", "-1")),
    _rdi("poincare/rdi-basis", "u_tt + 2*u_tx + u_xx", proper=True, multipliers=("0", "0", "-2")),
    _rdi("poincare/rdi-basis", "u_tt - 2*u_tx + u_xx", proper=True, multipliers=("0", "0", "2")),
    ProductClaim("poincare/products/fourth", product="(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)",
                 factors=(("u_t - u_x", 2), ("u_tt + 2*u_tx + u_xx", 1))),
    ProductClaim("poincare/products/fifth", product="(u_t + u_x)^2*(u_tt - 2*u_tx + u_xx)",
                 factors=(("u_t + u_x", 2), ("u_tt - 2*u_tx + u_xx", 1))),
    ProductClaim("poincare/products/extended", product="(u_t - u_x)^2*(u_tt + 2*u_tx + u_xx)",
                 factors=(("(u_t - u_x)*R", 2), ("(u_tt + 2*u_tx + u_xx)/R^2", 1))),
)

_P2_J_PRINTED = ("t*(d/dx + R*d/dR) + x*(d/dt + R*d/dR) + u*d/du + u_x*d/du_x + u_t*d/du_t"
                 " + u_xx*d/du_xx + 2*u_xt*d/du_xt + u_tt*d/du_t - u_t*d/du_x - u_x*d/du_t"
                 " - u_tt*d/du_xt - 2*u_xt*(d/du_xx + d/du_tt) - u_xx*d/du_xt + eps*R*d/dR")

P2_CLAIMS = (
    StructureClaim("nonlinear/commutators", brackets=_POINCARE_BRACKETS),
    _adi("nonlinear/adi-basis", "u_t + u_x"),
    _adi("nonlinear/adi-basis", "(u_t - u_x)/u^2"),
    _adi("nonlinear/adi-basis", "(u_tt - u_xx)/u"),
    _adi("nonlinear/adi-basis", "(u_tt + 2*u_tx + u_xx)*u"),
    _adi("nonlinear/adi-basis", "(u_tt - 2*u_tx + u_xx)/u^3"),
    IndependenceClaim("nonlinear/adi-independence", rank=5, exprs=(
        "u_t + u_x", "(u_t - u_x)/u^2", "(u_tt - u_xx)/u", "(u_tt + 2*u_tx + u_xx)*u",
        "(u_tt - 2*u_tx + u_xx)/u^3")),
    DeterminingClaim("nonlinear/determining", args=("t", "x", "u"), equations=(
        "a1_x(t,x,u) = a2_t(t,x,u)",
        "a3_t(t,x,u) - t*a1_x(t,x,u) - x*a1_t(t,x,u) - u*a1_u(t,x,u) = a2(t,x,u)",
        "a3_x(t,x,u) - t*a2_x(t,x,u) - x*a2_t(t,x,u) - u*a2_u(t,x,u) = a1(t,x,u)")),
    ExtensionClaim("nonlinear/extension-family", coefficients=(
        "Phi_t(t,x,u)", "Phi_x(t,x,u)", "t*Phi_x(t,x,u) + x*Phi_t(t,x,u) + u*Phi_u(t,x,u) + C")),
    ExtensionClaim("nonlinear/inequivalent-extension", coefficients=("1", "1", "t + x + eps")),
    _adi("nonlinear/exp-adi", "exp(t)/R", ext=_EPS0, klass=AUDIT, alternatives=_EPS_ONLY),
    _adi("nonlinear/exp-adi", "exp(x)/R", ext=_EPS0, klass=AUDIT, alternatives=_EPS_ONLY),
    _rdi("nonlinear/exp-rdi", "exp(t)", proper=True),
    _rdi("nonlinear/exp-rdi", "exp(x)", proper=True),
    OperatorClaim("nonlinear/extended-prolongation/J", AUDIT, op="J", printed=_P2_J_PRINTED,
                  extension=("1", "1", "t + x + eps")),
    _rdi("nonlinear/rdi-list", "u", proper=True),
    _rdi("nonlinear/rdi-list", "u_t + u_x", proper=False),
    _rdi("nonlinear/rdi-list", "u_t - u_x", proper=True),
    _rdi("nonlinear/rdi-list", "u_tt - u_xx", proper=True),
    _rdi("nonlinear/rdi-list", "u_tt + 2*u_tx + u_xx", proper=True),
    _rdi("nonlinear/rdi-list", "u_tt - 2*u_tx + u_xx", proper=True),
)


CASES = {
    "T1": CorpusCase("T1", "single translation operator", T1_SPEC, T1_CLAIMS),
    "A1": CorpusCase("A1", "two-dimensional algebra d/dx, x*d/dx", _two_dim_spec("A1", "x*d/dx"), A1_CLAIMS),
    "A2": CorpusCase("A2", "two-dimensional algebra d/dx, y*d/dx", _two_dim_spec("A2", "y*d/dx"), A2_CLAIMS),
    "A3": CorpusCase("A3", "two-dimensional algebra d/dx, x*d/dx + d/dy",
                     _two_dim_spec("A3", "x*d/dx + d/dy"), A3_CLAIMS),
    "P1": CorpusCase("P1", "Poincare algebra P(1,1), standard realisation", P1_SPEC, P1_CLAIMS),
    "P2": CorpusCase("P2", "Poincare algebra P(1,1), realisation with u*d/du", P2_SPEC, P2_CLAIMS),
}


def case_ids() -> list[str]:
    return list(CASES)


def all_tags() -> list[str]:
    return [c.tag for case in CASES.values() for c in case.claims]
