"""Algebraic laws checked on generated inputs (hypothesis, derandomized)."""
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from liext import (Ansatz, Chart, JetSpace, VectorField, commutator, diff, eval_at, parse, prolong,
                   pushforward, solve_adi, total_derivative, verify_rdi)
from liext.corpus import CASES
from liext.dsl import parse_spec
from liext.workspace import Workspace

from oracles import characteristic_prolongation, to_sympy

TX = Chart(("t", "x"), ("u",))
SETTINGS = settings(max_examples=50, deadline=None, derandomize=True)
SMALL = settings(max_examples=15, deadline=None, derandomize=True)

small_int = st.integers(-3, 3)


def poly_text(variables, max_deg=2):
    monos = [(i, j, k) for i in range(max_deg + 1) for j in range(max_deg + 1) for k in range(max_deg + 1)
             if i + j + k <= max_deg][: 4 ** len(variables)]

    def build(cs):
        parts = []
        for c, powers in zip(cs, monos):
            if c:
                factors = [f"{v}^{p}" for v, p in zip(variables, powers) if p]
                parts.append("*".join([f"({c})"] + factors))
        return " + ".join(parts) or "0"

    return st.lists(small_int, min_size=len(monos), max_size=len(monos)).map(build)


polys = poly_text(("t", "x", "u"))
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def field(draw_texts, names=("t", "x", "u")):
    return VectorField(dict(zip(names, (parse(s) for s in draw_texts))), chart=TX)


fields = st.tuples(polys, polys, polys).map(field)


@SETTINGS
@given(polys, polys)
def test_canonical_form_is_unique(p, q):
    e = parse(f"({p})*({q}) - ({q})*({p})")
    assert e.is_zero()
    assert parse(f"({p}) + ({q})") == parse(f"({q}) + ({p})")


@SETTINGS
@given(polys, polys, rationals, rationals, rationals)
def test_evaluation_is_a_ring_homomorphism(p, q, t, x, u):
    pt = {"t": t, "x": x, "u": u}
    P, Q = parse(p), parse(q)
    assert eval_at(P * Q, pt) == eval_at(P, pt) * eval_at(Q, pt)
    assert eval_at(P - Q, pt) == eval_at(P, pt) - eval_at(Q, pt)


@SETTINGS
@given(polys, polys)
def test_derivative_is_a_derivation_and_partials_commute(p, q):
    P, Q = parse(p), parse(q)
    assert diff(P * Q, "x") == diff(P, "x") * Q + P * diff(Q, "x")
    assert diff(diff(P, "t"), "u") == diff(diff(P, "u"), "t")


@SETTINGS
@given(fields, fields, fields)
def test_bracket_antisymmetry_and_jacobi(A, B, C):
    assert (commutator(A, B) + commutator(B, A)).is_zero()
    jac = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) + commutator(C, commutator(A, B))
    assert jac.is_zero()


@SMALL
@given(polys)
def test_total_derivatives_commute(p):
    jet = JetSpace(TX, 3)
    f = parse(p) * parse("u_t") + parse("u_x")
    assert total_derivative(jet, "t", total_derivative(jet, "x", f)) == \
        total_derivative(jet, "x", total_derivative(jet, "t", f))


@SMALL
@given(fields)
def test_prolongation_agrees_with_characteristic_formula(Q):
    got = prolong(Q, JetSpace(TX, 2))
    xi = {v: to_sympy(Q.coefficient(v)) for v in ("t", "x")}
    ref = characteristic_prolongation(xi, to_sympy(Q.coefficient("u")), ("t", "x"), "u", 2)
    for name, val in ref.items():
        assert sp.expand(to_sympy(got.coefficient(name)) - val) == 0


@SMALL
@given(fields, fields)
def test_prolongation_preserves_brackets_on_random_fields(A, B):
    for order in (1, 2):
        jet = JetSpace(TX, order)
        assert prolong(commutator(A, B), jet) == commutator(prolong(A, jet), prolong(B, jet))


def test_prolongation_preserves_brackets_on_corpus_algebras():
    for cid in CASES:
        ws = Workspace(parse_spec(CASES[cid].spec))
        names = ws.op_names()
        base = ws.unextended()
        for order in (1, 2):
            jet = ws.jet(order)
            for i in range(len(base)):
                for j in range(i + 1, len(base)):
                    lhs = prolong(commutator(base[i], base[j]), jet)
                    rhs = commutator(prolong(base[i], jet), prolong(base[j], jet))
                    assert lhs == rhs, (cid, names[i], names[j], order)


@SMALL
@given(fields, fields, st.integers(1, 3), small_int)
def test_pushforward_is_natural_for_brackets(A, B, k, s):
    fwd = {"t": f"t + ({s})*x", "x": f"{k}*x", "u": "u + t"}
    inv = {"t": f"t - ({s})/{k}*x", "x": f"x/{k}", "u": f"u - t + ({s})/{k}*x"}
    lhs = pushforward(commutator(A, B), fwd, inv)
    rhs = commutator(pushforward(A, fwd, inv), pushforward(B, fwd, inv))
    assert lhs == rhs


def _p1():
    ws = Workspace(parse_spec(CASES["P1"].spec))
    return ws, ws.operators(None, None, 2)


RDIS = ["u_t + u_x", "u_t - u_x", "u_tt - u_xx", "u"]


@SMALL
@given(st.lists(st.sampled_from(RDIS), min_size=1, max_size=3), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_rdi_products_and_powers_are_rdi(factors, powers):
    ws, _ = _p1()
    ops = [prolong(Q, ws.jet(2)) for Q in ws.unextended()]
    theta = parse("1")
    lam = [parse("0")] * len(ops)
    for f, n in zip(factors, powers):
        rep = verify_rdi(ops, parse(f))
        theta = theta * parse(f"({f})") ** n
        lam = [a + n * m for a, m in zip(lam, rep.multipliers)]
    rep = verify_rdi(ops, theta)
    assert rep.is_rdi
    assert list(rep.multipliers) == lam


EXT = ("1", "0", "x")


@SMALL
@given(polys, st.integers(-2, 2))
def test_grading_identity(p, K):
    ws, _ = _p1()
    ext_ops = ws.operators(None, EXT, 0)
    base = ws.unextended()
    F = parse(p)
    for Q, Q0, a in zip(ext_ops, base, EXT):
        assert Q(F * parse("R") ** K) == (Q0(F) + K * parse(a) * F) * parse("R") ** K


@SMALL
@given(st.integers(-2, 2))
def test_solver_returns_only_genuine_invariants(K):
    ws, _ = _p1()
    ops = ws.operators(None, EXT, 1)
    ansatz = Ansatz.poly(("u_t", "u_x"), 2, exact=True)
    found = solve_adi(ops, ansatz, krange=(K, K), require_invariant=False)
    if K == 0:
        assert len(found) == 1 and (found[0].factor + parse("u_t^2 - u_x^2")).is_zero()
    for cand in found:
        assert cand.k == K
        assert all(Q(cand.expr).is_zero() for Q in ops)
