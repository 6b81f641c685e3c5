"""Independent reference computations built on sympy.

Nothing here imports the package's symbolic core; tests compare the two.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

import sympy as sp


def to_sympy(e):
    """Printed form -> sympy expression (``^`` becomes ``**``)."""
    return sp.sympify(str(e).replace("^", "**"))


def same(a, b) -> bool:
    return sp.simplify(to_sympy(a) - to_sympy(b)) == 0


def jet_symbol(dep: str, J) -> sp.Symbol:
    return sp.Symbol(f"{dep}_{''.join(sorted(J))}") if J else sp.Symbol(dep)


def total_derivative(f, i: str, indep, dep: str, order: int):
    """D_i f on the jet of ``dep`` up to ``order`` (f may involve order-``order - 1`` terms)."""
    out = sp.diff(f, sp.Symbol(i))
    for r in range(0, order):
        for J in combinations_with_replacement(indep, r):
            out += jet_symbol(dep, J + (i,)) * sp.diff(f, jet_symbol(dep, J))
    return out


def characteristic_prolongation(xi: dict, phi, indep, dep: str, order: int) -> dict:
    """Coefficients ``eta^J`` from the characteristic ``Q = phi - xi^i u_i``.

    ``eta^J = D_J Q + xi^i u_{J,i}``.
    """
    Q = phi - sum(xi.get(i, 0) * jet_symbol(dep, (i,)) for i in indep)
    out = {}
    for r in range(1, order + 1):
        for J in combinations_with_replacement(indep, r):
            val = Q
            for k, i in enumerate(J):
                val = total_derivative(val, i, indep, dep, order + 1)
            val += sum(xi.get(i, 0) * jet_symbol(dep, J + (i,)) for i in indep)
            out[str(jet_symbol(dep, J))] = sp.expand(val)
    return out


def poincare_extension_nullity(degree: int = 2) -> int:
    """Dimension of polynomial linear extensions of d/dt, d/dx, t d/dx + x d/dt.

    Unknowns are the coefficients of ``a, b, c`` in every monomial of degree
    ``<= degree``; the conditions
    ``a_x - b_t = 0``, ``c_t - (t a_x + x a_t) = b``, ``c_x - (t b_x + x b_t) = a``
    are expanded and matched monomial by monomial.
    """
    t, x = sp.symbols("t x")
    monos = [t ** i * x ** j for i in range(degree + 1) for j in range(degree + 1 - i)]
    coeffs = {}
    funcs = {}
    for name in "abc":
        cs = sp.symbols(f"{name}0:{len(monos)}")
        coeffs[name] = cs
        funcs[name] = sum(c * m for c, m in zip(cs, monos))
    a, b, c = funcs["a"], funcs["b"], funcs["c"]

    def J(f):
        return t * sp.diff(f, x) + x * sp.diff(f, t)

    conds = [
        sp.diff(b, t) - sp.diff(a, x),
        sp.diff(c, t) - J(a) - b,
        sp.diff(c, x) - J(b) - a,
    ]
    unknowns = [s for name in "abc" for s in coeffs[name]]
    rows = []
    for cond in conds:
        poly = sp.Poly(sp.expand(cond), t, x)
        for coeff in poly.coeffs():
            rows.append([sp.diff(coeff, u) for u in unknowns])
    M = sp.Matrix(rows)
    return len(unknowns) - M.rank()


def jacobian_rank(exprs, variables, points) -> int:
    """Max rank of the Jacobian over the given substitution points."""
    syms = [sp.Symbol(v) for v in variables]
    fs = [to_sympy(e) for e in exprs]
    Jm = sp.Matrix([[sp.diff(f, s) for s in syms] for f in fs])
    best = 0
    for p in points:
        sub = {sp.Symbol(k): v for k, v in p.items()}
        best = max(best, Jm.subs(sub).rank())
    return best
