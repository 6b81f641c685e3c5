"""Linear extensions ``Q_m + a_m R d/dR`` of a realisation.

The determining equations ``Q_m(a_n) - Q_n(a_m) = sum_k c[m][n][k] a_k`` are
linear, so inside a finite ansatz ``a_m = sum_j alpha_mj b_j`` they reduce to
an exact homogeneous system in the ``alpha``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .expr import ONE, ZERO, Expr, as_expr, func, var
from .linalg import nullspace
from .vector_field import StructureConstants, VectorField

__all__ = [
    "Ansatz",
    "AnsatzNotInvariant",
    "EmptyFamily",
    "DeterminingEquation",
    "ExtensionFamily",
    "ExtensionCheck",
    "linear_relations",
    "span_coordinates",
    "determining_equations",
    "solve_extensions",
    "verify_extension",
    "extend",
    "extension_coefficients",
]


class AnsatzNotInvariant(ValueError):
    def __init__(self, message, element=None, image=None):
        super().__init__(message)
        self.element = element
        self.image = image


class EmptyFamily(ValueError):
    pass


def linear_relations(exprs: Sequence[Expr]) -> list[list[Fraction]]:
    """Basis of rational vectors ``v`` with ``sum v_i exprs[i] == 0`` identically.

    Denominators are cleared and numerator terms matched coefficient by
    coefficient; exponential and function atoms are independent
    indeterminates, so the answer is exact.
    """
    exprs = [as_expr(e) for e in exprs]
    return nullspace(_coefficient_matrix(exprs), len(exprs))


def span_coordinates(e: Expr, basis: Sequence[Expr]):
    """Coordinates of ``e`` in ``basis`` (assumed independent), or ``None`` outside the span."""
    if as_expr(e).is_zero():
        return [Fraction(0)] * len(basis)
    for v in linear_relations([e] + list(basis)):
        if v[0]:
            return [-x / v[0] for x in v[1:]]
    return None


@dataclass(frozen=True)
class Ansatz:
    """Finite basis of candidate functions."""

    basis: tuple
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(as_expr(b) for b in self.basis))
        if not self.basis:
            raise ValueError("empty ansatz")
        if linear_relations(self.basis):
            raise ValueError(f"ansatz elements are linearly dependent: {self.description or self.basis}")

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    @classmethod
    def poly(cls, variables: Sequence[str], degree: int, *, exact: bool = False,
             multipliers: Sequence = ("1",)) -> "Ansatz":
        """Monomials in ``variables`` of degree ``<= degree`` (or ``== degree``), times each multiplier."""
        monos = []
        lo = degree if exact else 0
        for r in range(lo, degree + 1):
            for combo in combinations_with_replacement(variables, r):
                m = ONE
                for v in combo:
                    m = m * var(v)
                monos.append(m)
        mults = [as_expr(x) for x in multipliers]
        basis = [mu * m for mu in mults for m in monos]
        op = "==" if exact else "<="
        desc = f"poly({', '.join(variables)}; deg{op}{degree})"
        if [str(x) for x in mults] != ["1"]:
            desc += " * {" + ", ".join(str(x) for x in mults) + "}"
        return cls(tuple(basis), desc)

    @classmethod
    def span(cls, elements: Sequence) -> "Ansatz":
        elems = tuple(as_expr(e) for e in elements)
        return cls(elems, "span{" + ", ".join(str(e) for e in elems) + "}")

    def check_solver_domain(self):
        for b in self.basis:
            for poly in (b.num, b.den):
                for _, exparg in poly:
                    if exparg is not None and not exparg.is_polynomial():
                        raise ValueError(f"solver ansatz needs polynomial exp arguments: {b}")
            if b.has_func():
                raise ValueError(f"solver ansatz cannot contain opaque functions: {b}")

    def __str__(self):
        return self.description or "span{" + ", ".join(map(str, self.basis)) + "}"


@dataclass(frozen=True)
class DeterminingEquation:
    """``lhs == rhs`` for the operator pair ``(m, n)``."""

    m: int
    n: int
    lhs: Expr
    rhs: Expr

    @property
    def residual(self) -> Expr:
        return self.lhs - self.rhs

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


def _unknowns(basis: Sequence[VectorField], args):
    if args is None:
        names = []
        for Q in basis:
            if Q.chart is not None:
                pool = Q.chart.independent + Q.chart.dependent
                names.extend(n for n in pool if n not in names)
        if not names:
            names = sorted({s for Q in basis for s in Q.support()})
        args = tuple(names)
    return [func(f"a{m + 1}", args) for m in range(len(basis))]


def _conditions(basis, c: StructureConstants, a):
    out = []
    for m in range(len(basis)):
        for n in range(m + 1, len(basis)):
            lhs = basis[m](a[n]) - basis[n](a[m])
            rhs = ZERO
            for k, ck in c.bracket(m, n).items():
                rhs = rhs + ck * a[k]
            out.append(DeterminingEquation(m, n, lhs, rhs))
    return out


def determining_equations(basis: Sequence[VectorField], c: StructureConstants,
                          args: Sequence[str] | None = None) -> list[DeterminingEquation]:
    """Conditions on ``a_m`` (opaque ``a1(..)``, ``a2(..)``, ...) for ``m < n``."""
    return _conditions(list(basis), c, _unknowns(basis, args))


@dataclass(frozen=True)
class ExtensionCheck:
    ok: bool
    residuals: tuple

    def __bool__(self):
        return self.ok


def verify_extension(basis: Sequence[VectorField], c: StructureConstants, a: Sequence) -> ExtensionCheck:
    """Substitute concrete ``a_m`` (opaque symbols allowed) into the determining equations."""
    a = [as_expr(x) for x in a]
    if len(a) != len(basis):
        raise ValueError("need one extension coefficient per operator")
    res = tuple(((eq.m, eq.n), eq.residual) for eq in _conditions(list(basis), c, a))
    return ExtensionCheck(all(r.is_zero() for _, r in res), res)


@dataclass(frozen=True)
class ExtensionFamily:
    """Basis solutions ``(a_1, ..., a_M)``; any rational combination is again a solution."""

    members: tuple
    ansatz: Ansatz
    coordinates: tuple = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.members)

    def combine(self, params: Sequence) -> tuple:
        if len(params) != self.dimension:
            raise ValueError("one parameter per family member")
        M = len(self.members[0])
        out = [ZERO] * M
        for p, mem in zip(params, self.members):
            for i in range(M):
                out[i] = out[i] + as_expr(p) * mem[i]
        return tuple(out)

    def constant_members(self) -> list:
        return [i for i, mem in enumerate(self.members) if all(x.is_constant() for x in mem)]

    def normalization_note(self) -> str:
        idx = self.constant_members()
        if not idx:
            return "no constant-only member"
        return ("constant-only member(s) " + ", ".join(str(i + 1) for i in idx)
                + " can be rescaled by R -> kappa*R; the 0/1 normalization is not applied")


def solve_extensions(basis: Sequence[VectorField], c: StructureConstants, ansatz: Ansatz,
                     require_invariant: bool = True) -> ExtensionFamily:
    """All linear extensions with every ``a_m`` in ``span(ansatz)``.

    Raises :class:`AnsatzNotInvariant` if some ``Q_m(b_j)`` leaves the span and
    :class:`EmptyFamily` if only the zero extension remains.
    """
    basis = list(basis)
    ansatz.check_solver_domain()
    M, N = len(basis), len(ansatz)
    images = [[Q(b) for b in ansatz.basis] for Q in basis]
    if require_invariant:
        for m in range(M):
            for j, img in enumerate(images[m]):
                if span_coordinates(img, ansatz.basis) is None:
                    raise AnsatzNotInvariant(
                        f"Q{m + 1}({ansatz.basis[j]}) = {img} is outside {ansatz}",
                        element=ansatz.basis[j], image=img)
    nvar = M * N
    rows = []
    for m in range(M):
        for n in range(m + 1, M):
            cols = [ZERO] * nvar
            for j in range(N):
                cols[n * N + j] = cols[n * N + j] + images[m][j]
                cols[m * N + j] = cols[m * N + j] - images[n][j]
                for k, ck in c.bracket(m, n).items():
                    cols[k * N + j] = cols[k * N + j] - ck * ansatz.basis[j]
            rows.extend(_coefficient_matrix(cols))
    sols = nullspace(rows, nvar)
    if not sols:
        raise EmptyFamily(f"only the zero extension lies in {ansatz}")
    members = []
    for v in sols:
        a = []
        for m in range(M):
            s = ZERO
            for j in range(N):
                if v[m * N + j]:
                    s = s + v[m * N + j] * ansatz.basis[j]
            a.append(s)
        check = verify_extension(basis, c, a)
        if not check:
            raise AssertionError(f"solver produced an invalid extension {a}")
        members.append(tuple(a))
    return ExtensionFamily(tuple(members), ansatz, tuple(tuple(v) for v in sols))


def _coefficient_matrix(cols: Sequence[Expr]) -> list[list[Fraction]]:
    """Rows of the linear conditions ``sum_v alpha_v cols[v] == 0``."""
    dens = []
    for e in cols:
        den = e.denominator()
        if den != ONE and den not in dens:
            dens.append(den)
    common = ONE
    for den in dens:
        common = common * den
    rows = {}
    for j, e in enumerate(cols):
        p = e * common if dens else e
        for mono, coef in p.num.items():
            rows.setdefault(mono, [Fraction(0)] * len(cols))[j] = Fraction(coef)
    return list(rows.values())


def extend(basis: Sequence[VectorField], a: Sequence, ancillary: str = "R") -> list[VectorField]:
    """The extended operators ``Q_m + a_m * R * d/dR``."""
    R = var(ancillary)
    out = []
    for Q, am in zip(basis, a):
        coeffs = Q.coefficients
        coeffs[ancillary] = coeffs.get(ancillary, ZERO) + as_expr(am) * R
        out.append(VectorField(coeffs, Q.chart))
    return out


def extension_coefficients(ops: Sequence[VectorField], ancillary: str = "R") -> list[Expr]:
    """Read ``a_m`` back from linearly extended operators."""
    out = []
    for Q in ops:
        a = Q.coefficient(ancillary) / var(ancillary)
        if ancillary in a.variables():
            raise ValueError(f"{Q} is not linear in {ancillary}")
        out.append(a)
    return out
