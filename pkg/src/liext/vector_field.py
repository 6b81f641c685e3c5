"""First-order differential operators on a variable chart."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .expr import ZERO, DomainError, Expr, SingularPoint, as_expr, var
from .linalg import rank, solve
from .sampling import DEFAULT_SEED, MAX_RETRIES, points

__all__ = [
    "Chart",
    "VectorField",
    "StructureConstants",
    "NotClosed",
    "DependentBasis",
    "NotInverse",
    "DomainEscape",
    "apply",
    "commutator",
    "structure_constants",
    "structure_residuals",
    "pushforward",
    "d",
]


class NotClosed(ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DependentBasis(ValueError):
    pass


class NotInverse(ValueError):
    pass


class DomainEscape(DomainError):
    pass


@dataclass(frozen=True)
class Chart:
    """Ordered variable names split by role."""

    independent: tuple = ()
    dependent: tuple = ()
    ancillary: tuple = ()
    derivatives: tuple = ()

    def __post_init__(self):
        for f in ("independent", "dependent", "ancillary", "derivatives"):
            object.__setattr__(self, f, tuple(getattr(self, f)))
        names = self.variables
        if not names:
            raise ValueError("a chart needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in chart: {names}")

    @property
    def variables(self) -> tuple:
        return self.independent + self.dependent + self.derivatives + self.ancillary

    def __contains__(self, name):
        return name in self.variables


class VectorField:
    """``sum_s coeff[s] * d/d(s)``; missing names have zero coefficient.

    Instances are immutable.  ``chart`` is optional and only used for
    validation and ordering.
    """

    __slots__ = ("_coeffs", "chart")

    def __init__(self, coeffs: Mapping[str, object] = None, chart: Chart | None = None):
        items = {k: as_expr(v) for k, v in (coeffs or {}).items()}
        items = {k: v for k, v in items.items() if not v.is_zero()}
        if chart is not None:
            unknown = [k for k in items if k not in chart]
            if unknown:
                raise ValueError(f"variables {unknown} are not in the chart")
            order = {n: i for i, n in enumerate(chart.variables)}
            keys = sorted(items, key=lambda k: order[k])
            for name in chart.ancillary:
                for v in items.values():
                    for a in v.atoms():
                        if hasattr(a, "args") and name in a.args:
                            raise ValueError(f"ancillary {name} used as a function argument")
        else:
            keys = sorted(items)
        self._coeffs = tuple((k, items[k]) for k in keys)
        self.chart = chart

    @property
    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def coefficient(self, name: str) -> Expr:
        for k, v in self._coeffs:
            if k == name:
                return v
        return ZERO

    def support(self) -> tuple:
        return tuple(k for k, _ in self._coeffs)

    def __call__(self, e) -> Expr:
        e = as_expr(e)
        present = e.variables()
        total = ZERO
        for k, c in self._coeffs:
            if k in present:
                total = total + c * e.diff(k)
        return total

    def __add__(self, other: "VectorField") -> "VectorField":
        d = self.coefficients
        for k, v in other._coeffs:
            d[k] = d.get(k, ZERO) + v
        return VectorField(d, self.chart or other.chart)

    def __neg__(self):
        return VectorField({k: -v for k, v in self._coeffs}, self.chart)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "VectorField":
        factor = as_expr(factor)
        return VectorField({k: factor * v for k, v in self._coeffs}, self.chart)

    def __rmul__(self, factor):
        return self.scale(factor)

    def without(self, names: Iterable[str]) -> "VectorField":
        names = set(names)
        return VectorField({k: v for k, v in self._coeffs if k not in names}, self.chart)

    def restrict(self, names: Iterable[str]) -> "VectorField":
        names = set(names)
        return VectorField({k: v for k, v in self._coeffs if k in names}, self.chart)

    def with_chart(self, chart: Chart) -> "VectorField":
        return VectorField(dict(self._coeffs), chart)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return dict(self._coeffs) == dict(other._coeffs)

    def __hash__(self):
        return hash(frozenset(self._coeffs))

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in self._coeffs:
            s = str(c)
            if s == "1":
                parts.append(f"d/d{k}")
            elif s == "-1":
                parts.append(f"-d/d{k}")
            elif len(c.num) > 1 and c.is_polynomial():
                parts.append(f"({s})*d/d{k}")
            else:
                parts.append(f"{s}*d/d{k}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"VectorField({str(self)!r})"


def d(name: str, coeff=1) -> VectorField:
    """``coeff * d/d(name)``."""
    return VectorField({name: coeff})


def apply(Q: VectorField, e) -> Expr:
    return Q(e)


def commutator(Q1: VectorField, Q2: VectorField) -> VectorField:
    """``[Q1, Q2] = Q1 Q2 - Q2 Q1`` as a first-order operator."""
    names = dict.fromkeys(Q1.support() + Q2.support())
    coeffs = {s: Q1(Q2.coefficient(s)) - Q2(Q1.coefficient(s)) for s in names}
    return VectorField(coeffs, Q1.chart or Q2.chart)


@dataclass(frozen=True)
class StructureConstants:
    """``table[m][n][k]`` with ``[Q_m, Q_n] = sum_k table[m][n][k] Q_k`` (0-based)."""

    table: tuple
    names: tuple = field(default=())

    @property
    def dim(self) -> int:
        return len(self.table)

    def __getitem__(self, mnk):
        m, n, k = mnk
        return self.table[m][n][k]

    def bracket(self, m: int, n: int) -> dict:
        return {k: c for k, c in enumerate(self.table[m][n]) if c}

    def is_antisymmetric(self) -> bool:
        M = self.dim
        return all(self.table[m][n][k] == -self.table[n][m][k]
                   for m in range(M) for n in range(M) for k in range(M))

    def satisfies_jacobi(self) -> bool:
        c, M = self.table, self.dim
        for m in range(M):
            for n in range(M):
                for p in range(M):
                    for k in range(M):
                        s = sum(c[m][n][r] * c[r][p][k] + c[n][p][r] * c[r][m][k] + c[p][m][r] * c[r][n][k]
                                for r in range(M))
                        if s:
                            return False
        return True

    def format_bracket(self, m: int, n: int) -> str:
        names = self.names or tuple(f"Q{i + 1}" for i in range(self.dim))
        parts = []
        for k, c in self.bracket(m, n).items():
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            parts.append(f"{coef}{names[k]}")
        rhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"[{names[m]}, {names[n]}] = {rhs}"


def _coefficient_rows(fields: Sequence[VectorField], names, point):
    return [[f.coefficient(s).eval(point) for f in fields] for s in names]


def _sampled_rows(fields, names, seed, npoints):
    rows = []
    good = failures = 0
    stream = points(seed)
    while good < npoints:
        p = next(stream)
        try:
            rows.extend(_coefficient_rows(fields, names, p))
        except SingularPoint:
            failures += 1
            if failures > MAX_RETRIES:
                raise
            continue
        good += 1
    return rows


def check_independent(basis: Sequence[VectorField], seed: int = DEFAULT_SEED) -> None:
    """Raise :class:`DependentBasis` unless the fields are independent over constants."""
    names = sorted({s for Q in basis for s in Q.support()})
    if not names:
        if basis:
            raise DependentBasis("zero operator in basis")
        return
    rows = _sampled_rows(basis, names, seed, len(basis) + 2)
    if rank(rows, len(basis)) < len(basis):
        raise DependentBasis("basis operators are linearly dependent over constants")


def structure_constants(basis: Sequence[VectorField], names: Sequence[str] = (),
                        seed: int = DEFAULT_SEED) -> StructureConstants:
    """Structure constants of ``basis``, verified symbolically.

    Raises :class:`DependentBasis` or :class:`NotClosed`.
    """
    basis = list(basis)
    M = len(basis)
    check_independent(basis, seed)
    table = [[[Fraction(0)] * M for _ in range(M)] for _ in range(M)]
    for m in range(M):
        for n in range(m + 1, M):
            C = commutator(basis[m], basis[n])
            snames = sorted(set(C.support()) | {s for Q in basis for s in Q.support()})
            coeffs = [Fraction(0)] * M
            if not C.is_zero():
                rows = []
                rhs = []
                stream = points(seed + 1 + m * M + n)
                good = 0
                while good < M + 2:
                    p = next(stream)
                    try:
                        block = _coefficient_rows(basis, snames, p)
                        vals = [C.coefficient(s).eval(p) for s in snames]
                    except SingularPoint:
                        continue
                    rows.extend(block)
                    rhs.extend(vals)
                    good += 1
                sol = solve(rows, rhs, M)
                if sol is None:
                    raise NotClosed(f"[Q{m + 1}, Q{n + 1}] = {C} is not a constant combination of the basis",
                                    residual=C)
                coeffs = sol
            combo = VectorField({})
            for k, c in enumerate(coeffs):
                if c:
                    combo = combo + basis[k].scale(c)
            residual = C - combo
            if not residual.is_zero():
                raise NotClosed(f"[Q{m + 1}, Q{n + 1}] leaves the span of the basis; residual {residual}",
                                residual=residual)
            for k in range(M):
                table[m][n][k] = coeffs[k]
                table[n][m][k] = -coeffs[k]
    return StructureConstants(tuple(tuple(tuple(r) for r in plane) for plane in table), tuple(names))


def structure_residuals(basis: Sequence[VectorField], c: StructureConstants) -> dict:
    """``[Q_m, Q_n] - sum_k c[m][n][k] Q_k`` for every pair ``m < n`` (zero fields included)."""
    out = {}
    for m in range(len(basis)):
        for n in range(m + 1, len(basis)):
            r = commutator(basis[m], basis[n])
            for k, ck in c.bracket(m, n).items():
                r = r - basis[k].scale(ck)
            out[(m, n)] = r
    return out


def pushforward(Q: VectorField, fwd: Mapping[str, object], inv: Mapping[str, object],
                seed: int = DEFAULT_SEED) -> VectorField:
    """Transform ``Q`` under ``new_j = fwd[new_j](old)`` with inverse ``old_i = inv[old_i](new)``.

    The witness pair is checked at three generic points; :class:`NotInverse`
    if the maps do not compose to the identity, :class:`DomainEscape` if a
    substitution leaves the expression domain.
    """
    fwd = {k: as_expr(v) for k, v in fwd.items()}
    inv = {k: as_expr(v) for k, v in inv.items()}
    try:
        checks = [fwd[j].subs(inv) - var(j) for j in fwd]
        checks += [inv[i].subs(fwd) - var(i) for i in inv]
        coeffs = {j: Q(fwd[j]).subs(inv) for j in fwd}
    except DomainError as err:
        raise DomainEscape(str(err)) from None
    good = failures = 0
    stream = points(seed)
    while good < 3:
        p = next(stream)
        try:
            bad = [r for r in checks if r.eval(p) != 0]
        except SingularPoint:
            failures += 1
            if failures > MAX_RETRIES:
                raise NotInverse("inverse check failed: every sample point was singular") from None
            continue
        if bad:
            raise NotInverse(f"maps are not mutually inverse; residual {bad[0]}")
        good += 1
    return VectorField(coeffs)
