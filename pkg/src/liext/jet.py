"""Jet spaces, total derivatives and Lie prolongation."""
from __future__ import annotations

from itertools import combinations_with_replacement, permutations

from .expr import ZERO, Expr, as_expr, var
from .vector_field import Chart, VectorField

__all__ = ["JetSpace", "OrderOverflow", "build_jet", "total_derivative", "prolong"]


class OrderOverflow(ValueError):
    pass


class JetSpace:
    """Coordinates ``u^a_J`` for ``1 <= |J| <= order`` over a base chart.

    Multi-indices are tuples of independent-variable names sorted by their
    position in the chart.  Coordinate names join the dependent name and the
    alphabetically sorted index letters: ``u_tx``.
    """

    def __init__(self, chart: Chart, order: int):
        if order < 0:
            raise ValueError("jet order must be non-negative")
        self.base = Chart(chart.independent, chart.dependent, chart.ancillary)
        self.order = order
        self._name = {}
        self._index = {}
        for a in self.base.dependent:
            self._name[(a, ())] = a
            self._index[a] = (a, ())
        coords = []
        for r in range(1, order + 1):
            for a in self.base.dependent:
                for J in combinations_with_replacement(self.base.independent, r):
                    name = f"{a}_{''.join(sorted(J))}"
                    if name in self._index or name in self.base:
                        raise ValueError(f"jet coordinate name collision: {name}")
                    self._name[(a, J)] = name
                    self._index[name] = (a, J)
                    coords.append(name)
        self.coordinates = tuple(coords)
        self.chart = Chart(self.base.independent, self.base.dependent, self.base.ancillary, self.coordinates)

    def _sort(self, J):
        pos = {x: i for i, x in enumerate(self.base.independent)}
        return tuple(sorted(J, key=pos.__getitem__))

    def name(self, dep: str, J=()) -> str:
        key = (dep, self._sort(J))
        if key not in self._name:
            raise OrderOverflow(f"{dep} with index {J} exceeds jet order {self.order}")
        return self._name[key]

    def index_of(self, name: str):
        """``(dependent, multi-index)`` for a jet or dependent coordinate, else ``None``."""
        return self._index.get(name)

    def order_of(self, name: str) -> int:
        """Derivative order of a coordinate; ``-1`` for non-jet variables."""
        idx = self._index.get(name)
        return -1 if idx is None else len(idx[1])

    def expr_order(self, e) -> int:
        return max((self.order_of(v) for v in as_expr(e).variables()), default=-1)

    def aliases(self) -> dict:
        """Every permutation of index letters mapped to the canonical coordinate name."""
        out = {}
        for (a, J), name in self._name.items():
            if J:
                for perm in set(permutations(J)):
                    out[f"{a}_{''.join(perm)}"] = name
        return out

    def __repr__(self):
        return f"JetSpace({self.base.independent}; {self.base.dependent}; order={self.order})"


def build_jet(chart: Chart, order: int) -> JetSpace:
    return JetSpace(chart, order)


def total_derivative(jet: JetSpace, i: str, e) -> Expr:
    """``D_i e``; raises :class:`OrderOverflow` if ``e`` touches order-``l`` coordinates."""
    e = as_expr(e)
    if i not in jet.base.independent:
        raise ValueError(f"{i} is not an independent variable")
    present = e.variables()
    out = e.diff(i)
    for v in sorted(present):
        idx = jet.index_of(v)
        if idx is None:
            continue
        a, J = idx
        if len(J) >= jet.order:
            raise OrderOverflow(f"D_{i} of an expression in {v} needs order {jet.order + 1}")
        out = out + var(jet.name(a, J + (i,))) * e.diff(v)
    return out


def prolong(Q: VectorField, jet: JetSpace) -> VectorField:
    """Lie prolongation of ``Q`` to ``jet.order``; ancillary components are kept as they are."""
    for k, c in Q.coefficients.items():
        if k in jet.coordinates:
            raise ValueError(f"{Q} already acts on jet coordinate {k}")
        if any(jet.order_of(v) > 0 for v in c.variables()):
            raise ValueError(f"coefficient of d/d{k} involves jet coordinates; prolongations are not re-prolonged")
    xs = jet.base.independent
    xi = {x: Q.coefficient(x) for x in xs}
    coeffs = dict(Q.coefficients)
    for a in jet.base.dependent:
        eta = {(): Q.coefficient(a)}
        for r in range(1, jet.order + 1):
            for K in combinations_with_replacement(xs, r):
                J, i = K[:-1], K[-1]
                val = total_derivative(jet, i, eta[J])
                for k in xs:
                    dxi = total_derivative(jet, i, xi[k])
                    if not dxi.is_zero():
                        val = val - var(jet.name(a, J + (k,))) * dxi
                eta[K] = val
                if not val.is_zero():
                    coeffs[jet.name(a, K)] = val
    return VectorField(coeffs, jet.chart)
