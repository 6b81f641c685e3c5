"""Bind a parsed problem spec to charts, jets and operator lists."""
from __future__ import annotations

from .dsl import ProblemSpec, parse_operator
from .expr import Expr, as_expr
from .extension import extend
from .jet import JetSpace, prolong
from .parsing import parse
from .sampling import DEFAULT_SEED
from .vector_field import Chart, VectorField, structure_constants

__all__ = ["Workspace", "UnknownIdentifier"]

ALIAS_ORDER = 4


class UnknownIdentifier(ValueError):
    pass


class Workspace:
    """Everything a task needs: chart, named operators, jets and a checked parser."""

    def __init__(self, spec: ProblemSpec, seed: int = DEFAULT_SEED):
        self.spec = spec
        self.seed = seed
        self.chart = Chart(spec.independent, tuple(spec.dependent), spec.ancillary)
        self.names = tuple(spec.ops)
        self.base = tuple(spec.ops[n].with_chart(self.chart) for n in self.names)
        self._jets = {}
        self._structure = None
        self._aliases = self.jet(ALIAS_ORDER).aliases() if spec.dependent else {}
        allowed = set(self.chart.variables) | set(spec.params)
        if spec.dependent:
            allowed |= set(self.jet(ALIAS_ORDER).coordinates)
        self._allowed = allowed

    @property
    def ancillary(self) -> str | None:
        return self.spec.ancillary[0] if self.spec.ancillary else None

    def jet(self, order: int) -> JetSpace:
        if order not in self._jets:
            self._jets[order] = JetSpace(self.chart, order)
        return self._jets[order]

    def _check(self, e: Expr, text: str):
        bad = e.variables() - self._allowed
        if bad:
            raise UnknownIdentifier(f"undeclared identifiers {sorted(bad)} in {text!r}")

    def parse(self, text) -> Expr:
        if isinstance(text, Expr):
            return text
        if isinstance(text, int):
            return as_expr(text)
        e = parse(str(text), self._aliases)
        self._check(e, str(text))
        return e

    def parse_op(self, text: str) -> VectorField:
        Q = parse_operator(text, self._aliases)
        for k, c in Q.coefficients.items():
            if k not in self._allowed:
                raise UnknownIdentifier(f"undeclared variable d/d{k} in {text!r}")
            self._check(c, text)
        return Q

    def order_of(self, *exprs) -> int:
        if not self.spec.dependent:
            return 0
        jet = self.jet(ALIAS_ORDER)
        return max([0] + [jet.expr_order(e) for e in exprs])

    def select(self, names=None) -> list:
        if not names:
            return list(range(len(self.names)))
        out = []
        for n in names:
            if n not in self.names:
                raise UnknownIdentifier(f"undeclared operator {n!r}")
            out.append(self.names.index(n))
        return out

    def op_names(self, names=None) -> list:
        return [self.names[i] for i in self.select(names)]

    def unextended(self, names=None) -> list:
        R = self.ancillary
        ops = [self.base[i] for i in self.select(names)]
        return [Q.without([R]) for Q in ops] if R else ops

    def operators(self, names=None, ext=None, order: int = 0) -> list:
        """Selected operators, optionally re-extended by ``ext`` and prolonged to ``order``.

        With ``ext`` given, any declared ancillary component is replaced.
        """
        if ext is not None:
            if not self.ancillary:
                raise UnknownIdentifier("an extension needs an 'aux' declaration")
            ops = self.unextended(names)
            a = [self.parse(x) for x in ext]
            if len(a) != len(ops):
                raise ValueError(f"extension has {len(a)} coefficients for {len(ops)} operators")
            ops = extend(ops, a, self.ancillary)
        else:
            ops = [self.base[i] for i in self.select(names)]
        if order > 0 and self.spec.dependent:
            jet = self.jet(order)
            ops = [prolong(Q, jet) for Q in ops]
        return ops

    def structure(self):
        if self._structure is None:
            self._structure = structure_constants(self.unextended(), self.names, seed=self.seed)
        return self._structure

