"""Absolute and relative differential invariants.

``Q Theta = lambda * Theta`` is accepted as a relative invariant only when the
multiplier ``lambda = Q(Theta)/Theta`` has no denominator factor in common with
the numerator of ``Theta`` (exact divisibility after clearing denominators).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .expr import ZERO, Expr, as_expr, var
from .extension import (
    Ansatz,
    AnsatzNotInvariant,
    _coefficient_matrix,
    extension_coefficients,
    span_coordinates,
)
from .jet import JetSpace
from .linalg import nullspace
from .sampling import DEFAULT_SEED, sampled_rank
from .vector_field import VectorField

__all__ = [
    "NotDivisible",
    "InvariantReport",
    "InvariantCandidate",
    "RdiExtraction",
    "IndependenceResult",
    "multiplier",
    "verify_adi",
    "verify_rdi",
    "solve_adi",
    "extract_rdi",
    "functional_independence",
    "split_ancillary",
    "strip_ancillary",
]

ADI, RDI, FAIL = "ADI", "RDI", "FAIL"


class NotDivisible(ValueError):
    def __init__(self, message, image=None, quotient=None):
        super().__init__(message)
        self.image = image
        self.quotient = quotient


@dataclass(frozen=True)
class InvariantReport:
    """Outcome of an invariant check.

    ``verdict`` is ``"ADI"`` when every multiplier vanishes, ``"RDI"`` for a
    proper relative invariant and ``"FAIL"`` otherwise; ``residual`` then holds
    a nonzero witness.
    """

    expr: Expr
    verdict: str
    multipliers: tuple = ()
    images: tuple = ()
    residual: Expr | None = None
    failed_op: int | None = None
    notes: tuple = ()

    @property
    def is_adi(self) -> bool:
        return self.verdict == ADI

    @property
    def is_rdi(self) -> bool:
        return self.verdict in (ADI, RDI)

    @property
    def is_proper(self) -> bool:
        return self.verdict == RDI


def multiplier(Q: VectorField, theta) -> Expr:
    """``Q(theta)/theta``; :class:`NotDivisible` if it is singular on ``theta == 0``."""
    theta = as_expr(theta)
    if theta.is_zero():
        raise ValueError("the zero function is not an invariant candidate")
    image = Q(theta)
    lam = image / theta
    if lam.is_polynomial():
        return lam
    probe = theta.numerator() / lam.denominator()
    if probe.den != lam.den:
        raise NotDivisible(f"{Q}({theta}) is not a multiple of {theta}", image=image, quotient=lam)
    return lam


def verify_adi(ops: Sequence[VectorField], theta) -> InvariantReport:
    theta = as_expr(theta)
    images = tuple(Q(theta) for Q in ops)
    for m, img in enumerate(images):
        if not img.is_zero():
            return InvariantReport(theta, FAIL, images=images, residual=img, failed_op=m)
    return InvariantReport(theta, ADI, multipliers=tuple(ZERO for _ in ops), images=images)


def verify_rdi(ops: Sequence[VectorField], theta) -> InvariantReport:
    theta = as_expr(theta)
    if theta.is_zero():
        raise ValueError("the zero function is not an invariant candidate")
    lams = []
    images = []
    for m, Q in enumerate(ops):
        try:
            lam = multiplier(Q, theta)
        except NotDivisible as err:
            images.append(err.image)
            return InvariantReport(theta, FAIL, tuple(lams), tuple(images), residual=err.image, failed_op=m,
                                   notes=(f"multiplier {err.quotient} is singular where the candidate vanishes",))
        lams.append(lam)
        images.append(lam * theta)
    verdict = ADI if all(x.is_zero() for x in lams) else RDI
    return InvariantReport(theta, verdict, tuple(lams), tuple(images))


@dataclass(frozen=True)
class InvariantCandidate:
    """``factor * R^k`` found by :func:`solve_adi`."""

    expr: Expr
    factor: Expr
    k: int = 0
    kind: str = ADI


def split_ancillary(theta, ancillary: str = "R"):
    """``(F, K)`` with ``theta == F * R^K`` and ``F`` free of ``R``, else ``None``."""
    theta = as_expr(theta)
    K = theta.degree_in(ancillary)
    if K is None:
        return None
    F = theta / var(ancillary) ** K
    if ancillary in F.variables():
        return None
    return F, K


def strip_ancillary(ops: Sequence[VectorField], ancillary: str = "R") -> list[VectorField]:
    return [Q.without([ancillary]) for Q in ops]


def _ancillary_of(ops):
    for Q in ops:
        if Q.chart is not None and Q.chart.ancillary:
            return Q.chart.ancillary[0]
    return None


def solve_adi(ops: Sequence[VectorField], ansatz: Ansatz, krange=(0, 0), ancillary: str | None = None,
              require_invariant: bool = True) -> list[InvariantCandidate]:
    """Absolute invariants ``F * R^K`` with ``F`` in ``span(ansatz)`` for each ``K`` in ``krange``.

    Uses ``Q_m(F R^K) = (Q_m F + K a_m F) R^K`` for linearly extended
    operators, so every ``K`` is an exact homogeneous linear system.
    """
    ops = list(ops)
    ancillary = ancillary or _ancillary_of(ops)
    if ancillary and any(Q.coefficient(ancillary) for Q in ops):
        a = extension_coefficients(ops, ancillary)
        base = strip_ancillary(ops, ancillary)
        ks = range(krange[0], krange[1] + 1)
    else:
        a = [ZERO] * len(ops)
        base = ops
        ks = [0]
    N = len(ansatz)
    images = [[Q(b) for b in ansatz.basis] for Q in base]
    if require_invariant:
        for m, row in enumerate(images):
            for j, img in enumerate(row):
                if span_coordinates(img, ansatz.basis) is None:
                    raise AnsatzNotInvariant(f"op {m + 1} maps {ansatz.basis[j]} to {img}, outside {ansatz}",
                                             element=ansatz.basis[j], image=img)
    out = []
    for K in ks:
        if require_invariant and K:
            for m in range(len(ops)):
                if a[m].is_zero():
                    continue
                for b in ansatz.basis:
                    if span_coordinates(a[m] * b, ansatz.basis) is None:
                        raise AnsatzNotInvariant(f"a{m + 1}*{b} is outside {ansatz}", element=b, image=a[m] * b)
        rows = []
        for m in range(len(ops)):
            cols = [images[m][j] + K * a[m] * ansatz.basis[j] for j in range(N)]
            rows.extend(_coefficient_matrix(cols))
        for v in nullspace(rows, N):
            F = ZERO
            for j in range(N):
                if v[j]:
                    F = F + v[j] * ansatz.basis[j]
            theta = F * var(ancillary) ** K if K else F
            if not verify_adi(ops, theta).is_adi:
                raise AssertionError(f"solver produced a non-invariant {theta}")
            out.append(InvariantCandidate(theta, F, K))
    return out


@dataclass(frozen=True)
class RdiExtraction:
    factor: Expr
    multipliers: tuple
    expected: tuple
    report: InvariantReport

    @property
    def consistent(self) -> bool:
        return self.report.is_rdi and self.multipliers == self.expected


def extract_rdi(candidate, ops: Sequence[VectorField], ancillary: str = "R") -> RdiExtraction:
    """Drop ``R^K`` from an absolute invariant of extended operators.

    Multipliers come from re-verifying ``F`` against the unextended operators;
    the grading identity predicts ``-K * a_m``.
    """
    theta = candidate.expr if isinstance(candidate, InvariantCandidate) else as_expr(candidate)
    split = split_ancillary(theta, ancillary)
    if split is None:
        raise ValueError(f"{theta} is not of the form F*{ancillary}^K")
    F, K = split
    a = extension_coefficients(ops, ancillary)
    rep = verify_rdi(strip_ancillary(ops, ancillary), F)
    expected = tuple(-K * am for am in a)
    return RdiExtraction(F, rep.multipliers, expected, rep)


@dataclass(frozen=True)
class IndependenceResult:
    rank: int
    count: int
    coordinates: tuple = field(default=())

    @property
    def independent(self) -> bool:
        return self.rank == self.count


def functional_independence(exprs: Sequence, jet, seed: int = DEFAULT_SEED) -> IndependenceResult:
    """Generic rank of the Jacobian of ``exprs`` with respect to every chart coordinate.

    ``jet`` is a :class:`JetSpace` or any object with a ``variables`` tuple.
    """
    exprs = [as_expr(e) for e in exprs]
    coords = jet.chart.variables if isinstance(jet, JetSpace) else tuple(jet.variables)
    jac = [[e.diff(c) for c in coords] for e in exprs]
    return IndependenceResult(sampled_rank(jac, seed=seed, samples=3), len(exprs), coords)
