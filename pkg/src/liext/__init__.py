"""Exact symbolic toolkit for extended realisations of Lie algebras and their relative differential invariants."""

__version__ = "0.1.0"

from .expr import (  # noqa: E402
    ONE,
    ZERO,
    DomainError,
    Expr,
    SingularPoint,
    as_expr,
    const,
    diff,
    eval_at,
    exp,
    func,
    is_zero,
    substitute,
    var,
)
from .parsing import ParseError, parse  # noqa: E402
from .vector_field import (  # noqa: E402
    Chart,
    DependentBasis,
    NotClosed,
    NotInverse,
    StructureConstants,
    VectorField,
    apply,
    commutator,
    d,
    pushforward,
    structure_constants,
)
from .jet import JetSpace, OrderOverflow, build_jet, prolong, total_derivative  # noqa: E402
from .extension import (  # noqa: E402
    Ansatz,
    AnsatzNotInvariant,
    EmptyFamily,
    determining_equations,
    extend,
    solve_extensions,
    verify_extension,
)
from .invariants import (  # noqa: E402
    NotDivisible,
    extract_rdi,
    functional_independence,
    multiplier,
    solve_adi,
    verify_adi,
    verify_rdi,
)
