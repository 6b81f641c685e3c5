"""Exact rational expressions over variables, exponential atoms and opaque functions.

An :class:`Expr` is a quotient of two sparse polynomials with rational
coefficients.  The indeterminates ("atoms") of those polynomials are

* variables, named by plain strings (``x``, ``u_tx``, ``R``),
* opaque function symbols (:class:`FuncAtom`) carrying a sorted multi-index of
  formal partial derivatives, e.g. ``Phi_xy(x,y)``,
* exponentials ``exp(p)`` of rational functions ``p`` in variables only.

Exponentials are never raised to powers: every monomial carries at most one
exponential factor and ``exp(p)*exp(q)`` is stored as ``exp(p+q)``.  With that
rule, distinct exponentials are treated as algebraically independent, which
makes the canonical form unique and ``is_zero`` exact.

A monomial is the pair ``(powers, exparg)`` where ``powers`` is a tuple of
``(atom, exponent)`` pairs sorted by :func:`atom_key` and ``exparg`` is an
:class:`Expr` or ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

__all__ = [
    "Expr",
    "FuncAtom",
    "ExpAtom",
    "SingularPoint",
    "DomainError",
    "as_expr",
    "var",
    "const",
    "exp",
    "func",
    "diff",
    "substitute",
    "eval_at",
    "is_zero",
    "atom_key",
]


class SingularPoint(ZeroDivisionError):
    """The denominator of an expression vanishes at the requested point."""


class DomainError(ValueError):
    """An operation would leave the supported expression domain."""


@dataclass(frozen=True)
class FuncAtom:
    """Opaque function ``name(args)`` differentiated formally along ``index``."""

    name: str
    args: tuple
    index: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "index", tuple(sorted(self.index)))
        for v in self.index:
            if v not in self.args:
                raise DomainError(f"{self.name}: derivative index {v!r} is not an argument")

    def differentiate(self, v: str) -> "FuncAtom":
        if len(v) != 1:
            raise DomainError(f"formal partials are limited to one-letter arguments, got {v!r}")
        return FuncAtom(self.name, self.args, self.index + (v,))

    def __str__(self):
        head = self.name + ("_" + "".join(self.index) if self.index else "")
        return f"{head}({','.join(self.args)})"


@dataclass(frozen=True)
class ExpAtom:
    """``exp(arg)`` viewed as an indeterminate, used as a key for evaluation points."""

    arg: "Expr"

    def __str__(self):
        return f"exp({self.arg})"


Atom = Union[str, FuncAtom]


def atom_key(atom) -> tuple:
    """Total order on atoms: variables, then exponentials, then functions."""
    if isinstance(atom, str):
        return (0, atom)
    if isinstance(atom, ExpAtom):
        return (1, str(atom.arg))
    return (2, atom.name, atom.index, atom.args)


_ONE_MONO = ((), None)


def _sorted_powers(d: Mapping) -> tuple:
    return tuple(sorted(((a, k) for a, k in d.items() if k), key=lambda ak: atom_key(ak[0])))


def _mono_mul(m1, m2):
    p1, e1 = m1
    p2, e2 = m2
    if not p1:
        powers = p2
    elif not p2:
        powers = p1
    else:
        d = dict(p1)
        for a, k in p2:
            d[a] = d.get(a, 0) + k
        powers = _sorted_powers(d)
    if e1 is None:
        exparg = e2
    elif e2 is None:
        exparg = e1
    else:
        exparg = e1 + e2
        if exparg.is_zero():
            exparg = None
    return (powers, exparg)


def _poly_add(p, q, scale=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _poly_mul(p, q):
    if len(p) == 1 and _ONE_MONO in p:
        c = p[_ONE_MONO]
        return {m: c * v for m, v in q.items()}
    if len(q) == 1 and _ONE_MONO in q:
        c = q[_ONE_MONO]
        return {m: c * v for m, v in p.items()}
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _is_one(p) -> bool:
    return len(p) == 1 and p.get(_ONE_MONO) == 1


def _mono_degree(m) -> int:
    return sum(k for _, k in m[0])


def _mono_sort_key(m):
    powers, exparg = m
    return (
        -_mono_degree(m),
        tuple((atom_key(a), -k) for a, k in powers),
        "" if exparg is None else str(exparg),
    )


def _normalize_scale(num, den):
    """Scale so that ``den`` has integer content 1 and a positive leading coefficient."""
    lead = min(den, key=_mono_sort_key)
    dl = 1
    ng = 0
    for c in den.values():
        dl = lcm(dl, c.denominator)
    for c in den.values():
        ng = gcd(ng, (c * dl).numerator)
    s = Fraction(dl, ng)
    if den[lead] < 0:
        s = -s
    if s == 1:
        return num, den
    return {m: c * s for m, c in num.items()}, {m: c * s for m, c in den.items()}


def _cancel_monomial_den(num, den):
    """Fast path: the denominator is a single term."""
    (mono, c), = den.items()
    powers, exparg = mono
    shift = ((), None if exparg is None else -exparg)
    inv = 1 / Fraction(c)
    new_num = {}
    for m, v in num.items():
        m2 = _mono_mul(m, shift) if exparg is not None else m
        new_num[m2] = v * inv
    rest = dict(powers)
    for a in list(rest):
        k = rest[a]
        for m in new_num:
            k = min(k, dict(m[0]).get(a, 0))
            if k == 0:
                break
        if k:
            rest[a] -= k
            reduced = {}
            for m, v in new_num.items():
                d = dict(m[0])
                d[a] -= k
                reduced[(_sorted_powers(d), m[1])] = v
            new_num = reduced
    return new_num, {(_sorted_powers(rest), None): Fraction(1)}


def _exp_pieces(exparg: "Expr"):
    """Split ``n/d`` into ``{(monomial of n, d): coefficient}``."""
    d = Expr._raw(exparg.den, {_ONE_MONO: Fraction(1)})
    return {(m, d): c for m, c in exparg.num.items()}


def _cancel_general(num, den):
    from sympy import QQ
    from sympy.polys.rings import ring

    atoms = set()
    pieces = {}
    for poly in (num, den):
        for powers, exparg in poly:
            atoms.update(a for a, _ in powers)
            if exparg is not None:
                for key, c in _exp_pieces(exparg).items():
                    pieces.setdefault(key, []).append(c)
    atom_list = sorted(atoms, key=atom_key)
    piece_list = sorted(pieces, key=lambda k: (str(k[1]), _mono_sort_key(k[0])))
    scale = {k: lcm(*(Fraction(c).denominator for c in pieces[k])) for k in piece_list}
    na, ne = len(atom_list), len(piece_list)
    pos = {a: i for i, a in enumerate(atom_list)}

    def exps_of(m):
        powers, exparg = m
        vec = [0] * (na + ne)
        for a, k in powers:
            vec[pos[a]] = k
        if exparg is not None:
            pc = _exp_pieces(exparg)
            for j, key in enumerate(piece_list):
                c = pc.get(key)
                if c:
                    vec[na + j] = int(c * scale[key])
        return vec

    nvecs = {m: exps_of(m) for m in num}
    dvecs = {m: exps_of(m) for m in den}
    low = [0] * ne
    for vec in list(nvecs.values()) + list(dvecs.values()):
        for j in range(ne):
            low[j] = min(low[j], vec[na + j])

    def shifted(vec):
        return tuple(vec[:na]) + tuple(vec[na + j] - low[j] for j in range(ne))

    names = ",".join(f"g{i}" for i in range(na + ne)) or "g0"
    R = ring(names, QQ)[0]
    if na + ne == 0:
        # constant / constant
        c = Fraction(num[_ONE_MONO]) / Fraction(den[_ONE_MONO])
        return {_ONE_MONO: c}, {_ONE_MONO: Fraction(1)}

    def to_ring(poly, vecs):
        return R.from_dict({shifted(vecs[m]): QQ(c.numerator, c.denominator) for m, c in poly.items()})

    p, q = to_ring(num, nvecs), to_ring(den, dvecs)
    p, q = p.cancel(q)
    qterms = list(q.terms())
    dshift = [min(e[na + j] for e, _ in qterms) for j in range(ne)]

    def from_ring(poly, extra):
        out = {}
        for e, c in poly.terms():
            powers = _sorted_powers({atom_list[i]: e[i] for i in range(na)})
            exparg = None
            for j in range(ne):
                k = e[na + j] + extra[j]
                if k:
                    mono, d = piece_list[j]
                    term = Expr._raw({mono: Fraction(k, scale[piece_list[j]])}, {_ONE_MONO: Fraction(1)}) / d
                    exparg = term if exparg is None else exparg + term
            if exparg is not None and exparg.is_zero():
                exparg = None
            m = (powers, exparg)
            out[m] = out.get(m, 0) + Fraction(int(c.numerator), int(c.denominator))
        return {m: c for m, c in out.items() if c}

    back = [low[j] - dshift[j] for j in range(ne)]
    return from_ring(p, back), from_ring(q, back)


def _canonicalize(num, den):
    if not den:
        raise ZeroDivisionError("division by zero expression")
    if not num:
        return {}, {_ONE_MONO: Fraction(1)}
    if _is_one(den):
        return num, den
    if len(den) == 1:
        num, den = _cancel_monomial_den(num, den)
    else:
        num, den = _cancel_general(num, den)
    return _normalize_scale(num, den)


class Expr:
    """Immutable canonical rational expression.

    Build expressions with :func:`var`, :func:`const`, :func:`exp`, :func:`func`,
    arithmetic operators, or :func:`liext.parsing.parse`.  Two expressions
    compare equal iff their canonical forms are identical.
    """

    __slots__ = ("num", "den", "_hash", "_str")

    def __init__(self, value=0):
        e = as_expr(value)
        self.num, self.den = e.num, e.den
        self._hash = None
        self._str = None

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num, self.den = _canonicalize(num, den)
        self._hash = None
        self._str = None
        return self

    @classmethod
    def _canonical(cls, num, den):
        self = object.__new__(cls)
        self.num, self.den = num, den
        self._hash = None
        self._str = None
        return self

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = as_expr(other)
        if _is_one(self.den) and _is_one(other.den):
            return Expr._canonical(_poly_add(self.num, other.num), self.den)
        if self.den == other.den:
            return Expr._raw(_poly_add(self.num, other.num), self.den)
        num = _poly_add(_poly_mul(self.num, other.den), _poly_mul(other.num, self.den))
        return Expr._raw(num, _poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Expr._canonical({m: -c for m, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __rsub__(self, other):
        return as_expr(other) + (-self)

    def __mul__(self, other):
        other = as_expr(other)
        if _is_one(self.den) and _is_one(other.den):
            return Expr._canonical(_poly_mul(self.num, other.num), self.den)
        return Expr._raw(_poly_mul(self.num, other.num), _poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_expr(other)
        if not other.num:
            raise ZeroDivisionError("division by zero expression")
        return Expr._raw(_poly_mul(self.num, other.den), _poly_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return as_expr(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise DomainError("only integer powers are supported")
        if n < 0:
            return 1 / (self ** -n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Expr):
            if isinstance(other, (int, Fraction)):
                other = const(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return _is_one(self.den) and all(m == _ONE_MONO for m in self.num)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self.num.get(_ONE_MONO, 0))

    def is_polynomial(self) -> bool:
        return _is_one(self.den)

    def atoms(self) -> set:
        """Atoms of the numerator and denominator (exponentials as :class:`ExpAtom`)."""
        out = set()
        for poly in (self.num, self.den):
            for powers, exparg in poly:
                out.update(a for a, _ in powers)
                if exparg is not None:
                    out.add(ExpAtom(exparg))
        return out

    def variables(self) -> set:
        """Every variable name the expression depends on, including through exp and functions."""
        out = set()
        for poly in (self.num, self.den):
            for powers, exparg in poly:
                for a, _ in powers:
                    if isinstance(a, str):
                        out.add(a)
                    else:
                        out.update(a.args)
                if exparg is not None:
                    out |= exparg.variables()
        return out

    def has_exp(self) -> bool:
        return any(m[1] is not None for poly in (self.num, self.den) for m in poly)

    def has_func(self) -> bool:
        return any(isinstance(a, FuncAtom) for a in self.atoms())

    def numerator(self) -> "Expr":
        return Expr._canonical(dict(self.num), {_ONE_MONO: Fraction(1)})

    def denominator(self) -> "Expr":
        return Expr._canonical(dict(self.den), {_ONE_MONO: Fraction(1)})

    def terms(self):
        """Numerator terms as ``(coefficient, monomial-expression)`` in print order."""
        for m in sorted(self.num, key=_mono_sort_key):
            yield self.num[m], Expr._canonical({m: Fraction(1)}, {_ONE_MONO: Fraction(1)})

    def degree_in(self, v: str) -> int:
        """Exponent of ``v`` shared by every monomial (numerator minus denominator), or ``None``."""
        def common(poly):
            ks = {dict(m[0]).get(v, 0) for m in poly}
            return ks.pop() if len(ks) == 1 else None

        a, b = common(self.num), common(self.den)
        if a is None or b is None:
            return None
        return a - b

    # calculus -------------------------------------------------------------
    def diff(self, v: str) -> "Expr":
        dn = _poly_diff(self.num, v)
        if _is_one(self.den):
            return dn
        dd = _poly_diff(self.den, v)
        n = Expr._canonical(dict(self.num), {_ONE_MONO: Fraction(1)})
        d = Expr._canonical(dict(self.den), {_ONE_MONO: Fraction(1)})
        return (dn * d - n * dd) / (d * d)

    def subs(self, bindings: Mapping[str, "Expr"]) -> "Expr":
        bindings = {k: as_expr(v) for k, v in bindings.items()}
        if not bindings:
            return self
        return _poly_subs(self.num, bindings) / _poly_subs(self.den, bindings)

    def eval(self, point) -> Fraction:
        n = _poly_eval(self.num, point)
        d = _poly_eval(self.den, point)
        if d == 0:
            raise SingularPoint(f"denominator of {self} vanishes at the sample point")
        return n / d

    # printing -------------------------------------------------------------
    def __str__(self):
        if self._str is None:
            self._str = _format(self)
        return self._str

    def __repr__(self):
        return f"Expr({str(self)!r})"


def _poly_diff(poly, v: str) -> Expr:
    out = {}
    extra = []
    for (powers, exparg), c in poly.items():
        for i, (a, k) in enumerate(powers):
            if isinstance(a, str):
                if a != v:
                    continue
                d = dict(powers)
                d[a] = k - 1
                m = (_sorted_powers(d), exparg)
                out[m] = out.get(m, 0) + c * k
            elif v in a.args:
                d = dict(powers)
                d[a] = k - 1
                da = a.differentiate(v)
                d[da] = d.get(da, 0) + 1
                m = (_sorted_powers(d), exparg)
                out[m] = out.get(m, 0) + c * k
        if exparg is not None and v in exparg.variables():
            darg = exparg.diff(v)
            term = Expr._canonical({(powers, exparg): c}, {_ONE_MONO: Fraction(1)})
            if darg.is_polynomial():
                out = _poly_add(out, _poly_mul(term.num, darg.num))
            else:
                extra.append(term * darg)
    res = Expr._canonical({m: c for m, c in out.items() if c}, {_ONE_MONO: Fraction(1)})
    for e in extra:
        res = res + e
    return res


def _poly_subs(poly, bindings) -> Expr:
    total = ZERO
    for (powers, exparg), c in poly.items():
        term = const(c)
        for a, k in powers:
            if isinstance(a, str):
                term = term * (bindings[a] ** k if a in bindings else var(a) ** k)
            else:
                if any(x in bindings and bindings[x] != var(x) for x in a.args):
                    raise DomainError(f"cannot substitute into the arguments of {a}")
                term = term * Expr._canonical({((( a, k),), None): Fraction(1)}, {_ONE_MONO: Fraction(1)})
        if exparg is not None:
            term = term * exp(exparg.subs(bindings))
        total = total + term
    return total


def _lookup(point, atom):
    try:
        return point[atom]
    except KeyError:
        if isinstance(atom, ExpAtom):
            key = f"exp({atom.arg})"
            if key in point:
                return point[key]
        elif isinstance(atom, FuncAtom) and str(atom) in point:
            return point[str(atom)]
        raise KeyError(f"no value for atom {atom} at the sample point") from None


def _poly_eval(poly, point) -> Fraction:
    total = Fraction(0)
    for (powers, exparg), c in poly.items():
        v = Fraction(c)
        for a, k in powers:
            v *= Fraction(_lookup(point, a)) ** k
        if exparg is not None:
            v *= Fraction(_lookup(point, ExpAtom(exparg)))
        total += v
    return total


def _fmt_atom(a, k):
    s = a if isinstance(a, str) else str(a)
    return s if k == 1 else f"{s}^{k}"


def _fmt_mono(m):
    powers, exparg = m
    parts = [_fmt_atom(a, k) for a, k in powers]
    if exparg is not None:
        parts.append(f"exp({exparg})")
    return "*".join(parts)


def _fmt_poly(poly):
    out = []
    for m in sorted(poly, key=_mono_sort_key):
        c = poly[m]
        body = _fmt_mono(m)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(text if c > 0 else "-" + text)
        else:
            out.append((" + " if c > 0 else " - ") + text)
    return "".join(out) if out else "0"


def _format(e: Expr) -> str:
    num = _fmt_poly(e.num)
    if _is_one(e.den):
        return num
    if len(e.num) > 1:
        num = f"({num})"
    den = _fmt_poly(e.den)
    single = len(e.den) == 1 and len(next(iter(e.den))[0]) == 1 and next(iter(e.den.values())) == 1
    if not single:
        den = f"({den})"
    return f"{num}/{den}"


# constructors -------------------------------------------------------------

ZERO = Expr._canonical({}, {_ONE_MONO: Fraction(1)})
ONE = Expr._canonical({_ONE_MONO: Fraction(1)}, {_ONE_MONO: Fraction(1)})


def const(q) -> Expr:
    q = Fraction(q)
    if not q:
        return ZERO
    return Expr._canonical({_ONE_MONO: q}, {_ONE_MONO: Fraction(1)})


def var(name: str) -> Expr:
    return Expr._canonical({(((name, 1),), None): Fraction(1)}, {_ONE_MONO: Fraction(1)})


def func(name: str, args: Iterable[str], index: Iterable[str] = ()) -> Expr:
    atom = FuncAtom(name, tuple(args), tuple(index))
    return Expr._canonical({(((atom, 1),), None): Fraction(1)}, {_ONE_MONO: Fraction(1)})


def exp(arg) -> Expr:
    """``exp(arg)`` for ``arg`` a rational function of variables (no nesting)."""
    arg = as_expr(arg)
    if arg.is_zero():
        return ONE
    if arg.has_exp() or arg.has_func():
        raise DomainError(f"exp argument must be free of exp and function atoms: {arg}")
    return Expr._canonical({((), arg): Fraction(1)}, {_ONE_MONO: Fraction(1)})


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not expressions")
    if isinstance(value, (int, Fraction)):
        return const(value)
    if isinstance(value, str):
        from .parsing import parse

        return parse(value)
    raise TypeError(f"cannot convert {type(value).__name__} to Expr")


# functional interface -------------------------------------------------------

def diff(e, v: str) -> Expr:
    return as_expr(e).diff(v)


def substitute(e, bindings: Mapping[str, object]) -> Expr:
    """Simultaneous substitution of variables; function arguments may not be touched."""
    return as_expr(e).subs(bindings)


def eval_at(e, point) -> Fraction:
    """Exact value at ``point``; every atom (including ``exp(..)``) needs a value."""
    return as_expr(e).eval(point)


def is_zero(e) -> bool:
    return as_expr(e).is_zero()
