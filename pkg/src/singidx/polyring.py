"""Exact multivariate polynomials over the rationals.

A :class:`Polynomial` lives in a :class:`RingContext`, which fixes the
variable names and the monomial ordering.  Two orderings are supported:

``local``  (ds-style)  lower total degree is *greater*, ties broken
           lexicographically (larger exponent of an earlier variable wins).
           The monomial 1 is the greatest monomial; this is the ordering used
           for computations in the local ring at the origin.
``global`` (dp-style)  higher total degree is greater, same tie-break.

Terms are stored strictly descending in the context ordering, so the
leading term is always ``terms[0]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .errors import ContextMismatch, ParseError

Rational = Fraction
Exponents = Tuple[int, ...]

LOCAL = "local"
GLOBAL = "global"

LT, EQ, GT = -1, 0, 1

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RingContext:
    variables: Tuple[str, ...]
    ordering: str = LOCAL

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if self.ordering not in (LOCAL, GLOBAL):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_local(self) -> bool:
        return self.ordering == LOCAL

    def with_ordering(self, ordering: str) -> "RingContext":
        return RingContext(self.variables, ordering)

    def sort_key(self, exps: Exponents) -> tuple:
        """Key under which larger means greater in this ordering."""
        d = sum(exps)
        return (-d if self.ordering == LOCAL else d, exps)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, ((c, (0,) * self.nvars),))

    def var(self, name_or_index) -> "Polynomial":
        i = (self.variables.index(name_or_index)
             if isinstance(name_or_index, str) else int(name_or_index))
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, ((Fraction(1), tuple(e)),))

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)


def compare_monomials(m1: Sequence[int], m2: Sequence[int], ctx: RingContext) -> int:
    """Return GT, EQ or LT comparing two exponent vectors in ``ctx``."""
    if len(m1) != ctx.nvars or len(m2) != ctx.nvars:
        raise ValueError(
            f"monomial length mismatch: {len(m1)}, {len(m2)} vs {ctx.nvars} variables")
    k1, k2 = ctx.sort_key(tuple(m1)), ctx.sort_key(tuple(m2))
    return GT if k1 > k2 else LT if k1 < k2 else EQ


@dataclass(frozen=True)
class Polynomial:
    ctx: RingContext
    terms: Tuple[Tuple[Fraction, Exponents], ...] = field(default=())

    @classmethod
    def from_dict(cls, ctx: RingContext, d: Mapping[Exponents, Fraction]) -> "Polynomial":
        items = [(Fraction(c), tuple(e)) for e, c in d.items() if c != 0]
        items.sort(key=lambda t: ctx.sort_key(t[1]), reverse=True)
        return cls(ctx, tuple(items))

    def as_dict(self) -> Dict[Exponents, Fraction]:
        return {e: c for c, e in self.terms}

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def leading_monomial(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][1]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[0][0] if self.terms else Fraction(0)

    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        return max((sum(e) for _, e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (-1 for zero)."""
        return min((sum(e) for _, e in self.terms), default=-1)

    def constant_term(self) -> Fraction:
        zero = (0,) * self.ctx.nvars
        for c, e in self.terms:
            if e == zero:
                return c
        return Fraction(0)

    def is_constant(self) -> bool:
        return all(not any(e) for _, e in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.ctx.variables != other.ctx.variables:
            raise ContextMismatch(
                f"polynomials from different rings: {self.ctx.variables} vs {other.ctx.variables}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.as_dict()
        for c, e in other.terms:
            d[e] = d.get(e, 0) + c
        return Polynomial.from_dict(self.ctx, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, tuple((-c, e) for c, e in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: Dict[Exponents, Fraction] = {}
        for c1, e1 in self.terms:
            for c2, e2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return Polynomial.from_dict(self.ctx, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ctx.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ctx.zero()
        return Polynomial(self.ctx, tuple((c * a, e) for a, e in self.terms))

    def mul_monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ctx.zero()
        return Polynomial(self.ctx, tuple(
            (c * a, tuple(x + y for x, y in zip(e, exps))) for a, e in self.terms))

    def diff(self, var) -> "Polynomial":
        """Partial derivative with respect to a variable (name or index)."""
        i = self.ctx.variables.index(var) if isinstance(var, str) else int(var)
        d: Dict[Exponents, Fraction] = {}
        for c, e in self.terms:
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                d[e2] = d.get(e2, 0) + c * e[i]
        return Polynomial.from_dict(self.ctx, d)

    def substitute(self, mapping: Mapping[str, "Polynomial"]) -> "Polynomial":
        return substitute(self, mapping)

    def in_context(self, ctx: RingContext) -> "Polynomial":
        """Re-sort the same polynomial under another ordering of the same variables."""
        if ctx.variables != self.ctx.variables:
            raise ContextMismatch("can only change the ordering, not the variables")
        return Polynomial.from_dict(ctx, self.as_dict())

    def truncate(self, degree: int) -> "Polynomial":
        """Drop all terms of total degree >= ``degree``."""
        return Polynomial(self.ctx, tuple(t for t in self.terms if sum(t[1]) < degree))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx.variables == other.ctx.variables and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash((self.ctx.variables, frozenset(self.as_dict().items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


# -- arithmetic front door ----------------------------------------------------

def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def scale(a: Polynomial, c) -> Polynomial:
    return a.scale(c)


def substitute(p: Polynomial, mapping: Mapping[str, Polynomial]) -> Polynomial:
    """Simultaneous substitution; variables missing from ``mapping`` stay put."""
    ctx = p.ctx
    images = []
    for i, v in enumerate(ctx.variables):
        q = mapping.get(v)
        if q is None:
            q = ctx.var(i)
        elif q.ctx.variables != ctx.variables:
            raise ContextMismatch(f"substitution image for {v} lives in another ring")
        images.append(q)
    result = ctx.zero()
    powers = [dict() for _ in images]
    for c, e in p.terms:
        t = ctx.const(c)
        for i, k in enumerate(e):
            if k:
                if k not in powers[i]:
                    powers[i][k] = images[i] ** k
                t = t * powers[i][k]
        result = result + t
    return result


def poly_arith(op: str, *args) -> Polynomial:
    """Dispatch ``add``, ``mul``, ``scale`` or ``substitute`` by name."""
    ops = {"add": add, "mul": mul, "scale": scale, "substitute": substitute}
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown polynomial operation {op!r}") from None
    return fn(*args)


# -- printing -----------------------------------------------------------------

def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ctx.variables
    out = []
    for i, (c, e) in enumerate(p.terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            body = _format_rational(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_rational(a)] + factors)
        if i == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        else:
            if not m.group(3).isspace():
                toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

        expr     := [sign] term (('+'|'-') term)*
        term     := factor ('*' factor)*
        factor   := rational | var ('^' uint)?
        rational := int ('/' uint)?

    A single leading sign is accepted so that printed output always parses.
    """

    def __init__(self, text: str, ctx: RingContext):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, kind, value=None):
        t = self.peek()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            got = t[1] if t[0] != "end" else "end of input"
            self.error(f"expected {want!r}, got {got!r}")
        return self.advance()

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        acc: Dict[Exponents, Fraction] = {}
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.advance()
            sign = -1 if t[1] == "-" else 1
        while True:
            c, e = self.term()
            acc[e] = acc.get(e, 0) + sign * c
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.advance()
                sign = -1 if t[1] == "-" else 1
                continue
            if t[0] != "end":
                self.error(f"unexpected {t[1]!r}")
            break
        return Polynomial.from_dict(self.ctx, acc)

    def term(self):
        c, e = self.factor()
        coeff = c
        exps = list(e)
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            c, e = self.factor()
            coeff *= c
            for k, v in enumerate(e):
                exps[k] += v
        return coeff, tuple(exps)

    def factor(self):
        n = self.ctx.nvars
        t = self.peek()
        if t[0] == "int":
            self.advance()
            num = int(t[1])
            den = 1
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.advance()
                dt = self.expect("int")
                den = int(dt[1])
                if den == 0:
                    self.error("division by zero", dt)
            return Fraction(num, den), (0,) * n
        if t[0] == "id":
            self.advance()
            name = t[1]
            if name not in self.ctx.variables:
                if name in ("i", "I", "j", "J"):
                    self.error(f"unknown identifier {name!r} "
                               "(complex scalars are not supported; coefficients are rational)", t)
                self.error(f"unknown variable {name!r}", t)
            k = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.advance()
                k = int(self.expect("int")[1])
            e = [0] * n
            e[self.ctx.variables.index(name)] = k
            return Fraction(1), tuple(e)
        got = t[1] if t[0] != "end" else "end of input"
        self.error(f"expected a number or variable, got {got!r}")


def parse_poly(text: str, ctx: RingContext) -> Polynomial:
    """Parse ``text`` into a canonical :class:`Polynomial` of ``ctx``."""
    return _Parser(text, ctx).parse()


def parse_many(texts: Iterable[str], ctx: RingContext) -> Tuple[Polynomial, ...]:
    return tuple(parse_poly(t, ctx) for t in texts)
