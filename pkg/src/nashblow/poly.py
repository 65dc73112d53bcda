"""Sparse multivariate polynomials and rational functions over Q.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients, tied to a :class:`VariableContext` that fixes the variable
order.  Values are immutable; every operation returns a new object.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ContextMismatch(ValueError):
    pass


class VariableContext:
    """Ordered, immutable list of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for n in names:
            if not _IDENT.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableContext({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def fresh(self, base: str) -> str:
        """A name not already in the context, derived from ``base``."""
        name, k = base, 0
        while name in self._index:
            k += 1
            name = f"{base}{k}"
        return name

    def extend(self, extra: Iterable[str]) -> "VariableContext":
        return VariableContext(self.names + tuple(extra))

    def without(self, drop: Iterable[str]) -> "VariableContext":
        drop = set(drop)
        return VariableContext(n for n in self.names if n not in drop)

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * len(self): c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * len(self)
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exp: Exponent, coeff: Scalar = 1) -> "Polynomial":
        if len(exp) != len(self):
            raise ValueError("exponent length does not match context")
        c = Fraction(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_expression

        return parse_expression(text, self)


def grevlex_key(e: Exponent):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _coerce_scalar(c) -> Fraction | None:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)) and not isinstance(c, bool):
        return Fraction(c)
    return None


class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Dict[Exponent, Fraction]):
        # Callers must pass a fresh dict without zero coefficients.
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ctx: VariableContext, terms: Mapping) -> "Polynomial":
        out = {}
        n = len(ctx)
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent {e} for context of length {n}")
            c = Fraction(c)
            if c:
                out[e] = out.get(e, 0) + c
                if not out[e]:
                    del out[e]
        return cls(ctx, out)

    # ------------------------------------------------------------------ basics
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.ctx), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ctx.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def support(self) -> set:
        """Indices of variables that occur."""
        s = set()
        for e in self.terms:
            s.update(i for i, x in enumerate(e) if x)
        return s

    def variables(self) -> list:
        return [self.ctx.names[i] for i in sorted(self.support())]

    def lead(self, key=grevlex_key) -> Tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, key=grevlex_key) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.lead(key)
        return self if c == 1 else self.scale(1 / c)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {e: a * c for e, a in self.terms.items()})

    def sorted_terms(self, key=grevlex_key):
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def _check(self, other: "Polynomial"):
        if other.ctx != self.ctx:
            raise ContextMismatch(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self.ctx.const(c)

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            return self.scale(c)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            if not c:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / c)
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.terms == other.terms
        c = _coerce_scalar(other)
        if c is not None:
            return self.is_constant() and self.constant_value() == c
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # ------------------------------------------------------------------ calculus
    def diff(self, name: str) -> "Polynomial":
        i = self.ctx.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.ctx, out)

    def evaluate(self, point) -> Fraction:
        """Value at a point given as a sequence (context order) or a mapping."""
        if isinstance(point, Mapping):
            vals = [Fraction(point[n]) for n in self.ctx.names]
        else:
            vals = [Fraction(v) for v in point]
            if len(vals) != len(self.ctx):
                raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    def compose(self, images: Mapping[str, "Polynomial"], target: VariableContext | None = None) -> "Polynomial":
        """Polynomial substitution; unassigned variables map to themselves in ``target``."""
        if target is None:
            vals = list(images.values())
            target = vals[0].ctx if vals else self.ctx
        gens = []
        for n in self.ctx.names:
            if n in images:
                v = images[n]
                if not isinstance(v, Polynomial):
                    v = target.const(v)
                gens.append(v)
            else:
                gens.append(target.var(n))
        out = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    p = cache.get((i, k))
                    if p is None:
                        p = cache[(i, k)] = gens[i] ** k
                    t = t * p
            out = out + t
        return out

    def embed(self, ctx: VariableContext) -> "Polynomial":
        """Same polynomial viewed in a context containing all its occurring variables."""
        if ctx == self.ctx:
            return self
        idx = [ctx.index(name) for name in self.ctx.names]
        n = len(ctx)
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, k in enumerate(e):
                if k:
                    f[idx[i]] = k
            out[tuple(f)] = c
        return Polynomial(ctx, out)

    def restrict(self, ctx: VariableContext) -> "Polynomial":
        """Move to a context that may lack variables; those must not occur."""
        if ctx == self.ctx:
            return self
        n = len(ctx)
        pos = []
        for i, name in enumerate(self.ctx.names):
            pos.append(ctx._index.get(name))
        out = {}
        for e, c in self.terms.items():
            f = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = pos[i]
                    if j is None:
                        raise ValueError(f"variable {self.ctx.names[i]} occurs in {self}")
                    f[j] = k
            out[tuple(f)] = c
        return Polynomial(ctx, out)

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Coefficients as a polynomial in one variable (coefficients free of it)."""
        i = self.ctx.index(name)
        out: Dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            f = e[:i] + (0,) + e[i + 1 :]
            out.setdefault(k, {})[f] = c
        return {k: Polynomial(self.ctx, t) for k, t in out.items()}

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises ``ValueError`` when ``other`` does not divide."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        le, lc = other.lead()
        rem = dict(self.terms)
        quo: Dict[Exponent, Fraction] = {}
        key = grevlex_key
        while rem:
            e = max(rem, key=key)
            if any(a < b for a, b in zip(e, le)):
                raise ValueError(f"{other} does not divide {self}")
            q = tuple(a - b for a, b in zip(e, le))
            c = rem[e] / lc
            quo[q] = c
            for f, a in other.terms.items():
                g = _add_exp(f, q)
                v = rem.get(g, 0) - c * a
                if v:
                    rem[g] = v
                else:
                    rem.pop(g, None)
        return Polynomial(self.ctx, quo)

    # ---------------------------------------------------------------- printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ctx.names
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        a = abs(c)
        if not mono:
            body = _format_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_scalar(a)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# --------------------------------------------------------------------- gcd
def _primitive_split(p: Polynomial, name: str):
    """(content, primitive part) of ``p`` viewed as a polynomial in ``name``."""
    coeffs = p.coefficients_in(name)
    cont = reduce(poly_gcd, coeffs.values())
    return cont, p.divexact(cont)


def _prem(a: Polynomial, b: Polynomial, name: str) -> Polynomial:
    """Pseudo-remainder of ``a`` by ``b`` in the variable ``name``."""
    i = a.ctx.index(name)
    db = b.degree_in(name)
    lcb = b.coefficients_in(name)[db]
    x = a.ctx.var(name)
    r = a
    e = a.degree_in(name) - db + 1
    while not r.is_zero() and r.degree_in(name) >= db:
        dr = r.degree_in(name)
        lcr = r.coefficients_in(name)[dr]
        r = r * lcb - lcr * b * x ** (dr - db)
        e -= 1
    return r * lcb**e if e > 0 else r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic (grevlex) greatest common divisor.

    Content extraction recursively, then a subresultant remainder sequence in
    the highest-indexed variable that occurs.
    """
    a._check(b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return a.ctx.one()
    sa, sb = a.support(), b.support()
    main = max(sa | sb)
    name = a.ctx.names[main]
    if main not in sa:
        return poly_gcd(a, reduce(poly_gcd, b.coefficients_in(name).values()))
    if main not in sb:
        return poly_gcd(b, reduce(poly_gcd, a.coefficients_in(name).values()))
    ca, pa = _primitive_split(a, name)
    cb, pb = _primitive_split(b, name)
    c = poly_gcd(ca, cb)
    if pa.degree_in(name) < pb.degree_in(name):
        pa, pb = pb, pa
    g = h = a.ctx.one()
    while True:
        delta = pa.degree_in(name) - pb.degree_in(name)
        r = _prem(pa, pb, name)
        if r.is_zero():
            break
        if r.degree_in(name) == 0:
            return c.monic()
        pa = pb
        pb = r.divexact(g * h**delta)
        g = pa.coefficients_in(name)[pa.degree_in(name)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).divexact(h ** (delta - 1))
    _, prim = _primitive_split(pb, name)
    return (c * prim).monic()


# --------------------------------------------------------- rational functions
class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduced: bool = False):
        if den is None:
            den = num.ctx.one()
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        if not reduced:
            if num.is_zero():
                den = num.ctx.one()
            elif not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num, den = num.divexact(g), den.divexact(g)
            _, lc = den.lead()
            if lc != 1:
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def coerce(cls, x, ctx: VariableContext) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return cls(x, reduced=True)
        return cls(ctx.const(x), reduced=True)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.constant_value())

    def is_zero(self):
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            self.num._check(other.num)
            return other
        if isinstance(other, Polynomial):
            self.num._check(other)
            return RationalFunction(other, reduced=True)
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return RationalFunction(self.ctx.const(c), reduced=True)

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("integer exponent required")
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        return RationalFunction(self.num**k, self.den**k, reduced=True)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, name: str) -> "RationalFunction":
        return RationalFunction(
            self.num.diff(name) * self.den - self.num * self.den.diff(name), self.den**2
        )

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at {point}")
        return self.num.evaluate(point) / d

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


# ------------------------------------------------------------ functional API
def combine(a: Polynomial, b: Polynomial, mode: str) -> Polynomial:
    a._check(b)
    if mode == "add":
        return a + b
    if mode == "sub":
        return a - b
    if mode == "mul":
        return a * b
    raise ValueError(f"unknown mode {mode!r}")


def power(a: Polynomial, k: int) -> Polynomial:
    return a**k


def differentiate(p: Polynomial, var: str) -> Polynomial:
    return p.diff(var)


def substitute(p: Polynomial, assignment: Mapping[str, object], target: VariableContext | None = None) -> RationalFunction:
    """Compose ``p`` with rational functions; unassigned variables are kept.

    The result lives in ``target`` (default: the context of the assigned
    values, or ``p``'s own context when nothing is assigned).
    """
    for n in assignment:
        p.ctx.index(n)
    if target is None:
        target = p.ctx
        for v in assignment.values():
            if isinstance(v, (Polynomial, RationalFunction)):
                target = v.ctx
                break
    images = []
    for n in p.ctx.names:
        if n in assignment:
            images.append(RationalFunction.coerce(assignment[n], target))
        else:
            images.append(RationalFunction(target.var(n), reduced=True))
    # Common denominator: prod den_i^{deg_i p}.
    degs = [max((e[i] for e in p.terms), default=0) for i in range(len(p.ctx))]
    num_pows: dict = {}
    den_pows: dict = {}

    def npow(i, k):
        key = (i, k)
        if key not in num_pows:
            num_pows[key] = images[i].num ** k
        return num_pows[key]

    def dpow(i, k):
        key = (i, k)
        if key not in den_pows:
            den_pows[key] = images[i].den ** k
        return den_pows[key]

    total = target.zero()
    for e, c in p.terms.items():
        t = target.const(c)
        for i, k in enumerate(e):
            if k:
                t = t * npow(i, k)
            if degs[i] - k and not images[i].den.is_constant():
                t = t * dpow(i, degs[i] - k)
            elif degs[i] - k:
                t = t * images[i].den.constant_value() ** (degs[i] - k)
        total = total + t
    den = target.one()
    for i, d in enumerate(degs):
        if d:
            den = den * dpow(i, d)
    return RationalFunction(total, den)
