"""Buchberger engine for ideals and submodules of free modules.

Internally a vector of a free module ``R^r`` is a dict mapping
``(position, exponent)`` to a nonzero ``Fraction``.  Ideals are the rank-one
case.  Module terms are compared position-over-term: a smaller position index
is larger, ties are broken by the monomial order.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple

from .poly import Polynomial, VariableContext, grevlex_key

Term = Tuple[int, Tuple[int, ...]]
Vector = Dict[Term, Fraction]


# ------------------------------------------------------------------ orders
@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors of length ``nvars``.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  A block order puts
    the variables in ``first`` ahead of all others and uses grevlex inside
    each block.
    """

    kind: str
    nvars: int
    first: Tuple[int, ...] = ()
    key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == "grevlex":
            k = grevlex_key
        elif self.kind == "lex":
            k = tuple
        elif self.kind == "block":
            a = tuple(sorted(self.first))
            b = tuple(i for i in range(self.nvars) if i not in set(a))
            object.__setattr__(self, "first", a)

            def k(e, a=a, b=b):
                return grevlex_key(tuple(e[i] for i in a)) + grevlex_key(tuple(e[i] for i in b))

        else:
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "key", k)

    @classmethod
    def grevlex(cls, ctx: VariableContext):
        return cls("grevlex", len(ctx))

    @classmethod
    def lex(cls, ctx: VariableContext):
        return cls("lex", len(ctx))

    @classmethod
    def elimination(cls, ctx: VariableContext, names):
        return cls("block", len(ctx), tuple(sorted(ctx.index(n) for n in names)))

    def describe(self, ctx: VariableContext) -> str:
        if self.kind == "block":
            return "block(" + ",".join(ctx.names[i] for i in self.first) + ";grevlex)"
        return self.kind


# ----------------------------------------------------------- vector helpers
def _term_key(key):
    return lambda t: (-t[0], key(t[1]))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lead(v: Vector, tkey) -> Term:
    return max(v, key=tkey)


def _sub_multiple(p: Vector, c: Fraction, m, g: Vector):
    """In place: ``p -= c * x^m * g``."""
    for (pos, e), a in g.items():
        t = (pos, tuple(x + y for x, y in zip(e, m)))
        v = p.get(t, 0) - c * a
        if v:
            p[t] = v
        else:
            p.pop(t, None)


def _monic(v: Vector, tkey) -> Vector:
    lc = v[_lead(v, tkey)]
    if lc == 1:
        return v
    inv = 1 / lc
    return {t: c * inv for t, c in v.items()}


class _Basis:
    """Leading-term index used during reduction."""

    def __init__(self, tkey):
        self.tkey = tkey
        self.vecs: List[Vector] = []
        self.leads: List[Term] = []
        self.alive: List[bool] = []

    def add(self, v: Vector):
        self.vecs.append(v)
        self.leads.append(_lead(v, self.tkey))
        self.alive.append(True)

    def divisor(self, t: Term):
        pos, e = t
        for i, (lp, le) in enumerate(self.leads):
            if lp == pos and self.alive[i] and _divides(le, e):
                return i
        return None


def _reduce(v: Vector, basis: _Basis, quotients: Dict[int, Vector] | None = None) -> Vector:
    """Full reduction of ``v``; optionally record quotient monomials per basis index."""
    p = dict(v)
    rem: Vector = {}
    tkey = basis.tkey
    while p:
        t = max(p, key=tkey)
        i = basis.divisor(t)
        if i is None:
            rem[t] = p.pop(t)
            continue
        g = basis.vecs[i]
        lp, le = basis.leads[i]
        c = p[t] / g[basis.leads[i]]
        m = tuple(x - y for x, y in zip(t[1], le))
        if quotients is not None:
            q = quotients.setdefault(i, {})
            q[(0, m)] = q.get((0, m), 0) + c
        _sub_multiple(p, c, m, g)
    return rem


def buchberger(vectors: Sequence[Vector], order: MonomialOrder, rank_one: bool = False) -> List[Vector]:
    """Reduced Gröbner basis of the submodule spanned by ``vectors``.

    Pairs are taken by smallest lcm degree, ties broken by ``(j, i)``.  The
    chain criterion is always on; the coprime-leads criterion only for ideals.
    """
    tkey = _term_key(order.key)
    basis = _Basis(tkey)
    pending: set = set()
    heap: list = []

    def push(v: Vector):
        v = _monic(v, tkey)
        j = len(basis.vecs)
        basis.add(v)
        pj, ej = basis.leads[j]
        for i in range(j):
            if not basis.alive[i]:
                continue
            pi, ei = basis.leads[i]
            if pi != pj:
                continue
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            if rank_one and all(not (a and b) for a, b in zip(ei, ej)):
                continue
            pending.add((i, j))
            heapq.heappush(heap, (sum(lcm), j, i, lcm))

    for v in vectors:
        if not v:
            continue
        r = _reduce(v, basis)
        if r:
            push(r)

    while heap:
        _, j, i, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        pos = basis.leads[i][0]
        skip = False
        for k, (pk, ek) in enumerate(basis.leads):
            if k in (i, j) or pk != pos or not _divides(ek, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        gi, gj = basis.vecs[i], basis.vecs[j]
        ei, ej = basis.leads[i][1], basis.leads[j][1]
        s: Vector = {}
        _sub_multiple(s, -1 / gi[basis.leads[i]], tuple(a - b for a, b in zip(lcm, ei)), gi)
        _sub_multiple(s, 1 / gj[basis.leads[j]], tuple(a - b for a, b in zip(lcm, ej)), gj)
        r = _reduce(s, basis)
        if r:
            push(r)

    return _interreduce(basis.vecs, tkey)


def _interreduce(vecs: List[Vector], tkey) -> List[Vector]:
    leads = [_lead(v, tkey) for v in vecs]
    keep = []
    for i, (p, e) in enumerate(leads):
        redundant = False
        for j, (q, f) in enumerate(leads):
            if j == i or q != p or not _divides(f, e):
                continue
            if f != e or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(vecs[i])
    out = []
    for i, v in enumerate(keep):
        others = _Basis(tkey)
        for j, w in enumerate(keep):
            if j != i:
                others.add(w)
        lt = _lead(v, tkey)
        tail = {t: c for t, c in v.items() if t != lt}
        r = _reduce(tail, others)
        r[lt] = v[lt]
        out.append(_monic(r, tkey))
    out.sort(key=lambda v: tkey(_lead(v, tkey)))
    return out


def s_polynomials_reduce_to_zero(basis: Sequence[Vector], order: MonomialOrder) -> bool:
    """Buchberger's criterion, checked naively over all pairs."""
    tkey = _term_key(order.key)
    b = _Basis(tkey)
    for v in basis:
        b.add(v)
    for i, j in combinations(range(len(basis)), 2):
        (pi, ei), (pj, ej) = b.leads[i], b.leads[j]
        if pi != pj:
            continue
        lcm = tuple(max(a, c) for a, c in zip(ei, ej))
        s: Vector = {}
        _sub_multiple(s, -1 / basis[i][b.leads[i]], tuple(a - c for a, c in zip(lcm, ei)), basis[i])
        _sub_multiple(s, 1 / basis[j][b.leads[j]], tuple(a - c for a, c in zip(lcm, ej)), basis[j])
        if _reduce(s, b):
            return False
    return True


# -------------------------------------------------------- poly <-> vector
def _to_vec(p: Polynomial, pos: int = 0) -> Vector:
    return {(pos, e): c for e, c in p.terms.items()}


def _from_vec(v: Vector, ctx: VariableContext, pos: int = 0) -> Polynomial:
    return Polynomial(ctx, {e: c for (q, e), c in v.items() if q == pos})


def column_to_vec(col: Sequence[Polynomial], offset: int = 0) -> Vector:
    v: Vector = {}
    for k, p in enumerate(col):
        for e, c in p.terms.items():
            v[(k + offset, e)] = c
    return v


def vec_to_column(v: Vector, ctx: VariableContext, rank: int, offset: int = 0) -> List[Polynomial]:
    comps: List[dict] = [{} for _ in range(rank)]
    for (pos, e), c in v.items():
        comps[pos - offset][e] = c
    return [Polynomial(ctx, t) for t in comps]


# ------------------------------------------------------------------- ideals
class Ideal:
    """Ideal of a polynomial ring, given by generators, with cached bases."""

    def __init__(self, ctx: VariableContext, generators: Sequence[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ctx.const(g)
            if g.ctx != ctx:
                raise ValueError(f"generator {g} is not over {ctx.names}")
            if g and g not in gens:
                gens.append(g)
        self.ctx = ctx
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self._cache: Dict[MonomialOrder, Tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    # -------------------------------------------------------------- basics
    def __repr__(self):
        return f"Ideal<{', '.join(map(str, self.generators))}>"

    def __str__(self):
        return "<" + ", ".join(map(str, self.generators)) + ">"

    def default_order(self) -> MonomialOrder:
        return MonomialOrder.grevlex(self.ctx)

    def groebner_basis(self, order: MonomialOrder | None = None) -> Tuple[Polynomial, ...]:
        order = order or self.default_order()
        with self._lock:
            hit = self._cache.get(order)
            if hit is None:
                vecs = buchberger([_to_vec(g) for g in self.generators], order, rank_one=True)
                hit = tuple(_from_vec(v, self.ctx) for v in vecs)
                self._cache[order] = hit
        return hit

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def reduce(self, p: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        order = order or self.default_order()
        basis = _Basis(_term_key(order.key))
        for g in self.groebner_basis(order):
            basis.add(_to_vec(g))
        return _from_vec(_reduce(_to_vec(p), basis), self.ctx)

    def contains(self, p: Polynomial) -> bool:
        return self.reduce(p).is_zero()

    def __contains__(self, p):
        return self.contains(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        self._same(other)
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def _same(self, other: "Ideal"):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def canonical(self) -> Tuple[str, ...]:
        """Reduced grevlex basis as strings; equal ideals give equal tuples."""
        return tuple(str(g) for g in self.groebner_basis())

    # ---------------------------------------------------------- arithmetic
    def __add__(self, other: "Ideal") -> "Ideal":
        self._same(other)
        return Ideal(self.ctx, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._same(other)
        return Ideal(self.ctx, [a * b for a in self.generators for b in other.generators])

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            raise ValueError("negative ideal power")
        out = Ideal(self.ctx, [self.ctx.one()])
        for _ in range(k):
            out = Ideal(out.ctx, out.mingens()) * self
        return Ideal(out.ctx, out.mingens())

    def mingens(self) -> Tuple[Polynomial, ...]:
        """Generators with ones lying in the span of the earlier ones dropped."""
        keep: List[Polynomial] = []
        for g in self.generators:
            if not keep or not Ideal(self.ctx, keep).contains(g):
                keep.append(g)
        # a second pass drops generators made redundant by later ones
        i = 0
        while i < len(keep):
            rest = keep[:i] + keep[i + 1 :]
            if rest and Ideal(self.ctx, rest).contains(keep[i]):
                keep = rest
            else:
                i += 1
        return tuple(keep)

    def map_to(self, ctx: VariableContext) -> "Ideal":
        return Ideal(ctx, [g.embed(ctx) for g in self.generators])

    # ------------------------------------------------------ ideal operations
    def eliminate(self, names) -> "Ideal":
        names = list(names)
        for n in names:
            self.ctx.index(n)
        order = MonomialOrder.elimination(self.ctx, names)
        gb = self.groebner_basis(order)
        drop = set(self.ctx.index(n) for n in names)
        target = self.ctx.without(names)
        keep = [g for g in gb if not (g.support() & drop)]
        return Ideal(target, [g.restrict(target) for g in keep])

    def saturate(self, f: Polynomial) -> "Ideal":
        if f.is_zero():
            raise ValueError("saturation by the zero polynomial")
        if f.is_constant():
            return self
        t = self.ctx.fresh("t")
        big = self.ctx.extend([t])
        T = big.var(t)
        gens = [g.embed(big) for g in self.generators] + [big.one() - T * f.embed(big)]
        out = Ideal(big, gens).eliminate([t])
        return Ideal(self.ctx, [g.restrict(self.ctx) for g in out.generators])

    def intersect(self, other: "Ideal") -> "Ideal":
        self._same(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ctx)
        t = self.ctx.fresh("t")
        big = self.ctx.extend([t])
        T = big.var(t)
        gens = [T * g.embed(big) for g in self.generators]
        gens += [(big.one() - T) * g.embed(big) for g in other.generators]
        out = Ideal(big, gens).eliminate([t])
        return Ideal(self.ctx, [g.restrict(self.ctx) for g in out.generators])

    def quotient_by(self, g: Polynomial) -> "Ideal":
        """I : g for a single polynomial."""
        if g.is_zero():
            raise ValueError("colon by the zero polynomial")
        inter = self.intersect(Ideal(self.ctx, [g]))
        return Ideal(self.ctx, [h.divexact(g) for h in inter.generators])

    def colon(self, other: "Ideal") -> "Ideal":
        self._same(other)
        if other.is_zero():
            raise ValueError("colon by the zero ideal")
        result = None
        for g in other.generators:
            q = self.quotient_by(g)
            result = q if result is None else result.intersect(q)
        return Ideal(self.ctx, result.groebner_basis())

    def saturate_ideal(self, other: "Ideal") -> "Ideal":
        self._same(other)
        if other.is_zero():
            raise ValueError("saturation by the zero ideal")
        current = self
        while True:
            nxt = current.colon(other)
            if current.contains_ideal(nxt):
                return Ideal(self.ctx, current.groebner_basis())
            current = nxt

    def radical_contains(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        t = self.ctx.fresh("t")
        big = self.ctx.extend([t])
        gens = [g.embed(big) for g in self.generators] + [big.one() - big.var(t) * f.embed(big)]
        return Ideal(big, gens).is_unit()

    def leading_monomials(self, order: MonomialOrder | None = None):
        order = order or self.default_order()
        return [g.lead(order.key)[0] for g in self.groebner_basis(order)]

    def dimension(self) -> int:
        """Krull dimension of the zero set; -1 for the unit ideal."""
        if self.is_unit():
            return -1
        return monomial_dimension(self.leading_monomials(), len(self.ctx))

    def codimension(self) -> int:
        d = self.dimension()
        return len(self.ctx) + 1 if d < 0 else len(self.ctx) - d


def monomial_dimension(monomials, nvars: int) -> int:
    """Largest set of variables containing no support of the given monomials."""
    supports = []
    for e in monomials:
        mask = 0
        for i, k in enumerate(e):
            if k:
                mask |= 1 << i
        if mask == 0:
            return -1
        supports.append(mask)
    best = 0
    for s in range(1 << nvars):
        size = bin(s).count("1")
        if size <= best:
            continue
        if all(m & s != m for m in supports):
            best = size
    return best


# --------------------------------------------------------- witnessed division
def normal_form_with_witness(p: Polynomial, ideal: Ideal, order: MonomialOrder | None = None):
    """Division of ``p`` by the reduced basis of ``ideal``.

    Returns ``(remainder, cofactors)`` where ``cofactors`` maps each basis
    element to its multiplier, so that ``p == sum(c*g) + remainder``.
    """
    order = order or ideal.default_order()
    gb = ideal.groebner_basis(order)
    basis = _Basis(_term_key(order.key))
    for g in gb:
        basis.add(_to_vec(g))
    quotients: Dict[int, Vector] = {}
    rem = _reduce(_to_vec(p), basis, quotients)
    cof = {gb[i]: _from_vec(q, p.ctx) for i, q in sorted(quotients.items())}
    return _from_vec(rem, p.ctx), cof


def lift(p: Polynomial, generators: Sequence[Polynomial], order: MonomialOrder | None = None):
    """Express ``p`` in terms of the given generators.

    Returns ``(remainder, coefficients)`` with
    ``p == sum(c_k * generators[k]) + remainder`` and the remainder reduced
    modulo the ideal they generate; ``p`` is a member iff the remainder is 0.
    """
    ctx = p.ctx
    order = order or MonomialOrder.grevlex(ctx)
    m = len(generators)
    aug = []
    for k, g in enumerate(generators):
        v = _to_vec(g)
        v[(k + 1, (0,) * len(ctx))] = Fraction(1)
        aug.append(v)
    gb = buchberger(aug, order)
    basis = _Basis(_term_key(order.key))
    for v in gb:
        basis.add(v)
    r = _reduce(_to_vec(p), basis)
    rem = _from_vec(r, ctx)
    coeffs = [-_from_vec(r, ctx, pos=k + 1) for k in range(m)]
    return rem, coeffs


# ------------------------------------------------------------------ modules
class Submodule:
    """Submodule of ``R^rank`` generated by polynomial columns."""

    def __init__(self, ctx: VariableContext, rank: int, columns: Sequence[Sequence[Polynomial]]):
        self.ctx = ctx
        self.rank = rank
        cols = []
        for c in columns:
            if len(c) != rank:
                raise ValueError("column length does not match module rank")
            if any(not x.is_zero() for x in c):
                cols.append(tuple(c))
        self.columns = tuple(cols)
        self._gb = None
        self._lock = threading.Lock()

    def _basis(self):
        with self._lock:
            if self._gb is None:
                order = MonomialOrder.grevlex(self.ctx)
                vecs = buchberger([column_to_vec(c) for c in self.columns], order)
                b = _Basis(_term_key(order.key))
                for v in vecs:
                    b.add(v)
                self._gb = b
        return self._gb

    def groebner_basis(self):
        return [vec_to_column(v, self.ctx, self.rank) for v in self._basis().vecs]

    def reduce(self, column: Sequence[Polynomial]):
        return vec_to_column(_reduce(column_to_vec(column), self._basis()), self.ctx, self.rank)

    def contains(self, column: Sequence[Polynomial]) -> bool:
        return all(x.is_zero() for x in self.reduce(column))

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(c) for c in other.columns)

    def equals(self, other: "Submodule") -> bool:
        return self.contains_module(other) and other.contains_module(self)


def syzygies(matrix: Sequence[Sequence[Polynomial]], ctx: VariableContext | None = None, minimize: bool = True):
    """Generators of the kernel of ``matrix`` (a list of rows) acting on columns.

    Each column ``m_k`` is augmented with the unit vector ``e_k``; in the
    reduced basis of the augmented module under position-over-term order, the
    elements with no component in the top block carry the syzygies.
    Returns a list of columns (each of length ``ncols``).
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if ctx is None:
        ctx = matrix[0][0].ctx
    one = (0,) * len(ctx)
    aug = []
    for k in range(cols):
        v = column_to_vec([matrix[r][k] for r in range(rows)])
        v[(rows + k, one)] = Fraction(1)
        aug.append(v)
    order = MonomialOrder.grevlex(ctx)
    gb = buchberger(aug, order)
    tkey = _term_key(order.key)
    syz = [vec_to_column(v, ctx, cols, offset=rows) for v in gb if _lead(v, tkey)[0] >= rows]
    if minimize:
        syz = _minimize_columns(ctx, cols, syz)
    return syz


def _minimize_columns(ctx, rank, columns):
    keep = list(columns)
    i = len(keep) - 1
    while i >= 0:
        rest = keep[:i] + keep[i + 1 :]
        if rest and Submodule(ctx, rank, rest).contains(keep[i]):
            keep = rest
        i -= 1
    return keep


# ----------------------------------------------------------- functional API
def groebner_basis(ideal: Ideal, order: MonomialOrder | None = None):
    return list(ideal.groebner_basis(order))


def elimination(ideal: Ideal, names) -> Ideal:
    return ideal.eliminate(names)


def saturation(ideal: Ideal, f: Polynomial) -> Ideal:
    return ideal.saturate(f)


def saturation_ideal(ideal: Ideal, other: Ideal) -> Ideal:
    return ideal.saturate_ideal(other)


def colon_ideal(ideal: Ideal, other: Ideal) -> Ideal:
    return ideal.colon(other)


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.radical_contains(f)


def dimension(ideal: Ideal) -> int:
    return ideal.dimension()


def ideal_combine(a: Ideal, b: Ideal, mode: str, k: int | None = None):
    if b is not None:
        a._same(b)
    if mode == "sum":
        return a + b
    if mode == "product":
        return a * b
    if mode == "power":
        if k is None:
            raise ValueError("power mode needs an exponent")
        return a**k
    if mode == "equal":
        return a.equals(b)
    if mode == "contains":
        return a.contains_ideal(b)
    if mode == "intersection":
        return a.intersect(b)
    raise ValueError(f"unknown mode {mode!r}")
