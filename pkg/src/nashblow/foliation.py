"""Geometric resolutions of polynomial singular foliations.

A resolution is stored as its maps ``d1 = anchor, d2, ..., dn`` where
``d_i : E_{-i} -> E_{-i+1}`` is a polynomial matrix and ``E_0`` is the
tangent bundle of affine space (rank = number of coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .fields import VectorField
from .groebner import Ideal
from .linalg import (
    PolyMatrix,
    SubspaceBasis,
    column_space,
    generic_rank,
    kernel_space,
    minors_ideal,
    qnullspace,
    rref,
    subspace_relations,
)
from .poly import Polynomial, VariableContext


class ComplexError(ValueError):
    """The input matrices do not form a complex."""


class AlmostLieError(ValueError):
    pass


class AnchoredComplex:
    """The maps ``d1 = rho, d2, ..., dn`` of a geometric resolution."""

    def __init__(self, ctx: VariableContext, anchor: PolyMatrix, differentials: Sequence[PolyMatrix] = ()):
        self.ctx = ctx
        self.maps: Tuple[PolyMatrix, ...] = (anchor,) + tuple(differentials)
        prev_cols = len(ctx)
        for i, m in enumerate(self.maps, start=1):
            if m.ctx != ctx:
                raise ComplexError(f"d{i} is over a different context")
            if m.nrows != prev_cols:
                raise ComplexError(f"d{i} has {m.nrows} rows but E_-{i - 1} has rank {prev_cols}")
            prev_cols = m.ncols

    @property
    def d(self) -> int:
        return len(self.ctx)

    @property
    def anchor(self) -> PolyMatrix:
        return self.maps[0]

    @property
    def length(self) -> int:
        return len(self.maps)

    def rank_E(self, i: int) -> int:
        """Rank of ``E_{-i}``; ``E_0`` is the tangent bundle."""
        if i == 0:
            return self.d
        if 1 <= i <= self.length:
            return self.maps[i - 1].ncols
        return 0

    def dmap(self, i: int) -> Optional[PolyMatrix]:
        """``d^(i)``; ``None`` past the end."""
        if 1 <= i <= self.length:
            return self.maps[i - 1]
        return None

    @cached_property
    def generic_ranks(self) -> Tuple[int, ...]:
        return tuple(generic_rank(m) for m in self.maps)

    def map_rank(self, i: int) -> int:
        return self.generic_ranks[i - 1] if 1 <= i <= self.length else 0

    @property
    def leaf_dimension(self) -> int:
        return self.map_rank(1)


def validate_complex(C: AnchoredComplex) -> dict:
    """Check ``d_i d_{i+1} = 0`` exactly; raises :class:`ComplexError` on failure."""
    for i in range(1, C.length):
        prod = C.dmap(i) @ C.dmap(i + 1)
        for r, row in enumerate(prod.rows):
            for c, x in enumerate(row):
                if not x.is_zero():
                    raise ComplexError(
                        f"d{i}*d{i + 1} is nonzero at entry ({r + 1},{c + 1}): {x}"
                    )
    return {
        "complex": True,
        "length": C.length,
        "ranks_E": [C.rank_E(i) for i in range(C.length + 1)],
        "generic_ranks": list(C.generic_ranks),
    }


def regular_codims(C: AnchoredComplex) -> Tuple[int, List[int]]:
    """``(r, [r_0, r_1, ..., r_n])`` with the alternating-sum formula.

    ``r_i`` is the codimension of the image of ``d^(i+1)`` in ``E_{-i}`` at
    regular points.  Raises ``ValueError`` if it disagrees with the ranks.
    """
    r = C.leaf_dimension
    codims = [C.d - r]
    for i in range(1, C.length + 1):
        s = sum((-1) ** (j + 1) * C.rank_E(j) for j in range(1, i))
        codims.append(s + (-1) ** (i + 1) * r)
    for i in range(1, C.length):
        deficit = C.rank_E(i) - C.map_rank(i + 1)
        if codims[i] != deficit:
            raise ValueError(
                f"r_{i} = {codims[i]} from the formula but rank deficit is {deficit}: input is not exact"
            )
    return r, codims


def singular_locus(C: AnchoredComplex, level: int) -> Ideal:
    """Ideal of maximal generic-rank minors of ``d^(level+1)``."""
    if not 0 <= level <= C.length:
        raise ValueError(f"level {level} out of range 0..{C.length}")
    m = C.dmap(level + 1)
    if m is None:
        return Ideal(C.ctx, [C.ctx.one()])
    return minors_ideal(m, C.map_rank(level + 1))


def exactness_check(C: AnchoredComplex) -> List[dict]:
    """Rank and codimension criterion at each ``E_{-i}``."""
    out = []
    for i in range(1, C.length + 1):
        ranks = C.map_rank(i) + C.map_rank(i + 1)
        if ranks != C.rank_E(i):
            verdict = "fails rank condition"
            codim = None
        else:
            I = minors_ideal(C.dmap(i), C.map_rank(i))
            codim = I.codimension()
            verdict = "exact (criterion)" if codim >= i else "codimension too small"
        out.append({"degree": i, "rank_sum": ranks, "rank_E": C.rank_E(i), "codim": codim, "verdict": verdict})
    return out


def is_exact(report: Sequence[dict]) -> bool:
    return all(r["verdict"] == "exact (criterion)" for r in report)


# ---------------------------------------------------------------- almost Lie
@dataclass
class AlmostLieData:
    """Frame structure functions of the binary bracket.

    ``brackets[j][a][b]`` lists the ``E_{-j}`` components of
    ``l2(e_a, e^(j)_b)`` for ``e_a`` in the frame of ``E_{-1}``.  Missing
    levels mean the bracket vanishes on frame elements.  ``sections`` maps a
    vector-field name to a section of ``E_{-1}``.
    """

    brackets: Dict[int, List[List[List[Polynomial]]]]
    sections: Dict[str, List[Polynomial]] = field(default_factory=dict)

    def table(self, C: AnchoredComplex, j: int):
        t = self.brackets.get(j)
        if t is None:
            z = C.ctx.zero()
            n1, nj = C.rank_E(1), C.rank_E(j)
            return [[[z] * nj for _ in range(nj)] for _ in range(n1)]
        return t


def check_shapes(C: AnchoredComplex, L: AlmostLieData):
    n1 = C.rank_E(1)
    for j, t in L.brackets.items():
        nj = C.rank_E(j)
        if j < 1 or j > C.length:
            raise AlmostLieError(f"bracket level {j} outside the complex")
        if len(t) != n1 or any(len(row) != nj for row in t) or any(len(v) != nj for row in t for v in row):
            raise AlmostLieError(f"bracket table for (1,{j}) has the wrong shape")
    for name, s in L.sections.items():
        if len(s) != n1:
            raise AlmostLieError(f"section {name} has {len(s)} components, expected {n1}")


def anchor_field(C: AnchoredComplex, column: Sequence[Polynomial]) -> VectorField:
    rho = C.anchor
    comps = []
    for r in range(rho.nrows):
        acc = C.ctx.zero()
        for c, a in enumerate(column):
            if not a.is_zero():
                acc = acc + rho.rows[r][c] * a
        comps.append(acc)
    return VectorField(C.ctx, comps)


def frame_field(C: AnchoredComplex, a: int) -> VectorField:
    return VectorField(C.ctx, C.anchor.column(a))


def validate_almost_lie(C: AnchoredComplex, L: AlmostLieData) -> dict:
    """Check the anchor identity and the derivation identity on frames."""
    check_shapes(C, L)
    n1 = C.rank_E(1)
    T11 = L.table(C, 1)
    for a in range(n1):
        for b in range(n1):
            if T11[a][b] != [-x for x in T11[b][a]]:
                raise AlmostLieError(f"l2 on E_-1 is not antisymmetric at ({a + 1},{b + 1})")
    fields = [frame_field(C, a) for a in range(n1)]
    for a in range(n1):
        for b in range(a + 1, n1):
            lhs = fields[a].bracket(fields[b])
            rhs = anchor_field(C, T11[a][b])
            if lhs != rhs:
                raise AlmostLieError(
                    f"anchor identity fails for frame pair ({a + 1},{b + 1}): "
                    f"[rho e_a, rho e_b] = {lhs.to_strings()} but rho(l2) = {rhs.to_strings()}"
                )
    for i in range(2, C.length + 1):
        D = C.dmap(i)
        Ti, Tprev = L.table(C, i), L.table(C, i - 1)
        for a in range(n1):
            X = fields[a]
            for b in range(C.rank_E(i)):
                # d(l2(e_a, e_b)) against l2(e_a, d e_b) with the Leibniz extension
                lhs = [sum((D.rows[r][c] * Ti[a][b][c] for c in range(D.ncols)), C.ctx.zero()) for r in range(D.nrows)]
                rhs = []
                for r in range(D.nrows):
                    acc = X(D.rows[r][b])
                    for c in range(D.nrows):
                        acc = acc + D.rows[c][b] * Tprev[a][c][r]
                    rhs.append(acc)
                if lhs != rhs:
                    raise AlmostLieError(
                        f"derivation identity fails at level {i} for frame pair ({a + 1},{b + 1})"
                    )
    for name, s in L.sections.items():
        anchor_field(C, s)
    return {"anchor_identity": True, "derivation_identity": True, "leibniz": "by construction"}


# ----------------------------------------------------------------- isotropy
@dataclass
class IsotropyAlgebra:
    point: Tuple[Fraction, ...]
    kernel: SubspaceBasis
    image: SubspaceBasis
    quotient_basis: List[List[Fraction]]
    constants: List[List[List[Fraction]]]

    @property
    def dim(self) -> int:
        return len(self.quotient_basis)

    def bracket(self, u, v):
        out = [Fraction(0)] * self.dim
        for k, a in enumerate(u):
            for l, b in enumerate(v):
                if a and b:
                    for s in range(self.dim):
                        out[s] += a * b * self.constants[k][l][s]
        return out

    def jacobi_holds(self) -> bool:
        n = self.dim
        e = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    t1 = self.bracket(e[i], self.bracket(e[j], e[k]))
                    t2 = self.bracket(e[j], self.bracket(e[k], e[i]))
                    t3 = self.bracket(e[k], self.bracket(e[i], e[j]))
                    if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                        return False
        return True

    def to_json(self):
        return {
            "point": [str(x) for x in self.point],
            "kernel": self.kernel.to_json(),
            "image": self.image.to_json(),
            "dimension": self.dim,
            "quotient_basis": [[str(x) for x in v] for v in self.quotient_basis],
            "constants": [[[str(x) for x in v] for v in row] for row in self.constants],
        }


def bracket_at(C: AnchoredComplex, L: AlmostLieData, point, u, v) -> List[Fraction]:
    """Bracket of constant sections ``u, v`` of ``E_{-1}`` evaluated at ``point``."""
    n1 = C.rank_E(1)
    T = L.table(C, 1)
    out = [Fraction(0)] * n1
    for a, x in enumerate(u):
        if not x:
            continue
        for b, y in enumerate(v):
            if not y:
                continue
            for c in range(n1):
                coef = T[a][b][c]
                if not coef.is_zero():
                    out[c] += x * y * coef.evaluate(point)
    return out


def structure_constants_at(C: AnchoredComplex, L: AlmostLieData, point):
    """Frame bracket constants of ``E_{-1}`` at a point."""
    from .linalg import StructureConstants

    n1 = C.rank_E(1)
    T = L.table(C, 1)
    table = [[[T[a][b][c].evaluate(point) for c in range(n1)] for b in range(n1)] for a in range(n1)]
    return StructureConstants({1: n1}, {(1, 1): table})


def isotropy_algebra(C: AnchoredComplex, L: AlmostLieData, point) -> IsotropyAlgebra:
    point = tuple(Fraction(x) for x in point)
    n1 = C.rank_E(1)
    rho = C.anchor.evaluate(point)
    K = kernel_space(rho, n1)
    d2 = C.dmap(2)
    Im = column_space(d2.evaluate(point)) if d2 is not None else SubspaceBasis(n1)
    if not subspace_relations(K, Im, "contains"):
        raise AlmostLieError("image of d2 is not inside the kernel of the anchor")
    # complement of Im inside K, chosen greedily from K's echelon basis
    basis = [list(r) for r in Im.rows]
    quotient = []
    for v in K.rows:
        if len(rref(basis + [list(v)])[1]) > len(basis):
            basis.append(list(v))
            quotient.append(list(v))
    m = len(Im.rows)

    def coords(w):
        # solve basis^T c = w
        cols = [list(x) for x in zip(*basis)] if basis else [[] for _ in range(n1)]
        aug = [cols[r] + [w[r]] for r in range(n1)]
        red, piv = rref(aug)
        if len(basis) in piv:
            raise AlmostLieError("bracket leaves the kernel of the anchor")
        c = [Fraction(0)] * len(basis)
        for row, p in zip(red, piv):
            c[p] = row[-1]
        return c

    for u in Im.rows:
        for v in K.rows:
            c = coords(bracket_at(C, L, point, u, v))
            if any(c[m:]):
                raise AlmostLieError("bracket does not descend to the quotient")
    consts = []
    for u in quotient:
        row = []
        for v in quotient:
            row.append(coords(bracket_at(C, L, point, u, v))[m:])
        consts.append(row)
    return IsotropyAlgebra(point, K, Im, quotient, consts)
