"""Exact linear algebra over Q and over polynomial rings.

Rational matrices are plain lists of rows of ``Fraction``.  Polynomial
matrices are wrapped in :class:`PolyMatrix`.  Grassmannian points are carried
as :class:`PlueckerVector` (maximal minors, index sets in lexicographic
order) or as :class:`SubspaceBasis` (reduced echelon basis).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .groebner import Ideal
from .poly import Polynomial, RationalFunction, VariableContext, poly_gcd
from functools import reduce

QMatrix = List[List[Fraction]]


# ------------------------------------------------------------ rational core
def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[QMatrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def qrank(rows) -> int:
    return len(rref(rows)[1])


def qnullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{v : rows @ v = 0}`` as a list of vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        out.append(v)
    return out


def qmatmul(a: QMatrix, b: QMatrix) -> QMatrix:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def transpose(m):
    return [list(r) for r in zip(*m)]


# -------------------------------------------------------- polynomial matrix
class PolyMatrix:
    """Rectangular matrix of polynomials over one context."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: VariableContext, rows: Sequence[Sequence]):
        self.ctx = ctx
        out = []
        width = None
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, str):
                    x = ctx.parse(x)
                elif not isinstance(x, Polynomial):
                    x = ctx.const(x)
                elif x.ctx != ctx:
                    raise ValueError("matrix entry over a different context")
                row.append(x)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("matrix rows have different lengths")
            out.append(tuple(row))
        self.rows = tuple(out)

    @classmethod
    def from_columns(cls, ctx, columns) -> "PolyMatrix":
        columns = list(columns)
        if not columns:
            raise ValueError("need at least one column; use zeros(ctx, n, 0)")
        return cls(ctx, transpose(columns))

    @classmethod
    def zeros(cls, ctx, nrows, ncols) -> "PolyMatrix":
        m = cls(ctx, [[ctx.zero()] * ncols for _ in range(nrows)])
        return m

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> List[Polynomial]:
        return [r[j] for r in self.rows]

    def columns(self) -> List[List[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def select_columns(self, cols) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [[r[j] for j in cols] for r in self.rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ctx, transpose(self.rows)) if self.rows else self

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        z = self.ctx.zero()
        out = []
        for row in self.rows:
            out.append([sum((a * b for a, b in zip(row, col)), z) for col in zip(*other.rows)])
        if not other.rows:
            out = [[z] * 0 for _ in self.rows]
        return PolyMatrix(self.ctx, out)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ctx == other.ctx and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def evaluate(self, point) -> QMatrix:
        return [[x.evaluate(point) for x in r] for r in self.rows]

    def compose(self, images: Mapping[str, Polynomial], target: VariableContext) -> "PolyMatrix":
        return PolyMatrix(target, [[x.compose(images, target) for x in r] for r in self.rows])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [[fn(x) for x in r] for r in self.rows])

    def to_strings(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


def det(m: Sequence[Sequence[Polynomial]], ctx: VariableContext) -> Polynomial:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return ctx.one()
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [list(r) for r in m]
    sign = 1
    prev = ctx.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if p is None:
                return ctx.zero()
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def generic_rank(M: PolyMatrix) -> int:
    """Rank over the fraction field, by Bareiss elimination with full pivoting."""
    a = [list(r) for r in M.rows]
    nr, nc = M.nrows, M.ncols
    prev = M.ctx.one()
    rank = 0
    for k in range(min(nr, nc)):
        piv = None
        for i in range(k, nr):
            for j in range(k, nc):
                if not a[i][j].is_zero():
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        a[k], a[i] = a[i], a[k]
        for r in a:
            r[k], r[j] = r[j], r[k]
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).divexact(prev)
            a[i][k] = M.ctx.zero()
        prev = a[k][k]
        rank += 1
    return rank


def minors(M: PolyMatrix, k: int, columns: Sequence[int] | None = None) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], Polynomial]]:
    """All k×k minors as ``(row_set, col_set, value)``, lexicographic order."""
    cols = list(range(M.ncols)) if columns is None else list(columns)
    if k > min(M.nrows, len(cols)) or k < 0:
        raise ValueError(f"minor size {k} too large for {M.nrows}x{len(cols)}")
    out = []
    for cs in combinations(cols, k):
        for rs in combinations(range(M.nrows), k):
            sub = [[M.rows[r][c] for c in cs] for r in rs]
            out.append((rs, cs, det(sub, M.ctx)))
    return out


def admissible_columns(M: PolyMatrix, k: int | None = None) -> Tuple[int, ...]:
    """First column subset (lexicographically) of size ``k`` of full generic rank."""
    if k is None:
        k = generic_rank(M)
    for cs in combinations(range(M.ncols), k):
        if generic_rank(M.select_columns(cs)) == k:
            return cs
    raise ValueError("no admissible column subset")


def minors_ideal(M: PolyMatrix, k: int, columns: Sequence[int] | None = None) -> Ideal:
    return Ideal(M.ctx, [v for _, _, v in minors(M, k, columns)])


def kernel_basis(M: PolyMatrix) -> List[List[Polynomial]]:
    """Basis of the kernel over the fraction field, denominators cleared.

    Each vector is scaled to be primitive with a monic pivot-free entry.
    """
    ctx = M.ctx
    n = M.ncols
    rows = [[RationalFunction(x, reduced=True) for x in r] for r in M.rows]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for f in (c for c in range(n) if c not in pivots):
        v = [RationalFunction(ctx.zero(), reduced=True) for _ in range(n)]
        v[f] = RationalFunction(ctx.one(), reduced=True)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        out.append(_clear_denominators(v, ctx))
    return out


def _clear_denominators(v: Sequence[RationalFunction], ctx) -> List[Polynomial]:
    den = ctx.one()
    for x in v:
        g = poly_gcd(den, x.den)
        den = den * x.den.divexact(g)
    col = [x.num * den.divexact(x.den) for x in v]
    nz = [p for p in col if not p.is_zero()]
    g = reduce(poly_gcd, nz) if nz else ctx.one()
    col = [p.divexact(g) for p in col]
    return col


# --------------------------------------------------------------- Plücker
@dataclass(frozen=True)
class PlueckerVector:
    """Maximal minors of a k-frame in an n-space, index sets in lex order."""

    k: int
    n: int
    coords: Tuple

    @staticmethod
    def index_sets(k: int, n: int):
        return list(combinations(range(n), k))

    def items(self):
        return list(zip(self.index_sets(self.k, self.n), self.coords))

    def is_zero(self) -> bool:
        return all(not c for c in self.coords)

    def normalized(self) -> "PlueckerVector":
        """Scaled so the first nonzero coordinate is 1 (rational vectors only)."""
        lead = next(c for c in self.coords if c)
        return PlueckerVector(self.k, self.n, tuple(Fraction(c) / lead for c in self.coords))

    def proportional(self, other: "PlueckerVector") -> bool:
        if (self.k, self.n) != (other.k, other.n):
            return False
        return self.normalized().coords == other.normalized().coords

    def to_json(self):
        return {
            "k": self.k,
            "n": self.n,
            "index_sets": [[i + 1 for i in s] for s in self.index_sets(self.k, self.n)],
            "coords": [str(c) for c in self.coords],
        }


def pluecker_vector(columns: Sequence[Sequence], ctx: VariableContext | None = None, check: bool = True) -> PlueckerVector:
    """Maximal minors of the matrix whose columns are given."""
    k = len(columns)
    n = len(columns[0]) if k else 0
    poly = any(isinstance(x, Polynomial) for c in columns for x in c)
    coords = []
    for rs in combinations(range(n), k):
        if poly:
            sub = [[_as_poly(columns[j][r], ctx) for j in range(k)] for r in rs]
            coords.append(det(sub, ctx))
        else:
            sub = [[Fraction(columns[j][r]) for j in range(k)] for r in rs]
            coords.append(_qdet(sub))
    v = PlueckerVector(k, n, tuple(coords))
    if check and k and v.is_zero():
        raise ValueError("columns are dependent: all maximal minors vanish")
    return v


def _as_poly(x, ctx):
    return x if isinstance(x, Polynomial) else ctx.const(x)


def _qdet(m: QMatrix) -> Fraction:
    a = [list(r) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def t_valuation(p: Polynomial, var: str) -> int:
    i = p.ctx.index(var)
    return min(e[i] for e in p.terms)


def subspace_limit(family: PlueckerVector, var: str = "t") -> PlueckerVector:
    """Limit at ``var -> 0`` of a Plücker vector with polynomial entries."""
    nz = [c for c in family.coords if not c.is_zero()]
    if not nz:
        raise ValueError("identically zero family has no limit")
    ctx = nz[0].ctx
    v = min(t_valuation(c, var) for c in nz)
    i = ctx.index(var)
    out = []
    for c in family.coords:
        val = Fraction(0)
        for e, a in c.terms.items():
            if e[i] == v and not any(x for j, x in enumerate(e) if j != i):
                val += a
            elif e[i] == v:
                raise ValueError("family depends on variables other than the curve parameter")
        out.append(val)
    return PlueckerVector(family.k, family.n, tuple(out))


# --------------------------------------------------------------- subspaces
class SubspaceBasis:
    """Subspace of Q^n stored as the reduced row echelon form of its basis."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, vectors: Sequence[Sequence] = ()):
        vecs = [[Fraction(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise ValueError("vector length does not match ambient dimension")
        self.n = n
        self.rows = tuple(tuple(r) for r in rref(vecs)[0]) if vecs else ()

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> List[List[Fraction]]:
        return [list(r) for r in self.rows]

    def contains_vector(self, v) -> bool:
        return qrank(list(self.rows) + [list(v)]) == self.dim

    def __eq__(self, other):
        return isinstance(other, SubspaceBasis) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"SubspaceBasis(n={self.n}, {[[str(x) for x in r] for r in self.rows]})"

    def to_json(self):
        return {"ambient": self.n, "basis": [[str(x) for x in r] for r in self.rows]}


def column_space(m: QMatrix) -> SubspaceBasis:
    n = len(m)
    return SubspaceBasis(n, transpose(m) if m and m[0] else [])


def kernel_space(m: QMatrix, ncols: int) -> SubspaceBasis:
    return SubspaceBasis(ncols, qnullspace(m, ncols))


def pluecker_to_subspace(v: PlueckerVector) -> SubspaceBasis:
    """Reconstruct the subspace from its coordinates relative to the first nonzero index set."""
    sets = v.index_sets(v.k, v.n)
    lookup = dict(zip(sets, (Fraction(c) for c in v.coords)))
    a_idx = next((i for i, c in enumerate(v.coords) if c), None)
    if a_idx is None:
        raise ValueError("zero Plücker vector")
    A = sets[a_idx]
    pa = lookup[A]

    def coord(seq):
        if len(set(seq)) < len(seq):
            return Fraction(0)
        perm = sorted(range(len(seq)), key=lambda i: seq[i])
        sign = _perm_sign(perm)
        return sign * lookup[tuple(sorted(seq))]

    vectors = []
    for r in range(v.k):
        vec = []
        for j in range(v.n):
            seq = list(A)
            seq[r] = j
            vec.append(coord(seq) / pa)
        vectors.append(vec)
    return SubspaceBasis(v.n, vectors)


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def subspace_pluecker(S: SubspaceBasis) -> PlueckerVector:
    if S.dim == 0:
        return PlueckerVector(0, S.n, (Fraction(1),))
    return pluecker_vector(S.basis())


def subspace_relations(A: SubspaceBasis, B: SubspaceBasis, mode: str):
    if A.n != B.n:
        raise ValueError(f"ambient mismatch: {A.n} vs {B.n}")
    if mode == "contains":
        return all(A.contains_vector(v) for v in B.rows)
    if mode == "equals":
        return A == B
    if mode == "sum":
        return SubspaceBasis(A.n, list(A.rows) + list(B.rows))
    if mode == "intersection":
        if not A.dim or not B.dim:
            return SubspaceBasis(A.n)
        # a·A - b·B = 0 ; intersection vectors are a·A
        m = transpose([list(r) for r in A.rows] + [[-x for x in r] for r in B.rows])
        sols = qnullspace(m, A.dim + B.dim)
        vecs = [[sum((s[i] * A.rows[i][c] for i in range(A.dim)), Fraction(0)) for c in range(A.n)] for s in sols]
        return SubspaceBasis(A.n, vecs)
    raise ValueError(f"unknown mode {mode!r}")


# ------------------------------------------------------ structure constants
class StructureConstants:
    """Rational bracket constants between graded components.

    ``table[(i, j)][k][l]`` is the coefficient list (length ``dims[i+j-1]``)
    of the bracket of the k-th basis vector of component i with the l-th of
    component j.
    """

    def __init__(self, dims: Mapping[int, int], table: Mapping[Tuple[int, int], Sequence]):
        self.dims = dict(dims)
        self.table = {}
        for (i, j), c in table.items():
            t = i + j - 1
            c = [[[Fraction(x) for x in c[k][l]] for l in range(self.dims[j])] for k in range(self.dims[i])]
            for k in range(self.dims[i]):
                for l in range(self.dims[j]):
                    if len(c[k][l]) != self.dims[t]:
                        raise ValueError("structure constant has wrong target length")
            self.table[(i, j)] = c

    def bracket(self, i: int, j: int, u, v) -> List[Fraction]:
        c = self.table[(i, j)]
        t = self.dims[i + j - 1]
        out = [Fraction(0)] * t
        for k, a in enumerate(u):
            if not a:
                continue
            for l, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for s in range(t):
                    if c[k][l][s]:
                        out[s] += ab * c[k][l][s]
        return out


def bracket_closed(V, C: StructureConstants, components=(1, 1)):
    """Whether brackets of basis vectors of V_i and V_j land in V_{i+j-1}.

    ``V`` is a single subspace (used for every level) or a mapping from level
    to subspace.  Returns ``(True, None)`` or ``(False, (u, v))``.
    """
    i, j = components
    t = i + j - 1
    spaces = V if isinstance(V, Mapping) else {i: V, j: V, t: V}
    for lvl in (i, j, t):
        if spaces[lvl].n != C.dims[lvl]:
            raise ValueError(f"subspace at level {lvl} has ambient {spaces[lvl].n}, expected {C.dims[lvl]}")
    for u in spaces[i].rows:
        for v in spaces[j].rows:
            w = C.bracket(i, j, u, v)
            if not spaces[t].contains_vector(w):
                return False, ([str(x) for x in u], [str(x) for x in v])
    return True, None


def gl_commutator_constants(n: int) -> StructureConstants:
    """Commutator on gl_n with the row-major basis E_ij."""
    dim = n * n
    table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    c = table[i * n + j][k * n + l]
                    if j == k:
                        c[i * n + l] += 1
                    if l == i:
                        c[k * n + j] -= 1
    return StructureConstants({1: dim}, {(1, 1): table})
