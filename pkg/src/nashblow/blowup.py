"""Monoidal transformations, Nash blowups, fibers and comparisons."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

from .foliation import AnchoredComplex, singular_locus
from .groebner import Ideal, MonomialOrder
from .linalg import (
    PlueckerVector,
    PolyMatrix,
    SubspaceBasis,
    admissible_columns,
    column_space,
    generic_rank,
    kernel_space,
    minors,
    pluecker_to_subspace,
    pluecker_vector,
    qnullspace,
    subspace_limit,
    subspace_relations,
)
from .poly import Polynomial, RationalFunction, VariableContext, poly_gcd
from .groebner import syzygies


class BlowupError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


# ------------------------------------------------------------------ charts
@dataclass
class Presentation:
    """Chart as a graph: some chart variables are polynomials in the others.

    ``coords`` are the remaining chart variables, ``images`` gives every
    chart variable as a polynomial in ``coords``, and ``residual`` holds the
    relations left among the coordinates.
    """

    ctx: VariableContext
    coords: Tuple[str, ...]
    images: Dict[str, Polynomial]
    residual: Ideal

    def pull(self, p: Polynomial) -> Polynomial:
        """Rewrite a chart polynomial in the coordinates."""
        return p.compose(self.images, self.ctx)

    def pull_rational(self, f: RationalFunction) -> RationalFunction:
        return RationalFunction(self.pull(f.num), self.pull(f.den))


@dataclass
class BlowupChart:
    index: int
    name: str
    ctx: VariableContext
    ideal: Ideal
    generator: Polynomial
    ratios: Dict[str, RationalFunction]
    base_ctx: VariableContext
    _presentation: Optional[Presentation] = field(default=None, repr=False)

    @property
    def exceptional(self) -> Ideal:
        return Ideal(self.ctx, [self.generator.embed(self.ctx)]) + self.ideal

    @property
    def presentation(self) -> Presentation:
        if self._presentation is None:
            self._presentation = present_chart(self.ideal, list(self.base_ctx.names))
        return self._presentation

    def to_json(self):
        pres = self.presentation
        return {
            "index": self.index + 1,
            "name": self.name,
            "variables": list(self.ctx.names),
            "ideal": list(self.ideal.canonical()),
            "exceptional": list(self.exceptional.canonical()),
            "chart_map": {k: str(v) for k, v in self.ratios.items()},
            "coordinates": list(pres.coords),
            "graph": {k: str(v) for k, v in pres.images.items() if k not in pres.coords},
            "residual": list(pres.residual.canonical()),
        }


@dataclass
class BlowupVariety:
    base: VariableContext
    center: Ideal
    generators: Tuple[Polynomial, ...]
    fiber_names: Tuple[str, ...]
    total: Optional[Ideal]
    charts: List[BlowupChart]
    trivial: bool
    provenance: dict = field(default_factory=dict)

    @property
    def total_ctx(self) -> VariableContext:
        return self.base.extend(self.fiber_names)

    def chart(self, key) -> BlowupChart:
        """Chart by 1-based index, generator string or fiber variable name."""
        if self.trivial:
            raise BlowupError("the trivial blowup has no projective charts")
        if isinstance(key, int) or (isinstance(key, str) and key.isdigit()):
            k = int(key)
            if not 1 <= k <= len(self.charts):
                raise BlowupError(f"chart {k} out of range 1..{len(self.charts)}")
            return self.charts[k - 1]
        for ch in self.charts:
            if key in (ch.name, self.fiber_names[ch.index]):
                return ch
        raise BlowupError(f"no chart named {key!r}")

    def to_json(self):
        out = {
            "base": list(self.base.names),
            "center": [str(g) for g in self.generators],
            "center_basis": list(self.center.canonical()),
            "trivial": self.trivial,
            "provenance": self.provenance,
        }
        if not self.trivial:
            out["fiber_variables"] = list(self.fiber_names)
            out["total_ideal"] = list(self.total.canonical())
            out["charts"] = [c.to_json() for c in self.charts]
        return out


def _dedupe(gens: Sequence[Polynomial]):
    """Drop zeros and scalar multiples of earlier entries.

    Returns the kept list and, per input, ``(kept index, scalar)`` or ``None``.
    """
    kept: List[Polynomial] = []
    where = []
    for g in gens:
        if g.is_zero():
            where.append(None)
            continue
        hit = None
        gm = g.monic()
        for k, h in enumerate(kept):
            if gm == h.monic():
                hit = (k, g.lead()[1] / h.lead()[1])
                break
        if hit is None:
            kept.append(g)
            hit = (len(kept) - 1, Fraction(1))
        where.append(hit)
    return kept, where


def _fiber_names(base: VariableContext, n: int, names=None) -> Tuple[str, ...]:
    if names is not None:
        names = tuple(names)
        if len(names) != n:
            raise BlowupError(f"need {n} fiber variable names, got {len(names)}")
        clash = set(names) & set(base.names)
        if clash:
            raise BlowupError(f"fiber variable names clash with base: {sorted(clash)}")
        return names
    out = []
    for i in range(n):
        nm = f"xi{i + 1}"
        while nm in base or nm in out:
            nm = nm + "_"
        out.append(nm)
    return tuple(out)


def trivial_blowup(base: VariableContext, center: Ideal, provenance=None) -> BlowupVariety:
    return BlowupVariety(base, center, center.generators, (), None, [], True, provenance or {})


def is_principal(I: Ideal) -> bool:
    g = reduce(poly_gcd, I.generators)
    return I.equals(Ideal(I.ctx, [g]))


def monoidal_transformation(I: Ideal, fiber_names=None, provenance=None) -> BlowupVariety:
    """Blowup of affine space along ``I`` by Rees-graph elimination."""
    if I.is_zero():
        raise BlowupError("cannot blow up the zero ideal")
    base = I.ctx
    gens, _ = _dedupe(I.generators)
    prov = dict(provenance or {})
    if I.is_unit() or len(gens) == 1 or is_principal(I):
        return trivial_blowup(base, I, prov)
    n = len(gens)
    xi = _fiber_names(base, n, fiber_names if fiber_names is None or len(fiber_names) == n else list(fiber_names)[:n])
    tctx = base.extend(xi)
    t = tctx.fresh("t")
    big = tctx.extend([t])
    T = big.var(t)
    rel = [big.var(xi[i]) - T * gens[i].embed(big) for i in range(n)]
    total = Ideal(big, rel).eliminate([t])
    charts = []
    for j in range(n):
        cctx = base.extend([xi[i] for i in range(n) if i != j])
        images = {xi[j]: cctx.one()}
        sub = [g.compose(images, cctx) for g in total.generators]
        fj = gens[j].embed(cctx)
        ideal = Ideal(cctx, sub).saturate(fj)
        ideal = Ideal(cctx, ideal.groebner_basis())
        ratios = {xi[i]: RationalFunction(gens[i], gens[j]) for i in range(n) if i != j}
        charts.append(BlowupChart(j, str(gens[j]), cctx, ideal, gens[j], ratios, base))
    return BlowupVariety(base, I, tuple(gens), xi, Ideal(tctx, total.groebner_basis()), charts, False, prov)


# --------------------------------------------------------------- Nash side
def nash_blowup(M: PolyMatrix, mode: str = "image", fiber_names=None, provenance=None) -> BlowupVariety:
    """Blowup along the minors of an admissible column family of ``M``."""
    prov = dict(provenance or {})
    base = M.ctx
    if mode == "kernel":
        if M.ncols == 0:
            return trivial_blowup(base, Ideal(base, [base.one()]), prov)
        S = syzygies([list(r) for r in M.rows], base)
        if not S:
            prov["note"] = "zero kernel"
            return trivial_blowup(base, Ideal(base, [base.one()]), prov)
        prov["kernel_columns"] = [[str(x) for x in c] for c in S]
        return nash_blowup(PolyMatrix.from_columns(base, S), "image", fiber_names, prov)
    if mode != "image":
        raise BlowupError(f"unknown mode {mode!r}")
    k = generic_rank(M) if M.ncols else 0
    prov.update({"rank": k, "ambient": M.nrows})
    if k == 0:
        prov["note"] = "zero map"
        return trivial_blowup(base, Ideal(base, [base.one()]), prov)
    cols = admissible_columns(M, k)
    ms = minors(M, k, cols)
    values = [v for _, _, v in ms]
    gens, where = _dedupe(values)
    prov["columns"] = [c + 1 for c in cols]
    prov["pluecker_map"] = [
        None if w is None else [w[0], str(w[1])] for w in where
    ]
    prov["pluecker_sets"] = [[r + 1 for r in rs] for rs, _, _ in ms]
    center = Ideal(base, gens)
    return monoidal_transformation(center, fiber_names, prov)


def blowup_space(C: AnchoredComplex, level: int, fiber_names=None) -> BlowupVariety:
    if not 0 <= level <= C.length:
        raise BlowupError(f"level {level} out of range 0..{C.length}")
    if level == C.length:
        return trivial_blowup(C.ctx, Ideal(C.ctx, [C.ctx.one()]), {"level": level, "note": "past the resolution"})
    return nash_blowup(C.dmap(level + 1), "image", fiber_names, {"level": level})


def xi_to_pluecker(B: BlowupVariety, xi_point: Sequence[Fraction]) -> PlueckerVector:
    """Plücker vector of a fiber point of a Nash blowup given in ξ coordinates."""
    prov = B.provenance
    coords = []
    for w in prov["pluecker_map"]:
        coords.append(Fraction(0) if w is None else Fraction(w[1]) * xi_point[w[0]])
    k, n = prov["rank"], prov["ambient"]
    return PlueckerVector(k, n, tuple(coords))


# ------------------------------------------------------------------- fibers
@dataclass
class FiberDescriptor:
    ideal: Ideal
    projective_dimension: int
    single_point: bool
    point: Optional[Tuple[Fraction, ...]] = None
    subspace: Optional[SubspaceBasis] = None

    def to_json(self):
        out = {
            "ideal": list(self.ideal.canonical()),
            "projective_dimension": self.projective_dimension,
            "single_reduced_point": self.single_point,
        }
        if self.point is not None:
            out["point"] = [str(x) for x in self.point]
        if self.subspace is not None:
            out["subspace"] = self.subspace.to_json()
        return out


def fiber_over_point(B: BlowupVariety, point) -> FiberDescriptor:
    point = [Fraction(x) for x in point]
    if len(point) != len(B.base):
        raise BlowupError(f"point has {len(point)} coordinates, base has {len(B.base)}")
    if B.trivial:
        fctx = VariableContext(["_"])
        return FiberDescriptor(Ideal(fctx), 0, True, tuple(point))
    fctx = VariableContext(B.fiber_names)
    images = {n: fctx.const(v) for n, v in zip(B.base.names, point)}
    gens = [g.compose(images, fctx) for g in B.total.generators]
    I = Ideal(fctx, gens)
    pdim = I.dimension() - 1
    linear = [g for g in I.groebner_basis() if g.total_degree() == 1]
    single = pdim == 0 and len(linear) == len(B.fiber_names) - 1
    xi = None
    sub = None
    if single:
        rows = [[g.terms.get(tuple(int(i == j) for i in range(len(fctx))), Fraction(0)) for j in range(len(fctx))] for g in linear]
        ns = qnullspace(rows, len(fctx))
        xi = tuple(ns[0])
        if "pluecker_map" in B.provenance:
            sub = pluecker_to_subspace(xi_to_pluecker(B, xi))
    return FiberDescriptor(I, pdim, single, xi, sub)


def _curve_images(C_ctx: VariableContext, curve: Sequence[Polynomial]):
    tctx = curve[0].ctx
    if len(curve) != len(C_ctx):
        raise BlowupError(f"curve has {len(curve)} components, base has {len(C_ctx)}")
    return tctx, {n: c for n, c in zip(C_ctx.names, curve)}


def curve_family(C: AnchoredComplex, level: int, curve: Sequence[Polynomial]) -> Tuple[PlueckerVector, Tuple[int, ...]]:
    """Plücker family of ``im d^(level+1)`` along the curve, in the curve parameter."""
    tctx, images = _curve_images(C.ctx, curve)
    sing = singular_locus(C, level)
    if all(g.compose(images, tctx).is_zero() for g in sing.generators):
        raise BlowupError("curve lies in the singular locus identically")
    M = C.dmap(level + 1)
    if M is None:
        return PlueckerVector(0, C.rank_E(level), (tctx.one(),)), ()
    k = C.map_rank(level + 1)
    Mt = M.compose(images, tctx)
    from itertools import combinations

    for cols in combinations(range(M.ncols), k):
        fam = pluecker_vector([Mt.column(c) for c in cols], tctx, check=False)
        if not fam.is_zero():
            return fam, cols
    raise BlowupError("no column family is independent along the curve")


def fiber_along_curve(C: AnchoredComplex, level: int, curve: Sequence[Polynomial]) -> PlueckerVector:
    fam, _ = curve_family(C, level, curve)
    if fam.k == 0:
        return PlueckerVector(0, fam.n, (Fraction(1),))
    var = fam.coords[0].ctx.names[0]
    return subspace_limit(fam, var)


def fiber_along_curve_all(C: AnchoredComplex, curve) -> Tuple[PlueckerVector, ...]:
    """Limits at every level along one curve (a point of the infinite tower)."""
    return tuple(fiber_along_curve(C, i, curve) for i in range(C.length + 1))


def pluecker_subspace(v: PlueckerVector) -> SubspaceBasis:
    if v.k == 0:
        return SubspaceBasis(v.n)
    return pluecker_to_subspace(v)


def containment_check(C: AnchoredComplex, level: int, V: SubspaceBasis, point) -> dict:
    """Check ``im d^(i+1)_x ⊆ V ⊆ ker d^(i)_x``; equalities at regular points."""
    point = [Fraction(x) for x in point]
    n = C.rank_E(level)
    if V.n != n:
        raise ContainmentError(f"subspace ambient {V.n} does not match rank E_-{level} = {n}")
    nxt = C.dmap(level + 1)
    im = column_space(nxt.evaluate(point)) if nxt is not None and nxt.ncols else SubspaceBasis(n)
    prev = C.dmap(level)
    ker = kernel_space(prev.evaluate(point), n) if prev is not None else SubspaceBasis(n, [[int(i == j) for i in range(n)] for j in range(n)])
    lower = subspace_relations(V, im, "contains")
    upper = subspace_relations(ker, V, "contains")
    if not (lower and upper):
        raise ContainmentError(
            f"containment fails at level {level}: im ⊆ V is {lower}, V ⊆ ker is {upper}"
        )
    regular = not all(g.evaluate(point) == 0 for g in singular_locus(C, level).generators)
    out = {
        "level": level,
        "point": [str(x) for x in point],
        "image_in_V": lower,
        "V_in_kernel": upper,
        "dim_image": im.dim,
        "dim_V": V.dim,
        "dim_kernel": ker.dim,
        "regular": regular,
    }
    if regular:
        out["image_equals_V"] = im == V
        if not out["image_equals_V"]:
            raise ContainmentError(f"at a regular point the limit differs from the image at level {level}")
        if level >= 1:
            prev_regular = not all(g.evaluate(point) == 0 for g in singular_locus(C, level - 1).generators)
            if prev_regular:
                out["kernel_equals_image"] = ker == im
    return out


# --------------------------------------------------------------- comparison
@dataclass
class MoodyResult:
    found: bool
    n: Optional[int] = None
    K: Optional[Ideal] = None

    def to_json(self):
        if not self.found:
            return {"verdict": "unknown"}
        return {"verdict": "yes", "n": self.n, "K": list(self.K.canonical())}


def moody_check(I: Ideal, J: Ideal, nmax: int = 4, shift: Polynomial | None = None) -> MoodyResult:
    """Search ``K = I^n : J`` with ``K J = I^n`` for ``n <= nmax``.

    ``shift`` optionally multiplies ``J`` by a principal factor first.
    """
    if I.is_zero() or J.is_zero():
        raise BlowupError("Moody check needs nonzero ideals")
    if shift is not None:
        J = Ideal(J.ctx, [shift * g for g in J.generators])
    for n in range(1, nmax + 1):
        In = I**n
        K = In.colon(J)
        if (K * J).equals(In):
            return MoodyResult(True, n, K)
    return MoodyResult(False)


def strip_principal(I: Ideal) -> Ideal:
    """Divide the generators by their gcd; the blowup does not change."""
    if I.is_zero():
        return I
    g = reduce(poly_gcd, I.generators)
    if g.is_constant():
        return I
    return Ideal(I.ctx, [h.divexact(g) for h in I.generators])


def blowup_equivalent(A: BlowupVariety, B: BlowupVariety, nmax: int = 4, points=()) -> dict:
    if A.base != B.base:
        raise BlowupError("blowups over different bases")
    IA, IB = strip_principal(A.center), strip_principal(B.center)
    ab = moody_check(IA, IB, nmax)
    ba = moody_check(IB, IA, nmax)
    if ab.found and ba.found:
        verdict = "equivalent"
    elif ab.found:
        verdict = "map A->B only"
    elif ba.found:
        verdict = "map B->A only"
    else:
        verdict = "undetermined"
    out = {"verdict": verdict, "A_to_B": ab.to_json(), "B_to_A": ba.to_json()}
    if points:
        out["fiber_dimensions"] = [
            {
                "point": [str(Fraction(x)) for x in p],
                "A": fiber_over_point(A, p).projective_dimension,
                "B": fiber_over_point(B, p).projective_dimension,
            }
            for p in points
        ]
    return out


# ------------------------------------------------------------ presentation
def present_chart(ideal: Ideal, prefer: Sequence[str] = ()) -> Presentation:
    """Solve linear relations ``c*v + h`` (``c`` constant, ``h`` free of ``v``)."""
    ctx = ideal.ctx
    order = [n for n in ctx.names if n in set(prefer)] + [n for n in ctx.names if n not in set(prefer)]
    images: Dict[str, Polynomial] = {n: ctx.var(n) for n in ctx.names}
    gens = list(ideal.groebner_basis())
    eliminated: List[str] = []
    while True:
        found = None
        for name in order:
            if name in eliminated:
                continue
            i = ctx.index(name)
            for g in gens:
                lin = [(e, c) for e, c in g.terms.items() if e[i]]
                if len(lin) == 1 and sum(lin[0][0]) == 1:
                    found = (name, g, lin[0][1])
                    break
            if found:
                break
        if not found:
            break
        name, g, c = found
        h = g - ctx.var(name).scale(c)
        value = h.scale(-1 / c)
        sub = {name: value}
        images = {k: v.compose(sub, ctx) for k, v in images.items()}
        gens = [p.compose(sub, ctx) for p in gens if p is not g]
        gens = [p for p in gens if not p.is_zero()]
        eliminated.append(name)
        if gens:
            gens = list(Ideal(ctx, gens).groebner_basis())
    coords = tuple(n for n in ctx.names if n not in eliminated)
    cctx = VariableContext(coords)
    images = {k: v.restrict(cctx) for k, v in images.items()}
    residual = Ideal(cctx, [p.restrict(cctx) for p in gens])
    return Presentation(cctx, coords, images, residual)
