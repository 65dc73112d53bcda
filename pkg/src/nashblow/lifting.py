"""Lifts of vector fields and bivectors to blowup charts; linear lifts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .blowup import BlowupChart, BlowupVariety, BlowupError
from .fields import VectorField
from .foliation import AlmostLieData, AnchoredComplex, anchor_field
from .groebner import Ideal, lift
from .linalg import PolyMatrix
from .poly import Polynomial, RationalFunction, VariableContext


class LiftError(ValueError):
    pass


@dataclass
class ChartVectorField:
    chart: BlowupChart
    regular: bool
    ambient: Dict[str, Polynomial] = field(default_factory=dict)
    coordinates: Dict[str, Polynomial] = field(default_factory=dict)
    tangent: Optional[bool] = None
    offending: Optional[Dict[str, RationalFunction]] = None

    def apply(self, g: Polynomial) -> Polynomial:
        out = g.ctx.zero()
        for name, c in self.ambient.items():
            out = out + c * g.diff(name)
        return out

    def to_json(self):
        out = {"chart": self.chart.index + 1, "chart_name": self.chart.name, "regular": self.regular}
        if self.regular:
            out["components"] = {k: str(v) for k, v in self.ambient.items()}
            out["coordinates"] = {k: str(v) for k, v in self.coordinates.items()}
            out["tangent"] = self.tangent
        else:
            out["offending"] = {k: str(v) for k, v in self.offending.items()}
        return out


def lift_vector_field(X: VectorField, B: BlowupVariety, chart) -> ChartVectorField:
    """Lift on chart ``j``: ``X[xi_i] = (X[f_i] - xi_i X[f_j]) / f_j``."""
    if B.trivial:
        raise BlowupError("the trivial blowup is the base; no lift needed")
    ch = B.chart(chart) if not isinstance(chart, BlowupChart) else chart
    if X.ctx != B.base:
        raise LiftError("vector field is not over the blowup base")
    cctx = ch.ctx
    J = ch.ideal
    fj = ch.generator.embed(cctx)
    Xf = {i: X(B.generators[i]).embed(cctx) for i in range(len(B.generators))}
    ambient = {n: c.embed(cctx) for n, c in zip(X.ctx.names, X.coeffs)}
    offending = {}
    for i, name in enumerate(B.fiber_names):
        if i == ch.index:
            continue
        N = Xf[i] - cctx.var(name) * Xf[ch.index]
        rem, coeffs = lift(N, [fj] + list(J.groebner_basis()))
        if not rem.is_zero():
            offending[name] = ch.presentation.pull_rational(RationalFunction(N, fj))
            continue
        ambient[name] = J.reduce(coeffs[0])
    if offending:
        return ChartVectorField(ch, False, offending=offending)
    out = ChartVectorField(ch, True, ambient=ambient)
    out.tangent = all(J.contains(out.apply(g)) for g in J.generators)
    pres = ch.presentation
    out.coordinates = {
        c: pres.residual.reduce(pres.pull(ambient[c])) for c in pres.coords
    }
    return out


def lifted_bracket_matches(X: VectorField, Y: VectorField, B: BlowupVariety, chart) -> bool:
    """Commutator of lifts equals the lift of the commutator modulo the chart ideal."""
    lx, ly = lift_vector_field(X, B, chart), lift_vector_field(Y, B, chart)
    lxy = lift_vector_field(X.bracket(Y), B, chart)
    if not (lx.regular and ly.regular and lxy.regular):
        raise LiftError("bracket comparison needs regular lifts")
    J = lx.chart.ideal
    for name in lx.chart.ctx.names:
        v = lx.chart.ctx.var(name)
        lhs = lx.apply(ly.apply(v)) - ly.apply(lx.apply(v))
        if not J.contains(lhs - lxy.ambient[name]):
            return False
    return True


# ----------------------------------------------------------------- bivectors
class Bivector:
    """Antisymmetric matrix of polynomials, ``P = sum_{k<l} P[k][l] d_k ∧ d_l``."""

    def __init__(self, ctx: VariableContext, matrix: Sequence[Sequence]):
        m = [[ctx.parse(x) if isinstance(x, str) else x for x in row] for row in matrix]
        n = len(ctx)
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError(f"bivector must be {n}x{n}")
        for k in range(n):
            for l in range(n):
                if m[k][l] != -m[l][k]:
                    raise ValueError(f"bivector is not antisymmetric at ({k + 1},{l + 1})")
        self.ctx = ctx
        self.matrix = m


@dataclass
class ChartBivector:
    chart: BlowupChart
    coords: tuple
    components: Dict[tuple, RationalFunction]
    regular: bool
    irregular: List[tuple]

    def to_json(self):
        return {
            "chart": self.chart.index + 1,
            "chart_name": self.chart.name,
            "coordinates": list(self.coords),
            "regular": self.regular,
            "components": [
                {"pair": list(k), "value": str(v), "regular": k not in self.irregular}
                for k, v in sorted(self.components.items(), key=lambda kv: (self.coords.index(kv[0][0]), self.coords.index(kv[0][1])))
            ],
        }


def _reduce_component(f: RationalFunction, residual: Ideal):
    """``(value, regular)`` with the value simplified modulo the residual ideal."""
    ctx = residual.ctx
    num = residual.reduce(f.num)
    den = f.den
    if num.is_zero():
        return RationalFunction(ctx.zero()), True
    if den.is_constant():
        return RationalFunction(num, den), True
    if (residual + Ideal(ctx, [den])).is_unit():
        return RationalFunction(num, den), True
    rem, coeffs = lift(num, [den] + list(residual.groebner_basis()))
    if rem.is_zero():
        return RationalFunction(residual.reduce(coeffs[0])), True
    return RationalFunction(num, den), False


def lift_bivector(P: Bivector, B: BlowupVariety, chart) -> ChartBivector:
    """Push ``P`` forward to the chart coordinates and test regularity."""
    if B.trivial:
        raise BlowupError("the trivial blowup is the base; no lift needed")
    ch = B.chart(chart) if not isinstance(chart, BlowupChart) else chart
    pres = ch.presentation
    base = B.base
    # each chart coordinate as a rational function on the base
    coord_fns = {}
    for c in pres.coords:
        if c in base:
            coord_fns[c] = RationalFunction(base.var(c), reduced=True)
        else:
            coord_fns[c] = ch.ratios[c]
    grads = {c: [coord_fns[c].diff(n) for n in base.names] for c in pres.coords}
    n = len(base)
    comps = {}
    irregular = []
    for a_i, a in enumerate(pres.coords):
        for b in pres.coords[a_i + 1 :]:
            acc = RationalFunction(base.zero(), reduced=True)
            for k in range(n):
                if grads[a][k].is_zero():
                    continue
                for l in range(n):
                    p = P.matrix[k][l]
                    if p.is_zero() or grads[b][l].is_zero():
                        continue
                    acc = acc + grads[a][k] * grads[b][l] * RationalFunction(p, reduced=True)
            pulled = _pull_base(acc, ch)
            val, ok = _reduce_component(pulled, pres.residual)
            comps[(a, b)] = val
            if not ok:
                irregular.append((a, b))
    return ChartBivector(ch, pres.coords, comps, not irregular, irregular)


def _pull_base(f: RationalFunction, ch: BlowupChart) -> RationalFunction:
    pres = ch.presentation
    images = {n: pres.images[n] for n in ch.base_ctx.names}
    return RationalFunction(f.num.compose(images, pres.ctx), f.den.compose(images, pres.ctx))


# -------------------------------------------------------------- linear lifts
def check_section(C: AnchoredComplex, X: VectorField, section: Sequence[Polynomial]):
    if anchor_field(C, section) != X:
        raise LiftError("the section does not map to the vector field under the anchor")


def linear_lift(C: AnchoredComplex, L: AlmostLieData, X: VectorField, section: Sequence[Polynomial], level: int) -> PolyMatrix:
    """Matrix of ``l2(section, ·)`` on the frame of ``E_{-level}``.

    At level 0 it is the matrix of ``Y -> [X, Y] - X[Y]``.
    """
    check_section(C, X, section)
    ctx = C.ctx
    if level == 0:
        return PolyMatrix(ctx, [[-X.coeffs[c].diff(b) for b in ctx.names] for c in range(C.d)])
    if not 1 <= level <= C.length:
        raise LiftError(f"level {level} out of range 0..{C.length}")
    n = C.rank_E(level)
    T = L.table(C, level)
    rows = [[ctx.zero() for _ in range(n)] for _ in range(n)]
    for b in range(n):
        for c in range(n):
            acc = ctx.zero()
            for a, u in enumerate(section):
                if not u.is_zero() and not T[a][b][c].is_zero():
                    acc = acc + u * T[a][b][c]
            rows[c][b] = acc
    if level == 1:
        fields = [VectorField(ctx, C.anchor.column(b)) for b in range(n)]
        for b in range(n):
            for c in range(n):
                rows[c][b] = rows[c][b] - fields[b](section[c])
    return PolyMatrix(ctx, rows)


def apply_linear_lift(A: PolyMatrix, X: VectorField, y: Sequence[Polynomial]) -> List[Polynomial]:
    """``l2(section, y) = X[y] + A y`` for a section ``y`` in frame coordinates."""
    return [X(y[c]) + sum((A.rows[c][b] * y[b] for b in range(len(y))), X.ctx.zero()) for c in range(len(y))]


def compatibility_check(C: AnchoredComplex, L: AlmostLieData, X: VectorField, section, level: int) -> dict:
    """Check ``X[D] = D A_level - A_(level-1) D`` for ``D = d^(level)``."""
    if not 1 <= level <= C.length:
        raise LiftError(f"level {level} out of range 1..{C.length}")
    D = C.dmap(level)
    A_hi = linear_lift(C, L, X, section, level)
    A_lo = linear_lift(C, L, X, section, level - 1)
    lhs = D.map(X)
    rhs_a = D @ A_hi
    rhs_b = A_lo @ D
    for r in range(D.nrows):
        for c in range(D.ncols):
            diff = lhs.rows[r][c] - (rhs_a.rows[r][c] - rhs_b.rows[r][c])
            if not diff.is_zero():
                return {"level": level, "pass": False, "entry": [r + 1, c + 1], "defect": str(diff)}
    return {"level": level, "pass": True}
