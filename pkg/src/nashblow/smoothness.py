"""Jacobian-criterion smoothness of blowup charts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .blowup import BlowupChart, BlowupVariety
from .groebner import Ideal
from .linalg import PolyMatrix, minors


@dataclass
class ChartAnalysis:
    chart: int
    name: str
    dimension: int
    ambient: int
    verdict: str
    witness: Optional[Ideal] = None

    @property
    def smooth(self) -> bool:
        return self.verdict == "smooth"

    def to_json(self):
        out = {
            "chart": self.chart,
            "name": self.name,
            "dimension": self.dimension,
            "ambient": self.ambient,
            "verdict": self.verdict,
        }
        if self.witness is not None:
            out["singular_ideal"] = list(self.witness.canonical())
        return out


def singular_ideal(J: Ideal) -> tuple[Ideal, int]:
    """Chart ideal plus the c×c Jacobian minors, with c the codimension."""
    ctx = J.ctx
    gens = list(J.groebner_basis())
    m = J.dimension()
    c = len(ctx) - m
    if c == 0 or not gens:
        return Ideal(ctx, [ctx.one()]) if m >= 0 else J, m
    jac = PolyMatrix(ctx, [[g.diff(v) for v in ctx.names] for g in gens])
    if c > min(jac.nrows, jac.ncols):
        return J, m
    ms = [v for _, _, v in minors(jac, c)]
    return Ideal(ctx, gens + ms), m


def analyze_chart(chart: BlowupChart) -> ChartAnalysis:
    pres = chart.presentation
    J = pres.residual
    if J.is_zero():
        return ChartAnalysis(chart.index + 1, chart.name, len(pres.ctx), len(pres.ctx), "smooth")
    S, m = singular_ideal(J)
    if S.is_unit():
        return ChartAnalysis(chart.index + 1, chart.name, m, len(pres.ctx), "smooth")
    return ChartAnalysis(chart.index + 1, chart.name, m, len(pres.ctx), "singular", Ideal(S.ctx, S.groebner_basis()))


def smooth_verdict(B: BlowupVariety):
    """Per-chart analyses and the global verdict (smooth iff every chart is)."""
    if B.trivial:
        n = len(B.base)
        return [ChartAnalysis(0, "base", n, n, "smooth")], True
    analyses: List[ChartAnalysis] = [analyze_chart(ch) for ch in B.charts]
    return analyses, all(a.smooth for a in analyses)
