"""Polynomial vector fields on affine space."""

from __future__ import annotations

from typing import List, Sequence

from .poly import Polynomial, VariableContext


class VectorField:
    """Vector field ``sum_k coeffs[k] * d/d(names[k])`` over a context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: VariableContext, coeffs: Sequence):
        if len(coeffs) != len(ctx):
            raise ValueError(f"vector field needs {len(ctx)} components, got {len(coeffs)}")
        self.ctx = ctx
        self.coeffs = tuple(ctx.parse(c) if isinstance(c, str) else c for c in coeffs)

    def __call__(self, f: Polynomial) -> Polynomial:
        out = self.ctx.zero()
        for name, c in zip(self.ctx.names, self.coeffs):
            if not c.is_zero():
                out = out + c * f.diff(name)
        return out

    def bracket(self, other: "VectorField") -> "VectorField":
        return VectorField(self.ctx, [self(b) - other(a) for a, b in zip(self.coeffs, other.coeffs)])

    def __add__(self, other):
        return VectorField(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, f: Polynomial) -> "VectorField":
        return VectorField(self.ctx, [f * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"VectorField({self.to_strings()})"
