"""Session files: one JSON document describing a foliation and named objects."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .fields import VectorField
from .foliation import (
    AlmostLieData,
    AlmostLieError,
    AnchoredComplex,
    ComplexError,
    check_shapes,
    validate_complex,
)
from .groebner import Ideal
from .linalg import PolyMatrix
from .lifting import Bivector
from .parse import ParseError
from .poly import Polynomial, VariableContext

CURVE_CTX = VariableContext(["t"])


class SessionError(ValueError):
    """Malformed or inconsistent session input."""


@dataclass
class Session:
    name: str
    provenance: str
    ctx: VariableContext
    complex: AnchoredComplex
    almost_lie: Optional[AlmostLieData]
    vector_fields: Dict[str, VectorField] = field(default_factory=dict)
    bivectors: Dict[str, Bivector] = field(default_factory=dict)
    points: Dict[str, tuple] = field(default_factory=dict)
    curves: Dict[str, List[Polynomial]] = field(default_factory=dict)
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    matrices: Dict[str, PolyMatrix] = field(default_factory=dict)
    fiber_variables: Dict[int, List[str]] = field(default_factory=dict)
    report: dict = field(default_factory=dict)

    def lookup(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise SessionError(f"unknown {kind[:-1].replace('_', ' ')} {name!r} (known: {known})")
        return table[name]

    def point(self, spec: str) -> tuple:
        """A named point or a literal comma-separated tuple."""
        if spec in self.points:
            return self.points[spec]
        try:
            vals = tuple(Fraction(s.strip()) for s in spec.split(","))
        except (ValueError, ZeroDivisionError):
            raise SessionError(f"unknown point {spec!r}") from None
        if len(vals) != len(self.ctx):
            raise SessionError(f"point {spec!r} has {len(vals)} coordinates, expected {len(self.ctx)}")
        return vals

    def curve(self, spec: str) -> List[Polynomial]:
        """A named curve or a literal comma-separated list of polynomials in t."""
        if spec in self.curves:
            return self.curves[spec]
        comps = [s.strip() for s in spec.split(",")]
        if len(comps) != len(self.ctx):
            raise SessionError(f"unknown curve {spec!r}")
        try:
            return [CURVE_CTX.parse(c) for c in comps]
        except ParseError as e:
            raise SessionError(f"curve {spec!r}: {e}") from None


def _matrix(ctx, rows, what) -> PolyMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SessionError(f"{what} must be a non-empty list of rows")
    try:
        return PolyMatrix(ctx, rows)
    except ParseError as e:
        raise SessionError(f"{what}: {e}") from None
    except ValueError as e:
        raise SessionError(f"{what}: {e}") from None


def _poly(ctx, s, what) -> Polynomial:
    if not isinstance(s, str):
        raise SessionError(f"{what}: expected a string, got {s!r}")
    try:
        return ctx.parse(s)
    except ParseError as e:
        raise SessionError(f"{what}: {e}") from None


def _brackets(ctx, C: AnchoredComplex, raw: dict) -> Dict[int, list]:
    out = {}
    n1 = C.rank_E(1)
    for key, entries in raw.items():
        try:
            a_lvl, j = (int(s) for s in key.split(","))
        except ValueError:
            raise SessionError(f"bracket key {key!r} must look like '1,j'") from None
        if a_lvl != 1 or not 1 <= j <= C.length:
            raise SessionError(f"bracket key {key!r} is not supported by this complex")
        nj = C.rank_E(j)
        z = ctx.zero()
        table = [[[z] * nj for _ in range(nj)] for _ in range(n1)]
        for ent in entries:
            try:
                a, b, coeffs = ent
            except (TypeError, ValueError):
                raise SessionError(f"bracket entry {ent!r} must be [a, b, coefficients]") from None
            if not (1 <= a <= n1 and 1 <= b <= nj) or len(coeffs) != nj:
                raise SessionError(f"bracket entry {ent!r} has the wrong shape for ({key})")
            vec = [_poly(ctx, c, f"bracket ({key}) entry ({a},{b})") for c in coeffs]
            table[a - 1][b - 1] = vec
            if j == 1:
                table[b - 1][a - 1] = [-v for v in vec]
        out[j] = table
    return out


def session_from_dict(doc: dict) -> Session:
    if not isinstance(doc, dict):
        raise SessionError("session must be a JSON object")
    try:
        ctx = VariableContext(doc["variables"])
    except KeyError:
        raise SessionError("session is missing 'variables'") from None
    except (TypeError, ValueError) as e:
        raise SessionError(f"variables: {e}") from None
    if "t" in ctx:
        raise SessionError("'t' is reserved for curve parameters")
    res = doc.get("resolution")
    if not isinstance(res, dict) or "anchor" not in res:
        raise SessionError("session is missing 'resolution.anchor'")
    anchor = _matrix(ctx, res["anchor"], "anchor")
    diffs = [_matrix(ctx, m, f"d{i + 2}") for i, m in enumerate(res.get("differentials", []))]
    try:
        C = AnchoredComplex(ctx, anchor, diffs)
        report = validate_complex(C)
    except ComplexError as e:
        raise SessionError(str(e)) from None
    L = None
    if "almost_lie" in doc:
        al = doc["almost_lie"]
        brackets = _brackets(ctx, C, al.get("brackets", {}))
        sections = {
            name: [_poly(ctx, s, f"section {name}") for s in comps]
            for name, comps in al.get("sections", {}).items()
        }
        L = AlmostLieData(brackets, sections)
        try:
            check_shapes(C, L)
        except AlmostLieError as e:
            raise SessionError(str(e)) from None
    s = Session(doc.get("name", "session"), doc.get("provenance", ""), ctx, C, L, report=report)
    for name, comps in doc.get("vector_fields", {}).items():
        if len(comps) != len(ctx):
            raise SessionError(f"vector field {name} needs {len(ctx)} components")
        s.vector_fields[name] = VectorField(ctx, [_poly(ctx, c, f"vector field {name}") for c in comps])
    for name, m in doc.get("bivectors", {}).items():
        try:
            s.bivectors[name] = Bivector(ctx, [[_poly(ctx, x, f"bivector {name}") for x in r] for r in m])
        except ValueError as e:
            raise SessionError(f"bivector {name}: {e}") from None
    for name, p in doc.get("points", {}).items():
        if len(p) != len(ctx):
            raise SessionError(f"point {name} needs {len(ctx)} coordinates")
        try:
            s.points[name] = tuple(Fraction(x) for x in p)
        except (ValueError, ZeroDivisionError):
            raise SessionError(f"point {name} has a non-rational coordinate") from None
    for name, comps in doc.get("curves", {}).items():
        if len(comps) != len(ctx):
            raise SessionError(f"curve {name} needs {len(ctx)} components")
        s.curves[name] = [_poly(CURVE_CTX, c, f"curve {name}") for c in comps]
    for name, gens in doc.get("ideals", {}).items():
        s.ideals[name] = Ideal(ctx, [_poly(ctx, g, f"ideal {name}") for g in gens])
    for name, m in doc.get("matrices", {}).items():
        s.matrices[name] = _matrix(ctx, m, f"matrix {name}")
    for lvl, names in doc.get("fiber_variables", {}).items():
        s.fiber_variables[int(lvl)] = list(names)
    return s


def load_session(path) -> Session:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise SessionError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SessionError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from None
    return session_from_dict(doc)


DATA_DIR = Path(__file__).with_name("data")


def example_path(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


def load_example(name: str) -> Session:
    return load_session(example_path(name))
