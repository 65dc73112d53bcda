"""Recompute the headline results for every bundled example and print a table.

    python3 scripts/reproduce_examples.py [--json]
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from nashblow.blowup import blowup_equivalent, blowup_space, monoidal_transformation
from nashblow.foliation import exactness_check, is_exact, regular_codims
from nashblow.groebner import Ideal
from nashblow.session import DATA_DIR, load_example
from nashblow.smoothness import smooth_verdict


@dataclass
class LevelSummary:
    level: int
    center: list
    trivial: bool
    smooth: bool
    vs_point_blowup: str


@dataclass
class ExampleSummary:
    name: str
    leaf_dimension: int
    codims: list
    exact: bool
    levels: list = field(default_factory=list)


def summarize(name: str) -> ExampleSummary:
    s = load_example(name)
    C = s.complex
    r, codims = regular_codims(C)
    out = ExampleSummary(name, r, codims, is_exact(exactness_check(C)))
    point = monoidal_transformation(Ideal(s.ctx, s.ctx.gens()))
    for lvl in range(C.length + 1):
        B = blowup_space(C, lvl, s.fiber_variables.get(lvl))
        out.levels.append(
            LevelSummary(
                lvl,
                list(B.center.canonical()),
                B.trivial,
                smooth_verdict(B)[1],
                blowup_equivalent(B, point)["verdict"],
            )
        )
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = [summarize(p.stem) for p in sorted(DATA_DIR.glob("*.json"))]
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    for r in rows:
        print(f"{r.name}: leaf dim {r.leaf_dimension}, codims {r.codims}, exact {r.exact}")
        for lv in r.levels:
            kind = "trivial" if lv.trivial else ("smooth" if lv.smooth else "singular")
            print(f"  level {lv.level}: center {lv.center} {kind}; vs point blowup: {lv.vs_point_blowup}")


if __name__ == "__main__":
    main()
