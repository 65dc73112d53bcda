"""Command-line interface: ``nashblow SESSION COMMAND [options]``.

``SESSION`` is a path to a session JSON file or the name of a bundled example
(``gl2``, ``euler2``, ``so3``, ...).  Reports are JSON documents with sorted
keys; ``--format text`` prints the same content as indented lines.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .config import RunConfig
from .blowup import (
    BlowupError,
    ContainmentError,
    blowup_space,
    containment_check,
    fiber_along_curve,
    fiber_over_point,
    moody_check,
    pluecker_subspace,
)
from .foliation import (
    AlmostLieError,
    exactness_check,
    isotropy_algebra,
    regular_codims,
    singular_locus,
    validate_almost_lie,
)
from .groebner import syzygies
from .lifting import LiftError, compatibility_check, lift_bivector, lift_vector_field, linear_lift
from .parse import ParseError
from .session import Session, SessionError, example_path, load_session
from .smoothness import analyze_chart

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3
BASE_ORDERS = ["grevlex"]
ELIM_ORDERS = ["grevlex", "block(t;grevlex)"]


class InputError(Exception):
    pass


def _resolve_session(spec: str) -> Session:
    p = Path(spec)
    if not p.exists() and example_path(spec).exists():
        p = example_path(spec)
    return load_session(p)


def _fiber_names(s: Session, level: int):
    return s.fiber_variables.get(level)


def _blowup(s: Session, level: int):
    return blowup_space(s.complex, level, _fiber_names(s, level))


# ------------------------------------------------------------------ commands
def cmd_validate(s: Session, a):
    out = dict(s.report)
    if s.almost_lie is not None:
        out["almost_lie"] = validate_almost_lie(s.complex, s.almost_lie)
    out["exactness"] = exactness_check(s.complex)
    return out, ELIM_ORDERS


def cmd_codims(s: Session, a):
    r, codims = regular_codims(s.complex)
    return {"r": r, "codims": codims}, BASE_ORDERS


def cmd_singular_locus(s: Session, a):
    I = singular_locus(s.complex, a.level)
    return {
        "level": a.level,
        "generators": [str(g) for g in I.generators],
        "basis": list(I.canonical()),
        "dimension": I.dimension(),
    }, BASE_ORDERS


def cmd_blowup(s: Session, a):
    B = _blowup(s, a.level)
    out = B.to_json()
    if a.chart is not None:
        out["charts"] = [B.chart(a.chart).to_json()]
    out["level"] = a.level
    return out, ELIM_ORDERS


def cmd_smooth(s: Session, a):
    B = _blowup(s, a.level)
    if B.trivial:
        return {"level": a.level, "trivial": True, "charts": [], "smooth": True}, ELIM_ORDERS
    with ThreadPoolExecutor(max_workers=a.threads) as pool:
        analyses = list(pool.map(analyze_chart, B.charts))
    return {
        "level": a.level,
        "trivial": False,
        "center": [str(g) for g in B.generators],
        "charts": [x.to_json() for x in analyses],
        "smooth": all(x.smooth for x in analyses),
    }, ELIM_ORDERS


def cmd_fiber(s: Session, a):
    B = _blowup(s, a.level)
    pt = s.point(a.point)
    out = fiber_over_point(B, pt).to_json()
    out.update({"level": a.level, "point": [str(x) for x in pt], "trivial": B.trivial})
    return out, ELIM_ORDERS


def cmd_limit(s: Session, a):
    curve = s.curve(a.curve)
    v = fiber_along_curve(s.complex, a.level, curve)
    return {
        "level": a.level,
        "curve": [str(c) for c in curve],
        "pluecker": v.to_json(),
        "subspace": pluecker_subspace(v).to_json(),
    }, BASE_ORDERS


def cmd_containment(s: Session, a):
    curve = s.curve(a.curve)
    v = fiber_along_curve(s.complex, a.level, curve)
    V = pluecker_subspace(v)
    x0 = [c.evaluate([0]) for c in curve]
    out = containment_check(s.complex, a.level, V, x0)
    out["subspace"] = V.to_json()
    out["curve"] = [str(c) for c in curve]
    return out, BASE_ORDERS


def cmd_moody(s: Session, a):
    if len(a.ideal) != 2:
        raise InputError("moody needs exactly two --ideal arguments")
    I, J = (s.lookup("ideals", n) for n in a.ideal)
    res = moody_check(I, J, a.nmax)
    out = res.to_json()
    out.update({"I": a.ideal[0], "J": a.ideal[1], "nmax": a.nmax})
    return out, ELIM_ORDERS


def cmd_lift(s: Session, a):
    X = s.lookup("vector_fields", a.vf)
    B = _blowup(s, a.level)
    out = lift_vector_field(X, B, a.chart).to_json()
    out.update({"vf": a.vf, "level": a.level})
    return out, ELIM_ORDERS


def cmd_lift_bivector(s: Session, a):
    P = s.lookup("bivectors", a.bv)
    B = _blowup(s, a.level)
    out = lift_bivector(P, B, a.chart).to_json()
    out.update({"bv": a.bv, "level": a.level})
    return out, ELIM_ORDERS


def _section(s: Session, a):
    if s.almost_lie is None:
        raise InputError("session has no almost_lie block")
    name = a.section
    if name not in s.almost_lie.sections:
        raise InputError(f"unknown section {name!r}")
    return s.lookup("vector_fields", a.vf), s.almost_lie.sections[name]


def cmd_linear_lift(s: Session, a):
    X, sec = _section(s, a)
    A = linear_lift(s.complex, s.almost_lie, X, sec, a.level)
    return {"vf": a.vf, "section": a.section, "level": a.level, "matrix": A.to_strings(), "base": X.to_strings()}, BASE_ORDERS


def cmd_compat(s: Session, a):
    X, sec = _section(s, a)
    out = compatibility_check(s.complex, s.almost_lie, X, sec, a.level)
    out.update({"vf": a.vf, "section": a.section})
    return out, BASE_ORDERS


def cmd_syzygy(s: Session, a):
    M = s.lookup("matrices", a.matrix)
    S = syzygies([list(r) for r in M.rows], s.ctx)
    return {"matrix": a.matrix, "columns": [[str(x) for x in c] for c in S]}, ["grevlex (position over term)"]


def cmd_isotropy(s: Session, a):
    if s.almost_lie is None:
        raise InputError("session has no almost_lie block")
    return isotropy_algebra(s.complex, s.almost_lie, s.point(a.point)).to_json(), BASE_ORDERS


COMMANDS = {
    "validate": cmd_validate,
    "codims": cmd_codims,
    "singular-locus": cmd_singular_locus,
    "blowup": cmd_blowup,
    "smooth": cmd_smooth,
    "fiber": cmd_fiber,
    "limit": cmd_limit,
    "containment": cmd_containment,
    "moody": cmd_moody,
    "lift": cmd_lift,
    "lift-bivector": cmd_lift_bivector,
    "linear-lift": cmd_linear_lift,
    "compat": cmd_compat,
    "syzygy": cmd_syzygy,
    "isotropy": cmd_isotropy,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    p = argparse.ArgumentParser(prog="nashblow", description="Nash blowups of polynomial singular foliations")
    p.add_argument("--version", action="version", version=f"nashblow {__version__}")
    p.add_argument("session", help="session JSON file or bundled example name")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, *opts):
        sp = sub.add_parser(name, parents=[common])
        for o in opts:
            o(sp)
        return sp

    level = lambda sp: sp.add_argument("--level", type=int, required=True)  # noqa: E731
    chart = lambda sp: sp.add_argument("--chart", required=True)  # noqa: E731
    add("validate")
    add("codims")
    add("singular-locus", level)
    add("blowup", level, lambda sp: sp.add_argument("--chart"))
    add("smooth", level)
    add("fiber", level, lambda sp: sp.add_argument("--point", required=True))
    add("limit", level, lambda sp: sp.add_argument("--curve", required=True))
    add("containment", level, lambda sp: sp.add_argument("--curve", required=True))
    add(
        "moody",
        lambda sp: sp.add_argument("--ideal", action="append", required=True),
        lambda sp: sp.add_argument("--nmax", type=int, default=4),
    )
    add("lift", level, chart, lambda sp: sp.add_argument("--vf", required=True))
    add("lift-bivector", level, chart, lambda sp: sp.add_argument("--bv", required=True))
    for name in ("linear-lift", "compat"):
        add(name, level, lambda sp: sp.add_argument("--vf", required=True), lambda sp: sp.add_argument("--section", required=True))
    add("syzygy", lambda sp: sp.add_argument("--matrix", required=True))
    add("isotropy", lambda sp: sp.add_argument("--point", required=True))
    return p


def render_text(obj, indent=0) -> str:
    """Indented rendering of a report; scalars and flat lists stay on one line."""
    pad = "  " * indent
    if isinstance(obj, dict):
        items = sorted(obj.items())
    elif isinstance(obj, list):
        items = [("-", v) for v in obj]
    else:
        return f"{pad}{json.dumps(obj)}"
    lines = []
    for k, v in items:
        label = k if k == "-" else f"{k}:"
        nested = isinstance(v, dict) and v or isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v)
        if nested:
            lines.append(f"{pad}{label}")
            lines.append(render_text(v, indent + 1))
        else:
            lines.append(f"{pad}{label} {json.dumps(v)}")
    return "\n".join(lines)


def execute(session: Session, argv_command: list, args) -> dict:
    result, orders = COMMANDS[args.command](session, args)
    return {
        "command": argv_command,
        "engine": f"nashblow {__version__}",
        "session": session.name,
        "provenance": session.provenance,
        "orders": orders,
        "result": result,
    }


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    try:
        try:
            cfg = RunConfig.from_args(args)
        except ValueError as e:
            raise InputError(str(e)) from None
        args.threads = cfg.threads
        session = _resolve_session(args.session)
        report = execute(session, [args.command] + argv[argv.index(args.command) + 1 :], args)
    except (InputError, SessionError, ParseError, BlowupError, LiftError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        print(f"nashblow: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (ContainmentError, AlmostLieError) as e:
        print(f"nashblow: inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as e:
        print(f"nashblow: inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if cfg.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    if cfg.output_format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
