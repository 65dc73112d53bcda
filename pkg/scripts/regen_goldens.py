"""Rewrite tests/golden/*.json from the current CLI output.

Run after an intentional change in report content, then review the diff.
"""

import contextlib
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from golden_cases import CASES, argv  # noqa: E402
from nashblow.cli import main  # noqa: E402


def render(name: str) -> str:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv(name))
    if code != 0:
        raise SystemExit(f"{name}: exit code {code}")
    return buf.getvalue()


if __name__ == "__main__":
    out = ROOT / "tests" / "golden"
    out.mkdir(exist_ok=True)
    for name in CASES:
        (out / f"{name}.json").write_text(render(name))
        print(f"wrote {name}.json")
