import contextlib
import io
from pathlib import Path

import pytest

from golden_cases import CASES, argv
from nashblow.cli import main

GOLDEN = Path(__file__).with_name("golden")


def render(name):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert main(argv(name)) == 0
    return buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_report_matches_golden(name):
    assert render(name) == (GOLDEN / f"{name}.json").read_text()
