import json
import subprocess
import sys

import pytest

from nashblow.cli import main, render_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_json_report_shape(capsys):
    code, out, _ = run(capsys, "gl2", "codims", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"command", "engine", "session", "provenance", "orders", "result"}
    assert rep["result"] == {"r": 2, "codims": [2, 2, 2]}


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "gl2", "codims", "--format", "json", "--timing")
    assert "timing_seconds" in json.loads(out)


def test_text_format(capsys):
    code, out, _ = run(capsys, "so3", "lift-bivector", "--level", "1", "--chart", "x", "--bv", "P")
    assert code == 0
    assert '"(u^2 + v^2 + 1)/x"' in out and "regular: false" in out


def test_render_text_nesting():
    assert render_text({"a": [1, 2], "b": {"c": "d"}}) == 'a: [1, 2]\nb:\n  c: "d"'


@pytest.mark.parametrize(
    "argv",
    [
        ["gl2", "frobnicate"],
        ["gl2", "limit", "--level", "1"],
        ["gl2", "limit", "--level", "1", "--curve", "nope"],
        ["no_such_session", "codims"],
        ["gl2", "lift", "--level", "1", "--chart", "9", "--vf", "X11"],
        ["gl2", "lift", "--level", "1", "--chart", "1", "--vf", "missing"],
        ["gl2", "isotropy", "--point", "1,2"],
        ["gl2", "moody", "--ideal", "scalars"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_inconsistency_exits_3(tmp_path, capsys):
    from nashblow.catalog import gl2

    doc = gl2()
    a, b, coeffs = doc["almost_lie"]["brackets"]["1,1"][0]
    doc["almost_lie"]["brackets"]["1,1"][0] = [a, b, ["-" + c if c != "0" else c for c in coeffs]]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, str(p), "validate")
    assert code == 3 and "anchor identity" in err


def test_bad_session_json(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    code, _, err = run(capsys, str(p), "codims")
    assert code == 2 and "invalid JSON" in err


@pytest.mark.parametrize("value, code", [("2", 0), ("0", 2), ("many", 2)])
def test_thread_env(monkeypatch, capsys, value, code):
    monkeypatch.setenv("NASHBLOW_THREADS", value)
    assert run(capsys, "so3", "smooth", "--level", "1")[0] == code


def test_threads_do_not_change_output(monkeypatch, capsys):
    _, one, _ = run(capsys, "so3", "smooth", "--level", "1", "--format", "json")
    monkeypatch.setenv("NASHBLOW_THREADS", "3")
    _, three, _ = run(capsys, "so3", "smooth", "--level", "1", "--format", "json")
    assert one == three


def test_console_script_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "nashblow.cli", "euler2", "codims", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["result"]["r"] == 1


def test_run_config_validation():
    from nashblow.config import RunConfig

    assert RunConfig.threads_from_env({}) == 1
    assert RunConfig.threads_from_env({"NASHBLOW_THREADS": "8"}) == 8
    with pytest.raises(ValueError):
        RunConfig.threads_from_env({"NASHBLOW_THREADS": "-1"})
    with pytest.raises(ValueError):
        RunConfig(output_format="yaml")
