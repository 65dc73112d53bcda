import pytest

from nashblow.blowup import blowup_space, monoidal_transformation
from nashblow.groebner import Ideal
from nashblow.poly import VariableContext
from nashblow.session import load_example
from nashblow.smoothness import analyze_chart, singular_ideal, smooth_verdict

XYZ = VariableContext(["x", "y", "z"])


def test_singular_ideal_of_cone():
    x, y, z = XYZ.gens()
    S, dim = singular_ideal(Ideal(XYZ, [x**2 + y**2 - z**2]))
    assert dim == 2
    assert S.equals(Ideal(XYZ, [x, y, z]))


def test_singular_ideal_of_smooth_surface():
    x, y, z = XYZ.gens()
    S, _ = singular_ideal(Ideal(XYZ, [z - x**2 - y**3]))
    assert S.is_unit()


@pytest.mark.parametrize(
    "name, level, smooth",
    [("gl2", 1, True), ("euler2", 0, True), ("so3", 1, True), ("along_phi2", 0, True), ("along_phi3", 0, False)],
)
def test_corpus_smoothness(name, level, smooth):
    s = load_example(name)
    analyses, verdict = smooth_verdict(blowup_space(s.complex, level))
    assert verdict is smooth
    if not smooth:
        assert any(a.witness is not None for a in analyses)


def test_blowup_of_cusp_ideal_is_singular():
    XY = VariableContext(["x", "y"])
    x, y = XY.gens()
    B = monoidal_transformation(Ideal(XY, [x**2, y**3]))
    _, ok = smooth_verdict(B)
    assert not ok


def test_blowup_of_point_is_smooth():
    XY = VariableContext(["x", "y"])
    B = monoidal_transformation(Ideal(XY, XY.gens()))
    assert all(analyze_chart(c).smooth for c in B.charts)


def test_trivial_is_smooth():
    s = load_example("euler2")
    analyses, ok = smooth_verdict(blowup_space(s.complex, 1))
    assert ok and analyses[0].name == "base"
