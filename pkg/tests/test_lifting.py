import pytest
from hypothesis import given, strategies as st

from nashblow.blowup import blowup_space, monoidal_transformation
from nashblow.fields import VectorField
from nashblow.groebner import Ideal
from nashblow.lifting import (
    Bivector,
    LiftError,
    apply_linear_lift,
    compatibility_check,
    lift_bivector,
    lift_vector_field,
    lifted_bracket_matches,
    linear_lift,
)
from nashblow.poly import VariableContext
from nashblow.session import load_example

XY = VariableContext(["x", "y"])
x, y = XY.gens()
B0 = monoidal_transformation(Ideal(XY, [x, y]))


def vf(*comps):
    return VectorField(XY, [XY.parse(c) for c in comps])


def test_euler_lift_on_x_chart():
    L = lift_vector_field(vf("x", "y"), B0, "x")
    assert L.regular and L.tangent
    assert {k: str(v) for k, v in L.coordinates.items()} == {"x": "x", "xi2": "0"}


def test_translation_does_not_lift():
    L = lift_vector_field(vf("1", "0"), B0, "x")
    assert not L.regular
    assert str(L.offending["xi2"]) == "-xi2/x"


def test_rotation_lifts():
    L = lift_vector_field(vf("-y", "x"), B0, "x")
    assert L.regular
    assert str(L.coordinates["xi2"]) == "xi2^2 + 1"


fields_vanishing_at_origin = st.tuples(*[st.integers(-3, 3)] * 4).map(
    lambda c: vf(f"{c[0]}*x + {c[1]}*y", f"{c[2]}*x + {c[3]}*y")
)


@given(fields_vanishing_at_origin, fields_vanishing_at_origin)
def test_lift_is_a_bracket_morphism(X, Y):
    for chart in ("x", "y"):
        assert lifted_bracket_matches(X, Y, B0, chart)


def test_bivector_dx_dy():
    P = Bivector(XY, [["0", "1"], ["-1", "0"]])
    lifted = lift_bivector(P, B0, "x")
    assert not lifted.regular
    assert str(lifted.components[("x", "xi2")]) == "1/x"
    with pytest.raises(ValueError):
        Bivector(XY, [["0", "1"], ["1", "0"]])


def test_so3_lifts():
    s = load_example("so3")
    B = blowup_space(s.complex, 1, s.fiber_variables[1])
    for name in ("H1", "H2", "H3"):
        for chart in ("x", "y", "z"):
            L = lift_vector_field(s.vector_fields[name], B, chart)
            assert L.regular and L.tangent
    H1 = lift_vector_field(s.vector_fields["H1"], B, "x")
    assert {k: str(v) for k, v in H1.coordinates.items()} == {"x": "0", "u": "v", "v": "-u"}
    bv = lift_bivector(s.bivectors["P"], B, "x")
    vals = {k: str(v) for k, v in bv.components.items()}
    assert vals == {("x", "u"): "v", ("x", "v"): "-u", ("u", "v"): "(u^2 + v^2 + 1)/x"}
    assert bv.irregular == [("u", "v")]


@pytest.mark.parametrize("name", ["gl2", "vanishing2", "koszul", "so3", "euler2", "euler3"])
def test_compatibility_on_corpus(name):
    s = load_example(name)
    for sec in s.almost_lie.sections:
        X = s.vector_fields[sec]
        for level in range(1, s.complex.length + 1):
            assert compatibility_check(s.complex, s.almost_lie, X, s.almost_lie.sections[sec], level)["pass"]


def test_compatibility_detects_wrong_sign():
    s = load_example("gl2")
    C, L = s.complex, s.almost_lie
    X, sec = s.vector_fields["X12"], L.sections["X12"]
    D = C.dmap(1)
    A1 = linear_lift(C, L, X, sec, 1).map(lambda p: -p)
    A0 = linear_lift(C, L, X, sec, 0).map(lambda p: -p)
    lhs, a, b = D.map(X), D @ A1, A0 @ D
    assert any(lhs.rows[r][c] != a.rows[r][c] - b.rows[r][c] for r in range(4) for c in range(4))


def test_linear_lift_reproduces_bracket_on_frames():
    s = load_example("gl2")
    C, L = s.complex, s.almost_lie
    X, sec = s.vector_fields["X12"], L.sections["X12"]
    A = linear_lift(C, L, X, sec, 1)
    T = L.table(C, 1)
    for b in range(4):
        e = [C.ctx.one() if i == b else C.ctx.zero() for i in range(4)]
        assert apply_linear_lift(A, X, e) == T[1][b]


def test_section_mismatch_rejected():
    s = load_example("gl2")
    with pytest.raises(LiftError):
        linear_lift(s.complex, s.almost_lie, s.vector_fields["X11"], s.almost_lie.sections["X12"], 1)
