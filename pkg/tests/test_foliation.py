import copy

import pytest

from nashblow.catalog import gl2
from nashblow.foliation import (
    AlmostLieData,
    AlmostLieError,
    AnchoredComplex,
    ComplexError,
    exactness_check,
    is_exact,
    isotropy_algebra,
    regular_codims,
    singular_locus,
    validate_almost_lie,
    validate_complex,
)
from nashblow.linalg import PolyMatrix
from nashblow.poly import VariableContext
from nashblow.session import SessionError, load_example, session_from_dict

XY = VariableContext(["x", "y"])
EXAMPLES = ["gl2", "euler2", "euler3", "vanishing2", "koszul", "so3", "along_phi2", "along_phi3"]


@pytest.mark.parametrize(
    "name, expected",
    [
        ("gl2", (2, [2, 2, 2])),
        ("euler2", (1, [1, 1])),
        ("euler3", (1, [2, 1])),
        ("vanishing2", (2, [0, 2, 2])),
        ("koszul", (2, [0, 2, 2])),
        ("so3", (2, [1, 2, 1])),
        ("along_phi2", (1, [1, 1])),
    ],
)
def test_regular_codims(name, expected):
    assert regular_codims(load_example(name).complex) == expected


@pytest.mark.parametrize("name", EXAMPLES)
def test_corpus_is_exact_and_almost_lie(name):
    s = load_example(name)
    assert is_exact(exactness_check(s.complex))
    if s.almost_lie is not None:
        assert validate_almost_lie(s.complex, s.almost_lie)["anchor_identity"]


def test_sign_perturbation_is_rejected():
    doc = copy.deepcopy(gl2())
    a, b, coeffs = doc["almost_lie"]["brackets"]["1,1"][0]
    doc["almost_lie"]["brackets"]["1,1"][0] = [a, b, [("-" + c) if c != "0" else c for c in coeffs]]
    s = session_from_dict(doc)
    with pytest.raises(AlmostLieError, match="anchor identity"):
        validate_almost_lie(s.complex, s.almost_lie)


def test_non_commuting_fields_with_zero_bracket():
    C = AnchoredComplex(XY, PolyMatrix(XY, [["x", "1"], ["0", "0"]]))
    with pytest.raises(AlmostLieError):
        validate_almost_lie(C, AlmostLieData({}))


def test_rank_failure_detected():
    X = VariableContext(["x"])
    C = AnchoredComplex(X, PolyMatrix(X, [["x^2"]]), [PolyMatrix(X, [["0"]])])
    rep = exactness_check(C)
    assert rep[-1]["verdict"] == "fails rank condition"
    assert not is_exact(rep)


def test_non_complex_rejected():
    X = VariableContext(["x"])
    C = AnchoredComplex(X, PolyMatrix(X, [["x"]]), [PolyMatrix(X, [["1"]])])
    with pytest.raises(ComplexError, match=r"\(1,1\)"):
        validate_complex(C)
    doc = gl2()
    doc["resolution"]["differentials"][0][0][0] = "2"
    with pytest.raises(SessionError):
        session_from_dict(doc)


def test_singular_locus_levels():
    C = load_example("gl2").complex
    assert singular_locus(C, 1).canonical() == ("x3", "x2", "x1 - x4")
    assert singular_locus(C, 2).is_unit()
    assert singular_locus(load_example("euler2").complex, 0).canonical() == ("x2", "x1")


@pytest.mark.parametrize("name", ["vanishing2", "koszul"])
def test_isotropy(name):
    s = load_example(name)
    iso = isotropy_algebra(s.complex, s.almost_lie, (0, 0))
    assert iso.dim == 4 and iso.jacobi_holds()
    assert isotropy_algebra(s.complex, s.almost_lie, (1, 2)).dim == 0


def test_gl2_isotropy_at_scalar_point():
    s = load_example("gl2")
    iso = isotropy_algebra(s.complex, s.almost_lie, s.points["scalar"])
    assert iso.dim == 3 and iso.jacobi_holds()
