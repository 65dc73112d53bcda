from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import XY, polynomials
from nashblow.linalg import (
    PlueckerVector,
    PolyMatrix,
    StructureConstants,
    SubspaceBasis,
    admissible_columns,
    bracket_closed,
    det,
    generic_rank,
    gl_commutator_constants,
    kernel_basis,
    minors,
    minors_ideal,
    pluecker_to_subspace,
    pluecker_vector,
    qnullspace,
    qrank,
    subspace_limit,
    subspace_pluecker,
    subspace_relations,
)
from nashblow.poly import VariableContext
from nashblow.session import load_example

GL = VariableContext(["x1", "x2", "x3", "x4"])
D2 = PolyMatrix(GL, [["1", "x1"], ["0", "x2"], ["0", "x3"], ["1", "x4"]])
T = VariableContext(["t"])


def test_gl2_d2_rank_and_minors():
    assert generic_rank(D2) == 2
    assert minors_ideal(D2, 2).canonical() == ("x3", "x2", "x1 - x4")
    vals = [str(v) for _, _, v in minors(D2, 2)]
    assert vals == ["x2", "x3", "-x1 + x4", "0", "-x2", "-x3"]


def test_gl2_pluecker_has_one_zero():
    v = pluecker_vector(D2.columns(), GL)
    assert sum(1 for c in v.coords if c.is_zero()) == 1


def test_kernel_example():
    M = PolyMatrix(XY, [["x", "y"]])
    assert [[str(e) for e in c] for c in kernel_basis(M)] == [["-y", "x"]]


def test_admissible_columns_skip_dependent():
    M = PolyMatrix(XY, [["x", "2*x", "y"], ["y", "2*y", "1"]])
    assert admissible_columns(M) == (0, 2)


def test_det_against_sympy():
    M = [["x", "y", "1"], ["x^2", "0", "y"], ["1", "x*y", "2"]]
    ours = det([[XY.parse(s) for s in r] for r in M], XY)
    ref = sympy.Matrix([[sympy.sympify(s.replace("^", "**")) for s in r] for r in M]).det()
    assert sympy.expand(sympy.sympify(str(ours).replace("^", "**")) - ref) == 0


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_nullspace_is_kernel(rows):
    rows = [[F(v) for v in r] for r in rows]
    ns = qnullspace(rows, 4)
    assert len(ns) + qrank(rows) == 4
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=2, max_size=2))
def test_pluecker_roundtrip(vecs):
    if qrank(vecs) < 2:
        return
    S = SubspaceBasis(4, vecs)
    v = subspace_pluecker(S)
    assert pluecker_to_subspace(v) == S
    # incidence: the Pluecker relation for Gr(2,4)
    p = dict(v.items())
    assert p[(0, 1)] * p[(2, 3)] - p[(0, 2)] * p[(1, 3)] + p[(0, 3)] * p[(1, 2)] == 0


@given(polynomials(XY, 2, 3), polynomials(XY, 2, 3))
def test_kernel_basis_annihilates(a, b):
    M = PolyMatrix(XY, [[a, b, a * b]])
    for col in kernel_basis(M):
        assert (a * col[0] + b * col[1] + a * b * col[2]).is_zero()


def test_subspace_limit_simple():
    t = T.var("t")
    fam = pluecker_vector([[T.one(), T.zero(), t], [T.zero(), t, t]], T)
    lim = subspace_limit(fam)
    assert pluecker_to_subspace(lim) == SubspaceBasis(3, [[1, 0, 0], [0, 1, 1]])


def test_subspace_relations():
    A = SubspaceBasis(3, [[1, 0, 0], [0, 1, 0]])
    B = SubspaceBasis(3, [[0, 1, 0], [0, 0, 1]])
    assert subspace_relations(A, B, "intersection") == SubspaceBasis(3, [[0, 1, 0]])
    assert subspace_relations(A, B, "sum").dim == 3
    assert subspace_relations(A, SubspaceBasis(3, [[1, 1, 0]]), "contains")


def test_bracket_closed_gl2():
    C = gl_commutator_constants(2)
    assert bracket_closed(SubspaceBasis(4, [[1, 0, 0, 0], [0, 0, 0, 1]]), C)[0]
    ok, bad = bracket_closed(SubspaceBasis(4, [[0, 1, 0, 0], [0, 0, 1, 0]]), C)
    assert not ok and bad is not None


def test_structure_constants_shape_check():
    with pytest.raises(ValueError):
        StructureConstants({1: 2}, {(1, 1): [[[1], [0]], [[0], [0]]]})


def test_pluecker_dependent_frame_rejected():
    with pytest.raises(ValueError):
        pluecker_vector([[1, 2], [2, 4]])


def test_corpus_minors_ideal_contains_every_minor():
    for name in ("gl2", "so3", "vanishing2", "koszul"):
        C = load_example(name).complex
        for i in range(1, C.length + 1):
            M = C.dmap(i)
            k = generic_rank(M)
            I = minors_ideal(M, k)
            for rows in combinations(range(M.nrows), k):
                for cols in combinations(range(M.ncols), k):
                    m = det([[M.rows[r][c] for c in cols] for r in rows], C.ctx)
                    assert I.contains(m)
