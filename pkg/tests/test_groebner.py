from itertools import combinations

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import XY, XYZ, polynomials
from nashblow.groebner import (
    Ideal,
    MonomialOrder,
    Submodule,
    _to_vec,
    colon_ideal,
    dimension,
    elimination,
    ideal_combine,
    lift,
    monomial_dimension,
    normal_form_with_witness,
    radical_membership,
    s_polynomials_reduce_to_zero,
    saturation,
    syzygies,
)
from nashblow.poly import VariableContext

x, y = XY.gens()
X, Y, Z = XYZ.gens()


def to_sympy(p):
    return sympy.sympify(str(p).replace("^", "**"))


def sympy_gb(gens, ctx):
    syms = sympy.symbols(ctx.names)
    G = sympy.groebner([to_sympy(g) for g in gens], *syms, order="grevlex")
    return {sympy.expand(g / sympy.Poly(g, *syms).LC(order="grevlex")) for g in G.exprs}


def test_gb_example():
    I = Ideal(XY, [x**2, x * y])
    assert [str(g) for g in I.groebner_basis()] == ["x*y", "x^2"]


def test_normal_form_witness_lex():
    I = Ideal(XY, [x - y])
    rem, cof = normal_form_with_witness(x**2 + y**2, I, MonomialOrder.lex(XY))
    assert rem == 2 * y**2
    assert list(cof.values()) == [x + y]


def test_lift_reconstructs():
    gens = [x**2 - y, x * y - 1]
    p = (x + 3) * gens[0] - y**2 * gens[1]
    rem, coeffs = lift(p, gens)
    assert rem.is_zero()
    assert sum((c * g for c, g in zip(coeffs, gens)), XY.zero()) == p


def test_saturation_examples():
    assert saturation(Ideal(XY, [x**2 * y]), x).equals(Ideal(XY, [y]))
    m = Ideal(XY, [x, y])
    assert colon_ideal(m**3, Ideal(XY, [x**2, y**2])).equals(m)


def test_radical_membership():
    I = Ideal(XY, [x**2, y**3])
    assert radical_membership(x + y, I)
    assert not radical_membership(x + 1, I)
    assert not I.contains(x + y)


def test_elimination_example():
    c = VariableContext(["t", "x", "y", "xi1", "xi2"])
    t, a, b, u, v = c.gens()
    J = elimination(Ideal(c, [u - t * a, v - t * b]), ["t"])
    assert J.equals(Ideal(J.ctx, [J.ctx.parse("y*xi1 - x*xi2")]))


def test_dimension_examples():
    assert dimension(Ideal(XYZ, [X * Y, X * Z])) == 2
    assert dimension(Ideal(XYZ, [X, Y, Z])) == 0
    assert dimension(Ideal(XYZ, [XYZ.one()])) == -1
    assert dimension(Ideal(XYZ, [])) == 3


def test_ideal_combine():
    a, b = Ideal(XY, [x]), Ideal(XY, [y])
    assert ideal_combine(a, b, "sum").equals(Ideal(XY, [x, y]))
    assert ideal_combine(a, b, "product").equals(Ideal(XY, [x * y]))
    assert ideal_combine(a, b, "intersection").equals(Ideal(XY, [x * y]))
    assert ideal_combine(a + b, None, "power", 2).equals(Ideal(XY, [x**2, x * y, y**2]))


def test_syzygy_example():
    assert [[str(e) for e in c] for c in syzygies([[x, y]], XY)] == [["y", "-x"]]


gen_lists = st.lists(polynomials(XYZ, 2, 3), min_size=1, max_size=3)


@given(gen_lists)
def test_gb_matches_sympy(gens):
    if all(g.is_zero() for g in gens):
        return
    ours = {to_sympy(g) for g in Ideal(XYZ, gens).groebner_basis()}
    assert {sympy.expand(g) for g in ours} == sympy_gb([g for g in gens if not g.is_zero()], XYZ)


@given(gen_lists)
def test_buchberger_criterion(gens):
    I = Ideal(XYZ, gens)
    for order in (MonomialOrder.grevlex(XYZ), MonomialOrder.lex(XYZ)):
        gb = I.groebner_basis(order)
        assert s_polynomials_reduce_to_zero([_to_vec(g) for g in gb], order)
        for g in gens:
            assert I.reduce(g, order).is_zero()


@given(gen_lists, polynomials(XYZ, 1, 2))
def test_saturation_properties(gens, f):
    if f.is_zero():
        return
    I = Ideal(XYZ, gens)
    S = I.saturate(f)
    assert S.contains_ideal(I)
    assert S.saturate(f).equals(S)
    for g in S.groebner_basis():
        assert I.contains(f**4 * g) or I.radical_contains(f * g)


@given(st.lists(polynomials(XYZ, 2, 3), min_size=1, max_size=3))
def test_syzygies_annihilate_and_generate(row):
    if any(g.is_zero() for g in row):
        return
    S = syzygies([row], XYZ)
    for col in S:
        assert sum((a * b for a, b in zip(row, col)), XYZ.zero()).is_zero()
    mod = Submodule(XYZ, len(row), S) if S else None
    for i, j in combinations(range(len(row)), 2):
        k = [XYZ.zero()] * len(row)
        k[i], k[j] = row[j], -row[i]
        assert mod is not None and mod.contains(k)


def _brute_dim(monos, n):
    best = -1
    for r in range(n + 1):
        for S in combinations(range(n), r):
            pt = [1 if i in S else 0 for i in range(n)]
            if all(any(e[i] and not pt[i] for i in range(n)) for e in monos):
                best = max(best, r)
    return best


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(*[st.integers(0, 2)] * n), max_size=5))))
def test_dimension_against_brute_force(data):
    n, monos = data
    ctx = VariableContext([f"v{i}" for i in range(n)])
    I = Ideal(ctx, [ctx.monomial(e) for e in monos])
    assert I.dimension() == _brute_dim(monos, n)
    assert monomial_dimension(list(monos), n) == _brute_dim(monos, n)


def test_submodule_membership():
    M = Submodule(XY, 2, [[x, y], [y, XY.zero()]])
    assert M.contains([x * y + y, y**2])
    assert not M.contains([XY.one(), XY.zero()])


def test_context_mismatch_rejected():
    with pytest.raises(ValueError):
        Ideal(XY, [X])
