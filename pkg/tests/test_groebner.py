import pytest
import sympy
from hypothesis import given, settings, strategies as st

from artinres import groebner as gb
from artinres.poly import Ring

R = Ring.make(["x", "y", "z"])
x, y, z = R.gens()


def sympy_gb(F):
    xs = sympy.symbols("x y z")
    G = sympy.groebner([sympy.sympify(str(f).replace("^", "**")) for f in F], *xs, order="grevlex")
    return sorted((R.parse(str(g).replace("**", "^")).monic() for g in G.exprs), key=str)


small_terms = st.lists(
    st.tuples(st.integers(-3, 3).filter(bool), st.tuples(*[st.integers(0, 2)] * 3)), min_size=1, max_size=3)
small_poly = small_terms.map(lambda ts: sum((R.monomial(m, c) for c, m in ts), R.zero())).filter(
    lambda p: not p.is_zero())


@settings(max_examples=30, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=3))
def test_matches_sympy(F):
    G = gb.buchberger_complete(F)
    assert sorted(G, key=str) == sympy_gb(F)
    assert gb.buchberger_check(G).is_groebner


def test_check_reports_witness():
    F = [x * y - z, y ** 2 - x]
    rep = gb.buchberger_check(F)
    assert not rep.is_groebner
    assert rep.witness is not None
    G = gb.buchberger_complete(F)
    assert gb.buchberger_check(G).is_groebner
    assert all(gb.ideal_contains(G, f) for f in F)


def test_pair_cap():
    with pytest.raises(gb.ResourceCapExceeded):
        gb.buchberger_complete([x * y - z, y ** 2 - x], max_pairs=0)
    with pytest.raises(gb.ResourceCapExceeded):
        gb.buchberger_check([x - y, y - z, z - x], max_pairs=1)


def test_identical_pair_gives_zero():
    f = x * y - z ** 2
    assert gb.s_polynomial(f, f).is_zero()


def test_normal_form_and_reduce_step():
    G = gb.buchberger_complete([x - y])
    assert gb.normal_form(x ** 2, G) == y ** 2
    f, lead = gb.reduce_step(x * z + y, x - y)
    assert lead and f == y * z + y


def test_eliminate_with_order_and_certificate():
    E = Ring.make(["t", "x", "y"], order="elim", block=1)
    t, a, b = E.gens()
    G = gb.buchberger_complete([a - t ** 2, b - t ** 3])
    elim = gb.eliminate(G, ["t"])
    assert len(elim) == 1 and elim[0].monic() == (a ** 3 - b ** 2).monic()
    # plain degrevlex with a non-eliminating leading term: refuse
    D = Ring.make(["x", "t"])
    xx, tt = D.gens()
    with pytest.raises(gb.EliminationOrderError):
        gb.eliminate([xx ** 2 - tt], ["t"])
    with pytest.raises(gb.EliminationOrderError):
        gb.eliminate([tt - xx], ["t"], certificate=False)


@pytest.mark.parametrize("strategy", ["adjoin", "sequential"])
def test_saturation(strategy):
    # (x^2 y, x y^2) : x^inf = (y)
    sat = gb.saturate_ideal([x ** 2 * y, x * y ** 2], x, strategy)
    assert gb.ideal_equal(sat, [y])
    sat = gb.saturate_ideal([x ** 2 * y, z ** 2], x, strategy)
    assert gb.ideal_equal(sat, [y, z ** 2])
    # twisted cubic from a non-saturated lattice basis
    S = Ring.make(["a", "b", "c", "d"])
    a, b, c, d = S.gens()
    IL = [a * c - b ** 2, b * d - c ** 2]
    sat = gb.saturate_ideal(IL, a * b * c * d, strategy)
    assert gb.ideal_equal(sat, IL + [a * d - b * c])


def test_saturation_inhomogeneous():
    sat = gb.saturate_ideal([x * (y - 1), x * z], x)
    assert gb.ideal_equal(sat, [y - 1, z])


def test_ideal_equal():
    assert gb.ideal_equal([x - y, y - z], [x - z, z - y])
    assert not gb.ideal_equal([x - y], [x - z])


@pytest.mark.parametrize("ideal,dim", [
    ([x], 2),
    ([x * y], 2),
    ([x, y], 1),
    ([x * y, x * z], 2),
    ([x - 1, y - 2, z], 0),
    ([x * y - z, y ** 2 - x], 1),
])
def test_krull_dimension(ideal, dim):
    assert gb.krull_dimension(ideal) == dim


def test_unit_ideal_raises():
    with pytest.raises(gb.EmptyVarietyError):
        gb.krull_dimension([x - 1, x])


@settings(max_examples=25, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=3), small_poly)
def test_normal_form_idempotent_and_gb_unique(F, f):
    G = gb.buchberger_complete(F)
    nf = gb.normal_form(f, G)
    assert gb.normal_form(nf, G) == nf
    assert gb.buchberger_complete(list(reversed(F))) == G
    assert gb.buchberger_complete(G) == G


@settings(max_examples=15, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=2), st.sampled_from([x, y, x * y]))
def test_saturation_contains_and_idempotent(F, m):
    sat = gb.saturate_ideal(F, m)
    assert all(gb.ideal_contains(sat, f) for f in F)
    assert gb.ideal_equal(gb.saturate_ideal(sat, m), sat)
