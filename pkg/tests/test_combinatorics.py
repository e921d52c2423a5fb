from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from artinres.combinatorics import (
    GroupParams, InvalidGroupError, Quiver, build_quiver, check_duality, embedding_dimension, hj_dual,
    hj_expand, ij_series,
)


def coprime_pair(max_r=50):
    return st.integers(2, max_r).flatmap(
        lambda r: st.sampled_from([a for a in range(1, r) if gcd(r, a) == 1]).map(lambda a: (r, a)))


@pytest.mark.parametrize("r,a,alpha", [
    (7, 3, (3, 2, 2)),
    (165, 104, (2, 3, 2, 4, 3, 2, 2)),
    (7, 2, (4, 2)),
    (3, 1, (3,)),
    (2, 1, (2,)),
])
def test_hj_known(r, a, alpha):
    assert hj_expand(r, a).coeffs == alpha


def test_hj_dual_known():
    assert hj_dual(GroupParams(7, 3)).coeffs == (2, 4)
    assert hj_dual(GroupParams(165, 104)).coeffs == (3, 4, 2, 3, 4)
    assert hj_dual(GroupParams(7, 2)).coeffs == (2, 2, 3)


@pytest.mark.parametrize("r,a", [(4, 2), (3, 3), (3, 0), (1, 0), (6, 9)])
def test_invalid_groups(r, a):
    with pytest.raises(InvalidGroupError):
        GroupParams(r, a)


@given(coprime_pair())
def test_hj_round_trip(ra):
    r, a = ra
    h = hj_expand(r, a)
    assert all(c >= 2 for c in h.coeffs)
    assert h.evaluate() == (r, a)
    # direct check of the continued fraction value
    x = Fraction(h.coeffs[-1])
    for c in reversed(h.coeffs[:-1]):
        x = c - 1 / x
    assert x == Fraction(r, a)


@given(coprime_pair())
def test_duality_holds(ra):
    q = build_quiver(GroupParams(*ra))
    assert check_duality(q)


@given(coprime_pair())
def test_ij_series_endpoints(ra):
    g = GroupParams(*ra)
    s = ij_series(g)
    assert (s.i[0], s.j[0]) == (g.r, 0)
    assert (s.i[-1], s.j[-1]) == (0, g.r)
    # each pair gives an invariant monomial x^i y^j of 1/r(1,a)
    assert all((i + g.a * j) % g.r == 0 for i, j in zip(s.i, s.j))
    assert embedding_dimension(g) == len(hj_dual(g).coeffs) + 2


@given(coprime_pair(30))
def test_quiver_shape(ra):
    g = GroupParams(*ra)
    q = build_quiver(g)
    extras = sum(c - 2 for c in q.alpha)
    if g.a == 1:
        assert len(q.arrows) == 2 + 2 + (g.r - 2)
    else:
        assert len(q.arrows) == 2 * (q.n + 1) + extras
        assert q.tails[0] == 1 and q.tails[-1] == q.n
    assert Quiver.from_dict(q.to_dict()) == q


def test_quiver_7_3_paths():
    q = build_quiver(GroupParams(7, 3))
    assert q.path_C(1) == ["c0_3", "c3_2", "c2_1"]
    assert q.path_A(2) == ["a0_1", "a1_2"]
    assert q.extra(1) == "k1"
    assert q.arrow("k1").tail == 1 and q.arrow("k1").head == 0


@given(coprime_pair())
def test_double_dual_and_arrow_count(ra):
    r, a = ra
    g = GroupParams(r, a)
    assert hj_dual(GroupParams(r, r - a)).coeffs == hj_expand(r, a).coeffs
    q = build_quiver(g)
    assert len(q.arrows) == 2 * (q.n + 1) + sum(c - 2 for c in q.alpha)
    beta = hj_dual(g).coeffs
    if a > 1:
        l = q.tails
        assert all(beta[t - 1] == l[t] - l[t - 1] + 2 for t in range(1, len(l)))
