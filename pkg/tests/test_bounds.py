from fractions import Fraction
from math import comb, isqrt, log, sqrt

import pytest
from hypothesis import given, strategies as st

from widthkit.bounds import (
    QuadraticSurd, RealBound, Undecided, bound_genus, bound_krr, bound_minor, bound_nabla1,
    bound_planar, bound_topminor, clique_bound_minor, clique_bound_topminor,
    clique_total_topminor, compare, fueredi_sudakov, gurski_wanke_check, holds, ktt_threshold,
    pow2_r_log_r, krr_hyperedge_bound, tau_sufficient, wood_clique_bound,
)
from widthkit.errors import ClassViolation, InvalidArgument
from widthkit.graph import complete_graph, path_graph, star_graph
from mpmath import iv


def test_planar_values():
    assert bound_planar(1) == 71
    assert bound_planar(2) == 143
    with pytest.raises(InvalidArgument):
        bound_planar(0)


def test_genus_values():
    b = bound_genus(3, 0)
    assert b.cwd == 36
    assert compare(36 * 3, b.twd_plus_one) == 0
    b1 = bound_genus(1, 1)
    assert b1.cwd == 22
    # 3 (2 + sqrt 2) 11 = 66 + 33 sqrt 2, about 112.669
    assert holds(112, "<", b1.twd_plus_one)
    assert not holds(113, "<", b1.twd_plus_one)


def test_krr_values():
    for k in range(6):
        assert bound_krr(k, 2).cwd == 2 * (1 + k + comb(k, 2))
    assert bound_krr(0, 2).cwd == 2
    assert bound_krr(1, 2).twd_plus_one == 3 * 4
    with pytest.raises(InvalidArgument):
        bound_krr(1, 1)


def test_nabla1_values():
    assert bound_nabla1(1, 1).twd_plus_one == 48
    assert bound_nabla1(1, 2).twd_plus_one == 384
    assert bound_nabla1(2, 1).cwd == 16


def test_exponential_bounds():
    b = bound_topminor(1, 3)
    expect = 0.75 * 16 * 2 ** (4.51 * 3 * log(3, 2))
    assert abs(float(b.twd_plus_one) / expect - 1) < 1e-9
    m = bound_minor(1, 3, mu=1)
    expect = 6 * 2 ** (3 * log(log(3, 2), 2))
    assert abs(float(m.twd_plus_one) / expect - 1) < 1e-9
    with pytest.raises(InvalidArgument):
        bound_minor(1, 3)
    with pytest.raises(InvalidArgument):
        bound_topminor(1, 2)


def test_clique_bounds():
    for r in range(2, 7):
        assert clique_bound_topminor(17, r, 1) == 17
    assert clique_bound_topminor(10, 4, 2, 10) == 800
    with pytest.raises(InvalidArgument):
        clique_bound_topminor(10, 4, 4)
    with pytest.raises(InvalidArgument):
        clique_bound_minor(10, 4, 2)
    v = clique_bound_minor(10, 4, 2, Fraction(1, 2))
    # (1/5) C(5,2) (2 * 0.5 * sqrt(log2 4)) 10 = 20 sqrt 2
    assert abs(float(v) - 20 * sqrt(2)) < 1e-9
    assert holds(28, "<", v) and not holds(29, "<", v)
    lo, hi = clique_bound_minor(10, 4, 1, Fraction(1, 2)).interval()
    assert lo <= 10 <= hi


def test_tau_sufficient_below_451():
    t = tau_sufficient(10)
    assert t.compare(Fraction(451, 100)) < 0
    assert t.compare(Fraction(45, 10)) > 0


def test_fueredi_sudakov_values():
    assert fueredi_sudakov(4, 3, 2) == 13
    for n in range(8):
        assert fueredi_sudakov(n, 2, 3) == sum(comb(n, i) for i in range(4))
    with pytest.raises(InvalidArgument):
        fueredi_sudakov(4, 1, 2)


def test_fueredi_sudakov_equals_krr_hyperedge_bound():
    for n in range(21):
        for r in range(2, 6):
            assert fueredi_sudakov(n, r, r) == krr_hyperedge_bound(n, r)


def test_ktt_threshold():
    assert [ktt_threshold(g) for g in (0, 2, 8)] == [3, 5, 7]
    for g in range(60):
        t = ktt_threshold(g)
        assert t > 2 + sqrt(2 * g) - 1e-9 and not t - 1 > 2 + sqrt(2 * g) + 1e-9


def test_wood_bound():
    assert wood_clique_bound(3, 2) == 8
    with pytest.raises(InvalidArgument):
        wood_clique_bound(2, 3)


def test_gurski_wanke():
    rep = gurski_wanke_check(path_graph(5), 2, 1)
    assert rep.satisfied and rep.twd_plus_one == 2
    assert gurski_wanke_check(star_graph(4), 2, 2).satisfied
    for n in range(4, 8):
        for r in range(2, n // 2 + 1):
            with pytest.raises(ClassViolation):
                gurski_wanke_check(complete_graph(n), r, 2)


@pytest.mark.parametrize("fn", [
    lambda k: bound_planar(k),
    lambda k: bound_genus(k, 3).cwd,
    lambda k: bound_genus(k, 3).twd_plus_one,
    lambda k: bound_krr(k, 3).twd_plus_one,
    lambda k: bound_krr(k, 2).cwd,
    lambda k: bound_nabla1(k, 2).twd_plus_one,
    lambda k: bound_topminor(k, 4).twd_plus_one,
    lambda k: bound_minor(k, 4, mu=Fraction(1, 2)).cwd,
])
def test_bounds_increase_in_rwd(fn):
    prev = fn(1)
    for k in range(2, 65):
        cur = fn(k)
        lo = float(prev)
        assert float(cur) > lo
        if isinstance(cur, (int, Fraction)):
            assert cur > prev
        prev = cur


@given(st.fractions(min_value=-50, max_value=50, max_denominator=30),
       st.fractions(min_value=-5, max_value=5, max_denominator=30),
       st.integers(0, 40), st.fractions(min_value=-80, max_value=80, max_denominator=30))
def test_surd_compare_matches_squaring(a, b, d, x):
    got = QuadraticSurd(a, b, d).compare(x)
    # enclose sqrt(d) in [lo, lo + 10^-20]; with these small denominators a
    # nonzero difference is far larger than the enclosure
    scale = 10**20
    lo = Fraction(isqrt(d * scale * scale), scale)
    lo_val, hi_val = sorted((a + b * lo - x, a + b * (lo + Fraction(1, scale)) - x))
    if isqrt(d) ** 2 == d or b == 0:
        exact = a + b * isqrt(d) - x if b else a - x
        want = (exact > 0) - (exact < 0)
    else:
        assert lo_val > 0 or hi_val < 0
        want = 1 if lo_val > 0 else -1
    assert got == want


def test_real_bound_undecided_on_equality():
    two = RealBound(lambda: iv.mpf(2) ** (iv.log(iv.mpf(3)) / iv.log(iv.mpf(3))), "2")
    with pytest.raises(Undecided):
        two.compare(2)
    assert two.compare(3) < 0


def test_pow2_r_log_r_integer_case():
    # 2^(1 * 4 * log2 4) = 2^8 exactly; strict comparison must stay undecided or be exact
    p = pow2_r_log_r(4, 1)
    assert p.compare(255) > 0 and p.compare(257) < 0


def test_clique_total_scales_with_n():
    assert clique_total_topminor(10, 4).compare(clique_total_topminor(9, 4).interval()[1]) > 0
