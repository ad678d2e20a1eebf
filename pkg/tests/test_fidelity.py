import numpy as np
import pytest
from scipy.integrate import quad

from remotestate.fidelity import (
    area_one_to_one,
    area_one_to_one_numeric,
    area_receiver,
    area_receiver_numeric,
    area_two_fold,
    averages,
    averages_numeric,
    fidelity_report,
)
from remotestate.region import branch_point, twofold_upper_boundary


def test_receiver_area():
    assert area_receiver() == 1.0 / 6.0
    val, err = area_receiver_numeric()
    assert abs(val - 1.0 / 6.0) < 1e-14 and err < 1e-12


def test_one_to_one_examples(r_of):
    assert area_one_to_one(1.0) == pytest.approx(1.0 / 6.0)
    assert area_one_to_one(r_of(6)) == pytest.approx(0.912**2 / 6, abs=5e-4)
    for n in (2, 6, 34, 60):
        val, _ = area_one_to_one_numeric(r_of(n))
        assert abs(val - area_one_to_one(r_of(n))) < 1e-8


def test_two_fold_short_chains():
    assert area_two_fold(1.0, 2) == (0.0, 0.0)
    assert area_two_fold(1.0, 3) == (0.0, 0.0)


def test_two_fold_n6(r_of):
    s, err = area_two_fold(r_of(6), 6)
    assert 0.0 < s < 0.01 * area_one_to_one(r_of(6))
    assert err < 1e-9


def test_two_fold_parametric_cross_check(r_of):
    # same area with the upper boundary integrated in its own parameter t
    for n in (5, 6, 12, 30):
        r = r_of(n)
        h = 1e-7

        def integrand(t):
            _, j = twofold_upper_boundary(t, r, n)
            lo = twofold_upper_boundary(max(t - h, 0.0), r, n)[0]
            hi = twofold_upper_boundary(min(t + h, 1.0), r, n)[0]
            return j * (hi - lo) / (min(t + h, 1.0) - max(t - h, 0.0))

        upper, _ = quad(integrand, 0.0, 1.0, epsabs=1e-14, limit=200)
        i_br = branch_point(r, n)[0]
        r2 = r * r
        lower, _ = quad(lambda x: (1 - 2 * x) * (2 * x + 2 * r2 - 1) / (4 * r2),
                        0.5 - r2, i_br, epsabs=1e-14)
        assert area_two_fold(r, n)[0] == pytest.approx(upper - lower, rel=1e-5, abs=1e-12)


def test_report_invariants(profiles):
    for p in profiles["table"][:59]:
        rep = fidelity_report(p)
        assert rep.f_one_to_one == pytest.approx(rep.s_one_to_one / rep.s_receiver)
        assert rep.f_two_fold == pytest.approx(rep.s_two_fold / rep.s_receiver)
        assert rep.s_two_fold >= 0.0
        assert rep.s_one_to_one + rep.s_two_fold <= 1.0 / 6.0
        assert rep.f_one_to_one + rep.f_two_fold <= 1.0
    first = fidelity_report(profiles["by_n"][2])
    assert first.f_one_to_one == pytest.approx(1.0) and first.f_two_fold == 0.0
    assert fidelity_report(profiles["by_n"][3]).f_two_fold == 0.0


def test_two_fold_argmax(profiles):
    f = {n: fidelity_report(profiles["by_n"][n]).f_two_fold for n in range(4, 61)}
    assert max(f, key=f.get) == 12


def test_averages_examples():
    assert averages(0.0, 0.8, 5) == (0.0, 0.0)
    assert averages(1.0, 1.0, 2) == (0.0, 0.125)


def test_averages_match_quadrature(r_of):
    for n in (2, 7, 30):
        for t in (0.0, 0.3, 0.9, 1.0):
            a = averages(t, r_of(n), n)
            b = averages_numeric(t, r_of(n), n)
            assert a == pytest.approx(b, abs=1e-12)


def test_averages_monotonicity(profiles):
    tgrid = np.linspace(0.0, 1.0, 101)
    ns = range(2, 121)
    i_bar = np.array([[averages(t, profiles["by_n"][n].r, n)[0] for t in tgrid] for n in ns])
    j_bar = np.array([[averages(t, profiles["by_n"][n].r, n)[1] for t in tgrid] for n in ns])
    assert np.all(np.diff(i_bar, axis=1) >= 0.0)
    assert np.all(np.diff(j_bar, axis=1) >= 0.0)
    # R(2) = R(3) = 1 only to rounding, hence the slack across n
    assert np.all(np.diff(i_bar, axis=0) >= -1e-15)
    assert np.all(np.diff(j_bar, axis=0) <= 1e-15)
