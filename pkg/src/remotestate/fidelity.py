"""Areas of the creatable region and sender-averaged observables.

Areas are measured in the (I, J) plane; the whole receiver state space
``J <= 1/4 - I^2`` has area 1/6. Numeric areas come back with the
quadrature's own error estimate.
"""

from dataclasses import dataclass

from scipy.integrate import quad

from .region import branch_point, i_c, tail_end, upper_boundary_j
from .statemap import coherence, polarization, tpow

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-10


@dataclass(frozen=True)
class FidelityReport:
    n: int
    s_receiver: float
    s_one_to_one: float
    s_two_fold: float
    f_one_to_one: float
    f_two_fold: float
    s_one_to_one_err: float = 0.0
    s_two_fold_err: float = 0.0


def _quad(func, a, b):
    if b <= a:
        return 0.0, 0.0
    val, err = quad(func, a, b, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=200)
    return val, err


def area_receiver():
    return 1.0 / 6.0


def area_receiver_numeric():
    return _quad(lambda x: 0.25 - x * x, -0.5, 0.5)


def zero_temperature_j(i_pol, r):
    """``J`` on the zero-temperature curve as a function of ``I``."""
    r2 = r * r
    return (1.0 - 2.0 * i_pol) * (2.0 * i_pol + 2.0 * r2 - 1.0) / (4.0 * r2)


def area_one_to_one(r):
    return r**4 / 6.0


def area_one_to_one_numeric(r):
    """Quadrature of the zero-temperature curve over ``[I_c, 1/2]``."""
    return _quad(lambda x: zero_temperature_j(x, r), i_c(r), 0.5)


def area_two_fold(r, n):
    """Area of the doubly covered subregion and its error estimate.

    Upper boundary integrated over ``[-R^2/2, I_br_inf]`` minus the
    zero-temperature curve over ``[I_c, I_br_inf]``.
    """
    if n <= 3:
        return 0.0, 0.0
    i_br = branch_point(r, n)[0]
    upper, e1 = _quad(lambda x: upper_boundary_j(x, r, n), tail_end(r), i_br)
    lower, e2 = _quad(lambda x: zero_temperature_j(x, r), i_c(r), i_br)
    return max(upper - lower, 0.0), e1 + e2


def fidelity_report(profile):
    r, n = profile.r, profile.n
    s_rec = area_receiver()
    s_one = area_one_to_one(r)
    _, e_one = area_one_to_one_numeric(r)
    s_two, e_two = area_two_fold(r, n)
    return FidelityReport(n=n, s_receiver=s_rec, s_one_to_one=s_one, s_two_fold=s_two,
                          f_one_to_one=s_one / s_rec, f_two_fold=s_two / s_rec,
                          s_one_to_one_err=e_one, s_two_fold_err=e_two)


def averages(t, r, n):
    """Polarization and coherence averaged over ``alpha`` in ``[0, 1]``."""
    return 0.5 * (1.0 - r * r) * t, 0.125 * r * r * tpow(t, 2 * (n - 1))


def averages_numeric(t, r, n):
    i_bar, _ = _quad(lambda a: float(polarization(a, t, r)), 0.0, 1.0)
    j_bar, _ = _quad(lambda a: float(coherence(a, t, r, n)), 0.0, 1.0)
    return i_bar, j_bar
