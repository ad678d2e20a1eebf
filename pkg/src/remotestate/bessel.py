r"""Bessel functions of the first kind :math:`J_n(x)` for integer order.

Orders up to 300 and arguments up to 400 are supported. Values are produced
by Miller's downward recurrence, which is stable for ``n > x`` where the
upward recurrence loses all accuracy, normalized with the identity

.. math::
    J_0(x)^2 + 2 \sum_{k \ge 1} J_k(x)^2 = 1 .

The sign of the normalization is taken from the companion identity
:math:`J_0 + 2 \sum_k J_{2k} = 1`. Arguments up to 1 use the
ascending power series instead, which also keeps the ``2k/x`` factor of the
recurrence away from overflow.
"""

import math

import numpy as np

from .errors import DomainError

MAX_ORDER = 300
MAX_ARG = 400.0

_BIG = 1e120
_SMALL = 1e-120


def _check(order, x):
    if order < 0 or order > MAX_ORDER:
        raise DomainError(f"Bessel order {order} outside [0, {MAX_ORDER}]")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(x > MAX_ARG) or not np.all(np.isfinite(x)):
        raise DomainError(f"Bessel argument outside [0, {MAX_ARG}]")
    return x


def _series(order, x):
    """Ascending series for ``0 < x <= 1``; vectorized over ``x``.

    The leading term is formed in log space so high orders underflow to zero
    cleanly instead of going through ``inf / inf``.
    """
    x = np.asarray(x, dtype=float)
    half = 0.5 * x
    if order == 0:
        term = np.ones_like(half)
    else:
        with np.errstate(divide="ignore"):
            term = np.exp(order * np.log(half) - math.lgamma(order + 1))
    total = term.copy()
    q = -half * half
    for k in range(1, 30):
        term = term * q / (k * (k + order))
        total += term
    return total


def _start_index(max_order, xmax):
    m = max(max_order, int(math.ceil(xmax))) + 40 + int(12.0 * xmax ** (1.0 / 3.0))
    return m + (m % 2)


def bessel_j_table(max_order, x):
    """Return ``J_k(x)`` for ``k = 0..max_order`` as an array.

    Parameters
    ----------
    max_order : int
        Highest order needed.
    x : float or array_like
        Arguments in ``[0, 400]``.

    Returns
    -------
    numpy.ndarray
        Shape ``(max_order + 1,) + np.shape(x)``.
    """
    x = _check(max_order, x)
    shape = x.shape
    xs = x.ravel()
    out = np.zeros((max_order + 1, xs.size))
    out[0, xs == 0.0] = 1.0

    small = (xs > 0.0) & (xs <= 1.0)
    if np.any(small):
        for k in range(max_order + 1):
            out[k, small] = _series(k, xs[small])

    live = xs > 1.0
    if not np.any(live):
        return out.reshape((max_order + 1,) + shape)

    xl = xs[live]
    m = _start_index(max_order, float(xl.max()))
    vals = np.zeros((max_order + 1, xl.size))
    j_next = np.zeros_like(xl)
    j_cur = np.full_like(xl, 1e-30)
    sumsq = np.zeros_like(xl)
    sumlin = np.zeros_like(xl)
    for k in range(m, 0, -1):
        if k <= max_order:
            vals[k] = j_cur
        sumsq += 2.0 * j_cur * j_cur
        if k % 2 == 0:
            sumlin += 2.0 * j_cur
        j_prev = (2.0 * k / xl) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev

        big = np.abs(j_cur) > _BIG
        if np.any(big):
            j_cur[big] *= _SMALL
            j_next[big] *= _SMALL
            sumsq[big] *= _SMALL * _SMALL
            sumlin[big] *= _SMALL
            vals[:, big] *= _SMALL
    vals[0] = j_cur
    sumsq += j_cur * j_cur
    sumlin += j_cur

    norm = np.sqrt(sumsq) * np.sign(sumlin)
    out[:, live] = vals / norm
    return out.reshape((max_order + 1,) + shape)


def bessel_j(order, x):
    """Bessel function of the first kind ``J_order(x)`` for a scalar ``x``.

    Accurate to about 1e-13 absolute over ``0 <= order <= 300``,
    ``0 <= x <= 400``.
    """
    order = int(order)
    x = float(_check(order, x))
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x <= 1.0:
        return float(_series(order, x))
    return float(bessel_j_table(order, x)[order])
