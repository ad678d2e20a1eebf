"""Scalar evolution characteristics of a homogeneous XY chain.

The single-excitation transition amplitude between the ends of an ``n``-site
chain is built from the free-fermion spectrum ``cos(k)``, ``k = pi m/(n+1)``,
and sine mode shapes. Everything the receiver's state depends on reduces to
its modulus ``R_N(tau)`` and phase ``Phi_N(tau)`` (in turns).
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bessel import bessel_j_table
from .errors import NumericError

DEFAULT_SCAN_STEP = 0.005
DEFAULT_REFINE_TOL = 1e-10

# evaluation chunk for the time scan; bounds memory at ~16 MB per chunk
_CHUNK = 8192


@dataclass(frozen=True)
class ChainProfile:
    """First maximum of the end-to-end amplitude for one chain length.

    Attributes
    ----------
    n : int
        Chain length.
    tau_max : float
        Dimensionless time of the largest amplitude on ``(0, 2n]``.
    r : float
        Amplitude maximum ``R(n)``.
    phi_at_max : float
        Phase of the amplitude at ``tau_max``, in turns.
    """

    n: int
    tau_max: float
    r: float
    phi_at_max: float


def _modes(n):
    k = np.pi * np.arange(1, n + 1) / (n + 1)
    weights = (2.0 / (n + 1)) * np.sin(k) * np.sin(k * n)
    return np.cos(k), weights


def _check_n(n):
    if int(n) != n or n < 2:
        raise ValueError(f"chain length must be an integer >= 2, got {n}")
    return int(n)


def transition_amplitude(n, tau):
    """Return ``f_N(tau) = sum_k exp(i eps_k tau) g_k(1) g_k(N)``.

    ``tau`` may be a scalar or an array; the result has the same shape.
    """
    n = _check_n(n)
    energies, weights = _modes(n)
    tau = np.asarray(tau, dtype=float)
    phases = np.exp(1j * np.multiply.outer(tau, energies))
    # f_N(0) = 0 exactly; the mode sum only cancels to rounding level
    f = np.where(tau == 0.0, 0.0, phases @ weights)
    return complex(f) if f.ndim == 0 else f


def amplitude_modulus(n, tau):
    """``R_N(tau) = |f_N(tau)|``, vectorized over ``tau``."""
    return np.abs(transition_amplitude(n, tau))


def _turns(z):
    return float(np.mod(np.angle(z) / (2.0 * np.pi), 1.0))


def amplitude_and_phase(n, tau):
    """Split ``f_N(tau)`` into modulus and phase in turns, ``[0, 1)``.

    A zero amplitude is reported with phase 0.
    """
    f = transition_amplitude(n, float(tau))
    r = abs(f)
    if r == 0.0:
        return 0.0, 0.0
    phi = _turns(f)
    # mod can return exactly 1.0 for tiny negative angles
    return r, 0.0 if phi >= 1.0 else phi


def find_first_maximum(n, scan_step=DEFAULT_SCAN_STEP, refine_tol=DEFAULT_REFINE_TOL):
    """Locate the largest maximum of ``R_N`` on ``(0, 2n]``.

    A uniform scan brackets the global maximum, which is then polished by a
    bounded scalar minimizer to ``refine_tol`` in ``tau``.
    """
    n = _check_n(n)
    if scan_step <= 0 or refine_tol <= 0:
        raise ValueError("scan_step and refine_tol must be positive")
    energies, weights = _modes(n)
    tau_end = 2.0 * n
    count = int(np.floor(tau_end / scan_step + 1e-9))
    grid = scan_step * np.arange(1, count + 1)
    if grid[-1] < tau_end:
        grid = np.append(grid, tau_end)

    best_val = -1.0
    best_idx = -1
    for start in range(0, grid.size, _CHUNK):
        chunk = grid[start:start + _CHUNK]
        vals = np.abs(np.exp(1j * np.multiply.outer(chunk, energies)) @ weights)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_idx = float(vals[i]), start + i

    if best_idx == grid.size - 1:
        raise NumericError(f"no interior maximum of R_{n} on (0, {tau_end}]")
    lo = grid[best_idx - 1] if best_idx > 0 else 0.0
    hi = grid[best_idx + 1]

    def neg_r(t):
        return -abs(np.exp(1j * t * energies) @ weights)

    res = minimize_scalar(neg_r, bounds=(lo, hi), method="bounded",
                          options={"xatol": refine_tol, "maxiter": 500})
    tau_max = float(res.x)
    r = -float(res.fun)
    if r < best_val:
        # refinement must not lose to the scan
        tau_max, r = float(grid[best_idx]), best_val
    _, phi = amplitude_and_phase(n, tau_max)
    return ChainProfile(n=n, tau_max=tau_max, r=min(r, 1.0), phi_at_max=phi)


def profile_table(n_min, n_max, scan_step=DEFAULT_SCAN_STEP, refine_tol=DEFAULT_REFINE_TOL):
    """ChainProfile for every length in ``[n_min, n_max]``, in order."""
    return [find_first_maximum(n, scan_step, refine_tol) for n in range(n_min, n_max + 1)]


def bessel_approx_amplitude(n, tau):
    """Leading Bessel term of the amplitude, ``|J_{n+3} + J_{n-1} + 2 J_{n+1}|``.

    Vectorized over ``tau``.
    """
    n = _check_n(n)
    tau = np.asarray(tau, dtype=float)
    table = bessel_j_table(n + 3, tau)
    val = np.abs(table[n + 3] + table[n - 1] + 2.0 * table[n + 1])
    return float(val) if val.ndim == 0 else val
