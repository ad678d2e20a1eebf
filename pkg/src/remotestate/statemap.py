"""Control parameters to receiver state, in three parametrizations.

The bath temperature enters through ``t = tanh(b/2)`` so that the
zero-temperature limit is the ordinary value ``t = 1``. Phases are in turns.

Physical coordinates are the polarization ``I = rho11 - 1/2`` and the
coherence intensity ``J = |rho12|^2``; spectral coordinates are the larger
eigenvalue ``lambda`` and the eigenvector angles ``beta1``, ``beta2``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import amplitude_and_phase
from .errors import DomainError

# powers below this are reported as exactly zero
UNDERFLOW = 1e-300
# slack on the reachability test |cos(alpha pi)| <= 1
REACH_TOL = 1e-12


@dataclass(frozen=True)
class ControlParams:
    """Sender angle ``alpha``, bath surrogate ``t = tanh(b/2)``, sender phase ``phi``."""

    alpha: float
    t: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.t <= 1.0:
            raise DomainError(f"t must lie in [0, 1], got {self.t}")
        if not 0.0 <= self.phi < 1.0:
            raise DomainError(f"phi must lie in [0, 1), got {self.phi}")

    @classmethod
    def from_b(cls, alpha, b, phi=0.0):
        return cls(alpha=alpha, t=b_to_t(b), phi=phi)

    @property
    def b(self):
        return t_to_b(self.t)

    @property
    def a0(self):
        return math.sin(0.5 * math.pi * self.alpha)

    @property
    def a1(self):
        # cos(alpha pi/2) written as a sine so that alpha = 1 gives exactly 0
        return complex(np.exp(2j * math.pi * self.phi)) * math.sin(0.5 * math.pi * (1.0 - self.alpha))


@dataclass(frozen=True)
class ReceiverState:
    """Reduced state of the last qubit: ``rho11``, ``|rho12|`` and the phase of ``rho21``."""

    rho11: float
    r12: float
    phase: float

    def positivity_margin(self):
        return self.rho11 * (1.0 - self.rho11) - self.r12 * self.r12

    def matrix(self):
        off = self.r12 * complex(np.exp(2j * math.pi * self.phase))
        return np.array([[self.rho11, off.conjugate()], [off, 1.0 - self.rho11]])


@dataclass(frozen=True)
class PhysCoords:
    i_pol: float
    j_coh: float

    def positivity_margin(self):
        return 0.25 - self.i_pol * self.i_pol - self.j_coh


@dataclass(frozen=True)
class SpectralCoords:
    lam: float
    beta1: float
    beta2: float = 0.0


def b_to_t(b):
    """``tanh(b/2)``; ``b = inf`` maps to exactly 1."""
    b = float(b)
    if math.isnan(b) or b < 0.0:
        raise DomainError(f"inverse temperature must be >= 0, got {b}")
    if math.isinf(b):
        return 1.0
    return math.tanh(0.5 * b)


def t_to_b(t):
    """Inverse of :func:`b_to_t`; ``t = 1`` maps to ``inf``."""
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    if t == 1.0:
        return math.inf
    return 2.0 * math.atanh(t)


def tpow(t, k):
    """``t**k`` for ``t`` in [0, 1], computed in log space for large ``k``.

    Results below 1e-300 are flushed to zero. Both ``t`` and ``k`` may be arrays.
    """
    t = np.asarray(t, dtype=float)
    if np.ndim(k) > 0:
        # t <= 1, so an elementwise power can only underflow
        out = np.power(t, np.asarray(k, dtype=float))
    elif k == 0:
        out = np.ones_like(t)
    elif k <= 40:
        out = t**k
    else:
        with np.errstate(divide="ignore"):
            out = np.exp(k * np.log(t))
    out = np.where(out < UNDERFLOW, 0.0, out)
    return float(out) if out.ndim == 0 else out


def cospi(alpha):
    """``cos(pi alpha)``, exactly zero at ``alpha = 1/2``."""
    return np.sin(np.pi * (0.5 - np.asarray(alpha, dtype=float)))


def sinpi(alpha):
    """``sin(pi alpha)`` for ``alpha`` in [0, 1], exactly zero at both ends."""
    alpha = np.asarray(alpha, dtype=float)
    return np.sin(np.pi * np.minimum(alpha, 1.0 - alpha))


def polarization(alpha, t, r):
    """``I = ((1 - R^2) t - R^2 cos(alpha pi)) / 2``; numpy-friendly."""
    r2 = r * r
    return 0.5 * ((1.0 - r2) * t - r2 * cospi(alpha))


def coherence(alpha, t, r, n):
    """``J = R^2 sin^2(alpha pi) t^(2(n-1)) / 4``; numpy-friendly."""
    s = sinpi(alpha)
    return 0.25 * r * r * s * s * tpow(t, 2 * (n - 1))


def receiver_state(cp, n, tau):
    """Reduced density matrix of the receiver at time ``tau``."""
    r, phi_n = amplitude_and_phase(n, tau)
    ca = float(cospi(cp.alpha))
    sa = float(sinpi(cp.alpha))
    r2 = r * r
    rho11 = 0.5 * (1.0 - r2 * ca + (1.0 - r2) * cp.t)
    r12 = 0.5 * r * sa * tpow(cp.t, n - 1)
    phase = math.fmod(phi_n + cp.phi + 0.5 * (n - 1), 1.0) if r12 > 0.0 else 0.0
    return ReceiverState(rho11=rho11, r12=r12, phase=phase)


def to_physical(cp, r, n):
    """Polarization and coherence intensity at amplitude ``r``."""
    return PhysCoords(i_pol=float(polarization(cp.alpha, cp.t, r)),
                      j_coh=float(coherence(cp.alpha, cp.t, r, n)))


def to_spectral(cp, r, n, tau):
    """Eigenvalue/eigenvector coordinates straight from the control parameters.

    ``beta2`` needs the amplitude phase at ``tau``; ``lambda`` and ``beta1``
    use the supplied ``r``.
    """
    r2 = r * r
    # d = -2I and s = 2 sqrt(J); lambda = (1 + sqrt(1 + Delta0)|d|) / 2
    d = r2 * float(cospi(cp.alpha)) - (1.0 - r2) * cp.t
    s = r * float(sinpi(cp.alpha)) * tpow(cp.t, n - 1)
    h = math.hypot(d, s)
    lam = 0.5 * (1.0 + h)
    beta1 = 0.5 if h == 0.0 else math.atan2(s, -d) / math.pi
    _, phi_n = amplitude_and_phase(n, tau)
    beta2 = math.fmod(phi_n + cp.phi + 0.5 * (n - 1), 1.0)
    return SpectralCoords(lam=lam, beta1=beta1, beta2=beta2)


def phys_to_spectral(p):
    """``(I, J) -> (lambda, beta1)``; the centre ``I = J = 0`` gives ``(1/2, 1/2)``."""
    sj = math.sqrt(max(p.j_coh, 0.0))
    rad = math.hypot(p.i_pol, sj)
    if rad == 0.0:
        return 0.5, 0.5
    return 0.5 + rad, math.atan2(sj, p.i_pol) / math.pi


def spectral_to_phys(lam, beta1):
    rad = lam - 0.5
    sj = rad * math.sin(math.pi * beta1)
    return PhysCoords(i_pol=rad * math.cos(math.pi * beta1), j_coh=sj * sj)


def xi(p):
    """Complex combination ``I + i sqrt(J)``; its modulus is ``lambda - 1/2``."""
    return complex(p.i_pol, math.sqrt(max(p.j_coh, 0.0)))


def phase_control(target_phase, n, tau):
    """Sender phase that produces ``target_phase`` (turns) at the receiver."""
    _, phi_n = amplitude_and_phase(n, tau)
    phi = (target_phase - phi_n - 0.5 * (n - 1)) % 1.0
    return 0.0 if phi >= 1.0 else phi


def _cos_alpha(i_pol, t, r):
    if r <= 0.0:
        raise DomainError("amplitude R must be positive to invert for alpha")
    r2 = r * r
    c = ((1.0 - r2) * t - 2.0 * i_pol) / r2
    if abs(c) > 1.0 + REACH_TOL:
        raise DomainError(f"polarization {i_pol} unreachable at t={t}, R={r}")
    return min(1.0, max(-1.0, c))


def invert_alpha(i_pol, t, r):
    """Sender angle giving polarization ``i_pol`` at temperature ``t``."""
    return math.acos(_cos_alpha(i_pol, t, r)) / math.pi


def j_of_i_b(i_pol, t, r, n):
    """Coherence intensity with ``alpha`` eliminated in favour of ``I``."""
    _cos_alpha(i_pol, t, r)
    r2 = r * r
    u = 2.0 * i_pol - (1.0 - r2) * t
    return max(0.0, tpow(t, 2 * (n - 1)) / (4.0 * r2) * (r2 * r2 - u * u))
