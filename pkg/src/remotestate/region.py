"""Boundaries and landmarks of the creatable region in the (I, J) plane.

Every function takes the amplitude maximum ``r`` explicitly (usually
``ChainProfile.r``), so an analysis can be replayed from a stored profile
table without re-running the amplitude search.

The creatable region is the image of ``(alpha, t) in [0, 1]^2`` under
``(I, J)``. Most of it is covered once; a small sliver to the left of the
zero-temperature curve (the tail and the adjacent corner) is covered twice.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NumericError
from .statemap import PhysCoords, coherence, cospi, polarization, sinpi, tpow

R_CRIT = 1.0 / math.sqrt(2.0)
BOUNDARY_SAMPLES = 512
# preimages closer than this in (alpha, t) are the same root
PREIMAGE_SEPARATION = 1e-4


@dataclass(frozen=True)
class TwoFoldBoundary:
    """Upper boundary of the twice-covered subregion and its three landmarks.

    ``samples`` holds ``(t, i_br_plus, j_br_plus)`` rows, increasing in ``t``.
    """

    n: int
    samples: list
    branch_point: tuple
    i_c: float
    tail_end: float


@dataclass(frozen=True)
class ZeroPolProfile:
    n: int
    j0_max: float
    t0_max: float
    alpha0_max: float
    log_j0_max: float


@dataclass(frozen=True)
class CoherenceThreshold:
    """Threshold temperature for a registrable coherence, plus the
    ``(t, alpha1_minus, alpha1_plus, i1_minus, i1_plus)`` band at each ``t``."""

    n: int
    j_min: float
    t1: float
    i1_c: float
    bands: list = field(default_factory=list)


def _need_twofold(n):
    if n <= 3:
        raise DomainError(f"two-fold subregion is empty for n={n} (R=1)")


def b_infinity_curve(alpha, r):
    """Zero-temperature (``t = 1``) image of the sender angle ``alpha``."""
    r2 = r * r
    s = float(sinpi(alpha))
    return PhysCoords(i_pol=0.5 * ((1.0 - r2) - r2 * float(cospi(alpha))),
                      j_coh=0.25 * r2 * s * s)


def i_c(r):
    """Polarization where the zero-temperature curve meets ``J = 0`` at ``alpha = 0``."""
    return 0.5 - r * r


def tail_end(r):
    return -0.5 * r * r


def _upper_boundary(t, r, n):
    r2 = r * r
    a = 1.0 - r2
    root = np.sqrt(4.0 * (n - 1) ** 2 * r2 * r2 + a * a * t * t)
    i_br = ((2 * n - 1) * a * t - root) / (4.0 * (n - 1))
    j_br = a * r2 * tpow(t, 2 * n - 1) / (2.0 * (a * t + root))
    return i_br, j_br


def twofold_upper_boundary(t, r, n):
    """Point ``(I_br+, J_br+)`` where ``J`` at fixed ``I`` peaks at temperature ``t``.

    The other root of the stationarity condition gives negative ``J`` and is
    discarded.
    """
    _need_twofold(n)
    i_br, j_br = _upper_boundary(float(t), r, n)
    return float(i_br), float(j_br)


def branch_point(r, n):
    """Upper boundary at ``t = 1``, where it meets the zero-temperature curve."""
    return twofold_upper_boundary(1.0, r, n)


def upper_boundary_t(i_pol, r, n, xtol=1e-12):
    """Temperature ``t`` at which the upper boundary passes polarization ``i_pol``.

    ``I_br+(t)`` is increasing, so the root is bracketed on ``[0, 1]`` for
    ``i_pol`` between the tail end and the branch point.
    """
    _need_twofold(n)
    lo, _ = _upper_boundary(0.0, r, n)
    hi, _ = _upper_boundary(1.0, r, n)
    if i_pol <= lo:
        return 0.0
    if i_pol >= hi:
        return 1.0
    try:
        return brentq(lambda t: _upper_boundary(t, r, n)[0] - i_pol, 0.0, 1.0,
                      xtol=xtol, rtol=4 * np.finfo(float).eps)
    except ValueError as exc:
        raise NumericError(f"cannot bracket upper boundary at I={i_pol}") from exc


def upper_boundary_j(i_pol, r, n):
    """``J_br+`` as a function of the polarization (``t`` eliminated numerically)."""
    t = upper_boundary_t(i_pol, r, n)
    return float(_upper_boundary(t, r, n)[1])


def alpha_br(t, r, n):
    """Sender angle separating singly and doubly covered control parameters.

    For ``alpha > alpha_br(t)`` the state at ``(alpha, t)`` has no other
    preimage; below it a second ``(alpha', t')`` maps to the same point.
    """
    _need_twofold(n)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    r2 = r * r
    if t == 1.0:
        i_br, _ = branch_point(r, n)
        c = ((1.0 - r2) - 2.0 * i_br) / r2
    else:
        # closed form with numerator and denominator divided by t^2
        u = tpow(t, 2 * n - 2)
        d = r2 * r2 * (1.0 + u * u) + u * ((1.0 - t) ** 2 * (1.0 - 2.0 * r2)
                                           + r2 * r2 * (t * t - 2.0 * t - 1.0))
        if d < -1e-14:
            raise NumericError(f"negative discriminant {d} at t={t}, n={n}")
        c = ((1.0 - r2) * (1.0 - t) - math.sqrt(max(d, 0.0))) / (r2 * (u - 1.0))
    if abs(c) > 1.0 + 1e-9:
        raise DomainError(f"no intersection with the zero-temperature curve at t={t}")
    return math.acos(min(1.0, max(-1.0, c))) / math.pi


def polarization_interval(t, r):
    """Range ``(I_low, I_up)`` of polarization reachable at temperature ``t``."""
    r2 = r * r
    base = (1.0 - r2) * t
    return 0.5 * (base - r2), 0.5 * (base + r2)


def zero_polarization_curve(t, r, n):
    """Sender angle and coherence of the ``I = 0`` state at temperature ``t``."""
    r2 = r * r
    a = 1.0 - r2
    c = a * t / r2
    if c > 1.0 + 1e-12:
        raise DomainError(f"zero-polarization state unreachable at t={t} (R={r})")
    alpha0 = math.acos(min(c, 1.0)) / math.pi
    j0 = tpow(t, 2 * (n - 1)) / (4.0 * r2) * (r2 * r2 - a * a * t * t)
    return alpha0, max(j0, 0.0)


def zero_polarization_max(r, n):
    """Largest coherence among zero-polarization states, and where it occurs.

    ``J0(t)`` peaks at ``t* = R^2/(1-R^2) sqrt((n-1)/n)``; when ``t* >= 1``
    (short chains) the maximum sits at ``t = 1``. The long-chain value is
    evaluated in log space.
    """
    r2 = r * r
    a = 1.0 - r2
    t_star = math.inf if a == 0.0 else r2 / a * math.sqrt((n - 1) / n)
    if t_star >= 1.0:
        j0 = (2.0 * r2 - 1.0) / (4.0 * r2)
        log_j0 = math.log(j0) if j0 > 0 else -math.inf
        return ZeroPolProfile(n=n, j0_max=j0, t0_max=1.0,
                              alpha0_max=math.acos(min(1.0, a / r2)) / math.pi,
                              log_j0_max=log_j0)
    log_j0 = ((n - 1) * math.log(n - 1) + 2 * (2 * n - 1) * math.log(r)
              - math.log(4.0) - n * math.log(n) - 2 * (n - 1) * math.log(a))
    j0 = math.exp(log_j0)
    return ZeroPolProfile(n=n, j0_max=j0 if j0 >= 1e-300 else 0.0, t0_max=t_star,
                          alpha0_max=math.acos(math.sqrt((n - 1) / n)) / math.pi,
                          log_j0_max=log_j0)


def critical_length(profiles):
    """Longest chain with ``R(n) >= 1/sqrt(2)``.

    ``profiles`` must run contiguously from ``n = 2`` and reach past the crossing.
    """
    ns = [p.n for p in profiles]
    if not ns or ns != list(range(2, 2 + len(ns))):
        raise ValueError("profiles must be contiguous in n starting at 2")
    for prev, p in zip(profiles, profiles[1:]):
        if p.r < R_CRIT:
            if prev.r < R_CRIT:
                break
            return prev.n
    raise DomainError("crossing of R = 1/sqrt(2) not bracketed by the profiles")


def coherence_threshold(j_min, r, n):
    """Smallest ``t`` at which coherence ``j_min`` is creatable, and the
    polarization of that single state (reached at ``alpha = 1/2``)."""
    r2 = r * r
    if not 0.0 < j_min or 4.0 * j_min > r2 * (1.0 + 1e-12):
        raise DomainError(f"coherence {j_min} unreachable for R={r}")
    t1 = min(1.0, (4.0 * j_min / r2) ** (1.0 / (2 * (n - 1))))
    return t1, 0.5 * (1.0 - r2) * t1


def detectable_band(t, j_min, r, n):
    """Angles and polarizations bounding ``J >= j_min`` at temperature ``t``.

    Returns ``(alpha1_minus, alpha1_plus, i1_minus, i1_plus)``.
    """
    r2 = r * r
    if t <= 0.0:
        raise DomainError("coherence unreachable at t = 0")
    log_q = math.log(4.0 * j_min / r2) - 2 * (n - 1) * math.log(t)
    if log_q > 1e-12:
        raise DomainError(f"coherence {j_min} unreachable at t={t}")
    root = math.sqrt(max(0.0, -math.expm1(log_q)))
    alpha_minus = math.acos(root) / math.pi
    alpha_plus = math.acos(-root) / math.pi
    base = (1.0 - r2) * t
    return alpha_minus, alpha_plus, 0.5 * (base - r2 * root), 0.5 * (base + r2 * root)


def coherence_threshold_profile(j_min, r, n, t_values=()):
    t1, i1c = coherence_threshold(j_min, r, n)
    bands = [(t,) + detectable_band(t, j_min, r, n) for t in t_values if t >= t1]
    return CoherenceThreshold(n=n, j_min=j_min, t1=t1, i1_c=i1c, bands=bands)


def twofold_boundary(r, n, samples=BOUNDARY_SAMPLES):
    """Sampled upper boundary and landmarks of the two-fold subregion."""
    _need_twofold(n)
    ts = np.linspace(0.0, 1.0, samples)
    ib, jb = _upper_boundary(ts, r, n)
    rows = [(float(t), float(i), float(j)) for t, i, j in zip(ts, ib, jb)]
    return TwoFoldBoundary(n=n, samples=rows, branch_point=branch_point(r, n),
                           i_c=i_c(r), tail_end=tail_end(r))


def alpha_br_curve(r, n, samples=BOUNDARY_SAMPLES):
    """``(t, alpha_br(t))`` on a uniform ``t`` grid; ``t = 0`` is included."""
    return [(float(t), alpha_br(float(t), r, n)) for t in np.linspace(0.0, 1.0, samples)]


def _newton_polish(alpha, t, i_target, j_target, r, n, iters=60):
    r2 = r * r
    k = 2 * (n - 1)
    scale = j_target if j_target > 0.0 else 1.0
    for _ in range(iters):
        s, c = math.sin(math.pi * alpha), math.cos(math.pi * alpha)
        tk = tpow(t, k)
        f1 = 0.5 * ((1.0 - r2) * t - r2 * c) - i_target
        f2 = (0.25 * r2 * s * s * tk - j_target) / scale
        if abs(f1) < 1e-15 and abs(f2) < 1e-13:
            return alpha, t
        a11 = 0.5 * math.pi * r2 * s
        a12 = 0.5 * (1.0 - r2)
        a21 = 0.5 * math.pi * r2 * s * c * tk / scale
        a22 = 0.25 * r2 * s * s * k * tpow(t, k - 1) / scale
        det = a11 * a22 - a12 * a21
        if det == 0.0:
            return None
        da = (f1 * a22 - f2 * a12) / det
        dt = (a11 * f2 - a21 * f1) / det
        alpha = min(1.0, max(0.0, alpha - da))
        t = min(1.0, max(0.0, t - dt))
    return None


def find_preimages(i_pol, j_coh, r, n, grid=2000):
    """All control pairs ``(alpha, t)`` in ``[0, 1]^2`` mapping onto ``(i_pol, j_coh)``.

    Brute force: both residual components are tabulated on a ``grid x grid``
    mesh, every cell where both change sign seeds a Newton polish, and roots
    closer than ``PREIMAGE_SEPARATION`` are merged.
    """
    alphas = np.linspace(0.0, 1.0, grid)
    ts = np.linspace(0.0, 1.0, grid)
    aa, tt = np.meshgrid(alphas, ts, indexing="ij")
    di = polarization(aa, tt, r) - i_pol > 0.0
    dj = coherence(aa, tt, r, n) - j_coh > 0.0

    def mixed(sgn):
        corners = (sgn[:-1, :-1], sgn[1:, :-1], sgn[:-1, 1:], sgn[1:, 1:])
        return np.logical_or.reduce(corners) & ~np.logical_and.reduce(corners)

    cells = np.argwhere(mixed(di) & mixed(dj))
    roots = []
    h = 1.0 / (grid - 1)
    for ia, it in cells:
        hit = _newton_polish((ia + 0.5) * h, (it + 0.5) * h, i_pol, j_coh, r, n)
        if hit is None:
            continue
        if all(math.hypot(hit[0] - a, hit[1] - t) > PREIMAGE_SEPARATION for a, t in roots):
            roots.append(hit)
    return sorted(roots)


def twofold_interior_points(r, n, count=24, margin=0.2):
    """Points strictly inside the doubly covered subregion.

    Polarizations are spread over ``(tail_end, I_br_inf)``; each ``J`` sits a
    fraction ``margin..1-margin`` of the way between the lower edge (zero, or
    the zero-temperature curve) and the upper boundary.
    """
    _need_twofold(n)
    lo, hi = tail_end(r), branch_point(r, n)[0]
    pts = []
    fracs = np.linspace(margin, 1.0 - margin, 3)
    for x in np.linspace(lo, hi, count // 3 + 2)[1:-1]:
        top = upper_boundary_j(x, r, n)
        bottom = 0.0
        if x > i_c(r):
            c = ((1.0 - r * r) - 2.0 * x) / (r * r)
            bottom = 0.25 * r * r * (1.0 - c * c)
        for f in fracs:
            pts.append(PhysCoords(float(x), float(bottom + f * (top - bottom))))
    return pts


def one_to_one_interior_points(r, n, count=24, margin=0.2):
    """Points strictly below the zero-temperature curve, away from its ends."""
    pts = []
    fracs = np.linspace(margin, 1.0 - margin, 3)
    for a in np.linspace(0.0, 1.0, count // 3 + 2)[1:-1]:
        top = b_infinity_curve(float(a), r)
        for f in fracs:
            pts.append(PhysCoords(top.i_pol, f * top.j_coh))
    return pts
