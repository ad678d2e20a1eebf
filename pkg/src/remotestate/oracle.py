"""Brute-force many-body reference for the receiver state.

Builds the full ``2**n`` dimensional XY Hamiltonian and the product initial
state (pure sender, thermal bath), evolves exactly through the Hamiltonian's
eigendecomposition and traces out every qubit but the last. Nothing here uses
the free-fermion solution, so agreement with :func:`statemap.receiver_state`
is a genuine check of the closed forms.

Basis convention: qubit 1 is the most significant bit, and ``|0>`` is the
``I_z = +1/2`` state.
"""

import math
from functools import lru_cache, reduce

import numpy as np

from .errors import DomainError
from .statemap import ReceiverState

MAX_SITES = 10

SX = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
SY = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
SZ = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
EYE = np.eye(2, dtype=complex)


def _check_n(n):
    if int(n) != n or not 2 <= n <= MAX_SITES:
        raise DomainError(f"oracle supports 2 <= n <= {MAX_SITES}, got {n}")
    return int(n)


def site_operator(op, site, n):
    """Embed a single-qubit operator at ``site`` (0-based) of an ``n``-qubit chain."""
    factors = [EYE] * n
    factors[site] = op
    return reduce(np.kron, factors)


def total_sz(n):
    n = _check_n(n)
    return sum(site_operator(SZ, i, n) for i in range(n))


def build_hamiltonian(n):
    """Nearest-neighbour XY Hamiltonian in units of the coupling constant."""
    n = _check_n(n)
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(n - 1):
        h += site_operator(SX, i, n) @ site_operator(SX, i + 1, n)
        h += site_operator(SY, i, n) @ site_operator(SY, i + 1, n)
    return h


@lru_cache(maxsize=None)
def _eigensystem(n):
    w, v = np.linalg.eigh(build_hamiltonian(n))
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def initial_density(cp, n):
    """Pure sender ``a0|0> + a1|1>`` tensored with ``n-1`` thermal qubits.

    Each bath factor is ``diag(1 + t, 1 - t) / 2``, which is
    ``exp(b I_z) / (2 cosh(b/2))``; at ``t = 1`` it is the exact projector on ``|0>``.
    """
    n = _check_n(n)
    psi = np.array([cp.a0, cp.a1], dtype=complex)
    sender = np.outer(psi, psi.conj())
    bath = np.diag([0.5 * (1.0 + cp.t), 0.5 * (1.0 - cp.t)]).astype(complex)
    return reduce(np.kron, [sender] + [bath] * (n - 1))


def evolve(cp, n, tau):
    """Full density matrix ``exp(-iH tau) rho0 exp(iH tau)``."""
    n = _check_n(n)
    w, v = _eigensystem(n)
    u = (v * np.exp(-1j * w * tau)) @ v.conj().T
    return u @ initial_density(cp, n) @ u.conj().T


def reduce_to_last(rho, n):
    """Partial trace over qubits ``1..n-1``."""
    half = 2 ** (n - 1)
    return np.einsum("iaib->ab", rho.reshape(half, 2, half, 2))


def receiver_matrix(cp, n, tau):
    return reduce_to_last(evolve(cp, n, tau), n)


def evolve_and_reduce(cp, n, tau):
    """ReceiverState of the last qubit from exact evolution.

    The phase is that of ``rho21``; it is reported as 0 when ``|rho21|`` is
    at rounding level, where it carries no information.
    """
    red = receiver_matrix(cp, n, tau)
    rho21 = complex(red[1, 0])
    r12 = abs(rho21)
    if r12 > 1e-14:
        phase = (math.atan2(rho21.imag, rho21.real) / (2.0 * math.pi)) % 1.0
        phase = 0.0 if phase >= 1.0 else phase
    else:
        phase = 0.0
    return ReceiverState(rho11=float(red[0, 0].real), r12=r12, phase=phase)
