"""Remote creation of polarization and coherence intensity in spin-1/2 XY chains."""

from .dynamics import (
    ChainProfile,
    amplitude_and_phase,
    bessel_approx_amplitude,
    find_first_maximum,
    profile_table,
    transition_amplitude,
)
from .bessel import bessel_j
from .errors import DomainError, NumericError
from .statemap import (
    ControlParams,
    PhysCoords,
    ReceiverState,
    SpectralCoords,
    b_to_t,
    receiver_state,
    t_to_b,
    to_physical,
    to_spectral,
)

__version__ = "0.1.0"
