r"""Single-particle model: 1D chain with Zeeman and Rashba couplings.

The Bloch Hamiltonian at momentum k is

    H(k) = -2 t cos(ka) I + B sigma_x + 2 lam sin(ka) sigma_y,

with bands

    E_-(k) = -2 t cos(ka) - |Z(k)|,   E_+(k) = -2 t cos(ka) + |Z(k)|,
    Z(k)   = B + 2 i lam sin(ka).

Eigenspinors are written with the phase factor e^{-i theta_k} = |Z|/Z:

    lower band:  (-e^{-i theta_k}, 1) / sqrt(2)
    upper band:  (+e^{-i theta_k}, 1) / sqrt(2)

Full orbitals carry a plane-wave factor e^{-i k r} / sqrt(2L) with L = M a;
that normalization lives in the correlator and oracle modules.  At points
where Z = 0 (B = 0 and sin(ka) = 0, or B = lam = 0) the two bands are
degenerate and the phase is fixed to theta = 0 by convention; such states
are flagged as degenerate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class Band(enum.Enum):
    LOWER = -1
    UPPER = +1

    @property
    def sign(self) -> int:
        """-1 for the lower band, +1 for the upper band."""
        return self.value


@dataclass(frozen=True)
class ModelParams:
    """Chain parameters: hopping t, Zeeman B, Rashba lam, M sites, spacing a."""

    t: float = 1.0
    B: float = 0.0
    lam: float = 0.0
    M: int = 500
    a: float = 1.0

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("hopping t must be positive")
        if self.B < 0 or self.lam < 0:
            raise ValueError("field strengths B and lam must be non-negative")
        if not isinstance(self.M, int) or self.M < 2:
            raise ValueError("M must be an integer >= 2")
        if self.a <= 0:
            raise ValueError("lattice spacing a must be positive")

    @property
    def length(self) -> float:
        """Chain length L = M a."""
        return self.M * self.a


@dataclass(frozen=True, eq=False)
class BlochState:
    """One single-particle eigenstate of the chain."""

    n: int
    k: float
    band: Band
    energy: float
    theta: float
    spinor: np.ndarray = field(repr=False)
    degenerate: bool = False


def grid_indices(params: ModelParams) -> np.ndarray:
    """Integer grid labels n = -floor(M/2) ... ceil(M/2)-1, ascending."""
    m = params.M
    return np.arange(-(m // 2), (m + 1) // 2)


def momentum_grid(params: ModelParams) -> np.ndarray:
    """Allowed momenta k_n = 2 pi n / (M a), ascending, M values."""
    return 2.0 * np.pi * grid_indices(params) / (params.M * params.a)


def zeeman_rashba_field(params: ModelParams, k):
    """Complex field Z(k) = B + 2 i lam sin(ka) whose modulus splits the bands."""
    return params.B + 2.0j * params.lam * np.sin(np.asarray(k) * params.a)


def dispersion(params: ModelParams, k):
    """Band energies (E_lower, E_upper) at momentum k (scalar or array)."""
    ka = np.asarray(k) * params.a
    base = -2.0 * params.t * np.cos(ka)
    gap = np.abs(zeeman_rashba_field(params, k))
    return base - gap, base + gap


def spinor_phase(params: ModelParams, k):
    """Phase angle theta_k = arg Z(k) and the field Z(k) itself.

    Degenerate points (Z = 0) take theta = 0 by convention; detect them by
    Z == 0 on the returned field.
    """
    z = zeeman_rashba_field(params, k)
    theta = np.where(z == 0, 0.0, np.angle(z))
    if np.ndim(k) == 0:
        return float(theta), complex(z)
    return theta, z


def phase_factor(params: ModelParams, k):
    """e^{-i theta_k} evaluated as |Z|/Z, with the convention 1 at Z = 0."""
    z = zeeman_rashba_field(params, k)
    zsafe = np.where(z == 0, 1.0, z)
    out = np.where(z == 0, 1.0 + 0.0j, np.abs(z) / zsafe)
    if np.ndim(k) == 0:
        return complex(out)
    return out


def bloch_spinor(params: ModelParams, k, band: Band) -> np.ndarray:
    """Unit eigenspinor (band.sign * e^{-i theta_k}, 1) / sqrt(2)."""
    q = phase_factor(params, k)
    return np.array([band.sign * q, 1.0], dtype=complex) / math.sqrt(2.0)


def bloch_hamiltonian(params: ModelParams, k) -> np.ndarray:
    """2x2 Bloch matrix -2t cos(ka) I + B sigma_x + 2 lam sin(ka) sigma_y."""
    ka = float(k) * params.a
    return (
        -2.0 * params.t * math.cos(ka) * np.eye(2, dtype=complex)
        + params.B * SIGMA_X
        + 2.0 * params.lam * math.sin(ka) * SIGMA_Y
    )


def bloch_state(params: ModelParams, n: int, band: Band) -> BlochState:
    """Assemble the BlochState for grid index n and the given band."""
    k = 2.0 * np.pi * n / (params.M * params.a)
    lo, hi = dispersion(params, k)
    theta, z = spinor_phase(params, k)
    return BlochState(
        n=int(n),
        k=float(k),
        band=band,
        energy=float(lo if band is Band.LOWER else hi),
        theta=float(theta),
        spinor=bloch_spinor(params, k, band),
        degenerate=bool(z == 0),
    )
