r"""Brute-force reference: two-site spin blocks from the N-electron wavefunction.

The ground state is the Slater determinant of the occupied orbitals,
Psi(x_1 ... x_N) = det[phi_i(x_j)] / sqrt(N!), with x = (site, spin).
The reference two-site spin block is the literal sum over spectator
coordinates

    T[(s1 s2), (s1' s2')]  proportional to
        sum_{x_3 ... x_N} Psi(r1 s1, r2 s2, x_3 ...) Psi*(r1 s1', r2 s2', x_3 ...),

normalized by its trace.  No symmetry shortcut and no pair-determinant
algebra is used: each amplitude is an N x N determinant and the spectator
sum is a plain nested loop over all (site, spin) values, so this path is
independent of the production construction it cross-checks.

Orbitals may come straight from the occupied Bloch states or, as a second
independent route, from diagonalizing the real-space single-particle
Hamiltonian (hopping -t, on-site Zeeman B sigma_x, bond Rashba +/- i lam
sigma_y, periodic ring).  Orbitals are stored lattice-orthonormal; any
overall normalization cancels in the trace-normalized result.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IntractableSize, MidShellError, SiteOutOfRange, VanishingTrace
from .fermisea import OccupiedSet
from .model import SIGMA_X, SIGMA_Y, ModelParams
from .rdm import BASIS_PAIR, SpinDensityMatrix

MAX_SITES = 8
MAX_ELECTRONS = 4
GRAM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FirstQuantizedState:
    """N occupied orbitals on the lattice, amplitudes indexed (orbital, site, spin)."""

    params: ModelParams
    orbitals: np.ndarray = field(repr=False)

    def __post_init__(self):
        n, m, two = self.orbitals.shape
        if m != self.params.M or two != 2:
            raise ValueError("orbitals must have shape (N, M, 2)")
        flat = self.orbitals.reshape(n, -1)
        gram = flat @ flat.conj().T
        defect = float(np.max(np.abs(gram - np.eye(n))))
        if defect > GRAM_TOL:
            raise ValueError(f"orbitals are not orthonormal (defect {defect:.3e})")

    @property
    def n_electrons(self) -> int:
        return self.orbitals.shape[0]


def from_fermi_sea(occ: OccupiedSet) -> FirstQuantizedState:
    """Evaluate the occupied Bloch orbitals on every (site, spin)."""
    p = occ.params
    sites = np.arange(p.M) * p.a
    plane = np.exp(-1j * np.multiply.outer(occ.k, sites))  # (N, M)
    spin = np.stack([occ.sign * occ.qphase, np.ones_like(occ.qphase)], axis=-1)  # (N, 2)
    orbitals = plane[:, :, None] * spin[:, None, :] / math.sqrt(2.0 * p.M)
    return FirstQuantizedState(params=p, orbitals=orbitals)


def real_space_hamiltonian(params: ModelParams) -> np.ndarray:
    """The 2M x 2M single-particle matrix of the ring, basis index = 2*site + spin."""
    if params.M < 3:
        raise ValueError("real-space mode needs M >= 3 (distinct ring bonds)")
    m = params.M
    h = np.zeros((2 * m, 2 * m), dtype=complex)
    bond = -params.t * np.eye(2) + 1j * params.lam * SIGMA_Y
    for r in range(m):
        rp = (r + 1) % m
        h[2 * r : 2 * r + 2, 2 * r : 2 * r + 2] += params.B * SIGMA_X
        h[2 * r : 2 * r + 2, 2 * rp : 2 * rp + 2] += bond
        h[2 * rp : 2 * rp + 2, 2 * r : 2 * r + 2] += bond.conj().T
    return h


def from_real_space(params: ModelParams, n_electrons: int) -> FirstQuantizedState:
    """Lowest n_electrons eigenvectors of the real-space Hamiltonian as orbitals."""
    h = real_space_hamiltonian(params)
    energies, vectors = np.linalg.eigh(h)
    if n_electrons < 2 * params.M:
        gap = energies[n_electrons] - energies[n_electrons - 1]
        if gap <= 1e-9 * params.t:
            closed = np.flatnonzero(np.diff(energies) > 1e-9 * params.t) + 1
            below = closed[closed < n_electrons]
            above = closed[closed > n_electrons]
            raise MidShellError(
                n_electrons,
                int(below[-1]) if below.size else None,
                int(above[0]) if above.size else 2 * params.M,
            )
    orbitals = vectors[:, :n_electrons].T.reshape(n_electrons, params.M, 2)
    return FirstQuantizedState(params=params, orbitals=orbitals)


def oracle_tsdm(state: FirstQuantizedState, r1: int, r2: int) -> SpinDensityMatrix:
    """The reference two-site spin block for sites (r1, r2), trace-normalized."""
    p = state.params
    n = state.n_electrons
    if p.M > MAX_SITES or n > MAX_ELECTRONS:
        raise IntractableSize(
            f"brute-force path limited to M <= {MAX_SITES}, N <= {MAX_ELECTRONS} "
            f"(got M={p.M}, N={n})"
        )
    for r in (r1, r2):
        if not 0 <= r < p.M:
            raise SiteOutOfRange(f"site {r} outside 0 <= r < {p.M}")

    columns = state.orbitals.reshape(n, 2 * p.M)  # column for coordinate x = 2r + s
    spin_pairs = [(s1, s2) for s1 in (0, 1) for s2 in (0, 1)]
    acc = np.zeros((4, 4), dtype=complex)
    matrix = np.empty((n, n), dtype=complex)
    amplitudes = np.empty(4, dtype=complex)

    for spectators in itertools.product(range(2 * p.M), repeat=n - 2):
        for slot, x in enumerate(spectators):
            matrix[:, 2 + slot] = columns[:, x]
        for idx, (s1, s2) in enumerate(spin_pairs):
            matrix[:, 0] = columns[:, 2 * r1 + s1]
            matrix[:, 1] = columns[:, 2 * r2 + s2]
            amplitudes[idx] = np.linalg.det(matrix)
        acc += np.outer(amplitudes, amplitudes.conj())

    trace = float(np.real(np.trace(acc)))
    # summed over all site pairs the accumulated trace is exactly N!, so the
    # natural per-pair scale is N!/M^2; a trace negligible against it is a
    # configuration with no two-particle weight, not a small genuine one
    scale = math.factorial(n) / p.M**2
    if trace <= 1e-12 * scale:
        raise VanishingTrace(
            f"no two-particle spin weight at sites ({r1}, {r2}) (raw trace {trace:.3e})"
        )
    return SpinDensityMatrix(
        entries=acc / trace, basis=BASIS_PAIR, norm_raw=trace, r1=int(r1), r2=int(r2)
    )
