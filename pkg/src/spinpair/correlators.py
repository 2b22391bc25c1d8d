r"""Fermi-sea correlators and single-particle density-matrix elements.

With occupied Bloch orbitals phi(r, sigma) = e^{-ikr} v_sigma / sqrt(2L),
v = (band_sign * e^{-i theta_k}, 1), the one-body density matrix is

    rho1(x, x') = sum_occ phi*(r, sigma) phi(r', sigma')
                = (1 / 2L) sum_occ e^{ik(r - r')} [v*_sigma v_sigma'].

Every two-site spin block reduces to five scalar sums over the sea
(R = integer site separation, distances in units of a):

    m   = number of occupied states
    A   = sum_lower e^{i theta_k} - sum_upper e^{i theta_k}
    G_R = sum_occ e^{i k R a}
    H_R = sum_lower e^{i theta_k} e^{i k R a} - sum_upper (same)
    K_R = H_{-R}

Sums run in the occupied set's deterministic state order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .backend import weighted_phase_sums
from .errors import SiteOutOfRange
from .fermisea import OccupiedSet
from .model import ModelParams

UP, DOWN = 0, 1


@dataclass(frozen=True)
class CorrelatorSet:
    """The five scalar sums entering the two-site spin blocks at separation R."""

    params: ModelParams
    R: int
    m: int
    A: complex
    G: complex
    H: complex
    K: complex


def _band_weight(occ: OccupiedSet) -> np.ndarray:
    # (-band_sign) * e^{+i theta_k}; e^{+i theta} is the conjugate phase factor
    return -occ.sign * np.conj(occ.qphase)


def correlator_set(occ: OccupiedSet, R: int) -> CorrelatorSet:
    """Evaluate (m, A, G, H, K) at integer site separation R."""
    if R != int(R):
        raise ValueError(f"site separation R must be an integer, got {R}")
    R = int(R)
    w = _band_weight(occ)
    weights = np.column_stack([np.ones_like(w), w, np.conj(w)])
    dists = np.array([0.0, R * occ.params.a])
    sums = weighted_phase_sums(occ.k, dists, weights)
    return CorrelatorSet(
        params=occ.params,
        R=R,
        m=occ.n_electrons,
        A=complex(sums[0, 1]),
        G=complex(sums[1, 0]),
        H=complex(sums[1, 1]),
        K=complex(np.conj(sums[1, 2])),
    )


def _check_site(occ: OccupiedSet, r: int) -> int:
    if not 0 <= r < occ.params.M:
        raise SiteOutOfRange(f"site {r} outside 0 <= r < {occ.params.M}")
    return int(r)


def _spin_components(occ: OccupiedSet) -> np.ndarray:
    """Per-state spinor components v = (sign * e^{-i theta}, 1), shape (ns, 2)."""
    v = np.empty((occ.k.size, 2), dtype=complex)
    v[:, UP] = occ.sign * occ.qphase
    v[:, DOWN] = 1.0
    return v


def single_particle_dm(occ: OccupiedSet, x: tuple[int, int], xp: tuple[int, int]) -> complex:
    """One-body density-matrix element rho1((r, s), (r', s')); spins 0=up, 1=down."""
    r, s = x
    rp, sp = xp
    r, rp = _check_site(occ, r), _check_site(occ, rp)
    if s not in (UP, DOWN) or sp not in (UP, DOWN):
        raise ValueError("spin index must be 0 (up) or 1 (down)")
    v = _spin_components(occ)
    weights = (np.conj(v[:, s]) * v[:, sp]).reshape(-1, 1)
    dist = np.array([(r - rp) * occ.params.a])
    total = weighted_phase_sums(occ.k, dist, weights)[0, 0]
    return complex(total / (2.0 * occ.params.length))


def pair_blocks(occ: OccupiedSet, r1: int, r2: int):
    """The four 2x2 site blocks of rho1 restricted to sites (r1, r2).

    Returns (Q11, Q12, Q21, Q22) with Qij[s, s'] = rho1((r_i, s), (r_j, s')).
    """
    r1, r2 = _check_site(occ, r1), _check_site(occ, r2)
    v = _spin_components(occ)
    # columns: v*_s v_s' flattened in (s, s') order
    weights = (np.conj(v)[:, :, None] * v[:, None, :]).reshape(-1, 4)
    d = (r1 - r2) * occ.params.a
    sums = weighted_phase_sums(occ.k, np.array([0.0, d, -d]), weights)
    sums = sums.reshape(3, 2, 2) / (2.0 * occ.params.length)
    q11, q12, q21 = sums
    return q11, q12, q21, q11
