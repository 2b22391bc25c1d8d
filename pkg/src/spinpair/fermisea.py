"""Zero-temperature occupation of the chain's Bloch states.

States are filled in ascending energy order.  Degenerate shells (levels equal
within 1e-9 * t) are atomic: a requested electron count that would split one
raises MidShellError instead of breaking the +-k or band symmetries of the
ground state.  Both chemical-potential conventions are carried on the result:
the highest occupied level and the midpoint to the lowest empty level.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import MidShellError, TooFewElectrons
from .model import Band, BlochState, ModelParams, dispersion, momentum_grid, phase_factor, spinor_phase

SHELL_TOL_FACTOR = 1e-9


@functools.lru_cache(maxsize=32)
def _spectrum(params: ModelParams):
    """All 2M states sorted by (energy, n, band), plus atomic-shell boundaries."""
    n = np.concatenate([grid := np.arange(-(params.M // 2), (params.M + 1) // 2), grid])
    k = 2.0 * np.pi * n / (params.M * params.a)
    lo, hi = dispersion(params, k[: params.M])
    energy = np.concatenate([lo, hi])
    sign = np.concatenate([np.full(params.M, -1.0), np.full(params.M, 1.0)])

    order = np.lexsort((sign, n, energy))
    energy, n, k, sign = energy[order], n[order], k[order], sign[order]

    tol = SHELL_TOL_FACTOR * params.t
    new_shell = np.ones(2 * params.M, dtype=bool)
    new_shell[1:] = np.diff(energy) > tol
    shell_start = np.flatnonzero(new_shell)
    valid_counts = np.append(shell_start[1:], 2 * params.M)

    return {
        "energy": energy,
        "n": n.astype(np.int64),
        "k": k,
        "sign": sign,
        "valid_counts": valid_counts,
    }


@dataclass(frozen=True, eq=False)
class OccupiedSet:
    """A filled Fermi sea: which Bloch states are occupied and at what filling.

    Array fields are ordered by (grid index n, band with lower first); every
    sum over the sea uses that order, so results are run-to-run reproducible.
    """

    params: ModelParams
    n_electrons: int
    delta: float
    mu_highest_occupied: float
    mu_midgap: float
    count_lower: int
    count_upper: int
    k: np.ndarray = field(repr=False)
    sign: np.ndarray = field(repr=False)
    qphase: np.ndarray = field(repr=False)
    n: np.ndarray = field(repr=False)
    energy: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)
    degenerate: np.ndarray = field(repr=False)

    @functools.cached_property
    def states(self) -> tuple[BlochState, ...]:
        """Occupied states materialized as BlochState records."""
        out = []
        for i in range(self.n_electrons):
            band = Band.LOWER if self.sign[i] < 0 else Band.UPPER
            spinor = np.array([self.sign[i] * self.qphase[i], 1.0], dtype=complex)
            spinor /= np.sqrt(2.0)
            out.append(
                BlochState(
                    n=int(self.n[i]),
                    k=float(self.k[i]),
                    band=band,
                    energy=float(self.energy[i]),
                    theta=float(self.theta[i]),
                    spinor=spinor,
                    degenerate=bool(self.degenerate[i]),
                )
            )
        return tuple(out)


def valid_electron_counts(params: ModelParams) -> np.ndarray:
    """Electron counts that close a degenerate shell, ascending."""
    return _spectrum(params)["valid_counts"].copy()


def nearest_valid_count(params: ModelParams, n_electrons: int) -> int:
    """Closest shell-closing count >= 2; ties resolve to the smaller count."""
    counts = _spectrum(params)["valid_counts"]
    counts = counts[counts >= 2]
    best = counts[np.argmin(np.abs(counts - n_electrons))]
    return int(best)


def _assemble(params: ModelParams, n_electrons: int) -> OccupiedSet:
    spec = _spectrum(params)
    energy = spec["energy"]
    occ = slice(0, n_electrons)

    mu_high = float(energy[n_electrons - 1])
    if n_electrons < 2 * params.M:
        mu_mid = 0.5 * (mu_high + float(energy[n_electrons]))
    else:
        mu_mid = mu_high

    n_occ = spec["n"][occ]
    sign_occ = spec["sign"][occ]
    order = np.lexsort((sign_occ, n_occ))
    n_occ, sign_occ = n_occ[order], sign_occ[order]
    k_occ = spec["k"][occ][order]
    e_occ = energy[occ][order]

    theta, z = spinor_phase(params, k_occ)
    return OccupiedSet(
        params=params,
        n_electrons=n_electrons,
        delta=n_electrons / params.M,
        mu_highest_occupied=mu_high,
        mu_midgap=mu_mid,
        count_lower=int(np.sum(sign_occ < 0)),
        count_upper=int(np.sum(sign_occ > 0)),
        k=k_occ,
        sign=sign_occ,
        qphase=phase_factor(params, k_occ),
        n=n_occ,
        energy=e_occ,
        theta=np.asarray(theta, dtype=float),
        degenerate=(np.asarray(z) == 0),
    )


def occupy_by_count(params: ModelParams, n_electrons: int) -> OccupiedSet:
    """Fill exactly n_electrons states; the count must close a shell."""
    if n_electrons < 2:
        raise TooFewElectrons(f"need at least 2 electrons, got {n_electrons}")
    if n_electrons > 2 * params.M:
        raise ValueError(f"at most {2 * params.M} electrons fit on {params.M} sites")
    counts = _spectrum(params)["valid_counts"]
    if n_electrons not in counts:
        below = counts[counts < n_electrons]
        above = counts[counts > n_electrons]
        raise MidShellError(
            n_electrons,
            int(below[-1]) if below.size else None,
            int(above[0]) if above.size else None,
        )
    return _assemble(params, n_electrons)


def occupy_by_filling(params: ModelParams, delta: float) -> OccupiedSet:
    """Fill round(delta * M) electrons (round-half-to-even), shells atomic."""
    if not 0.0 < delta <= 2.0:
        raise ValueError(f"filling delta must lie in (0, 2], got {delta}")
    return occupy_by_count(params, round(delta * params.M))


def occupy_by_mu(params: ModelParams, mu: float) -> OccupiedSet:
    """Occupy every state with energy <= mu, closing the boundary shell."""
    spec = _spectrum(params)
    energy = spec["energy"]
    count = int(np.searchsorted(energy, mu, side="right"))
    tol = SHELL_TOL_FACTOR * params.t
    while count < energy.size and energy[count] - energy[count - 1] <= tol and count > 0:
        count += 1
    if count < 2:
        raise TooFewElectrons(f"mu = {mu} occupies {count} states; need at least 2")
    return _assemble(params, count)


def band_onset_mu(params: ModelParams) -> float:
    """Lowest upper-band energy on the momentum grid."""
    _, hi = dispersion(params, momentum_grid(params))
    return float(np.min(hi))
