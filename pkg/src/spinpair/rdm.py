r"""Two-site and single-site spin density matrices.

The two-spin density matrix (TSDM) for sites (r1, r2) lives in the sigma_z
product basis |uu>, |ud>, |du>, |dd> and is built two independent ways:

* tsdm_wick: pair determinants of one-body density-matrix blocks,

      T[(s1 s2), (s1' s2')] = 1/2 [ rho1(r1 s1, r1 s1') rho1(r2 s2, r2 s2')
                                  - rho1(r1 s1, r2 s2') rho1(r2 s2, r1 s1') ],

  the construction used everywhere in production;

* tsdm_closed_form: the explicit matrix in the scalar correlators
  (m, A, G, H, K), kept for cross-validation of the Wick path.

Both are normalized by their raw trace, which is retained as norm_raw.
The single-spin matrix (SSDM) is the partial trace over either site.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlators import CorrelatorSet, correlator_set, pair_blocks
from .errors import NotHermitian, NotPSD, TooFewElectrons, TraceNotOne, VanishingTrace
from .fermisea import OccupiedSet

BASIS_PAIR = "sigma_z product |uu>, |ud>, |du>, |dd>"
BASIS_SINGLE = "sigma_z |u>, |d>"

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = -1e-10
VANISHING_TRACE_REL = 1e-12


@dataclass(frozen=True, eq=False)
class SpinDensityMatrix:
    """A normalized spin density matrix with its construction context."""

    entries: np.ndarray
    basis: str
    norm_raw: float
    r1: int | None = None
    r2: int | None = None

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    ok: bool


def _normalized(raw: np.ndarray, basis: str, r1, r2, scale: float) -> SpinDensityMatrix:
    trace = float(np.real(np.trace(raw)))
    if trace <= VANISHING_TRACE_REL * scale:
        raise VanishingTrace(
            "no two-particle spin weight at this site configuration "
            f"(raw trace {trace:.3e})"
        )
    return SpinDensityMatrix(
        entries=raw / trace, basis=basis, norm_raw=trace, r1=r1, r2=r2
    )


def tsdm_wick(occ: OccupiedSet, r1: int, r2: int) -> SpinDensityMatrix:
    """Two-site spin density matrix from one-body blocks (the production path)."""
    if occ.n_electrons < 2:
        raise TooFewElectrons("a two-spin density matrix needs at least 2 electrons")
    q11, q12, q21, q22 = pair_blocks(occ, r1, r2)
    raw = 0.5 * (
        np.einsum("ac,bd->abcd", q11, q22) - np.einsum("ad,bc->abcd", q12, q21)
    ).reshape(4, 4)
    scale = (occ.n_electrons / (2.0 * occ.params.length)) ** 2
    return _normalized(raw, BASIS_PAIR, int(r1), int(r2), scale)


def tsdm_closed_form(corr: CorrelatorSet) -> SpinDensityMatrix:
    """Two-site spin density matrix assembled from the scalar correlators."""
    m, A, G, H, K = corr.m, corr.A, corr.G, corr.H, corr.K
    Hc, Kc = np.conj(H), np.conj(K)
    mat = np.array(
        [
            [m**2 - G**2, -m * A + G * H, -m * A + G * K, A**2 - H * K],
            [-m * A + G * Hc, m**2 - H * Hc, A**2 - G**2, -m * A + G * H],
            [-m * A + G * Kc, A**2 - G**2, m**2 - K * Kc, -m * A + G * K],
            [A**2 - Hc * Kc, -m * A + G * H, -m * A + G * Kc, m**2 - G**2],
        ],
        dtype=complex,
    )
    two_l = 2.0 * corr.params.length
    raw = 0.5 * mat / two_l**2
    scale = (m / two_l) ** 2
    return _normalized(raw, BASIS_PAIR, None, None, scale)


def ssdm(pair: SpinDensityMatrix, which: str = "spin1") -> SpinDensityMatrix:
    """Partial trace of a two-site matrix over the other site's spin."""
    if pair.dim != 4:
        raise ValueError("ssdm expects a 4x4 two-site density matrix")
    t = pair.entries.reshape(2, 2, 2, 2)
    if which == "spin1":
        reduced = np.einsum("abcb->ac", t)
    elif which == "spin2":
        reduced = np.einsum("abac->bc", t)
    else:
        raise ValueError("which must be 'spin1' or 'spin2'")
    trace = float(np.real(np.trace(reduced)))
    return SpinDensityMatrix(
        entries=reduced / trace, basis=BASIS_SINGLE, norm_raw=trace,
        r1=pair.r1, r2=pair.r2,
    )


def ssdm_closed_form(corr: CorrelatorSet) -> SpinDensityMatrix:
    """Site-1 marginal assembled directly from the scalar correlators."""
    m, A, G, H, K = corr.m, corr.A, corr.G, corr.H, corr.K
    off = -2.0 * m * A + G * (K + H)
    mat = np.array(
        [[2.0 * m**2 - G**2 - H**2, off], [off, 2.0 * m**2 - G**2 - K**2]],
        dtype=complex,
    )
    two_l = 2.0 * corr.params.length
    raw = 0.5 * mat / two_l**2
    scale = (m / two_l) ** 2
    return _normalized(raw, BASIS_SINGLE, None, None, scale)


def validate(dm: SpinDensityMatrix, raise_on_fail: bool = True) -> ValidationReport:
    """Check Hermiticity, unit trace, and positive semidefiniteness."""
    mat = dm.entries
    herm = float(np.max(np.abs(mat - mat.conj().T)))
    trace = float(np.abs(np.trace(mat) - 1.0))
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))))
    ok = herm <= HERMITICITY_TOL and trace <= TRACE_TOL and min_eig >= PSD_TOL
    report = ValidationReport(herm, trace, min_eig, ok)
    if raise_on_fail and not ok:
        if herm > HERMITICITY_TOL:
            raise NotHermitian(herm)
        if trace > TRACE_TOL:
            raise TraceNotOne(trace)
        raise NotPSD(min_eig)
    return report
