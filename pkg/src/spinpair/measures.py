r"""Entanglement measures on the two-site and single-site spin matrices.

Reference spin states use the sigma_x eigenbasis |0> = (|u> - |d>)/sqrt(2)
(eigenvalue -1) and |1> = (|u> + |d>)/sqrt(2); the pair states are

    psi_s  = (|10> - |01>)/sqrt(2)      singlet
    psi_t1 = |00>
    psi_t2 = (|10> + |01>)/sqrt(2)
    psi_t3 = |11>

expressed below as vectors in the sigma_z product basis |uu>,|ud>,|du>,|dd>.
Entropies are natural-log (nats); divide by ln 2 for the ln2-normalized
values carried alongside in all outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotPSD
from .rdm import SpinDensityMatrix, ssdm

LN2 = math.log(2.0)

EIG_CLAMP_FLOOR = -1e-8

KET0 = np.array([1.0, -1.0]) / math.sqrt(2.0)
KET1 = np.array([1.0, 1.0]) / math.sqrt(2.0)

PSI_SINGLET = (np.kron(KET1, KET0) - np.kron(KET0, KET1)) / math.sqrt(2.0)
PSI_TRIPLET1 = np.kron(KET0, KET0)
PSI_TRIPLET2 = (np.kron(KET1, KET0) + np.kron(KET0, KET1)) / math.sqrt(2.0)
PSI_TRIPLET3 = np.kron(KET1, KET1)


def reference_states() -> dict[str, np.ndarray]:
    """The singlet/triplet vectors in the sigma_z product basis."""
    return {
        "singlet": PSI_SINGLET.copy(),
        "t1": PSI_TRIPLET1.copy(),
        "t2": PSI_TRIPLET2.copy(),
        "t3": PSI_TRIPLET3.copy(),
    }


@dataclass(frozen=True)
class MeasureSet:
    """All per-point diagnostics, entropies in nats."""

    f_singlet: float
    f_t1: float
    f_t2: float
    f_t3: float
    s_pair: float
    s_single: float
    mutual_information: float


def von_neumann_entropy(dm: SpinDensityMatrix, units: str = "nats") -> float:
    """S = -sum p ln p over the spectrum; negative dust within tolerance is 0."""
    eigs = np.linalg.eigvalsh(dm.entries)
    low = float(np.min(eigs))
    if low < EIG_CLAMP_FLOOR:
        raise NotPSD(low)
    eigs = np.clip(eigs, 0.0, None)
    positive = eigs[eigs > 0.0]
    s = float(-np.sum(positive * np.log(positive)))
    if units == "nats":
        return s
    if units == "ln2":
        return s / LN2
    raise ValueError("units must be 'nats' or 'ln2'")


def fidelities(pair: SpinDensityMatrix) -> tuple[float, float, float, float]:
    """(F_s, F_t1, F_t2, F_t3): overlaps <psi| rho |psi> with the reference states."""
    rho = pair.entries
    return tuple(
        float(np.real(psi @ rho @ psi))
        for psi in (PSI_SINGLET, PSI_TRIPLET1, PSI_TRIPLET2, PSI_TRIPLET3)
    )


def mutual_information(pair: SpinDensityMatrix, units: str = "nats") -> float:
    """I = S(spin1) + S(spin2) - S(pair)."""
    s1 = von_neumann_entropy(ssdm(pair, "spin1"), units)
    s2 = von_neumann_entropy(ssdm(pair, "spin2"), units)
    return s1 + s2 - von_neumann_entropy(pair, units)


def x_state_check(pair: SpinDensityMatrix, tol: float = 1e-9) -> tuple[bool, float]:
    """Whether only diagonal, anti-diagonal, and (1,2)<->(2,1) central entries survive.

    Returns (is_x_state, largest off-pattern magnitude).
    """
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(4), np.arange(4)] = True
    mask[np.arange(4), 3 - np.arange(4)] = True
    mask[1, 2] = mask[2, 1] = True
    defect = float(np.max(np.abs(pair.entries[~mask])))
    return defect <= tol, defect


def measure_set(pair: SpinDensityMatrix) -> MeasureSet:
    """Evaluate every diagnostic for one two-site matrix (entropies in nats)."""
    f_s, f_t1, f_t2, f_t3 = fidelities(pair)
    s_pair = von_neumann_entropy(pair)
    s1 = von_neumann_entropy(ssdm(pair, "spin1"))
    s2 = von_neumann_entropy(ssdm(pair, "spin2"))
    return MeasureSet(
        f_singlet=f_s,
        f_t1=f_t1,
        f_t2=f_t2,
        f_t3=f_t3,
        s_pair=s_pair,
        s_single=s1,
        mutual_information=s1 + s2 - s_pair,
    )
