"""Pure numpy implementation of the hot phase-sum kernel.

Same contract as the compiled spinpair._core module; numpy's pairwise
summation plays the role of the compensated accumulation used there for
large state counts.
"""

import numpy as np


def weighted_phase_sums(k, dists, weights):
    """out[d, m] = sum_j exp(i * k[j] * dists[d]) * weights[j, m].

    Parameters
    ----------
    k : (ns,) float64 momenta of the summed states, in deterministic order.
    dists : (nd,) float64 physical displacements multiplying each momentum.
    weights : (ns, nw) complex128 per-state weight columns.
    """
    k = np.ascontiguousarray(k, dtype=np.float64)
    dists = np.ascontiguousarray(dists, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    phases = np.exp(1j * np.multiply.outer(dists, k))
    return phases @ weights
