"""Two-site spin density matrices of a 1D Fermi sea with Zeeman and Rashba couplings."""

__version__ = "0.1.0"

from .backend import available_backends, backend_name
from .correlators import CorrelatorSet, correlator_set, pair_blocks, single_particle_dm
from .errors import (
    DensityMatrixDefect,
    IntractableSize,
    MidShellError,
    NotHermitian,
    NotPSD,
    SiteOutOfRange,
    SpinPairError,
    TooFewElectrons,
    TraceNotOne,
    VanishingTrace,
)
from .fermisea import (
    OccupiedSet,
    band_onset_mu,
    nearest_valid_count,
    occupy_by_count,
    occupy_by_filling,
    occupy_by_mu,
    valid_electron_counts,
)
from .measures import (
    LN2,
    MeasureSet,
    fidelities,
    measure_set,
    mutual_information,
    reference_states,
    von_neumann_entropy,
    x_state_check,
)
from .model import (
    Band,
    BlochState,
    ModelParams,
    bloch_hamiltonian,
    bloch_spinor,
    bloch_state,
    dispersion,
    momentum_grid,
    phase_factor,
    spinor_phase,
    zeeman_rashba_field,
)
from .oracle import (
    FirstQuantizedState,
    from_fermi_sea,
    from_real_space,
    oracle_tsdm,
    real_space_hamiltonian,
)
from .rdm import (
    SpinDensityMatrix,
    ValidationReport,
    ssdm,
    ssdm_closed_form,
    tsdm_closed_form,
    tsdm_wick,
    validate,
)
from .sweeps import SweepResult, heatmap, point_measures, sweep_distance, sweep_mu, write_csv
