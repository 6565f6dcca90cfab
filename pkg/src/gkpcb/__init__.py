"""Grid simulation of the cubic-phase T gate on finitely squeezed GKP states."""

from .analytics import fidelity_asymptotic, fidelity_closed_form, gaussian_integral, overlap_closed_form
from .binning import bin_decompose, qubit_density
from .ec import ec_bloch_trajectory, ec_qubit_average
from .gates import apply_cubic_T, apply_displacement, apply_fourier, apply_shear, t_phase_parity
from .gkp import LogicalLabel, SqueezingSpec, db_to_delta, delta_to_db, gkp_basis, grid_for, logical_state
from .grid import (
    Grid,
    WaveFunction,
    commensurate_grid,
    density,
    fold_density,
    inner_product,
    make_grid,
    self_dual_grid,
    to_momentum,
    to_position,
)
from .qubit import QubitDensityMatrix, bloch_vector, fidelity_to_magic
from .teleport import teleport_T

__version__ = "0.1.0"
