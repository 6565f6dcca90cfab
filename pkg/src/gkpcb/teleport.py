"""T gate by magic-state gate teleportation on a two-mode grid.

Circuit: data (mode 1) controls a CSUM exp(-i x1 p2) onto a magic-state
ancilla (mode 2); the ancilla is measured in x; on an odd outcome bit the
data gets the logical S correction exp(i x^2 / 2). At the qubit level
outcome 0 leaves T|psi> and outcome 1 leaves T^dagger|psi>, and S T^dagger = T.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ec import ec_moments
from .gates import apply_shear
from .gkp import LogicalLabel, SqueezingSpec, grid_for, logical_state
from .grid import POSITION, SQRT_PI, Grid, WaveFunction, _alternating, commensurate_grid
from .qubit import QubitDensityMatrix

# columns with less probability than this are dropped from the ensemble
MIN_OUTCOME_WEIGHT = 1e-16


@dataclass(frozen=True)
class TwoModeWaveFunction:
    grid1: Grid
    grid2: Grid
    amplitudes: np.ndarray
    representations: tuple[str, str] = (POSITION, POSITION)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (self.grid1.n_points, self.grid2.n_points):
            raise ValueError(f"amplitude shape {a.shape} does not match the grids")
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid1.dx * self.grid2.dx)

    def marginal(self, mode: int) -> np.ndarray:
        """Position density of one mode with the other integrated out."""
        p = np.abs(self.amplitudes) ** 2
        if mode == 1:
            return p.sum(axis=1) * self.grid2.dx
        return p.sum(axis=0) * self.grid1.dx


@dataclass(frozen=True)
class Outcome:
    x2: float
    weight: float
    state: WaveFunction


@dataclass(frozen=True)
class MeasurementEnsemble:
    outcomes: list[Outcome]

    @property
    def weights(self) -> np.ndarray:
        return np.array([o.weight for o in self.outcomes])

    def __len__(self):
        return len(self.outcomes)


def _require_positions(psi: TwoModeWaveFunction) -> None:
    if psi.representations != (POSITION, POSITION):
        raise ValueError("both modes must be in the position representation")


def tensor(psi1: WaveFunction, psi2: WaveFunction) -> TwoModeWaveFunction:
    if psi1.representation != POSITION or psi2.representation != POSITION:
        raise ValueError("tensor needs position-representation states")
    return TwoModeWaveFunction(psi1.grid, psi2.grid, np.outer(psi1.amplitudes, psi2.amplitudes))


def _csum_steps(grid1: Grid, grid2: Grid) -> np.ndarray:
    steps = grid1.points / grid2.dx
    k = np.round(steps)
    if np.max(np.abs(steps - k)) > 1e-9:
        raise ValueError("CSUM needs mode-1 grid points on the mode-2 lattice")
    return k.astype(np.int64)


def apply_csum(psi: TwoModeWaveFunction) -> TwoModeWaveFunction:
    """exp(-i x1 p2): Psi(x1, x2) -> Psi(x1, x2 - x1), periodic in x2.

    Every x1 is a whole number of mode-2 steps, so each row is an exact
    index roll; this equals the momentum-space phase exp(-i x1 p2) on the grid.
    """
    _require_positions(psi)
    steps = _csum_steps(psi.grid1, psi.grid2)
    n2 = psi.grid2.n_points
    cols = (np.arange(n2)[None, :] - steps[:, None]) % n2
    out = np.take_along_axis(psi.amplitudes, cols, axis=1)
    return TwoModeWaveFunction(psi.grid1, psi.grid2, out)


def apply_csum_fourier(psi: TwoModeWaveFunction) -> TwoModeWaveFunction:
    """CSUM by transforming mode 2 to momentum and multiplying by exp(-i x1 p2)."""
    _require_positions(psi)
    _csum_steps(psi.grid1, psi.grid2)
    g1, g2 = psi.grid1, psi.grid2
    sign = _alternating(g2.n_points)
    mom = sign * np.fft.fft(psi.amplitudes * sign, axis=1) * (g2.dx / math.sqrt(2 * math.pi))
    mom = mom * np.exp(-1j * np.outer(g1.points, g2.momentum_points))
    scale = g2.dp * g2.n_points / math.sqrt(2 * math.pi)
    out = sign * np.fft.ifft(mom * sign, axis=1) * scale
    return TwoModeWaveFunction(g1, g2, out, (POSITION, POSITION))


def measure_mode2(psi: TwoModeWaveFunction) -> MeasurementEnsemble:
    """Ideal x homodyne of mode 2 resolved at the grid spacing."""
    _require_positions(psi)
    g1, g2 = psi.grid1, psi.grid2
    col_mass = np.sum(np.abs(psi.amplitudes) ** 2, axis=0) * g1.dx
    weights = col_mass * g2.dx
    total = weights.sum()
    outcomes = []
    for j in np.flatnonzero(weights / total >= MIN_OUTCOME_WEIGHT):
        state = WaveFunction(g1, psi.amplitudes[:, j] / math.sqrt(col_mass[j]))
        outcomes.append(Outcome(float(g2.points[j]), float(weights[j] / total), state))
    return MeasurementEnsemble(outcomes)


def outcome_bit(x2: float, grid: Grid) -> int:
    """Parity of the nearest multiple of sqrt(pi); bin edges go to the upper bin."""
    return int(_outcome_bits(grid)[grid.index_of(x2)])


def _outcome_bits(grid: Grid) -> np.ndarray:
    m = grid.samples_per_cell
    k = np.arange(grid.n_points) - grid.origin_index
    return np.floor_divide(k + m // 2, m) % 2


def two_mode_grid(s: SqueezingSpec, n_points: int = 1024, min_samples_per_sigma: float = 1.5) -> Grid:
    """Teleportation grid with the envelope contained and at least the given resolution.

    The width comes from the envelope tail tolerance; ``n_points`` is raised
    (by powers of two) only when it would leave fewer than
    ``min_samples_per_sigma`` samples per peak width.
    """
    cells = grid_for(s, samples_per_sigma=1.0, min_samples_per_cell=2).cells
    m_min = math.ceil(min_samples_per_sigma * SQRT_PI / s.delta_x)
    while n_points // (2 * cells) < max(m_min, 2):
        n_points *= 2
    return commensurate_grid(cells, n_points // (2 * cells))


def _average_columns(columns, g, bits, weights, shear, k_max) -> np.ndarray:
    """Weighted sum of normalised EC density matrices of outcome columns."""
    norms = np.sqrt(np.sum(np.abs(columns) ** 2, axis=0) * g.dx)
    cols = columns / norms
    cols = np.where(bits[None, :] == 1, cols * shear[:, None], cols)
    r00, r11, r01 = ec_moments(cols, g, k_max)
    tr = (r00 + r11).real
    w = weights
    return np.array(
        [[np.sum(w * r00.real / tr), np.sum(w * r01 / tr)], [np.sum(w * np.conj(r01) / tr), np.sum(w * r11.real / tr)]]
    )


def teleport_T(
    psi_in: WaveFunction,
    ancilla: SqueezingSpec | WaveFunction,
    k_max: int | None = None,
    method: str = "auto",
    block: int = 256,
) -> QubitDensityMatrix:
    """Outcome-averaged, EC-decoded logical output of the teleported T gate.

    ``method="dense"`` runs tensor -> CSUM -> measure_mode2 on the full
    two-mode array; ``"streaming"`` forms each outcome column
    psi_in(x1) * magic(x2 - x1) directly, in O(n_points) memory per column.
    ``"auto"`` streams above 2048 points. ``ancilla`` is either the
    squeezing of a freshly built magic state or a prepared state on the
    input grid.
    """
    g = psi_in.grid
    if not g.commensurate:
        raise ValueError("teleport_T needs a commensurate grid")
    if method == "auto":
        method = "dense" if g.n_points <= 2048 else "streaming"
    if isinstance(ancilla, WaveFunction):
        if ancilla.grid != g or ancilla.representation != POSITION:
            raise ValueError("ancilla must be a position-representation state on the input grid")
        magic = ancilla
    else:
        magic = logical_state(LogicalLabel.MAGIC, ancilla, g)
    bits_all = _outcome_bits(g)
    shear = np.exp(1j * _shear_phase(g))
    if method == "dense":
        ens = measure_mode2(apply_csum(tensor(psi_in, magic)))
        cols = np.stack([o.state.amplitudes for o in ens.outcomes], axis=1)
        bits = np.array([bits_all[g.index_of(o.x2)] for o in ens.outcomes])
        rho = _average_columns(cols, g, bits, ens.weights, shear, k_max)
        return QubitDensityMatrix(rho / np.trace(rho).real)
    if method != "streaming":
        raise ValueError(f"unknown method {method!r}")
    n = g.n_points
    steps = _csum_steps(g, g)
    a_in, a_anc = psi_in.amplitudes, magic.amplitudes
    weights = np.empty(n)
    for j0 in range(0, n, block):
        js = np.arange(j0, min(n, j0 + block))
        idx = (js[None, :] - steps[:, None]) % n
        weights[js] = np.sum(np.abs(a_in[:, None] * a_anc[idx]) ** 2, axis=0)
    weights /= weights.sum()
    keep = np.flatnonzero(weights >= MIN_OUTCOME_WEIGHT)
    rho = np.zeros((2, 2), dtype=complex)
    for b0 in range(0, len(keep), block):
        js = keep[b0 : b0 + block]
        idx = (js[None, :] - steps[:, None]) % n
        cols = a_in[:, None] * a_anc[idx]
        rho += _average_columns(cols, g, bits_all[js], weights[js], shear, k_max)
    return QubitDensityMatrix(rho / np.trace(rho).real)


def _shear_phase(g: Grid) -> np.ndarray:
    probe = WaveFunction(g, np.ones(g.n_points))
    return np.angle(apply_shear(probe, 1).amplitudes)
