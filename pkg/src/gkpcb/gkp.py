"""Approximate square-lattice GKP states on a commensurate grid."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .grid import SQRT_PI, Grid, WaveFunction, commensurate_grid, inner_product

# amplitude envelope weights below this are dropped from the peak sum
ENVELOPE_CUTOFF = 1e-16
# allowed probability mass that falls outside the grid
TAIL_TOLERANCE = 1e-12
# a peak is evaluated out to this many widths from its centre
PEAK_HALF_WIDTH = 12.0
# refuse single-mode grids above this size (2**27 complex doubles is 2 GiB)
MAX_GRID_POINTS = 2**27


def db_to_delta(db: float) -> float:
    """Noise parameter for ``db`` decibels of squeezing: delta**2 = 10**(-db/10)."""
    return 10.0 ** (-db / 20.0)


def delta_to_db(delta: float) -> float:
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return -10.0 * math.log10(delta**2)


@dataclass(frozen=True)
class SqueezingSpec:
    """Per-peak noise (delta_x, delta_p) of an approximate GKP state."""

    delta_x: float
    delta_p: float

    def __post_init__(self):
        if not (self.delta_x > 0 and self.delta_p > 0):
            raise ValueError(f"deltas must be positive, got {self.delta_x}, {self.delta_p}")

    @classmethod
    def from_db(cls, db_x: float, db_p: float | None = None) -> SqueezingSpec:
        return cls(db_to_delta(db_x), db_to_delta(db_x if db_p is None else db_p))

    @classmethod
    def symmetric(cls, db: float) -> SqueezingSpec:
        return cls.from_db(db, db)

    # rounded so that values entered in dB read back unchanged
    @property
    def db_x(self) -> float:
        return round(delta_to_db(self.delta_x), 12)

    @property
    def db_p(self) -> float:
        return round(delta_to_db(self.delta_p), 12)

    def swapped(self) -> SqueezingSpec:
        return SqueezingSpec(self.delta_p, self.delta_x)


class LogicalLabel(Enum):
    ZERO = "zero"
    ONE = "one"
    PLUS = "plus"
    MINUS = "minus"
    MAGIC = "magic"

    @property
    def coefficients(self) -> tuple[complex, complex]:
        """Unnormalised logical amplitudes (c0, c1)."""
        return {
            LogicalLabel.ZERO: (1, 0),
            LogicalLabel.ONE: (0, 1),
            LogicalLabel.PLUS: (1, 1),
            LogicalLabel.MINUS: (1, -1),
            LogicalLabel.MAGIC: (1, cmath.exp(1j * math.pi / 4)),
        }[self]

    def qubit_vector(self) -> np.ndarray:
        v = np.array(self.coefficients, dtype=complex)
        return v / np.linalg.norm(v)


def _envelope_indices(parity: int | None, delta_p: float) -> np.ndarray:
    """Lattice indices n (peak at n*sqrt(pi)) with envelope weight above the cutoff."""
    n_max = int(math.ceil(math.sqrt(-2.0 * math.log(ENVELOPE_CUTOFF) / math.pi) / delta_p))
    n = np.arange(-n_max, n_max + 1)
    n = n[np.exp(-math.pi * n.astype(float) ** 2 * delta_p**2 / 2) >= ENVELOPE_CUTOFF]
    if parity is not None:
        n = n[np.mod(n, 2) == parity]
    return n


def envelope_tail_mass(parity: int | None, s: SqueezingSpec, g: Grid) -> float:
    """Fraction of the state's probability lying outside ``[-x_max, x_max)``."""
    n = _envelope_indices(parity, s.delta_p)
    w2 = np.exp(-math.pi * n.astype(float) ** 2 * s.delta_p**2)
    centres = n * SQRT_PI
    # |peak|^2 is normal with std delta_x/sqrt(2)
    lo = np.array([math.erfc((c + g.x_max) / s.delta_x) for c in centres]) / 2
    hi = np.array([math.erfc((g.x_max - c) / s.delta_x) for c in centres]) / 2
    return float(np.sum(w2 * (lo + hi)) / np.sum(w2))


def comb_state(
    lattice_indices, weights, delta_x: float, g: Grid, normalize: bool = True
) -> WaveFunction:
    """Sum of Gaussians ``w_n exp(-(x - n sqrt(pi))**2 / (2 delta_x**2))``."""
    x = g.points
    amp = np.zeros(g.n_points, dtype=complex)
    half = int(math.ceil(PEAK_HALF_WIDTH * delta_x / g.dx)) + 1
    for n, w in zip(lattice_indices, weights):
        c = n * SQRT_PI
        j0 = int(round((c + g.x_max) / g.dx))
        lo, hi = max(0, j0 - half), min(g.n_points, j0 + half + 1)
        if lo >= hi:
            continue
        amp[lo:hi] += w * np.exp(-((x[lo:hi] - c) ** 2) / (2 * delta_x**2))
    psi = WaveFunction(g, amp)
    return psi.normalized() if normalize else psi


def gkp_basis(mu: int, s: SqueezingSpec, g: Grid) -> WaveFunction:
    """Normalised |mu_L>: Gaussians of width delta_x at (2k+mu) sqrt(pi), envelope exp(-pi (2k+mu)^2 delta_p^2 / 2)."""
    if mu not in (0, 1):
        raise ValueError(f"mu must be 0 or 1, got {mu}")
    if not g.commensurate:
        raise ValueError("GKP states need a grid commensurate with sqrt(pi)")
    tail = envelope_tail_mass(mu, s, g)
    if tail > TAIL_TOLERANCE:
        raise ValueError(
            f"grid x_max={g.x_max:.4g} truncates {tail:.2e} of the envelope "
            f"(tolerance {TAIL_TOLERANCE:g}); use a wider grid"
        )
    n = _envelope_indices(mu, s.delta_p)
    w = np.exp(-math.pi * n.astype(float) ** 2 * s.delta_p**2 / 2)
    return comb_state(n, w, s.delta_x, g)


def logical_state(label: LogicalLabel, s: SqueezingSpec, g: Grid) -> WaveFunction:
    c0, c1 = label.coefficients
    if c1 == 0:
        return gkp_basis(0, s, g)
    if c0 == 0:
        return gkp_basis(1, s, g)
    zero, one = gkp_basis(0, s, g), gkp_basis(1, s, g)
    psi = zero.with_amplitudes(c0 * zero.amplitudes + c1 * one.amplitudes)
    # normalised from the actual overlap of the two codewords
    return psi.normalized()


def _next_pow2(x: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(x, 1.0))))


def grid_for(
    s: SqueezingSpec,
    samples_per_sigma: float = 6.0,
    min_samples_per_cell: int = 16,
    tail_tolerance: float = TAIL_TOLERANCE,
) -> Grid:
    """Smallest power-of-two commensurate grid resolving and containing ``s``.

    ``dx <= delta_x / samples_per_sigma`` and the envelope mass outside the
    grid is below ``tail_tolerance`` for both codewords.
    """
    if not tail_tolerance > 0:
        raise ValueError(f"tail_tolerance must be positive, got {tail_tolerance}")
    m = max(min_samples_per_cell, _next_pow2(SQRT_PI * samples_per_sigma / s.delta_x))
    cells = 1
    while True:
        if 2 * cells * m > MAX_GRID_POINTS:
            raise ValueError(f"{s} needs more than {MAX_GRID_POINTS} grid points")
        g = commensurate_grid(cells, m)
        if max(envelope_tail_mass(mu, s, g) for mu in (0, 1)) <= tail_tolerance:
            return g
        cells *= 2


def fit_central_peak_variance(psi: WaveFunction, mu: int = 0) -> float:
    """Variance of |psi|^2 restricted to the sqrt(pi)-wide bin around ``mu*sqrt(pi)``."""
    x = psi.coordinates
    d = np.abs(psi.amplitudes) ** 2
    c = mu * SQRT_PI
    sel = (x >= c - SQRT_PI / 2) & (x < c + SQRT_PI / 2)
    w = d[sel] / d[sel].sum()
    mean = np.sum(w * x[sel])
    return float(np.sum(w * (x[sel] - mean) ** 2))


def codeword_overlap(s: SqueezingSpec, g: Grid) -> complex:
    return inner_product(gkp_basis(0, s, g), gkp_basis(1, s, g))
