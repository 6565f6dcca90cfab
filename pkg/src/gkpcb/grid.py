"""Uniform position grids, sampled wavefunctions and probability densities.

Units: hbar = 1, [x, p] = i, vacuum variance 1/2. Amplitudes are stored as
samples of the continuous wavefunction, so integrals are sums times the
grid spacing.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SQRT_PI = math.sqrt(math.pi)

POSITION = "position"
MOMENTUM = "momentum"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid:
    """Periodic 1-D lattice ``x_j = -x_max + j * dx`` for ``j < n_points``.

    ``cells`` and ``samples_per_cell`` are set for grids commensurate with
    sqrt(pi): ``x_max = cells * sqrt(pi)`` and ``dx = sqrt(pi) / samples_per_cell``.
    """

    x_max: float
    n_points: int
    cells: int | None = None
    samples_per_cell: int | None = None

    def __post_init__(self):
        if not self.x_max > 0:
            raise ValueError(f"x_max must be positive, got {self.x_max}")
        if not _is_power_of_two(self.n_points) or self.n_points < 16:
            raise ValueError(f"n_points must be a power of two >= 16, got {self.n_points}")
        if (self.cells is None) != (self.samples_per_cell is None):
            raise ValueError("cells and samples_per_cell must be given together")
        if self.cells is not None and 2 * self.cells * self.samples_per_cell != self.n_points:
            raise ValueError("commensurate grid needs n_points = 2 * cells * samples_per_cell")

    @property
    def dx(self) -> float:
        if self.commensurate:
            return SQRT_PI / self.samples_per_cell
        return 2.0 * self.x_max / self.n_points

    @property
    def commensurate(self) -> bool:
        return self.cells is not None

    @property
    def points(self) -> np.ndarray:
        return -self.x_max + np.arange(self.n_points) * self.dx

    @property
    def origin_index(self) -> int:
        """Index of x = 0."""
        return self.n_points // 2

    @property
    def p_max(self) -> float:
        return math.pi / self.dx

    @property
    def dp(self) -> float:
        return 2.0 * math.pi / (self.n_points * self.dx)

    @property
    def momentum_points(self) -> np.ndarray:
        return -self.p_max + np.arange(self.n_points) * self.dp

    @property
    def self_dual(self) -> bool:
        return math.isclose(self.dp, self.dx, rel_tol=1e-12)

    def index_of(self, x: float) -> int:
        """Grid index of ``x``; raises if ``x`` is not a grid point."""
        j = (x + self.x_max) / self.dx
        k = int(round(j))
        if abs(j - k) > 1e-9 or not 0 <= k < self.n_points:
            raise ValueError(f"{x} is not a point of this grid")
        return k


def make_grid(x_max: float, n_points: int, commensurate: bool = False) -> Grid:
    """Build a grid; with ``commensurate`` snap x_max to a multiple of sqrt(pi).

    >>> make_grid(1.0, 16).dx
    0.125
    """
    if not _is_power_of_two(n_points) or n_points < 16:
        raise ValueError(f"n_points must be a power of two >= 16, got {n_points}")
    if not x_max > 0:
        raise ValueError(f"x_max must be positive, got {x_max}")
    if not commensurate:
        return Grid(float(x_max), n_points)
    cells = max(1, int(round(x_max / SQRT_PI)))
    if (n_points // 2) % cells:
        raise ValueError(
            f"no integer samples per sqrt(pi) for {n_points} points over {cells} cells"
        )
    return commensurate_grid(cells, n_points // (2 * cells))


def commensurate_grid(cells: int, samples_per_cell: int) -> Grid:
    """Grid with ``x_max = cells*sqrt(pi)`` and ``dx = sqrt(pi)/samples_per_cell``."""
    return Grid(cells * SQRT_PI, 2 * cells * samples_per_cell, cells, samples_per_cell)


def self_dual_grid(samples_per_cell: int) -> Grid:
    """Commensurate grid whose momentum lattice equals its position lattice.

    Self-duality (dp == dx) forces ``n = 2 m**2`` and ``x_max = m sqrt(pi)``
    for ``m`` samples per sqrt(pi), so ``m`` must be a power of two.
    """
    return commensurate_grid(samples_per_cell, samples_per_cell)


@dataclass(frozen=True)
class WaveFunction:
    """Pure single-mode state sampled on ``grid``.

    In the momentum representation the samples live on
    ``grid.momentum_points``; the position grid is kept as the reference.
    """

    grid: Grid
    amplitudes: np.ndarray
    representation: str = POSITION

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.shape != (self.grid.n_points,):
            raise ValueError(f"expected {self.grid.n_points} amplitudes, got shape {a.shape}")
        if self.representation not in (POSITION, MOMENTUM):
            raise ValueError(f"unknown representation {self.representation!r}")
        object.__setattr__(self, "amplitudes", _frozen(a))

    @property
    def spacing(self) -> float:
        return self.grid.dx if self.representation == POSITION else self.grid.dp

    @property
    def coordinates(self) -> np.ndarray:
        return self.grid.points if self.representation == POSITION else self.grid.momentum_points

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.spacing)

    def normalized(self) -> WaveFunction:
        n2 = self.norm2()
        if not n2 > 0:
            raise ValueError("cannot normalize a zero state")
        return self.with_amplitudes(self.amplitudes / math.sqrt(n2))

    def with_amplitudes(self, amplitudes, representation: str | None = None) -> WaveFunction:
        return WaveFunction(self.grid, amplitudes, representation or self.representation)

    def to_csv(self, path) -> None:
        axis = "x" if self.representation == POSITION else "p"
        _write_columns(
            path,
            [axis, "re", "im"],
            [self.coordinates, self.amplitudes.real, self.amplitudes.imag],
        )


def _check_compatible(phi: WaveFunction, psi: WaveFunction) -> None:
    if phi.grid != psi.grid:
        raise ValueError("wavefunctions live on different grids")
    if phi.representation != psi.representation:
        raise ValueError("wavefunctions are in different representations")


def inner_product(phi: WaveFunction, psi: WaveFunction) -> complex:
    """<phi|psi> by quadrature on the shared grid."""
    _check_compatible(phi, psi)
    return complex(np.vdot(phi.amplitudes, psi.amplitudes) * phi.spacing)


def _alternating(n: int) -> np.ndarray:
    return np.where(np.arange(n) % 2 == 0, 1.0, -1.0)


def to_momentum(psi: WaveFunction) -> WaveFunction:
    """Unitary transform with kernel ``exp(-i p x) / sqrt(2 pi)``.

    With ``x_j = -x_max + j dx`` and ``p_k = -pi/dx + k dp`` the kernel
    factorises into a DFT bracketed by (-1)^j and (-1)^k; the global phase
    ``exp(-i pi n / 2)`` is 1 for the power-of-two sizes used here.
    """
    if psi.representation != POSITION:
        raise ValueError("to_momentum needs a position-representation state")
    g = psi.grid
    sign = _alternating(g.n_points)
    out = sign * np.fft.fft(sign * psi.amplitudes) * (g.dx / math.sqrt(2 * math.pi))
    return psi.with_amplitudes(out, MOMENTUM)


def to_position(psi: WaveFunction) -> WaveFunction:
    if psi.representation != MOMENTUM:
        raise ValueError("to_position needs a momentum-representation state")
    g = psi.grid
    sign = _alternating(g.n_points)
    scale = g.dp * g.n_points / math.sqrt(2 * math.pi)
    out = sign * np.fft.ifft(sign * psi.amplitudes) * scale
    return psi.with_amplitudes(out, POSITION)


@dataclass(frozen=True)
class DensityProfile:
    """Probability density per unit length sampled at ``points``."""

    points: np.ndarray
    values: np.ndarray
    axis: str = "x"

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if p.shape != v.shape or p.ndim != 1 or len(p) < 2:
            raise ValueError("points and values must be matching 1-D arrays")
        object.__setattr__(self, "points", _frozen(p))
        object.__setattr__(self, "values", _frozen(v))

    @property
    def spacing(self) -> float:
        return float(self.points[1] - self.points[0])

    def total(self) -> float:
        return float(np.sum(self.values) * self.spacing)

    def to_csv(self, path) -> None:
        _write_columns(path, [self.axis, "value"], [self.points, self.values])


def density(psi: WaveFunction) -> DensityProfile:
    axis = "x" if psi.representation == POSITION else "p"
    return DensityProfile(psi.coordinates, np.abs(psi.amplitudes) ** 2, axis)


def fold_density(d: DensityProfile, period: float) -> DensityProfile:
    """Sum the density over translates by ``period``; output covers [-period/2, period/2).

    Samples are folded by index relative to the sample at (or nearest) 0, so
    ``period`` must be an integer number of samples.
    """
    h = d.spacing
    ratio = period / h
    L = int(round(ratio))
    if period <= 0 or L < 1 or abs(ratio - L) > 1e-9 * max(1.0, ratio):
        raise ValueError(f"period {period} is not a whole number of samples ({h})")
    zero = int(round(-d.points[0] / h))
    k = np.arange(len(d.values)) - zero
    r = np.mod(k + L // 2, L)
    folded = np.bincount(r, weights=d.values, minlength=L)
    pts = (np.arange(L) - L // 2) * h
    return DensityProfile(pts, folded, d.axis)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _write_columns(path, header, columns) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in zip(*columns):
            w.writerow([_fmt(v) for v in row])
