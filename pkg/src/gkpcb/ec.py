"""Ideal GKP error correction averaged over syndrome outcomes.

A state is expanded in displaced ideal codewords. For position syndrome u
and momentum syndrome v, both in [-sqrt(pi)/2, sqrt(pi)/2), the logical
amplitudes are

    c_mu(u, v) = sum_s exp(-i v x) Psi(x),   x = u + (2s + mu) sqrt(pi),

and rho is proportional to the integral of c c^dagger over both syndromes.
The v integral is done analytically and leaves the real even kernel K(k)
coupling comb points k sqrt(pi) apart; the u integral is a sum over grid
points of one sqrt(pi) cell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import POSITION, SQRT_PI, WaveFunction
from .qubit import BlochVector, QubitDensityMatrix, bloch_vector


@dataclass(frozen=True)
class SyndromeKernel:
    """K(0) = sqrt(pi), K(even != 0) = 0, K(odd k) = 2 (-1)^((|k|-1)/2) / (|k| sqrt(pi)).

    ``k_max=None`` keeps every separation the grid can hold.
    """

    k_max: int | None = None

    def __post_init__(self):
        if self.k_max is not None and self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")

    def __call__(self, k) -> np.ndarray:
        k = np.abs(np.asarray(k, dtype=np.int64))
        odd = k % 2 == 1
        sign = np.where((k - 1) // 2 % 2 == 0, 1.0, -1.0)
        out = np.where(odd, 2.0 * sign / (np.maximum(k, 1) * SQRT_PI), 0.0)
        out = np.where(k == 0, SQRT_PI, out)
        if self.k_max is not None:
            out = np.where(k > self.k_max, 0.0, out)
        return out


def comb_matrix(psi: WaveFunction) -> np.ndarray:
    """Samples arranged as Z[i, r] = Psi(u_r + (i - cells) sqrt(pi)), u_r in one cell.

    The grid is periodic and spans 2*cells bins, so row 0 joins the two
    half-bins at the edges.
    """
    g = psi.grid
    _check_grid(g)
    return np.roll(psi.amplitudes, g.samples_per_cell // 2).reshape(2 * g.cells, g.samples_per_cell)


def _check_grid(g) -> None:
    if not g.commensurate or g.samples_per_cell % 2:
        raise ValueError("EC decoding needs a commensurate grid with an even number of samples per sqrt(pi)")


def ec_moments(columns: np.ndarray, g, k_max: int | None = None) -> np.ndarray:
    """Unnormalised (r00, r11, r01) for each column of ``columns`` (n_points x batch)."""
    _check_grid(g)
    m, cells = g.samples_per_cell, g.cells
    z = np.roll(columns, m // 2, axis=0).reshape(2 * cells, m, -1)
    n = np.arange(2 * cells) - cells
    ev, od = n % 2 == 0, n % 2 == 1
    even, odd = z[ev], z[od]
    k_eo = SyndromeKernel(k_max)(n[ev][:, None] - n[od][None, :])
    r00 = SQRT_PI * np.sum(np.abs(even) ** 2, axis=(0, 1))
    r11 = SQRT_PI * np.sum(np.abs(odd) ** 2, axis=(0, 1))
    r01 = np.einsum("arb,arb->b", even, np.tensordot(k_eo, odd.conj(), axes=(1, 0)))
    return np.stack([r00, r11, r01])


def moments_to_density(r00, r11, r01) -> QubitDensityMatrix:
    rho = np.array([[r00, r01], [np.conj(r01), r11]])
    return QubitDensityMatrix(rho / (r00 + r11).real)


def ec_qubit_average(psi: WaveFunction, k_max: int | None = None) -> QubitDensityMatrix:
    if psi.representation != POSITION:
        raise ValueError("ec_qubit_average needs a position-representation state")
    r00, r11, r01 = ec_moments(psi.amplitudes[:, None], psi.grid, k_max)[:, 0]
    return moments_to_density(r00, r11, r01)


def ec_bloch_trajectory(states, k_max: int | None = None) -> list[BlochVector]:
    return [bloch_vector(ec_qubit_average(psi, k_max)) for psi in states]
