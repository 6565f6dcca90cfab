"""Modular subsystem decomposition of a position wavefunction into qubit x continuous parts.

Position space is cut into sqrt(pi)-wide bins centred on n sqrt(pi),
closed at the lower edge. The even-bin pieces of Psi form psi0; psi1 holds
Psi(x + sqrt(pi)) on the same even bins, so odd bin 2s+1 is paired with
even bin 2s. Both keep the bin index, only their overlaps enter rho.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .grid import POSITION, WaveFunction, inner_product
from .qubit import QubitDensityMatrix


@dataclass(frozen=True)
class BinnedPair:
    psi0: WaveFunction
    psi1: WaveFunction


def bin_labels(psi: WaveFunction) -> np.ndarray:
    """Lattice index n of the bin containing each grid point."""
    g = psi.grid
    if not g.commensurate or g.samples_per_cell % 2:
        raise ValueError("binning needs a commensurate grid with an even number of samples per sqrt(pi)")
    m = g.samples_per_cell
    k = np.arange(g.n_points) - g.origin_index
    return np.floor_divide(k + m // 2, m)


def bin_decompose(psi: WaveFunction) -> BinnedPair:
    if psi.representation != POSITION:
        raise ValueError("bin_decompose needs a position-representation state")
    even = np.mod(bin_labels(psi), 2) == 0
    m = psi.grid.samples_per_cell
    a = psi.amplitudes
    # the grid spans an even number of bins, so the roll maps odd bins onto even ones exactly
    return BinnedPair(
        psi.with_amplitudes(np.where(even, a, 0)),
        psi.with_amplitudes(np.where(even, np.roll(a, -m), 0)),
    )


def qubit_density(psi: WaveFunction) -> QubitDensityMatrix:
    pair = bin_decompose(psi)
    r01 = inner_product(pair.psi1, pair.psi0)
    rho = np.array(
        [
            [inner_product(pair.psi0, pair.psi0), r01],
            [r01.conjugate(), inner_product(pair.psi1, pair.psi1)],
        ]
    )
    return QubitDensityMatrix(rho / np.trace(rho).real)


def binned_overlap(psi: WaveFunction) -> complex:
    """<psi1|psi0> of the decomposition."""
    pair = bin_decompose(psi)
    return inner_product(pair.psi1, pair.psi0)


def fidelity_from_overlap(overlap: complex) -> float:
    """1/2 + Re(e^{i pi/4} <psi1|psi0>), the magic-state fidelity of a normalised state."""
    return 0.5 + (cmath.exp(1j * math.pi / 4) * overlap).real
