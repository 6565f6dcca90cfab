"""Single-mode gates acting on position-representation wavefunctions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import POSITION, SQRT_PI, Grid, WaveFunction, to_momentum, to_position

TWO_PI = 2.0 * math.pi


def _require_position(psi: WaveFunction, op: str) -> None:
    if psi.representation != POSITION:
        raise ValueError(f"{op} needs a position-representation state")


@dataclass(frozen=True)
class GatePhasePolynomial:
    """phi(x) = pi/4 * (c3 u**3 + c2 u**2 + c1 u) with u = x / sqrt(pi)."""

    c3: int = 2
    c2: int = 1
    c1: int = -2

    def __call__(self, x) -> np.ndarray:
        u = np.asarray(x, dtype=float) / SQRT_PI
        return (math.pi / 4) * (self.c3 * u**3 + self.c2 * u**2 + self.c1 * u)

    def at_lattice(self, n: int) -> int:
        """Integer bracket at u = n, i.e. phi(n sqrt(pi)) / (pi/4)."""
        return self.c3 * n**3 + self.c2 * n**2 + self.c1 * n

    def on_grid(self, g: Grid) -> np.ndarray:
        """phi at the grid points, reduced to [0, 2 pi).

        On a commensurate grid u = q/m is rational, so the bracket is reduced
        modulo 8 m**3 in exact integer arithmetic before scaling; this keeps
        full precision where |x| is large.
        """
        if not g.commensurate:
            return np.mod(self(g.points), TWO_PI)
        m = g.samples_per_cell
        q = np.arange(g.n_points, dtype=np.int64) - g.origin_index
        coeff = max(abs(self.c3), abs(self.c2), abs(self.c1), 1)
        if 3 * coeff * float(g.origin_index) ** 3 * m**2 >= 2.0**62:
            q = q.astype(object)
        num = np.mod(self.c3 * q**3 + self.c2 * q**2 * m + self.c1 * q * m**2, 8 * m**3)
        return (math.pi / 4) * num.astype(float) / m**3


T_POLYNOMIAL = GatePhasePolynomial(2, 1, -2)


def t_phase_parity(n):
    """(2 n^3 + n^2 - 2 n) mod 8, which is always n mod 2.

    Scalars use exact integers; integer arrays are evaluated in int64 and
    must satisfy |n| <= 1.6e6 to stay clear of overflow.
    """
    if isinstance(n, np.ndarray):
        n = n.astype(np.int64)
        if n.size and np.max(np.abs(n)) > 1_600_000:
            raise OverflowError("|n| too large for int64 evaluation")
        r = np.mod(2 * n**3 + n**2 - 2 * n, 8)
        if np.any(r > 1):
            raise ArithmeticError("parity identity violated")
        return r
    n = int(n)
    r = (2 * n**3 + n**2 - 2 * n) % 8
    if r not in (0, 1):
        raise ArithmeticError(f"parity identity violated at n={n}: {r}")
    return r


def apply_phase(psi: WaveFunction, phase: np.ndarray) -> WaveFunction:
    _require_position(psi, "apply_phase")
    return psi.with_amplitudes(psi.amplitudes * np.exp(1j * phase))


def apply_cubic_T(psi: WaveFunction) -> WaveFunction:
    """Cubic phase + shear + displacement T-gate, exp(i phi(x)) with (2, 1, -2)."""
    _require_position(psi, "apply_cubic_T")
    return apply_phase(psi, T_POLYNOMIAL.on_grid(psi.grid))


def apply_shear(psi: WaveFunction, c: float) -> WaveFunction:
    """exp(i c x^2 / 2); c = 1 is the logical S gate."""
    _require_position(psi, "apply_shear")
    if c == 0:
        return psi
    g = psi.grid
    if g.commensurate and float(c).is_integer():
        # c x^2/2 = c pi q^2 / (2 m^2): reduce q^2 mod 4 m^2 exactly
        m, c = g.samples_per_cell, int(c)
        q = np.arange(g.n_points, dtype=np.int64) - g.origin_index
        num = np.mod(c * np.mod(q * q, 4 * m * m), 4 * m * m)
        return apply_phase(psi, math.pi * num / (2.0 * m * m))
    return apply_phase(psi, c * g.points**2 / 2)


def apply_displacement(psi: WaveFunction, along: str, amount: float) -> WaveFunction:
    """Displace by ``amount`` along ``"x"`` or ``"p"``.

    Grid-multiple x shifts are exact index rolls (periodic); other x shifts
    multiply by exp(-i amount p) in the momentum representation.
    """
    _require_position(psi, "apply_displacement")
    if amount == 0:
        return psi
    g = psi.grid
    if along == "p":
        return apply_phase(psi, amount * g.points)
    if along != "x":
        raise ValueError(f"axis must be 'x' or 'p', got {along!r}")
    steps = amount / g.dx
    k = int(round(steps))
    if abs(steps - k) < 1e-9:
        return psi.with_amplitudes(np.roll(psi.amplitudes, k))
    phi = to_momentum(psi)
    shifted = phi.with_amplitudes(phi.amplitudes * np.exp(-1j * amount * g.momentum_points))
    return to_position(shifted)


def apply_fourier(psi: WaveFunction) -> WaveFunction:
    """Quarter rotation in phase space (logical Hadamard); needs a self-dual grid."""
    _require_position(psi, "apply_fourier")
    if not psi.grid.self_dual:
        raise ValueError("apply_fourier needs a self-dual grid (dp == dx)")
    return _relabel(to_momentum(psi))


def _relabel(phi: WaveFunction) -> WaveFunction:
    return phi.with_amplitudes(phi.amplitudes, POSITION)
