"""Closed-form fidelities of the cubic-phase T gate in the small-noise limit.

These serve as oracles for the numerical decoders.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ClosedFormInputs:
    delta_x: float
    delta_p: float
    # "much smaller than" thresholds for the informational regime flags
    small: float = 0.1

    def __post_init__(self):
        if not (self.delta_x > 0 and self.delta_p > 0):
            raise ValueError(f"deltas must be positive, got {self.delta_x}, {self.delta_p}")

    @property
    def ratio(self) -> float:
        return self.delta_x / self.delta_p

    @property
    def small_noise(self) -> bool:
        """delta_x**2 and delta_p**2 both << 1."""
        return max(self.delta_x, self.delta_p) ** 2 < self.small

    @property
    def phase_regime(self) -> bool:
        """delta_x**4 << delta_p**2, needed for the lattice phases to stay aligned."""
        return self.delta_x**4 < self.small * self.delta_p**2


def _inputs(delta_x, delta_p=None) -> ClosedFormInputs:
    if isinstance(delta_x, ClosedFormInputs):
        return delta_x
    return ClosedFormInputs(delta_x, delta_p)


def fidelity_closed_form(delta_x, delta_p=None) -> float:
    """F = 1/2 + 1/2 / sqrt(1 + (3 dx / (2 dp))**2); depends on the ratio only."""
    c = _inputs(delta_x, delta_p)
    return 0.5 + 0.5 / math.sqrt(1.0 + (1.5 * c.ratio) ** 2)


def fidelity_asymptotic(delta_x, delta_p=None) -> float:
    """1 - (3 dx / (4 dp))**2, the leading behaviour for dx << dp."""
    c = _inputs(delta_x, delta_p)
    return 1.0 - (0.75 * c.ratio) ** 2


def ratio_for_fidelity(f: float) -> float:
    """dx/dp at which the asymptotic form reaches ``f``."""
    if not 0 < f <= 1:
        raise ValueError(f"fidelity must be in (0, 1], got {f}")
    return math.sqrt(1.0 - f) / 0.75


def overlap_closed_form(delta_x, delta_p=None, limit: bool = False) -> complex:
    """<psi1|psi0> of the binned U_T|+_L>.

    e^{-i pi/4} dp / (sqrt(9 dx^2 + 4 dp^2) sqrt(1 + 1.5 i dx^2)); with
    ``limit`` the last factor is dropped (dx -> 0).
    """
    c = _inputs(delta_x, delta_p)
    dx, dp = c.delta_x, c.delta_p
    value = cmath.exp(-1j * math.pi / 4) * dp / math.sqrt(9 * dx**2 + 4 * dp**2)
    if not limit:
        value /= cmath.sqrt(1 + 1.5j * dx**2)
    return value


def gaussian_integral(a: complex, b: complex, c: complex) -> complex:
    """Integral over the real line of exp(-a x^2 + b x + c), principal branch."""
    if not complex(a).real > 0:
        raise ValueError(f"Re(a) must be positive, got {a}")
    return cmath.sqrt(math.pi / a) * cmath.exp(c + b * b / (4 * a))
