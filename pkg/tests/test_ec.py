import math

import numpy as np
import pytest
from conftest import state
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from gkpcb.binning import bin_labels, qubit_density
from gkpcb.ec import SyndromeKernel, comb_matrix, ec_bloch_trajectory, ec_qubit_average
from gkpcb.gates import apply_cubic_T
from gkpcb.gkp import LogicalLabel, SqueezingSpec, grid_for, logical_state
from gkpcb.grid import SQRT_PI, WaveFunction, commensurate_grid, make_grid, to_momentum
from gkpcb.qubit import QubitDensityMatrix, bloch_vector, fidelity_to_magic

LABELS = [lab.value for lab in LogicalLabel]


def kernel_oracle(k):
    """Integral of exp(-i v k sqrt(pi)) over one symmetric syndrome window."""
    h = SQRT_PI / 2
    return quad(lambda v: math.cos(v * k * SQRT_PI), -h, h)[0]


@pytest.mark.parametrize("k", range(-9, 10))
def test_kernel_is_the_syndrome_window_integral(k):
    assert SyndromeKernel()(k) == pytest.approx(kernel_oracle(k), abs=1e-12)


def test_kernel_closed_values():
    K = SyndromeKernel()
    assert K(0) == pytest.approx(SQRT_PI)
    assert K(1) == pytest.approx(2 / SQRT_PI)
    assert K(3) == pytest.approx(-2 / (3 * SQRT_PI))
    assert K(2) == 0 and K(-4) == 0


@given(st.integers(-10**6, 10**6))
def test_kernel_even_function(k):
    K = SyndromeKernel()
    assert K(k) == K(-k)


def test_kernel_cutoff():
    K = SyndromeKernel(k_max=5)
    assert K(5) != 0 and K(7) == 0
    with pytest.raises(ValueError):
        SyndromeKernel(k_max=0)


def test_kernel_leibniz_series():
    """sum over odd k > 0 of sqrt(pi) K(k) / 2 tends to pi / 4."""
    k = np.arange(1, 2_000_001, 2)
    partial = SQRT_PI / 2 * np.sum(SyndromeKernel()(k))
    assert partial == pytest.approx(math.pi / 4, abs=1e-6)
    mass = [np.sum(np.abs(SyndromeKernel(km)(np.arange(-km, km + 1)))) for km in (8, 16, 32, 64)]
    assert np.all(np.diff(mass) > 0)


def test_comb_matrix_rows_are_bins():
    g = commensurate_grid(4, 8)
    psi = WaveFunction(g, np.arange(g.n_points, dtype=float))
    z = comb_matrix(psi)
    labels = bin_labels(psi)
    assert z.shape == (8, 8)
    for i, row in enumerate(z):
        idx = row.real.astype(int)
        assert np.all(labels[idx] % 8 == (i - 4) % 8)


def test_ec_rejects_bad_inputs():
    with pytest.raises(ValueError):
        ec_qubit_average(WaveFunction(make_grid(5.0, 64), np.ones(64)))
    psi = state("plus", 15)
    with pytest.raises(ValueError):
        ec_qubit_average(to_momentum(psi))


def test_near_ideal_comb_is_plus():
    s = SqueezingSpec(0.01, 0.01)
    psi = logical_state(LogicalLabel.PLUS, s, grid_for(s, samples_per_sigma=3))
    b = bloch_vector(ec_qubit_average(psi))
    assert b.bx > 0.99


def test_zero_codeword():
    assert bloch_vector(ec_qubit_average(state("zero", 20))).bz > 0.99


@pytest.mark.parametrize("label", LABELS)
def test_logical_frame_preserved(label):
    rho = ec_qubit_average(state(label, 25))
    assert rho.expectation(LogicalLabel(label).qubit_vector()) >= 0.99


def test_cubic_gate_worse_than_identity_at_15db():
    cubic = fidelity_to_magic(ec_qubit_average(state("plus", 15, cubic=True)))
    ident = fidelity_to_magic(ec_qubit_average(state("plus", 15)))
    assert cubic < ident


def test_diagonal_matches_even_bin_mass():
    for psi in (state("plus", 20, cubic=True), state("magic", 15), state("one", 25)):
        mass = np.abs(psi.amplitudes) ** 2
        even = np.sum(mass[bin_labels(psi) % 2 == 0]) / np.sum(mass)
        assert ec_qubit_average(psi).matrix[0, 0].real == pytest.approx(even, abs=1e-8)
        assert qubit_density(psi).matrix[0, 0].real == pytest.approx(even, abs=1e-8)


def test_trajectories():
    dbs = (10, 15, 20, 25, 30)
    target = ec_bloch_trajectory([state("magic", db) for db in dbs])
    dist = [math.dist(tuple(b), (math.sqrt(0.5), math.sqrt(0.5), 0)) for b in target]
    assert np.all(np.diff(dist) < 0) and dist[-1] < 1e-3
    cubic = ec_bloch_trajectory([state("plus", db, cubic=True) for db in dbs])
    assert cubic[-1].length < 0.8
    assert abs(cubic[-1].length - cubic[-2].length) < 0.02
    assert ec_bloch_trajectory([]) == []


def test_k_max_convergence():
    for db in (15, 20):
        psi = state("plus", db, cubic=True)
        a, b = (ec_qubit_average(psi, k).matrix for k in (32, 64))
        assert np.max(np.abs(a - b)) < 1e-6
    # narrow peaks spread over many bins and the alternating 1/k tail converges slowly
    for db in (25, 30):
        psi = state("plus", db, cubic=True)
        r = [ec_qubit_average(psi, k).matrix for k in (32, 64, 128, None)]
        steps = [np.max(np.abs(r[i + 1] - r[i])) for i in range(3)]
        assert steps[0] > steps[1] > steps[2]


@given(st.integers(0, 2**32 - 1), st.sampled_from([None, 1, 3, 17]))
@settings(max_examples=50, deadline=None)
def test_density_valid_for_random_states(seed, k_max):
    rng = np.random.default_rng(seed)
    g = commensurate_grid(8, 8)
    psi = WaveFunction(g, rng.normal(size=g.n_points) + 1j * rng.normal(size=g.n_points)).normalized()
    rho = ec_qubit_average(psi, k_max)
    assert rho.problems() == []


def test_density_round_trips_json():
    rho = ec_qubit_average(state("magic", 15))
    again = QubitDensityMatrix.from_dict(rho.to_dict())
    np.testing.assert_array_equal(again.matrix, rho.matrix)
