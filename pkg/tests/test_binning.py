import cmath
import math

import numpy as np
import pytest
from conftest import ratio_state, state
from hypothesis import given, settings
from hypothesis import strategies as st

from gkpcb.analytics import fidelity_closed_form
from gkpcb.binning import bin_decompose, bin_labels, binned_overlap, fidelity_from_overlap, qubit_density
from gkpcb.gkp import SqueezingSpec, comb_state, db_to_delta
from gkpcb.grid import SQRT_PI, WaveFunction, commensurate_grid, inner_product, make_grid
from gkpcb.qubit import QubitDensityMatrix, bloch_vector, fidelity_to_magic

F_LIMIT = fidelity_closed_form(1.0, 1.0)  # 0.5 + 13**-0.5


def narrow(g, centre, width=0.05):
    return np.exp(-((g.points - centre) ** 2) / (2 * width**2))


def test_bin_labels_lower_closed():
    g = commensurate_grid(4, 8)
    labels = bin_labels(WaveFunction(g, np.ones(g.n_points)))
    # edge at -sqrt(pi)/2 belongs to bin 0, edge at +sqrt(pi)/2 to bin 1
    assert labels[g.index_of(-SQRT_PI / 2)] == 0
    assert labels[g.index_of(SQRT_PI / 2)] == 1
    assert labels[g.index_of(-SQRT_PI / 2) - 1] == -1
    counts = np.bincount(labels - labels.min())
    # the periodic grid ends on two half bins
    assert np.all(counts[1:-1] == 8) and counts[0] + counts[-1] == 8


def test_binning_rejects_plain_grid():
    with pytest.raises(ValueError):
        bin_decompose(WaveFunction(make_grid(5.0, 64), np.ones(64)))


def test_peak_at_zero_is_logical_zero():
    g = commensurate_grid(8, 64)
    pair = bin_decompose(WaveFunction(g, narrow(g, 0.0)))
    assert np.max(np.abs(pair.psi1.amplitudes)) < 1e-60
    assert np.max(np.abs(pair.psi0.amplitudes)) == pytest.approx(1.0)


def test_peak_at_sqrt_pi_is_recentred_into_psi1():
    g = commensurate_grid(8, 64)
    pair = bin_decompose(WaveFunction(g, narrow(g, SQRT_PI)))
    assert np.max(np.abs(pair.psi0.amplitudes)) < 1e-60
    np.testing.assert_allclose(pair.psi1.amplitudes, narrow(g, 0.0), atol=1e-60)


def test_bin_pieces_carry_full_norm():
    psi = state("plus", 15)
    pair = bin_decompose(psi)
    assert pair.psi0.norm2() + pair.psi1.norm2() == pytest.approx(psi.norm2(), abs=1e-12)


def test_zero_codeword_decodes_to_zero():
    rho = qubit_density(state("zero", 20))
    assert rho.matrix[0, 0].real > 0.999


@pytest.mark.parametrize("theta", [0.0, 0.7, -2.1, math.pi])
def test_relative_phase_shows_up_in_coherence(theta):
    g = commensurate_grid(8, 64)
    psi = WaveFunction(g, narrow(g, 0.0) + cmath.exp(1j * theta) * narrow(g, SQRT_PI))
    rho = qubit_density(psi).matrix
    assert rho[1, 0] == pytest.approx(cmath.exp(1j * theta) / 2, abs=1e-12)
    assert rho[0, 1] == pytest.approx(cmath.exp(-1j * theta) / 2, abs=1e-12)


def test_magic_overlap_gives_unit_fidelity():
    assert fidelity_from_overlap(cmath.exp(-1j * math.pi / 4) / 2) == pytest.approx(1.0)
    rho = QubitDensityMatrix(np.array([[0.5, cmath.exp(-1j * math.pi / 4) / 2], [cmath.exp(1j * math.pi / 4) / 2, 0.5]]))
    assert fidelity_to_magic(rho) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "rho, f",
    [
        (np.diag([1.0, 0.0]), 0.5),
        (np.diag([0.0, 1.0]), 0.5),
        (np.full((2, 2), 0.5), 0.5 + math.cos(math.pi / 4) / 2),
        (np.eye(2) / 2, 0.5),
    ],
)
def test_fidelity_to_magic_examples(rho, f):
    assert fidelity_to_magic(QubitDensityMatrix(rho)) == pytest.approx(f, abs=1e-15)


def test_fidelity_rejects_bad_trace():
    with pytest.raises(ValueError, match="trace"):
        fidelity_to_magic(QubitDensityMatrix(np.eye(2)))


@pytest.mark.parametrize(
    "vec, expected",
    [
        ([1, 0], (0, 0, 1)),
        ([0, 1], (0, 0, -1)),
        ([1, 1], (1, 0, 0)),
        ([1, 1j], (0, 1, 0)),
        ([1, cmath.exp(1j * math.pi / 4)], (math.sqrt(0.5), math.sqrt(0.5), 0)),
    ],
)
def test_bloch_examples(vec, expected):
    b = bloch_vector(QubitDensityMatrix.from_vector(vec))
    np.testing.assert_allclose(tuple(b), expected, atol=1e-15)


def test_magic_codeword_decodes_near_magic():
    assert fidelity_to_magic(qubit_density(state("magic", 25))) > 0.99


def test_cubic_plus_at_25db_near_closed_form():
    f = fidelity_to_magic(qubit_density(state("plus", 25, cubic=True)))
    print(f"binning F(25 dB) = {f:.6f}, closed form {F_LIMIT:.6f}")
    assert abs(f - F_LIMIT) < 0.02


def test_convergence_to_closed_form():
    fs = [fidelity_to_magic(qubit_density(state("plus", db, cubic=True))) for db in (20, 25, 30)]
    gaps = [abs(f - F_LIMIT) for f in fs]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.02


def test_larger_ratio_spread_lowers_fidelity():
    wide = fidelity_to_magic(qubit_density(ratio_state("plus", 20, 5.0, cubic=True)))
    equal = fidelity_to_magic(qubit_density(ratio_state("plus", 20, 1.0, cubic=True)))
    assert wide > equal
    # dp = 0.5 is outside the small-noise regime, so only the ordering is checked
    assert equal < wide < fidelity_closed_form(1.0, 5.0)


random_states = st.integers(0, 2**32 - 1)


@given(random_states)
@settings(max_examples=50, deadline=None)
def test_density_is_valid_for_random_states(seed):
    rng = np.random.default_rng(seed)
    g = commensurate_grid(4, 16)
    psi = WaveFunction(g, rng.normal(size=g.n_points) + 1j * rng.normal(size=g.n_points)).normalized()
    rho = qubit_density(psi)
    assert rho.problems() == []
    f = fidelity_to_magic(rho)
    assert abs(f - fidelity_from_overlap(binned_overlap(psi))) < 1e-10


@given(
    st.floats(0.05, 0.4),
    st.floats(0.05, 0.4),
    st.floats(0, 2 * math.pi),
)
@settings(max_examples=25, deadline=None)
def test_fidelity_identity_for_comb_states(dx, dp, theta):
    g = commensurate_grid(16, 32)
    n = np.arange(-6, 7)
    w = np.exp(-math.pi * n**2 * dp**2 / 2) * np.exp(1j * theta * (n % 2))
    psi = comb_state(n, w, dx, g)
    rho = qubit_density(psi)
    assert rho.problems() == []
    assert abs(fidelity_to_magic(rho) - fidelity_from_overlap(binned_overlap(psi))) < 1e-10


def test_overlap_of_cubic_state_matches_inner_product():
    psi = state("plus", 20, cubic=True)
    pair = bin_decompose(psi)
    assert binned_overlap(psi) == inner_product(pair.psi1, pair.psi0)
    assert db_to_delta(20) == pytest.approx(0.1)
    assert SqueezingSpec.symmetric(20).delta_p == pytest.approx(0.1)
