import math

import numpy as np
import pytest
from scipy.linalg import expm

from qumem import (
    apply_displacement,
    coherent_ket,
    default_cutoff,
    displacement_matrix,
    ket_to_density,
    number_distribution,
    sample_fock,
    vacuum,
)
from qumem.errors import (
    CutoffInsufficientError,
    InvalidArgumentError,
    InvalidDimensionError,
    InvalidParameterError,
    TruncationLeakageError,
)
from qumem.fock import FockKet, laguerre_sequence, log_factorials


# ---- independent oracles -------------------------------------------------

def coherent_amp(alpha, n):
    """<n|alpha> from the analytic expansion, no library code involved."""
    return (math.exp(-abs(alpha) ** 2 / 2) * alpha ** n
            / math.sqrt(math.factorial(n)))


def expm_displacement(alpha, cutoff):
    """D(alpha) as the literal matrix exponential of alpha a^dag - alpha* a."""
    lower = np.diag(np.sqrt(np.arange(1, cutoff)), k=1)
    return expm(alpha * lower.conj().T - np.conj(alpha) * lower)


def laguerre_direct(n, k, x):
    """L_n^(k)(x) from the finite factorial sum."""
    return sum((-1) ** i * math.comb(n + k, n - i) * x ** i / math.factorial(i)
               for i in range(n + 1))


# ---- states ----------------------------------------------------------------

def test_vacuum_basics():
    state = vacuum(8)
    assert state.cutoff == 8
    assert state.amplitudes[0] == 1.0
    assert np.all(state.amplitudes[1:] == 0)
    assert state.leakage == 0.0


def test_vacuum_rejects_zero_cutoff():
    with pytest.raises(InvalidDimensionError):
        vacuum(0)


def test_ket_requires_normalized_amplitudes():
    with pytest.raises(InvalidArgumentError):
        FockKet(np.array([1.0, 1.0]))


def test_ket_amplitudes_are_immutable():
    state = vacuum(4)
    with pytest.raises(ValueError):
        state.amplitudes[0] = 0.0


def test_coherent_amplitudes_alpha_one():
    # frozen closed-form values e^(-1/2) and e^(-1/2)/sqrt(2)
    state = coherent_ket(1.0, 20)
    assert state.amplitudes[0].real == pytest.approx(0.6065306597126334, abs=1e-9)
    assert state.amplitudes[2].real == pytest.approx(0.4288819424803534, abs=1e-9)
    assert coherent_amp(1.0, 0) == pytest.approx(0.6065306597126334, abs=1e-15)
    assert coherent_amp(1.0, 2) == pytest.approx(0.4288819424803534, abs=1e-15)


def test_coherent_matches_oracle_elementwise():
    alpha = 0.8 - 0.35j
    state = coherent_ket(alpha, 25)
    for n in range(25):
        assert state.amplitudes[n] == pytest.approx(coherent_amp(alpha, n), abs=1e-10)


def test_coherent_zero_is_vacuum():
    assert np.allclose(coherent_ket(0.0, 12).amplitudes, vacuum(12).amplitudes)


def test_coherent_truncation_error_names_estimate():
    # |alpha| = 3 needs about 9 + 18 + 10 = 37 levels
    with pytest.raises(CutoffInsufficientError) as err:
        coherent_ket(3.0, 8)
    assert "37" in str(err.value)


def test_coherent_amplitude_cap():
    with pytest.raises(InvalidParameterError):
        coherent_ket(10.5, 200)
    with pytest.raises(InvalidParameterError):
        coherent_ket(complex("inf"), 20)


def test_default_cutoff_policy():
    assert default_cutoff(0.0) == 16
    assert default_cutoff(1.0) == 17
    assert default_cutoff(2.0) == 26
    # policy keeps the Poisson tail under ~1e-8
    for a in (0.5, 1.0, 1.5, 2.5):
        c = default_cutoff(a)
        tail = 1.0 - sum(abs(coherent_amp(a, n)) ** 2 for n in range(c))
        assert tail < 1e-8, f"tail {tail} at cutoff {c}"


def test_log_factorial_table():
    table = log_factorials(200)
    assert table[0] == 0.0
    assert table[5] == pytest.approx(math.log(120), rel=1e-14)
    assert table[150] == pytest.approx(math.lgamma(151), rel=1e-12)
    assert np.all(np.isfinite(table))


# ---- displacement operator -------------------------------------------------

def test_laguerre_recurrence_against_factorial_sum():
    for order in (0, 1, 2, 5):
        for x in (0.0, 0.3, 1.7, 6.0):
            gen = laguerre_sequence(order, x)
            got = [float(next(gen)) for _ in range(11)]
            for n in range(11):
                assert got[n] == pytest.approx(laguerre_direct(n, order, x),
                                               rel=1e-10, abs=1e-10)


def test_displacement_zero_is_identity():
    assert np.array_equal(displacement_matrix(0.0, 7), np.eye(7))


def test_displacement_first_column_is_coherent():
    alpha = 0.6 + 0.2j
    mat = displacement_matrix(alpha, 18)
    for n in range(18):
        assert mat[n, 0] == pytest.approx(coherent_amp(alpha, n), abs=1e-12)


def test_displacement_matches_matrix_exponential():
    # closed-form Laguerre elements vs the expm oracle, leading block
    for alpha in (0.4, -0.25 + 0.55j, 1.1 - 0.3j):
        ours = displacement_matrix(alpha, 30)
        oracle = expm_displacement(alpha, 30)
        dev = np.max(np.abs((ours - oracle)[:15, :15]))
        assert dev < 1e-8, f"alpha={alpha}: dev={dev}"


def test_displacement_unitary_on_bulk():
    # |alpha| <= 1: the leading cutoff/2 block of D^dag D stays the identity
    rng = np.random.default_rng(11)
    for _ in range(20):
        radius = rng.uniform(0, 1.0)
        angle = rng.uniform(0, 2 * math.pi)
        mat = displacement_matrix(radius * np.exp(1j * angle), 30)
        gram = mat.conj().T @ mat
        assert np.max(np.abs((gram - np.eye(30))[:15, :15])) < 1e-6


def test_composition_law_property():
    """D(a1) D(a2) |0> = exp(i Im(a1 conj(a2))) D(a1 + a2) |0>."""
    rng = np.random.default_rng(23)
    start = np.zeros(40, dtype=complex)
    start[0] = 1.0
    worst = 0.0
    for _ in range(60):
        a1 = complex(*rng.uniform(-0.7, 0.7, 2))
        a2 = complex(*rng.uniform(-0.7, 0.7, 2))
        seq = displacement_matrix(a1, 40) @ (displacement_matrix(a2, 40) @ start)
        phase = np.exp(1j * (a1 * np.conj(a2)).imag)
        direct = phase * (displacement_matrix(a1 + a2, 40) @ start)
        worst = max(worst, float(np.max(np.abs(seq - direct))))
    assert worst < 1e-6, worst


def test_apply_displacement_builds_coherent():
    state = apply_displacement(vacuum(20), 0.9)
    ref = coherent_ket(0.9, 20)
    assert np.max(np.abs(state.amplitudes - ref.amplitudes)) < 1e-10
    assert 0 <= state.leakage < 1e-9


def test_apply_displacement_inverse_round_trip():
    rng = np.random.default_rng(5)
    for _ in range(10):
        alpha = complex(*rng.uniform(-1, 1, 2))
        state = apply_displacement(vacuum(25), alpha)
        back = apply_displacement(state, -alpha)
        overlap = abs(back.overlap(vacuum(25))) ** 2
        assert overlap > 1 - 1e-10


def test_apply_displacement_leakage_error():
    with pytest.raises(TruncationLeakageError) as err:
        apply_displacement(vacuum(4), 2.5)
    assert "cutoff" in str(err.value)


# ---- measurement statistics -------------------------------------------------

def test_number_distribution_is_poisson():
    state = coherent_ket(1.7, 40)
    mean = abs(1.7) ** 2
    probs = number_distribution(state)
    for n in range(40):
        expected = math.exp(-mean) * mean ** n / math.factorial(n)
        assert probs[n] == pytest.approx(expected, abs=1e-8)
    # Poisson mode at floor(2.89) = 2
    assert int(np.argmax(probs)) == 2
    assert probs.sum() == pytest.approx(1.0, abs=1e-10)


def test_sample_fock_deterministic():
    state = coherent_ket(1.2, 25)
    assert sample_fock(state, 123) == sample_fock(state, 123)
    draws_a = sample_fock(state, 9, size=50)
    draws_b = sample_fock(state, 9, size=50)
    assert np.array_equal(draws_a, draws_b)


def test_sample_fock_vacuum_always_zero():
    assert all(sample_fock(vacuum(6), seed) == 0 for seed in range(20))


def test_sample_fock_empirical_frequency():
    state = coherent_ket(1.0, 25)
    draws = sample_fock(state, 2024, size=20000)
    p0 = math.exp(-1.0)
    sigma = math.sqrt(p0 * (1 - p0) / 20000)
    freq = float(np.mean(draws == 0))
    assert abs(freq - p0) < 3 * sigma


def test_ket_to_density_is_projector():
    state = coherent_ket(0.7 + 0.1j, 18)
    rho = ket_to_density(state)
    assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
    assert rho.purity() == pytest.approx(1.0, abs=1e-10)
    assert np.max(np.abs(rho.matrix - rho.matrix.conj().T)) < 1e-14
