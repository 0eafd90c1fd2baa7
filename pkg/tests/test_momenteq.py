import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hardyrep.errors import PreconditionError, UnsupportedError, ValidationError
from hardyrep.gamma import gamma3, gamma4, gamma_from_elements
from hardyrep.kernel import DenseCoeffs, bergman_diagonal, diagonal_from_map, gamma_diagonal, psd_check
from hardyrep.measure import MU3, MU4, Atomic, Lebesgue, TrigDensity, fourier_coefficients
from hardyrep.momenteq import (
    build_moment_matrix,
    cmc_residual,
    diag_nonexistence_certificate,
    fourier_vanishing_check,
    projection_residual,
)

PROBABILITY = [
    Lebesgue(),
    TrigDensity({2: 0.4}),
    TrigDensity({1: 0.3, 5: -0.25}),
    MU4,
    MU3,
    Atomic((0.1, 0.5, 0.8), (0.2, 0.3, 0.5)),
]


def test_build_examples():
    assert np.array_equal(build_moment_matrix(Lebesgue(), 3).entries, np.eye(3))
    M = build_moment_matrix(TrigDensity({2: 0.4}), 3).entries
    assert np.allclose(M, np.eye(3) + 0.2 * (np.eye(3, k=2) + np.eye(3, k=-2)), atol=0)
    M = build_moment_matrix(MU4, 6).entries
    for off in (1, 3, 4, 5):
        assert np.max(np.abs(np.diagonal(M, off))) <= 1e-10
        assert np.max(np.abs(np.diagonal(M, -off))) <= 1e-10
    assert abs(M[0, 2]) > 0.1


def test_entry_convention():
    mu = Atomic((0.1,), (1.0,))
    M = build_moment_matrix(mu, 4).entries
    # M[m, n] = mu_hat(n - m) = exp(-2 pi i (n - m) 0.1)
    assert M[0, 1] == pytest.approx(np.exp(-2j * np.pi * 0.1))
    N = build_moment_matrix(mu, 4, transpose=True).entries
    assert np.allclose(N, M.T, atol=0)


@pytest.mark.parametrize("mu", PROBABILITY, ids=lambda s: type(s).__name__)
def test_structure(mu):
    M = build_moment_matrix(mu, 40).entries
    for k in range(-39, 40):
        assert np.ptp(np.diagonal(M, k)) == 0
    assert np.array_equal(M, M.conj().T)
    assert np.all(np.diagonal(M) == M[0, 0])
    assert abs(M[0, 0] - 1) < 1e-15
    assert psd_check(M, 1e-10).passed


def test_cmc_examples():
    r = cmc_residual(gamma_diagonal(gamma4(6)), build_moment_matrix(Lebesgue(), 64))
    assert r.residual == 0 and r.passed
    r = cmc_residual(gamma_diagonal(gamma4(8)), build_moment_matrix(MU4, 64))
    assert r.residual <= 1e-9 and r.passed
    r = cmc_residual(gamma_diagonal(gamma3(4)), build_moment_matrix(TrigDensity({2: 0.4}), 8))
    assert r.residual == pytest.approx(0.2, abs=1e-15)
    assert r.worst_entry in [(1, 3), (3, 1)]
    assert not r.passed
    assert "necessary at every window" in r.tail_note


def test_cmc_dense_and_regimes():
    v = np.array([1, 1j, 0, 0]) / np.sqrt(2)
    C = DenseCoeffs(np.outer(v, v.conj()))
    r = cmc_residual(C, build_moment_matrix(Lebesgue(), 4))
    assert r.residual < 1e-15
    with pytest.raises(ValidationError):
        cmc_residual(C, build_moment_matrix(Lebesgue(), 5))
    with pytest.raises(UnsupportedError):
        cmc_residual(C, build_moment_matrix(MU4, 4))
    r = cmc_residual(C, build_moment_matrix(MU4, 4), strict=False)
    assert r.residual > 0
    r = cmc_residual(C, build_moment_matrix(Lebesgue(), 4), norm="frobenius")
    assert r.norm == "frobenius"
    with pytest.raises(ValidationError):
        cmc_residual(C, build_moment_matrix(Lebesgue(), 4), norm="nuclear")


def test_report_dict():
    r = cmc_residual(gamma_diagonal(gamma4(6)), build_moment_matrix(Lebesgue(), 16))
    d = r.to_dict()
    assert {"residual", "norm", "N", "pass", "worstEntry", "tailNote"} <= set(d)
    assert d["N"] == 16 and d["pass"] is True


def test_projection_examples():
    assert projection_residual(gamma_diagonal(gamma4(3)), size=50).residual == 0
    r = projection_residual(diagonal_from_map({0: 1.0, 1: 2.0}))
    assert r.residual == 2
    v = np.random.default_rng(0).normal(size=6) + 0j
    v /= np.linalg.norm(v)
    assert projection_residual(DenseCoeffs(np.outer(v, v.conj()))).residual <= 1e-14
    with pytest.raises(ValidationError):
        projection_residual(bergman_diagonal())


def test_vanishing_examples():
    r = fourier_vanishing_check(Lebesgue(), gamma4(7), 4096, 1e-12)
    assert r.max_abs == 0 and r.passed
    assert fourier_vanishing_check(MU4, gamma4(7), 4096, 1e-8).passed
    r = fourier_vanishing_check(TrigDensity({2: 0.4}), gamma3(5), 100, 1e-8)
    assert not r.passed and r.worst_offset == 2
    with pytest.raises(PreconditionError):
        fourier_vanishing_check(Atomic((0.1,), (0.5,)), gamma4(2), 10)


def test_nonexistence_examples():
    assert diag_nonexistence_certificate(gamma_diagonal(gamma4(3)), 1, size=40) == []
    assert diag_nonexistence_certificate(bergman_diagonal(), 1, size=4) == [1, 2, 3]
    assert diag_nonexistence_certificate(diagonal_from_map({0: 2, 1: 2, 2: 2}), 0.5) == []
    # two distinct nonzero values fail for any mass
    C = diagonal_from_map({0: 1.0, 3: 2.5})
    for mass in (0.4, 1.0, 1 / 2.5, 7.0):
        assert diag_nonexistence_certificate(C, mass)


def _window_difference_max(mu, elements, N):
    inside = [g for g in elements if g < N]
    offsets = sorted({n - m for m in inside for n in inside if n != m})
    if not offsets:
        return 0.0
    vals, _ = fourier_coefficients(mu, offsets)
    return float(np.max(np.abs(vals)))


@pytest.mark.parametrize("mu", PROBABILITY, ids=lambda s: type(s).__name__)
@pytest.mark.parametrize("gamma", [gamma4(4), gamma3(4), gamma_from_elements([0, 2, 3, 9, 11])],
                         ids=["g4", "g3", "finite"])
def test_criteria_equivalent(mu, gamma):
    N = 48
    r = cmc_residual(gamma_diagonal(gamma), build_moment_matrix(mu, N))
    assert abs(r.residual - _window_difference_max(mu, gamma.elements, N)) <= 1e-14


@settings(max_examples=20, deadline=None)
@given(st.sets(st.integers(0, 63), max_size=40))
def test_lebesgue_universal(elements):
    C = diagonal_from_map({g: 1.0 for g in elements})
    assert cmc_residual(C, build_moment_matrix(Lebesgue(), 64)).residual == 0


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.integers(1, 30), st.floats(-0.2, 0.2), max_size=4), st.integers(1, 40))
def test_moment_matrix_psd(b, N):
    mu = TrigDensity(b)
    if mu.l1_mass < 1:
        assert psd_check(build_moment_matrix(mu, N).entries, 1e-10).passed
