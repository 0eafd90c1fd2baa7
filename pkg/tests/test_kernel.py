import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import disc_points
from hardyrep.errors import DomainError, TruncationError, ValidationError
from hardyrep.gamma import gamma3, gamma4, gamma_from_elements
from hardyrep.kernel import (
    DenseCoeffs,
    bergman_diagonal,
    diagonal_from_map,
    eval_product,
    eval_series,
    gamma_diagonal,
    gram_at_points,
    h2_norm_sq,
    kernel_form,
    named_kernel,
    psd_check,
    span_coefficients,
    szego,
    szego_diagonal,
)

K4 = gamma_diagonal(gamma4(3))
K3 = gamma_diagonal(gamma3(3))


def test_gamma_kernel_at_origin():
    for w in [0.3, -0.7j, 0.2 + 0.6j]:
        kv = eval_series(K4, w, 0)
        assert kv.value == 1


def test_szego_dense_identity():
    C = DenseCoeffs(np.eye(64))
    kv = eval_series(C, 0.5, 0.5)
    assert abs(kv.value - 4 / 3) <= kv.tail_bound + 1 / 3 * 0.25**64 / (1 - 0.25) * 4


def test_szego_diagonal_closed_form():
    kv = eval_series(szego_diagonal(), 0.5, 0.5)
    assert abs(kv.value - 4 / 3) <= kv.tail_bound
    assert kv.tail_bound <= 1e-12


def test_bergman():
    kv = eval_series(bergman_diagonal(), 0.5, 0.5)
    assert abs(kv.value - 16 / 9) <= max(kv.tail_bound, 1e-15)
    # independent partial sums
    n = np.arange(200)
    assert abs(np.sum((n + 1) * 0.25**n) - 16 / 9) < 1e-14


def test_product_examples():
    kv = eval_product(4, 0.5, 0.5)
    ref = 1.25 * (1 + 0.25**4) * (1 + 0.25**16) * (1 + 0.25**64)
    assert abs(kv.value - ref) <= 1e-12
    assert abs(kv.value - 1.2548828128) < 1e-10
    assert eval_product(3, 0, 0.7 + 0.1j).value == 1
    p = eval_product(4, 0.9, 0.9, tol=1e-12)
    s = eval_series(K4, 0.9, 0.9, tol=1e-12)
    assert abs(p.value - s.value) <= 2e-12


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_series(K4, 1.0, 0.1)
    with pytest.raises(DomainError):
        eval_product(4, 0.1, 1j)
    with pytest.raises(DomainError):
        gram_at_points(szego, [0, 1.01])


def test_dense_validation():
    with pytest.raises(ValidationError):
        DenseCoeffs(np.array([[1, 1j], [1j, 1]]))
    with pytest.raises(ValidationError):
        DenseCoeffs(np.array([[1, 2], [2, 1]]))
    with pytest.raises(ValidationError):
        DenseCoeffs(np.ones((2, 3)))
    with pytest.raises(ValidationError):
        diagonal_from_map({1: -1.0})


def test_dense_tail_truncation():
    C = DenseCoeffs(np.eye(4), tail_sup=1.0)
    with pytest.raises(TruncationError):
        eval_series(C, 0.9, 0.9, tol=1e-12)
    kv = eval_series(C, 0.01, 0.01, tol=1e-6)
    assert abs(kv.value - 1 / (1 - 1e-4)) <= kv.tail_bound


def test_series_product_identity():
    rng = np.random.default_rng(5)
    w = disc_points(rng, 100, 0.9)
    z = disc_points(rng, 100, 0.9)
    for base, C in [(4, K4), (3, K3)]:
        for a, b in zip(w, z):
            p = eval_product(base, a, b)
            s = eval_series(C, a, b)
            assert abs(p.value - s.value) <= p.tail_bound + s.tail_bound


def test_product_matches_finite_gamma_sum():
    # product oracle against the direct sum over an explicit level-12 set
    g = np.array(gamma4(12).elements, dtype=float)
    for x in [0.5, 0.3 + 0.4j, -0.8j]:
        direct = np.sum(np.power(complex(x), g))
        kv = eval_product(4, 0.95, x / 0.95)
        assert abs(kv.value - direct) <= kv.tail_bound + 1e-12


def test_hermitian_symmetry():
    rng = np.random.default_rng(6)
    pts = disc_points(rng, 60, 0.95)
    for C in [K4, K3, bergman_diagonal(), szego_diagonal()]:
        for a, b in zip(pts[:30], pts[30:]):
            k1 = eval_series(C, a, b)
            k2 = eval_series(C, b, a)
            assert abs(k1.value - np.conj(k2.value)) <= 2 * max(k1.tail_bound, k2.tail_bound)


def test_gram_examples():
    assert np.array_equal(gram_at_points(szego, [0]), np.array([[1]]))
    G = gram_at_points(named_kernel("k4"), [0, 0.5])
    assert np.allclose(G, [[1, 1], [1, 1.2548828127921752]], atol=1e-12, rtol=0)
    G = gram_at_points(named_kernel("k3"), [0.1, -0.4, 0.6])
    assert np.all(G.imag == 0)
    assert np.array_equal(G, G.T)


def test_gram_orientation():
    w, z = 0.3 + 0.2j, -0.1 + 0.5j
    G = gram_at_points(szego, [w, z])
    assert G[0, 1] == szego(z, w)


def test_psd_examples():
    lam, ok = psd_check(np.eye(3))
    assert lam == pytest.approx(1) and ok
    lam, ok = psd_check(np.array([[1, 2], [2, 1]]))
    assert lam == pytest.approx(-1) and not ok
    with pytest.raises(ValidationError):
        psd_check(np.array([[1, 2], [0, 1]]))


@pytest.mark.parametrize("name", ["k3", "k4", "szego", "bergman"])
def test_gram_positive(name):
    rng = np.random.default_rng(7)
    for npts in (5, 20, 30):
        G = gram_at_points(named_kernel(name), disc_points(rng, npts, 0.9))
        assert psd_check(G, 1e-10).passed


def test_h2_norm_examples():
    assert h2_norm_sq([1, 0, 0, 0]) == 1
    assert h2_norm_sq([1, 1]) == 2
    assert h2_norm_sq([1, 1, 5], N=2) == 2


def test_projection_norm_identity():
    # <C v, v> equals ||C v||^2 for a 0/1 diagonal
    rng = np.random.default_rng(8)
    for g in [gamma4(4), gamma3(4), gamma_from_elements([0, 2, 3, 7, 30])]:
        C = gamma_diagonal(g)
        for _ in range(10):
            xi = rng.normal(size=4) + 1j * rng.normal(size=4)
            ws = disc_points(rng, 4, 0.8)
            size = 160
            form = kernel_form(C, xi, ws, size)
            a = span_coefficients(C, xi, ws, size)
            assert abs(form - h2_norm_sq(a)) <= 1e-10 * max(1.0, form)


def test_span_coefficients_reproduce_kernel():
    # sum_n a_n z^n equals sum_j xi_j K(w_j, z)
    rng = np.random.default_rng(9)
    xi = rng.normal(size=3) + 1j * rng.normal(size=3)
    ws = disc_points(rng, 3, 0.7)
    z = 0.4 - 0.3j
    a = span_coefficients(K4, xi, ws, 200)
    lhs = np.polyval(a[::-1], z)
    rhs = sum(x * eval_product(4, w, z).value for x, w in zip(xi, ws))
    assert abs(lhs - rhs) < 1e-12


@settings(max_examples=50, deadline=None)
@given(
    st.floats(0, 0.95), st.floats(0, 2 * np.pi), st.floats(0, 0.95), st.floats(0, 2 * np.pi),
    st.sampled_from([1e-6, 1e-10, 1e-13]),
)
def test_szego_within_tail(r1, t1, r2, t2, tol):
    w, z = r1 * np.exp(1j * t1), r2 * np.exp(1j * t2)
    kv = eval_series(szego_diagonal(), w, z, tol)
    assert abs(kv.value - szego(w, z)) <= kv.tail_bound + 1e-15
    assert abs(kv.value - szego(w, z)) <= tol + 1e-13


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 0.99), st.integers(2, 5))
def test_product_tail_certified(r, base):
    p = eval_product(base, r, r)
    # independent evaluation with many more factors
    x = r * r
    ref = 1.0
    for j in range(60):
        ref *= 1 + x ** (base**j)
    assert abs(p.value - ref) <= p.tail_bound + 1e-14
