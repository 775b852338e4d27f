import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergogap.errors import DimensionMismatch, NoConvergence, NotHermitian, SizeOverflow
from ergogap.linalg import hermitian_eigenvalues, is_hermitian, partial_trace, tensor_product


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    m = a @ a.conj().T
    return m / np.trace(m).real


def elementary_unitary(n, seed, rotations=None):
    rng = np.random.default_rng(seed)
    u = np.eye(n, dtype=complex)
    for _ in range(rotations or 3 * n):
        p, q = rng.choice(n, size=2, replace=False)
        th, a, b = rng.uniform(0, 2 * np.pi, size=3)
        g = np.eye(n, dtype=complex)
        g[p, p] = np.cos(th) * np.exp(1j * a)
        g[p, q] = np.sin(th) * np.exp(1j * b)
        g[q, p] = -np.sin(th) * np.exp(-1j * b)
        g[q, q] = np.cos(th) * np.exp(-1j * a)
        u = g @ u
    return u


def test_diagonal_sorted():
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [3, 2, 1])


def test_two_by_two_complex():
    # characteristic polynomial l^2 - 2l has roots 2 and 0
    np.testing.assert_allclose(hermitian_eigenvalues([[1, 1j], [-1j, 1]]), [2, 0], atol=1e-12)


def test_ghz_projector_rank_one():
    psi = np.zeros(8)
    psi[[0, 7]] = 1 / np.sqrt(2)
    ev = hermitian_eigenvalues(np.outer(psi, psi))
    np.testing.assert_allclose(ev, [1, 0, 0, 0, 0, 0, 0, 0], atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 27, 64])
def test_matches_lapack(n):
    m = random_hermitian(n, seed=n)
    expected = np.sort(np.linalg.eigvalsh(m))[::-1]
    np.testing.assert_allclose(hermitian_eigenvalues(m), expected, atol=1e-10 * np.linalg.norm(m))


@pytest.mark.parametrize("n", [2, 8, 27])
def test_trace_and_frobenius_invariants(n):
    m = random_hermitian(n, seed=100 + n)
    ev = hermitian_eigenvalues(m)
    assert abs(ev.sum() - np.trace(m).real) <= 1e-10 * max(1.0, abs(np.trace(m)))
    frob = np.linalg.norm(m)
    assert abs(np.sqrt(np.sum(ev**2)) - frob) <= 1e-9 * frob


def test_zero_matrix():
    np.testing.assert_array_equal(hermitian_eigenvalues(np.zeros((4, 4))), np.zeros(4))


def test_degenerate_spectrum():
    u = elementary_unitary(6, seed=3)
    m = u @ np.diag([2, 2, 2, -1, -1, 0]) @ u.conj().T
    np.testing.assert_allclose(hermitian_eigenvalues(m), [2, 2, 2, 0, -1, -1], atol=1e-10)


def test_not_hermitian():
    with pytest.raises(NotHermitian) as err:
        hermitian_eigenvalues([[1, 1], [0, 1]])
    assert err.value.deviation == pytest.approx(1.0)


def test_no_convergence_when_capped():
    with pytest.raises(NoConvergence):
        hermitian_eigenvalues(random_hermitian(6, seed=1), max_sweeps=0)


def test_non_square_rejected():
    with pytest.raises(DimensionMismatch):
        hermitian_eigenvalues(np.zeros((2, 3)))


def test_is_hermitian():
    assert is_hermitian([[1, 2j], [-2j, 0]])
    assert not is_hermitian([[1, 2j], [2j, 0]])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 4, 8]))
def test_sum_equals_trace(seed, n):
    m = random_hermitian(n, seed)
    assert abs(hermitian_eigenvalues(m).sum() - np.trace(m).real) <= 1e-10 * max(1.0, np.linalg.norm(m))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3, 8]))
def test_unitary_invariance(seed, n):
    rho = random_density(n, seed)
    u = elementary_unitary(n, seed + 1)
    np.testing.assert_allclose(
        hermitian_eigenvalues(u @ rho @ u.conj().T), hermitian_eigenvalues(rho), atol=1e-9
    )


# tensor products ------------------------------------------------------------


def test_identity_kron():
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))


def test_diag_kron():
    np.testing.assert_array_equal(tensor_product(np.diag([0, 1]), np.eye(2)), np.diag([0, 0, 1, 1]))
    np.testing.assert_array_equal(tensor_product(np.diag([0, 1]), np.diag([0, 1])), np.diag([0, 0, 0, 1]))


def test_kron_index_rule():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    ab = tensor_product(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(3):
                for l in range(3):
                    # vectorized complex multiply may differ from scalar by an ulp
                    assert ab[i * 3 + k, j * 3 + l] == pytest.approx(a[i, j] * b[k, l], rel=1e-15, abs=0)


def test_kron_associative():
    rng = np.random.default_rng(1)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    np.testing.assert_allclose(left, right, rtol=1e-15, atol=1e-15)


def test_kron_cap():
    with pytest.raises(SizeOverflow):
        tensor_product(np.eye(64), np.eye(65))


# partial trace --------------------------------------------------------------


def _ket(bits):
    v = np.zeros(8)
    v[int(bits, 2)] = 1.0
    return v


def test_partial_trace_ghz():
    psi = (_ket("000") + _ket("111")) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(np.outer(psi, psi), (2, 2, 2), "A"), np.eye(2) / 2)


def test_partial_trace_product():
    psi = _ket("000")
    np.testing.assert_allclose(partial_trace(np.outer(psi, psi), (2, 2, 2), "B"), np.diag([1, 0]))


def test_partial_trace_w():
    # (|100> + |010> + |001>)/sqrt3 traced over A, B leaves C in |0> twice, |1> once
    psi = (_ket("100") + _ket("010") + _ket("001")) / np.sqrt(3)
    np.testing.assert_allclose(partial_trace(np.outer(psi, psi), (2, 2, 2), "C"), np.diag([2 / 3, 1 / 3]), atol=1e-15)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(np.eye(8), (2, 2, 3), "A")
    with pytest.raises(DimensionMismatch):
        partial_trace(np.eye(8), (2, 2, 2), "D")


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dims=st.sampled_from([(2, 2, 2), (2, 3, 2), (3, 3, 3)]))
def test_partial_trace_of_products(seed, dims):
    factors = [random_density(n, seed + i) * (i + 1.5) for i, n in enumerate(dims)]
    m = tensor_product(tensor_product(factors[0], factors[1]), factors[2])
    traces = [np.trace(f) for f in factors]
    for k in range(3):
        others = np.prod([traces[j] for j in range(3) if j != k])
        np.testing.assert_allclose(partial_trace(m, dims, k), factors[k] * others, atol=1e-12)
        assert abs(np.trace(partial_trace(m, dims, k)) - np.trace(m)) <= 1e-12
