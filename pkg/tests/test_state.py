import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergogap.errors import BadLength, DimensionMismatch, InvalidState, NotNormalized, WeightSum
from ergogap.gallery import SeededStream
from ergogap.state import (
    DensityMatrix,
    from_pure,
    global_spectrum,
    marginal_spectrum,
    mix,
    to_spectrum,
    validate_matrix,
)

GHZ = np.zeros(8)
GHZ[[0, 7]] = 1 / np.sqrt(2)
W = np.zeros(8)
W[[4, 2, 1]] = 1 / np.sqrt(3)


def basis(i, n=8):
    v = np.zeros(n)
    v[i] = 1.0
    return v


def test_from_pure_ground():
    rho = from_pure(basis(0))
    np.testing.assert_array_equal(rho.mat, np.diag(basis(0)))


def test_from_pure_ghz_corners():
    m = from_pure(GHZ).mat
    for i, j in [(0, 0), (0, 7), (7, 0), (7, 7)]:
        assert m[i, j] == pytest.approx(0.5)
    assert np.count_nonzero(np.abs(m) > 1e-15) == 4


def test_from_pure_w_nine_entries():
    m = from_pure(W).mat
    nz = np.abs(m) > 1e-15
    assert nz.sum() == 9
    np.testing.assert_allclose(m[nz], 1 / 3)


def test_from_pure_renormalizes_small_drift():
    rho = from_pure(basis(3) * (1 + 5e-7))
    assert np.trace(rho.mat).real == pytest.approx(1.0, abs=1e-15)


def test_from_pure_errors():
    with pytest.raises(NotNormalized):
        from_pure(basis(0) * 1.1)
    with pytest.raises(BadLength):
        from_pure(np.ones(9) / 3)


def test_density_matrix_rejects_bad_input():
    with pytest.raises(InvalidState, match="trace"):
        DensityMatrix(2, np.eye(8) / 8 * 0.9)
    with pytest.raises(InvalidState, match="Hermitian"):
        m = np.eye(8) / 8
        m = m.astype(complex)
        m[0, 1] = 0.1
        DensityMatrix(2, m)
    with pytest.raises(InvalidState, match="negative"):
        DensityMatrix(2, np.diag([1.1, -0.1, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(InvalidState, match="side"):
        DensityMatrix(3, np.eye(8) / 8)


def test_density_matrix_is_immutable():
    rho = DensityMatrix(2, np.eye(8) / 8)
    with pytest.raises(ValueError):
        rho.mat[0, 0] = 1.0


def test_validate_matrix_report():
    report, evals = validate_matrix(np.eye(8) / 8, 2)
    assert report.valid and evals is not None
    assert report.min_eigenvalue == pytest.approx(1 / 8)
    report, evals = validate_matrix(np.eye(8) / 8 * 0.9, 2)
    assert not report.valid and report.trace == pytest.approx(0.9)


def test_mix_identity_and_diagonal():
    sigma = from_pure(GHZ)
    np.testing.assert_array_equal(mix([(1.0, sigma)]).mat, sigma.mat)
    m = mix([(0.5, from_pure(basis(0))), (0.5, from_pure(basis(7)))]).mat
    np.testing.assert_allclose(m, np.diag([0.5, 0, 0, 0, 0, 0, 0, 0.5]))


def test_mix_white_noise_at_three_sevenths():
    p = 3 / 7
    m = mix([(1 - p, DensityMatrix(2, np.eye(8) / 8)), (p, from_pure(GHZ))]).mat
    expected = np.eye(8) / 14
    expected[0, 0] += 3 / 14
    expected[7, 7] += 3 / 14
    expected[0, 7] = expected[7, 0] = 3 / 14
    np.testing.assert_allclose(m, expected, atol=1e-15)


def test_mix_errors():
    rho = from_pure(GHZ)
    with pytest.raises(WeightSum):
        mix([(0.5, rho), (0.4, rho)])
    with pytest.raises(WeightSum):
        mix([(1.5, rho), (-0.5, rho)])
    with pytest.raises(DimensionMismatch):
        mix([(0.5, rho), (0.5, DensityMatrix(3, np.eye(27) / 27))])


def test_global_spectrum_examples():
    np.testing.assert_allclose(global_spectrum(from_pure(GHZ)), basis(0), atol=1e-12)
    np.testing.assert_allclose(global_spectrum(DensityMatrix(2, np.eye(8) / 8)), np.full(8, 1 / 8))


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.9, 1.0])
def test_global_spectrum_colored_noise(p):
    proj = np.outer(GHZ, GHZ)
    m = 0.5 * p * (np.diag(basis(0)) + np.diag(basis(7))) + (1 - p) * proj
    # independent reference: LAPACK diagonalization
    oracle = np.sort(np.linalg.eigvalsh(m))[::-1]
    np.testing.assert_allclose(oracle, [1 - p / 2, p / 2, 0, 0, 0, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(global_spectrum(DensityMatrix(2, m)), oracle, atol=1e-10)


@pytest.mark.parametrize("which", "ABC")
def test_marginal_spectra(which):
    np.testing.assert_allclose(marginal_spectrum(from_pure(GHZ), which), [0.5, 0.5], atol=1e-12)
    np.testing.assert_allclose(marginal_spectrum(from_pure(W), which), [2 / 3, 1 / 3], atol=1e-12)
    np.testing.assert_allclose(marginal_spectrum(from_pure(basis(0)), which), [1, 0], atol=1e-12)


def test_to_spectrum_clamps_and_rejects():
    x = to_spectrum([0.5, 0.5 + 5e-10, -5e-10])
    assert x[-1] == 0.0 and x.sum() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(InvalidState):
        to_spectrum([1.0, -1e-6])


def _random_qudit_state(stream, d):
    v = stream.unit_vector(d)
    a = np.outer(v, v.conj())
    w = stream.unit_vector(d)
    t = stream.uniform()
    return t * a + (1 - t) * np.outer(w, w.conj())


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**63), d=st.sampled_from([2, 3]))
def test_product_state_spectrum_is_outer_product(seed, d):
    stream = SeededStream(seed)
    factors = [_random_qudit_state(stream, d) for _ in range(3)]
    rho = DensityMatrix(d, np.kron(np.kron(factors[0], factors[1]), factors[2]))
    margs = [np.sort(np.linalg.eigvalsh(f))[::-1] for f in factors]
    outer = np.sort(np.einsum("i,j,k->ijk", *margs).ravel())[::-1]
    np.testing.assert_allclose(global_spectrum(rho), np.clip(outer, 0, None), atol=1e-9)
    for k, which in enumerate("ABC"):
        np.testing.assert_allclose(marginal_spectrum(rho, which), margs[k], atol=1e-9)
    assert global_spectrum(rho).sum() == pytest.approx(1.0, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**63), k=st.integers(1, 5))
def test_mix_trace_linear(seed, k):
    stream = SeededStream(seed)
    states = [from_pure(stream.unit_vector(8)) for _ in range(k)]
    weights = stream.dirichlet_flat(k)
    m = mix(list(zip(weights, states)))
    assert abs(np.trace(m.mat).real - sum(w * np.trace(s.mat).real for w, s in zip(weights, states))) <= 1e-12
