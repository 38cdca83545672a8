import math

import numpy as np
import pytest

from conftest import C2_OPTIMUM, ROBUST
from src.core.errors import NumericalFailure
from src.vn.amplification import build_amplification
from src.vn.spectrum import char_poly, cubic_roots, eigenvalues, spectral_radius_batch, spectrum
from src.vn.types import LinearWaveParams


def _sorted(z):
    return np.array(sorted(np.asarray(z), key=lambda c: (round(c.real, 9), round(c.imag, 9))))


def test_identity_has_triple_unit_root():
    result = spectrum(np.eye(3))
    np.testing.assert_allclose(result.eigenvalues, [1, 1, 1], atol=1e-12)
    assert result.spectral_radius == pytest.approx(1.0)


def test_diagonal_radius():
    result = spectrum(np.diag([0.5, 1j, -0.3]))
    assert result.spectral_radius == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(_sorted(result.eigenvalues), _sorted([0.5, 1j, -0.3]), atol=1e-12)


def test_char_poly_of_diagonal():
    c2, c1, c0 = char_poly(np.diag([1.0, 2.0, 3.0]))
    assert (c2, c1, c0) == (-6.0, 11.0, -6.0)
    np.testing.assert_allclose(_sorted(cubic_roots(c2, c1, c0)), [1, 2, 3], atol=1e-12)


def test_random_matrices_satisfy_residual_bound(rng):
    for _ in range(200):
        G = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        result = spectrum(G)
        bound = 1e-9 * np.linalg.norm(G, 2)
        assert np.all(result.residuals(G) <= bound)
        np.testing.assert_allclose(_sorted(result.eigenvalues), _sorted(np.linalg.eigvals(G)), atol=1e-9)


def test_batched_eigenvalues_match_single_calls(rng):
    G = rng.normal(size=(16, 3, 3)) + 1j * rng.normal(size=(16, 3, 3))
    batch = eigenvalues(G)
    for idx in range(16):
        np.testing.assert_allclose(batch[idx], eigenvalues(G[idx]), atol=1e-13)


@pytest.mark.parametrize("nu", [0.5, 1.0, 1.5, 1.9])
def test_amplification_eigenpairs_satisfy_residual_bound(nu):
    params = LinearWaveParams(nu=nu, k_dx=math.pi, l_dy=math.pi, dt_f=1e-2)
    system = build_amplification(params, C2_OPTIMUM)
    result = spectrum(system)
    assert np.all(result.residuals(system.G) <= 1e-9 * np.linalg.norm(system.G, 2))


def test_radius_of_stable_grid_scale_mode_is_bounded():
    params = LinearWaveParams(nu=1.0, k_dx=math.pi, l_dy=math.pi, dt_f=1e-2)
    assert spectrum(build_amplification(params, ROBUST), with_vectors=False).spectral_radius <= 1.0 + 1e-10


def test_non_finite_matrix_is_a_numerical_failure():
    G = np.eye(3, dtype=complex)
    G[1, 2] = np.nan
    with pytest.raises(NumericalFailure):
        spectrum(G)


def test_batch_radius_is_nan_for_non_finite_entries():
    G = np.stack([np.eye(3), np.full((3, 3), np.inf)]).astype(complex)
    rho = spectral_radius_batch(G)
    assert rho[0] == pytest.approx(1.0)
    assert np.isnan(rho[1])
