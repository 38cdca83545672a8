import numpy as np
import pytest
import scipy.sparse

from src.core.errors import ConvergenceError, DomainError, IncompatibilityError
from src.swe import Grid, SWEConfig, ShallowWaterModel, balanced_ic
from src.swe import balance
from src.swe.balance import balance_rhs, periodic_laplacian
from src.swe.cases import jet_profile
from src.swe import operators as op


@pytest.fixture
def jet_grid():
    return Grid(nx=32, ny=32, dx=2.0e5, dy=2.0e5)


def _jet_velocity(grid):
    u = jet_profile(grid, scale=grid.ny * grid.dy / (2 * np.pi), u_max=20.0, width=0.3, centers=(np.pi / 2, 3 * np.pi / 2))
    return u, np.zeros(grid.shape)


def test_sparse_laplacian_matches_stencil(jet_grid, rng):
    a = rng.normal(size=jet_grid.shape)
    L = periodic_laplacian(jet_grid)
    assert scipy.sparse.issparse(L)
    np.testing.assert_allclose((L @ a.ravel()).reshape(jet_grid.shape), op.laplacian(a, jet_grid.dx, jet_grid.dy), atol=1e-20)


def test_zero_velocity_gives_flat_thickness(small_grid):
    config = SWEConfig(H=1000.0)
    state = balanced_ic((np.zeros(small_grid.shape), np.zeros(small_grid.shape)), config, small_grid)
    np.testing.assert_array_equal(state.h, np.full(small_grid.shape, 1000.0))


@pytest.mark.parametrize("advection", [False, True])
def test_zonal_jet_is_balanced(jet_grid, advection):
    config = SWEConfig(H=5000.0, f=1e-4, momentum_advection=advection)
    state = balanced_ic(_jet_velocity(jet_grid), config, jet_grid)
    assert np.mean(state.h) == pytest.approx(5000.0, rel=1e-14)

    du, dv, _ = ShallowWaterModel(jet_grid, config).tendencies(state)
    scale = config.f * np.abs(state.u).max()
    assert np.abs(du).max() <= 1e-9 * scale
    assert np.abs(dv).max() <= 1e-9 * scale


def test_elliptic_residual_is_small(jet_grid):
    config = SWEConfig(H=5000.0, f=1e-4)
    u, v = _jet_velocity(jet_grid)
    state = balanced_ic((u, v), config, jet_grid)
    rhs = balance_rhs(u, v, config, jet_grid)
    rhs -= rhs.mean()
    residual = op.laplacian(state.h, jet_grid.dx, jet_grid.dy) - rhs
    assert np.linalg.norm(residual) <= 1e-10 * np.linalg.norm(rhs)


def test_topography_is_absorbed_into_free_surface(jet_grid):
    X, _ = jet_grid.coords("center")
    zb = (50.0 * np.cos(2 * np.pi * X / (jet_grid.nx * jet_grid.dx))).tolist()
    flat = balanced_ic(_jet_velocity(jet_grid), SWEConfig(H=5000.0), jet_grid)
    hilly = balanced_ic(_jet_velocity(jet_grid), SWEConfig(H=5000.0, zb=zb), jet_grid)
    np.testing.assert_allclose(hilly.h + np.asarray(zb), flat.h, atol=1e-8)


def test_incompatible_rhs_is_reported(small_grid, monkeypatch):
    monkeypatch.setattr(balance, "balance_rhs", lambda *a: np.ones(small_grid.shape))
    with pytest.raises(IncompatibilityError):
        balanced_ic((np.ones(small_grid.shape), np.zeros(small_grid.shape)), SWEConfig(H=10.0), small_grid)


def test_iteration_cap_is_a_convergence_error(jet_grid, monkeypatch):
    monkeypatch.setattr(balance, "cg", lambda A, b, **kw: (np.zeros_like(b), 5))
    with pytest.raises(ConvergenceError):
        balanced_ic(_jet_velocity(jet_grid), SWEConfig(H=5000.0), jet_grid)


def test_bad_velocity_fields_are_domain_errors(small_grid):
    config = SWEConfig(H=10.0)
    with pytest.raises(DomainError):
        balanced_ic((np.zeros((3, 3)), np.zeros((3, 3))), config, small_grid)
    u = np.zeros(small_grid.shape)
    u[0, 0] = np.inf
    with pytest.raises(DomainError):
        balanced_ic((u, np.zeros(small_grid.shape)), config, small_grid)
