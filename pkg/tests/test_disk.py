import numpy as np
import pytest
from numpy.testing import assert_allclose

from bvpnode import boundary as bd
from bvpnode import disk as dk
from bvpnode.errors import InvalidGrid, SpectrumProximity

import oracles

N = 8


def const_source(grid, value=1.0, size=N):
    return dk.DiskFunction.from_radial_callable(
        size, grid, lambda n, r: value * np.ones_like(r) if n == 0 else 0.0 * r
    )


def mode_source(grid, n0, profile, size=N):
    return dk.DiskFunction.from_radial_callable(
        size, grid, lambda n, r: profile(r) if n == n0 else 0.0 * r
    )


# ---------------------------------------------------------------------------
# grid machinery


def test_grid_nodes_and_weights(grid24):
    assert grid24.nodes[0] == 0.0 and grid24.nodes[-1] == 1.0
    assert np.all(np.diff(grid24.nodes) > 0)
    assert np.all(grid24.weights > 0)
    # integrates low-degree polynomials exactly
    assert_allclose(np.sum(grid24.weights), 1.0, rtol=1e-14)
    assert_allclose(np.sum(grid24.weights * grid24.nodes), 0.5, rtol=1e-13)


def test_differentiation_table(grid24):
    r = grid24.nodes
    assert np.max(np.abs(grid24.D @ r**2 - 2 * r)) < 1e-12
    assert np.max(np.abs(grid24.D @ r**5 - 5 * r**4)) < 1e-11


def test_value_coeff_transforms(grid24, rng):
    vals = rng.standard_normal((3, grid24.M_r + 1))
    back = grid24.cheb_to_values(grid24.values_to_cheb(vals))
    assert_allclose(back, vals, atol=1e-12)


# ---------------------------------------------------------------------------
# harmonic continuation


def test_poisson_extend_constant(grid24):
    phi = bd.BoundaryFunction.from_modes(N, {0: 1.0})
    u = dk.poisson_extend(phi, grid24)
    assert_allclose(u.values()[N], np.ones(grid24.M_r + 1), atol=1e-14)


def test_poisson_extend_mode_one(grid24):
    phi = bd.BoundaryFunction.from_modes(N, {1: 1.0})
    u = dk.poisson_extend(phi, grid24)
    assert_allclose(u.values()[N + 1], grid24.nodes, atol=1e-13)


def test_poisson_extend_is_harmonic(grid24):
    phi = bd.BoundaryFunction.from_modes(N, {2: 0.5, -2: 0.5})  # cos 2theta
    u = dk.poisson_extend(phi, grid24)
    assert dk.laplacian_apply(u).norm() < 1e-10
    assert np.max(np.abs(dk.trace_dirichlet(u).coeffs - phi.coeffs)) < 1e-12


# ---------------------------------------------------------------------------
# Dirichlet and Helmholtz solves


def test_dirichlet_constant_source(grid24):
    u = dk.dirichlet_solve(const_source(grid24))
    assert np.max(np.abs(u.values()[N] - (grid24.nodes**2 - 1) / 4)) < 1e-13


def test_dirichlet_zero_source(grid24):
    u = dk.dirichlet_solve(dk.DiskFunction.zero(N, grid24))
    assert u.norm() == 0.0


def test_dirichlet_mode_one_source(grid24):
    f = mode_source(grid24, 1, lambda r: r)
    u = dk.dirichlet_solve(f)
    exact = (grid24.nodes**3 - grid24.nodes) / 8
    assert np.max(np.abs(u.values()[N + 1] - exact)) < 1e-13


def test_helmholtz_at_zero_matches_dirichlet(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 4)
    a = dk.helmholtz_dirichlet_solve(f, 0.0)
    b = dk.dirichlet_solve(f)
    assert (a - b).norm() < 1e-14


@pytest.mark.parametrize("lam", [-3.0, 1.0])
def test_helmholtz_constant_source_vs_series(grid24, lam):
    u = dk.helmholtz_dirichlet_solve(const_source(grid24), lam)
    exact = oracles.helmholtz_mode0_solution(lam, grid24.nodes)
    assert np.max(np.abs(u.values()[N] - exact)) < 1e-12


def test_helmholtz_residual(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 4)
    u = dk.helmholtz_dirichlet_solve(f, -3.0)
    res = dk.laplacian_apply(u, -3.0) - f
    assert res.norm() / f.norm() < 1e-8
    assert dk.trace_dirichlet(u).norm() < 1e-12


def test_resolvent_identity(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 4)
    assert (dk.resolvent_apply(f, 0.0) - f).norm() == 0.0
    w = dk.resolvent_apply(f, -3.0)
    recon = w - (-3.0) * dk.dirichlet_solve(w)
    assert (recon - f).norm() / f.norm() < 1e-8


def test_resolvent_constant_source(grid24):
    f = const_source(grid24)
    w = dk.resolvent_apply(f, 1.0)
    exact = 1.0 + oracles.helmholtz_mode0_solution(1.0, grid24.nodes)
    assert np.max(np.abs(w.values()[N] - exact)) < 1e-12


def test_resolvent_harmonic_paths_agree(grid24, rng):
    phi = dk.random_boundary_function(rng, N, 4)
    direct = dk.resolvent_harmonic(phi, grid24, -3.0)
    other = dk.resolvent_apply(dk.poisson_extend(phi, grid24), -3.0)
    assert (direct - other).norm() / direct.norm() < 1e-8
    assert np.max(np.abs(dk.trace_dirichlet(direct).coeffs - phi.coeffs)) < 1e-10


def test_resolvent_harmonic_bessel_profile(grid24):
    phi = bd.BoundaryFunction.from_modes(N, {0: 1.0})
    u = dk.resolvent_harmonic(phi, grid24, 1.0)
    exact = np.array(
        [oracles.series_bessel_i(0, r) for r in grid24.nodes]
    ) / oracles.series_bessel_i(0, 1.0)
    assert np.max(np.abs(u.values()[N] - exact)) < 1e-12


def test_resolvent_harmonic_at_zero(grid24, rng):
    phi = dk.random_boundary_function(rng, N, 4)
    assert (
        dk.resolvent_harmonic(phi, grid24, 0.0) - dk.poisson_extend(phi, grid24)
    ).norm() == 0.0


# ---------------------------------------------------------------------------
# adjoint and traces


def test_gstar_examples(grid24):
    assert_allclose(dk.gstar(const_source(grid24)).coeff(0), 0.5, atol=1e-14)
    f = mode_source(grid24, 1, lambda r: r)
    assert_allclose(dk.gstar(f).coeff(1), 0.25, atol=1e-14)


def test_gstar_equals_neumann_trace_of_solution(grid24):
    f = const_source(grid24)
    u = dk.dirichlet_solve(f)
    lhs = dk.trace_neumann(u)
    assert_allclose(lhs.coeff(0), 0.5, atol=1e-12)
    assert np.max(np.abs(lhs.coeffs - dk.gstar(f).coeffs)) < 1e-12


def test_neumann_trace_examples(grid24):
    u = dk.poisson_extend(bd.BoundaryFunction.from_modes(N, {1: 1.0}), grid24)
    assert_allclose(dk.trace_neumann(u).coeff(1), 1.0, atol=1e-12)
    one = dk.poisson_extend(bd.BoundaryFunction.from_modes(N, {0: 1.0}), grid24)
    assert dk.trace_neumann(one).norm() < 1e-12


def test_dirichlet_trace_of_solution_vanishes(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 4)
    assert dk.trace_dirichlet(dk.dirichlet_solve(f)).norm() < 1e-12


def test_laplacian_examples(grid24):
    u = dk.poisson_extend(bd.BoundaryFunction.from_modes(N, {1: 1.0}), grid24)
    assert dk.laplacian_apply(u).norm() < 1e-10
    u2 = mode_source(grid24, 2, lambda r: r**2)  # r^2 cos-ish single mode
    res = dk.laplacian_apply(u2, 1.0) + u2
    assert res.norm() < 1e-9


def test_adjointness(grid24, rng):
    for _ in range(5):
        phi = dk.random_boundary_function(rng, N, 6)
        f = dk.random_disk_function(rng, N, grid24, 6)
        lhs = dk.inner_disk(dk.poisson_extend(phi, grid24), f)
        rhs = bd.inner(phi, dk.gstar(f))
        assert abs(lhs - rhs) < 1e-10 * phi.norm() * f.norm()


def test_dtn_matches_circle_multiplier(grid24, rng):
    phi = dk.random_boundary_function(rng, N, 6)
    lhs = dk.trace_neumann(dk.poisson_extend(phi, grid24))
    rhs = bd.dtn_circle(phi)
    assert np.max(np.abs(lhs.coeffs - rhs.coeffs)) < 1e-9


def test_dtn_matrix_symmetry(grid24):
    # the map phi -> normal trace of harmonic continuation is a real
    # nonnegative diagonal in the Fourier basis
    dim = 2 * N + 1
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        e = bd.BoundaryFunction.from_modes(N, {j - N: 1.0})
        mat[:, j] = dk.trace_neumann(dk.poisson_extend(e, grid24)).coeffs
    off = mat - np.diag(np.diag(mat))
    assert np.max(np.abs(off)) < 1e-9
    diag = np.diag(mat)
    assert np.max(np.abs(diag.imag)) < 1e-9
    assert np.all(diag.real > -1e-9)


# ---------------------------------------------------------------------------
# spectrum guard


def test_guard_rejects_first_eigenvalue():
    j01 = oracles.first_j0_zero()
    assert abs(j01 - 2.404825557695773) < 1e-12
    report = dk.spectrum_guard(-j01 * j01, N)
    assert not report.passes
    assert report.distance < 1e-10


def test_guard_accepts_resolvent_points():
    assert dk.spectrum_guard(0.0, N).passes
    assert dk.spectrum_guard(1.0, N).passes
    assert dk.spectrum_guard(2 + 0.5j, N).passes


def test_guard_raises_through_solver(grid24):
    j01 = oracles.first_j0_zero()
    with pytest.raises(SpectrumProximity):
        dk.helmholtz_dirichlet_solve(const_source(grid24), -j01 * j01)


def test_resolvent_kernel_small(grid24, rng):
    for lam in (-3.0, 1.0, 2 + 0.5j):
        phi = dk.random_boundary_function(rng, N, 4)
        u = dk.resolvent_harmonic(phi, grid24, lam)
        lift = dk.poisson_extend(phi, grid24)
        assert dk.laplacian_apply(u, lam).norm() <= 1e-8 * lift.norm()


# ---------------------------------------------------------------------------
# data type behavior


def test_disk_norm_closed_form(grid24):
    u = dk.poisson_extend(bd.BoundaryFunction.from_modes(N, {1: 1.0}), grid24)
    # |r e^{i theta}|^2 integrates to 2*pi/4
    assert_allclose(u.norm() ** 2, np.pi / 2, rtol=1e-12)


def test_regularity_of_solver_outputs(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 6)
    assert f.regularity_defect() < 1e-2
    assert dk.dirichlet_solve(f).regularity_defect() < 1e-2
    phi = dk.random_boundary_function(rng, N, 6)
    assert dk.poisson_extend(phi, grid24).regularity_defect() < 1e-2


def test_disk_json_round_trip(grid24, rng):
    f = dk.random_disk_function(rng, N, grid24, 3)
    back = dk.DiskFunction.from_json_obj(f.to_json_obj(), grid24)
    assert np.array_equal(back.cheb, f.cheb)


def test_eval_polar_consistency(grid24):
    phi = bd.BoundaryFunction.from_modes(N, {2: 1.0})
    u = dk.poisson_extend(phi, grid24)
    val = u.eval_polar(0.5, 0.3)
    assert abs(val - 0.25 * np.exp(0.6j)) < 1e-12


def test_incompatible_grids_rejected(grid24):
    other = dk.RadialGrid(16)
    with pytest.raises(InvalidGrid):
        dk.DiskFunction.zero(N, grid24) + dk.DiskFunction.zero(N, other)
