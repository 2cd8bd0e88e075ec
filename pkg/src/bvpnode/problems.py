"""The classical boundary value problems on the unit disk.

Three instances of the same reduction, differing only in the boundary
operator paired with the disk Laplacian:

* Poincare (oblique derivative): find u harmonic (or satisfying the
  spectral equation) with  c_tan * du/dtangent + c_nor * du/dnormal
  + c_val * u = g  on the circle; reduces with the Dirichlet-to-Neumann
  multiplier.
* Hilbert: find w = u + i*v analytic in the disk with
  a * u + b * v = g  on the circle (a, b, g real); reduces with the
  Hilbert transform and is solved over the real subspace, where the
  classical solvability defects (kernels, inconsistent data) are visible.
* Riemann: find a pair (F_plus analytic inside, F_minus analytic outside,
  vanishing at infinity) with  A * F_plus - B * F_minus = g  on the
  circle; reduces with the Cauchy singular operator through the density
  representation F_plus = (I + S) psi, F_minus = (-I + S) psi.  A circle
  reparametrization turns it into the shifted variant
  A(s) * F_plus(alpha(s)) - B(s) * F_minus(s) = g(s).

No factorization or index theory is attempted; solvability defects are
reported through the SVD diagnostics of the reduced system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import boundary as bd
from . import disk as dk
from . import node as nd
from .errors import NonRealInput, WrongSide

__all__ = [
    "PoincareProblem",
    "HilbertProblem",
    "RiemannProblem",
    "AnalyticSolution",
    "solve_poincare",
    "solve_hilbert",
    "solve_riemann",
    "solve_shifted_riemann",
    "conjugation_map",
    "analytic_boundary_trace",
]


def _require_real(name, fn):
    if not fn.is_real():
        raise NonRealInput(f"{name} must be real-valued")


@dataclass(frozen=True)
class PoincareProblem:
    """Oblique-derivative data: c_tan*du/ds + c_nor*du/dn + c_val*u = g."""

    coef_tangential: bd.BoundaryFunction
    coef_normal: bd.BoundaryFunction
    coef_value: bd.BoundaryFunction
    data: bd.BoundaryFunction
    lam: complex = 0.0
    source: object = None  # optional volume load

    @classmethod
    def constant(cls, N, c_tan, c_nor, c_val, data, lam=0.0, source=None):
        const = lambda c: bd.BoundaryFunction.from_modes(N, {0: c})
        return cls(const(c_tan), const(c_nor), const(c_val), data, lam, source)


@dataclass(frozen=True)
class HilbertProblem:
    """Boundary data a*Re(w) + b*Im(w) = g for w analytic in the disk."""

    coef_real: bd.BoundaryFunction
    coef_imag: bd.BoundaryFunction
    data: bd.BoundaryFunction

    @classmethod
    def constant(cls, N, a, b, data):
        const = lambda c: bd.BoundaryFunction.from_modes(N, {0: c})
        return cls(const(a), const(b), data)

    def degenerate_points(self, tol=1e-12):
        """Grid angles where a^2 + b^2 (numerically) vanishes."""
        aa = bd.synthesize(self.coef_real).real
        bb = bd.synthesize(self.coef_imag).real
        theta = bd.theta_grid(self.data.N)
        mask = aa * aa + bb * bb <= tol
        return theta[mask]


@dataclass(frozen=True)
class RiemannProblem:
    """Jump data A*F_plus - B*F_minus = g across the unit circle."""

    coef_plus: bd.BoundaryFunction
    coef_minus: bd.BoundaryFunction
    data: bd.BoundaryFunction
    shift: object = None  # circle reparametrization for the shifted variant

    @classmethod
    def constant(cls, N, cp, cm, data, shift=None):
        const = lambda c: bd.BoundaryFunction.from_modes(N, {0: c})
        return cls(const(cp), const(cm), data, shift)

    def exterior_coef_min_abs(self):
        """min |B| on the grid; a zero is the classical degeneracy signal."""
        return float(np.min(np.abs(bd.synthesize(self.coef_minus))))


@dataclass
class AnalyticSolution:
    """Solved density with evaluators, traces and solver diagnostics."""

    kind: str
    density: bd.BoundaryFunction
    diagnostics: nd.BvpSolution
    residual_boundary: float
    residual_pointwise: float
    trace_plus: bd.BoundaryFunction | None = None
    trace_minus: bd.BoundaryFunction | None = None
    real_field: object = None
    imag_field: object = None
    taylor: np.ndarray | None = None

    def interior(self, z):
        """Value of the interior analytic function at |z| < 1."""
        if self.kind == "hilbert":
            z = complex(z)
            if abs(z) >= 1.0:
                raise WrongSide(f"|z| = {abs(z):.6g} is not inside the unit circle")
            return complex(np.polynomial.polynomial.polyval(z, self.taylor))
        return bd.cauchy_integral_eval(self.density, z, "interior")

    def exterior(self, z):
        """Value of the exterior analytic function at |z| > 1 (Riemann only)."""
        if self.kind == "hilbert":
            raise ValueError("the Hilbert solution has no exterior component")
        return bd.cauchy_integral_eval(self.density, z, "exterior")


# ---------------------------------------------------------------------------
# Poincare


def solve_poincare(problem, node=None, M_r=64, workers=1):
    """Reduce the oblique-derivative condition and solve on the disk node.

    Builds beta0 = c_tan * d/ds + c_val, beta1 = c_nor and hands the pair to
    the mixed solver with the Dirichlet-to-Neumann boundary operator.
    """
    _require_real("tangential coefficient", problem.coef_tangential)
    _require_real("normal coefficient", problem.coef_normal)
    _require_real("zero-order coefficient", problem.coef_value)
    N = problem.data.N
    if node is None:
        node = nd.disk_node(N, M_r, boundary_op="dtn")
    beta0 = nd.mult_op(problem.coef_tangential) * nd.d_ds_op() + nd.mult_op(
        problem.coef_value
    )
    beta1 = nd.mult_op(problem.coef_normal)
    return nd.solve_mixed_bvp(
        node, problem.lam, problem.source, problem.data, beta0, beta1, workers=workers
    )


# ---------------------------------------------------------------------------
# Hilbert


def _real_coords(phi):
    """Coordinates of a real circle function in the (1, cos, sin) basis."""
    N = phi.N
    out = np.empty(2 * N + 1)
    out[0] = phi.coeffs[N].real
    pos = phi.coeffs[N + 1 :]
    out[1 : N + 1] = 2.0 * pos.real
    out[N + 1 :] = -2.0 * pos.imag
    return out


def _from_real_coords(N, x):
    c = np.zeros(2 * N + 1, dtype=np.complex128)
    c[N] = x[0]
    pos = 0.5 * (x[1 : N + 1] - 1.0j * x[N + 1 :])
    c[N + 1 :] = pos
    c[:N] = np.conj(pos[::-1])
    return bd.BoundaryFunction(c)


def _real_basis_function(N, k):
    if k == 0:
        return bd.BoundaryFunction.from_modes(N, {0: 1.0})
    if k <= N:
        return bd.BoundaryFunction.from_modes(N, {k: 0.5, -k: 0.5})
    n = k - N
    return bd.BoundaryFunction.from_modes(N, {n: -0.5j, -n: 0.5j})


def solve_hilbert(problem, M_r=64, rank_tol=nd.RANK_TOL):
    """Solve a*Re(w) + b*Im(w) = g over the real subspace of the circle.

    The reduced equation (a + b*H) psi = g is real-linear but not
    complex-linear in the classical setting, so it is assembled in the
    (1, cos, sin) basis as a real (2N+1) x (2N+1) system and SVD-solved
    there; winding of a + i*b shows up as rank deficiency or inconsistency.
    The analytic solution is w with Re(w) = G psi, Im(w) = G (H psi) and
    the normalization Im(w(0)) = 0.
    """
    _require_real("coefficient a", problem.coef_real)
    _require_real("coefficient b", problem.coef_imag)
    _require_real("data g", problem.data)
    N = problem.data.N
    dim = 2 * N + 1

    def boundary_op(phi):
        return bd.multiply(problem.coef_real, phi) + bd.multiply(
            problem.coef_imag, bd.hilbert_transform(phi)
        )

    K = np.empty((dim, dim))
    for k in range(dim):
        K[:, k] = _real_coords(boundary_op(_real_basis_function(N, k)))
    gvec = _real_coords(problem.data)

    psi_vec, rank, kernel_vecs, inconsistent, s = nd.svd_solve(K, gvec, rank_tol)
    psi = _from_real_coords(N, psi_vec)
    conj_trace = bd.hilbert_transform(psi)

    grid = dk.RadialGrid(M_r)
    u_field = dk.poisson_extend(psi, grid)
    v_field = dk.poisson_extend(conj_trace, grid)

    # residual of the classical condition on the sample grid (no truncation)
    point = np.abs(
        bd.synthesize(problem.coef_real).real * bd.synthesize(psi).real
        + bd.synthesize(problem.coef_imag).real * bd.synthesize(conj_trace).real
        - bd.synthesize(problem.data).real
    )
    gnorm = problem.data.norm()
    res_l2 = float(np.sqrt(2.0 * np.pi * np.mean(point**2)))
    res_norm = res_l2 / gnorm if gnorm > 0 else res_l2
    res_point = float(np.max(point))

    taylor = np.zeros(N + 1, dtype=np.complex128)
    taylor[0] = psi.coeff(0)
    for n in range(1, N + 1):
        taylor[n] = 2.0 * psi.coeff(n)

    diagnostics = nd.BvpSolution(
        u=u_field,
        psi=psi,
        residual_pde=dk.laplacian_apply(u_field).norm()
        / max(u_field.norm(), 1e-300),
        residual_bc=res_norm,
        rank=rank,
        kernel_basis=[_from_real_coords(N, np.asarray(v)) for v in kernel_vecs],
        unique=(rank == dim),
        inconsistent=inconsistent,
        singular_values=s,
    )
    return AnalyticSolution(
        kind="hilbert",
        density=psi,
        diagnostics=diagnostics,
        residual_boundary=res_norm,
        residual_pointwise=res_point,
        real_field=u_field,
        imag_field=v_field,
        taylor=taylor,
    )


# ---------------------------------------------------------------------------
# Riemann


def _jump_residual(problem, trace_plus, trace_minus, shifted):
    a_s = bd.synthesize(problem.coef_plus)
    b_s = bd.synthesize(problem.coef_minus)
    g_s = bd.synthesize(problem.data)
    if shifted:
        plus = bd.synthesize(bd.compose_shift(trace_plus, problem.shift))
    else:
        plus = bd.synthesize(trace_plus)
    minus = bd.synthesize(trace_minus)
    return np.abs(a_s * plus - b_s * minus - g_s)


def _riemann_solution(problem, node, beta0, beta1, shifted, workers=1):
    sol = nd.solve_mixed_bvp(
        node, 0.0, None, problem.data, beta0, beta1, workers=workers
    )
    trace_plus, trace_minus = bd.plemelj_traces(sol.psi)
    point = _jump_residual(problem, trace_plus, trace_minus, shifted)
    gnorm = problem.data.norm()
    res_point = float(np.max(point))
    res_l2 = float(np.sqrt(2.0 * np.pi * np.mean(point**2)))
    res_norm = res_l2 / gnorm if gnorm > 0 else res_l2
    return AnalyticSolution(
        kind="riemann",
        density=sol.psi,
        diagnostics=sol,
        residual_boundary=res_norm,
        residual_pointwise=res_point,
        trace_plus=trace_plus,
        trace_minus=trace_minus,
    )


def solve_riemann(problem, node=None, M_r=64, workers=1):
    """Solve A*F_plus - B*F_minus = g through the density representation.

    With a = A + B and b = A - B the condition becomes (a + b*S) psi = g,
    which the mixed solver handles on the disk node carrying the Cauchy
    singular operator.
    """
    if problem.shift is not None:
        raise ValueError("problem carries a shift; use solve_shifted_riemann")
    N = problem.data.N
    if node is None:
        node = nd.disk_node(N, M_r, boundary_op="cauchy")
    beta0 = nd.mult_op(problem.coef_plus + problem.coef_minus)
    beta1 = nd.mult_op(problem.coef_plus - problem.coef_minus)
    return _riemann_solution(problem, node, beta0, beta1, shifted=False, workers=workers)


def solve_shifted_riemann(problem, node=None, M_r=64, workers=1):
    """Solve A(s)*F_plus(alpha(s)) - B(s)*F_minus(s) = g(s).

    The composition with alpha rides along inside the boundary expression:
    a = A*tau + B and b = A*tau - B, where tau is the shift operator.
    """
    if problem.shift is None:
        raise ValueError("shifted Riemann problem needs a shift")
    N = problem.data.N
    if node is None:
        node = nd.disk_node(N, M_r, boundary_op="cauchy")
    shifted_mult = nd.mult_op(problem.coef_plus) * nd.shift_op(problem.shift)
    beta0 = shifted_mult + nd.mult_op(problem.coef_minus)
    beta1 = shifted_mult - nd.mult_op(problem.coef_minus)
    return _riemann_solution(problem, node, beta0, beta1, shifted=True, workers=workers)


# ---------------------------------------------------------------------------
# conjugation


def analytic_boundary_trace(phi_real):
    """Boundary values phi + i*H(phi) of the analytic completion of phi."""
    _require_real("boundary density", phi_real)
    return phi_real + 1.0j * bd.hilbert_transform(phi_real)


def conjugation_map(phi_real):
    """Boundary values of the complex conjugate of the analytic completion.

    Sends the trace (I + i*H) phi of w to the trace (I - i*H) phi of
    conj(w).  The map is only real-linear: scaling the input trace by a
    non-real constant does not commute with it.
    """
    _require_real("boundary density", phi_real)
    return phi_real - 1.0j * bd.hilbert_transform(phi_real)
