"""Spectral model of L2 on the unit disk and the per-mode radial solvers.

A disk function u(r, theta) = sum_{|n|<=N} u_n(r) e^{i n theta} is stored as
one Chebyshev coefficient vector per angular mode, on the degree-M_r
Gauss-Lobatto grid mapped to r in [0, 1].  Separation of variables turns
(Laplacian - lam) u = f into decoupled radial boundary value problems

    u_n'' + u_n'/r - (n^2/r^2 + lam) u_n = f_n,

solved by collocation with a Dirichlet row at r = 1 and a regularity row at
r = 0 (u_n'(0) = 0 for the axisymmetric mode, u_n(0) = 0 otherwise).  The
polar inner product <u, v> = sum_n 2*pi int_0^1 u_n conj(v_n) r dr is
evaluated with Clenshaw-Curtis weights on the same nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy.linalg import lu_factor, lu_solve, LinAlgError

from . import bessel
from .boundary import BoundaryFunction
from .errors import InvalidGrid, SolverFailure, SpectrumProximity

__all__ = [
    "RadialGrid",
    "DiskFunction",
    "SpectrumReport",
    "spectrum_guard",
    "check_spectrum",
    "poisson_extend",
    "dirichlet_solve",
    "helmholtz_dirichlet_solve",
    "collocation_solve",
    "resolvent_apply",
    "resolvent_harmonic",
    "gstar",
    "trace_dirichlet",
    "trace_neumann",
    "laplacian_apply",
    "inner_disk",
    "random_disk_function",
    "random_boundary_function",
]


class RadialGrid:
    """Chebyshev-Gauss-Lobatto machinery on r in [0, 1].

    Holds the nodes (ascending, r[0] = 0, r[-1] = 1), the barycentric
    differentiation matrix in r, Clenshaw-Curtis weights for int_0^1 . dr,
    and the value <-> Chebyshev-coefficient transforms.
    """

    def __init__(self, M_r):
        if M_r < 2:
            raise InvalidGrid(f"radial degree must be >= 2, got {M_r}")
        self.M_r = int(M_r)
        M = self.M_r
        idx = np.arange(M + 1)
        xi = np.cos((M - idx) * np.pi / M)  # ascending on [-1, 1]
        r = 0.5 * (1.0 + xi)
        r[0], r[-1] = 0.0, 1.0
        self.xi = xi
        self.nodes = r

        # Barycentric differentiation (negative-sum-trick diagonal).
        w = np.full(M + 1, 1.0)
        w[0] = w[-1] = 0.5
        w *= (-1.0) ** (M - idx)
        diff = np.zeros((M + 1, M + 1))
        for i in range(M + 1):
            for j in range(M + 1):
                if i != j:
                    diff[i, j] = (w[j] / w[i]) / (xi[i] - xi[j])
        diff[np.diag_indices(M + 1)] = -diff.sum(axis=1)
        self.D = 2.0 * diff  # d/dxi -> d/dr
        self.D2 = self.D @ self.D

        # Clenshaw-Curtis weights: exact for polynomials up to degree M.
        V = cheb.chebvander(xi, M)
        k = np.arange(M + 1)
        moments = np.zeros(M + 1)
        even = k % 2 == 0
        moments[even] = 2.0 / (1.0 - k[even].astype(np.float64) ** 2)
        w_xi = np.linalg.solve(V.T, moments)
        self.weights = 0.5 * w_xi  # int_0^1 f dr ~ weights . f(nodes)
        self.vandermonde = V
        self._v_inv = np.linalg.inv(V)
        self._factors = {}

    def values_to_cheb(self, values):
        return values @ self._v_inv.T

    def cheb_to_values(self, coeffs):
        return coeffs @ self.vandermonde.T

    def mode_matrix(self, m, lam):
        """Collocation matrix for angular mode |n| = m at parameter lam."""
        M = self.M_r
        r = self.nodes
        A = np.array(self.D2, dtype=np.complex128)
        interior = slice(1, M)
        A[interior, :] += self.D[interior, :] / r[1:M, None]
        pot = (m * m) / r[1:M] ** 2 + lam
        A[np.arange(1, M), np.arange(1, M)] -= pot
        A[M, :] = 0.0
        A[M, M] = 1.0  # Dirichlet value at r = 1
        if m == 0:
            A[0, :] = self.D[0, :]  # u'(0) = 0
        else:
            A[0, :] = 0.0
            A[0, 0] = 1.0  # u(0) = 0
        return A

    def factorization(self, m, lam):
        key = (int(m), complex(lam))
        fac = self._factors.get(key)
        if fac is None:
            try:
                fac = lu_factor(self.mode_matrix(m, lam))
            except LinAlgError as exc:  # pragma: no cover - guard only
                raise SolverFailure(
                    f"singular collocation matrix for mode {m}, lambda={lam}"
                ) from exc
            self._factors[key] = fac
        return fac


class DiskFunction:
    """Angular-mode stack of radial Chebyshev expansions on the unit disk."""

    __slots__ = ("cheb", "N", "grid")

    def __init__(self, coeffs, grid):
        coeffs = np.asarray(coeffs, dtype=np.complex128).copy()
        if coeffs.ndim != 2 or coeffs.shape[0] % 2 == 0:
            raise InvalidGrid(f"expected (2N+1, M_r+1) coefficients, got {coeffs.shape}")
        if coeffs.shape[1] != grid.M_r + 1:
            raise InvalidGrid(
                f"radial size {coeffs.shape[1]} does not match grid degree {grid.M_r}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidGrid("non-finite disk coefficient")
        coeffs.setflags(write=False)
        self.cheb = coeffs
        self.N = (coeffs.shape[0] - 1) // 2
        self.grid = grid

    @classmethod
    def zero(cls, N, grid):
        return cls(np.zeros((2 * N + 1, grid.M_r + 1), dtype=np.complex128), grid)

    @classmethod
    def from_values(cls, values, grid):
        """Build from mode values on the radial nodes, shape (2N+1, M_r+1)."""
        values = np.asarray(values, dtype=np.complex128)
        return cls(grid.values_to_cheb(values), grid)

    @classmethod
    def from_radial_callable(cls, N, grid, profiles):
        """``profiles(n, r)`` giving mode-n values on the node vector r."""
        vals = np.zeros((2 * N + 1, grid.M_r + 1), dtype=np.complex128)
        for n in range(-N, N + 1):
            vals[n + N, :] = profiles(n, grid.nodes)
        return cls.from_values(vals, grid)

    def values(self):
        return self.grid.cheb_to_values(self.cheb)

    def mode_profile(self, n, r):
        """Mode-n radial profile evaluated at arbitrary r in [0, 1]."""
        if abs(n) > self.N:
            return np.zeros_like(np.asarray(r, dtype=np.complex128))
        return cheb.chebval(2.0 * np.asarray(r) - 1.0, self.cheb[n + self.N])

    def eval_polar(self, r, theta):
        """Point values u(r, theta) for broadcastable polar arrays."""
        r = np.asarray(r, dtype=np.float64)
        theta = np.asarray(theta, dtype=np.float64)
        out = np.zeros(np.broadcast(r, theta).shape, dtype=np.complex128)
        for n in range(-self.N, self.N + 1):
            out += self.mode_profile(n, r) * np.exp(1.0j * n * theta)
        return out

    def norm(self):
        return float(np.sqrt(max(inner_disk(self, self).real, 0.0)))

    def regularity_defect(self):
        """max over |n| >= 2 of |u_n(1e-3)| / max_nodes |u_n| (0 if none)."""
        worst = 0.0
        vals = self.values()
        for n in range(-self.N, self.N + 1):
            if abs(n) < 2:
                continue
            peak = float(np.max(np.abs(vals[n + self.N])))
            if peak == 0.0:
                continue
            near = abs(complex(self.mode_profile(n, 1e-3)))
            worst = max(worst, near / peak)
        return worst

    def _compatible(self, other):
        if self.N != other.N or self.grid.M_r != other.grid.M_r:
            raise InvalidGrid("disk discretizations do not match")

    def __add__(self, other):
        self._compatible(other)
        return DiskFunction(self.cheb + other.cheb, self.grid)

    def __sub__(self, other):
        self._compatible(other)
        return DiskFunction(self.cheb - other.cheb, self.grid)

    def __neg__(self):
        return DiskFunction(-self.cheb, self.grid)

    def __mul__(self, scalar):
        return DiskFunction(self.cheb * complex(scalar), self.grid)

    __rmul__ = __mul__

    def __repr__(self):
        return f"DiskFunction(N={self.N}, M_r={self.grid.M_r})"

    def to_json_obj(self):
        modes = []
        for i in range(self.cheb.shape[0]):
            row = self.cheb[i]
            if np.any(row != 0):
                entry = [int(i - self.N)]
                entry.extend([float(c.real), float(c.imag)] for c in row)
                modes.append(entry)
        return {"N": self.N, "M_r": self.grid.M_r, "modes": modes}

    @classmethod
    def from_json_obj(cls, obj, grid=None):
        N = int(obj["N"])
        M_r = int(obj["M_r"])
        if grid is None:
            grid = RadialGrid(M_r)
        elif grid.M_r != M_r:
            raise InvalidGrid(f"grid degree {grid.M_r} does not match stored {M_r}")
        coeffs = np.zeros((2 * N + 1, M_r + 1), dtype=np.complex128)
        for entry in obj["modes"]:
            n = int(entry[0])
            pairs = entry[1:]
            if len(pairs) != M_r + 1:
                raise InvalidGrid("stored mode has wrong radial length")
            coeffs[n + N, :] = [complex(p[0], p[1]) for p in pairs]
        return cls(coeffs, grid)


def inner_disk(u, v):
    """Polar L2 inner product sum_n 2*pi int_0^1 u_n conj(v_n) r dr."""
    u._compatible(v)
    w = u.grid.weights * u.grid.nodes
    return complex(2.0 * np.pi * np.sum(u.values() * np.conj(v.values()) * w))


@dataclass(frozen=True)
class SpectrumReport:
    lam: complex
    distance: float
    threshold: float

    @property
    def passes(self):
        return self.distance > self.threshold


def spectrum_guard(lam, n_max, k_max=20):
    """Distance from lam to the Dirichlet eigenvalues -j_{n,k}^2."""
    lam = complex(lam)
    distance = bessel.spectrum_distance(lam, n_max, k_max)
    return SpectrumReport(lam, distance, 1e-6 * (1.0 + abs(lam)))


def check_spectrum(lam, n_max, k_max=20):
    report = spectrum_guard(lam, n_max, k_max)
    if not report.passes:
        raise SpectrumProximity(report.lam, report.distance, report.threshold)
    return report


def _solve_modes(grid, N, rhs_values, bc_coeffs, lam):
    """Per-mode collocation solve; zero data short-circuits to zero."""
    M = grid.M_r
    out = np.zeros((2 * N + 1, M + 1), dtype=np.complex128)
    for n in range(-N, N + 1):
        i = n + N
        b = np.zeros(M + 1, dtype=np.complex128)
        have_data = False
        if rhs_values is not None and np.any(rhs_values[i, 1:M] != 0):
            b[1:M] = rhs_values[i, 1:M]
            have_data = True
        if bc_coeffs is not None and bc_coeffs[i] != 0:
            b[M] = bc_coeffs[i]
            have_data = True
        if not have_data:
            continue
        out[i, :] = lu_solve(grid.factorization(abs(n), lam), b)
    return out


def collocation_solve(f, phi, lam, grid=None, N=None):
    """Direct solve of (Laplacian - lam) u = f with trace u|_{r=1} = phi.

    Either argument may be None (zero data).  No spectrum guard is applied
    here; callers wanting protection use :func:`check_spectrum` first.
    """
    if f is None and phi is None:
        raise ValueError("need at least one of f, phi")
    if f is not None:
        grid, N = f.grid, f.N
    if phi is not None:
        if N is None:
            N = phi.N
        elif phi.N != N:
            raise InvalidGrid("boundary and volume truncations differ")
    rhs = f.values() if f is not None else None
    bc = phi.coeffs if phi is not None else None
    vals = _solve_modes(grid, N, rhs, bc, complex(lam))
    return DiskFunction.from_values(vals, grid)


def dirichlet_solve(f):
    """Solution operator of Laplacian u = f, u = 0 on the boundary."""
    return collocation_solve(f, None, 0.0)


def helmholtz_dirichlet_solve(f, lam):
    """u with (Laplacian - lam) u = f, u|_{r=1} = 0 (resolvent times T)."""
    check_spectrum(lam, f.N)
    return collocation_solve(f, None, lam)


def resolvent_apply(f, lam):
    """(I - lam*T)^{-1} f = f + lam * helmholtz_dirichlet_solve(f, lam)."""
    lam = complex(lam)
    if lam == 0.0:
        return f
    check_spectrum(lam, f.N)
    return f + lam * collocation_solve(f, None, lam)


def resolvent_harmonic(phi, grid, lam):
    """(I - lam*T)^{-1} G phi: solves (Laplacian - lam) u = 0, u|_{r=1} = phi."""
    lam = complex(lam)
    if lam == 0.0:
        return poisson_extend(phi, grid)
    check_spectrum(lam, phi.N)
    return collocation_solve(None, phi, lam, grid=grid, N=phi.N)


def poisson_extend(phi, grid):
    """Harmonic continuation G: mode-n profile phi^(n) * r^|n|."""
    N = phi.N
    vals = np.zeros((2 * N + 1, grid.M_r + 1), dtype=np.complex128)
    for n in range(-N, N + 1):
        vals[n + N, :] = phi.coeffs[n + N] * grid.nodes ** abs(n)
    return DiskFunction.from_values(vals, grid)


def gstar(f):
    """Adjoint of harmonic continuation: (G* f)^(n) = int_0^1 f_n r^{|n|+1} dr."""
    vals = f.values()
    out = np.zeros(2 * f.N + 1, dtype=np.complex128)
    for n in range(-f.N, f.N + 1):
        radial = f.grid.nodes ** (abs(n) + 1)
        out[n + f.N] = np.sum(f.grid.weights * vals[n + f.N] * radial)
    return BoundaryFunction(out)


def trace_dirichlet(u):
    """Boundary trace u|_{r=1} as a circle function."""
    return BoundaryFunction(u.values()[:, -1])


def trace_neumann(u):
    """Outer normal derivative du/dr|_{r=1} as a circle function."""
    dv = u.values() @ u.grid.D.T
    return BoundaryFunction(dv[:, -1])


def laplacian_apply(u, lam=0.0):
    """Residual operator (Laplacian - lam) u on the collocation nodes.

    The coordinate-singular origin node carries zero quadrature weight in
    the polar inner product; it is filled with the smooth-limit value
    2 u_0''(0) for the axisymmetric mode and 0 otherwise.
    """
    lam = complex(lam)
    grid = u.grid
    M = grid.M_r
    r = grid.nodes
    vals = u.values()
    d1 = vals @ grid.D.T
    d2 = vals @ grid.D2.T
    out = np.empty_like(vals)
    n_arr = np.arange(-u.N, u.N + 1, dtype=np.float64)
    out[:, 1:] = (
        d2[:, 1:]
        + d1[:, 1:] / r[1:]
        - (n_arr[:, None] ** 2) / r[1:] ** 2 * vals[:, 1:]
        - lam * vals[:, 1:]
    )
    out[:, 0] = 0.0
    out[u.N, 0] = 2.0 * d2[u.N, 0] - lam * vals[u.N, 0]
    return DiskFunction.from_values(out, grid)


def random_boundary_function(rng, N, bandwidth, real=False):
    """Seeded band-limited circle function with mildly decaying coefficients."""
    bw = min(bandwidth, N)
    c = np.zeros(2 * N + 1, dtype=np.complex128)
    for n in range(-bw, bw + 1):
        scale = 1.0 / (1.0 + abs(n))
        c[n + N] = scale * complex(rng.standard_normal(), rng.standard_normal())
    phi = BoundaryFunction(c)
    return phi.real_part() if real else phi


def random_disk_function(rng, N, grid, bandwidth, radial_degree=6):
    """Seeded band-limited disk function satisfying the origin regularity."""
    bw = min(bandwidth, N)
    vals = np.zeros((2 * N + 1, grid.M_r + 1), dtype=np.complex128)
    r = grid.nodes
    for n in range(-bw, bw + 1):
        deg = int(rng.integers(1, radial_degree + 1))
        coeffs = (rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1))
        coeffs *= 1.0 / (1.0 + abs(n))
        poly = np.polynomial.polynomial.polyval(r, coeffs)
        vals[n + N, :] = poly * r ** min(abs(n), 2)
    return DiskFunction.from_values(vals, grid)
