"""Trigonometric model of L2 on the unit circle.

A function on the circle is stored as its two-sided Fourier coefficients
on the modes n = -N..N (2N+1 of them), matching the odd uniform grid
theta_j = 2*pi*j/(2N+1).  Arc length and angle coincide, and the contour is
oriented counterclockwise, so the classical boundary operators are exact
Fourier multipliers here:

    Hilbert transform        H : n -> -i*sign(n)      (sign(0) = 0)
    Cauchy singular operator S : n -> +1 (n >= 0), -1 (n < 0)
    Dirichlet-to-Neumann     n -> |n|
    tangential derivative    n -> i*n

The inner product is <phi, psi> = int_0^{2pi} phi * conj(psi) dtheta, so
norm^2 = 2*pi * sum |coeff|^2.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidGrid, InvalidShift, WrongSide

__all__ = [
    "BoundaryFunction",
    "FourierMultiplier",
    "theta_grid",
    "analyze",
    "synthesize",
    "hilbert_transform",
    "cauchy_singular",
    "dtn_circle",
    "tangential_derivative",
    "multiply",
    "compose_shift",
    "plemelj_traces",
    "cauchy_integral_eval",
    "inner",
    "mean_zero_projection",
]


def theta_grid(N):
    """Uniform angles theta_j = 2*pi*j/(2N+1), j = 0..2N."""
    m = 2 * N + 1
    return 2.0 * np.pi * np.arange(m) / m


class BoundaryFunction:
    """A trigonometric polynomial sum_{|n|<=N} c_n e^{i n theta}.

    Coefficients are immutable after construction; index i of ``coeffs``
    holds mode n = i - N.
    """

    __slots__ = ("coeffs", "N")

    def __init__(self, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.complex128).copy()
        if coeffs.ndim != 1 or coeffs.size % 2 == 0:
            raise InvalidGrid(
                f"coefficient vector must have odd length, got shape {coeffs.shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise InvalidGrid("non-finite Fourier coefficient")
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self.N = (coeffs.size - 1) // 2

    @classmethod
    def zero(cls, N):
        return cls(np.zeros(2 * N + 1, dtype=np.complex128))

    @classmethod
    def from_modes(cls, N, modes):
        """Build from a {mode: value} mapping; unspecified modes are zero."""
        c = np.zeros(2 * N + 1, dtype=np.complex128)
        for n, v in modes.items():
            if abs(n) > N:
                raise InvalidGrid(f"mode {n} outside truncation [-{N}, {N}]")
            c[n + N] = v
        return cls(c)

    @property
    def modes(self):
        return np.arange(-self.N, self.N + 1)

    def coeff(self, n):
        if abs(n) > self.N:
            return 0.0 + 0.0j
        return complex(self.coeffs[n + self.N])

    def samples(self):
        return synthesize(self)

    def norm(self):
        return float(np.sqrt(2.0 * np.pi * np.sum(np.abs(self.coeffs) ** 2)))

    def is_real(self, rtol=1e-12):
        scale = np.linalg.norm(self.coeffs)
        if scale == 0.0:
            return True
        defect = np.linalg.norm(self.coeffs - np.conj(self.coeffs[::-1]))
        return defect <= rtol * scale

    def real_part(self):
        """Pointwise real part (conjugate-symmetrized coefficients)."""
        return BoundaryFunction(0.5 * (self.coeffs + np.conj(self.coeffs[::-1])))

    def imag_part(self):
        return BoundaryFunction(
            (self.coeffs - np.conj(self.coeffs[::-1])) / (2.0j)
        )

    def conjugate(self):
        return BoundaryFunction(np.conj(self.coeffs[::-1]))

    # -- arithmetic ---------------------------------------------------------

    def _compatible(self, other):
        if self.N != other.N:
            raise InvalidGrid(f"truncation mismatch: {self.N} vs {other.N}")

    def __add__(self, other):
        self._compatible(other)
        return BoundaryFunction(self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._compatible(other)
        return BoundaryFunction(self.coeffs - other.coeffs)

    def __neg__(self):
        return BoundaryFunction(-self.coeffs)

    def __mul__(self, scalar):
        return BoundaryFunction(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        nz = int(np.count_nonzero(self.coeffs))
        return f"BoundaryFunction(N={self.N}, nonzero_modes={nz})"

    # -- serialization ------------------------------------------------------

    def to_mode_triples(self):
        """[[n, re, im], ...] in ascending n; exact zeros omitted."""
        out = []
        for i, c in enumerate(self.coeffs):
            if c != 0:
                out.append([int(i - self.N), float(c.real), float(c.imag)])
        return out

    @classmethod
    def from_mode_triples(cls, N, triples):
        c = np.zeros(2 * N + 1, dtype=np.complex128)
        for n, re, im in triples:
            n = int(n)
            if abs(n) > N:
                raise InvalidGrid(f"mode {n} outside truncation [-{N}, {N}]")
            c[n + N] = complex(re, im)
        return cls(c)


class FourierMultiplier:
    """Diagonal operator (M phi)^(n) = symbol(n) * phi^(n)."""

    __slots__ = ("symbol",)

    def __init__(self, symbol):
        self.symbol = symbol

    def symbol_vector(self, N):
        return np.array(
            [self.symbol(n) for n in range(-N, N + 1)], dtype=np.complex128
        )

    def __call__(self, phi):
        return BoundaryFunction(self.symbol_vector(phi.N) * phi.coeffs)


HILBERT = FourierMultiplier(lambda n: -1.0j * np.sign(n))
CAUCHY = FourierMultiplier(lambda n: 1.0 if n >= 0 else -1.0)
DTN = FourierMultiplier(abs)
D_DS = FourierMultiplier(lambda n: 1.0j * n)


def analyze(samples):
    """Fourier coefficients of the trigonometric interpolant of ``samples``.

    The samples must live on the odd uniform grid of length 2N+1.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.ndim != 1 or samples.size % 2 == 0 or samples.size < 1:
        raise InvalidGrid(
            f"expected an odd-length sample vector, got shape {samples.shape}"
        )
    m = samples.size
    coeffs = np.fft.fftshift(np.fft.fft(samples)) / m
    return BoundaryFunction(coeffs)


def synthesize(phi):
    """Values of phi on the uniform grid of length 2N+1."""
    m = 2 * phi.N + 1
    return np.fft.ifft(np.fft.ifftshift(phi.coeffs)) * m


def hilbert_transform(phi):
    """Harmonic-conjugation multiplier -i*sign(n); kills constants.

    For real phi, phi + i*H(phi) extends analytically into the disk.
    """
    return HILBERT(phi)


def cauchy_singular(phi):
    """Principal-value Cauchy integral on the circle: multiplier +-1.

    S fixes the analytic-in-the-disk modes (n >= 0, the n = 0 mode included)
    and negates the rest; S*S is the identity on the truncated basis.
    """
    return CAUCHY(phi)


def dtn_circle(phi):
    """Dirichlet-to-Neumann multiplier |n| of the disk Laplacian."""
    return DTN(phi)


def tangential_derivative(phi):
    """d/ds along the circle (s = theta): multiplier i*n."""
    return D_DS(phi)


def _samples_on_fine_grid(phi, m_fine):
    """Values of phi on a uniform grid of m_fine >= 2N+1 points."""
    spec = np.zeros(m_fine, dtype=np.complex128)
    n = np.arange(-phi.N, phi.N + 1)
    spec[n % m_fine] = phi.coeffs
    return np.fft.ifft(spec) * m_fine


def multiply(a, phi):
    """Pointwise product truncated back to [-N, N].

    Formed on a doubled grid so the convolution is alias-free whenever the
    factors are band-limited (any bandwidths summing to <= 2N are exact
    before truncation).
    """
    if a.N != phi.N:
        raise InvalidGrid(f"truncation mismatch: {a.N} vs {phi.N}")
    N = phi.N
    m_fine = 2 * (2 * N + 1)
    va = _samples_on_fine_grid(a, m_fine)
    vp = _samples_on_fine_grid(phi, m_fine)
    spec = np.fft.fft(va * vp) / m_fine
    n = np.arange(-N, N + 1)
    return BoundaryFunction(spec[n % m_fine])


def _shift_values(alpha, N):
    """Values of the reparametrization alpha on the length-(2N+1) grid."""
    theta = theta_grid(N)
    if callable(alpha):
        vals = np.asarray([float(alpha(t)) for t in theta])
    else:
        vals = np.asarray(alpha, dtype=np.float64)
        if vals.shape != theta.shape:
            raise InvalidShift(
                f"shift table must have length {theta.size}, got {vals.size}"
            )
    return theta, vals


def compose_shift(phi, alpha):
    """Composition (tau phi)(theta) = phi(alpha(theta)).

    ``alpha`` is a degree-one circle map given either as a callable or as its
    values on the standard grid; alpha(theta + 2*pi) = alpha(theta) + 2*pi.
    The trigonometric interpolant of phi is evaluated at the shifted angles
    and re-expanded on the same grid.
    """
    theta, vals = _shift_values(alpha, phi.N)
    periodic = analyze(vals - theta)
    dmin = float(np.min(synthesize(tangential_derivative(periodic)).real + 1.0))
    if dmin < 1e-10:
        raise InvalidShift(f"shift is not strictly monotone (min alpha' = {dmin:.3e})")
    n = np.arange(-phi.N, phi.N + 1)
    shifted = np.exp(1.0j * np.outer(vals, n)) @ phi.coeffs
    return analyze(shifted)


def plemelj_traces(phi):
    """Boundary traces (interior, exterior) of the Cauchy integral of phi.

    With Phi = S(phi): interior trace phi + Phi keeps modes n >= 0 doubled,
    exterior trace -phi + Phi keeps modes n < 0 negated and doubled; the
    difference of the traces is exactly 2*phi.
    """
    s = cauchy_singular(phi)
    return phi + s, -phi + s


def cauchy_integral_eval(phi, z, side):
    """Cauchy integral (1/(pi*i)) int phi(t)/(t - z) dt off the circle.

    ``side`` is "interior" (|z| < 1) or "exterior" (|z| > 1); the exterior
    branch vanishes at infinity.
    """
    z = complex(z)
    N = phi.N
    if side == "interior":
        if abs(z) >= 1.0:
            raise WrongSide(f"|z| = {abs(z):.6g} is not inside the unit circle")
        n = np.arange(0, N + 1)
        return 2.0 * complex(np.sum(phi.coeffs[N:] * z ** n))
    if side == "exterior":
        if abs(z) <= 1.0:
            raise WrongSide(f"|z| = {abs(z):.6g} is not outside the unit circle")
        n = np.arange(-N, 0)
        return -2.0 * complex(np.sum(phi.coeffs[:N] * z ** n))
    raise ValueError(f"side must be 'interior' or 'exterior', got {side!r}")


def inner(phi, psi):
    """L2 inner product int_0^{2pi} phi * conj(psi) dtheta."""
    phi._compatible(psi)
    return complex(2.0 * np.pi * np.vdot(psi.coeffs, phi.coeffs))


def mean_zero_projection(phi):
    """Remove the n = 0 mode."""
    c = phi.coeffs.copy()
    c[phi.N] = 0.0
    return BoundaryFunction(c)
