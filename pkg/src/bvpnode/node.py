"""Operator-node framework over a (main space, boundary space) pair.

A node bundles the solution operator T of the main problem, the boundary
lift G, its adjoint G*, a boundary operator Lambda, and the two trace maps.
From these it derives the operator family

    M(lam) = Lambda + lam * G* (I - lam*T)^{-1} G,

which carries Dirichlet data of (A - lam) u = 0 to the second trace, and
reduces the general two-operator boundary condition
(beta0*trace0 + beta1*trace1) u = phi to the dense boundary equation
[beta0 + beta1*M(lam)] psi = g.  Rank-deficient reductions are not errors:
they are solved in the least-squares sense and reported with kernel bases,
which is also how the input/output mixing maps N(lam) and the feedthrough
operator degenerate into linear relations.

The only realization shipped lives on the unit disk, with Lambda chosen as
the Dirichlet-to-Neumann multiplier, the Hilbert transform, or the Cauchy
singular operator.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import disk as dk
from .boundary import (
    BoundaryFunction,
    cauchy_singular,
    compose_shift,
    dtn_circle,
    hilbert_transform,
    inner,
    multiply,
    tangential_derivative,
)
from .errors import InvalidGrid

__all__ = [
    "OperatorNode",
    "MOperator",
    "BvpSolution",
    "TransferResult",
    "IdentityCheck",
    "IdentityReport",
    "BoundaryExpr",
    "identity_op",
    "zero_op",
    "mult_op",
    "d_ds_op",
    "lambda_op",
    "shift_op",
    "expr_matrix",
    "apply_expr",
    "lambda_matrix",
    "assemble_m_operator",
    "solve_sbvp",
    "solve_mixed_bvp",
    "transfer_function",
    "feedthrough",
    "verify_node_identities",
    "disk_node",
    "DEFAULT_TOLERANCES",
    "RANK_TOL",
]

RANK_TOL = 1e-10  # relative singular-value cutoff for rank decisions


@dataclass
class OperatorNode:
    """Callable bundle {T, G, G*, Lambda} plus traces and resolvent paths.

    All appliers must be pure; H-elements and E-elements are whatever the
    callables consume (disk and circle functions for the shipped factory).
    """

    label: str
    dim: int
    apply_T: object
    apply_G: object
    apply_Gstar: object
    apply_Lambda: object
    apply_A: object          # (u, lam) -> H-element, residual applier
    trace0: object
    trace1: object
    resolvent: object        # (f, lam) -> (I - lam T)^{-1} f
    t_resolvent: object      # (f, lam) -> T (I - lam T)^{-1} f
    resolvent_lift: object   # (phi, lam) -> (I - lam T)^{-1} G phi
    spectrum_guard: object   # lam -> SpectrumReport
    e_basis: object          # j -> E-element, j = 0..dim-1
    e_make: object           # coefficient vector -> E-element
    e_coeffs: object         # E-element -> coefficient vector
    zero_E: object
    inner_H: object
    inner_E: object
    random_H: object         # (rng, bandwidth) -> H-element
    random_E: object         # (rng, bandwidth) -> E-element
    extras: dict = field(default_factory=dict, repr=False)
    _m_cache: dict = field(default_factory=dict, repr=False)

    def norm_H(self, u):
        return float(np.sqrt(max(self.inner_H(u, u).real, 0.0)))

    def norm_E(self, phi):
        return float(np.sqrt(max(self.inner_E(phi, phi).real, 0.0)))

    def check_spectrum(self, lam):
        report = self.spectrum_guard(lam)
        if not report.passes:
            from .errors import SpectrumProximity

            raise SpectrumProximity(report.lam, report.distance, report.threshold)
        return report


@dataclass(frozen=True)
class MOperator:
    """Dense matrix of M(lam) on the truncated boundary basis."""

    lam: complex
    matrix: np.ndarray
    node_label: str

    @property
    def dim(self):
        return self.matrix.shape[0]

    def diagonal(self):
        return np.diag(self.matrix)

    def to_json_obj(self):
        flat = []
        for row in self.matrix:
            flat.extend([float(c.real), float(c.imag)] for c in row)
        return {
            "lambda": [float(self.lam.real), float(self.lam.imag)],
            "n": int(self.dim),
            "matrix": flat,
        }


@dataclass
class BvpSolution:
    """Solution field, boundary density and solvability diagnostics."""

    u: object
    psi: object
    residual_pde: float
    residual_bc: float
    rank: int
    kernel_basis: list
    unique: bool
    inconsistent: bool
    singular_values: np.ndarray | None = None

    @property
    def degenerate(self):
        return (not self.unique) or self.inconsistent


@dataclass
class TransferResult:
    """Input/output map (alpha0 + alpha1*M)(beta0 + beta1*M)^{-1}.

    When the input-side matrix is singular the map is a linear relation;
    ``matrix`` is then None and the pair plus kernel/range bases of the
    input side describe it.
    """

    matrix: np.ndarray | None
    output_map: np.ndarray
    input_map: np.ndarray
    invertible: bool
    kernel_basis: list
    range_basis: list
    singular_values: np.ndarray


# ---------------------------------------------------------------------------
# boundary-condition expressions


class BoundaryExpr:
    """Linear combination of composed primitive boundary operators.

    Terms are (coefficient, factor chain); a chain (p, q) acts as the
    composition p(q(phi)).  Expressions support +, -, scalar *, and * for
    composition, e.g. ``mult_op(a) * shift_op(alpha) + mult_op(b)``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    def __add__(self, other):
        other = as_expr(other)
        return BoundaryExpr(self.terms + other.terms)

    def __radd__(self, other):
        return as_expr(other) + self

    def __sub__(self, other):
        return self + (-as_expr(other))

    def __neg__(self):
        return BoundaryExpr(tuple((-c, f) for c, f in self.terms))

    def __mul__(self, other):
        if isinstance(other, BoundaryExpr):
            return BoundaryExpr(
                tuple(
                    (c1 * c2, f1 + f2)
                    for c1, f1 in self.terms
                    for c2, f2 in other.terms
                )
            )
        scalar = complex(other)
        return BoundaryExpr(tuple((c * scalar, f) for c, f in self.terms))

    def __rmul__(self, other):
        return self * other

    def __repr__(self):
        return f"BoundaryExpr({len(self.terms)} terms)"


def as_expr(obj):
    if isinstance(obj, BoundaryExpr):
        return obj
    if obj == 0:
        return zero_op()
    return complex(obj) * identity_op()


def identity_op():
    return BoundaryExpr((((1.0 + 0.0j), ()),))


def zero_op():
    return BoundaryExpr(())


def mult_op(a):
    """Pointwise multiplication by the circle function ``a``."""
    return BoundaryExpr((((1.0 + 0.0j), (("mult", a),)),))


def d_ds_op():
    """Tangential derivative d/ds."""
    return BoundaryExpr((((1.0 + 0.0j), (("d_ds",),)),))


def lambda_op():
    """The node's boundary operator Lambda (resolved at assembly time)."""
    return BoundaryExpr((((1.0 + 0.0j), (("lambda",),)),))


def shift_op(alpha):
    """Composition with the circle reparametrization alpha."""
    return BoundaryExpr((((1.0 + 0.0j), (("shift", alpha),)),))


def _apply_factor(factor, phi, node):
    kind = factor[0]
    if kind == "mult":
        return multiply(factor[1], phi)
    if kind == "d_ds":
        return tangential_derivative(phi)
    if kind == "shift":
        return compose_shift(phi, factor[1])
    if kind == "lambda":
        if node is None:
            raise ValueError("lambda_op() requires a node to resolve Lambda")
        return node.apply_Lambda(phi)
    raise ValueError(f"unknown factor {kind!r}")


def apply_expr(expr, phi, node=None):
    """Apply a boundary expression to a circle function."""
    out = None
    for coeff, factors in expr.terms:
        term = phi
        for factor in reversed(factors):
            term = _apply_factor(factor, term, node)
        term = coeff * term
        out = term if out is None else out + term
    if out is None:
        return 0.0 * phi
    return out


def expr_matrix(expr, node):
    """Dense matrix of a boundary expression on the node's basis."""
    dim = node.dim
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        mat[:, j] = node.e_coeffs(apply_expr(expr, node.e_basis(j), node))
    return mat


def lambda_matrix(node):
    dim = node.dim
    mat = np.zeros((dim, dim), dtype=np.complex128)
    for j in range(dim):
        mat[:, j] = node.e_coeffs(node.apply_Lambda(node.e_basis(j)))
    return mat


# ---------------------------------------------------------------------------
# framework operations


def assemble_m_operator(node, lam, workers=1):
    """Dense M(lam) = Lambda + lam * G* (I - lam*T)^{-1} G, by columns."""
    lam = complex(lam)
    cached = node._m_cache.get(lam)
    if cached is not None:
        return cached
    node.check_spectrum(lam)
    dim = node.dim

    def column(j):
        e = node.e_basis(j)
        col = node.e_coeffs(node.apply_Lambda(e))
        if lam != 0.0:
            w = node.resolvent(node.apply_G(e), lam)
            col = col + lam * node.e_coeffs(node.apply_Gstar(w))
        return col

    mat = np.zeros((dim, dim), dtype=np.complex128)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for j, col in enumerate(pool.map(column, range(dim))):
                mat[:, j] = col
    else:
        for j in range(dim):
            mat[:, j] = column(j)
    mat.setflags(write=False)
    result = MOperator(lam, mat, node.label)
    node._m_cache[lam] = result
    return result


def _pde_residual(node, u, f, lam):
    res = node.apply_A(u, lam)
    if f is not None:
        res = res - f
    scale = node.norm_H(f) if f is not None else 0.0
    if scale == 0.0:
        scale = node.norm_H(u)
    if scale == 0.0:
        return 0.0
    return node.norm_H(res) / scale


def solve_sbvp(node, lam, f, phi):
    """Unique solve of (A - lam) u = f with Dirichlet data trace0 u = phi.

    The field is assembled as T(I - lam*T)^{-1} f + (I - lam*T)^{-1} G phi.
    """
    lam = complex(lam)
    node.check_spectrum(lam)
    if phi is None:
        phi = node.zero_E()
    u = node.resolvent_lift(phi, lam)
    if f is not None:
        u = u + node.t_resolvent(f, lam)
    bc_err = node.norm_E(node.trace0(u) - phi)
    scale = node.norm_E(phi)
    return BvpSolution(
        u=u,
        psi=phi,
        residual_pde=_pde_residual(node, u, f, lam),
        residual_bc=bc_err / scale if scale > 0 else bc_err,
        rank=node.dim,
        kernel_basis=[],
        unique=True,
        inconsistent=False,
    )


def svd_solve(K, gvec, rank_tol=RANK_TOL):
    """Least-squares solve with rank and kernel diagnostics.

    Returns (solution, rank, kernel vectors, inconsistent flag, singular
    values); the solution is the minimum-norm one when K is rank deficient.
    """
    U, s, Vh = np.linalg.svd(K)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rank_tol * smax)) if smax > 0 else 0
    c = U.conj().T @ gvec
    psi_vec = Vh[:rank].conj().T @ (c[:rank] / s[:rank])
    gnorm = np.linalg.norm(gvec)
    defect = np.linalg.norm(c[rank:])
    inconsistent = bool(rank < K.shape[0] and defect > 1e-8 * max(gnorm, 1e-300))
    kernel_vecs = [np.conj(Vh[i]) for i in range(rank, K.shape[0])]
    return psi_vec, rank, kernel_vecs, inconsistent, s


def solve_mixed_bvp(node, lam, f, phi, beta0, beta1, rank_tol=RANK_TOL, workers=1):
    """Solve (A - lam) u = f with (beta0*trace0 + beta1*trace1) u = phi.

    Reduces to [beta0 + beta1*M(lam)] psi = g with
    g = phi - beta1 G* (I - lam*T)^{-1} f, solved by SVD.  Rank-deficient
    systems yield the least-squares density together with a kernel basis
    and an inconsistency flag; the field is still assembled from psi.
    """
    lam = complex(lam)
    node.check_spectrum(lam)
    beta0 = as_expr(beta0)
    beta1 = as_expr(beta1)
    m_op = assemble_m_operator(node, lam, workers=workers)
    K = expr_matrix(beta0, node) + expr_matrix(beta1, node) @ m_op.matrix

    g = phi if phi is not None else node.zero_E()
    if f is not None:
        gs = node.apply_Gstar(node.resolvent(f, lam))
        g = g - apply_expr(beta1, gs, node)
    gvec = node.e_coeffs(g)

    psi_vec, rank, kernel_vecs, inconsistent, s = svd_solve(K, gvec, rank_tol)
    psi = node.e_make(psi_vec)

    u = node.resolvent_lift(psi, lam)
    if f is not None:
        u = u + node.t_resolvent(f, lam)

    gnorm = np.linalg.norm(gvec)
    bc_err = np.linalg.norm(K @ psi_vec - gvec)
    return BvpSolution(
        u=u,
        psi=psi,
        residual_pde=_pde_residual(node, u, f, lam),
        residual_bc=float(bc_err / gnorm if gnorm > 0 else bc_err),
        rank=rank,
        kernel_basis=[node.e_make(v) for v in kernel_vecs],
        unique=(rank == node.dim),
        inconsistent=inconsistent,
        singular_values=s,
    )


def _mix_result(node, out_mat, in_mat, rank_tol):
    U, s, Vh = np.linalg.svd(in_mat)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rank_tol * smax)) if smax > 0 else 0
    if rank == in_mat.shape[0]:
        n_mat = out_mat @ np.linalg.inv(in_mat)
        return TransferResult(
            matrix=n_mat,
            output_map=out_mat,
            input_map=in_mat,
            invertible=True,
            kernel_basis=[],
            range_basis=[],
            singular_values=s,
        )
    kernel = [node.e_make(np.conj(Vh[i])) for i in range(rank, in_mat.shape[0])]
    rng_basis = [node.e_make(U[:, i]) for i in range(rank)]
    return TransferResult(
        matrix=None,
        output_map=out_mat,
        input_map=in_mat,
        invertible=False,
        kernel_basis=kernel,
        range_basis=rng_basis,
        singular_values=s,
    )


def transfer_function(node, lam, alpha0, alpha1, beta0, beta1, rank_tol=RANK_TOL):
    """Mixed input/output map (alpha0 + alpha1*M(lam))(beta0 + beta1*M(lam))^{-1}.

    Returns the dense matrix when the input side is invertible, otherwise
    the pair of matrices with kernel/range diagnostics (a linear relation).
    """
    lam = complex(lam)
    node.check_spectrum(lam)
    m_mat = assemble_m_operator(node, lam).matrix
    out_mat = expr_matrix(as_expr(alpha0), node) + expr_matrix(as_expr(alpha1), node) @ m_mat
    in_mat = expr_matrix(as_expr(beta0), node) + expr_matrix(as_expr(beta1), node) @ m_mat
    return _mix_result(node, out_mat, in_mat, rank_tol)


def feedthrough(node, alpha0, alpha1, beta0, beta1, rank_tol=RANK_TOL):
    """Zero-parameter input/output map, built from Lambda directly."""
    l_mat = lambda_matrix(node)
    out_mat = expr_matrix(as_expr(alpha0), node) + expr_matrix(as_expr(alpha1), node) @ l_mat
    in_mat = expr_matrix(as_expr(beta0), node) + expr_matrix(as_expr(beta1), node) @ l_mat
    return _mix_result(node, out_mat, in_mat, rank_tol)


# ---------------------------------------------------------------------------
# identity suite


def _fmt_complex(lam):
    lam = complex(lam)
    if lam.imag == 0.0:
        return f"{lam.real:g}"
    return f"{lam.real:g}{lam.imag:+g}j"


DEFAULT_TOLERANCES = {
    "A0T=I": 1e-9,
    "G0G=I": 1e-12,
    "G1T=G*": 1e-8,
    "G1G=Lambda": 1e-9,
    "adjoint": 1e-10,
    "resolvent_kernel": 1e-8,
    "homogeneous": 1e-10,
}


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    max_error: float
    tolerance: float

    @property
    def passed(self):
        return self.max_error <= self.tolerance

    def to_json_obj(self):
        return {
            "identity": self.name,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
        }


@dataclass
class IdentityReport:
    node_label: str
    seed: int
    samples: int
    bandwidth: int
    lambdas: tuple
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_obj(self):
        return {
            "node": self.node_label,
            "seed": self.seed,
            "samples": self.samples,
            "bandwidth": self.bandwidth,
            "lambdas": [[float(l.real), float(l.imag)] for l in self.lambdas],
            "checks": [c.to_json_obj() for c in self.checks],
            "pass": bool(self.passed),
        }


def verify_node_identities(
    node,
    seed=42,
    samples=20,
    bandwidth=16,
    lambdas=(-3.0, 1.0, 2.0 + 0.5j),
    tolerances=None,
):
    """Measure the defining identities on seeded band-limited inputs.

    Checks A0*T = I, trace0*G = I, trace1*T = G*, trace1*G = Lambda, the
    adjoint pairing of G and G*, that (I - lam*T)^{-1} G phi annihilates
    (A - lam), and that the homogeneous problem only has the zero solution.
    Reported errors are worst-case relative errors over the samples.
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    lambdas = tuple(complex(l) for l in lambdas)
    rng = np.random.default_rng(seed)
    errs = {
        "A0T=I": 0.0,
        "G0G=I": 0.0,
        "G1T=G*": 0.0,
        "G1G=Lambda": 0.0,
        "adjoint": 0.0,
    }
    kernel_errs = {lam: 0.0 for lam in lambdas}

    for _ in range(samples):
        f = node.random_H(rng, bandwidth)
        phi = node.random_E(rng, bandwidth)
        nf = node.norm_H(f)
        nphi = node.norm_E(phi)

        tf = node.apply_T(f)
        errs["A0T=I"] = max(
            errs["A0T=I"], node.norm_H(node.apply_A(tf, 0.0) - f) / nf
        )

        lift = node.apply_G(phi)
        errs["G0G=I"] = max(
            errs["G0G=I"], node.norm_E(node.trace0(lift) - phi) / nphi
        )

        gsf = node.apply_Gstar(f)
        errs["G1T=G*"] = max(
            errs["G1T=G*"],
            node.norm_E(node.trace1(tf) - gsf) / max(node.norm_E(gsf), 1e-300),
        )

        lam_phi = node.apply_Lambda(phi)
        errs["G1G=Lambda"] = max(
            errs["G1G=Lambda"],
            node.norm_E(node.trace1(lift) - lam_phi)
            / max(node.norm_E(lam_phi), nphi),
        )

        pairing = abs(node.inner_H(lift, f) - node.inner_E(phi, gsf))
        errs["adjoint"] = max(errs["adjoint"], pairing / (nphi * nf))

        for lam in lambdas:
            u_lam = node.resolvent_lift(phi, lam)
            kernel_errs[lam] = max(
                kernel_errs[lam],
                node.norm_H(node.apply_A(u_lam, lam)) / node.norm_H(lift),
            )

    checks = [IdentityCheck(name, err, tol[name]) for name, err in errs.items()]
    for lam in lambdas:
        checks.append(
            IdentityCheck(
                f"resolvent_kernel(lambda={_fmt_complex(lam)})",
                kernel_errs[lam],
                tol["resolvent_kernel"],
            )
        )
    hom = 0.0
    for lam in (0.0,) + lambdas:
        sol = solve_sbvp(node, lam, None, node.zero_E())
        hom = max(hom, node.norm_H(sol.u))
    checks.append(IdentityCheck("homogeneous", hom, tol["homogeneous"]))
    return IdentityReport(
        node_label=node.label,
        seed=seed,
        samples=samples,
        bandwidth=bandwidth,
        lambdas=lambdas,
        checks=checks,
    )


# ---------------------------------------------------------------------------
# shipped realization: Laplacian on the unit disk


_BOUNDARY_OPS = {
    "dtn": dtn_circle,
    "hilbert": hilbert_transform,
    "cauchy": cauchy_singular,
}


def disk_node(N, M_r=64, boundary_op="dtn", corrupt_gstar=1.0, k_zeros=20):
    """Node for the disk Laplacian with the chosen boundary operator.

    ``boundary_op`` selects Lambda: "dtn" (normal-derivative trace of the
    harmonic continuation), "hilbert", or "cauchy".  For "dtn" the second
    trace is the plain normal derivative; otherwise it is assembled from
    the decomposition as G*(A u) + Lambda(trace0 u).  ``corrupt_gstar``
    rescales G* and exists to exercise failure paths of the identity suite.
    """
    if boundary_op not in _BOUNDARY_OPS:
        raise ValueError(f"unknown boundary operator {boundary_op!r}")
    grid = dk.RadialGrid(M_r)
    lam_apply = _BOUNDARY_OPS[boundary_op]

    if corrupt_gstar == 1.0:
        apply_gstar = dk.gstar
    else:
        def apply_gstar(f):
            return corrupt_gstar * dk.gstar(f)

    if boundary_op == "dtn":
        trace1 = dk.trace_neumann
    else:
        def trace1(u):
            return apply_gstar(dk.laplacian_apply(u, 0.0)) + lam_apply(
                dk.trace_dirichlet(u)
            )

    def e_basis(j):
        return BoundaryFunction.from_modes(N, {j - N: 1.0})

    def e_make(vec):
        if len(vec) != 2 * N + 1:
            raise InvalidGrid(f"expected {2 * N + 1} coefficients, got {len(vec)}")
        return BoundaryFunction(vec)

    return OperatorNode(
        label=f"disk[{boundary_op}](N={N},M_r={M_r})",
        dim=2 * N + 1,
        apply_T=dk.dirichlet_solve,
        apply_G=lambda phi: dk.poisson_extend(phi, grid),
        apply_Gstar=apply_gstar,
        apply_Lambda=lam_apply,
        apply_A=dk.laplacian_apply,
        trace0=dk.trace_dirichlet,
        trace1=trace1,
        resolvent=dk.resolvent_apply,
        t_resolvent=dk.helmholtz_dirichlet_solve,
        resolvent_lift=lambda phi, lam: dk.resolvent_harmonic(phi, grid, lam),
        spectrum_guard=lambda lam: dk.spectrum_guard(lam, N, k_zeros),
        e_basis=e_basis,
        e_make=e_make,
        e_coeffs=lambda phi: phi.coeffs,
        zero_E=lambda: BoundaryFunction.zero(N),
        inner_H=dk.inner_disk,
        inner_E=inner,
        random_H=lambda rng, bw: dk.random_disk_function(rng, N, grid, bw),
        random_E=lambda rng, bw: dk.random_boundary_function(rng, N, bw),
        extras={"grid": grid, "N": N, "boundary_op": boundary_op},
    )
