"""Spectral boundary value problems on the unit disk.

Solves the classical Poincare (oblique derivative), Hilbert, and Riemann
problems by reducing each to a single boundary equation
(beta0 + beta1 * M(lambda)) psi = g built from a Dirichlet-to-Neumann-type
operator family M(lambda), and ships the numerical identity suite that
ties the disk realization together.
"""

from .boundary import (
    BoundaryFunction,
    analyze,
    synthesize,
    hilbert_transform,
    cauchy_singular,
    dtn_circle,
    tangential_derivative,
    multiply,
    compose_shift,
    plemelj_traces,
    cauchy_integral_eval,
)
from .disk import (
    DiskFunction,
    RadialGrid,
    poisson_extend,
    dirichlet_solve,
    helmholtz_dirichlet_solve,
    resolvent_apply,
    resolvent_harmonic,
    gstar,
    trace_dirichlet,
    trace_neumann,
    laplacian_apply,
    spectrum_guard,
)
from .node import (
    OperatorNode,
    MOperator,
    BvpSolution,
    disk_node,
    assemble_m_operator,
    solve_sbvp,
    solve_mixed_bvp,
    transfer_function,
    feedthrough,
    verify_node_identities,
    identity_op,
    zero_op,
    mult_op,
    d_ds_op,
    lambda_op,
    shift_op,
)
from .problems import (
    PoincareProblem,
    HilbertProblem,
    RiemannProblem,
    AnalyticSolution,
    solve_poincare,
    solve_hilbert,
    solve_riemann,
    solve_shifted_riemann,
    conjugation_map,
)

__version__ = "0.1.0"
