"""Acceptance suite: every release criterion at the default resolution.

Each test prints one PASS/FAIL line with the measured quantity before
asserting, so a bare ``pytest -s tests/test_acceptance.py`` doubles as the
acceptance report.  Defaults are N = 32 angular modes and radial degree 64;
everything here runs in seconds.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from bvpnode import boundary as bd
from bvpnode import cli
from bvpnode import disk as dk
from bvpnode import node as nd
from bvpnode import problems as pb

import oracles

N = 32
M_R = 64
LAMBDAS = (-3.0, 1.0, 2.0 + 0.5j)
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def _criterion(name, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def mode(n, value=1.0, size=N):
    return bd.BoundaryFunction.from_modes(size, {n: value})


# ---------------------------------------------------------------------------


def test_criterion_1_identity_suite(node_full):
    report = nd.verify_node_identities(
        node_full, seed=42, samples=20, bandwidth=16, lambdas=LAMBDAS
    )
    core = ["A0T=I", "G0G=I", "G1T=G*", "G1G=Lambda", "adjoint"]
    detail = ", ".join(
        f"{name}={report.check(name).max_error:.2e}" for name in core
    )
    ok = all(report.check(name).passed for name in core)
    _criterion("criterion 1 (identity suite)", ok, detail)


def test_criterion_2_resolvent_kernel(node_full):
    rng = np.random.default_rng(7)
    grid = node_full.extras["grid"]
    worst = 0.0
    for lam in LAMBDAS:
        for _ in range(10):
            phi = dk.random_boundary_function(rng, N, 16)
            u = dk.resolvent_harmonic(phi, grid, lam)
            lift = dk.poisson_extend(phi, grid)
            worst = max(worst, dk.laplacian_apply(u, lam).norm() / lift.norm())
    _criterion(
        "criterion 2 (kernel lemma)", worst <= 1e-8, f"max residual {worst:.2e}"
    )


def test_criterion_3_solution_formula(node_full):
    rng = np.random.default_rng(11)
    grid = node_full.extras["grid"]
    worst_pde = worst_trace = worst_direct = 0.0
    for lam in LAMBDAS:
        for _ in range(10):
            f = dk.random_disk_function(rng, N, grid, 16)
            phi = dk.random_boundary_function(rng, N, 16)
            sol = nd.solve_sbvp(node_full, lam, f, phi)
            worst_pde = max(worst_pde, sol.residual_pde)
            worst_trace = max(
                worst_trace,
                node_full.norm_E(node_full.trace0(sol.u) - phi) / phi.norm(),
            )
            direct = dk.collocation_solve(f, phi, lam)
            worst_direct = max(
                worst_direct, (sol.u - direct).norm() / direct.norm()
            )
    ok = worst_pde <= 1e-8 and worst_trace <= 1e-10 and worst_direct <= 1e-8
    _criterion(
        "criterion 3 (solution formula)",
        ok,
        f"pde {worst_pde:.2e}, trace {worst_trace:.2e}, vs direct {worst_direct:.2e}",
    )


def test_criterion_4_m_operator(node_full):
    m0 = nd.assemble_m_operator(node_full, 0.0)
    err0 = float(
        np.max(np.abs(m0.matrix - np.diag([abs(n) for n in range(-N, N + 1)])))
    )
    worst = 0.0
    for lam in (1.0, -3.0):
        m = nd.assemble_m_operator(node_full, lam)
        for n in range(-16, 17):
            expected = oracles.dtn_diagonal_entry(lam, n)
            worst = max(worst, abs(m.matrix[n + N, n + N] - expected))
    ok = err0 <= 1e-12 and worst <= 1e-8
    _criterion(
        "criterion 4 (M operator vs Bessel oracle)",
        ok,
        f"lam=0 error {err0:.2e}, Bessel-series diff {worst:.2e}",
    )


def test_criterion_5_bounded_difference_surrogate():
    norms = []
    for n_trunc in (16, 32, 64):
        node = nd.disk_node(n_trunc, M_R)
        diff = (
            nd.assemble_m_operator(node, -3.0).matrix
            - nd.assemble_m_operator(node, 0.0).matrix
        )
        norms.append(float(np.linalg.norm(diff, 2)))
    v1 = abs(norms[1] - norms[0]) / norms[0]
    v2 = abs(norms[2] - norms[1]) / norms[1]
    ok = v1 < 0.10 and v2 < 0.10
    _criterion(
        "criterion 5 (M(lam)-M(0) norm stability)",
        ok,
        f"norms {norms[0]:.6f}/{norms[1]:.6f}/{norms[2]:.6f}, variation {v1:.2%}, {v2:.2%}",
    )


def test_criterion_6_mixed_reductions(node_full):
    # Robin: (1 + |n|) psi_n = g_n
    robin = pb.solve_poincare(
        pb.PoincareProblem.constant(N, 0.0, 1.0, 1.0, mode(1)), node=node_full
    )
    err_robin = abs(robin.psi.coeff(1) - 0.5)

    # Hilbert with identity coefficients: psi = g
    hil = pb.solve_hilbert(
        pb.HilbertProblem.constant(N, 1.0, 0.0, mode(1, 0.5) + mode(-1, 0.5)),
        M_r=M_R,
    )
    err_hil = float(
        np.max(np.abs(hil.density.coeffs - (mode(1, 0.5) + mode(-1, 0.5)).coeffs))
    )

    # Riemann constant coefficients: mode-splitting oracle
    rie = pb.solve_riemann(
        pb.RiemannProblem.constant(N, 1.0, 2.0, mode(1) + mode(-1)), M_r=M_R
    )
    err_rie = max(
        abs(rie.density.coeff(1) - 0.5), abs(rie.density.coeff(-1) - 0.25)
    )

    neumann = pb.solve_poincare(
        pb.PoincareProblem.constant(N, 0.0, 1.0, 0.0, mode(0)), node=node_full
    )
    dds = pb.solve_poincare(
        pb.PoincareProblem.constant(N, 1.0, 0.0, 0.0, mode(1, 0.5) + mode(-1, 0.5)),
        node=node_full,
    )
    ok = (
        err_robin <= 1e-10
        and err_hil <= 1e-10
        and err_rie <= 1e-10
        and neumann.inconsistent
        and len(neumann.kernel_basis) == 1
        and (not dds.unique)
        and len(dds.kernel_basis) == 1
    )
    _criterion(
        "criterion 6 (constant-coefficient reductions)",
        ok,
        f"robin {err_robin:.2e}, hilbert {err_hil:.2e}, riemann {err_rie:.2e}, "
        f"neumann kernel {len(neumann.kernel_basis)} inconsistent={neumann.inconsistent}, "
        f"d/ds kernel {len(dds.kernel_basis)}",
    )


def test_criterion_7_riemann_end_to_end():
    rng = np.random.default_rng(19)
    b_fn = bd.BoundaryFunction.from_modes(N, {0: 2.0, 1: 0.5, -1: 0.5})
    a_fn = mode(0)
    g = dk.random_boundary_function(rng, N, 4)
    g = g * (1.0 / g.norm())
    sol = pb.solve_riemann(pb.RiemannProblem(a_fn, b_fn, g), M_r=M_R)

    jump_ok = sol.residual_pointwise <= 1e-8 * g.norm()
    support_ok = (
        np.max(np.abs(sol.trace_plus.coeffs[:N])) == 0.0
        and np.max(np.abs(sol.trace_minus.coeffs[N:])) == 0.0
    )
    theta = bd.theta_grid(N)
    plus = bd.synthesize(sol.trace_plus)
    minus = bd.synthesize(sol.trace_minus)
    eval_err = 0.0
    for j in range(0, 2 * N + 1, 5):
        zi = 0.999 * np.exp(1j * theta[j])
        zo = 1.001 * np.exp(1j * theta[j])
        eval_err = max(eval_err, abs(sol.interior(zi) - plus[j]))
        eval_err = max(eval_err, abs(sol.exterior(zo) - minus[j]))
    ok = jump_ok and support_ok and eval_err < 1e-2
    _criterion(
        "criterion 7 (Riemann end to end)",
        ok,
        f"pointwise jump {sol.residual_pointwise:.2e}, supports exact={support_ok}, "
        f"evaluator drift {eval_err:.2e}",
    )


def test_criterion_8_shifted_riemann():
    rng = np.random.default_rng(23)
    g = dk.random_boundary_function(rng, N, 4)
    theta = bd.theta_grid(N)

    plain = pb.solve_riemann(pb.RiemannProblem.constant(N, 1.0, 2.0, g), M_r=M_R)
    ident = pb.solve_shifted_riemann(
        pb.RiemannProblem.constant(N, 1.0, 2.0, g, shift=theta), M_r=M_R
    )
    err_ident = float(np.max(np.abs(ident.density.coeffs - plain.density.coeffs)))

    wavy = pb.solve_shifted_riemann(
        pb.RiemannProblem.constant(N, 1.0, 2.0, g, shift=theta + 0.3 * np.sin(theta)),
        M_r=M_R,
    )
    ok = err_ident <= 1e-12 and wavy.residual_pointwise <= 1e-8 * g.norm()
    _criterion(
        "criterion 8 (shifted Riemann)",
        ok,
        f"identity-shift diff {err_ident:.2e}, "
        f"wavy-shift pointwise residual {wavy.residual_pointwise:.2e}",
    )


def test_criterion_9_hilbert_and_conjugation():
    sol = pb.solve_hilbert(
        pb.HilbertProblem.constant(N, 1.0, 0.0, mode(1, 0.5) + mode(-1, 0.5)),
        M_r=M_R,
    )
    expected = np.zeros(N + 1, dtype=np.complex128)
    expected[1] = 1.0
    taylor_err = float(np.max(np.abs(sol.taylor - expected)))

    node_h = nd.disk_node(N, 16, boundary_op="hilbert")
    res = nd.feedthrough(
        node_h, nd.identity_op(), nd.as_expr(-1.0j), nd.identity_op(), nd.as_expr(1.0j)
    )
    x = (mode(1, 0.5) + mode(-1, 0.5)).coeffs  # cos theta
    demo_ok = (
        np.max(np.abs(res.input_map @ x - mode(1).coeffs)) == 0.0
        and np.max(np.abs(res.output_map @ x - mode(-1).coeffs)) == 0.0
    )
    kernel_ok = (not res.invertible) and len(res.kernel_basis) == N
    for k in res.kernel_basis:
        kernel_ok = kernel_ok and np.max(np.abs(k.coeffs[N:])) == 0.0
    ok = taylor_err <= 1e-12 and demo_ok and kernel_ok
    _criterion(
        "criterion 9 (Hilbert problem and conjugation)",
        ok,
        f"taylor error {taylor_err:.2e}, conjugation demo exact={demo_ok}, "
        f"Ker(I+iH) = negative modes exact={kernel_ok}",
    )


def test_criterion_10_spectrum_guard():
    j01 = oracles.first_j0_zero()
    reject = dk.spectrum_guard(-j01 * j01, N)
    acc0 = dk.spectrum_guard(0.0, N)
    acc1 = dk.spectrum_guard(1.0, N)
    ok = (not reject.passes) and acc0.passes and acc1.passes
    _criterion(
        "criterion 10 (spectrum guard)",
        ok,
        f"j01={j01:.9f}, distance at eigenvalue {reject.distance:.2e}, "
        f"0 and 1 accepted={acc0.passes and acc1.passes}",
    )


def test_criterion_11a_verify_determinism(tmp_path):
    cfg = {
        "schema": 1,
        "kind": "verify",
        "discretization": {"N": 16, "M_r": 48},
        "samples": 6,
        "bandwidth": 8,
    }
    path = tmp_path / "verify.json.cfg"
    path.write_text(json.dumps(cfg))
    cli.main(["verify", "--config", str(path), "--out", str(tmp_path / "r1")])
    cli.main(["verify", "--config", str(path), "--out", str(tmp_path / "r2")])
    b1 = (tmp_path / "r1" / "verify.json").read_bytes()
    b2 = (tmp_path / "r2" / "verify.json").read_bytes()
    _criterion(
        "criterion 11a (verify determinism)",
        b1 == b2,
        f"reports byte-identical ({len(b1)} bytes)",
    )


@pytest.mark.parametrize(
    "case", ["dirichlet_unit_source", "hilbert_identity_cos", "riemann_two_mode"]
)
def test_criterion_11b_solve_golden(case, tmp_path):
    cfg_path = GOLDEN_DIR / case / "config.json"
    out = tmp_path / "out"
    code = cli.main(["solve", "--config", str(cfg_path), "--out", str(out)])
    assert code == 0
    stored = sorted(
        p.name for p in (GOLDEN_DIR / case).iterdir() if p.name != "config.json"
    )
    assert stored, f"no golden artifacts for {case}"
    mismatched = [
        name
        for name in stored
        if (out / name).read_bytes() != (GOLDEN_DIR / case / name).read_bytes()
    ]
    _criterion(
        f"criterion 11b (golden files: {case})",
        not mismatched,
        f"{len(stored)} artifacts bit-exact" if not mismatched else f"mismatch {mismatched}",
    )
