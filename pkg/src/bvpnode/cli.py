"""Batch front-end: JSON problem configs in, JSON/CSV artifacts out.

Three subcommands:

    bvpnode verify    [--config PATH] [--out DIR]   run the identity suite
    bvpnode solve      --config PATH   --out DIR    solve one problem
    bvpnode moperator  --config PATH   --out DIR    export a dense M(lambda)

Artifacts are byte-deterministic for a fixed config and seed: floats are
serialized with 17 significant digits, writes are atomic, and wall-clock
timing goes to stdout only.  Exit codes: 0 success, 1 degenerate solve
under ``fail_on_degenerate`` (or other solver error), 2 config error,
3 spectral parameter rejected by the guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import bessel
from . import boundary as bd
from . import disk as dk
from . import node as nd
from . import problems as pb
from .errors import BvpNodeError, ConfigError, SpectrumProximity

SCHEMA_VERSION = 1
DEFAULT_N = 32
DEFAULT_M_R = 64
DEFAULT_SEED = 42
DEFAULT_POLAR_GRID = (33, 65)

KINDS = (
    "dirichlet",
    "sbvp",
    "mixed",
    "poincare",
    "hilbert",
    "riemann",
    "riemann_shifted",
    "moperator",
    "verify",
)

_COMMON_KEYS = {"schema", "kind", "discretization", "seed", "output", "fail_on_degenerate"}
_KIND_KEYS = {
    "dirichlet": {"f", "phi"},
    "sbvp": {"f", "phi", "lambda"},
    "mixed": {"f", "phi", "lambda", "beta0", "beta1", "boundary_operator"},
    "poincare": {"coef_tangential", "coef_normal", "coef_value", "g", "lambda", "f"},
    "hilbert": {"a", "b", "g"},
    "riemann": {"coef_plus", "coef_minus", "g"},
    "riemann_shifted": {"coef_plus", "coef_minus", "g", "shift"},
    "moperator": {"lambda", "boundary_operator"},
    "verify": {
        "samples",
        "bandwidth",
        "lambdas",
        "boundary_operator",
        "debug_corrupt_gstar",
    },
}


# ---------------------------------------------------------------------------
# deterministic serialization


def _format_float(x):
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("non-finite value in artifact")
    return "%.17g" % x


def dumps_canonical(obj):
    """JSON text with fixed float formatting and preserved key order."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, dict):
        inner = ",".join(
            f"{json.dumps(str(k))}:{dumps_canonical(v)}" for k, v in obj.items()
        )
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps_canonical(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def atomic_write(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_json(path, obj):
    atomic_write(path, dumps_canonical(obj) + "\n")


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_float(x) for x in row))
    atomic_write(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# config parsing


def _fail(msg):
    raise ConfigError(msg)


def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        _fail(f"{where} must be an object")
    unknown = set(obj) - allowed
    if unknown:
        _fail(f"unknown keys in {where}: {sorted(unknown)}")


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        _fail(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        _fail(f"config is not valid JSON: {exc}")
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    if not isinstance(cfg, dict):
        _fail("config must be a JSON object")
    if cfg.get("schema") != SCHEMA_VERSION:
        _fail(f"config schema must be {SCHEMA_VERSION}")
    kind = cfg.get("kind")
    if kind not in KINDS:
        _fail(f"kind must be one of {KINDS}, got {kind!r}")
    _check_keys(cfg, _COMMON_KEYS | _KIND_KEYS[kind], "config")
    disc = cfg.get("discretization", {})
    _check_keys(disc, {"N", "M_r"}, "discretization")
    N = disc.get("N", DEFAULT_N)
    M_r = disc.get("M_r", DEFAULT_M_R)
    if not isinstance(N, int) or N < 4:
        _fail(f"N must be an integer >= 4, got {N}")
    if not isinstance(M_r, int) or M_r < 8:
        _fail(f"M_r must be an integer >= 8, got {M_r}")
    seed = cfg.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int):
        _fail("seed must be an integer")
    out = cfg.get("output", {})
    _check_keys(out, {"polar_grid", "formats"}, "output")
    grid = out.get("polar_grid", list(DEFAULT_POLAR_GRID))
    if (
        not isinstance(grid, (list, tuple))
        or len(grid) != 2
        or not all(isinstance(v, int) and v >= 2 for v in grid)
    ):
        _fail("output.polar_grid must be two integers >= 2")
    formats = out.get("formats", ["json", "csv"])
    if not isinstance(formats, list) or not set(formats) <= {"json", "csv"}:
        _fail("output.formats entries must be 'json' or 'csv'")
    if "fail_on_degenerate" in cfg and not isinstance(cfg["fail_on_degenerate"], bool):
        _fail("fail_on_degenerate must be a boolean")
    return cfg


def _cfg_sizes(cfg):
    disc = cfg.get("discretization", {})
    return disc.get("N", DEFAULT_N), disc.get("M_r", DEFAULT_M_R)


def _cfg_lambda(cfg, key="lambda"):
    val = cfg.get(key, [0.0, 0.0])
    if (
        not isinstance(val, (list, tuple))
        or len(val) != 2
        or not all(isinstance(v, (int, float)) for v in val)
    ):
        _fail(f"{key} must be [re, im]")
    return complex(val[0], val[1])


def parse_boundary_function(spec, N, where):
    """Sparse mode triples or uniform samples -> circle function."""
    _check_keys(spec, {"modes", "samples"}, where)
    if ("modes" in spec) == ("samples" in spec):
        _fail(f"{where} needs exactly one of 'modes' or 'samples'")
    if "modes" in spec:
        triples = spec["modes"]
        if not isinstance(triples, list):
            _fail(f"{where}.modes must be a list of [n, re, im]")
        for t in triples:
            if not (isinstance(t, list) and len(t) == 3):
                _fail(f"{where}.modes entries must be [n, re, im]")
            if not isinstance(t[0], int) or abs(t[0]) > N:
                _fail(f"{where}.modes has mode {t[0]} outside [-{N}, {N}]")
        return bd.BoundaryFunction.from_mode_triples(N, triples)
    raw = spec["samples"]
    if not isinstance(raw, list) or len(raw) != 2 * N + 1:
        _fail(f"{where}.samples must have length {2 * N + 1}")
    vals = []
    for v in raw:
        if isinstance(v, (int, float)):
            vals.append(complex(v))
        elif isinstance(v, list) and len(v) == 2:
            vals.append(complex(v[0], v[1]))
        else:
            _fail(f"{where}.samples entries must be numbers or [re, im]")
    return bd.analyze(np.asarray(vals))


def parse_disk_function(spec, N, grid, where):
    """Per-mode radial power-series coefficients -> disk function."""
    _check_keys(spec, {"radial_poly"}, where)
    entries = spec.get("radial_poly")
    if not isinstance(entries, list):
        _fail(f"{where}.radial_poly must be a list of [n, [[re, im], ...]]")
    vals = np.zeros((2 * N + 1, grid.M_r + 1), dtype=np.complex128)
    for entry in entries:
        if not (isinstance(entry, list) and len(entry) == 2):
            _fail(f"{where}.radial_poly entries must be [n, coeff_pairs]")
        n, pairs = entry
        if not isinstance(n, int) or abs(n) > N:
            _fail(f"{where}.radial_poly has mode {n} outside [-{N}, {N}]")
        coeffs = []
        for p in pairs:
            if not (isinstance(p, list) and len(p) == 2):
                _fail(f"{where}.radial_poly coefficients must be [re, im] pairs")
            coeffs.append(complex(p[0], p[1]))
        vals[n + N, :] = np.polynomial.polynomial.polyval(grid.nodes, np.asarray(coeffs))
    return dk.DiskFunction.from_values(vals, grid)


def parse_shift(spec, N, where):
    _check_keys(spec, {"samples", "rotation"}, where)
    if ("samples" in spec) == ("rotation" in spec):
        _fail(f"{where} needs exactly one of 'samples' or 'rotation'")
    if "rotation" in spec:
        rot = spec["rotation"]
        if not isinstance(rot, (int, float)):
            _fail(f"{where}.rotation must be a number")
        return bd.theta_grid(N) + float(rot)
    raw = spec["samples"]
    if (
        not isinstance(raw, list)
        or len(raw) != 2 * N + 1
        or not all(isinstance(v, (int, float)) for v in raw)
    ):
        _fail(f"{where}.samples must be {2 * N + 1} numbers")
    return np.asarray(raw, dtype=np.float64)


def _parse_expr(spec, N, where):
    """Structured boundary-operator expression.

    A list of terms; each term {"coeff": [re, im], "factors": [...]} with
    factors {"op": "identity" | "mult" | "d_ds" | "lambda" | "shift", ...}.
    """
    if not isinstance(spec, list):
        _fail(f"{where} must be a list of terms")
    expr = nd.zero_op()
    for i, term in enumerate(spec):
        tw = f"{where}[{i}]"
        _check_keys(term, {"coeff", "factors"}, tw)
        cval = term.get("coeff", [1.0, 0.0])
        if not (isinstance(cval, list) and len(cval) == 2):
            _fail(f"{tw}.coeff must be [re, im]")
        factors = term.get("factors", [])
        piece = nd.identity_op()
        for j, fac in enumerate(factors):
            fw = f"{tw}.factors[{j}]"
            _check_keys(fac, {"op", "fn", "alpha"}, fw)
            op = fac.get("op")
            if op == "identity":
                piece = piece * nd.identity_op()
            elif op == "mult":
                if "fn" not in fac:
                    _fail(f"{fw} mult factor needs 'fn'")
                piece = piece * nd.mult_op(parse_boundary_function(fac["fn"], N, fw))
            elif op == "d_ds":
                piece = piece * nd.d_ds_op()
            elif op == "lambda":
                piece = piece * nd.lambda_op()
            elif op == "shift":
                if "alpha" not in fac:
                    _fail(f"{fw} shift factor needs 'alpha'")
                piece = piece * nd.shift_op(parse_shift(fac["alpha"], N, fw))
            else:
                _fail(f"{fw}.op is unknown: {op!r}")
        expr = expr + complex(cval[0], cval[1]) * piece
    return expr


# ---------------------------------------------------------------------------
# artifact helpers


def _mode_triples_obj(phi):
    return [[n, re, im] for n, re, im in phi.to_mode_triples()]


def _diag_obj(sol):
    return {
        "residual_pde": sol.residual_pde,
        "residual_bc": sol.residual_bc,
        "rank": sol.rank,
        "kernel_dim": len(sol.kernel_basis),
        "unique": sol.unique,
        "inconsistent": sol.inconsistent,
    }


def _polar_grid(cfg, interior=True):
    out = cfg.get("output", {})
    n_r, n_t = out.get("polar_grid", list(DEFAULT_POLAR_GRID))
    if interior:
        radii = np.linspace(0.0, 1.0, n_r)
    else:
        radii = 1.0 + np.linspace(0.0, 1.0, n_r + 1)[1:]
    thetas = np.linspace(0.0, 2.0 * np.pi, n_t, endpoint=False)
    return radii, thetas


def _field_rows(values, radii, thetas):
    rows = []
    for i, r in enumerate(radii):
        for j, t in enumerate(thetas):
            v = values[i, j]
            rows.append((float(r), float(t), float(v.real), float(v.imag)))
    return rows


def _disk_field_values(u, radii, thetas):
    rr, tt = np.meshgrid(radii, thetas, indexing="ij")
    return u.eval_polar(rr, tt)


def _analytic_field_values(density, radii, thetas, side):
    N = density.N
    rr, tt = np.meshgrid(radii, thetas, indexing="ij")
    z = rr * np.exp(1.0j * tt)
    if side == "interior":
        coeffs = 2.0 * density.coeffs[N:]
        return np.polynomial.polynomial.polyval(z, coeffs)
    coeffs = np.zeros(N + 1, dtype=np.complex128)
    coeffs[1:] = -2.0 * density.coeffs[:N][::-1]
    return np.polynomial.polynomial.polyval(1.0 / z, coeffs)


# ---------------------------------------------------------------------------
# subcommands


def run_verify(cfg, out_dir, workers=1):
    N, M_r = _cfg_sizes(cfg)
    seed = cfg.get("seed", DEFAULT_SEED)
    samples = cfg.get("samples", 20)
    bandwidth = cfg.get("bandwidth", 16)
    if not isinstance(samples, int) or samples < 1:
        _fail("samples must be a positive integer")
    if not isinstance(bandwidth, int) or bandwidth < 1:
        _fail("bandwidth must be a positive integer")
    raw_lams = cfg.get("lambdas", [[0.0, 0.0], [-3.0, 0.0], [1.0, 0.0]])
    if not isinstance(raw_lams, list) or not raw_lams:
        _fail("lambdas must be a non-empty list of [re, im]")
    lambdas = []
    for pair in raw_lams:
        if not (isinstance(pair, list) and len(pair) == 2):
            _fail("lambdas entries must be [re, im]")
        lambdas.append(complex(pair[0], pair[1]))
    boundary_op = cfg.get("boundary_operator", "dtn")
    corrupt = cfg.get("debug_corrupt_gstar", 1.0)
    if not isinstance(corrupt, (int, float)):
        _fail("debug_corrupt_gstar must be a number")

    t0 = time.perf_counter()
    node = nd.disk_node(N, M_r, boundary_op=boundary_op, corrupt_gstar=float(corrupt))
    report = nd.verify_node_identities(
        node, seed=seed, samples=samples, bandwidth=bandwidth, lambdas=lambdas
    )
    elapsed = time.perf_counter() - t0

    obj = {"schema": SCHEMA_VERSION, "config": cfg}
    obj.update(report.to_json_obj())
    write_json(os.path.join(out_dir, "verify.json"), obj)
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: max_error={c.max_error:.3e} tol={c.tolerance:.1e}")
    print(f"verify: {'PASS' if report.passed else 'FAIL'} ({elapsed:.2f}s)")
    return 0 if report.passed else 1


def run_moperator(cfg, out_dir, workers=1):
    N, M_r = _cfg_sizes(cfg)
    lam = _cfg_lambda(cfg)
    boundary_op = cfg.get("boundary_operator", "dtn")
    t0 = time.perf_counter()
    node = nd.disk_node(N, M_r, boundary_op=boundary_op)
    m_op = nd.assemble_m_operator(node, lam, workers=workers)
    write_json(os.path.join(out_dir, "moperator.json"), m_op.to_json_obj())

    diag = m_op.diagonal()
    if boundary_op == "dtn" and lam.imag == 0.0:
        ref = bessel.helmholtz_dtn_diagonal(lam, N)
        rows = [
            (float(n), diag[n + N].real, diag[n + N].imag, ref[n + N].real,
             ref[n + N].imag, float(abs(diag[n + N] - ref[n + N])))
            for n in range(-N, N + 1)
        ]
        header = ["n", "re", "im", "reference_re", "reference_im", "abs_diff"]
    else:
        rows = [
            (float(n), diag[n + N].real, diag[n + N].imag) for n in range(-N, N + 1)
        ]
        header = ["n", "re", "im"]
    write_csv(os.path.join(out_dir, "moperator_diagonal.csv"), header, rows)
    print(f"moperator: wrote {2 * N + 1} modes ({time.perf_counter() - t0:.2f}s)")
    return 0


def _solve_dispatch(cfg, workers):
    """Returns (solution_obj_fields, field_values_fn, diagnostics, extras)."""
    kind = cfg["kind"]
    N, M_r = _cfg_sizes(cfg)
    grid = dk.RadialGrid(M_r)

    if kind in ("dirichlet", "sbvp", "mixed"):
        lam = _cfg_lambda(cfg) if kind != "dirichlet" else 0.0
        f = None
        if "f" in cfg:
            f = parse_disk_function(cfg["f"], N, grid, "f")
        phi = None
        if "phi" in cfg:
            phi = parse_boundary_function(cfg["phi"], N, "phi")
        if f is None and phi is None:
            _fail(f"kind {kind} needs at least one of 'f', 'phi'")
        node = nd.disk_node(N, M_r, boundary_op=cfg.get("boundary_operator", "dtn"))
        if kind == "mixed":
            beta0 = _parse_expr(cfg.get("beta0", []), N, "beta0")
            beta1 = _parse_expr(cfg.get("beta1", []), N, "beta1")
            sol = nd.solve_mixed_bvp(node, lam, f, phi, beta0, beta1, workers=workers)
        else:
            sol = nd.solve_sbvp(node, lam, f, phi)
        fields = {
            "psi": _mode_triples_obj(sol.psi),
            "trace": _mode_triples_obj(dk.trace_dirichlet(sol.u)),
            "u": sol.u.to_json_obj(),
        }
        return fields, sol.u, sol, None

    if kind == "poincare":
        problem = pb.PoincareProblem(
            coef_tangential=parse_boundary_function(
                cfg["coef_tangential"], N, "coef_tangential"
            ),
            coef_normal=parse_boundary_function(cfg["coef_normal"], N, "coef_normal"),
            coef_value=parse_boundary_function(cfg["coef_value"], N, "coef_value"),
            data=parse_boundary_function(cfg["g"], N, "g"),
            lam=_cfg_lambda(cfg),
            source=parse_disk_function(cfg["f"], N, grid, "f") if "f" in cfg else None,
        )
        sol = pb.solve_poincare(problem, M_r=M_r, workers=workers)
        fields = {
            "psi": _mode_triples_obj(sol.psi),
            "u": sol.u.to_json_obj(),
        }
        return fields, sol.u, sol, None

    if kind == "hilbert":
        problem = pb.HilbertProblem(
            coef_real=parse_boundary_function(cfg["a"], N, "a"),
            coef_imag=parse_boundary_function(cfg["b"], N, "b"),
            data=parse_boundary_function(cfg["g"], N, "g"),
        )
        sol = pb.solve_hilbert(problem, M_r=M_r)
        fields = {
            "psi": _mode_triples_obj(sol.density),
            "conjugate_trace": _mode_triples_obj(
                bd.hilbert_transform(sol.density)
            ),
            "taylor": [[c.real, c.imag] for c in sol.taylor],
            "residual_pointwise": sol.residual_pointwise,
        }
        return fields, sol, sol.diagnostics, None

    if kind in ("riemann", "riemann_shifted"):
        shift = None
        if kind == "riemann_shifted":
            if "shift" not in cfg:
                _fail("riemann_shifted needs 'shift'")
            shift = parse_shift(cfg["shift"], N, "shift")
        problem = pb.RiemannProblem(
            coef_plus=parse_boundary_function(cfg["coef_plus"], N, "coef_plus"),
            coef_minus=parse_boundary_function(cfg["coef_minus"], N, "coef_minus"),
            data=parse_boundary_function(cfg["g"], N, "g"),
            shift=shift,
        )
        if shift is None:
            sol = pb.solve_riemann(problem, M_r=M_r, workers=workers)
        else:
            sol = pb.solve_shifted_riemann(problem, M_r=M_r, workers=workers)
        fields = {
            "psi": _mode_triples_obj(sol.density),
            "trace_plus": _mode_triples_obj(sol.trace_plus),
            "trace_minus": _mode_triples_obj(sol.trace_minus),
            "residual_pointwise": sol.residual_pointwise,
        }
        return fields, sol, sol.diagnostics, "exterior"

    _fail(f"kind {kind} is not a solve kind")


def run_solve(cfg, out_dir, workers=1):
    kind = cfg["kind"]
    t0 = time.perf_counter()
    fields, solution, diagnostics, extra = _solve_dispatch(cfg, workers)
    formats = cfg.get("output", {}).get("formats", ["json", "csv"])

    if "json" in formats:
        obj = {
            "schema": SCHEMA_VERSION,
            "kind": kind,
            "seed": cfg.get("seed", DEFAULT_SEED),
            "config": cfg,
            "solution": fields,
            "diagnostics": _diag_obj(diagnostics),
        }
        write_json(os.path.join(out_dir, "solution.json"), obj)

    if "csv" in formats:
        radii, thetas = _polar_grid(cfg, interior=True)
        if isinstance(solution, pb.AnalyticSolution):
            if solution.kind == "hilbert":
                zz = radii[:, None] * np.exp(1.0j * thetas[None, :])
                vals = np.polynomial.polynomial.polyval(zz, solution.taylor)
            else:
                vals = _analytic_field_values(solution.density, radii, thetas, "interior")
        else:
            vals = _disk_field_values(solution, radii, thetas)
        write_csv(
            os.path.join(out_dir, "field.csv"),
            ["r", "theta", "re", "im"],
            _field_rows(vals, radii, thetas),
        )
        if extra == "exterior":
            radii_x, thetas_x = _polar_grid(cfg, interior=False)
            vals_x = _analytic_field_values(solution.density, radii_x, thetas_x, "exterior")
            write_csv(
                os.path.join(out_dir, "exterior.csv"),
                ["r", "theta", "re", "im"],
                _field_rows(vals_x, radii_x, thetas_x),
            )

    degenerate = diagnostics.degenerate
    print(
        f"solve[{kind}]: rank={diagnostics.rank} kernel_dim={len(diagnostics.kernel_basis)}"
        f" inconsistent={diagnostics.inconsistent}"
        f" residual_bc={diagnostics.residual_bc:.3e}"
        f" ({time.perf_counter() - t0:.2f}s)"
    )
    if degenerate and cfg.get("fail_on_degenerate", False):
        print("solve: degenerate system flagged", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# entry point


def _workers_from_env():
    raw = os.environ.get("BVPNODE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="bvpnode",
        description="Spectral boundary value problems on the unit disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the operator identity suite")
    p_verify.add_argument("--config", default=None, help="JSON config path")
    p_verify.add_argument("--out", default=".", help="output directory")

    p_solve = sub.add_parser("solve", help="solve one configured problem")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--out", required=True)

    p_mop = sub.add_parser("moperator", help="export a dense M(lambda)")
    p_mop.add_argument("--config", required=True)
    p_mop.add_argument("--out", required=True)

    args = parser.parse_args(argv)
    workers = _workers_from_env()

    try:
        if args.command == "verify":
            if args.config is None:
                cfg = validate_config({"schema": SCHEMA_VERSION, "kind": "verify"})
            else:
                cfg = load_config(args.config)
            if cfg["kind"] != "verify":
                _fail(f"verify expects kind 'verify', got {cfg['kind']!r}")
            os.makedirs(args.out, exist_ok=True)
            return run_verify(cfg, args.out, workers)
        if args.command == "solve":
            cfg = load_config(args.config)
            if cfg["kind"] in ("verify", "moperator"):
                _fail(f"solve cannot run kind {cfg['kind']!r}")
            os.makedirs(args.out, exist_ok=True)
            return run_solve(cfg, args.out, workers)
        if args.command == "moperator":
            cfg = load_config(args.config)
            if cfg["kind"] != "moperator":
                _fail(f"moperator expects kind 'moperator', got {cfg['kind']!r}")
            os.makedirs(args.out, exist_ok=True)
            return run_moperator(cfg, args.out, workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SpectrumProximity as exc:
        print(f"spectrum guard: {exc}", file=sys.stderr)
        return 3
    except BvpNodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
