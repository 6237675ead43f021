"""
Operator checks: brute-force oracle, weak kernels and their modified moments,
kernel blocks, collocation assembly, solve/study plumbing, config and traces.
"""

import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

MOMENT_CASES = [
    ("abs_pow", -1.0 / 3.0, 0.25),
    ("abs_pow_sgn", -0.5, 0.5),
    ("log", None, 0.5),
    ("abs_pow_log", -0.25, 0.75),
]


def _expect(exc_type, call, message):
    try:
        call()
    except exc_type:
        return
    raise AssertionError(message)


def test_oracle_closed_forms():
    from prandtl import oracle

    assert abs(oracle.adaptive_integral("x^2", -1.0, 1.0) - 2.0 / 3.0) < 1e-14
    value = oracle.adaptive_integral(lambda x: np.sqrt(1.0 - x * x), -1.0, 1.0, singular_points=(-1.0, 1.0))
    assert abs(value - math.pi / 2.0) < 1e-10, f"int sqrt(1-x^2) = {value}"
    moments = oracle.monomial_moments(0.5, 0.5, 4)
    assert abs(moments[0] - math.pi / 2.0) < 1e-15 and abs(moments[2] - math.pi / 8.0) < 1e-15
    print("PASS: oracle integrals against closed forms")


def test_oracle_principal_value():
    from prandtl import oracle
    from prandtl.quadrature.lagrange import PHI

    for y in (-0.6, 0.0, 0.3, 0.9):
        value = oracle.pv_cauchy(lambda x: np.ones_like(x), PHI, y)
        assert abs(value + math.pi * y) < 1e-9, f"PV at y={y}: {value}, expected {-math.pi * y}"
    print("PASS: PV int sqrt(1-x^2)/(x-y) = -pi y")


def test_spectral_identity():
    from prandtl import oracle

    assert oracle.verify_spectral_identity(0, 0.5) <= 1e-7
    assert oracle.verify_spectral_identity(3, 0.25) <= 1e-6
    for alpha in (0.25, 0.5, 0.75):
        for n in range(11):
            residual = oracle.verify_spectral_identity(n, alpha)
            assert residual <= 1e-6, f"D A^rho p_{n} residual {residual:.2e} at alpha={alpha}"
    print("PASS: derivative identity D A^rho p_n^rho = (n+1) p_n^w")


def test_weak_kernels():
    from prandtl.errors import ConfigurationError, DomainError
    from prandtl.kernels import WEAK_KERNELS, get_weak_kernel

    assert set(WEAK_KERNELS) == {"abs_pow", "abs_pow_sgn", "log", "abs_pow_log"}
    k = get_weak_kernel("abs_pow_sgn", {"mu": -0.5})
    assert abs(k.evaluate(0.0, 0.25) + 2.0) < 1e-15, "sgn(x-y)|x-y|^mu at x-y = -1/4"
    assert abs(get_weak_kernel("abs_pow_log", {"mu": -0.5}).evaluate(1.0, 0.0)) == 0.0
    log_kernel = get_weak_kernel("log", {})
    assert log_kernel.mu == 0.0 and abs(log_kernel.evaluate(0.5, -0.5)) == 0.0
    assert abs(log_kernel.evaluate(0.0, 0.5) - math.log(0.5)) < 1e-15
    _expect(DomainError, lambda: k.evaluate(0.3, 0.3), "kernel must reject x = y")
    _expect(ConfigurationError, lambda: get_weak_kernel("abs_pow", {"mu": 0.5}), "mu must be negative")
    _expect(ConfigurationError, lambda: get_weak_kernel("abs_pow", {}), "mu is required")
    _expect(ConfigurationError, lambda: get_weak_kernel("cauchy", {}), "unknown kind")
    assert k.describe() == {"kind": "abs_pow_sgn", "mu": -0.5}
    print("PASS: weak kernel registry")


def test_moments_against_oracle():
    from prandtl import oracle
    from prandtl.kernels import get_weak_kernel
    from prandtl.kernels.moments import modified_moments
    from prandtl.quadrature.jacobi import cached_system

    ys = [-0.97, -0.7, 0.05, 0.85]
    for kind, mu, alpha in MOMENT_CASES:
        kernel = get_weak_kernel(kind, {"mu": mu})
        system = cached_system(alpha, 1.0 - alpha, 16)
        table = modified_moments(system, kernel, ys, 16)
        brute = oracle.brute_moments(system.exponents, kernel, ys, 16, degrees=range(8))
        err = float(np.max(np.abs(table.values[:, :8] - brute)))
        assert err <= 1e-8, f"{kind} alpha={alpha}: moments differ from oracle by {err:.2e}"
        assert table.m == 16 and len(table) == len(ys)
        assert not table.values.flags.writeable
    print("PASS: modified moments match the adaptive oracle")


def test_moments_symmetry_and_decay():
    from prandtl.kernels import get_weak_kernel
    from prandtl.kernels.moments import MomentOptions, modified_moments
    from prandtl.quadrature.jacobi import cached_system

    phi = cached_system(0.5, 0.5, 64)
    odd = modified_moments(phi, get_weak_kernel("abs_pow_sgn", {"mu": -0.5}), [0.0], 16)
    assert np.max(np.abs(odd.values[0, ::2])) < 1e-13, "odd kernel has zero even moments at y = 0"

    table = modified_moments(phi, get_weak_kernel("abs_pow", {"mu": -0.5}), [0.3], 64)
    c = np.abs(table.values[0])
    assert np.max(c[32:64]) <= np.max(c[8:16]), "moments should decay with the degree"

    threaded = modified_moments(phi, get_weak_kernel("log", {}), np.linspace(-0.9, 0.9, 9), 32,
                                MomentOptions(block_size=2, threads=4))
    serial = modified_moments(phi, get_weak_kernel("log", {}), np.linspace(-0.9, 0.9, 9), 32)
    gap = float(np.max(np.abs(threaded.values - serial.values)))
    assert gap <= 1e-14 * float(np.max(np.abs(serial.values))), "blocking and threads must not change values"
    print("PASS: moment symmetry, decay and blocking")


def test_moment_errors():
    from prandtl.errors import DomainError
    from prandtl.kernels import get_weak_kernel
    from prandtl.kernels.moments import modified_moments
    from prandtl.quadrature.jacobi import cached_system

    kernel = get_weak_kernel("log", {})
    system = cached_system(0.5, 0.5, 8)
    _expect(DomainError, lambda: modified_moments(system, kernel, [1.0], 8), "y = 1 is not interior")
    _expect(DomainError, lambda: modified_moments(system, kernel, [0.0], 0), "m must be positive")
    _expect(DomainError, lambda: modified_moments(system, kernel, [0.0], 10), "system too small")
    print("PASS: moment preconditions")


def test_kernel_blocks():
    from prandtl.errors import DomainError
    from prandtl.funcdsl import evaluate, parse
    from prandtl.kernels import get_weak_kernel
    from prandtl.kernels.blocks import SmoothKernel, h_block, k_block
    from prandtl.kernels.moments import modified_moments
    from prandtl.quadrature.jacobi import cached_rule, cached_system

    system, rule = cached_system(0.5, 0.5, 3), cached_rule(0.5, 0.5, 3)
    k = SmoothKernel.from_text("cos(x+y)/(x^2+y^2+20)^2")
    block = k_block(system, rule, k, [0.0])
    assert abs(block[0, 1] - 1.0 / (400.0 * math.pi)) < 1e-16, f"k_block at (0, 0) = {block[0, 1]}"

    system, rule = cached_system(0.25, 0.75, 8), cached_rule(0.25, 0.75, 8)
    xs = np.array([-0.5, 0.1, 0.7])
    block = k_block(system, rule, k, xs)
    expected = evaluate(parse("cos(x+y)/(x^2+y^2+20)^2"), rule.nodes[None, :], xs[:, None]) / math.pi
    assert block.shape == (3, 8) and np.max(np.abs(block - expected)) < 1e-17
    assert np.array_equal(k_block(system, rule, SmoothKernel.from_text(None), xs), np.zeros((3, 8)))

    assert np.array_equal(h_block(None, system, rule, rows=3), np.zeros((3, 8)))
    moments = modified_moments(system, get_weak_kernel("log", {}), xs, 8)
    h = h_block(moments, system, rule, rows=3)
    assert h.shape == (3, 8) and np.all(np.isfinite(h))
    short = modified_moments(system, get_weak_kernel("log", {}), xs, 4)
    _expect(DomainError, lambda: h_block(short, system, rule), "moment degree count must match the rule")
    _expect(DomainError, lambda: k_block(cached_system(0.5, 0.5, 8), rule, k, xs), "mismatched weights")
    print("PASS: kernel blocks")


def test_dominant_identity():
    from prandtl.models.problem import ProblemSpec
    from prandtl.solver.assembler import assemble, dominant_image, expected_dominant_image

    for alpha, gamma, delta in [(0.25, 0.125, 0.0), (0.5, 0.0, 0.0), (0.75, 0.0, 0.125)]:
        spec = ProblemSpec(label="dominant", alpha=alpha, gamma=gamma, delta=delta, g="1")
        system = assemble(spec, 12)
        assert system.method == "method1"
        for n in range(12):
            got = dominant_image(system, n)
            want = expected_dominant_image(system, n)
            err = float(np.max(np.abs(got - want)))
            assert err <= 1e-10 * float(np.max(np.abs(want))), f"alpha={alpha} n={n}: error {err:.2e}"
    print("PASS: discrete dominant operator maps p_n^rho to (n+1) p_n^w")


def test_assembly_right_hand_side():
    from prandtl.models.problem import ProblemSpec
    from prandtl.quadrature.jacobi import JacobiExponents, weight_value
    from prandtl.solver.assembler import assemble

    spec = ProblemSpec(label="rhs", alpha=0.25, gamma=0.125, g="abs(y)^(11/2)")
    system = assemble(spec, 16)
    xs = system.collocation_points
    expected = weight_value(JacobiExponents(0.625, 0.5), xs) * np.abs(xs) ** 5.5
    assert np.max(np.abs(system.rhs - expected)) < 1e-15
    assert not system.matrix.flags.writeable and not system.rhs.flags.writeable
    assert system.quadrature_nodes.size == 16
    print("PASS: right-hand side b_i = (u phi)(x_i) g(x_i)")


def test_sigma_method_diagonal():
    from prandtl.models.problem import ProblemSpec
    from prandtl.solver.assembler import assemble

    base = assemble(ProblemSpec(label="zero", alpha=0.5, sigma_phi="0", g="1"), 10)
    shifted = assemble(ProblemSpec(label="shift", alpha=0.5, sigma_phi="y^2+1", g="1"), 10)
    xs = shifted.collocation_points
    assert shifted.method == "method2"
    assert np.max(np.abs(shifted.matrix - base.matrix - np.diag(xs ** 2 + 1.0))) < 1e-13

    sigma = assemble(ProblemSpec(label="sigma", alpha=0.5, sigma="2", g="1"), 10)
    diag = np.diag(sigma.matrix - base.matrix)
    assert np.max(np.abs(diag - 2.0 * np.sqrt(1.0 - xs ** 2))) < 1e-13, "sigma enters as sigma*phi"
    print("PASS: sigma method adds diag((sigma phi)(x_i))")


def test_assembly_preconditions():
    from pydantic import ValidationError

    from prandtl.errors import ConfigurationError
    from prandtl.models.problem import ProblemSpec, WeakKernelConfig
    from prandtl.solver.assembler import assemble, assemble_method1, assemble_method2

    low_gamma = ProblemSpec(label="low-gamma", alpha=0.25, gamma=0.0, g="1")
    try:
        assemble(low_gamma, 8)
    except ConfigurationError as e:
        assert e.violations and "gamma" in e.violations[0], e.violations
    else:
        raise AssertionError("gamma below max(0, 1/4 - alpha/2) must be rejected")
    sigma = ProblemSpec(label="sigma", alpha=0.5, sigma="1", g="1")
    _expect(ConfigurationError, lambda: assemble_method1(sigma, 8), "method1 cannot take sigma")
    _expect(ConfigurationError, lambda: assemble_method2(low_gamma, 8), "method2 needs sigma")

    for bad in [dict(alpha=0.25, gamma=0.125, sigma="1", g="1"),
                dict(alpha=0.5, g="x+y"),
                dict(alpha=0.5, k="x+", g="1"),
                dict(alpha=1.0, g="1"),
                dict(alpha=0.5, sigma="1", sigma_phi="1", g="1"),
                dict(alpha=0.5, g="1", unknown=3)]:
        _expect(ValidationError, lambda: ProblemSpec(**bad), f"{bad} should not validate")
    _expect(ValidationError, lambda: WeakKernelConfig(kind="abs_pow"), "abs_pow needs mu")
    _expect(ValidationError, lambda: WeakKernelConfig(kind="log", mu=-0.5), "log takes no mu")
    _expect(ValidationError, lambda: WeakKernelConfig(kind="abs_pow", mu=-1.5), "mu in (-1, 0)")
    print("PASS: configuration errors surface before any numerics")


def test_problem_files_validate():
    from prandtl.models.presets import PRESETS, get_preset
    from prandtl.models.problem import ProblemSpec

    for name in ("example_4_1", "example_4_1_linear", "example_4_2", "example_4_3",
                 "wing_rectangular", "wing_elliptic"):
        spec = ProblemSpec.from_json_file(ROOT / "data" / f"{name}.json")
        again = ProblemSpec.model_validate_json(spec.to_json())
        assert again == spec, f"{name} does not survive a JSON round trip"
    for preset, name in [("4.1", "example_4_1"), ("4.1-linear", "example_4_1_linear"),
                         ("4.2", "example_4_2"), ("4.3", "example_4_3")]:
        from_file = ProblemSpec.from_json_file(ROOT / "data" / f"{name}.json")
        assert get_preset(preset).spec == from_file, f"data/{name}.json drifted from preset {preset}"
    for name in PRESETS:
        preset = get_preset(name)
        assert preset.spec.alpha in (0.25, 0.5)
    print("PASS: shipped problem files validate")


def test_wing_presets():
    from prandtl.errors import ConfigurationError
    from prandtl.models.presets import beta_from_mach, get_preset, wing_preset

    elliptic = wing_preset("elliptic", 10.0, 1.0, 0.1)
    amplitude = float(elliptic.exact(0.0))
    assert abs(amplitude - 4.0 / (1.0 + 20.0 / math.pi)) < 1e-15, f"C~(0) = {amplitude}"
    assert elliptic.method == "method2"
    rect = wing_preset("rectangular", 10.0, 1.0, 0.1)
    assert abs(float(rect.sigma_phi_values(0.0)) - 20.0 / math.pi) < 1e-14
    assert abs(float(rect.rhs(0.3)) - 4.0) < 1e-15
    assert abs(beta_from_mach(0.6) - 0.8) < 1e-15 and beta_from_mach(0.0) == 1.0
    _expect(ConfigurationError, lambda: wing_preset("delta", 10.0, 1.0, 0.1), "unknown shape")
    _expect(ConfigurationError, lambda: wing_preset("elliptic", -1.0, 1.0, 0.1), "b > 0")
    _expect(ConfigurationError, lambda: beta_from_mach(1.0), "subsonic only")
    _expect(ConfigurationError, lambda: get_preset("9.9"), "unknown preset")
    print("PASS: wing presets")


def test_solve_and_zero_boundary():
    from prandtl.errors import DomainError
    from prandtl.models.presets import smooth_kernel_problem
    from prandtl.solver.solve import evaluate_zeta, solve

    spec = smooth_kernel_problem()
    s = solve(spec, 16)
    assert s.method == "method2" and s.cond is not None and s.cond >= 1.0
    assert s.residual <= 1e-10 * max(s.rhs_norm, 1.0)
    ends = evaluate_zeta(s, np.array([-1.0, 1.0]))
    assert ends[0] == 0.0 and ends[1] == 0.0, f"zeta_m(+-1) = {ends}"
    mid = evaluate_zeta(s, 0.2)
    assert isinstance(mid, float) and math.isfinite(mid)
    assert abs(mid - math.sqrt(1.0 - 0.04) * s.f(0.2)) < 1e-14
    _expect(DomainError, lambda: solve(spec, 1), "m >= 2")
    _expect(DomainError, lambda: evaluate_zeta(s, 1.5), "outside [-1, 1]")
    print("PASS: solve and zeta(+-1) = 0")


def test_eoc_and_nu():
    from prandtl.errors import DomainError
    from prandtl.solver.study import eoc, nu_estimator

    assert abs(eoc(8e-3, 1e-3) - 3.0) < 1e-14
    assert abs(eoc(9.7163e-05, 5.3368e-06) - 4.18634) < 5e-5
    assert abs(nu_estimator(174.85, 349.82) - 1.00051) < 5e-5
    _expect(DomainError, lambda: eoc(0.0, 1e-3), "errors must be positive")
    _expect(DomainError, lambda: nu_estimator(0.5, 2.0), "cond >= 1")
    print("PASS: EOC and nu estimators")


def test_convergence_report_format():
    from prandtl.models.presets import smooth_kernel_problem
    from prandtl.solver.study import CSV_HEADER, ERROR_GRID, convergence_study

    assert ERROR_GRID.size == 201 and ERROR_GRID[0] == -1.0 and ERROR_GRID[-1] == 1.0
    report = convergence_study(smooth_kernel_problem(), [4, 8, 16, 24], reference=64)
    assert [r.m for r in report.rows] == [4, 8, 16, 24]
    assert report.rows[0].eoc is None and report.rows[0].nu is None, "no EOC on the first row"
    assert report.row(8).eoc is not None and report.row(16).nu is not None
    assert report.row(24).eoc is None, "EOC only across an exact doubling"
    lines = report.to_csv().splitlines()
    assert lines[0] == CSV_HEADER == "m,cond_inf,err,EOC,nu"
    first = lines[1].split(",")
    assert first[0] == "4" and first[3] == "" and first[4] == ""
    assert "e" in first[1] and len(first[1].split("e")[0]) == 6, f"%.4e formatting, got {first[1]}"
    frame = report.to_frame()
    assert list(frame.columns) == ["m", "cond_inf", "err", "EOC", "nu"] and len(frame) == 4
    window = report.window(8, 24)
    assert [r.m for r in window.rows] == [8, 16, 24] and window.reference == "zeta_64"
    assert window.row(8).eoc is None and window.row(8).nu is None, "8 -> 4 doubling starts outside"
    assert window.row(16).eoc == report.row(16).eoc and window.mean_eoc == report.row(16).eoc
    assert window.mean_nu == report.row(16).nu
    assert report.reference == "zeta_64"
    print("PASS: convergence report CSV")


def test_convergence_study_preconditions():
    from prandtl.errors import ConfigurationError
    from prandtl.models.presets import smooth_kernel_problem
    from prandtl.solver.study import convergence_study

    spec = smooth_kernel_problem()
    for m_list, reference in [([], None), ([8, 4], None), ([1, 2], None), ([4, 8], "exact")]:
        _expect(ConfigurationError, lambda: convergence_study(spec, m_list, reference=reference),
                f"m_list={m_list} reference={reference} should be rejected")
    print("PASS: convergence study preconditions")


def test_config_and_threads():
    from prandtl.config import load_config, moment_options, residual_factor, resolve_threads
    from prandtl.errors import ConfigurationError

    cfg = load_config()
    assert cfg["reference"]["m_ref"] == 1024 and "grid_points" not in cfg["reference"]
    assert residual_factor(cfg) == 1e-10
    _expect(ConfigurationError, lambda: residual_factor({"solver": {"residual_factor": 0}}),
            "residual factor must be positive")
    opts = moment_options(cfg, 3)
    assert opts.threads == 3 and opts.tolerance == 1e-15
    saved = os.environ.get("PRANDTL_THREADS")
    try:
        os.environ["PRANDTL_THREADS"] = "2"
        assert resolve_threads(cfg) == 2
        os.environ["PRANDTL_THREADS"] = "0"
        _expect(ConfigurationError, lambda: resolve_threads(cfg), "thread count >= 1")
        os.environ["PRANDTL_THREADS"] = ""
        assert resolve_threads({"concurrency": {"threads": 5}}) == 5
        assert resolve_threads({"concurrency": {"threads": None}}) >= 1
    finally:
        if saved is None:
            os.environ.pop("PRANDTL_THREADS", None)
        else:
            os.environ["PRANDTL_THREADS"] = saved
    print("PASS: config defaults and PRANDTL_THREADS")


def test_trace_written():
    from prandtl.logging.logger import log_report, log_solution, log_trace
    from prandtl.models.presets import smooth_kernel_problem
    from prandtl.solver.study import ConvergenceReport, StudyRow

    with tempfile.TemporaryDirectory() as tmp:
        for m in (8, 16):
            log_trace("traces.jsonl", str(Path(tmp) / "nested"), "2026-01-01T00:00:00+00:00", "demo",
                      "method1", m, {"alpha": 0.25, "gamma": 0.125, "delta": 0.0}, 4.9, 1e-16, None, None)
        lines = (Path(tmp) / "nested" / "traces.jsonl").read_text(encoding="utf-8").splitlines()

        spec = smooth_kernel_problem()
        report = ConvergenceReport(label=spec.label, reference="zeta_64",
                                   rows=[StudyRow(m=8, cond=4.95, err=1e-4),
                                         StudyRow(m=16, cond=9.13, err=5e-6, eoc=4.3, nu=0.88)])
        log_report(tmp, "study.jsonl", spec, report)
        log_solution(tmp, "study.jsonl", spec.label, "method2", 32, {"alpha": 0.5}, 17.5, residual=1e-17)
        study = [json.loads(line) for line in
                 (Path(tmp) / "study.jsonl").read_text(encoding="utf-8").splitlines()]
    assert len(lines) == 2
    record = json.loads(lines[-1])
    for key in ("timestamp", "label", "method", "m", "exponents", "cond_inf", "residual", "error", "reference"):
        assert key in record, f"trace record missing {key}"
    assert record["m"] == 16 and record["error"] is None

    assert [r["m"] for r in study] == [8, 16, 32]
    assert study[0]["timestamp"] == study[1]["timestamp"], "one timestamp per study"
    assert study[1]["method"] == "method2" and study[1]["reference"] == "zeta_64" and study[1]["error"] == 5e-6
    assert study[1]["exponents"] == {"alpha": 0.5, "gamma": 0.0, "delta": 0.0}
    assert study[2]["residual"] == 1e-17 and study[2]["error"] is None and "T" in study[2]["timestamp"]
    print("PASS: JSONL trace records")


def test_oracle_algebraic_singularities():
    from prandtl import oracle
    from prandtl.kernels import get_weak_kernel
    from prandtl.quadrature.jacobi import JacobiExponents

    value = oracle.adaptive_integral(lambda s: s ** (-1.0 / 3.0), 0.0, 1.0, singular_points=(0.0,))
    assert abs(value - 1.5) < 1e-10, f"int_0^1 s^(-1/3) = {value}"
    # tol 1e-10 keeps the panels next to 0.3 wider than a rounding unit
    value = oracle.adaptive_integral(lambda x: np.abs(x - 0.3) ** (-1.0 / 3.0), -1.0, 1.0,
                                     singular_points=(-1.0, 0.3, 1.0), tol=1e-10)
    expected = 1.5 * (1.3 ** (2.0 / 3.0) + 0.7 ** (2.0 / 3.0))
    assert abs(value - expected) < 1e-9, f"int |x-0.3|^(-1/3) = {value}, expected {expected}"

    rho = JacobiExponents(0.25, 0.75)
    kernel = get_weak_kernel("abs_pow", {"mu": -1.0 / 3.0})
    for y, j in [(-0.97, 0), (0.4, 3), (0.85, 6)]:
        weighted = oracle.moment_oracle(rho, kernel, y, j)
        plain = oracle.adaptive_integral(
            lambda x: np.abs(x - y) ** kernel.mu * oracle.orthonormal_jacobi(j, 0.25, 0.75, x)
            * oracle.jacobi_weight(rho, x),
            -1.0, 1.0, singular_points=(-1.0, y, 1.0), tol=1e-10)
        assert abs(weighted - plain) < 1e-9, f"y={y} j={j}: {weighted} vs {plain}"
    print("PASS: oracle integrates algebraic singularities at endpoints and interior points")


def test_node_interlacing():
    from prandtl.quadrature.jacobi import cached_rule

    for alpha, beta in [(0.25, 0.75), (0.75, 0.25), (0.5, 0.5), (-0.5, -0.5)]:
        for m in (3, 8, 17):
            short = cached_rule(alpha, beta, m).nodes
            long = cached_rule(alpha, beta, m + 1).nodes
            assert np.all(long[:-1] < short) and np.all(short < long[1:]), \
                f"zeros of p_{m} and p_{m + 1} do not interlace for ({alpha}, {beta})"
    print("PASS: Gauss-Jacobi nodes interlace")


def test_basis_partition_of_unity():
    from prandtl.quadrature.lagrange import rho_basis, w_basis

    xs = np.random.default_rng(7).uniform(-0.999, 0.999, 50)
    for build in (w_basis, rho_basis):
        for m in (5, 16):
            basis = build(0.25, 0.125, 0.0, m)
            total = basis.psi_matrix(xs) @ basis.modulation
            err = float(np.max(np.abs(total - 1.0)))
            assert err <= 1e-11, f"{build.__name__} m={m}: sum psi_i d_i deviates by {err:.2e}"
    print("PASS: sum_i psi_i d_i = 1")


def test_interpolant_integrates_like_gauss():
    from scipy import integrate

    from prandtl.quadrature.lagrange import interpolate_rho, rho_basis

    for alpha in (0.25, 0.5, 0.75):
        basis = rho_basis(alpha, 0.0, 0.0, 10)
        samples = np.exp(basis.nodes)
        value, _ = integrate.quad(lambda x: interpolate_rho(basis, samples, x), -1.0, 1.0,
                                  weight="alg", wvar=(1.0 - alpha, alpha), epsabs=1e-14, epsrel=1e-13)
        expected = basis.rule.integrate(samples)
        assert abs(value - expected) <= 1e-11 * abs(expected), f"alpha={alpha}: {value} vs {expected}"
    print("PASS: int L_m^rho(G) rho = sum_k lambda_k G(t_k)")


def test_log_block_closed_form():
    from prandtl.kernels import get_weak_kernel
    from prandtl.kernels.blocks import h_block
    from prandtl.kernels.moments import modified_moments
    from prandtl.quadrature.jacobi import cached_rule, cached_system

    system, rule = cached_system(0.5, 0.5, 8), cached_rule(0.5, 0.5, 8)
    ys = np.array([-0.9, -0.3, 0.2, 0.75])
    block = h_block(modified_moments(system, get_weak_kernel("log", {}), ys, 8), system, rule, rows=4)
    got = block @ (3.0 * rule.christoffel)
    expected = 3.0 * (ys ** 2 / 2.0 - 0.25 - math.log(2.0) / 2.0)
    assert np.max(np.abs(got - expected)) < 1e-9, f"h_block on f = 3: {got} vs {expected}"

    mirrored = np.array([-0.7, -0.2, 0.2, 0.7])
    block = h_block(modified_moments(system, get_weak_kernel("log", {}), mirrored, 8), system, rule, rows=4)
    even = block @ (rule.christoffel * (1.0 + rule.nodes ** 2))
    assert np.max(np.abs(even - even[::-1])) < 1e-11, f"even f gives an uneven image: {even}"
    print("PASS: log block against its closed form and reflection symmetry")


def test_constant_kernel_exact():
    from prandtl import oracle
    from prandtl.models.problem import ProblemSpec
    from prandtl.solver.assembler import assemble

    plain = assemble(ProblemSpec(label="plain", alpha=0.25, gamma=0.125, g="1"), 12)
    with_k = assemble(ProblemSpec(label="k=1", alpha=0.25, gamma=0.125, k="1", g="1"), 12)
    got = (with_k.matrix - plain.matrix) @ with_k.t_basis.modulation
    mu0 = oracle.monomial_moments(0.25, 0.75, 0)[0]
    expected = with_k.x_basis.modulation * mu0 / math.pi
    assert np.max(np.abs(got - expected)) <= 1e-11 * np.max(np.abs(expected)), "k = 1 is not integrated exactly"
    print("PASS: smooth kernel k = 1 integrated exactly")


def test_zero_sigma_reduces_to_method1():
    from prandtl.models.problem import ProblemSpec
    from prandtl.solver.assembler import assemble_method1, assemble_method2

    for k in (None, "cos(x+y)/(x^2+y^2+20)^2"):
        first = assemble_method1(ProblemSpec(label="m1", alpha=0.5, k=k, g="y^2"), 10)
        second = assemble_method2(ProblemSpec(label="m2", alpha=0.5, sigma="0", k=k, g="y^2"), 10)
        assert second.method == "method2"
        assert np.array_equal(first.matrix, second.matrix) and np.array_equal(first.rhs, second.rhs)
    print("PASS: sigma = 0 gives the method1 system")


def test_log_kernel_solution_is_even():
    from prandtl.models.presets import log_kernel_problem
    from prandtl.solver.solve import evaluate_zeta, solve
    from prandtl.solver.study import ERROR_GRID

    zeta = evaluate_zeta(solve(log_kernel_problem(), 16, with_cond=False), ERROR_GRID)
    assert np.max(np.abs(zeta - zeta[::-1])) < 1e-12, "zeta_m(y) != zeta_m(-y) for an even problem"
    print("PASS: even problem gives an even zeta_m")


def test_residual_bound_every_preset():
    from prandtl.models.presets import PRESETS, get_preset
    from prandtl.solver.solve import solve

    for name in PRESETS:
        spec = get_preset(name).spec
        for m in (8, 64, 512):
            s = solve(spec, m, with_cond=False)
            assert s.residual <= 1e-10 * s.rhs_norm, \
                f"{name} m={m}: residual {s.residual:.3e} vs |b| {s.rhs_norm:.3e}"
    print("PASS: residual <= 1e-10 |b| up to m = 512")



def main():
    test_oracle_closed_forms()
    test_oracle_principal_value()
    test_oracle_algebraic_singularities()
    test_spectral_identity()
    test_node_interlacing()
    test_basis_partition_of_unity()
    test_interpolant_integrates_like_gauss()
    test_weak_kernels()
    test_moments_against_oracle()
    test_moments_symmetry_and_decay()
    test_moment_errors()
    test_kernel_blocks()
    test_log_block_closed_form()
    test_constant_kernel_exact()
    test_dominant_identity()
    test_assembly_right_hand_side()
    test_sigma_method_diagonal()
    test_zero_sigma_reduces_to_method1()
    test_assembly_preconditions()
    test_problem_files_validate()
    test_wing_presets()
    test_solve_and_zero_boundary()
    test_log_kernel_solution_is_even()
    test_residual_bound_every_preset()
    test_eoc_and_nu()
    test_convergence_report_format()
    test_convergence_study_preconditions()
    test_config_and_threads()
    test_trace_written()
    print("All operator checks passed.")


if __name__ == "__main__":
    main()
