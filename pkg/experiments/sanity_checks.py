"""
Sanity checks for the numerical building blocks:
1. Function mini-language: precedence, associativity, domain and syntax errors.
2. Jacobi recurrences and Gauss rules against closed forms and scipy.
3. Weighted Lagrange bases: cardinality and interpolation.
4. Dense LU and the infinity-norm condition number.
"""

import math
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))


def test_funcdsl_precedence():
    from prandtl.funcdsl import evaluate, parse

    assert evaluate(parse("2^3^2")) == 512.0, "^ must be right associative"
    assert evaluate(parse("-2^2")) == -4.0, "unary minus binds looser than ^"
    assert evaluate(parse("2^-1")) == 0.5, "exponent may start with unary minus"
    assert evaluate(parse("1 + 2*3 - 4/2")) == 5.0
    assert evaluate(parse("(1+2)*3")) == 9.0
    assert evaluate(parse("1.5e1 + .5")) == 15.5
    print("PASS: funcdsl precedence and associativity")


def test_funcdsl_values():
    from prandtl.funcdsl import evaluate, parse

    k = parse("cos(x+y)/(x^2+y^2+20)^2")
    assert abs(evaluate(k, 0.0, 0.0) - 1.0 / 400.0) < 1e-16, "k(0, 0) should be 1/400"
    assert evaluate(parse("sgn(y)"), y=0.0) == 0.0, "sgn(0) is 0"
    assert evaluate(parse("sgn(y)"), y=-3.0) == -1.0
    value = evaluate(parse("abs(y)^(11/2)"), y=0.5)
    assert abs(value - 0.5 ** 5.5) < 1e-16, f"|y|^(11/2) at 0.5 gave {value}"
    assert abs(evaluate(parse("pi")) - math.pi) < 1e-16
    assert abs(evaluate(parse("exp(log(3))")) - 3.0) < 1e-14
    print("PASS: funcdsl values")


def test_funcdsl_vectorised():
    from prandtl.funcdsl import evaluate, parse

    out = evaluate(parse("x*y + 1"), x=np.array([1.0, 2.0]), y=3.0)
    assert isinstance(out, np.ndarray) and out.shape == (2,)
    assert np.array_equal(out, [4.0, 7.0]), f"got {out}"
    grid = evaluate(parse("x - y"), x=np.array([[0.0, 1.0]]), y=np.array([[0.0], [1.0]]))
    assert grid.shape == (2, 2)
    assert np.array_equal(grid, [[0.0, 1.0], [-1.0, 0.0]])
    const = evaluate(parse("2"), y=np.zeros(3))
    assert const.shape == (3,), "constants broadcast to the argument shape"
    print("PASS: funcdsl broadcasts over numpy arrays")


def test_funcdsl_domain_errors():
    from prandtl.errors import DomainError
    from prandtl.funcdsl import evaluate, parse

    for text, y in [("log(y)", 0.0), ("log(y)", -1.0), ("sqrt(y)", -0.5), ("1/y", 0.0),
                    ("y^(1/3)", -8.0), ("y^-1", 0.0)]:
        try:
            evaluate(parse(text), y=y)
        except DomainError as e:
            assert e.subexpression, f"{text}: domain error should name the sub-expression"
        else:
            raise AssertionError(f"{text} at y={y} should raise DomainError")
    assert evaluate(parse("y^3"), y=-2.0) == -8.0, "integer powers of negatives are fine"
    print("PASS: funcdsl domain errors")


def test_funcdsl_syntax_errors():
    from prandtl.errors import FuncSyntaxError
    from prandtl.funcdsl import parse

    cases = {"1 + ": 4, "foo(x)": 0, "2 * $": 4, "(1+2": 4, "": 0, "sin x": 4, "1 2": 2}
    for text, offset in cases.items():
        try:
            parse(text)
        except FuncSyntaxError as e:
            assert e.offset == offset, f"{text!r}: offset {e.offset}, expected {offset}"
        else:
            raise AssertionError(f"{text!r} should not parse")
    print("PASS: funcdsl syntax errors carry byte offsets")


def test_funcdsl_pretty_reparses():
    from prandtl.funcdsl import parse, pretty, variables

    for text in ["2^3^2", "-x^2 + y/3", "cos(x+y)/(x^2+y^2+20)^2", "abs(y+3/10)^(7/2) + y*sin(y)",
                 "2^-1e-5", "sgn(x-y)*abs(x-y)^0.25", "2*1e999", "y - 1e999"]:
        tree = parse(text)
        assert parse(pretty(tree)) == tree, f"pretty({text!r}) = {pretty(tree)!r} does not reparse"
    assert pretty(parse("1e999")) == "1e999"
    assert variables(parse("cos(x+y)")) == {"x", "y"}
    assert variables(parse("y^2 + pi")) == {"y"}
    assert parse("y+1") is parse("y+1"), "parse results are cached"
    print("PASS: funcdsl pretty printer")


def test_jacobi_chebyshev_second_kind():
    from prandtl.quadrature.jacobi import cached_system, eval_poly

    sys_phi = cached_system(0.5, 0.5, 20)
    scale = math.sqrt(2.0 / math.pi)
    for n in range(0, 12):
        for theta in (math.pi / 4, math.pi / 3, 1.1):
            expected = scale * math.sin((n + 1) * theta) / math.sin(theta)
            got = eval_poly(sys_phi, n, math.cos(theta))
            assert abs(got - expected) < 1e-13, f"p_{n}(cos {theta}) = {got}, expected {expected}"
    assert abs(eval_poly(sys_phi, 3, math.cos(math.pi / 3)) + scale) < 1e-14
    print("PASS: orthonormal Jacobi for sqrt(1-x^2) is sqrt(2/pi) U_n")


def test_jacobi_against_scipy():
    from prandtl import oracle
    from prandtl.quadrature.jacobi import cached_system, eval_all

    xs = np.linspace(-0.99, 0.99, 37)
    for alpha, beta in [(0.25, 0.75), (0.75, 0.25), (0.5, 0.5), (0.625, 0.0), (-0.5, 0.3)]:
        table = eval_all(cached_system(alpha, beta, 20), 20, xs)
        for n in range(21):
            ref = oracle.orthonormal_jacobi(n, alpha, beta, xs)
            err = float(np.max(np.abs(table[:, n] - ref)))
            assert err <= 1e-11 * max(1.0, float(np.max(np.abs(ref)))), \
                f"p_{n} for ({alpha}, {beta}) differs from scipy by {err:.2e}"
        ones = eval_all(cached_system(alpha, beta, 20), 20, np.array([1.0]))[0]
        assert np.all(ones > 0.0), f"p_n(1) must be positive for ({alpha}, {beta})"
    print("PASS: orthonormal Jacobi matches scipy.special.eval_jacobi")


def test_gauss_chebyshev_nodes():
    from prandtl.quadrature.jacobi import cached_rule

    rule = cached_rule(0.5, 0.5, 4)
    k = np.arange(1, 5)
    nodes = np.sort(np.cos(k * math.pi / 5))
    weights = (math.pi / 5) * np.sin(k * math.pi / 5) ** 2
    order = np.argsort(np.cos(k * math.pi / 5))
    assert np.max(np.abs(rule.nodes - nodes)) < 1e-14, f"nodes {rule.nodes}"
    assert np.max(np.abs(rule.christoffel - weights[order])) < 1e-14, f"weights {rule.christoffel}"
    print("PASS: 4-point Gauss rule for sqrt(1-x^2)")


def test_gauss_exactness():
    from prandtl import oracle
    from prandtl.quadrature.jacobi import cached_rule, cached_system

    for alpha, beta in [(0.25, 0.75), (0.75, 0.25), (0.5, 0.5), (0.625, 0.125), (0.0, -0.3333333333333333)]:
        for m in (1, 2, 5, 8, 16, 32, 64):
            rule = cached_rule(alpha, beta, m)
            exact = oracle.monomial_moments(alpha, beta, 2 * m - 1)
            assert abs(np.sum(rule.christoffel) - cached_system(alpha, beta, m).mu0) <= 1e-12 * exact[0]
            for d in range(2 * m):
                got = rule.integrate(rule.nodes ** d)
                assert abs(got - exact[d]) <= 1e-12 * max(abs(exact[d]), exact[0] * 1e-3), \
                    f"({alpha}, {beta}) m={m}: x^{d} gave {got}, expected {exact[d]}"
            assert np.all(np.diff(rule.nodes) > 0.0) and np.all(np.abs(rule.nodes) < 1.0)
    print("PASS: Gauss-Jacobi rules exact to degree 2m-1")


def test_gauss_large_and_orthonormality():
    from prandtl.quadrature.jacobi import cached_rule, cached_system, eval_all

    for alpha in (0.25, 0.5, 0.75):
        m = 1024
        rule = cached_rule(alpha, 1.0 - alpha, m)
        assert rule.nodes.size == m and np.all(rule.christoffel > 0.0)
        table = eval_all(cached_system(alpha, 1.0 - alpha, m), 63, rule.nodes)
        gram = table.T @ (rule.christoffel[:, None] * table)
        err = float(np.max(np.abs(gram - np.eye(64))))
        assert err < 1e-12, f"discrete orthonormality off by {err:.2e} for alpha={alpha}"
    print("PASS: 1024-point rules are discretely orthonormal")


def test_jacobi_domain_errors():
    from prandtl.errors import ConfigurationError, DomainError
    from prandtl.quadrature.jacobi import (
        JacobiExponents,
        MAX_NODES,
        cached_system,
        eval_poly,
        gauss_rule,
        weight_value,
    )

    for call in (lambda: weight_value(JacobiExponents(0.5, 0.5), 1.5),
                 lambda: weight_value(JacobiExponents(-0.5, 0.5), 1.0),
                 lambda: gauss_rule(cached_system(0.5, 0.5, 8), 0),
                 lambda: gauss_rule(cached_system(0.5, 0.5, 8), 9),
                 lambda: gauss_rule(cached_system(0.5, 0.5, 8), MAX_NODES + 1),
                 lambda: eval_poly(cached_system(0.5, 0.5, 8), 9, 0.0)):
        try:
            call()
        except DomainError:
            continue
        raise AssertionError("expected DomainError")
    try:
        JacobiExponents(-1.0, 0.0)
    except ConfigurationError:
        pass
    else:
        raise AssertionError("exponent -1 must be rejected")
    assert weight_value(JacobiExponents(0.5, 0.5), 1.0) == 0.0
    print("PASS: Jacobi domain errors")


def test_psi_cardinality():
    from prandtl.quadrature.lagrange import psi_eval, rho_basis, w_basis

    for alpha, gamma, delta in [(0.25, 0.125, 0.0), (0.5, 0.0, 0.0), (0.75, 0.0, 0.125)]:
        for build in (w_basis, rho_basis):
            basis = build(alpha, gamma, delta, 16)
            # nudge off the nodes so the cardinal shortcut is not taken
            probe = np.nextafter(basis.nodes, 2.0)
            psi = basis.psi_matrix(probe) * basis.modulation[None, :]
            err = float(np.max(np.abs(psi - np.eye(16))))
            assert err < 1e-11, f"{basis.kind.value} basis not cardinal, error {err:.2e}"
            exact = basis.psi_matrix(basis.nodes)
            assert np.array_equal(exact, np.diag(1.0 / basis.modulation))
            assert abs(psi_eval(basis, 3, float(basis.nodes[3])) - 1.0 / basis.modulation[3]) < 1e-15
    print("PASS: psi bases are cardinal on their nodes")


def test_interpolation_matches_barycentric():
    from scipy.interpolate import BarycentricInterpolator

    from prandtl.quadrature.lagrange import interpolate_rho, interpolate_w, rho_basis, w_basis

    xs = np.linspace(-0.95, 0.95, 41)
    w = w_basis(0.25, 0.125, 0.0, 12)
    cubic = lambda x: x ** 3 - 2.0 * x + 0.5
    got = interpolate_w(w, cubic(w.nodes), xs)
    assert np.max(np.abs(got - cubic(xs))) < 1e-12, "L_m^w reproduces polynomials of degree < m"

    rho = rho_basis(0.25, 0.125, 0.0, 20)
    ref = BarycentricInterpolator(rho.nodes, np.exp(rho.nodes))(xs)
    got = interpolate_rho(rho, np.exp(rho.nodes), xs)
    assert np.max(np.abs(got - ref)) < 1e-11, "L_m^rho differs from barycentric interpolation"
    print("PASS: interpolation agrees with scipy barycentric form")


def test_validate_exponents():
    from prandtl.quadrature.lagrange import ValidationMode, validate_exponents

    assert validate_exponents(0.25, 0.125, 0.0, "method1").ok
    assert validate_exponents(0.5, 0.0, 0.0, ValidationMode.METHOD1).ok
    bad = validate_exponents(0.25, 0.1, 0.0, "method1")
    assert not bad.ok and any("gamma" in v for v in bad.violations), bad.violations
    assert not validate_exponents(0.25, 0.125, 0.125, "method1").ok, "delta < alpha/2"
    assert validate_exponents(0.5, 0.0, 0.0, "method2").ok
    assert not validate_exponents(0.5, 0.25, 0.0, "method2").ok
    assert not validate_exponents(0.25, 0.0, 0.0, "method2").ok, "method2 needs alpha = 1/2"
    assert validate_exponents(0.25, 1.0, 0.5, "interpolation").ok
    assert not validate_exponents(0.25, 1.2, 0.0, "interpolation").ok
    assert validate_exponents(0.5, 0.4, 0.4, "christoffel").ok
    assert not validate_exponents(0.5, 0.5, 0.0, "christoffel").ok
    assert not validate_exponents(1.0, 0.0, 0.0).ok
    print("PASS: exponent validation per method")


def test_cond_inf():
    from prandtl.utils.linalg import cond_inf

    assert abs(cond_inf(np.diag([1.0, 10.0])) - 10.0) < 1e-14
    tri = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]])
    inverse = np.array([[3.0, -2.0, 1.0], [-2.0, 4.0, -2.0], [1.0, -2.0, 3.0]]) / 4.0
    expected = np.linalg.norm(tri, np.inf) * np.linalg.norm(inverse, np.inf)
    assert abs(expected - 8.0) < 1e-15
    assert abs(cond_inf(tri) - expected) < 1e-13, f"cond_inf(tri) = {cond_inf(tri)}"
    rng = np.random.default_rng(7)
    a = rng.standard_normal((12, 12))
    assert cond_inf(a) >= 1.0
    assert abs(cond_inf(3.5 * a) - cond_inf(a)) <= 1e-10 * cond_inf(a), "cond_inf is scale invariant"
    assert cond_inf(np.array([[1.0, 2.0], [2.0, 4.0]])) == math.inf
    print("PASS: infinity-norm condition number")


def test_lu_solve():
    from prandtl.errors import DomainError, SingularSystemError
    from prandtl.utils.linalg import lu_solve, residual_inf

    rng = np.random.default_rng(3)
    a = rng.standard_normal((30, 30)) + 30.0 * np.eye(30)
    x_true = rng.standard_normal(30)
    b = a @ x_true
    for refine in (False, True):
        x = lu_solve(a, b, refine=refine)
        assert np.max(np.abs(x - x_true)) < 1e-13
        assert residual_inf(a, x, b) < 1e-12
    try:
        lu_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones(2))
    except SingularSystemError:
        pass
    else:
        raise AssertionError("singular matrix should raise SingularSystemError")
    try:
        lu_solve(np.ones((2, 3)), np.ones(2))
    except DomainError:
        pass
    else:
        raise AssertionError("non-square matrix should raise DomainError")
    print("PASS: dense LU with partial pivoting")


def main():
    test_funcdsl_precedence()
    test_funcdsl_values()
    test_funcdsl_vectorised()
    test_funcdsl_domain_errors()
    test_funcdsl_syntax_errors()
    test_funcdsl_pretty_reparses()
    test_jacobi_chebyshev_second_kind()
    test_jacobi_against_scipy()
    test_gauss_chebyshev_nodes()
    test_gauss_exactness()
    test_gauss_large_and_orthonormality()
    test_jacobi_domain_errors()
    test_psi_cardinality()
    test_interpolation_matches_barycentric()
    test_validate_exponents()
    test_cond_inf()
    test_lu_solve()
    print("All sanity checks passed.")


if __name__ == "__main__":
    main()
