# test_rde.py
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from ck_hopf import char_product
from forest_algebra import bullet, graft
from rde import (
    BranchedRoughPath,
    ControlOmega,
    defect_scan,
    is_geometric,
    lift_bv,
    lipschitz_lhs,
    normalize_problem,
    p_variation,
    perturb_top,
    rho_distance,
    solve_euler,
    solve_geodesic,
    truncation_level,
)
from realization import PLPath, random_pl_path
from vector_fields import PolyVectorField, ode_solve, random_poly_field

y1 = sympy.Symbol("y1")
WIDE = [(-10.0, 10.0)]


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def diagonal() -> PLPath:
    return PLPath([Fraction(0), Fraction(1)], [[Fraction(0), Fraction(0)], [Fraction(1), Fraction(1)]])


def monotone_curve(points: int) -> PLPath:
    t = np.linspace(0.0, 1.0, points)
    return PLPath(list(t), [[v] for v in t + 0.1 * np.sin(2 * np.pi * t)])


def linear_field() -> PolyVectorField:
    return PolyVectorField(1, 1, [sympy.Matrix([y1])], WIDE)


def test_truncation_level():
    assert truncation_level(1.0) == 1
    assert truncation_level(2.5) == 2
    with pytest.raises(ValueError):
        truncation_level(0.5)


def test_lift_of_diagonal():
    X = lift_bv(diagonal(), 2.5)
    assert X.exact
    inc = X.increment(0, 1)
    assert inc.value(bullet(1)) == 1
    assert inc.value(graft((bullet(2),), 1)) == Fraction(1, 2)
    cherry = graft((bullet(1), bullet(1)), 1)
    assert lift_bv(diagonal(), 3.5).increment(0, 1).value(cherry) == Fraction(1, 3)


def test_lift_is_independent_of_extra_breakpoints():
    x = diagonal()
    X = lift_bv(x, 3.5)
    Y = lift_bv(x.refine([Fraction(1, 3), Fraction(1, 2)]), 3.5)
    assert Y.increment(0, Y.n_points - 1) == X.increment(0, 1)


def test_lift_satisfies_chen():
    X = lift_bv(random_pl_path(rng_for(1), 2, 3, exact=True), 2.5)
    assert X.increment(0, 3) == char_product(X.increment(0, 1), X.increment(1, 3))


def test_rough_path_json_round_trip():
    X = lift_bv(random_pl_path(rng_for(2), 2, 3, exact=True), 2.5)
    Y = BranchedRoughPath.from_json(X.to_json())
    assert Y.grid == X.grid
    assert np.array_equal(Y.values, X.values)


def test_perturb_top():
    X = lift_bv(diagonal(), 2.5)
    tau = graft((bullet(2),), 1)
    assert np.array_equal(perturb_top(X, tau, lambda t: 0).values, X.values)
    assert is_geometric(X)
    Y = perturb_top(X, tau, lambda t: Fraction(1, 4) * t)
    assert Y.increment(0, 1).value(tau) == Fraction(3, 4)
    assert not is_geometric(Y)
    with pytest.raises(ValueError):
        perturb_top(X, bullet(1), lambda t: t)


def test_p_variation_of_two_points_is_the_norm():
    X = lift_bv(random_pl_path(rng_for(3), 2, 1), 2.5)
    expected = float(X.basis.norm(X.increment_array(0, 1)))
    assert p_variation(X, 2.5) == pytest.approx(expected)


def test_p_variation_of_zigzag():
    x = PLPath([0.0, 1.0, 2.0], [[0.0], [1.0], [0.0]])
    X = lift_bv(x, 1.0)
    assert p_variation(X, 1.0) == pytest.approx(2.0)
    assert p_variation(X, 1.0, 0, 1) == pytest.approx(1.0)


def test_control_is_super_additive():
    rng = rng_for(4)
    X1 = lift_bv(random_pl_path(rng, 2, 6), 2.5)
    X2 = lift_bv(random_pl_path(rng, 2, 6), 2.5)
    omega = ControlOmega([X1, X2])
    assert omega.check_super_additivity() == []
    assert omega(3, 3) == 0.0
    assert omega.total > 0


def test_control_needs_a_shared_grid():
    X1 = lift_bv(random_pl_path(rng_for(5), 2, 3), 2.5)
    X2 = lift_bv(random_pl_path(rng_for(5), 2, 4), 2.5)
    with pytest.raises(ValueError):
        ControlOmega([X1, X2])


def test_rho_distance():
    X = lift_bv(random_pl_path(rng_for(6), 2, 6), 2.5)
    assert rho_distance(X, X) == 0.0
    Y = perturb_top(X, graft((bullet(2),), 1), lambda t: 0.01 * t)
    forward = rho_distance(X, Y)
    assert 0 < forward < math.inf
    assert rho_distance(Y, X) == forward


def test_euler_with_constant_fields_is_exact():
    x = PLPath([Fraction(0), Fraction(1), Fraction(2)],
               [[Fraction(0), Fraction(0)], [Fraction(1, 2), Fraction(1, 3)], [Fraction(1), Fraction(-1)]])
    f = PolyVectorField(2, 2, [sympy.Matrix([1, 2]), sympy.Matrix([-1, 3])], [(-10.0, 10.0)] * 2)
    X = lift_bv(x, 2.5)
    report = solve_euler(X, f, [0, 0], exact=True)
    assert list(report.final) == [Fraction(2), Fraction(-1)]
    floating = solve_euler(X.to_float(), f, [0.0, 0.0])
    assert floating.final == pytest.approx([2.0, -1.0])


def test_exact_euler_step_by_hand():
    f = PolyVectorField(1, 1, [sympy.Matrix([y1 ** 2])], WIDE)
    x = PLPath([Fraction(0), Fraction(1)], [[Fraction(0)], [Fraction(1, 3)]])
    report = solve_euler(lift_bv(x, 2.5), f, [Fraction(1, 2)], exact=True)
    assert report.final[0] == Fraction(43, 72)


def test_exact_euler_needs_exact_inputs():
    f = PolyVectorField(1, 1, [sympy.Matrix([y1])], WIDE)
    X = lift_bv(PLPath([0.0, 1.0], [[0.0], [0.5]]), 2.5)
    with pytest.raises(ValueError):
        solve_euler(X, f, [1.0], exact=True)


def test_euler_converges_for_linear_field():
    x = monotone_curve(2 ** 12 + 1)
    X = lift_bv(x, 2.5)
    report = solve_euler(X, linear_field(), [0.5], record_defects=False)
    expected = 0.5 * math.exp(float(x.values[-1][0] - x.values[0][0]))
    assert abs(report.final[0] - expected) <= 1e-6


def test_geodesic_matches_ode_on_breakpoints():
    x = PLPath.from_increments([[0.3, 0.0], [0.0, -0.2], [0.1, 0.0], [0.0, 0.25]], 2)
    f = random_poly_field(rng_for(7), 2, 2, degree=2, scale=0.5)
    X = lift_bv(x, 2.5)
    geo = solve_geodesic(X, f, [0.1, -0.1], record_defects=False)
    ode = ode_solve(f.driving_fields(), [0.1, -0.1], x)
    assert np.max(np.abs(geo.states - ode.states)) <= 1e-8


def test_geodesic_on_trivial_rough_path():
    f = random_poly_field(rng_for(8), 2, 2, degree=2)
    X = lift_bv(PLPath([0.0, 0.5, 1.0], [[0.0, 0.0]] * 3), 2.5)
    report = solve_geodesic(X, f, [0.2, 0.3])
    assert np.allclose(report.states, [[0.2, 0.3]] * 3)


def test_zero_field_has_exact_defects():
    f = PolyVectorField(1, 1, [sympy.Matrix([0])], WIDE)
    X = lift_bv(monotone_curve(17), 2.5)
    report = solve_euler(X, f, [0.3])
    scan = defect_scan(report, ControlOmega([X]))
    assert scan.exact and scan.slope is None


def test_defect_slope_on_smooth_driver():
    X = lift_bv(monotone_curve(2 ** 8 + 1), 2.5)
    report = solve_euler(X, linear_field(), [0.5])
    scan = defect_scan(report, ControlOmega([X]))
    assert not scan.exact
    assert scan.slope >= (X.N + 1) / X.p - 0.15
    assert scan.levels == [1, 2, 3, 4, 5]
    assert len(report.defect_frame()) == len(report.defects)


def test_normalization_keeps_trajectory_and_slope():
    X = lift_bv(monotone_curve(2 ** 7 + 1), 2.5)
    f = linear_field()
    g, Y = normalize_problem(f, X, 2.0)
    r1 = solve_euler(X, f, [0.5])
    r2 = solve_euler(Y, g, [0.5])
    assert np.allclose(r1.states, r2.states, atol=1e-12)
    s1 = defect_scan(r1, ControlOmega([X])).slope
    s2 = defect_scan(r2, ControlOmega([Y])).slope
    assert s1 == pytest.approx(s2, abs=1e-6)


def test_exact_normalization_keeps_euler_bit_identical():
    y2 = sympy.Symbol("y2")
    x = PLPath([Fraction(0), Fraction(1), Fraction(2), Fraction(3)],
               [[Fraction(0), Fraction(0)], [Fraction(1, 3), Fraction(-1, 4)],
                [Fraction(1, 2), Fraction(1, 5)], [Fraction(-1, 6), Fraction(1, 2)]])
    f = PolyVectorField(2, 2, [sympy.Matrix([y1 ** 2 + 1, sympy.Rational(1, 2) * y2]),
                               sympy.Matrix([y1 * y2, sympy.Rational(-1, 3)])], [(-10.0, 10.0)] * 2)
    X = lift_bv(x, 2.5)
    g, Y = normalize_problem(f, X, Fraction(3))
    assert g.exact and Y.exact
    xi = [Fraction(1, 2), Fraction(-1, 3)]
    r1 = solve_euler(X, f, xi, exact=True)
    r2 = solve_euler(Y, g, xi, exact=True)
    assert r1.states.tolist() == r2.states.tolist()
    assert [list(r.vector) for r in r1.defects] == [list(r.vector) for r in r2.defects]


def test_backends_agree_on_non_geometric_lift():
    t = np.linspace(0.0, 1.0, 65)
    x = PLPath(list(t), [[0.5 * s, 0.25 * math.sin(2 * math.pi * s)] for s in t])
    X = perturb_top(lift_bv(x, 2.5), graft((bullet(1),), 2), lambda s: 0.05 * s)
    assert not is_geometric(X)
    f = random_poly_field(rng_for(9), 2, 2, degree=2, scale=0.3)
    gaps = []
    for stride in [8, 4, 2, 1]:
        partition = list(range(0, X.n_points, stride))
        euler = solve_euler(X, f, [0.1, -0.1], partition, record_defects=False)
        geodesic = solve_geodesic(X, f, [0.1, -0.1], partition, record_defects=False)
        gaps.append(float(np.abs(euler.states - geodesic.states).max()))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] <= gaps[0] / 4


def test_lipschitz_lhs_of_identical_reports():
    X = lift_bv(monotone_curve(9), 2.5)
    report = solve_euler(X, linear_field(), [0.5])
    assert lipschitz_lhs(report, report, ControlOmega([X])) == 0.0
