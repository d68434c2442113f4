# test_vector_fields.py
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from forest_algebra import bullet, graft, trees_up_to
from realization import PLPath, random_pl_path
from vector_fields import (
    DegreeBudgetError,
    DomainExitError,
    PolyVectorField,
    build_F_w,
    check_ode_estimates,
    elementary_differential,
    floor_strict,
    lip_gamma_norm,
    ode_solve,
    random_poly_field,
    signature_taylor_step,
    sup_norm,
)
from word_group import get_alphabet, signature

y1 = sympy.Symbol("y1")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def scalar_field(expr, box=None) -> PolyVectorField:
    return PolyVectorField(1, 1, [sympy.Matrix([expr])], box)


def segment(*delta) -> PLPath:
    return PLPath([0.0, 1.0], [[0.0] * len(delta), list(delta)])


def test_ladder_differential_of_square_field():
    f = scalar_field(y1 ** 2)
    ladder = graft((bullet(1),), 1)
    assert sympy.expand(f.tree_expr(ladder)[0] - 2 * y1 ** 3) == 0
    assert elementary_differential(f, ladder, [Fraction(1, 2)]) == [Fraction(1, 4)]


def test_constant_field_kills_larger_trees():
    f = PolyVectorField(2, 2, [sympy.Matrix([1, 2]), sympy.Matrix([sympy.Rational(1, 3), -1])])
    for tree in trees_up_to(3, 2):
        if tree.degree >= 2:
            assert all(entry == 0 for entry in f.tree_expr(tree)), tree


def test_degree_budget():
    f = scalar_field(y1)
    with pytest.raises(DegreeBudgetError):
        elementary_differential(f, graft((bullet(1),), 1), [1.0], budget=1)
    alphabet = get_alphabet(2.5, 1)
    with pytest.raises(DegreeBudgetError):
        build_F_w(f, alphabet, (1, 1, 1), budget=2)


def test_word_maps():
    f = scalar_field(y1)
    alphabet = get_alphabet(1.5, 1)
    assert build_F_w(f, alphabet, ())([3.0])[0] == pytest.approx(3.0)
    assert build_F_w(f, alphabet, (1,))([3.0])[0] == pytest.approx(3.0)
    assert sympy.expand(build_F_w(f, alphabet, (1, 1)).expr[0] - y1) == 0
    g = scalar_field(y1 ** 2)
    assert build_F_w(g, alphabet, (1,))([2.0])[0] == pytest.approx(4.0)
    assert build_F_w(g, alphabet, (1, 1))([2.0])[0] == pytest.approx(16.0)


def test_signature_taylor_step_of_linear_field():
    f = scalar_field(y1)
    alphabet = get_alphabet(1.5, 1)
    h = signature(segment(0.25), alphabet.weights, alphabet.n)
    assert signature_taylor_step(f, alphabet, h, [2.0])[0] == pytest.approx(2.0 * 1.25)


def test_differential_matches_central_differences():
    f = random_poly_field(rng_for(1), 2, 2, degree=3)
    inner = bullet(2)
    tree = graft((inner,), 1)
    y = np.array([0.3, -0.2])
    v = f.stacked([inner])(y)[0]
    f1 = f.driving_fields()
    h = 1e-4
    fd = (f1(y + h * v)[0] - f1(y - h * v)[0]) / (2 * h)
    exact = f.stacked([tree])(y)[0]
    assert np.linalg.norm(fd - exact) <= 1e-6 * max(1.0, np.linalg.norm(exact))


def test_ode_linear_field_gives_exponential():
    f = scalar_field(y1, box=[(-10.0, 10.0)])
    traj = ode_solve(f.driving_fields(), [0.7], segment(1.0))
    assert abs(traj.final[0] - 0.7 * math.e) <= 1e-9


def test_ode_constant_fields_are_exact():
    f = PolyVectorField(2, 2, [sympy.Matrix([1, 2]), sympy.Matrix([-1, 3])])
    traj = ode_solve(f.driving_fields(), [0.1, 0.2], segment(0.5, 0.25))
    assert traj.final == pytest.approx([0.1 + 0.5 - 0.25, 0.2 + 1.0 + 0.75])


def test_ode_constant_driver_keeps_initial_value():
    f = random_poly_field(rng_for(2), 2, 2, degree=2)
    traj = ode_solve(f.driving_fields(), [0.1, 0.2], PLPath.constant(2))
    assert np.allclose(traj.states, [[0.1, 0.2], [0.1, 0.2]])


def test_ode_leaving_the_box():
    f = scalar_field(y1)
    with pytest.raises(DomainExitError):
        ode_solve(f.driving_fields(), [0.9], segment(1.0), box=f.box)


def test_ode_time_reversal_returns_to_start():
    rng = rng_for(3)
    f = random_poly_field(rng, 2, 2, degree=2, scale=0.5)
    x = random_pl_path(rng, 2, 4, scale=0.3)
    xi = np.array([0.1, -0.1])
    traj = ode_solve(f.driving_fields(), xi, x.concat(x.time_reverse()))
    assert np.linalg.norm(traj.final - xi) <= 1e-8


def test_lip_estimates():
    assert floor_strict(2.0) == 1 and floor_strict(2.5) == 2
    zero = scalar_field(sympy.Integer(0))
    assert lip_gamma_norm(zero, 1.5).value == 0
    linear = scalar_field(y1)
    est = lip_gamma_norm(linear, 2.0)
    assert est.value == pytest.approx(1.0)
    assert est.sup_norms == pytest.approx([1.0, 1.0])
    with pytest.raises(ValueError):
        lip_gamma_norm(linear, 0.0)


def test_lip_estimate_grows_with_the_box():
    f = scalar_field(y1 ** 3)
    small = lip_gamma_norm(f, 2.5, resolution=41)
    large = lip_gamma_norm(f, 2.5, resolution=41, box=[(-2.0, 2.0)])
    assert large.value >= small.value


def test_random_field_is_normalized():
    f = random_poly_field(rng_for(4), 2, 3, degree=3, scale=0.5)
    for a in range(1, 4):
        assert sup_norm(f, a, 9) == pytest.approx(0.5, rel=1e-3)
    assert f.exact


def test_field_json_round_trip():
    f = random_poly_field(rng_for(5), 2, 2, degree=2)
    g = PolyVectorField.from_json(f.to_json())
    for a, b in zip(f.components, g.components):
        assert (a - b).applyfunc(sympy.expand) == sympy.zeros(2, 1)
    h = scalar_field(sympy.Rational(1, 2) * y1 ** 2 + 3)
    assert PolyVectorField.from_json(h.to_json()).components[0] == h.components[0]


def test_ode_estimates_identical_systems():
    rng = rng_for(6)
    f = random_poly_field(rng, 2, 2, degree=2, scale=0.5)
    x = random_pl_path(rng, 2, 3, scale=0.3)
    report = check_ode_estimates(f, f, x, x, [0.1, 0.1], [0.1, 0.1], resolution=9)
    assert report.lhs1 == 0 and report.lhs2 == 0
    assert report.passed


def test_ode_estimates_against_a_constant_driver():
    rng = rng_for(1)
    f = random_poly_field(rng, 2, 2, degree=2, scale=0.5)
    x = random_pl_path(rng, 2, 3, scale=0.3)
    report = check_ode_estimates(f, f, x, PLPath.constant(2), [0.1, 0.1], [0.1, 0.1], resolution=9)
    bound = sum(m * dx for m, dx in zip(report.M, report.path_gaps))
    assert report.lhs1 > 0
    assert report.lhs1 <= bound * math.exp(2 * sum(m * l for m, l in zip(report.M, report.l)))
    assert report.passed


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_ode_estimates_hold_on_random_instances(seed: int):
    rng = rng_for(seed)
    f = random_poly_field(rng, 2, 2, degree=2, scale=0.5)
    g = random_poly_field(rng, 2, 2, degree=2, scale=0.5)
    x = random_pl_path(rng, 2, 3, scale=0.2)
    x_tilde = random_pl_path(rng, 2, 2, scale=0.2)
    report = check_ode_estimates(f, g, x, x_tilde, [0.1, 0.0], [0.0, 0.1], resolution=9)
    assert report.passed
