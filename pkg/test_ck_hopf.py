# test_ck_hopf.py
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ck_hopf import (
    Character,
    FormalSum,
    GroupLikeGL,
    TruncationMismatchError,
    char_inverse,
    char_norm,
    char_product,
    ck_coproduct,
    ck_coproduct_bruteforce,
    coassociativity_defect,
    get_tree_basis,
    gl_coproduct,
    gl_product,
    gl_product_sums,
    is_group_like,
    random_character,
    rescale,
    rescale_inv,
)
from forest_algebra import EMPTY_FOREST, Forest, bullet, enumerate_forests, graft

A, B, C = bullet(1), bullet(2), bullet(1)
LADDER = graft((B,), 1)


def F(*trees) -> Forest:
    return Forest.of(*trees)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def test_coproduct_of_single_vertex():
    assert ck_coproduct(A) == FormalSum({(F(A), EMPTY_FOREST): 1, (EMPTY_FOREST, F(A)): 1})


def test_coproduct_of_ladder_keeps_root_on_the_right():
    expected = FormalSum({
        (F(LADDER), EMPTY_FOREST): 1,
        (EMPTY_FOREST, F(LADDER)): 1,
        (F(B), F(A)): 1,
    })
    assert ck_coproduct(LADDER) == expected


def test_coproduct_matches_admissible_cuts():
    for f in enumerate_forests(4, 2, kind="trees"):
        assert ck_coproduct(f) == ck_coproduct_bruteforce(f), f


def test_cherry_coproduct_coefficients():
    cherry = graft((bullet(2), bullet(2)), 1)
    delta = ck_coproduct(cherry)
    assert delta.coefficient((F(bullet(2)), F(LADDER))) == 2
    assert delta.coefficient((F(bullet(2), bullet(2)), F(A))) == 1
    assert sum(delta.terms.values()) == 5


def test_coassociativity_both_coproducts():
    for f in enumerate_forests(4, 2):
        assert not coassociativity_defect(f, ck_coproduct), f
        assert not coassociativity_defect(f, gl_coproduct), f


def test_product_on_small_trees():
    rng = rng_for(1)
    a = random_character(rng, 2, 2)
    b = random_character(rng, 2, 2)
    ab = char_product(a, b)
    assert ab.value(A) == a.value(A) + b.value(A)
    assert ab.value(LADDER) == a.value(LADDER) + b.value(LADDER) + a.value(B) * b.value(A)
    assert char_product(a, Character.identity(2, 2)) == a


def test_product_rejects_mismatched_truncation():
    rng = rng_for(2)
    with pytest.raises(TruncationMismatchError):
        char_product(random_character(rng, 2, 2), random_character(rng, 3, 2))


def test_inverse_examples():
    rng = rng_for(3)
    a = random_character(rng, 3, 2)
    inv = char_inverse(a)
    assert char_inverse(Character.identity(3, 2)) == Character.identity(3, 2)
    assert inv.value(A) == -a.value(A)
    assert inv.value(LADDER) == -a.value(LADDER) + a.value(B) * a.value(A)
    assert char_product(a, inv) == Character.identity(3, 2)
    assert char_product(inv, a) == Character.identity(3, 2)


def test_norm_examples():
    assert char_norm(Character.identity(2, 2)) == 0.0
    a = Character(2, 2, {A: Fraction(2)})
    assert char_norm(a) == pytest.approx(2.0)


def test_gl_product_examples():
    g = F(LADDER, B)
    assert gl_product(EMPTY_FOREST, g) == FormalSum.single(g)
    assert gl_product(F(A), F(B)) == FormalSum({F(A, B): 1, F(graft((A,), 2)): 1})


def test_gl_product_associativity_degree_three():
    forests = enumerate_forests(2, 2)
    for x in forests:
        for y in forests:
            for z in forests:
                if x.degree + y.degree + z.degree > 3:
                    continue
                a, b, c = (FormalSum.single(f) for f in (x, y, z))
                assert gl_product_sums(gl_product_sums(a, b), c) == gl_product_sums(a, gl_product_sums(b, c))


def test_gl_coproduct_examples():
    assert gl_coproduct(F(A)) == FormalSum({(F(A), EMPTY_FOREST): 1, (EMPTY_FOREST, F(A)): 1})
    expected = FormalSum({
        (F(A, B), EMPTY_FOREST): 1,
        (EMPTY_FOREST, F(A, B)): 1,
        (F(A), F(B)): 1,
        (F(B), F(A)): 1,
    })
    assert gl_coproduct(F(A, B)) == expected
    for f in enumerate_forests(4, 2):
        assert gl_coproduct(f).swap() == gl_coproduct(f)


def test_rescale_examples():
    rng = rng_for(4)
    a = random_character(rng, 3, 2)
    g = rescale(a)
    assert g.value(LADDER) == a.value(LADDER)
    assert g.value(F(A, A)) == a.value(F(A, A)) / 2
    assert rescale_inv(g) == a
    assert is_group_like(g)


def test_rescale_is_a_morphism():
    rng = rng_for(5)
    for _ in range(3):
        a = random_character(rng, 3, 2)
        b = random_character(rng, 3, 2)
        assert rescale(char_product(a, b)) == rescale(a).compose(rescale(b))
        assert is_group_like(rescale(char_product(a, b)))


def test_rescale_morphism_in_float_mode():
    rng = rng_for(6)
    a = random_character(rng, 3, 2, exact=False)
    b = random_character(rng, 3, 2, exact=False)
    lhs = rescale(char_product(a, b))
    rhs = rescale(a).compose(rescale(b))
    assert lhs.max_difference(rhs) <= 1e-12


def test_group_like_rejects_perturbed_forest_value():
    a = random_character(rng_for(7), 2, 2)
    g = rescale(a)
    values = dict(g.forest_values)
    values[F(A, A)] = values.get(F(A, A), 0) + 1
    assert not is_group_like(GroupLikeGL(2, 2, values))


def test_character_json_round_trip():
    a = random_character(rng_for(8), 3, 2)
    assert Character.from_json(a.to_json()) == a
    g = rescale(a)
    assert GroupLikeGL.from_json(g.to_json()) == g


def test_tree_basis_matches_character_algebra():
    rng = rng_for(9)
    basis = get_tree_basis(3, 2)
    a = random_character(rng, 3, 2)
    b = random_character(rng, 3, 2)
    A_, B_ = basis.to_array(a, exact=True), basis.to_array(b, exact=True)
    assert basis.from_array(basis.product(A_, B_)) == char_product(a, b)
    assert basis.from_array(basis.inverse(A_)) == char_inverse(a)
    assert float(basis.norm(basis.to_array(a))) == pytest.approx(char_norm(a))


def test_tree_basis_dilate_scales_by_degree():
    basis = get_tree_basis(2, 2)
    a = Character(2, 2, {A: Fraction(1), LADDER: Fraction(1)})
    row = basis.dilate(basis.to_array(a, exact=True), Fraction(3))
    scaled = basis.from_array(row)
    assert scaled.value(A) == 3
    assert scaled.value(LADDER) == 9


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_product_is_associative(seed: int):
    rng = rng_for(seed)
    a, b, c = (random_character(rng, 3, 2) for _ in range(3))
    assert char_product(char_product(a, b), c) == char_product(a, char_product(b, c))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_product_stays_a_character(seed: int):
    rng = rng_for(seed)
    a, b = random_character(rng, 3, 2), random_character(rng, 3, 2)
    ab = char_product(a, b)
    for f in enumerate_forests(3, 2):
        total = sum(c * a.value(l) * b.value(r) for (l, r), c in ck_coproduct(f).items())
        assert total == ab.value(f)
