# test_word_group.py
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ck_hopf import FormalSum, gl_coproduct_sum, gl_product, is_group_like, reduced_gl_coproduct
from forest_algebra import EMPTY_FOREST, Forest, bullet, enumerate_forests
from realization import PLPath, random_pl_path
from word_group import (
    EMPTY_WORD,
    GeneratorSelectionError,
    WeightedAlphabet,
    WordSeries,
    deshuffle,
    dilate_series,
    eulerian_idempotent,
    get_alphabet,
    get_phi_map,
    group_norm,
    is_group_element,
    is_lie,
    is_lyndon,
    lie_coordinates,
    lie_polynomial,
    lie_series,
    lyndon_words,
    random_group_element,
    select_generators,
    signature,
    word_exp,
    word_log,
)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


@pytest.mark.parametrize("p, d, expected", [(1.5, 2, 2), (2.5, 1, 2), (2.5, 2, 5), (3.5, 2, 11)])
def test_generator_counts(p, d, expected):
    assert get_alphabet(p, d).K == expected


def test_level_one_generators_are_single_vertices():
    alphabet = select_generators(1.5, 2)
    assert alphabet.generators == (bullet(1), bullet(2))
    assert alphabet.weights == (1, 1)


def test_generator_selection_is_deterministic():
    assert select_generators(2.5, 2) == select_generators(2.5, 2)
    assert get_alphabet(2.5, 2).digest() == select_generators(2.5, 2).digest()


def test_unsupported_level_rejected():
    with pytest.raises(GeneratorSelectionError):
        select_generators(4.5, 1)


def test_alphabet_json_round_trip():
    alphabet = get_alphabet(3.5, 2)
    assert WeightedAlphabet.from_json(alphabet.to_json()) == alphabet


def test_eulerian_idempotent_on_single_vertex():
    x = FormalSum.single(Forest.of(bullet(1)))
    assert eulerian_idempotent(x) == x


def test_eulerian_idempotent_is_idempotent_and_primitive():
    for f in enumerate_forests(3, 2):
        prim = eulerian_idempotent(FormalSum.single(f))
        assert eulerian_idempotent(prim) == prim, f
        assert not reduced_gl_coproduct(prim), f


def test_phi_on_small_words():
    phi_map = get_phi_map(2.5, 2)
    assert phi_map.phi_word(EMPTY_WORD) == FormalSum.single(EMPTY_FOREST)
    assert phi_map.phi_word((1,)) == FormalSum.single(Forest.of(bullet(1)))
    assert phi_map.phi_word((1, 2)) == gl_product(Forest.of(bullet(1)), Forest.of(bullet(2)))


def test_phi_degree_matrices_are_square_and_invertible():
    for p, d in [(1.5, 3), (2.5, 2), (3.5, 2)]:
        phi_map = get_phi_map(p, d)
        for k, matrix in phi_map.matrices.items():
            assert len(matrix) == len(matrix[0]) == len(phi_map.forests[k])


def test_phi_is_a_bialgebra_morphism():
    phi_map = get_phi_map(3.5, 2)
    for w in phi_map.alphabet.words():
        lhs = gl_coproduct_sum(phi_map.phi_word(w))
        pairs = []
        for (u, v), c in deshuffle(w).items():
            for f, a in phi_map.phi_word(u).items():
                for g, b in phi_map.phi_word(v).items():
                    pairs.append(((f, g), c * a * b))
        assert lhs == FormalSum.accumulate(pairs), w


def test_phi_inverse_round_trip():
    phi_map = get_phi_map(3.5, 2)
    h = random_group_element(rng_for(1), phi_map.alphabet.weights, phi_map.n, exact=True)
    assert phi_map.phi_inverse(phi_map.phi(h)) == h


def test_signature_of_one_segment():
    weights = (1, 1)
    x = PLPath.from_increments([[Fraction(3), Fraction(5)]], 2, exact=True)
    s = signature(x, weights, 3)
    assert s.coefficient(EMPTY_WORD) == 1
    assert s.coefficient((1,)) == 3
    assert s.coefficient((1, 1)) == Fraction(9, 2)
    assert s.coefficient((1, 2)) == Fraction(15, 2)
    assert s.coefficient((1, 2, 2)) == Fraction(75, 6)


def test_signature_level_one_is_total_increment():
    x = random_pl_path(rng_for(2), 3, 5, exact=True)
    s = signature(x, (1, 1, 1), 2)
    total = x.values[-1] - x.values[0]
    for j in range(3):
        assert s.coefficient((j + 1,)) == total[j]


def test_signature_of_path_and_its_reverse_is_unit():
    x = random_pl_path(rng_for(3), 2, 4, exact=True)
    weights = (1, 2)
    assert signature(x.concat(x.time_reverse()), weights, 3) == WordSeries.unit(weights, 3)


def test_signatures_map_to_group_likes():
    phi_map = get_phi_map(3.5, 2)
    x = random_pl_path(rng_for(4), phi_map.alphabet.K, 3, exact=False)
    g = phi_map.word_series_to_group_like(signature(x, phi_map.alphabet.weights, phi_map.n))
    assert is_group_like(g, tol=1e-10)


def test_lyndon_words():
    assert lyndon_words(2, 3) == ((1,), (1, 1, 2), (1, 2), (1, 2, 2), (2,))
    assert is_lyndon((1, 2)) and not is_lyndon((2, 1)) and not is_lyndon((1, 1))
    assert dict(lie_polynomial((1, 2))) == {(1, 2): 1, (2, 1): -1}


def test_exp_log_and_norm():
    weights = (1, 1)
    unit = WordSeries.unit(weights, 3)
    assert group_norm(unit) == 0
    with pytest.raises(ValueError):
        word_log(WordSeries(weights, 3, {(1,): 1}))
    x = random_pl_path(rng_for(5), 2, 4, exact=True)
    s = signature(x, weights, 3)
    assert word_exp(word_log(s)) == s
    assert is_lie(word_log(s))
    assert is_group_element(s)
    assert not is_group_element(s + WordSeries(weights, 3, {(2, 1): Fraction(1)}))


def test_log_of_signature_has_lyndon_coordinates_only():
    x = random_pl_path(rng_for(6), 2, 3, exact=True)
    coords, leftover = lie_coordinates(word_log(signature(x, (1, 1), 2)))
    assert leftover == 0
    assert set(coords) <= {(1,), (2,), (1, 2)}


def test_group_norm_is_homogeneous_under_dilation():
    h = random_group_element(rng_for(7), (1, 1, 2), 2)
    assert group_norm(dilate_series(h, 0.5)) == pytest.approx(0.5 * group_norm(h))


def test_random_group_element_respects_norm_bound():
    h = random_group_element(rng_for(8), (1, 1, 2), 2, norm_bound=1.0)
    assert group_norm(h) <= 1.0
    assert is_group_element(h, tol=1e-9)


def test_word_series_json_round_trip():
    h = random_group_element(rng_for(9), (1, 2), 3, exact=True)
    assert WordSeries.from_json(h.to_json()) == h


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 4))
def test_chen_identity(seed: int, m1: int, m2: int):
    rng = rng_for(seed)
    weights = (1, 1)
    x = random_pl_path(rng, 2, m1, exact=True)
    y = random_pl_path(rng, 2, m2, exact=True)
    assert signature(x.concat(y), weights, 3) == signature(x, weights, 3) * signature(y, weights, 3)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_lie_series_exponentiates_into_the_group(seed: int):
    rng = rng_for(seed)
    weights = (1, 1, 2)
    coords = {w: Fraction(int(rng.integers(-3, 4)), 2) for w in [(1,), (2,), (3,), (1, 2)]}
    h = word_exp(lie_series(weights, 2, coords))
    assert is_group_element(h)
    assert word_log(h) == lie_series(weights, 2, coords)
