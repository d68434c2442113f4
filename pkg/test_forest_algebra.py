# test_forest_algebra.py
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forest_algebra import (
    EMPTY_FOREST,
    EnumerationLimitError,
    Forest,
    LabelError,
    LabeledTree,
    automorphism_count,
    bullet,
    canonical_key,
    enumerate_forests,
    graft,
    symmetry_factor,
    tree_factorial,
    trees_up_to,
)


def labeled_trees(d: int = 2, max_leaves: int = 4):
    return st.recursive(
        st.integers(1, d).map(bullet),
        lambda kids: st.builds(lambda a, cs: graft(cs, a), st.integers(1, d), st.lists(kids, max_size=3)),
        max_leaves=max_leaves,
    )


def test_graft_small_trees():
    assert bullet(1).degree == 1
    ladder = graft((bullet(2),), 1)
    assert ladder.degree == 2
    assert ladder.label == 1 and ladder.children == (bullet(2),)


def test_cherry_key_ignores_insertion_order():
    a, b = bullet(1), bullet(2)
    assert graft((a, b), 1).key == graft((b, a), 1).key
    assert graft((a, b), 1) == graft((b, a), 1)


def test_label_outside_range_rejected():
    with pytest.raises(LabelError):
        graft((), 3, d=2)
    with pytest.raises(LabelError):
        bullet(0)


def test_degree_two_keys_are_distinct():
    trees = trees_up_to(2, 2)
    assert len(trees) == 6
    assert len({t.key for t in trees}) == 6


def test_keys_are_prefix_free():
    keys = [f.key for f in enumerate_forests(3, 2, kind="trees")]
    for k1 in keys:
        for k2 in keys:
            if k1 != k2:
                assert not k2.startswith(k1)


def test_enumeration_counts():
    assert [f.trees[0] for f in enumerate_forests(1, 2, kind="trees")] == [bullet(1), bullet(2)]
    assert len(enumerate_forests(2, 1)) == 3
    assert len(enumerate_forests(2, 2, kind="trees")) == 6


def test_enumeration_is_sorted_by_degree():
    forests = enumerate_forests(3, 2)
    degrees = [f.degree for f in forests]
    assert degrees == sorted(degrees)
    assert EMPTY_FOREST not in forests


def test_enumeration_limit():
    with pytest.raises(EnumerationLimitError):
        enumerate_forests(4, 2, limit=10)


def test_symmetry_factor_examples():
    a, b = bullet(1), bullet(2)
    assert symmetry_factor(a) == 1
    assert symmetry_factor(graft((a, a), 2)) == 2
    assert symmetry_factor(graft((a, b), 1)) == 1
    assert symmetry_factor(Forest.of(a, a)) == 2


def test_symmetry_factor_matches_automorphisms_to_degree_four():
    for f in enumerate_forests(4, 2):
        assert symmetry_factor(f) == automorphism_count(f), f


def test_symmetry_factor_multiplicativity_to_degree_four():
    trees = trees_up_to(4, 2)
    for t1 in trees:
        assert symmetry_factor(Forest.of(t1, t1)) == 2 * symmetry_factor(t1) ** 2
        for t2 in trees:
            if t1 != t2 and t1.degree + t2.degree <= 4:
                assert symmetry_factor(Forest.of(t1, t2)) == symmetry_factor(t1) * symmetry_factor(t2)


def test_graft_degree_to_degree_four():
    for f in enumerate_forests(3, 2):
        for a in (1, 2):
            assert graft(f.trees, a).degree == 1 + sum(t.degree for t in f.trees)


def test_tree_factorial():
    a = bullet(1)
    assert tree_factorial(a) == 1
    assert tree_factorial(graft((a,), 1)) == 2
    assert tree_factorial(graft((a, a), 1)) == 3
    assert tree_factorial(graft((graft((a,), 1),), 1)) == 6


def test_forest_json_round_trip():
    f = Forest.of(graft((bullet(1), bullet(2)), 2), bullet(1))
    assert Forest.from_json(f.to_json()) == f
    assert canonical_key(f) == f.key


@settings(max_examples=50, deadline=None)
@given(labeled_trees())
def test_key_independent_of_child_order(tree: LabeledTree):
    def reverse(t: LabeledTree) -> LabeledTree:
        return LabeledTree(t.label, tuple(reverse(c) for c in reversed(t.children)))

    assert reverse(tree).key == tree.key
    assert hash(reverse(tree)) == hash(tree)


@settings(max_examples=30, deadline=None)
@given(labeled_trees(max_leaves=3), labeled_trees(max_leaves=3))
def test_forest_product_commutes(t1: LabeledTree, t2: LabeledTree):
    assert Forest.of(t1) * Forest.of(t2) == Forest.of(t2) * Forest.of(t1)
