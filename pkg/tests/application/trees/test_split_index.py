import pytest

from tree_mio.application.trees import split_index
from tree_mio.application.trees.leaves import extract_leaves
from tree_mio.application.trees.split_index import build_split_index
from tree_mio.domain.exceptions import StructureError


def test_below_and_above_accumulate_per_feature(fig3a):
    index = build_split_index(fig3a.ensemble)

    low, high = index.split(0, 1), index.split(0, 2)
    assert (low.left, low.right) == (frozenset({0}), frozenset({1}))
    assert (high.left, high.right) == (frozenset({2}), frozenset({3}))
    assert low.below == frozenset({0})
    assert high.below == frozenset({0, 2})
    assert high.above == frozenset({3})
    assert low.above == frozenset({1, 3})


def test_thresholds_and_ranks(fig3a):
    index = build_split_index(fig3a.ensemble)

    assert index.thresholds == [[5.0], [2.0, 5.0]]
    assert index.num_thresholds(1) == 2
    assert [(info.node_id, info.feature, info.rank) for info in index.tree_splits(0)] == [(0, 0, 0), (1, 1, 0), (2, 1, 1)]


def test_ranks_are_pooled_across_trees(ex3):
    index = build_split_index(ex3.ensemble)

    assert index.thresholds == [[1.0, 2.0]]
    assert index.split(0, 0).rank == 0
    assert index.split(1, 0).rank == 1


def test_same_feature_ancestry(ex1, fig3b):
    nested = build_split_index(ex1.ensemble)
    assert nested.split(0, 1).right_parent == frozenset({0})
    assert nested.split(0, 1).left_parent == frozenset()

    staircase = build_split_index(fig3b.ensemble)
    assert staircase.split(0, 4).left_parent == frozenset({2})
    assert staircase.split(0, 4).right_parent == frozenset()
    assert staircase.split(0, 2).left_parent == frozenset()


def test_unknown_split(ex1):
    with pytest.raises(StructureError):
        build_split_index(ex1.ensemble).split(0, 3)


def test_below_and_above_match_their_union_form(generated_forests):
    for label, ensemble in generated_forests:
        index = build_split_index(ensemble)
        for info in index.splits:
            peers = [s for s in index.tree_splits(info.tree) if s.feature == info.feature]
            below = frozenset().union(*(s.left for s in peers if s.threshold <= info.threshold))
            above = frozenset().union(*(s.right for s in peers if s.threshold >= info.threshold))
            assert info.below == below, label
            assert info.above == above, label


def test_disagreeing_set_definitions_are_rejected(monkeypatch, fig3a):
    def shifted(nodes, side):
        below, above = split_index.recursive_below_above(nodes, side)
        return {node_id: leaves | {99} for node_id, leaves in below.items()}, above

    monkeypatch.setattr(split_index, "union_below_above", shifted)

    with pytest.raises(StructureError, match="disagree"):
        build_split_index(fig3a.ensemble)


def test_split_sides_bound_the_leaf_boxes(generated_forests):
    for label, ensemble in generated_forests:
        index = build_split_index(ensemble)
        for t, tree in enumerate(ensemble.trees):
            boxes = extract_leaves(tree, ensemble)
            for info in index.tree_splits(t):
                for p in info.left:
                    assert boxes[p].u[info.feature] <= info.threshold, label
                for p in info.right:
                    assert boxes[p].b[info.feature] >= info.threshold, label
