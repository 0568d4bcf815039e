import math

import numpy as np
import pytest

from tree_mio.domain.exceptions import ModelNameError, RoleMismatch
from tree_mio.domain.models import MipModel, check_name, merge_terms, role_key
from tree_mio.domain.types import Integrality, ObjectiveSense, Sense


def test_role_key_joins_kind_and_indices():
    assert role_key("y") == "y"
    assert role_key("z", 0, 2) == "z:0:2"
    assert role_key("arc", 1, 4, "L") == "arc:1:4:L"


def test_merge_terms_sums_duplicates_and_drops_zeros():
    assert merge_terms([(2, 1.0), (0, 3.0), (2, -1.0), (1, 0.5), (0, 1.0)]) == ((0, 4.0), (1, 0.5))


@pytest.mark.parametrize("name", ["w1", "_tmp", "x_1_2"])
def test_check_name_accepts_identifiers(name):
    assert check_name(name) == name


@pytest.mark.parametrize("name", ["1w", "w-1", "w 1", ""])
def test_check_name_rejects_bad_names(name):
    with pytest.raises(ModelNameError):
        check_name(name)


def test_add_variable_rejects_duplicates():
    model = MipModel(name="m")
    model.add_variable("w1")

    with pytest.raises(ModelNameError):
        model.add_variable("w1")


def test_roles_and_lookup():
    model = MipModel(name="m")
    w = model.add_variable("w1", 0.0, 1.0, role=role_key("w", 0))
    z = model.add_variable("z_1_1", 0.0, 1.0, Integrality.BINARY, role=role_key("z", 0, 0))

    assert model.role("w", 0) == w
    assert model.has_role("z", 0, 0)
    assert not model.has_role("z", 0, 1)
    assert model.role_ids("z") == [z]
    assert model.binary_ids == [z]
    assert model.var_id("z_1_1") == z
    with pytest.raises(RoleMismatch):
        model.role("x", 0, 0)
    with pytest.raises(RoleMismatch):
        model.var_id("nope")


def test_to_dense_and_constraint_violation():
    model = MipModel(name="m")
    a = model.add_variable("a", 0.0, 2.0)
    b = model.add_variable("b", -math.inf, math.inf)
    model.add_constraint("c1", [(a, 1.0), (b, 2.0)], Sense.LE, 4.0)
    model.add_constraint("c2", [(a, 1.0), (b, -1.0)], Sense.EQ, 1.0)
    model.set_objective([(a, 1.0)], ObjectiveSense.MINIMIZE)

    dense = model.to_dense()
    np.testing.assert_array_equal(dense.A, [[1.0, 2.0], [1.0, -1.0]])
    np.testing.assert_array_equal(dense.b, [4.0, 1.0])
    np.testing.assert_array_equal(dense.c, [1.0, 0.0])
    assert dense.senses == [Sense.LE, Sense.EQ]
    assert not dense.maximize

    point = np.array([2.0, 2.0])
    assert model.constraints[0].violation(point) == pytest.approx(2.0)
    assert model.constraints[1].violation(point) == pytest.approx(1.0)
