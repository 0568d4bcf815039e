import numpy as np
import pytest

from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.mip.lp_format import read_lp, write_lp
from tree_mio.domain.exceptions import ModelNameError
from tree_mio.domain.models import MipModel
from tree_mio.domain.types import FormulationKind, Sense


def test_write_lp_sections(ex1):
    text = write_lp(build_formulation(ex1.ensemble, FormulationKind.MISIC))
    lines = text.splitlines()

    assert lines[0] == "\\ misic"
    assert lines[1] == "Maximize"
    assert lines[2] == " obj: + 1 y"
    assert "Subject To" in lines
    assert " 0 <= x_1_1 <= 1" in lines
    assert " y free" in lines
    assert " 0 <= z_1_1 <= +inf" in lines
    assert lines[-1] == "End"
    assert lines.index("Binaries") > lines.index("Bounds")


def test_coefficients_keep_full_precision():
    model = MipModel(name="precise")
    a = model.add_variable("a", 0.0, 1.0)
    model.add_constraint("c", [(a, 1 / 3)], Sense.LE, 0.1)
    model.set_objective([(a, 1.0)], model.objective.sense)

    data = read_lp(write_lp(model))

    assert data.A[0, 0] == 1 / 3
    assert data.b[0] == 0.1


@pytest.mark.parametrize("kind", [FormulationKind.BIGM, FormulationKind.EXPSET_ELBOW, FormulationKind.UNION_EXT])
def test_read_lp_recovers_dense_form(ex3, kind):
    model = build_formulation(ex3.ensemble, kind)
    dense = model.to_dense()

    data = read_lp(write_lp(model))

    assert data.names == dense.names
    np.testing.assert_array_equal(data.A, dense.A)
    np.testing.assert_array_equal(data.b, dense.b)
    np.testing.assert_array_equal(data.c, dense.c)
    np.testing.assert_array_equal(data.lower, dense.lower)
    np.testing.assert_array_equal(data.upper, dense.upper)
    np.testing.assert_array_equal(data.binary, dense.binary)
    assert data.senses == dense.senses
    assert data.maximize


def test_write_lp_rejects_bad_model_name():
    model = MipModel(name="bad name")
    model.add_variable("a")

    with pytest.raises(ModelNameError):
        write_lp(model)
